use std::path::Path;
use std::process::{Command, Output};

use antimorph::runner::ReportBundle;

fn antimorph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_antimorph")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn anti_factorization_with_named_inputs() {
    let o = antimorph(&["verify", "anti-factorization", "--group", "s3.grp", "--normal", "Z3", "--map", "signstar.map"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("corpus: bundled"));
    assert!(stdout(&o).contains("PASS anti-factorization"));
}

#[test]
fn empty_selection_is_an_empty_pass() {
    let o = antimorph(&["verify", "--format", "records"]);
    assert!(o.status.success());
    let bundle = ReportBundle::parse_records(&stdout(&o)).unwrap();
    assert!(bundle.records.is_empty());
}

#[test]
fn bound_exceeded_fails_with_a_witness() {
    let o = antimorph(&["enum-homs", "--bound", "3", "--format", "records"]);
    assert_eq!(o.status.code(), Some(1));
    let bundle = ReportBundle::parse_records(&stdout(&o)).unwrap();
    let failed = bundle.records.iter().find(|r| !r.pass).unwrap();
    assert!(failed.witness.as_deref().unwrap().starts_with("BoundExceeded"));
    assert_eq!(bundle.config.bound, 3);
}

#[test]
fn zero_bound_is_rejected_by_the_parser() {
    let o = antimorph(&["validate", "--bound", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn records_are_deterministic() {
    let args = ["verify", "variance-table", "semilinear", "--format", "records", "--seed", "7"];
    let (a, b) = (antimorph(&args), antimorph(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let bundle = ReportBundle::parse_records(&stdout(&a)).unwrap();
    assert_eq!(bundle.config.seed, 7);
    assert_eq!(bundle.emit_records(), stdout(&a));
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::create_dir_all(dir.join(name).parent().unwrap()).unwrap();
    std::fs::write(dir.join(name), text).unwrap();
}

#[test]
fn malformed_corpus_reports_lines_without_panicking() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "z3.grp", "group Z3 order 3\n0 1 2\n1 2 0\n");
    write(dir.path(), "bad.ring", "ring R order 2\nadd:\n0 1\n1 0\n");
    write(dir.path(), "z2.grp", "group Z2 order 2\n0 1\n1 0\n");
    let o = antimorph(&["validate", "--corpus", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("PASS validate"), "{text}");
    assert!(text.contains("line 4"), "{text}");
    assert!(text.contains("line 5"), "{text}");
    let o = antimorph(&["cat", "caf", "--corpus", "/no/such/dir"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL load"));
}

#[test]
fn user_corpus_and_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "groups/z2.grp", "group Z2 order 2\n0 1\n1 0\n");
    write(d, "groups/z4.grp", "group Z4 order 4\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n");
    write(d, "maps/half.map", "map half from Z4 to Z2 variance anti\n0 1 0 1\n");
    let corpus = d.to_str().unwrap();
    let o = antimorph(&["verify", "correspondence", "anti-hom-theorem", "--map", "half", "--corpus", corpus]);
    assert!(o.status.success(), "{}", stdout(&o));
    let map = d.join("maps/half.map");
    let o = antimorph(&["verify", "anti-factorization", "--corpus", corpus, "--group", "Z4", "--normal", "0,2", "--map", map.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = antimorph(&["verify", "anti-factorization", "--corpus", corpus, "--group", "Z4", "--normal", "<1>", "--map", "half"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("PreconditionFailed"), "{}", stdout(&o));
}

#[test]
fn category_commands() {
    for op in ["caf", "fca", "anti", "assoc", "equiv", "products", "adjunction"] {
        let o = antimorph(&["cat", op]);
        assert!(o.status.success(), "cat {op}: {}", stdout(&o));
    }
}

#[test]
fn pointwise_audit_reports_witnesses() {
    let o = antimorph(&["audit", "pointwise-ring", "--format", "records"]);
    let bundle = ReportBundle::parse_records(&stdout(&o)).unwrap();
    let t2 = bundle.records.iter().find(|r| r.inputs == ["T2F2", "T2F2"]).unwrap();
    assert!(!t2.pass && t2.witness.as_deref().unwrap().contains("f + g"));
    let z2 = bundle.records.iter().find(|r| r.inputs == ["Z2", "Z2"]).unwrap();
    assert!(z2.pass);
    assert_eq!(o.status.success(), bundle.pass());
}

#[test]
fn unknown_theorem_id_is_a_usage_error() {
    let o = antimorph(&["verify", "no-such-theorem"]);
    assert_eq!(o.status.code(), Some(2));
}

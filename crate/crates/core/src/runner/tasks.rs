use std::sync::Arc;

use super::resolve::{self, parse_ideal, parse_subgroup};
use super::{AuditOp, CatOp, Corpus, Instance, Record, RunConfig, RunError, Task, VERIFY_IDS};
use crate::category::{
    self, agree_up_to_renaming, anti_category, associated_category, caf, check_adjunctions, check_equivalence,
    check_preadditive_adjunctions, f_an, fca, iso_correspondence, merge_generator, verify_anti_category, AdjunctionConfig,
    Arrow, FactorizationCategory, FiniteCategory, Functor, MAX_ARROWS, MAX_OBJECTS,
};
use crate::group::FiniteGroup;
use crate::io::NamedMap;
use crate::morphism::{
    automorphism_algebra, enumerate, natural_an_map, pointwise_ring_audit, reverse_morphism, Morphism,
    Structure, Variance,
};
use crate::report::TheoremReport;
use crate::ring::{FiniteRing, Side};
use crate::semilinear::{run_suite, verify_anti_mono_epi, SuiteConfig};
use crate::theorem::{
    anti_monoid, correspondence, law_of_factorization, opposite_correspondence, variance_table, verify_abelian_collapse,
    verify_anti_factorization, verify_anti_hom_theorem, verify_ring_anti_factorization, verify_ring_anti_hom_theorem,
    verify_second_anti_iso, verify_subring_and_transport, verify_third_anti_iso,
};

/// A report, or a FAIL record naming the error.
fn record<E>(id: &str, inputs: &[&str], result: Result<TheoremReport, E>) -> Record
where
    E: std::fmt::Debug + std::fmt::Display,
{
    match result {
        Ok(r) => Record::from_report(r),
        Err(e) => Record::error(id, inputs.iter().map(|s| s.to_string()).collect(), &e),
    }
}

pub(super) fn execute(task: &Task, corpus: &Corpus, config: &RunConfig) -> Vec<Record> {
    match task {
        Task::Validate => validate(corpus),
        Task::EnumHoms => enumeration(corpus, Variance::Straight, config.bound),
        Task::EnumAntihoms => enumeration(corpus, Variance::Anti, config.bound),
        Task::Verify { ids, instance } => ids.iter().flat_map(|id| verify(id, instance, corpus, config)).collect(),
        Task::Cat(op) => cat(*op, corpus, config.bound),
        Task::Audit(op) => audit(*op, corpus, config.bound),
        Task::Report => unreachable!("report is expanded before execution"),
    }
}

fn validate(corpus: &Corpus) -> Vec<Record> {
    corpus
        .files
        .iter()
        .map(|(name, outcome)| match outcome {
            Ok(label) => {
                let mut r = TheoremReport::new("validate", [name.as_str()]);
                r.check(format!("{label} is valid"), None);
                Record::from_report(r)
            }
            Err(e) => Record::error("validate", vec![name.clone()], e),
        })
        .collect()
}

fn enum_pair<S: Structure>(a: &Arc<S>, b: &Arc<S>, variance: Variance, bound: u64) -> Record {
    let id = if variance.is_anti() { "enum-antihoms" } else { "enum-homs" };
    let mut r = TheoremReport::new(id, [a.name(), b.name()]);
    match enumerate(a, b, variance, bound) {
        Ok(maps) => {
            let set = if variance.is_anti() { "An" } else { "Hom" };
            r.note(format!("|{set}({}, {})| = {}", a.name(), b.name(), maps.len()));
            Record::from_report(r)
        }
        Err(e) => Record::error(id, r.inputs, &e),
    }
}

fn enumeration(corpus: &Corpus, variance: Variance, bound: u64) -> Vec<Record> {
    let lib = &corpus.library;
    let mut out = Vec::new();
    for a in &lib.groups {
        for b in &lib.groups {
            out.push(enum_pair(a, b, variance, bound));
        }
    }
    for a in &lib.rings {
        for b in &lib.rings {
            out.push(enum_pair(a, b, variance, bound));
        }
    }
    out
}

fn group_or<'a>(corpus: &Corpus, spec: &'a Option<String>, default: &'a str) -> Result<Arc<FiniteGroup>, RunError> {
    resolve::group(corpus, spec.as_deref().unwrap_or(default))
}

fn subgroup_of(
    corpus: &Corpus,
    g: &Arc<FiniteGroup>,
    spec: &Option<String>,
    default: &str,
) -> Result<crate::group::Subgroup, RunError> {
    parse_subgroup(g, spec.as_deref().unwrap_or(default), &corpus.library.groups)
}

fn group_map(corpus: &Corpus, spec: &str) -> Result<Morphism<FiniteGroup>, RunError> {
    match resolve::map(corpus, spec)? {
        NamedMap::Group { map, .. } => Ok(map),
        NamedMap::Ring { .. } => Err(RunError::Invalid(format!("{spec} is a ring map"))),
    }
}

fn ring_map(corpus: &Corpus, spec: &str) -> Result<Morphism<FiniteRing>, RunError> {
    match resolve::map(corpus, spec)? {
        NamedMap::Ring { map, .. } => Ok(map),
        NamedMap::Group { .. } => Err(RunError::Invalid(format!("{spec} is a group map"))),
    }
}

/// Built-in ring instances: `Z4 → Z2` reduction mod 2 and the projection
/// of upper triangular matrices onto their diagonal, both as anti maps,
/// with the ideals they vanish on.
fn ring_instances() -> Vec<(Arc<FiniteRing>, Vec<usize>, Morphism<FiniteRing>)> {
    let z4 = crate::corpus::z4_ring();
    let mod2 = Morphism::new(z4.clone(), crate::corpus::z2_ring(), vec![0, 1, 0, 1], Variance::Anti).expect("mod 2");
    let t2 = crate::corpus::t2f2();
    // [[a,b],[0,c]] has index a + 2b + 4c; (c, a) has index 2c + a
    let images = (0..8).map(|x| 2 * ((x >> 2) & 1) + (x & 1)).collect();
    let diagonal = Morphism::new(t2.clone(), crate::corpus::z2xz2_ring(), images, Variance::Anti).expect("diagonal");
    vec![(z4, vec![0, 2], mod2), (t2, vec![0, 2], diagonal)]
}

fn verify(id: &str, inst: &Instance, corpus: &Corpus, config: &RunConfig) -> Vec<Record> {
    let lib = &corpus.library;
    let bound = config.bound;
    let one = |r: Result<TheoremReport, RunError>| vec![record(id, &[], r)];
    match id {
        "variance-table" => vec![
            record(id, &["groups"], variance_table(&lib.groups, bound)),
            record(id, &["rings"], variance_table(&lib.rings, bound)),
        ],
        "correspondence" => vec![
            record(id, &["groups"], correspondence(&lib.groups, bound)),
            record(id, &["rings"], correspondence(&lib.rings, bound)),
            record("opposite-correspondence", &["rings"], opposite_correspondence(&lib.rings, bound)),
        ],
        "law-of-factorization" => vec![
            record(id, &["groups"], law_of_factorization(&lib.groups, bound)),
            record(id, &["rings"], law_of_factorization(&lib.rings, bound)),
        ],
        "anti-monoid" => one(group_or(corpus, &inst.group, "S3").and_then(|g| Ok(anti_monoid(&g, bound)?))),
        "automorphism-algebra" => {
            one(group_or(corpus, &inst.group, "S3").and_then(|g| Ok(automorphism_algebra(&g, bound)?.report)))
        }
        "anti-factorization" => one((|| {
            let g = group_or(corpus, &inst.group, "S3")?;
            let n = subgroup_of(corpus, &g, &inst.normal, "<1>")?;
            let phi = group_map(corpus, inst.map.as_deref().unwrap_or("signstar"))?;
            verify_anti_factorization(&g, &n, &phi, bound).map_err(RunError::from)
        })()),
        "anti-hom-theorem" => {
            let specs: Vec<&str> = match &inst.map {
                Some(m) => vec![m],
                None => vec!["signstar", "inv_s3", "t2_involution"],
            };
            let mut out: Vec<Record> = specs
                .into_iter()
                .map(|spec| {
                    let r = resolve::map(corpus, spec).and_then(|m| match m {
                        NamedMap::Group { map, .. } => verify_anti_hom_theorem(&map, bound).map_err(RunError::from),
                        NamedMap::Ring { map, .. } => verify_ring_anti_hom_theorem(&map, bound).map_err(RunError::from),
                    });
                    record(id, &[spec], r)
                })
                .collect();
            if inst.map.is_none() {
                for (_, _, phi) in ring_instances() {
                    out.push(record(id, &[], verify_ring_anti_hom_theorem(&phi, bound)));
                }
            }
            out
        }
        "second-anti-iso" => one((|| {
            let g = group_or(corpus, &inst.group, "D4")?;
            let b = subgroup_of(corpus, &g, &inst.normal, "<1>")?;
            let c = subgroup_of(corpus, &g, &inst.inner, "<2>")?;
            verify_second_anti_iso(&g, &b, &c, bound).map_err(RunError::from)
        })()),
        "third-anti-iso" => {
            let defaults: Vec<(&str, &str, &str)> = if inst.is_empty() {
                vec![("S3", "<3>", "<1>"), ("D4", "<4>", "<2>")]
            } else {
                vec![("S3", "<3>", "<1>")]
            };
            defaults
                .into_iter()
                .map(|(g0, a0, n0)| {
                    record(
                        id,
                        &[],
                        (|| {
                            let g = group_or(corpus, &inst.group, g0)?;
                            let a = subgroup_of(corpus, &g, &inst.subgroup, a0)?;
                            let n = subgroup_of(corpus, &g, &inst.normal, n0)?;
                            verify_third_anti_iso(&g, &a, &n, bound).map_err(RunError::from)
                        })(),
                    )
                })
                .collect()
        }
        "abelian-collapse" => match &inst.map {
            Some(spec) => one(group_map(corpus, spec).and_then(|m| verify_abelian_collapse(&m).map_err(RunError::from))),
            None => lib
                .groups
                .iter()
                .map(|g| {
                    let r = reverse_morphism(g).map_err(RunError::from).and_then(|m| verify_abelian_collapse(&m).map_err(RunError::from));
                    record(id, &[g.name()], r)
                })
                .collect(),
        },
        "ring-anti-factorization" => {
            if inst.ring.is_some() || inst.ideal.is_some() || inst.map.is_some() {
                one((|| {
                    let phi = ring_map(corpus, inst.map.as_deref().unwrap_or("t2_involution"))?;
                    let r = match &inst.ring {
                        Some(spec) => resolve::ring(corpus, spec)?,
                        None => phi.source().clone(),
                    };
                    let ideal = parse_ideal(&r, inst.ideal.as_deref().unwrap_or("0"))?;
                    verify_ring_anti_factorization(&r, &ideal, &phi, bound).map_err(RunError::from)
                })())
            } else {
                ring_instances()
                    .into_iter()
                    .map(|(r, members, phi)| {
                        let ideal = r.ideal(&members, Side::TwoSided).expect("built-in ideal");
                        record(id, &[], verify_ring_anti_factorization(&r, &ideal, &phi, bound))
                    })
                    .collect()
            }
        }
        "ring-anti-hom-theorem" => match &inst.map {
            Some(spec) => one(ring_map(corpus, spec).and_then(|m| verify_ring_anti_hom_theorem(&m, bound).map_err(RunError::from))),
            None => {
                let mut maps: Vec<Morphism<FiniteRing>> = ring_instances().into_iter().map(|(_, _, m)| m).collect();
                maps.extend(lib.maps.iter().filter_map(|m| match m {
                    NamedMap::Ring { map, .. } => Some(map.clone()),
                    NamedMap::Group { .. } => None,
                }));
                maps.iter().map(|m| record(id, &[], verify_ring_anti_hom_theorem(m, bound))).collect()
            }
        },
        "subring-transport" => match &inst.map {
            Some(spec) => one(ring_map(corpus, spec).and_then(|m| verify_subring_and_transport(&m).map_err(RunError::from))),
            None => {
                let mut maps: Vec<Morphism<FiniteRing>> = ring_instances().into_iter().map(|(_, _, m)| m).collect();
                maps.extend(lib.maps.iter().filter_map(|m| match m {
                    NamedMap::Ring { map, .. } => Some(map.clone()),
                    NamedMap::Group { .. } => None,
                }));
                maps.iter().map(|m| record(id, &[], verify_subring_and_transport(m))).collect()
            }
        },
        "semilinear" => {
            let suite = SuiteConfig { seed: config.seed, bound, ..SuiteConfig::default() };
            match run_suite(&suite) {
                Ok(reports) => reports.into_iter().map(Record::from_report).collect(),
                Err(e) => vec![Record::error(id, vec![format!("seed {}", config.seed)], &e)],
            }
        }
        "anti-mono-epi" => {
            let maps = match &inst.map {
                Some(spec) => match resolve::semilinear(corpus, spec) {
                    Ok(m) => vec![m],
                    Err(e) => return vec![Record::error(id, vec![spec.clone()], &e)],
                },
                None => lib.semilinear.clone(),
            };
            maps.iter().map(|m| record(id, &[m.name.as_str()], verify_anti_mono_epi(&m.map, bound))).collect()
        }
        other => {
            let e = RunError::Invalid(format!("unknown theorem id {other}; known: {}", VERIFY_IDS.join(", ")));
            vec![Record::error("verify", vec![other.to_string()], &e)]
        }
    }
}

/// Categories of the corpus with their canonical factorial structures,
/// followed by the factorization categories read from files.
fn factorizations(corpus: &Corpus) -> Vec<FactorizationCategory> {
    let lib = &corpus.library;
    lib.categories.iter().map(caf).chain(lib.factorizations.iter().cloned()).collect()
}

/// `caf(C)` rebuilt from its parts, and the generator `(C, C')` with the
/// identity dictionary onto a renamed copy `C'`.
fn caf_report(c: &FiniteCategory) -> TheoremReport {
    let mut r = TheoremReport::new("caf", [c.name()]);
    let fc = caf(c);
    let t = fc.total();
    let m = fc.straight_count();
    let rebuilt = FactorizationCategory::new(
        c.clone(),
        t.arrows()[m..].to_vec(),
        t.table().to_vec(),
        fc.reverses().to_vec(),
        fc.an_additive().cloned(),
    );
    r.check("caf(C) satisfies the factorization axioms", rebuilt.as_ref().err().map(ToString::to_string));
    if let Ok(again) = rebuilt {
        r.require("revalidation reproduces caf(C)", again == fc, || "tables differ".into());
    }
    let renamed: Vec<Arrow> = c.arrows().iter().map(|a| Arrow::new(format!("{}'", a.name), a.source, a.target)).collect();
    let generator = FiniteCategory::new(
        format!("{}'", c.name()),
        c.objects().to_vec(),
        renamed,
        c.identities().to_vec(),
        c.table().to_vec(),
        None,
    )
    .and_then(|d| merge_generator(c, &d, &Functor::identity(c)));
    match generator {
        Ok(merged) => {
            r.check("generator construction agrees with caf up to renaming", agree_up_to_renaming(&merged, &fc));
        }
        Err(e) => {
            r.check("generator construction agrees with caf up to renaming", Some(e.to_string()));
        }
    }
    r.absorb("law of factorization", category::law_of_factorization(&fc));
    r.absorb("isomorphisms", iso_correspondence(&fc));
    let n = c.object_count();
    let sizes = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).find(|&(a, b)| fc.an(a, b).len() != c.hom(a, b).len());
    r.check("|An(a, b)| = |Hom(a, b)|", sizes.map(|(a, b)| format!("{} → {}", c.objects()[a], c.objects()[b])));
    r
}

fn fca_report(fc: &FactorizationCategory) -> TheoremReport {
    let mut r = TheoremReport::new("fca", [fc.name()]);
    let c = fca(fc);
    r.require("caf(fca(FC)) = FC", caf(&c) == *fc, || "tables differ".into());
    r.require("fca(caf(C)) = C", fca(&caf(&c)) == c, || "tables differ".into());
    r
}

fn assoc_report(fc: &FactorizationCategory) -> Result<TheoremReport, crate::category::CategoryError> {
    let mut r = TheoremReport::new("associated-category", [fc.name()]);
    let tilde = associated_category(fc)?;
    r.check("C̃ is a category", None);
    let n = fc.underlying().object_count();
    let bad = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| tilde.hom(a, b).len() != fc.hom(a, b).len() + fc.an(a, b).len());
    r.check(
        "|Hom_C̃(a, b)| = |Hom(a, b)| + |An(a, b)|",
        bad.map(|(a, b)| format!("{} → {}", tilde.objects()[a], tilde.objects()[b])),
    );
    r.note(format!("{} arrows", tilde.arrow_count()));
    Ok(r)
}

fn cat(op: CatOp, corpus: &Corpus, bound: u64) -> Vec<Record> {
    let lib = &corpus.library;
    match op {
        CatOp::Caf => lib.categories.iter().map(|c| Record::from_report(caf_report(c))).collect(),
        CatOp::Fca => factorizations(corpus).iter().map(|fc| Record::from_report(fca_report(fc))).collect(),
        CatOp::Anti => factorizations(corpus).iter().map(|fc| Record::from_report(verify_anti_category(fc))).collect(),
        CatOp::Assoc => factorizations(corpus).iter().map(|fc| record("associated-category", &[fc.name()], assoc_report(fc))).collect(),
        CatOp::Equiv => factorizations(corpus)
            .iter()
            .map(|fc| {
                let r = anti_category(fc).map(|anti| check_equivalence(&f_an(fc), &fca(fc), &anti));
                record("equivalence", &[fc.name()], r)
            })
            .collect(),
        CatOp::Products => factorizations(corpus)
            .iter()
            .flat_map(|fc| {
                let n = fc.underlying().object_count();
                (0..n).flat_map(move |a| (a..n).map(move |b| vec![a, b]))
                    .map(|family| Record::from_report(category::anti_product_uniqueness(fc, &family)))
                    .collect::<Vec<_>>()
            })
            .collect(),
        CatOp::Adjunction => {
            let small: Vec<FiniteCategory> = lib
                .categories
                .iter()
                .filter(|c| c.object_count() <= MAX_OBJECTS && c.arrow_count() <= MAX_ARROWS)
                .cloned()
                .collect();
            let names: Vec<&str> = small.iter().map(|c| c.name()).collect();
            let mut out = vec![record("adjunctions", &names, check_adjunctions(&small, AdjunctionConfig { bound, additive: false }))];
            out.push(record("adjunctions-preadditive", &names, check_preadditive_adjunctions(&small, bound)));
            out
        }
    }
}

fn audit(op: AuditOp, corpus: &Corpus, bound: u64) -> Vec<Record> {
    let lib = &corpus.library;
    match op {
        AuditOp::PointwiseRing => lib
            .rings
            .iter()
            .flat_map(|a| lib.rings.iter().map(move |b| (a, b)))
            .map(|(a, b)| record("pointwise-ring", &[a.name(), b.name()], pointwise_ring_audit(a, b, bound)))
            .collect(),
        AuditOp::NaturalAnMap => lib
            .rings
            .iter()
            .flat_map(|r| {
                r.ideals(Side::TwoSided)
                    .into_iter()
                    .filter(|i| i.len() > 1 && i.len() < r.order())
                    .map(|i| record("natural-an-map", &[r.name()], natural_an_map(r, &i, bound)))
                    .collect::<Vec<_>>()
            })
            .collect(),
    }
}

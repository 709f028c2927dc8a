use std::fmt::Write;

use crate::category::{Additive, FactorizationCategory, FiniteCategory, NONE};
use crate::group::FiniteGroup;
use crate::morphism::{Morphism, Structure};
use crate::ring::FiniteRing;
use crate::semilinear::SemilinearMap;

fn table(out: &mut String, n: usize, at: impl Fn(usize, usize) -> usize) {
    for x in 0..n {
        let row: Vec<String> = (0..n).map(|y| at(x, y).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
}

pub fn emit_group(g: &FiniteGroup) -> String {
    let mut out = format!("group {} order {}\n", g.name(), g.order());
    table(&mut out, g.order(), |x, y| g.mul(x, y));
    out
}

pub fn emit_ring(r: &FiniteRing) -> String {
    let n = r.order();
    let mut out = format!("ring {} order {n}\nadd:\n", r.name());
    table(&mut out, n, |x, y| r.add(x, y));
    out.push_str("mul:\n");
    table(&mut out, n, |x, y| r.mul(x, y));
    if let Some(s) = r.involution() {
        let row: Vec<String> = s.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "involution:\n{}", row.join(" "));
    }
    out
}

/// `prefix` is `ring:` for ring maps whose endpoint names are also group
/// names, and empty otherwise.
pub fn emit_map<S: Structure>(name: &str, m: &Morphism<S>, prefix: &str) -> String {
    let images: Vec<String> = m.images().iter().map(|x| x.to_string()).collect();
    format!(
        "map {name} from {prefix}{} to {prefix}{} variance {}\n{}\n",
        m.source().name(),
        m.target().name(),
        m.variance(),
        images.join(" ")
    )
}

pub fn emit_semilinear(name: &str, f: &SemilinearMap) -> String {
    let field = f.field();
    let mut out = format!(
        "semilinear {name} over {} rows {} cols {} twist {}\n",
        field.name(),
        f.target_dim(),
        f.source_dim(),
        f.twist()
    );
    for i in 0..f.target_dim() {
        let row: Vec<String> = f.matrix().row(i).iter().map(|&x| field.symbol(x)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn arrow_lines(out: &mut String, c: &FiniteCategory, range: std::ops::Range<usize>, keyword: &str) {
    let mut i = range.start;
    while i < range.end {
        let (s, t) = (c.source(i), c.target(i));
        let mut names = Vec::new();
        while i < range.end && c.source(i) == s && c.target(i) == t {
            names.push(c.arrow(i).name.as_str());
            i += 1;
        }
        let _ = writeln!(out, "{keyword} {} {}: {}", c.objects()[s], c.objects()[t], names.join(" "));
    }
}

fn compose_lines(out: &mut String, c: &FiniteCategory) {
    for g in 0..c.arrow_count() {
        for f in 0..c.arrow_count() {
            if c.is_identity(g) || c.is_identity(f) {
                continue;
            }
            if let Some(h) = c.try_compose(g, f) {
                let _ = writeln!(out, "compose {} {} = {}", c.arrow(g).name, c.arrow(f).name, c.arrow(h).name);
            }
        }
    }
}

fn additive_lines(out: &mut String, c: &FiniteCategory, add: &Additive, offset: usize) {
    let k = (0..).find(|k| k * k >= add.add.len()).unwrap_or(0);
    let name = |f: usize| c.arrow(f + offset).name.as_str();
    for f in 0..k {
        for g in 0..k {
            let h = add.add[f * k + g];
            if h != NONE {
                let _ = writeln!(out, "add {} {} = {}", name(f), name(g), name(h));
            }
        }
    }
    let n = c.object_count();
    for a in 0..n {
        for b in 0..n {
            let _ = writeln!(out, "zero {} {} = {}", c.objects()[a], c.objects()[b], name(add.zero[a * n + b]));
        }
    }
}

pub fn emit_category(c: &FiniteCategory) -> String {
    let mut out = format!("category {}\nobjects: {}\n", c.name(), c.objects().join(" "));
    arrow_lines(&mut out, c, 0..c.arrow_count(), "hom");
    for (x, &id) in c.identities().iter().enumerate() {
        let _ = writeln!(out, "id {} = {}", c.objects()[x], c.arrow(id).name);
    }
    compose_lines(&mut out, c);
    if let Some(add) = c.additive() {
        additive_lines(&mut out, c, add, 0);
    }
    out
}

pub fn emit_factorization(fc: &FactorizationCategory) -> String {
    let t = fc.total();
    let m = fc.straight_count();
    let mut out = format!("factorization {}\nobjects: {}\n", fc.name(), t.objects().join(" "));
    arrow_lines(&mut out, t, 0..m, "hom");
    arrow_lines(&mut out, t, m..t.arrow_count(), "an");
    for (x, &id) in t.identities().iter().enumerate() {
        let _ = writeln!(out, "id {} = {}", t.objects()[x], t.arrow(id).name);
    }
    for (x, &r) in fc.reverses().iter().enumerate() {
        let _ = writeln!(out, "reverse {} = {}", t.objects()[x], t.arrow(r).name);
    }
    compose_lines(&mut out, t);
    if let Some(add) = fc.underlying().additive() {
        additive_lines(&mut out, t, add, 0);
    }
    if let Some(add) = fc.an_additive() {
        additive_lines(&mut out, t, add, m);
    }
    out
}

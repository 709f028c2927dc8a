use std::collections::BTreeSet;
use std::sync::Arc;

use rayon::prelude::*;

use crate::morphism::{
    classify, compose, corresponding_anti, enumerate, factorization_classes, reverse_morphism, star_compose, Morphism,
    MorphismError, Structure, Variance,
};
use crate::report::TheoremReport;
use crate::ring::FiniteRing;

/// `Hom(A, B) ∪ An(A, B)` for every ordered pair, indexed `[a][b]`.
fn all_sets<S: Structure>(xs: &[Arc<S>], bound: u64) -> Result<Vec<Vec<Vec<Morphism<S>>>>, MorphismError> {
    xs.par_iter()
        .map(|a| {
            xs.iter()
                .map(|b| {
                    let mut v = enumerate(a, b, Variance::Straight, bound)?;
                    v.extend(enumerate(a, b, Variance::Anti, bound)?);
                    Ok(v)
                })
                .collect()
        })
        .collect()
}

/// For every composable pair `g ∘ f` drawn from the enumerated hom and anti
/// sets, the composite satisfies the law of variance `g XOR f`.
pub fn variance_table<S: Structure>(xs: &[Arc<S>], bound: u64) -> Result<TheoremReport, MorphismError> {
    let mut report = TheoremReport::new("variance-table", xs.iter().map(|x| x.name().to_string()));
    let sets = all_sets(xs, bound)?;
    let n = xs.len();
    let triples: Vec<(usize, usize, usize)> =
        (0..n).flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c)))).collect();
    let results: Vec<(u64, [[u64; 2]; 2], Option<String>)> = triples
        .par_iter()
        .map(|&(a, b, c)| {
            let mut count = 0;
            let mut cells = [[0u64; 2]; 2];
            let mut bad = None;
            for f in &sets[a][b] {
                for g in &sets[b][c] {
                    let images: Vec<usize> = f.images().iter().map(|&x| g.apply(x)).collect();
                    let expected = g.variance().xor(f.variance());
                    count += 1;
                    cells[g.variance().is_anti() as usize][f.variance().is_anti() as usize] += 1;
                    if bad.is_none() && !classify(&*xs[a], &*xs[c], &images).admits(expected) {
                        bad = Some(format!("g = {}, f = {}: composite is not {expected}", g.describe(), f.describe()));
                    }
                }
            }
            (count, cells, bad)
        })
        .collect();
    let total: u64 = results.iter().map(|r| r.0).sum();
    let mut cells = [[0u64; 2]; 2];
    for r in &results {
        for i in 0..2 {
            for j in 0..2 {
                cells[i][j] += r.1[i][j];
            }
        }
    }
    report.check("g ∘ f obeys the law of variance g XOR f", results.into_iter().find_map(|r| r.2));
    report.note(format!("{total} composable pairs"));
    for (i, g) in ["straight", "anti"].iter().enumerate() {
        for (j, f) in ["straight", "anti"].iter().enumerate() {
            let v = if i == j { "straight" } else { "anti" };
            report.note(format!("{g} ∘ {f} = {v}: {} pairs", cells[i][j]));
        }
    }
    Ok(report)
}

/// `|Hom(A, B)| = |An(A, B)|` for every pair, and `f ↦ f ∘ 1*` carries
/// `Hom(A, B)` onto `An(A, B)` when `A` has a reverse morphism.
pub fn correspondence<S: Structure>(xs: &[Arc<S>], bound: u64) -> Result<TheoremReport, MorphismError> {
    let mut report = TheoremReport::new("correspondence", xs.iter().map(|x| x.name().to_string()));
    let mut count_fail = None;
    let mut map_fail = None;
    let mut without_reverse = BTreeSet::new();
    for a in xs {
        for b in xs {
            let hom = enumerate(a, b, Variance::Straight, bound)?;
            let an = enumerate(a, b, Variance::Anti, bound)?;
            if hom.len() != an.len() && count_fail.is_none() {
                count_fail = Some(format!("|Hom({0}, {1})| = {2}, |An({0}, {1})| = {3}", a.name(), b.name(), hom.len(), an.len()));
            }
            if reverse_morphism(a).is_err() {
                without_reverse.insert(a.name().to_string());
                continue;
            }
            let mut image = hom.iter().map(corresponding_anti).collect::<Result<Vec<_>, _>>()?;
            image.sort();
            if image != an && map_fail.is_none() {
                map_fail = Some(format!("{} → {}", a.name(), b.name()));
            }
            report.note(format!("|Hom({0}, {1})| = |An({0}, {1})| = {2}", a.name(), b.name(), hom.len()));
        }
    }
    report.check("|Hom(A, B)| = |An(A, B)|", count_fail);
    report.check("f ↦ f ∘ 1* is a bijection Hom(A, B) → An(A, B)", map_fail);
    if !without_reverse.is_empty() {
        report.note(format!("no reverse morphism on {}", without_reverse.into_iter().collect::<Vec<_>>().join(", ")));
    }
    Ok(report)
}

/// `An(A, B)` and `Hom(A, B^op)` have the same image tables.
pub fn opposite_correspondence(rings: &[Arc<FiniteRing>], bound: u64) -> Result<TheoremReport, MorphismError> {
    let mut report = TheoremReport::new("opposite-correspondence", rings.iter().map(|r| r.name().to_string()));
    let mut bad = None;
    for a in rings {
        for b in rings {
            let op = Arc::new(b.opposite());
            let an: Vec<Vec<usize>> =
                enumerate(a, b, Variance::Anti, bound)?.iter().map(|m| m.images().to_vec()).collect();
            let hom: Vec<Vec<usize>> =
                enumerate(a, &op, Variance::Straight, bound)?.iter().map(|m| m.images().to_vec()).collect();
            if an != hom && bad.is_none() {
                bad = Some(format!("{} → {}: {} anti maps, {} maps into the opposite", a.name(), b.name(), an.len(), hom.len()));
            }
        }
    }
    report.check("An(A, B) = Hom(A, B^op) as tables", bad);
    Ok(report)
}

/// Every `f ∈ Hom(A, C)` equals `f* ∘ 1*` with `f* = f ∘ 1*`, and the
/// factorization classes through `B = A` partition `An(A, A) × An(A, C)`
/// with every class landing in `Hom(A, C)`.
pub fn law_of_factorization<S: Structure>(xs: &[Arc<S>], bound: u64) -> Result<TheoremReport, MorphismError> {
    let mut report = TheoremReport::new("law-of-factorization", xs.iter().map(|x| x.name().to_string()));
    let mut reconstruct = None;
    let mut partition = None;
    let mut pairs_seen: u64 = 0;
    let mut skipped = Vec::new();
    for a in xs {
        let Ok(rev) = reverse_morphism(a) else {
            skipped.push(a.name().to_string());
            continue;
        };
        for c in xs {
            let hom = enumerate(a, c, Variance::Straight, bound)?;
            for f in &hom {
                let star = corresponding_anti(f)?;
                let back = compose(&star, &rev)?;
                if back.images() != f.images() && reconstruct.is_none() {
                    reconstruct = Some(format!("f = {}, f* ∘ 1* = {}", f.describe(), back.describe()));
                }
            }
            let an_aa = enumerate(a, a, Variance::Anti, bound)?.len();
            let an_ac = enumerate(a, c, Variance::Anti, bound)?.len();
            let classes = factorization_classes(a, a, c, bound)?;
            let mut members = BTreeSet::new();
            let mut composites = BTreeSet::new();
            for class in &classes {
                composites.insert(class.composite.images().to_vec());
                for (f1, f2) in &class.pairs {
                    pairs_seen += 1;
                    let same = f1.images().iter().map(|&x| f2.apply(x)).eq(class.composite.images().iter().copied());
                    if !same && partition.is_none() {
                        partition = Some(format!("({}, {}) filed under {}", f1.describe(), f2.describe(), class.composite.describe()));
                    }
                    members.insert((f1.images().to_vec(), f2.images().to_vec()));
                }
            }
            let homs: BTreeSet<Vec<usize>> = hom.iter().map(|f| f.images().to_vec()).collect();
            if partition.is_none() {
                if members.len() != an_aa * an_ac || classes.iter().map(|c| c.pairs.len()).sum::<usize>() != members.len() {
                    partition = Some(format!(
                        "{} → {} → {}: {} pairs filed, {} composable",
                        a.name(),
                        a.name(),
                        c.name(),
                        members.len(),
                        an_aa * an_ac
                    ));
                } else if composites.len() != classes.len() || !composites.is_subset(&homs) {
                    partition = Some(format!("{} → {}: class composites are not distinct maps in Hom", a.name(), c.name()));
                } else if composites != homs {
                    partition = Some(format!("{} → {}: some f ∈ Hom has an empty class", a.name(), c.name()));
                }
            }
        }
    }
    report.check("f = f* ∘ 1* for every straight f", reconstruct);
    report.check("factorization classes through A partition An(A, A) × An(A, C)", partition);
    report.note(format!("{pairs_seen} composable anti pairs"));
    if !skipped.is_empty() {
        report.note(format!("no reverse morphism on {}", skipped.join(", ")));
    }
    Ok(report)
}

/// `(An(A, A), *)` is a monoid with identity `1*`, checked on every triple.
pub fn anti_monoid<S: Structure>(a: &Arc<S>, bound: u64) -> Result<TheoremReport, MorphismError> {
    let mut report = TheoremReport::new("anti-monoid", [a.name()]);
    let an = enumerate(a, a, Variance::Anti, bound)?;
    let hom = enumerate(a, a, Variance::Straight, bound)?;
    report.require("|End| = |An(A, A)|", hom.len() == an.len(), || format!("{} vs {}", hom.len(), an.len()));
    let rev = reverse_morphism(a)?;
    let index = |m: &Morphism<S>| an.binary_search(m).ok();
    let n = an.len();
    let mut table = vec![0; n * n];
    let mut closure = None;
    for i in 0..n {
        for j in 0..n {
            let p = star_compose(&an[i], &an[j])?;
            match index(&p) {
                Some(k) => table[i * n + j] = k,
                None => {
                    closure.get_or_insert_with(|| format!("{} * {}", an[i].describe(), an[j].describe()));
                }
            }
        }
    }
    let closed = report.check("An(A, A) is closed under *", closure);
    let unit = index(&rev);
    report.require("1* ∈ An(A, A)", unit.is_some(), || rev.describe());
    if let (true, Some(e)) = (closed, unit) {
        let bad_unit = (0..n).find(|&f| table[e * n + f] != f || table[f * n + e] != f);
        report.check("1* * f = f * 1* = f", bad_unit.map(|f| an[f].describe()));
        let bad = (0..n)
            .flat_map(|x| (0..n).flat_map(move |y| (0..n).map(move |z| (x, y, z))))
            .find(|&(x, y, z)| table[table[x * n + y] * n + z] != table[x * n + table[y * n + z]]);
        report.check(
            "* is associative",
            bad.map(|(x, y, z)| format!("{}, {}, {}", an[x].describe(), an[y].describe(), an[z].describe())),
        );
        report.note(format!("{n} anti endomorphisms, {} triples", n * n * n));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::morphism::DEFAULT_BOUND;

    #[test]
    fn small_groups() {
        let gs = vec![corpus::z2(), corpus::z3(), corpus::s3()];
        for r in [
            variance_table(&gs, DEFAULT_BOUND).unwrap(),
            correspondence(&gs, DEFAULT_BOUND).unwrap(),
            law_of_factorization(&gs, DEFAULT_BOUND).unwrap(),
            anti_monoid(&corpus::s3(), DEFAULT_BOUND).unwrap(),
        ] {
            assert!(r.pass(), "{r}");
        }
    }

    #[test]
    fn rings_with_and_without_involution() {
        let rs = vec![corpus::z2_ring(), corpus::t2f2(), corpus::m2f2()];
        let r = opposite_correspondence(&rs, DEFAULT_BOUND).unwrap();
        assert!(r.pass(), "{r}");
        let r = law_of_factorization(&rs, DEFAULT_BOUND).unwrap();
        assert!(r.pass(), "{r}");
    }
}

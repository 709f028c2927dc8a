//! Acceptance criteria 1 to 10. Each test prints one PASS/FAIL line on
//! stdout, bypassing the test harness capture, then asserts.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::time::{Duration, Instant};

use antimorph::category::{
    anti_category, anti_product_uniqueness, caf, check_adjunctions, check_equivalence, check_preadditive_adjunctions,
    enumerate_functors, f_an, fca, find_products, verify_anti_category, AdjunctionConfig, FiniteCategory,
};
use antimorph::corpus;
use antimorph::morphism::{automorphism_algebra, enumerate, pointwise_ring_audit, DEFAULT_BOUND};
use antimorph::runner::{self, RunConfig, Task};
use antimorph::semilinear::{run_suite, SuiteConfig};
use antimorph::theorem::{
    law_of_factorization, variance_table, verify_anti_factorization, verify_ring_anti_factorization,
    verify_ring_anti_hom_theorem, verify_second_anti_iso, verify_subring_and_transport, verify_third_anti_iso,
};
use antimorph::{FiniteGroup, FiniteRing, Morphism, Side, Variance};

fn line(criterion: u8, pass: bool, detail: &str, elapsed: Duration) {
    let status = if pass { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "criterion {criterion}: {status} ({detail}; {:.2} s)", elapsed.as_secs_f64());
}

// ---- brute-force oracles, independent of the library's enumerators ----

/// Every map `A → B` as an image table, in lexicographic order.
fn all_tables(a: usize, b: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = (b as u64).pow(a as u32);
    (0..total).map(move |mut k| {
        let mut t = vec![0; a];
        for slot in t.iter_mut().rev() {
            *slot = (k % b as u64) as usize;
            k /= b as u64;
        }
        t
    })
}

fn group_law(a: &FiniteGroup, b: &FiniteGroup, t: &[usize], anti: bool) -> bool {
    (0..a.order()).all(|x| {
        (0..a.order()).all(|y| {
            let rhs = if anti { b.mul(t[y], t[x]) } else { b.mul(t[x], t[y]) };
            t[a.mul(x, y)] == rhs
        })
    })
}

fn brute_group_maps(a: &FiniteGroup, b: &FiniteGroup, anti: bool) -> Vec<Vec<usize>> {
    all_tables(a.order(), b.order()).filter(|t| group_law(a, b, t, anti)).collect()
}

fn inversion(g: &FiniteGroup) -> Vec<usize> {
    (0..g.order()).map(|x| (0..g.order()).find(|&y| g.mul(x, y) == g.identity()).unwrap()).collect()
}

fn after(g: &[usize], f: &[usize]) -> Vec<usize> {
    f.iter().map(|&x| g[x]).collect()
}

fn tables<S: antimorph::morphism::Structure>(ms: &[Morphism<S>]) -> Vec<Vec<usize>> {
    ms.iter().map(|m| m.images().to_vec()).collect()
}

// ---- criteria ----

#[test]
fn criterion_1_variance_table() {
    let start = Instant::now();
    let groups = corpus::groups();
    assert!(groups.iter().all(|g| g.order() <= 8));
    let sets: Vec<Vec<(Vec<usize>, bool)>> = groups
        .iter()
        .flat_map(|a| groups.iter().map(move |b| (a, b)))
        .map(|(a, b)| {
            let mut v: Vec<(Vec<usize>, bool)> = tables(&enumerate(a, b, Variance::Straight, DEFAULT_BOUND).unwrap()).into_iter().map(|t| (t, false)).collect();
            v.extend(tables(&enumerate(a, b, Variance::Anti, DEFAULT_BOUND).unwrap()).into_iter().map(|t| (t, true)));
            v
        })
        .collect();
    let n = groups.len();
    let mut pairs = 0u64;
    let mut bad = None;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for (f, fa) in &sets[a * n + b] {
                    for (g, ga) in &sets[b * n + c] {
                        pairs += 1;
                        let h = after(g, f);
                        if !group_law(&groups[a], &groups[c], &h, fa ^ ga) && bad.is_none() {
                            bad = Some((groups[a].name().to_string(), groups[b].name().to_string(), groups[c].name().to_string()));
                        }
                    }
                }
            }
        }
    }
    let report = variance_table(&groups, DEFAULT_BOUND).unwrap();
    let elapsed = start.elapsed();
    let pass = bad.is_none() && report.pass() && elapsed < Duration::from_secs(60);
    line(1, pass, &format!("{pairs} composable pairs over {n} groups"), elapsed);
    assert!(bad.is_none(), "XOR law broken through {bad:?}");
    assert!(report.pass(), "{report}");
    assert!(elapsed < Duration::from_secs(60));
}

#[test]
fn criterion_2_correspondence() {
    let start = Instant::now();
    let groups = corpus::groups();
    let mut scanned = 0;
    for a in &groups {
        for b in &groups {
            let hom = tables(&enumerate(a, b, Variance::Straight, DEFAULT_BOUND).unwrap());
            let an = tables(&enumerate(a, b, Variance::Anti, DEFAULT_BOUND).unwrap());
            assert_eq!(hom.len(), an.len(), "|Hom({0}, {1})| ≠ |An({0}, {1})|", a.name(), b.name());
            if a.order() <= 6 && b.order() <= 6 {
                scanned += 1;
                assert_eq!(brute_group_maps(a, b, false), hom, "Hom({}, {})", a.name(), b.name());
                assert_eq!(brute_group_maps(a, b, true), an, "An({}, {})", a.name(), b.name());
            }
        }
    }
    let elapsed = start.elapsed();
    line(2, true, &format!("{} pairs, {scanned} cross-checked by full map-space scan", groups.len().pow(2)), elapsed);
}

#[test]
fn criterion_3_end_s3() {
    let start = Instant::now();
    let s3 = corpus::s3();
    let straight = brute_group_maps(&s3, &s3, false);
    let anti = brute_group_maps(&s3, &s3, true);
    assert_eq!(straight, tables(&enumerate(&s3, &s3, Variance::Straight, DEFAULT_BOUND).unwrap()));
    assert_eq!(anti, tables(&enumerate(&s3, &s3, Variance::Anti, DEFAULT_BOUND).unwrap()));
    assert_eq!(straight.len(), anti.len());
    // g * f = g ∘ f ∘ 1*
    let inv = inversion(&s3);
    let star = |g: &[usize], f: &[usize]| after(&after(g, f), &inv);
    let index: BTreeMap<&Vec<usize>, usize> = anti.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let n = anti.len();
    let mut table = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            table[i * n + j] = *index.get(&star(&anti[i], &anti[j])).expect("An(S3, S3) closed under *");
        }
    }
    let e = index[&inv];
    assert!((0..n).all(|f| table[e * n + f] == f && table[f * n + e] == f), "1* is not the identity");
    let mut triples = 0;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                triples += 1;
                assert_eq!(table[table[x * n + y] * n + z], table[x * n + table[y * n + z]]);
            }
        }
    }
    let report = antimorph::theorem::anti_monoid(&s3, DEFAULT_BOUND).unwrap();
    assert!(report.pass(), "{report}");
    line(3, true, &format!("{} straight and {} anti endomorphisms by 6^6 scan, {triples} triples", straight.len(), anti.len()), start.elapsed());
}

#[test]
fn criterion_4_law_of_factorization() {
    let start = Instant::now();
    let groups = corpus::groups();
    let mut checked = 0;
    for a in &groups {
        let inv = inversion(a);
        let an_aa = tables(&enumerate(a, a, Variance::Anti, DEFAULT_BOUND).unwrap());
        for c in &groups {
            let hom = tables(&enumerate(a, c, Variance::Straight, DEFAULT_BOUND).unwrap());
            let an_ac = tables(&enumerate(a, c, Variance::Anti, DEFAULT_BOUND).unwrap());
            for f in &hom {
                let f_star = after(f, &inv);
                assert!(group_law(a, c, &f_star, true));
                assert_eq!(&after(&f_star, &inv), f);
                checked += 1;
            }
            let mut classes: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
            for f1 in &an_aa {
                for f2 in &an_ac {
                    *classes.entry(after(f2, f1)).or_default() += 1;
                }
            }
            assert_eq!(classes.values().sum::<usize>(), an_aa.len() * an_ac.len());
            let composites: BTreeSet<Vec<usize>> = classes.into_keys().collect();
            assert_eq!(composites, hom.iter().cloned().collect::<BTreeSet<_>>(), "{} → {}", a.name(), c.name());
        }
    }
    let groups_report = law_of_factorization(&groups, DEFAULT_BOUND).unwrap();
    let rings_report = law_of_factorization(&corpus::rings(), DEFAULT_BOUND).unwrap();
    assert!(groups_report.pass(), "{groups_report}");
    assert!(rings_report.pass(), "{rings_report}");
    line(4, true, &format!("{checked} straight group maps rebuilt as f* ∘ 1*, classes partition every An(A, A) × An(A, C)"), start.elapsed());
}

#[test]
fn criterion_5_theorem_instances() {
    let start = Instant::now();
    let mut reports = Vec::new();
    let s3 = corpus::s3();
    let a3 = s3.subgroup_closure(&[1]).unwrap();
    let transposition = s3.subgroup_closure(&[3]).unwrap();
    reports.push(verify_anti_factorization(&s3, &a3, &corpus::signstar(), DEFAULT_BOUND).unwrap());
    reports.push(antimorph::theorem::verify_anti_hom_theorem(&corpus::signstar(), DEFAULT_BOUND).unwrap());
    let d4 = corpus::d4();
    let rotations = d4.subgroup_closure(&[1]).unwrap();
    let center = d4.subgroup_closure(&[2]).unwrap();
    reports.push(verify_second_anti_iso(&d4, &rotations, &center, DEFAULT_BOUND).unwrap());
    reports.push(verify_third_anti_iso(&s3, &transposition, &a3, DEFAULT_BOUND).unwrap());
    let z4 = corpus::z4_ring();
    let two = z4.ideal(&[0, 2], Side::TwoSided).unwrap();
    let mod2 = Morphism::new(z4.clone(), corpus::z2_ring(), vec![0, 1, 0, 1], Variance::Anti).unwrap();
    reports.push(verify_ring_anti_factorization(&z4, &two, &mod2, DEFAULT_BOUND).unwrap());
    reports.push(verify_ring_anti_hom_theorem(&mod2, DEFAULT_BOUND).unwrap());
    let t2 = corpus::t2f2();
    let upper = t2.ideal(&[0, 2], Side::TwoSided).unwrap();
    let diagonal_images = (0..8).map(|x| 2 * ((x >> 2) & 1) + (x & 1)).collect();
    let diagonal = Morphism::new(t2.clone(), corpus::z2xz2_ring(), diagonal_images, Variance::Anti).unwrap();
    reports.push(verify_ring_anti_factorization(&t2, &upper, &diagonal, DEFAULT_BOUND).unwrap());
    reports.push(verify_ring_anti_hom_theorem(&diagonal, DEFAULT_BOUND).unwrap());
    reports.push(verify_ring_anti_hom_theorem(&corpus::t2_involution(), DEFAULT_BOUND).unwrap());
    reports.push(verify_subring_and_transport(&corpus::t2_involution()).unwrap());
    let elapsed = start.elapsed();
    let failed: Vec<String> = reports.iter().filter(|r| !r.pass()).map(ToString::to_string).collect();
    let witnessed = reports.iter().filter(|r| !r.witnesses.is_empty()).count();
    let pass = failed.is_empty() && elapsed < Duration::from_secs(120);
    line(5, pass, &format!("{} reports, {witnessed} with constructed maps", reports.len()), elapsed);
    assert!(failed.is_empty(), "{}", failed.join("\n"));
    assert!(reports.iter().filter(|r| r.id != "subring-transport").all(|r| !r.witnesses.is_empty()));
    assert!(elapsed < Duration::from_secs(120));
}

#[test]
fn criterion_6_automorphism_algebra() {
    let start = Instant::now();
    let s3 = corpus::s3();
    let alg = automorphism_algebra(&s3, DEFAULT_BOUND).unwrap();
    assert!(alg.report.pass(), "{}", alg.report);
    let (h, a) = (alg.hom_group.clone().unwrap(), alg.anti_group.clone().unwrap());
    assert_eq!((h.order(), a.order()), (6, 6));
    // the isomorphism, checked directly on tables
    let inv = inversion(&s3);
    let iso = &alg.isomorphism;
    assert_eq!(iso.iter().collect::<BTreeSet<_>>().len(), 6);
    for i in 0..6 {
        assert_eq!(after(alg.automorphisms[i].images(), &inv), alg.anti_automorphisms[iso[i]].images());
        for j in 0..6 {
            assert_eq!(iso[h.mul(i, j)], a.mul(iso[i], iso[j]));
        }
    }
    let homs: BTreeSet<Vec<usize>> = tables(&alg.automorphisms).into_iter().collect();
    let antis: BTreeSet<Vec<usize>> = tables(&alg.anti_automorphisms).into_iter().collect();
    assert!(homs.is_disjoint(&antis));
    let union = alg.union_group.clone().unwrap();
    assert_eq!(union.order(), 12);
    // Hom.Is is closed under conjugation in the union, by tables
    let all: Vec<Vec<usize>> = homs.union(&antis).cloned().collect();
    let invert = |t: &Vec<usize>| {
        let mut r = vec![0; t.len()];
        for (x, &y) in t.iter().enumerate() {
            r[y] = x;
        }
        r
    };
    for u in &all {
        for f in &homs {
            assert!(homs.contains(&after(&after(u, f), &invert(u))));
        }
    }
    line(6, true, "Hom.Is ≅ An.Is of order 6, union of order 12 with Hom.Is normal of index 2, disjoint", start.elapsed());
}

fn ring_law(a: &FiniteRing, b: &FiniteRing, t: &[usize], anti: bool) -> bool {
    (0..a.order()).all(|x| {
        (0..a.order()).all(|y| {
            let m = if anti { b.mul(t[y], t[x]) } else { b.mul(t[x], t[y]) };
            t[a.add(x, y)] == b.add(t[x], t[y]) && t[a.mul(x, y)] == m
        })
    })
}

/// Whether the additive, (anti-)multiplicative maps `A → B` are closed
/// under pointwise `+` and `·`, by a scan of the full map space.
fn brute_closure(a: &FiniteRing, b: &FiniteRing, anti: bool) -> bool {
    let family: BTreeSet<Vec<usize>> = all_tables(a.order(), b.order()).filter(|t| ring_law(a, b, t, anti)).collect();
    family.iter().all(|f| {
        family.iter().all(|g| {
            let sum: Vec<usize> = (0..a.order()).map(|x| b.add(f[x], g[x])).collect();
            let prod: Vec<usize> = (0..a.order()).map(|x| b.mul(f[x], g[x])).collect();
            family.contains(&sum) && family.contains(&prod)
        })
    })
}

#[test]
fn criterion_7_pointwise_ring_audit() {
    let start = Instant::now();
    let rings = corpus::rings();
    let mut commutative_fail = Vec::new();
    let mut commutative_pass = Vec::new();
    for a in &rings {
        for b in rings.iter().filter(|b| b.is_commutative()) {
            let report = pointwise_ring_audit(a, b, DEFAULT_BOUND).unwrap();
            if a.order() <= 8 {
                let closed = brute_closure(a, b, false) && brute_closure(a, b, true);
                assert_eq!(report.pass(), closed, "oracle disagrees on ({}, {})", a.name(), b.name());
            }
            let label = format!("({}, {})", a.name(), b.name());
            if report.pass() {
                commutative_pass.push(label);
            } else {
                assert!(report.first_failure().unwrap().witness.is_some());
                commutative_fail.push(label);
            }
        }
    }
    let t2 = corpus::t2f2();
    let t2_report = pointwise_ring_audit(&t2, &t2, DEFAULT_BOUND).unwrap();
    let t2_witnessed = !t2_report.pass() && t2_report.failures().all(|c| c.witness.is_some());
    assert!(!brute_closure(&t2, &t2, false));
    let pass = commutative_fail.is_empty() && t2_witnessed;
    line(
        7,
        pass,
        &format!(
            "T2(F2) counterexample: {}; commutative targets passing {}, failing with witnesses {}",
            t2_report.first_failure().map(ToString::to_string).unwrap_or_default(),
            commutative_pass.join(" "),
            commutative_fail.join(" ")
        ),
        start.elapsed(),
    );
    assert!(t2_witnessed, "{t2_report}");
    assert!(commutative_fail.is_empty(), "closure fails on commutative targets: {}", commutative_fail.join(", "));
}

#[test]
fn criterion_8_semilinear() {
    let start = Instant::now();
    let config = SuiteConfig::default();
    assert!(config.count >= 50 && config.max_dim == 4 && config.p == 2);
    let reports = run_suite(&config).unwrap();
    let instances = reports.iter().filter(|r| r.id.starts_with("semilinear-instance")).count();
    let elapsed = start.elapsed();
    let failed: Vec<String> = reports.iter().filter(|r| !r.pass()).map(ToString::to_string).collect();
    let pass = failed.is_empty() && instances >= 50 && elapsed < Duration::from_secs(30);
    line(8, pass, &format!("{instances} seeded maps over F4 up to 4×4, {} reports", reports.len()), elapsed);
    assert!(failed.is_empty(), "{}", failed.join("\n"));
    assert!(instances >= 50);
    assert!(reports.iter().any(|r| r.id.contains("bifunctor")), "An(−,−) naturality report missing");
    assert!(elapsed < Duration::from_secs(30));
}

/// Functors by scanning every object map and every endpoint-respecting
/// arrow map.
fn brute_functor_count(c: &FiniteCategory, d: &FiniteCategory) -> usize {
    let mut count = 0;
    for objects in all_tables(c.object_count(), d.object_count()) {
        let choices: Vec<Vec<usize>> = (0..c.arrow_count())
            .map(|f| {
                (0..d.arrow_count())
                    .filter(|&g| d.source(g) == objects[c.source(f)] && d.target(g) == objects[c.target(f)])
                    .collect()
            })
            .collect();
        let mut digits = vec![0; choices.len()];
        if choices.iter().any(Vec::is_empty) {
            continue;
        }
        loop {
            let arrows: Vec<usize> = digits.iter().zip(&choices).map(|(&i, ch)| ch[i]).collect();
            let identities = (0..c.object_count()).all(|x| arrows[c.identity(x)] == d.identity(objects[x]));
            let composition = (0..c.arrow_count()).all(|g| {
                (0..c.arrow_count()).all(|f| match c.try_compose(g, f) {
                    Some(h) => d.try_compose(arrows[g], arrows[f]) == Some(arrows[h]),
                    None => true,
                })
            });
            if identities && composition {
                count += 1;
            }
            let mut k = 0;
            while k < digits.len() {
                digits[k] += 1;
                if digits[k] < choices[k].len() {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
            if k == digits.len() {
                break;
            }
        }
    }
    count
}

#[test]
fn criterion_9_category_engine() {
    let start = Instant::now();
    let cats = corpus::categories();
    for c in &cats {
        let fc = caf(c);
        assert_eq!(fca(&fc), *c);
        assert_eq!(caf(&fca(&fc)), fc);
        let anti = anti_category(&fc).unwrap();
        let eq = check_equivalence(&f_an(&fc), c, &anti);
        assert!(eq.pass(), "{eq}");
        let r = verify_anti_category(&fc);
        assert!(r.pass(), "{r}");
    }
    let lattice = corpus::semilattice();
    let fl = caf(&lattice);
    let mut presentations = 0;
    for a in 0..lattice.object_count() {
        for b in 0..lattice.object_count() {
            presentations += find_products(&lattice, &[a, b]).len();
            let r = anti_product_uniqueness(&fl, &[a, b]);
            assert!(r.pass(), "{r}");
        }
    }
    let adjunctions = check_adjunctions(&cats, AdjunctionConfig::default()).unwrap();
    assert!(adjunctions.pass(), "{adjunctions}");
    let preadditive = check_preadditive_adjunctions(&cats, AdjunctionConfig::default().bound).unwrap();
    assert!(preadditive.pass(), "{preadditive}");
    let arrow = corpus::arrow_category();
    assert_eq!(brute_functor_count(&arrow, &arrow), 3);
    let mut functors = 0;
    for c in &cats {
        for d in &cats {
            let n = enumerate_functors(c, d).unwrap().len();
            assert_eq!(n, brute_functor_count(c, d), "{} → {}", c.name(), d.name());
            functors += n;
        }
    }
    let elapsed = start.elapsed();
    let pass = elapsed < Duration::from_secs(120);
    line(
        9,
        pass,
        &format!("{} categories, {presentations} product presentations, {functors} functors cross-checked", cats.len()),
        elapsed,
    );
    assert!(pass);
}

#[test]
fn criterion_10_determinism() {
    let start = Instant::now();
    let config = RunConfig { tasks: vec![Task::Report], ..RunConfig::default() };
    let first = runner::run(&config).emit_records();
    let second = runner::run(&config).emit_records();
    let same = first == second;
    line(10, same, &format!("{} bytes of records, identical across two runs", first.len()), start.elapsed());
    assert!(same);
}

#[test]
fn runtime_limits_hold_for_the_bundle() {
    // the whole report must stay well inside the per-criterion budgets
    let start = Instant::now();
    let bundle = runner::run(&RunConfig { tasks: vec![Task::Report], ..RunConfig::default() });
    assert!(!bundle.records.is_empty());
    assert!(start.elapsed() < Duration::from_secs(120));
}

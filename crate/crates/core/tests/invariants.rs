use std::sync::Arc;

use antimorph::io::{emit, Library};
use antimorph::morphism::{compose, corresponding_anti, corresponding_hom, enumerate, reverse_morphism, star_compose, DEFAULT_BOUND};
use antimorph::{corpus, FiniteGroup, Morphism, Variance};
use proptest::prelude::*;

fn maps(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> Vec<Morphism<FiniteGroup>> {
    let mut v = enumerate(a, b, Variance::Straight, DEFAULT_BOUND).unwrap();
    v.extend(enumerate(a, b, Variance::Anti, DEFAULT_BOUND).unwrap());
    v
}

/// `g` with its elements renamed by the permutation `p`, identity kept at 0.
fn relabel(g: &FiniteGroup, p: &[usize]) -> FiniteGroup {
    let n = g.order();
    let mut rows = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            rows[p[x]][p[y]] = p[g.mul(x, y)];
        }
    }
    FiniteGroup::from_table(format!("{}'", g.name()), &rows).unwrap()
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..n).collect::<Vec<_>>()).prop_shuffle().prop_map(|rest| {
        let mut p = vec![0];
        p.extend(rest);
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composites_carry_the_xor_of_variances(a in 0usize..8, b in 0usize..8, c in 0usize..8, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let groups = corpus::groups();
        let (fs, gs) = (maps(&groups[a], &groups[b]), maps(&groups[b], &groups[c]));
        let (f, g) = (&fs[i.index(fs.len())], &gs[j.index(gs.len())]);
        let h = compose(g, f).unwrap();
        prop_assert_eq!(h.variance(), g.variance().xor(f.variance()));
        for x in 0..groups[a].order() {
            prop_assert_eq!(h.apply(x), g.apply(f.apply(x)));
        }
    }

    #[test]
    fn star_composition_is_a_monoid_on_anti_endomorphisms(i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), k in any::<prop::sample::Index>()) {
        let d4 = corpus::d4();
        let an = enumerate(&d4, &d4, Variance::Anti, DEFAULT_BOUND).unwrap();
        let (f, g, h) = (&an[i.index(an.len())], &an[j.index(an.len())], &an[k.index(an.len())]);
        let unit = reverse_morphism(&d4).unwrap();
        prop_assert_eq!(&star_compose(&unit, f).unwrap(), f);
        prop_assert_eq!(&star_compose(f, &unit).unwrap(), f);
        let left = star_compose(&star_compose(h, g).unwrap(), f).unwrap();
        let right = star_compose(h, &star_compose(g, f).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn correspondence_round_trips(a in 0usize..8, b in 0usize..8, i in any::<prop::sample::Index>()) {
        let groups = corpus::groups();
        let homs = enumerate(&groups[a], &groups[b], Variance::Straight, DEFAULT_BOUND).unwrap();
        let f = &homs[i.index(homs.len())];
        let anti = corresponding_anti(f).unwrap();
        prop_assert_eq!(anti.variance(), Variance::Anti);
        prop_assert_eq!(&corresponding_hom(&anti).unwrap(), f);
    }

    #[test]
    fn counts_survive_relabelling(p in permutation(8), q in permutation(6)) {
        let d4 = Arc::new(relabel(&corpus::d4(), &p));
        let s3 = Arc::new(relabel(&corpus::s3(), &q));
        for (a, b, a0, b0) in [(&d4, &s3, corpus::d4(), corpus::s3()), (&s3, &d4, corpus::s3(), corpus::d4())] {
            for v in [Variance::Straight, Variance::Anti] {
                prop_assert_eq!(
                    enumerate(a, b, v, DEFAULT_BOUND).unwrap().len(),
                    enumerate(&a0, &b0, v, DEFAULT_BOUND).unwrap().len()
                );
            }
        }
    }
}

#[test]
fn bundled_corpus_round_trips_through_text() {
    let library = Library::bundled();
    for (name, text) in corpus::FILES {
        let value = library.parse(text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let again = library.parse(&emit(&value, &library)).unwrap();
        assert_eq!(value, again, "{name}");
    }
}

//! Constructive verifiers for the anti-factorization, anti-homomorphism and
//! anti-isomorphism theorems. Each builds the map the proof builds and then
//! checks it: well-definedness, law, commutativity, bijectivity and
//! uniqueness by enumeration.

mod groups;
mod laws;
mod rings;

use thiserror::Error;

pub use groups::{
    verify_abelian_collapse, verify_anti_factorization, verify_anti_hom_theorem, verify_second_anti_iso,
    verify_third_anti_iso,
};
pub use laws::{anti_monoid, correspondence, law_of_factorization, opposite_correspondence, variance_table};
pub use rings::{verify_ring_anti_factorization, verify_ring_anti_hom_theorem, verify_subring_and_transport};

use crate::group::GroupError;
use crate::morphism::{compose, enumerate, Morphism, MorphismError, Structure, Variance};
use crate::report::{TheoremReport, Uniqueness};
use crate::ring::RingError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Table of the map `ψ` on `target(π)` with `ψ ∘ π = φ`, or two elements
/// with the same image under `π` but different images under `φ`.
pub(crate) fn factor_through<S: Structure>(pi: &Morphism<S>, phi: &Morphism<S>) -> Result<Vec<usize>, (usize, usize)> {
    let mut table = vec![usize::MAX; pi.target().order()];
    let mut first = vec![usize::MAX; pi.target().order()];
    for x in 0..pi.source().order() {
        let c = pi.apply(x);
        if table[c] == usize::MAX {
            table[c] = phi.apply(x);
            first[c] = x;
        } else if table[c] != phi.apply(x) {
            return Err((first[c], x));
        }
    }
    // Cosets missed by a non-surjective π go to the neutral element.
    let e = phi.target().neutral();
    for v in table.iter_mut().filter(|v| **v == usize::MAX) {
        *v = e;
    }
    Ok(table)
}

/// Checks `g = h` as tables, naming the first disagreement.
pub(crate) fn same_table<S: Structure>(g: &Morphism<S>, h: &Morphism<S>) -> Option<String> {
    if g.images().len() != h.images().len() {
        return Some(format!("{} vs {}", g.describe(), h.describe()));
    }
    g.images()
        .iter()
        .zip(h.images())
        .position(|(a, b)| a != b)
        .map(|x| format!("differ at {x}: {} vs {}", g.apply(x), h.apply(x)))
}

/// Builds `ψ` with `ψ ∘ π = φ*` and checks it is the unique such anti map.
pub(crate) fn factor_anti<S: Structure>(
    report: &mut TheoremReport,
    pi: &Morphism<S>,
    phi: &Morphism<S>,
    bound: u64,
) -> Result<Option<Morphism<S>>, TheoremError> {
    let table = factor_through(pi, phi);
    let ok = report.check(
        "ψ(xN) := φ*(x) is well defined",
        table.as_ref().err().map(|(x, y)| format!("{x} and {y} share a coset but φ* differs")),
    );
    let table = match table {
        Ok(t) if ok => t,
        _ => return Ok(None),
    };
    let psi = match Morphism::new(pi.target().clone(), phi.target().clone(), table, Variance::Anti) {
        Ok(psi) => psi,
        Err(e) => {
            report.check("ψ is an anti-homomorphism", Some(e.to_string()));
            return Ok(None);
        }
    };
    report.check("ψ is an anti-homomorphism", None);
    report.check("ψ ∘ π = φ*", same_table(&compose(&psi, pi)?, phi));
    let candidates = enumerate(pi.target(), phi.target(), Variance::Anti, bound)?;
    let solutions: Vec<&Morphism<S>> = candidates
        .iter()
        .filter(|l| compose(l, pi).map(|c| c.images() == phi.images()).unwrap_or(false))
        .collect();
    report.require("ψ is the only anti map with ψ ∘ π = φ*", solutions == [&psi], || {
        format!("{} of {} candidates solve the equation", solutions.len(), candidates.len())
    });
    report.note(format!("{} candidate anti maps enumerated", candidates.len()));
    report.uniqueness = Some(Uniqueness::Enumeration);
    report.witness("ψ", psi.describe());
    Ok(Some(psi))
}

/// The anti-homomorphism theorem given `π: A → A/Ker`, the corestriction
/// `onto: A → Im` and the inclusion `ι: Im → B`.
pub(crate) fn anti_hom_core<S: Structure>(
    report: &mut TheoremReport,
    phi: &Morphism<S>,
    pi: &Morphism<S>,
    onto: &Morphism<S>,
    iota: &Morphism<S>,
    bound: u64,
) -> Result<Option<Morphism<S>>, TheoremError> {
    report.require("φ* is anti", phi.variance() == Variance::Anti, || phi.describe());
    let table = match factor_through(pi, onto) {
        Ok(t) => t,
        Err((x, y)) => {
            report.check("ξ(x Ker) := φ*(x) is well defined", Some(format!("{x} and {y}")));
            return Ok(None);
        }
    };
    report.check("ξ(x Ker) := φ*(x) is well defined", None);
    let xi = match Morphism::new(pi.target().clone(), onto.target().clone(), table, Variance::Anti) {
        Ok(xi) => xi,
        Err(e) => {
            report.check("ξ is an anti-homomorphism", Some(e.to_string()));
            return Ok(None);
        }
    };
    report.check("ξ is an anti-homomorphism", None);
    report.require("ξ is bijective", xi.is_bijective(), || xi.describe());
    let around = compose(iota, &compose(&xi, pi)?)?;
    report.check("ι ∘ ξ ∘ π = φ*", same_table(&around, phi));
    let candidates = enumerate(pi.target(), onto.target(), Variance::Anti, bound)?;
    let mut solutions = 0;
    for l in &candidates {
        if compose(iota, &compose(l, pi)?)?.images() == phi.images() {
            solutions += 1;
        }
    }
    report.require("ξ is unique", solutions == 1, || format!("{solutions} solutions among {}", candidates.len()));
    report.uniqueness = Some(Uniqueness::Enumeration);
    if phi.is_injective() {
        report.require("injective: A ≅ Im φ*", onto.is_bijective(), || onto.describe());
    }
    if phi.is_surjective() {
        report.require("surjective: B ≅ A/Ker φ*", iota.is_bijective(), || iota.describe());
    }
    report.witness("ξ", xi.describe());
    Ok(Some(xi))
}

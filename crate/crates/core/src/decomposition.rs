//! Closed ideals of `C₀(X) ⊗ A` as finite sums of product ideals.
//!
//! For a compatible family `S` the ideal `J(S)` equals
//! `Σ_{j ≠ bottom} J(∪_{k∈γ_j} S_k) ⊗ I_j`. A term `J(Y) ⊗ I_j` is the set of
//! functions vanishing on `Y` with values in `I_j`, so at a point `x` the sum
//! is the join of the `I_j` with `x ∉ Y_j`.

use crate::error::{Error, Result};
use crate::function_algebra::{recover_s, theta, PointwiseIdeal};
use crate::lattice::{BoundedLattice, ClosedFamily, PointSet, SpaceModel};
use crate::report::Report;

/// `J(y) ⊗ I_index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Term {
    pub y: PointSet,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition<'a> {
    lattice: &'a BoundedLattice,
    space: SpaceModel,
    terms: Vec<Term>,
}

impl<'a> Decomposition<'a> {
    pub fn new(lattice: &'a BoundedLattice, space: SpaceModel, terms: Vec<Term>) -> Result<Self> {
        for t in &terms {
            lattice.check_index(t.index)?;
            space.check_set(t.y)?;
        }
        Ok(Decomposition { lattice, space, terms })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Terms that are not the zero ideal. `J(X) ⊗ I` and `J(Y) ⊗ {0}` vanish.
    pub fn nonzero_terms(&self) -> impl Iterator<Item = &Term> {
        self.terms
            .iter()
            .filter(|t| t.y != self.space.full() && t.index != self.lattice.bottom())
    }

    /// `stalk(x) = join { I_j : x ∉ Y_j }`.
    pub fn evaluate(&self) -> PointwiseIdeal<'a> {
        let stalks = (0..self.space.point_count())
            .map(|x| {
                self.lattice
                    .join_all(self.terms.iter().filter(|t| !t.y.contains(x)).map(|t| t.index))
            })
            .collect();
        PointwiseIdeal::new(self.lattice, stalks).expect("joins stay in range")
    }
}

/// One term `(∪_{k∈γ_j} S_k, j)` for every non-bottom `j`, in index order.
pub fn decompose<'a>(family: &ClosedFamily<'a>) -> Result<Decomposition<'a>> {
    if let Some(reason) = family.incompatibility() {
        return Err(Error::Incompatible(reason));
    }
    let l = family.lattice();
    let terms = (0..l.size())
        .filter(|&j| j != l.bottom())
        .map(|j| Term { y: family.union_over_gamma(j), index: j })
        .collect();
    Ok(Decomposition { lattice: l, space: family.space(), terms })
}

/// `∩_{r∈α_i} ∪_{k∈γ_r} S_k` with `α_i = { r : I_r ⊄ I_i }`. The empty
/// intersection is `X`.
pub fn union_reduction(family: &ClosedFamily<'_>, i: usize) -> PointSet {
    let l = family.lattice();
    (0..l.size())
        .filter(|&r| !l.leq(r, i))
        .fold(family.space().full(), |acc, r| acc.intersection(family.union_over_gamma(r)))
}

pub const IDENTITY_DECOMPOSITION: &str = "decomposition-equals-theta";
pub const IDENTITY_RECOVER: &str = "recover-of-decomposition";
pub const IDENTITY_UNION_REDUCTION: &str = "union-reduction";
pub const IDENTITY_TERM_COUNT: &str = "term-count";

/// Checks the finite-sum decomposition for one family. Failures are report entries.
pub fn verify_decomposition(family: &ClosedFamily<'_>) -> Report {
    let mut report = Report::new();
    let id = family.id();
    let (d, expected) = match (decompose(family), theta(family)) {
        (Ok(d), Ok(t)) => (d, t),
        (Err(e), _) | (_, Err(e)) => {
            report.record(false, id, format!("precondition: {e}"));
            return report;
        }
    };
    let l = family.lattice();
    report.record(d.terms().len() == l.size() - 1, id.clone(), IDENTITY_TERM_COUNT);
    let evaluated = d.evaluate();
    report.record(evaluated == expected, id.clone(), IDENTITY_DECOMPOSITION);
    let recovered = recover_s(&evaluated, family.space()).map(|r| &r == family).unwrap_or(false);
    report.record(recovered, id.clone(), IDENTITY_RECOVER);
    let reduction_holds = (0..l.size())
        .filter(|&i| i != l.top())
        .all(|i| union_reduction(family, i) == family.set(i));
    report.record(reduction_holds, id, IDENTITY_UNION_REDUCTION);
    report
}

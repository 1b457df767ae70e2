//! Lie structure of `B = A^X`: normalizers `N(S) = { a : [a, B] ⊆ S }`,
//! commutator ideals `[J, B]`, Lie ideals, the centre-quotient property and
//! weak centrality.
//!
//! A Lie ideal `L` of `B` is sandwiched as `[J, B] ⊆ L ⊆ N(J)` for some ideal
//! `J`; [`LieAnalysis::sandwich_witness`] searches all ideals for one.

use rand::Rng;

use crate::error::{Error, Result};
use crate::fdalgebra::AlgebraSpec;
use crate::function_algebra::{theta, FunctionAlgebra, PointwiseIdeal, DEFAULT_IDEAL_BOUND};
use crate::lattice::{ClosedFamily, SpaceModel};
use crate::linalg::{nullspace_of_reduced, unit_vector, EchelonBuilder, Subspace};
use crate::report::{Report, Status};
use crate::scalar::Field;

/// A subspace of `B` proposed as a Lie ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieCandidate<'a, T> {
    algebra: &'a FunctionAlgebra,
    space: Subspace<T>,
}

impl<'a, T: Field> LieCandidate<'a, T> {
    pub fn new(algebra: &'a FunctionAlgebra, space: Subspace<T>) -> Result<Self> {
        if space.ambient_dim() != algebra.dim() {
            return Err(Error::DimensionMismatch {
                expected: algebra.dim(),
                found: space.ambient_dim(),
            });
        }
        Ok(LieCandidate { algebra, space })
    }

    pub fn algebra(&self) -> &'a FunctionAlgebra {
        self.algebra
    }

    pub fn space(&self) -> &Subspace<T> {
        &self.space
    }

    pub fn is_lie_ideal(&self) -> bool {
        is_lie_ideal(self.algebra, &self.space)
    }
}

/// Units in the same point and block as `unit`; all others commute with it.
fn block_partners(algebra: &FunctionAlgebra, unit: usize) -> std::ops::Range<usize> {
    let spec = algebra.spec();
    let (x, u) = algebra.coordinate_position(unit);
    let (block, _, _) = spec.unit_position(u);
    let n = spec.block_dims()[block];
    let start = x * spec.dim() + spec.block_offset(block);
    start..start + n * n
}

/// `N(S)`: solution space of `[f, e_b] ∈ S` for every basis element `e_b`.
pub fn lie_normalizer<T: Field>(algebra: &FunctionAlgebra, s: &Subspace<T>) -> Result<Subspace<T>> {
    let d = algebra.dim();
    if s.ambient_dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: s.ambient_dim() });
    }
    let mut system = EchelonBuilder::new(d);
    'units: for b in 0..d {
        // column q of the map f ↦ residue([e_b, f]) is residue([e_b, e_q])
        let partners = block_partners(algebra, b);
        let columns: Vec<(usize, Vec<T>)> = partners
            .map(|q| {
                let c = algebra.unit_commutator(b, &unit_vector::<T>(d, q));
                (q, s.residue(&c).expect("ambient checked"))
            })
            .collect();
        for r in 0..d {
            if columns.iter().all(|(_, c)| c[r].is_zero()) {
                continue;
            }
            let mut row = vec![T::zero(); d];
            for (q, c) in &columns {
                row[*q] = c[r].clone();
            }
            system.push(row)?;
            if system.is_full() {
                break 'units;
            }
        }
    }
    Ok(nullspace_of_reduced(&system.finish()))
}

/// Span of `[e_b, j]` over basis elements `e_b` of `B` and `j` of `J`.
pub fn commutator_ideal_span<T: Field>(algebra: &FunctionAlgebra, j: &Subspace<T>) -> Result<Subspace<T>> {
    let d = algebra.dim();
    if j.ambient_dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: j.ambient_dim() });
    }
    let mut acc = EchelonBuilder::new(d);
    for b in 0..d {
        for v in j.basis() {
            acc.push(algebra.unit_commutator(b, v))?;
        }
    }
    Ok(acc.finish())
}

/// First `(basis index, L-basis row)` with `[e_b, l] ∉ L`, if any.
pub fn lie_ideal_failure<T: Field>(algebra: &FunctionAlgebra, l: &Subspace<T>) -> Option<(usize, usize)> {
    for b in 0..algebra.dim() {
        for (k, v) in l.basis().iter().enumerate() {
            let c = algebra.unit_commutator(b, v);
            if !l.contains(&c).unwrap_or(false) {
                return Some((b, k));
            }
        }
    }
    None
}

/// `[B, L] ⊆ L`.
pub fn is_lie_ideal<T: Field>(algebra: &FunctionAlgebra, l: &Subspace<T>) -> bool {
    l.ambient_dim() == algebra.dim() && lie_ideal_failure(algebra, l).is_none()
}

/// Precomputed subspaces for one ideal `J` of `B`.
#[derive(Debug, Clone)]
pub struct IdealBounds<'a, T> {
    pub ideal: PointwiseIdeal<'a>,
    pub subspace: Subspace<T>,
    /// `[J, B]`
    pub lower: Subspace<T>,
    /// `N(J)`
    pub upper: Subspace<T>,
}

/// Every ideal of `B` with its commutator ideal and normalizer, in canonical
/// (lexicographic stalk) order.
#[derive(Debug, Clone)]
pub struct LieAnalysis<'a, T> {
    algebra: &'a FunctionAlgebra,
    bounds: Vec<IdealBounds<'a, T>>,
    centre: Subspace<T>,
    commutators: Subspace<T>,
}

impl<'a, T: Field> LieAnalysis<'a, T> {
    pub fn new(algebra: &'a FunctionAlgebra) -> Result<Self> {
        Self::with_bound(algebra, DEFAULT_IDEAL_BOUND)
    }

    pub fn with_bound(algebra: &'a FunctionAlgebra, bound: usize) -> Result<Self> {
        let ideals = PointwiseIdeal::all(algebra.lattice(), algebra.space(), bound)?;
        let bounds = ideals
            .into_iter()
            .map(|ideal| {
                let subspace = algebra.ideal_subspace::<T>(ideal.stalks())?;
                let lower = commutator_ideal_span(algebra, &subspace)?;
                let upper = lie_normalizer(algebra, &subspace)?;
                Ok(IdealBounds { ideal, subspace, lower, upper })
            })
            .collect::<Result<_>>()?;
        Ok(LieAnalysis {
            algebra,
            bounds,
            centre: algebra.centre(),
            commutators: algebra.commutator_span(),
        })
    }

    pub fn algebra(&self) -> &'a FunctionAlgebra {
        self.algebra
    }

    pub fn bounds(&self) -> &[IdealBounds<'a, T>] {
        &self.bounds
    }

    pub fn centre(&self) -> &Subspace<T> {
        &self.centre
    }

    pub fn commutators(&self) -> &Subspace<T> {
        &self.commutators
    }

    /// First ideal `J` with `[J, B] ⊆ L ⊆ N(J)`.
    pub fn sandwich_witness(&self, l: &Subspace<T>) -> Option<&IdealBounds<'a, T>> {
        self.bounds.iter().find(|b| {
            b.lower.is_subspace_of(l).unwrap_or(false) && l.is_subspace_of(&b.upper).unwrap_or(false)
        })
    }

    /// `N(I) = I + Z(B)` for every ideal, one report line each.
    pub fn check_cqp(&self) -> Report {
        let mut report = Report::new();
        for b in &self.bounds {
            let expected = b.subspace.sum(&self.centre).expect("same ambient");
            report.record(b.upper == expected, b.ideal.display_stalks(), "normalizer-equals-ideal-plus-centre");
        }
        report
    }

    /// `[J, B] = J ∩ [B, B]` for every ideal.
    pub fn check_commutator_intersection(&self) -> Report {
        let mut report = Report::new();
        for b in &self.bounds {
            let meet = b.subspace.intersect(&self.commutators).expect("same ambient");
            report.record(b.lower == meet, b.ideal.display_stalks(), "commutator-ideal-equals-intersection");
        }
        report
    }

    /// `N(J)` is closed under multiplication, for every ideal.
    pub fn check_normalizer_subalgebra(&self) -> Report {
        let mut report = Report::new();
        for b in &self.bounds {
            report.record(
                is_subalgebra(self.algebra, &b.upper),
                b.ideal.display_stalks(),
                "normalizer-is-subalgebra",
            );
        }
        report
    }
}

/// Closed under the product, checked on basis pairs.
pub fn is_subalgebra<T: Field>(algebra: &FunctionAlgebra, s: &Subspace<T>) -> bool {
    use crate::function_algebra::FunctionElement;
    let elems: Vec<FunctionElement<T>> = s
        .basis()
        .iter()
        .map(|v| FunctionElement::from_coords(algebra, v).expect("ambient matches"))
        .collect();
    elems.iter().all(|a| {
        elems
            .iter()
            .all(|b| s.contains(&a.multiply(b).expect("same algebra").to_coords()).unwrap_or(false))
    })
}

/// `N(J) = J + C₀(X, ℂ1)`, for algebras with a unique maximal ideal.
pub fn normalizer_decomposition_check<T: Field>(algebra: &FunctionAlgebra, ideal: &PointwiseIdeal<'_>) -> Result<Report> {
    if algebra.spec().block_count() != 1 {
        return Err(Error::Precondition(format!(
            "needs a unique maximal ideal (one block), found {} blocks",
            algebra.spec().block_count()
        )));
    }
    let j = algebra.ideal_subspace::<T>(ideal.stalks())?;
    let n = lie_normalizer(algebra, &j)?;
    let expected = j.sum(&algebra.scalar_functions())?;
    let mut report = Report::new();
    report.record(n == expected, ideal.display_stalks(), "normalizer-equals-ideal-plus-scalars");
    Ok(report)
}

/// The pointwise normalizer `x ↦ N(I_{stalk(x)})` computed inside `A`.
pub fn pointwise_normalizer<T: Field>(algebra: &FunctionAlgebra, ideal: &PointwiseIdeal<'_>) -> Result<Subspace<T>> {
    let base = FunctionAlgebra::base(algebra.spec())?;
    let stalks = ideal
        .stalks()
        .iter()
        .map(|&s| {
            let i = base.ideal_subspace::<T>(&[s])?;
            lie_normalizer(&base, &i)
        })
        .collect::<Result<Vec<_>>>()?;
    algebra.pointwise_subspace(&stalks)
}

/// `N(θ(S))` equals the pointwise family of normalizers.
pub fn check_pointwise_normalizer<T: Field>(algebra: &FunctionAlgebra, family: &ClosedFamily<'_>) -> Result<bool> {
    let j = theta(family)?;
    let direct = lie_normalizer(algebra, &algebra.ideal_subspace::<T>(j.stalks())?)?;
    Ok(direct == pointwise_normalizer::<T>(algebra, &j)?)
}

/// The map `M ↦ M ∩ Z(B)` is injective on maximal ideals.
pub fn weak_centrality<T: Field>(algebra: &FunctionAlgebra) -> bool {
    let l = algebra.lattice();
    let z = algebra.centre::<T>();
    let mut images: Vec<Subspace<T>> = Vec::new();
    for x in 0..algebra.point_count() {
        for c in l.coatoms() {
            let mut stalks = vec![l.top(); algebra.point_count()];
            stalks[x] = c;
            let m = algebra.ideal_subspace::<T>(&stalks).expect("stalks in range");
            let image = m.intersect(&z).expect("same ambient");
            if images.contains(&image) {
                return false;
            }
            images.push(image);
        }
    }
    true
}

/// Whether `B` has the centre-quotient property.
pub fn check_cqp<T: Field>(algebra: &FunctionAlgebra) -> Result<(bool, Report)> {
    let analysis = LieAnalysis::<T>::new(algebra)?;
    let report = analysis.check_cqp();
    Ok((report.passed(), report))
}

/// CQP of `A^X` versus CQP of `A` in both directions, and weak centrality
/// versus CQP on `A^X`.
pub fn cqp_transfer_check<T: Field>(spec: &AlgebraSpec, space: SpaceModel) -> Result<Report> {
    let mut report = Report::new();
    let subject = format!("points={}", space.point_count());
    if space.point_count() == 0 {
        report.record(Status::Skip, subject, "empty-space: B is the zero algebra");
        return Ok(report);
    }
    let a = FunctionAlgebra::base(spec)?;
    let b = FunctionAlgebra::new(spec, space)?;
    let (cqp_a, _) = check_cqp::<T>(&a)?;
    let (cqp_b, _) = check_cqp::<T>(&b)?;
    report.record(!cqp_b || cqp_a, subject.clone(), "cqp(B) implies cqp(A)");
    report.record(!cqp_a || cqp_b, subject.clone(), "cqp(A) implies cqp(B)");
    report.record(weak_centrality::<T>(&b) == cqp_b, subject.clone(), "weak-central(B) iff cqp(B)");
    report.record(cqp_b, subject, "cqp(B)");
    Ok(report)
}

/// Random element of `s` with small Gaussian-integer coefficients.
pub fn random_member<T: Field, R: Rng + ?Sized>(rng: &mut R, s: &Subspace<T>) -> Vec<T> {
    let mut v = vec![T::zero(); s.ambient_dim()];
    for b in s.basis() {
        let c = T::from_int(rng.gen_range(-2..=2));
        if c.is_zero() {
            continue;
        }
        for (x, y) in v.iter_mut().zip(b) {
            *x = x.clone() + c.clone() * y.clone();
        }
    }
    v
}

/// `span(lower ∪ R)` with `R` a few random members of `upper`.
pub fn random_between<T: Field, R: Rng + ?Sized>(rng: &mut R, lower: &Subspace<T>, upper: &Subspace<T>) -> Subspace<T> {
    let extra = rng.gen_range(0..=upper.dim());
    let mut rows: Vec<Vec<T>> = lower.basis().to_vec();
    rows.extend((0..extra).map(|_| random_member(rng, upper)));
    Subspace::span(&rows, lower.ambient_dim()).expect("same ambient")
}

/// A random subspace of `B`, biased toward structured pieces (centre,
/// commutators, coordinates) so that Lie ideals show up with useful frequency.
pub fn random_subspace<T: Field, R: Rng + ?Sized>(rng: &mut R, analysis: &LieAnalysis<'_, T>) -> Subspace<T> {
    let d = analysis.algebra().dim();
    let count = rng.gen_range(0..=d.min(4));
    let full = Subspace::full(d);
    let rows: Vec<Vec<T>> = (0..count)
        .map(|_| match rng.gen_range(0..4) {
            0 => random_member(rng, analysis.centre()),
            1 => random_member(rng, analysis.commutators()),
            2 => unit_vector(d, rng.gen_range(0..d.max(1))),
            _ => random_member(rng, &full),
        })
        .collect();
    Subspace::span(&rows, d).expect("same ambient")
}

/// Outcome of [`sandwich_suite`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SandwichSummary {
    /// Subspaces built between `[J, B]` and `N(J)`.
    pub between_checked: usize,
    /// Unstructured random subspaces.
    pub random_checked: usize,
    /// How many of the random ones were Lie ideals.
    pub random_lie_ideals: usize,
    /// Cases where "is a Lie ideal" and "has a witness" disagreed, or a
    /// sandwiched subspace failed to be a Lie ideal.
    pub discrepancies: Vec<String>,
}

/// For every ideal `J`, `per_ideal` random subspaces between `[J, B]` and
/// `N(J)` must be Lie ideals with a witness; then `random_count` arbitrary
/// subspaces must have a witness exactly when they are Lie ideals.
pub fn sandwich_suite<T: Field, R: Rng + ?Sized>(
    analysis: &LieAnalysis<'_, T>,
    rng: &mut R,
    per_ideal: usize,
    random_count: usize,
) -> SandwichSummary {
    let algebra = analysis.algebra();
    let mut summary = SandwichSummary::default();
    for b in analysis.bounds() {
        for k in 0..per_ideal {
            let l = random_between(rng, &b.lower, &b.upper);
            summary.between_checked += 1;
            if !is_lie_ideal(algebra, &l) {
                summary
                    .discrepancies
                    .push(format!("J={} sample {k}: sandwiched subspace is not a Lie ideal", b.ideal.display_stalks()));
            }
            if analysis.sandwich_witness(&l).is_none() {
                summary
                    .discrepancies
                    .push(format!("J={} sample {k}: no witness found", b.ideal.display_stalks()));
            }
        }
    }
    for k in 0..random_count {
        let l = random_subspace(rng, analysis);
        summary.random_checked += 1;
        let lie = is_lie_ideal(algebra, &l);
        let witness = analysis.sandwich_witness(&l).is_some();
        if lie {
            summary.random_lie_ideals += 1;
        }
        if lie != witness {
            summary
                .discrepancies
                .push(format!("random sample {k} (dim {}): lie ideal = {lie}, witness = {witness}", l.dim()));
        }
    }
    summary
}

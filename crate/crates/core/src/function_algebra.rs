//! The finite model of `C₀(X, A)`: for a discrete `X` it is the product
//! algebra `B = A^X`, and `C₀(X) ⊗ A` is identified with it through
//! `f ⊗ a ↦ (x ↦ f(x)·a)`.
//!
//! Ideals of `B` are stored as stalk maps `x ↦ lattice index`. Subspaces are
//! materialized only when a linear-algebra check needs them. Coordinates of
//! `B` are point-major: point `x` occupies `x·dim A .. (x+1)·dim A`.

use crate::error::{Error, Result};
use crate::fdalgebra::{self, AlgebraSpec, Element, IdealLattice};
use crate::lattice::{BoundedLattice, ClosedFamily, PointSet, SpaceModel};
use crate::linalg::Subspace;
use crate::scalar::Field;

/// Default cap on the number of stalk assignments `(2^k)^|X|`.
pub const DEFAULT_IDEAL_BOUND: usize = 1 << 16;

/// `B = A^X` together with the ideal lattice of `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionAlgebra {
    ideals: IdealLattice,
    space: SpaceModel,
}

impl FunctionAlgebra {
    pub fn new(spec: &AlgebraSpec, space: SpaceModel) -> Result<Self> {
        let ideals = fdalgebra::block_ideal_lattice(spec, fdalgebra::DEFAULT_MAX_BLOCKS)?;
        Ok(FunctionAlgebra { ideals, space })
    }

    /// `A` itself, as functions on a single point.
    pub fn base(spec: &AlgebraSpec) -> Result<Self> {
        Self::new(spec, SpaceModel::new(1)?)
    }

    pub fn spec(&self) -> &AlgebraSpec {
        self.ideals.spec()
    }

    pub fn space(&self) -> SpaceModel {
        self.space
    }

    pub fn point_count(&self) -> usize {
        self.space.point_count()
    }

    /// Ideal lattice of `A`; lattice index = block mask.
    pub fn ideal_lattice(&self) -> &IdealLattice {
        &self.ideals
    }

    pub fn lattice(&self) -> &BoundedLattice {
        self.ideals.lattice()
    }

    pub fn dim(&self) -> usize {
        self.point_count() * self.spec().dim()
    }

    /// Direct sum of one subspace of `A` per point.
    pub fn pointwise_subspace<T: Field>(&self, stalks: &[Subspace<T>]) -> Result<Subspace<T>> {
        if stalks.len() != self.point_count() {
            return Err(Error::DimensionMismatch {
                expected: self.point_count(),
                found: stalks.len(),
            });
        }
        let d = self.spec().dim();
        let mut rows = Vec::new();
        for (x, s) in stalks.iter().enumerate() {
            if s.ambient_dim() != d {
                return Err(Error::DimensionMismatch { expected: d, found: s.ambient_dim() });
            }
            for b in s.basis() {
                let mut row = vec![T::zero(); self.dim()];
                row[x * d..(x + 1) * d].clone_from_slice(b);
                rows.push(row);
            }
        }
        // stalks are canonical and live on disjoint coordinates, so this is cheap
        Subspace::span(&rows, self.dim())
    }

    /// Splits a subspace of `B` into the part carried at each point, when it
    /// is a direct sum of such parts.
    pub fn split_pointwise<T: Field>(&self, space: &Subspace<T>) -> Option<Vec<Subspace<T>>> {
        let d = self.spec().dim();
        let mut parts = vec![Vec::new(); self.point_count()];
        for row in space.basis() {
            let support: Vec<usize> = (0..self.point_count())
                .filter(|&x| row[x * d..(x + 1) * d].iter().any(|v| !v.is_zero()))
                .collect();
            if support.len() != 1 {
                return None;
            }
            parts[support[0]].push(row[support[0] * d..(support[0] + 1) * d].to_vec());
        }
        parts
            .into_iter()
            .map(|rows| Subspace::span(&rows, d).ok())
            .collect()
    }

    /// The subspace `⊕_x I_{stalk(x)}`.
    pub fn ideal_subspace<T: Field>(&self, stalks: &[usize]) -> Result<Subspace<T>> {
        if stalks.len() != self.point_count() {
            return Err(Error::DimensionMismatch {
                expected: self.point_count(),
                found: stalks.len(),
            });
        }
        let d = self.spec().dim();
        let mut coords = Vec::new();
        for (x, &s) in stalks.iter().enumerate() {
            self.lattice().check_index(s)?;
            coords.extend(self.spec().mask_coordinates(s).map(|c| x * d + c));
        }
        Ok(Subspace::coordinate(self.dim(), coords))
    }

    /// Functions with scalar-multiple-of-identity values: `C₀(X, ℂ1)`.
    pub fn scalar_functions<T: Field>(&self) -> Subspace<T> {
        let d = self.spec().dim();
        let one = Element::<T>::identity(self.spec()).to_coords();
        let rows: Vec<Vec<T>> = (0..self.point_count())
            .map(|x| {
                let mut row = vec![T::zero(); self.dim()];
                row[x * d..(x + 1) * d].clone_from_slice(&one);
                row
            })
            .collect();
        Subspace::span(&rows, self.dim()).expect("rows have ambient length")
    }

    /// Centre of `B`: pointwise centre of `A`.
    pub fn centre<T: Field>(&self) -> Subspace<T> {
        let z = fdalgebra::centre::<T>(self.spec());
        self.pointwise_subspace(&vec![z; self.point_count()])
            .expect("stalks match")
    }

    /// `[B, B]`, the pointwise commutator span.
    pub fn commutator_span<T: Field>(&self) -> Subspace<T> {
        let c = fdalgebra::commutator_span::<T>(self.spec());
        self.pointwise_subspace(&vec![c; self.point_count()])
            .expect("stalks match")
    }

    /// `(point, unit)` for a coordinate of `B`.
    pub fn coordinate_position(&self, index: usize) -> (usize, usize) {
        let d = self.spec().dim();
        (index / d, index % d)
    }

    /// `[e, v]` with `e` the basis element at coordinate `unit` of `B`.
    pub fn unit_commutator<T: Field>(&self, unit: usize, v: &[T]) -> Vec<T> {
        let (x, u) = self.coordinate_position(unit);
        let mut out = vec![T::zero(); self.dim()];
        fdalgebra::unit_commutator_into(self.spec(), u, v, x * self.spec().dim(), &mut out);
        out
    }

    /// Whether a subspace of `B` is closed under multiplication by `B` on both sides.
    pub fn is_two_sided_invariant<T: Field>(&self, space: &Subspace<T>) -> bool {
        let spec = self.spec();
        let units = fdalgebra::basis::<T>(spec);
        space.basis().iter().all(|v| {
            let f = FunctionElement::from_coords(self, v).expect("ambient matches");
            (0..self.point_count()).all(|x| {
                units.iter().all(|a| {
                    let g = FunctionElement::point_mass(self, x, a);
                    let left = g.multiply(&f).expect("same algebra").to_coords();
                    let right = f.multiply(&g).expect("same algebra").to_coords();
                    space.contains(&left).unwrap_or(false) && space.contains(&right).unwrap_or(false)
                })
            })
        })
    }

    /// Every stalk assignment, each verified two-sided invariant. Order is
    /// lexicographic on the stalk tuple.
    pub fn enumerate_all_ideals<T: Field>(&self, bound: usize) -> Result<Vec<PointwiseIdeal<'_>>> {
        let ideals = PointwiseIdeal::all(self.lattice(), self.space, bound)?;
        for j in &ideals {
            let s = self.ideal_subspace::<T>(j.stalks())?;
            if !self.is_two_sided_invariant(&s) {
                return Err(Error::Precondition(format!(
                    "pointwise ideal {:?} is not two-sided invariant",
                    j.stalks()
                )));
            }
        }
        Ok(ideals)
    }

    /// The family `0` on `Y`, `C` off `Y`: the image of `J(Y) ⊗ C`.
    pub fn product_subspace<T: Field>(&self, y: PointSet, c: &Subspace<T>) -> Result<Vec<Subspace<T>>> {
        self.space.check_set(y)?;
        let d = self.spec().dim();
        if c.ambient_dim() != d {
            return Err(Error::DimensionMismatch { expected: d, found: c.ambient_dim() });
        }
        Ok((0..self.point_count())
            .map(|x| if y.contains(x) { Subspace::zero(d) } else { c.clone() })
            .collect())
    }

    /// Checks `C₀(X) ⊗ I_t + J(Y) ⊗ A = { f : f(Y) ⊆ I_t }` as subspaces.
    pub fn verify_ideal_from_y<T: Field>(&self, y: PointSet, t: usize) -> Result<bool> {
        let rhs = ideal_from_y_and_i(self.lattice(), self.space, y, t)?;
        let it = self.ideal_lattice().ideal(t).subspace::<T>();
        let whole = Subspace::<T>::full(self.spec().dim());
        let first = self.product_subspace(PointSet::EMPTY, &it)?;
        let second = self.product_subspace(y, &whole)?;
        let sum: Vec<Subspace<T>> = first
            .iter()
            .zip(&second)
            .map(|(a, b)| a.sum(b))
            .collect::<Result<_>>()?;
        Ok(self.pointwise_subspace(&sum)? == self.ideal_subspace::<T>(rhs.stalks())?)
    }
}

/// A function `X → A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionElement<T> {
    values: Vec<Element<T>>,
}

impl<T: Field> FunctionElement<T> {
    pub fn new(algebra: &FunctionAlgebra, values: Vec<Element<T>>) -> Result<Self> {
        if values.len() != algebra.point_count() {
            return Err(Error::DimensionMismatch {
                expected: algebra.point_count(),
                found: values.len(),
            });
        }
        if values.iter().any(|v| v.spec() != algebra.spec()) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(FunctionElement { values })
    }

    /// The constant function `x ↦ a`.
    pub fn constant(algebra: &FunctionAlgebra, a: &Element<T>) -> Self {
        FunctionElement { values: vec![a.clone(); algebra.point_count()] }
    }

    /// `x ↦ g(x)·1` for a scalar function `g`.
    pub fn scalar(algebra: &FunctionAlgebra, g: &[T]) -> Result<Self> {
        if g.len() != algebra.point_count() {
            return Err(Error::DimensionMismatch {
                expected: algebra.point_count(),
                found: g.len(),
            });
        }
        let one = Element::identity(algebra.spec());
        Ok(FunctionElement { values: g.iter().map(|c| one.scale(c)).collect() })
    }

    /// `a` at `point`, zero elsewhere.
    pub fn point_mass(algebra: &FunctionAlgebra, point: usize, a: &Element<T>) -> Self {
        let mut values = vec![Element::zero(algebra.spec()); algebra.point_count()];
        values[point] = a.clone();
        FunctionElement { values }
    }

    pub fn from_coords(algebra: &FunctionAlgebra, coords: &[T]) -> Result<Self> {
        if coords.len() != algebra.dim() {
            return Err(Error::DimensionMismatch { expected: algebra.dim(), found: coords.len() });
        }
        let d = algebra.spec().dim();
        let values = (0..algebra.point_count())
            .map(|x| Element::from_coords(algebra.spec(), &coords[x * d..(x + 1) * d]))
            .collect::<Result<_>>()?;
        Ok(FunctionElement { values })
    }

    pub fn to_coords(&self) -> Vec<T> {
        self.values.iter().flat_map(|v| v.to_coords()).collect()
    }

    pub fn values(&self) -> &[Element<T>] {
        &self.values
    }

    fn pointwise(&self, other: &Self, f: impl Fn(&Element<T>, &Element<T>) -> Result<Element<T>>) -> Result<Self> {
        if self.values.len() != other.values.len() {
            return Err(Error::AlgebraMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| f(a, b))
            .collect::<Result<_>>()?;
        Ok(FunctionElement { values })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.pointwise(other, Element::add)
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.pointwise(other, Element::multiply)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.pointwise(other, Element::commutator)
    }
}

/// An ideal of `B`, as the map `x ↦ index of I_x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointwiseIdeal<'a> {
    lattice: &'a BoundedLattice,
    stalks: Vec<usize>,
}

impl<'a> PointwiseIdeal<'a> {
    pub fn new(lattice: &'a BoundedLattice, stalks: Vec<usize>) -> Result<Self> {
        for &s in &stalks {
            lattice.check_index(s)?;
        }
        Ok(PointwiseIdeal { lattice, stalks })
    }

    /// Every stalk assignment, lexicographic.
    pub fn all(lattice: &'a BoundedLattice, space: SpaceModel, bound: usize) -> Result<Vec<Self>> {
        let n = lattice.size();
        let p = space.point_count();
        let count = (n as u128).checked_pow(p as u32).unwrap_or(u128::MAX);
        if count > bound as u128 {
            return Err(Error::BoundExceeded {
                what: "pointwise ideal count",
                value: count.min(usize::MAX as u128) as usize,
                limit: bound,
            });
        }
        let mut out = Vec::with_capacity(count as usize);
        let mut stalks = vec![0usize; p];
        loop {
            out.push(PointwiseIdeal { lattice, stalks: stalks.clone() });
            // odometer, last point fastest
            let mut x = p;
            loop {
                if x == 0 {
                    return Ok(out);
                }
                x -= 1;
                stalks[x] += 1;
                if stalks[x] < n {
                    break;
                }
                stalks[x] = 0;
            }
        }
    }

    pub fn lattice(&self) -> &'a BoundedLattice {
        self.lattice
    }

    pub fn stalks(&self) -> &[usize] {
        &self.stalks
    }

    pub fn stalk(&self, x: usize) -> usize {
        self.stalks[x]
    }

    /// Stalk-wise order.
    pub fn is_contained_in(&self, other: &PointwiseIdeal<'_>) -> bool {
        self.stalks.len() == other.stalks.len()
            && self.stalks.iter().zip(&other.stalks).all(|(&a, &b)| self.lattice.leq(a, b))
    }

    /// 1-based stalk list.
    pub fn display_stalks(&self) -> String {
        let items: Vec<String> = self.stalks.iter().map(|s| (s + 1).to_string()).collect();
        format!("[{}]", items.join(","))
    }
}

/// `J(S) = { f : f(S_i) ⊆ I_i for all i }`: stalk at `x` is the meet of all
/// `i` with `x ∈ S_i`.
pub fn theta<'a>(family: &ClosedFamily<'a>) -> Result<PointwiseIdeal<'a>> {
    if let Some(reason) = family.incompatibility() {
        return Err(Error::Incompatible(reason));
    }
    let l = family.lattice();
    let stalks = (0..family.space().point_count())
        .map(|x| l.meet_all((0..l.size()).filter(|&i| family.set(i).contains(x))))
        .collect();
    Ok(PointwiseIdeal { lattice: l, stalks })
}

/// `S_i = { x : stalk(x) ≤ i }`.
pub fn recover_s<'a>(ideal: &PointwiseIdeal<'a>, space: SpaceModel) -> Result<ClosedFamily<'a>> {
    if ideal.stalks.len() != space.point_count() {
        return Err(Error::DimensionMismatch {
            expected: space.point_count(),
            found: ideal.stalks.len(),
        });
    }
    let l = ideal.lattice;
    let sets = (0..l.size())
        .map(|i| PointSet::from_points((0..space.point_count()).filter(|&x| l.leq(ideal.stalks[x], i))))
        .collect();
    ClosedFamily::new(l, space, sets)
}

/// `{ f : f(Y) ⊆ I_t }`: stalk `t` on `Y`, top elsewhere.
pub fn ideal_from_y_and_i<'a>(
    lattice: &'a BoundedLattice,
    space: SpaceModel,
    y: PointSet,
    t: usize,
) -> Result<PointwiseIdeal<'a>> {
    space.check_set(y)?;
    lattice.check_index(t)?;
    let stalks = (0..space.point_count())
        .map(|x| if y.contains(x) { t } else { lattice.top() })
        .collect();
    Ok(PointwiseIdeal { lattice, stalks })
}

/// Lattice-level form of the same equality: the stalk-wise join of
/// `(t everywhere)` and `(bottom on Y, top off Y)` equals the right-hand side.
pub fn ideal_from_y_join_check(lattice: &BoundedLattice, space: SpaceModel, y: PointSet, t: usize) -> Result<bool> {
    let rhs = ideal_from_y_and_i(lattice, space, y, t)?;
    Ok((0..space.point_count()).all(|x| {
        let vanishing = if y.contains(x) { lattice.bottom() } else { lattice.top() };
        lattice.join(t, vanishing) == rhs.stalk(x)
    }))
}

//! Finite-dimensional block algebras `M_{n_1} ⊕ … ⊕ M_{n_k}`.
//!
//! Coordinates follow one fixed basis order: blocks in spec order, and within
//! block `b` the matrix units `e_pq` row-major. Every canonical form in the
//! crate is computed against this order.

use crate::error::{Error, Result};
use crate::lattice::BoundedLattice;
use crate::linalg::{dot, Subspace};
use crate::scalar::Field;

/// Default cap on the number of blocks accepted by [`enumerate_ideals`].
pub const DEFAULT_MAX_BLOCKS: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraSpec {
    block_dims: Vec<usize>,
    offsets: Vec<usize>,
}

impl AlgebraSpec {
    pub fn new(block_dims: Vec<usize>) -> Result<Self> {
        if block_dims.is_empty() {
            return Err(Error::InvalidSpec("at least one block is required".into()));
        }
        if let Some(b) = block_dims.iter().position(|&n| n == 0) {
            return Err(Error::InvalidSpec(format!("block {b} has size 0")));
        }
        let mut offsets = Vec::with_capacity(block_dims.len());
        let mut acc = 0;
        for &n in &block_dims {
            offsets.push(acc);
            acc += n * n;
        }
        Ok(AlgebraSpec { block_dims, offsets })
    }

    pub fn block_dims(&self) -> &[usize] {
        &self.block_dims
    }

    pub fn block_count(&self) -> usize {
        self.block_dims.len()
    }

    /// Linear dimension `Σ n_b²`.
    pub fn dim(&self) -> usize {
        self.block_dims.iter().map(|n| n * n).sum()
    }

    pub fn block_offset(&self, block: usize) -> usize {
        self.offsets[block]
    }

    /// Coordinate index of the matrix unit `e_pq` in `block`.
    pub fn unit_index(&self, block: usize, p: usize, q: usize) -> usize {
        let n = self.block_dims[block];
        self.offsets[block] + p * n + q
    }

    /// Inverse of [`unit_index`](Self::unit_index): `(block, p, q)`.
    pub fn unit_position(&self, index: usize) -> (usize, usize, usize) {
        let block = self.offsets.partition_point(|&o| o <= index) - 1;
        let n = self.block_dims[block];
        let local = index - self.offsets[block];
        (block, local / n, local % n)
    }

    /// Bitmask with every block present.
    pub fn full_mask(&self) -> usize {
        (1usize << self.block_count()) - 1
    }

    /// Coordinates that belong to the blocks in `mask`.
    pub fn mask_coordinates(&self, mask: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.block_count())
            .filter(move |b| mask >> b & 1 == 1)
            .flat_map(move |b| {
                let n = self.block_dims[b];
                self.offsets[b]..self.offsets[b] + n * n
            })
    }
}

/// A member of a block algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element<T> {
    spec: AlgebraSpec,
    blocks: Vec<Vec<T>>,
}

impl<T: Field> Element<T> {
    pub fn zero(spec: &AlgebraSpec) -> Self {
        let blocks = spec.block_dims().iter().map(|n| vec![T::zero(); n * n]).collect();
        Element { spec: spec.clone(), blocks }
    }

    pub fn identity(spec: &AlgebraSpec) -> Self {
        let mut e = Self::zero(spec);
        for (b, &n) in spec.block_dims().iter().enumerate() {
            for p in 0..n {
                e.blocks[b][p * n + p] = T::one();
            }
        }
        e
    }

    /// The identity of one block, zero elsewhere.
    pub fn block_identity(spec: &AlgebraSpec, block: usize) -> Self {
        let mut e = Self::zero(spec);
        let n = spec.block_dims()[block];
        for p in 0..n {
            e.blocks[block][p * n + p] = T::one();
        }
        e
    }

    pub fn matrix_unit(spec: &AlgebraSpec, block: usize, p: usize, q: usize) -> Self {
        let mut e = Self::zero(spec);
        let n = spec.block_dims()[block];
        e.blocks[block][p * n + q] = T::one();
        e
    }

    /// Builds from row-major square matrices, one per block.
    pub fn from_blocks(spec: &AlgebraSpec, blocks: Vec<Vec<T>>) -> Result<Self> {
        if blocks.len() != spec.block_count() {
            return Err(Error::DimensionMismatch {
                expected: spec.block_count(),
                found: blocks.len(),
            });
        }
        for (block, &n) in blocks.iter().zip(spec.block_dims()) {
            if block.len() != n * n {
                return Err(Error::DimensionMismatch {
                    expected: n * n,
                    found: block.len(),
                });
            }
        }
        Ok(Element { spec: spec.clone(), blocks })
    }

    pub fn from_coords(spec: &AlgebraSpec, coords: &[T]) -> Result<Self> {
        if coords.len() != spec.dim() {
            return Err(Error::DimensionMismatch {
                expected: spec.dim(),
                found: coords.len(),
            });
        }
        let blocks = spec
            .block_dims()
            .iter()
            .enumerate()
            .map(|(b, n)| {
                let o = spec.block_offset(b);
                coords[o..o + n * n].to_vec()
            })
            .collect();
        Ok(Element { spec: spec.clone(), blocks })
    }

    pub fn to_coords(&self) -> Vec<T> {
        self.blocks.iter().flatten().cloned().collect()
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn blocks(&self) -> &[Vec<T>] {
        &self.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().flatten().all(|x| x.is_zero())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        self.check_same(other)?;
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(x, y)).collect())
            .collect();
        Ok(Element { spec: self.spec.clone(), blocks })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |x, y| x.clone() + y.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |x, y| x.clone() - y.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|x| c.clone() * x.clone()).collect())
            .collect();
        Element { spec: self.spec.clone(), blocks }
    }

    /// Blockwise matrix product.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let blocks = self
            .spec
            .block_dims()
            .iter()
            .zip(self.blocks.iter().zip(&other.blocks))
            .map(|(&n, (a, b))| {
                let mut c = vec![T::zero(); n * n];
                for i in 0..n {
                    for k in 0..n {
                        let aik = &a[i * n + k];
                        if aik.is_zero() {
                            continue;
                        }
                        for j in 0..n {
                            let bkj = &b[k * n + j];
                            if !bkj.is_zero() {
                                c[i * n + j] = c[i * n + j].clone() + aik.clone() * bkj.clone();
                            }
                        }
                    }
                }
                c
            })
            .collect();
        Ok(Element { spec: self.spec.clone(), blocks })
    }

    /// `xy − yx`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.multiply(other)?.sub(&other.multiply(self)?)
    }
}

/// Matrix units in basis order.
pub fn basis<T: Field>(spec: &AlgebraSpec) -> Vec<Element<T>> {
    (0..spec.dim())
        .map(|i| {
            let (b, p, q) = spec.unit_position(i);
            Element::matrix_unit(spec, b, p, q)
        })
        .collect()
}

/// `[e, v]` where `e` is the matrix unit at coordinate `unit` and `v` is an
/// arbitrary coordinate vector; `v` is read in the same layout, starting at
/// `base` inside a larger vector. Writes nothing outside the unit's block.
pub(crate) fn unit_commutator_into<T: Field>(
    spec: &AlgebraSpec,
    unit: usize,
    v: &[T],
    base: usize,
    out: &mut [T],
) {
    let (block, p, q) = spec.unit_position(unit);
    let n = spec.block_dims()[block];
    let o = base + spec.block_offset(block);
    // (e_pq v)_{p,s} = v_{q,s}
    for s in 0..n {
        let x = &v[o + q * n + s];
        if !x.is_zero() {
            out[o + p * n + s] = out[o + p * n + s].clone() + x.clone();
        }
    }
    // (v e_pq)_{r,q} = v_{r,p}
    for r in 0..n {
        let x = &v[o + r * n + p];
        if !x.is_zero() {
            out[o + r * n + q] = out[o + r * n + q].clone() - x.clone();
        }
    }
}

/// The centre: span of the block identities, dimension `k`.
pub fn centre<T: Field>(spec: &AlgebraSpec) -> Subspace<T> {
    let rows: Vec<Vec<T>> = (0..spec.block_count())
        .map(|b| Element::<T>::block_identity(spec, b).to_coords())
        .collect();
    Subspace::span(&rows, spec.dim()).expect("block identities have ambient length")
}

/// Span of all commutators of basis pairs.
pub fn commutator_span<T: Field>(spec: &AlgebraSpec) -> Subspace<T> {
    let d = spec.dim();
    let mut rows = Vec::new();
    for a in 0..d {
        let ba = spec.unit_position(a).0;
        for b in 0..d {
            if spec.unit_position(b).0 != ba {
                continue;
            }
            let mut v = vec![T::zero(); d];
            v[b] = T::one();
            let mut out = vec![T::zero(); d];
            unit_commutator_into(spec, a, &v, 0, &mut out);
            if out.iter().any(|x| !x.is_zero()) {
                rows.push(out);
            }
        }
    }
    Subspace::span(&rows, d).expect("commutators have ambient length")
}

/// A two-sided ideal of a block algebra: the direct sum of the blocks in
/// `blocks_present`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockIdeal {
    spec: AlgebraSpec,
    blocks_present: usize,
}

impl BlockIdeal {
    pub fn new(spec: &AlgebraSpec, blocks_present: usize) -> Result<Self> {
        if blocks_present > spec.full_mask() {
            return Err(Error::InvalidSpec(format!(
                "block mask {blocks_present:#b} exceeds {} blocks",
                spec.block_count()
            )));
        }
        Ok(BlockIdeal { spec: spec.clone(), blocks_present })
    }

    pub fn mask(&self) -> usize {
        self.blocks_present
    }

    pub fn subspace<T: Field>(&self) -> Subspace<T> {
        Subspace::coordinate(self.spec.dim(), self.spec.mask_coordinates(self.blocks_present))
    }

    /// Checks `a·v` and `v·a` stay inside for every pair of basis elements.
    pub fn is_two_sided_invariant<T: Field>(&self) -> bool {
        is_two_sided_invariant::<T>(&self.spec, &self.subspace())
    }
}

/// Whether `space` is closed under left and right multiplication by the algebra.
pub fn is_two_sided_invariant<T: Field>(spec: &AlgebraSpec, space: &Subspace<T>) -> bool {
    let units = basis::<T>(spec);
    space.basis().iter().all(|v| {
        let v = Element::from_coords(spec, v).expect("ambient matches spec");
        units.iter().all(|a| {
            let left = a.multiply(&v).expect("same spec").to_coords();
            let right = v.multiply(a).expect("same spec").to_coords();
            space.contains(&left).unwrap_or(false) && space.contains(&right).unwrap_or(false)
        })
    })
}

/// The ideals of a block algebra as a bounded lattice. Lattice index `i` is
/// the ideal whose block mask is `i`: index 0 is `{0}` and the last index is
/// the whole algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealLattice {
    spec: AlgebraSpec,
    lattice: BoundedLattice,
}

impl IdealLattice {
    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn lattice(&self) -> &BoundedLattice {
        &self.lattice
    }

    pub fn ideal(&self, index: usize) -> BlockIdeal {
        BlockIdeal { spec: self.spec.clone(), blocks_present: index }
    }

    pub fn ideals(&self) -> impl Iterator<Item = BlockIdeal> + '_ {
        (0..self.lattice.size()).map(|i| self.ideal(i))
    }

    /// Ideals of the form "all blocks but one".
    pub fn maximal_ideals(&self) -> Vec<BlockIdeal> {
        let full = self.spec.full_mask();
        (0..self.spec.block_count())
            .map(|b| self.ideal(full & !(1 << b)))
            .collect()
    }
}

/// The block-subset ideals of `spec`, each verified two-sided invariant.
pub fn enumerate_ideals<T: Field>(spec: &AlgebraSpec, max_blocks: usize) -> Result<IdealLattice> {
    let ideals = block_ideal_lattice(spec, max_blocks)?;
    for ideal in ideals.ideals() {
        if !ideal.is_two_sided_invariant::<T>() {
            return Err(Error::Precondition(format!(
                "block ideal {:#b} failed two-sided invariance",
                ideal.mask()
            )));
        }
    }
    Ok(ideals)
}

/// The same lattice without the invariance verification.
pub fn block_ideal_lattice(spec: &AlgebraSpec, max_blocks: usize) -> Result<IdealLattice> {
    if spec.block_count() > max_blocks {
        return Err(Error::BoundExceeded {
            what: "block count",
            value: spec.block_count(),
            limit: max_blocks,
        });
    }
    Ok(IdealLattice {
        spec: spec.clone(),
        lattice: BoundedLattice::boolean(spec.block_count()),
    })
}

/// A linear functional given by its coefficients in the basis order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFunctional<T> {
    pub coefficients: Vec<T>,
}

impl<T: Field> LinearFunctional<T> {
    pub fn eval(&self, v: &[T]) -> T {
        dot(&self.coefficients, v)
    }
}

/// The normalized block traces `tr_b / n_b`.
pub fn tracial_state_basis<T: Field>(spec: &AlgebraSpec) -> Vec<LinearFunctional<T>> {
    (0..spec.block_count())
        .map(|b| {
            let n = spec.block_dims()[b];
            let w = T::from_ratio(1, n as i64);
            let mut coefficients = vec![T::zero(); spec.dim()];
            for p in 0..n {
                coefficients[spec.unit_index(b, p, p)] = w.clone();
            }
            LinearFunctional { coefficients }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gaussian, GaussianRational};

    type Q = GaussianRational;

    fn spec(dims: &[usize]) -> AlgebraSpec {
        AlgebraSpec::new(dims.to_vec()).unwrap()
    }

    fn scalar_blocks(s: &AlgebraSpec, xs: &[i64]) -> Element<Q> {
        Element::from_blocks(s, xs.iter().map(|&x| vec![gaussian(x, 0)]).collect()).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(AlgebraSpec::new(vec![]).is_err());
        assert!(AlgebraSpec::new(vec![2, 0]).is_err());
        assert_eq!(spec(&[2, 3]).dim(), 13);
        let s = spec(&[1, 2, 3]);
        for i in 0..s.dim() {
            let (b, p, q) = s.unit_position(i);
            assert_eq!(s.unit_index(b, p, q), i);
        }
    }

    #[test]
    fn coords_roundtrip() {
        let s = spec(&[2, 1]);
        let coords: Vec<Q> = (0..5).map(|i| gaussian(i, 1 - i)).collect();
        let e = Element::from_coords(&s, &coords).unwrap();
        assert_eq!(e.to_coords(), coords);
        assert!(Element::<Q>::from_coords(&s, &coords[..4]).is_err());
    }

    #[test]
    fn multiply_examples() {
        let m2 = spec(&[2]);
        let x = Element::from_coords(&m2, &[gaussian(1, 2), gaussian(3, 0), gaussian(0, -1), gaussian(4, 4)]).unwrap();
        assert_eq!(x.multiply(&Element::identity(&m2)).unwrap(), x);
        let e11 = Element::<Q>::matrix_unit(&m2, 0, 0, 0);
        let e12 = Element::<Q>::matrix_unit(&m2, 0, 0, 1);
        assert_eq!(e11.multiply(&e12).unwrap(), e12);

        let s = spec(&[1, 1]);
        let prod = scalar_blocks(&s, &[2, 3]).multiply(&scalar_blocks(&s, &[5, 7])).unwrap();
        assert_eq!(prod, scalar_blocks(&s, &[10, 21]));
        assert_eq!(x.multiply(&prod), Err(Error::AlgebraMismatch));
    }

    #[test]
    fn commutator_examples() {
        let m2 = spec(&[2]);
        let x = Element::from_coords(&m2, &[gaussian(1, 0), gaussian(2, 0), gaussian(3, 0), gaussian(4, 1)]).unwrap();
        assert!(x.commutator(&x).unwrap().is_zero());
        assert!(x.commutator(&Element::identity(&m2)).unwrap().is_zero());
        let e12 = Element::<Q>::matrix_unit(&m2, 0, 0, 1);
        let e21 = Element::<Q>::matrix_unit(&m2, 0, 1, 0);
        let expected = Element::matrix_unit(&m2, 0, 0, 0).sub(&Element::matrix_unit(&m2, 0, 1, 1)).unwrap();
        assert_eq!(e12.commutator(&e21).unwrap(), expected);
    }

    #[test]
    fn sparse_unit_commutator_matches_dense_product() {
        let s = spec(&[2, 3]);
        let v: Vec<Q> = (0..s.dim() as i64).map(|i| gaussian(i * 3 % 7 - 3, i % 2)).collect();
        let ve = Element::from_coords(&s, &v).unwrap();
        for (u, e) in basis::<Q>(&s).iter().enumerate() {
            let mut out = vec![gaussian(0, 0); s.dim()];
            unit_commutator_into(&s, u, &v, 0, &mut out);
            assert_eq!(out, e.commutator(&ve).unwrap().to_coords());
        }
    }

    // Brute-force oracle for the centre: solve [z, e] = 0 for every matrix unit e.
    fn centre_by_solving(s: &AlgebraSpec) -> Subspace<Q> {
        let d = s.dim();
        let units = basis::<Q>(s);
        let mut rows = Vec::new();
        for e in &units {
            // column j of the map z ↦ [z, e] is [e_j, e]
            let cols: Vec<Vec<Q>> = units.iter().map(|z| z.commutator(e).unwrap().to_coords()).collect();
            for r in 0..d {
                rows.push((0..d).map(|j| cols[j][r].clone()).collect());
            }
        }
        crate::linalg::nullspace(&rows, d).unwrap()
    }

    #[test]
    fn centre_examples() {
        assert_eq!(centre::<Q>(&spec(&[2])).dim(), 1);
        assert_eq!(centre::<Q>(&spec(&[1, 1])), Subspace::full(2));
        let s = spec(&[2, 3]);
        let z = centre::<Q>(&s);
        assert_eq!(z.dim(), 2);
        assert_eq!(z, centre_by_solving(&s));
        assert_eq!(centre::<Q>(&spec(&[1, 2])), centre_by_solving(&spec(&[1, 2])));
    }

    // Oracle: span of dense commutators of all basis pairs.
    fn commutators_by_products(s: &AlgebraSpec) -> Subspace<Q> {
        let units = basis::<Q>(s);
        let mut rows = Vec::new();
        for a in &units {
            for b in &units {
                rows.push(a.commutator(b).unwrap().to_coords());
            }
        }
        Subspace::span(&rows, s.dim()).unwrap()
    }

    #[test]
    fn commutator_span_examples() {
        assert!(commutator_span::<Q>(&spec(&[1])).is_zero());
        let m2 = spec(&[2]);
        let c = commutator_span::<Q>(&m2);
        assert_eq!(c.dim(), 3);
        assert_eq!(c, commutators_by_products(&m2));
        // trace-zero matrices
        assert!(c.contains(&[gaussian(1, 0), gaussian(0, 0), gaussian(0, 0), gaussian(-1, 0)]).unwrap());
        assert!(!c.contains(&[gaussian(1, 0), gaussian(0, 0), gaussian(0, 0), gaussian(1, 0)]).unwrap());
        let s = spec(&[2, 1]);
        assert_eq!(commutator_span::<Q>(&s).dim(), 3);
        assert_eq!(commutator_span::<Q>(&s), commutators_by_products(&s));
        let s = spec(&[2, 3]);
        assert_eq!(commutator_span::<Q>(&s).dim(), 3 + 8);
    }

    #[test]
    fn centre_meets_commutators_trivially() {
        for dims in [&[1][..], &[2], &[1, 1], &[2, 3], &[1, 2, 2]] {
            let s = spec(dims);
            assert!(centre::<Q>(&s).intersect(&commutator_span(&s)).unwrap().is_zero());
        }
    }

    #[test]
    fn enumerate_ideals_examples() {
        let m2 = enumerate_ideals::<Q>(&spec(&[2]), DEFAULT_MAX_BLOCKS).unwrap();
        assert_eq!(m2.lattice().size(), 2);
        assert!(m2.ideal(0).subspace::<Q>().is_zero());
        assert_eq!(m2.ideal(1).subspace::<Q>(), Subspace::full(4));
        assert_eq!(enumerate_ideals::<Q>(&spec(&[1, 1]), 6).unwrap().lattice().size(), 4);
        let l = enumerate_ideals::<Q>(&spec(&[2, 1]), 6).unwrap();
        assert_eq!(l.lattice().size(), 4);
        assert_eq!(l.ideal(0b01).subspace::<Q>().dim(), 4);
        assert_eq!(l.ideal(0b10).subspace::<Q>().dim(), 1);
        assert!(matches!(
            enumerate_ideals::<Q>(&spec(&[1; 7]), DEFAULT_MAX_BLOCKS),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn non_block_subspace_is_not_an_ideal() {
        let m2 = spec(&[2]);
        let s = Subspace::coordinate(4, [1]);
        assert!(!is_two_sided_invariant::<Q>(&m2, &s));
    }

    #[test]
    fn maximal_ideals_meet_centre_injectively() {
        for dims in [&[2][..], &[1, 1], &[2, 3], &[1, 1, 2]] {
            let s = spec(dims);
            let lat = block_ideal_lattice(&s, 6).unwrap();
            let z = centre::<Q>(&s);
            let images: Vec<Subspace<Q>> = lat
                .maximal_ideals()
                .iter()
                .map(|m| m.subspace::<Q>().intersect(&z).unwrap())
                .collect();
            for i in 0..images.len() {
                for j in 0..i {
                    assert_ne!(images[i], images[j]);
                }
            }
        }
    }

    #[test]
    fn tracial_states() {
        let m2 = spec(&[2]);
        let t = tracial_state_basis::<Q>(&m2);
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].coefficients, vec![Q::from_ratio(1, 2), gaussian(0, 0), gaussian(0, 0), Q::from_ratio(1, 2)]);
        let s = spec(&[1, 1]);
        let t = tracial_state_basis::<Q>(&s);
        assert_eq!(t[0].coefficients, vec![gaussian(1, 0), gaussian(0, 0)]);
        assert_eq!(t[1].coefficients, vec![gaussian(0, 0), gaussian(1, 0)]);
        let s = spec(&[2, 3]);
        let t = tracial_state_basis::<Q>(&s);
        let comm = commutator_span::<Q>(&s);
        for (b, f) in t.iter().enumerate() {
            for c in 0..s.block_count() {
                let id = Element::<Q>::block_identity(&s, c).to_coords();
                let expected = if b == c { gaussian(1, 0) } else { gaussian(0, 0) };
                assert_eq!(f.eval(&id), expected);
            }
            for v in comm.basis() {
                assert_eq!(f.eval(v), gaussian(0, 0));
            }
        }
    }
}

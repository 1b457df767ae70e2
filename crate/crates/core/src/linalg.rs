//! Exact linear algebra on coordinate spaces.
//!
//! A [`Subspace`] is stored in reduced row-echelon form: every basis row is
//! nonzero, its leading entry is `1`, and the pivot columns are strictly
//! increasing and zero in every other row. That form is unique for a given
//! span, so two subspaces are equal as sets exactly when they compare equal
//! with `==`.

use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace<T> {
    ambient_dim: usize,
    basis: Vec<Vec<T>>,
    pivots: Vec<usize>,
}

/// Returns the canonical subspace spanned by `rows`.
pub fn rref<T: Field>(rows: &[Vec<T>], ambient_dim: usize) -> Result<Subspace<T>> {
    Subspace::span(rows, ambient_dim)
}

fn check_len<T>(v: &[T], ambient_dim: usize) -> Result<()> {
    if v.len() == ambient_dim {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: ambient_dim,
            found: v.len(),
        })
    }
}

/// Row reduction into canonical form, in place. Returns pivot columns.
fn reduce_rows<T: Field>(rows: &mut Vec<Vec<T>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = T::one() / rows[r][col].clone();
        if !inv.is_one() {
            for x in rows[r].iter_mut().skip(col) {
                *x = x.clone() * inv.clone();
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !p.is_zero() {
                    *x = x.clone() - factor.clone() * p.clone();
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

impl<T: Field> Subspace<T> {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim).map(|i| unit_vector(ambient_dim, i)).collect();
        Subspace {
            ambient_dim,
            basis,
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of arbitrary generators.
    pub fn span(rows: &[Vec<T>], ambient_dim: usize) -> Result<Self> {
        for row in rows {
            check_len(row, ambient_dim)?;
        }
        let mut rows: Vec<Vec<T>> = rows.iter().filter(|r| !is_zero_vector(r)).cloned().collect();
        let pivots = reduce_rows(&mut rows, ambient_dim);
        Ok(Subspace {
            ambient_dim,
            basis: rows,
            pivots,
        })
    }

    /// Span of the coordinate vectors at `indices`.
    pub fn coordinate(ambient_dim: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut idx: Vec<usize> = indices.into_iter().filter(|&i| i < ambient_dim).collect();
        idx.sort_unstable();
        idx.dedup();
        Subspace {
            ambient_dim,
            basis: idx.iter().map(|&i| unit_vector(ambient_dim, i)).collect(),
            pivots: idx,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<T>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical residue of `v` modulo this subspace: the pivot coordinates
    /// are eliminated. The map is linear and vanishes exactly on the subspace.
    pub fn residue(&self, v: &[T]) -> Result<Vec<T>> {
        check_len(v, self.ambient_dim)?;
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let factor = out[p].clone();
            for (x, b) in out.iter_mut().zip(row).skip(p) {
                if !b.is_zero() {
                    *x = x.clone() - factor.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    pub fn contains(&self, v: &[T]) -> Result<bool> {
        Ok(is_zero_vector(&self.residue(v)?))
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool> {
        self.check_ambient(other)?;
        for row in &self.basis {
            if !other.contains(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Smallest subspace containing both.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let rows: Vec<Vec<T>> = self.basis.iter().chain(&other.basis).cloned().collect();
        Self::span(&rows, self.ambient_dim)
    }

    /// Largest subspace contained in both, by the Zassenhaus scheme: reduce
    /// the rows `[u | u]` and `[v | 0]`; rows whose left half vanishes carry
    /// a basis of the intersection in their right half.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let n = self.ambient_dim;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(n));
        }
        let mut rows: Vec<Vec<T>> = Vec::with_capacity(self.dim() + other.dim());
        for u in &self.basis {
            let mut row = u.clone();
            row.extend(u.iter().cloned());
            rows.push(row);
        }
        for v in &other.basis {
            let mut row = v.clone();
            row.extend(std::iter::repeat_n(T::zero(), n));
            rows.push(row);
        }
        let pivots = reduce_rows(&mut rows, 2 * n);
        let tail: Vec<Vec<T>> = rows
            .into_iter()
            .zip(pivots)
            .filter(|&(_, p)| p >= n)
            .map(|(row, _)| row[n..].to_vec())
            .collect();
        Self::span(&tail, n)
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient_dim == other.ambient_dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            })
        }
    }
}

/// All `x` with `row · x = 0` for every row (bilinear, no conjugation).
pub fn nullspace<T: Field>(rows: &[Vec<T>], ncols: usize) -> Result<Subspace<T>> {
    let reduced = Subspace::span(rows, ncols)?;
    Ok(nullspace_of_reduced(&reduced))
}

/// Kernel of a system already in canonical form.
pub fn nullspace_of_reduced<T: Field>(reduced: &Subspace<T>) -> Subspace<T> {
    let ncols = reduced.ambient_dim();
    let pivots = reduced.pivots();
    let mut is_pivot = vec![false; ncols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let generators: Vec<Vec<T>> = (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut x = vec![T::zero(); ncols];
            x[free] = T::one();
            for (row, &p) in reduced.basis().iter().zip(pivots) {
                x[p] = -row[free].clone();
            }
            x
        })
        .collect();
    Subspace::span(&generators, ncols).expect("generators have ambient length")
}

/// Incremental row reduction for large constraint systems. Rows are reduced
/// against the current echelon basis as they arrive, so memory stays bounded
/// by the rank.
#[derive(Debug, Clone)]
pub struct EchelonBuilder<T> {
    ncols: usize,
    // (pivot column, row normalized so that the pivot is 1)
    rows: Vec<(usize, Vec<T>)>,
}

impl<T: Field> EchelonBuilder<T> {
    pub fn new(ncols: usize) -> Self {
        EchelonBuilder { ncols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// Adds a row; returns whether the rank grew.
    pub fn push(&mut self, mut row: Vec<T>) -> Result<bool> {
        check_len(&row, self.ncols)?;
        for (p, basis_row) in &self.rows {
            if row[*p].is_zero() {
                continue;
            }
            let factor = row[*p].clone();
            for (x, b) in row.iter_mut().zip(basis_row) {
                if !b.is_zero() {
                    *x = x.clone() - factor.clone() * b.clone();
                }
            }
        }
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = T::one() / row[p].clone();
        for x in row.iter_mut() {
            *x = x.clone() * inv.clone();
        }
        self.rows.push((p, row));
        Ok(true)
    }

    pub fn finish(self) -> Subspace<T> {
        let rows: Vec<Vec<T>> = self.rows.into_iter().map(|(_, r)| r).collect();
        Subspace::span(&rows, self.ncols).expect("rows have ambient length")
    }
}

pub fn unit_vector<T: Field>(dim: usize, i: usize) -> Vec<T> {
    let mut v = vec![T::zero(); dim];
    v[i] = T::one();
    v
}

pub fn is_zero_vector<T: Field>(v: &[T]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn add_vectors<T: Field>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn scale_vector<T: Field>(c: &T, v: &[T]) -> Vec<T> {
    v.iter().map(|x| c.clone() * x.clone()).collect()
}

pub fn dot<T: Field>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

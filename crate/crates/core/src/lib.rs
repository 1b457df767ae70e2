//! Exact finite models for closed ideals and closed Lie ideals of `C₀(X, A)`.
//!
//! `X` is a finite discrete space and `A` a block algebra
//! `M_{n_1} ⊕ … ⊕ M_{n_k}`, so `C₀(X, A) ≅ C₀(X) ⊗ A` is the product
//! algebra `A^X`. The crate computes
//!
//! - compatible families of closed sets and the correspondence
//!   [`theta`](function_algebra::theta) between them and ideals of `A^X`;
//! - the decomposition of an ideal as a finite sum of product ideals;
//! - Lie normalizers, commutator ideals, the centre-quotient property and
//!   weak centrality.
//!
//! Linear algebra is exact and generic over [`Field`]. The aliases below fix
//! the scalar to [`GaussianRational`].

pub mod decomposition;
pub mod error;
pub mod fdalgebra;
pub mod fixtures;
pub mod function_algebra;
pub mod lattice;
pub mod lie;
pub mod linalg;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{Field, GaussianRational};

/// Default exact scalar.
pub type Scalar = GaussianRational;
/// Subspace over [`Scalar`].
pub type Subspace = linalg::Subspace<Scalar>;
/// Element of a block algebra over [`Scalar`].
pub type Element = fdalgebra::Element<Scalar>;
/// Function `X → A` over [`Scalar`].
pub type FunctionElement = function_algebra::FunctionElement<Scalar>;
/// Subspace over the real rationals.
pub type RationalSubspace = linalg::Subspace<num_rational::BigRational>;
/// Cached Lie data over [`Scalar`].
pub type LieAnalysis<'a> = lie::LieAnalysis<'a, Scalar>;

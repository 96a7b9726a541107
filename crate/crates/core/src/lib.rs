//! Exact computations for the extended zigzag superalgebra, its generalized
//! Schur algebras built as modified divided powers of matrix superalgebras,
//! and the tilting bimodule relating the Schur algebra to its Ringel dual.
//!
//! All structure constants are integers (`BigInt`). Linear algebra (ranks,
//! kernels, commutants) is generic over an exact [`Field`]; the rationals
//! and a set of prime fields are provided.

pub mod audit;
pub mod combinat;
pub mod divpow;
pub mod error;
pub mod exact_linalg;
pub mod field;
pub mod json;
pub mod ringel_verify;
pub mod schur;
pub mod superalg;
pub mod tilting_core;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, Fp};

/// The rational numbers.
pub type Rational = num_rational::BigRational;
/// Arbitrary precision integers used for all structure constants.
pub type Int = num_bigint::BigInt;
pub type F2 = Fp<2>;
pub type F3 = Fp<3>;
pub type F5 = Fp<5>;

pub type MatrixQ = exact_linalg::ExactMatrix<Rational>;
pub type MatrixF2 = exact_linalg::ExactMatrix<F2>;
pub type MatrixF3 = exact_linalg::ExactMatrix<F3>;

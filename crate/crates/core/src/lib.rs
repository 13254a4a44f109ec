//! Synthesis of ergodic traintrack maps of free-group automorphisms with
//! entropy `log λ` for a given Perron or weak Perron number `λ`, together
//! with exact certificates for every property of the result.

pub mod cone;
pub mod dot;
pub mod config;
pub mod fixtures;
pub mod folds;
pub mod graphmap;
pub mod interval;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod numberfield;
pub mod poly;
pub mod scalar;
pub mod splitting;
pub mod synth;
pub mod traintrack;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use linalg::{Coords, Matrix};
pub use numberfield::{make_context, ClassKind, Classification, FieldError, FieldOptions, NumberFieldContext};
pub use poly::IntPolynomial;
pub use scalar::{OrderedField, Scalar};

/// Element of `Z[λ]` in the basis `1, λ, …, λ^{d-1}`.
pub type LatticeElement = Coords<BigInt>;
/// Element of `Q(λ)` in the same basis.
pub type FieldElement = Coords<BigRational>;
pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<BigRational>;

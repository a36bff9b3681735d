//! Exact decision procedures for zero-product determined properties of
//! finite-dimensional unital algebras given by structure constants over a
//! prime field or the rationals.
//!
//! The core is generic over the [`field::Scalar`] type; [`field::Fp`] and
//! [`num_rational::BigRational`] are the two instantiations, with the
//! aliases below naming the concrete stacks.

pub mod algebra;
pub mod derivations;
pub mod error;
pub mod f2;
pub mod field;
pub mod linalg;
pub mod properties;
pub mod separability;
pub mod spans;
pub mod tensor;

pub use error::{Error, Result};
pub use field::{FieldDescriptor, Fp, Scalar};

pub type Rat = num_rational::BigRational;

pub type FpMatrix = linalg::Matrix<Fp>;
pub type FpSubspace = linalg::Subspace<Fp>;
pub type RatMatrix = linalg::Matrix<Rat>;
pub type RatSubspace = linalg::Subspace<Rat>;

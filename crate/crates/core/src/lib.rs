//! Exact computations around Gale duality: vector configurations and their
//! duals, simplicial fans, completeness and polytopality, normal fans and GKZ
//! chambers, quadric systems, LVMB data, toric lattice data, and a numeric
//! retraction onto real and complex moment-angle complexes.
//!
//! Linear algebra and the simplex solver are generic over [`Scalar`]; the
//! decision procedures run on exact rationals ([`Rat`]).

pub mod complex;
pub mod cone;
pub mod error;
pub mod fan;
pub mod gale;
pub mod index_set;
pub mod lp;
pub mod lvmb;
pub mod matrix;
pub mod polyhedron;
pub mod quadrics;
pub mod rational;
pub mod retract;
pub mod scalar;
pub mod snf;
pub mod toric;

pub use error::{Error, Result};
pub use index_set::{iset, IndexSet};
pub use matrix::Matrix;
pub use rational::{fmt_rat, parse_rat, q, qf, qmat, qvec};
pub use scalar::Scalar;

/// Exact rational scalar.
pub type Rat = num_rational::BigRational;
/// Exact rational matrix.
pub type QMat = Matrix<Rat>;
/// Arbitrary-precision integer matrix.
pub type ZMat = Matrix<num_bigint::BigInt>;
/// Floating-point matrix.
pub type FMat = Matrix<f64>;

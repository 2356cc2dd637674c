//! Exact symbolic engine for the W-operators `W([d])` acting on the ring of
//! power sums `Q[p1, p2, ...]`.
//!
//! Three independent realizations of the same operator live here:
//!
//! * [`wop`]: the analytic differential operator `Δ_d` (and its variants
//!   `Δ_β`, the closed-form cut-and-join operator) acting directly on
//!   power-sum polynomials;
//! * [`permgroup`]: left multiplication by the class sum of `d`-cycles in the
//!   group algebra of `S_n`, pushed through `Φ`;
//! * [`xmatrix`]: the normal-ordered operator `(1/d):tr(D^d):` on
//!   polynomials in the entries of a truncated variable matrix.
//!
//! [`hurwitz`] builds generalized Hurwitz numbers on top of them, both by
//! brute-force monodromy enumeration and by exponentiating the W-flow.
//! All arithmetic is exact.

pub mod combinat;
pub mod error;
pub mod hurwitz;
pub mod permgroup;
pub mod psymring;
pub mod verify;
pub mod wop;
pub mod xmatrix;

pub use combinat::{class_size, count_d_cycles, partitions, Partition};
pub use error::{Error, Result};
pub use hurwitz::{HurwitzQuery, HurwitzTable};
pub use permgroup::{CycleTuple, GroupAlgebraElement, Permutation, TupleClassification};
pub use psymring::{PMonomial, PPolynomial, ZSeries};
pub use wop::OperatorSpec;
pub use xmatrix::{XMonomial, XPolynomial};

/// Exact rational coefficients used throughout.
pub type Rational = num_rational::BigRational;

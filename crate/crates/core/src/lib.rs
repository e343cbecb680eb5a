//! Exact computation of Chekhov–Eynard–Orantin topological recursion on
//! rational spectral curves, together with the universal x–y swap formulas,
//! mixed correlation differentials, loop-equation verifiers, and the closed
//! formulas available when `y = z`.
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating point anywhere in the crate. The main entry points are:
//!
//! - [`curve::CurveSpec`]: a genus-zero spectral curve `(x(z), y(z))` with the
//!   Bergman kernel fixed to `dz1 dz2 / (z1 - z2)^2`,
//! - [`classical::tr_run`]: the classical residue recursion producing the
//!   `omega_{g,m,0}` column,
//! - [`swap`]: the swap engine (both equivalent recursion forms, graph-sum
//!   closed formulas, pole splitting, duality checks),
//! - [`special`]: the `y = z` closed formula, the vertex-weight library and
//!   psi-class intersection numbers.

pub mod classical;
pub mod corr;
pub mod curve;
pub mod error;
pub mod graphs;
pub mod grading;
pub mod mrat;
pub mod pfrac;
pub mod poly;
pub mod probe;
pub mod rat;
pub mod series;
pub mod special;
pub mod swap;
pub mod symbol;

pub use error::{Error, Result};
pub use mrat::MRat;
pub use poly::MPoly;
pub use rat::Rat;
pub use symbol::Sym;

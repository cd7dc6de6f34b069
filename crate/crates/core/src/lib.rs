//! Exact symbolic engine for first-order approximate Lie symmetries of
//! perturbed (1+1)-dimensional evolution equations, with the perturbed
//! Gardner equation `w_t - 6(w + εw²)w_x + w_xxx = 0` as the worked case.
//!
//! Everything here is exact rational arithmetic. Identities are checked by
//! reducing an expression to the zero polynomial, never by sampling.

pub mod algebra;
pub mod equations;
pub mod error;
pub mod invariants;
pub mod jet;
pub mod lie;
pub mod solver;

pub use algebra::{EpsSeries, JetIndex, Monomial, Poly, Rational, RationalExpr, Symbol};
pub use error::{Error, Result};

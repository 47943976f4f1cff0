//! Exact kinematics of conformal field theories with W3 symmetry.
//!
//! Everything symbolic is exact: weights and Kac indices are rationals, and
//! conformal dimensions are Laurent polynomials in the Coulomb-gas coupling `b`.
//! Floating point only appears when evaluating at a numeric `b` or embedding
//! charges in the plane.

pub mod charge;
pub mod checks;
pub mod error;
pub mod fusion;
pub mod laurent;
pub mod linalg;
pub mod models;
pub mod rational;
pub mod sl3;
pub mod spin;
pub mod virasoro;

pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use rational::Rational;

//! Exact Apostol–Bernoulli and generalized Frobenius–Euler polynomials,
//! Dedekind-type sums over cyclotomic fields, and checkers for the
//! simultaneous multiplication formulas that tie them together.

pub mod appell;
pub mod arith;
pub mod combinat;
pub mod cyclotomic;
pub mod dedekind;
pub mod error;
pub mod poly;
pub mod rational;
pub mod scalar;
pub mod series;
pub mod spectra;
pub mod verify;

pub use cyclotomic::{cyclotomic_poly, zeta_pow, CycloNum, CycloPolyMod};
pub use error::{Error, Result};
pub use poly::{PolyStyle, QPoly};
pub use rational::Rational;
pub use scalar::Scalar;
pub use series::TruncSeries;

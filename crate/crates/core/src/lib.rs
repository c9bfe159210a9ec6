//! Sato-Tate groups of the hyperelliptic curves `y^2 = x^p - 1` and
//! `y^2 = x^2p - 1` (p an odd prime), materialized as explicit matrix
//! groups over cyclotomic fields, together with the exact Haar-measure
//! moment statistics of their coefficient distributions and a prime
//! scan that measures the matching Frobenius-trace statistics of the
//! curves themselves.
//!
//! The crate is organized around five layers:
//!
//! * [`finite_field`] — primes, prime fields, small extension fields,
//!   and discrete-log based multiplicative characters;
//! * [`lpoly`] — point counts, L-polynomial coefficients, Jacobi sums,
//!   and the cached parallel prime scan;
//! * [`cyclotomic`] / [`stgroup`] — exact arithmetic in `Q(zeta_4p)` and
//!   the matrix generators of the Sato-Tate groups, with verification of
//!   the defining conjugation identities;
//! * [`laurent`] / [`charpoly`] — sparse Laurent polynomials in the unit
//!   eigenvalue variables and symbolic characteristic polynomials per
//!   component;
//! * [`moments`] — exact per-component and averaged moments, Monte-Carlo
//!   sampling from the Haar measure, and numeric moments of scan data.
//!
//! [`reference`] holds frozen copies of the tabulated matrices and moment
//! sequences the toolkit is expected to reproduce; `check-conjectures`
//! in the CLI reports any mismatch rather than silently assuming them.

pub mod charpoly;
pub mod cyclotomic;
pub mod error;
pub mod finite_field;
pub mod laurent;
pub mod lpoly;
pub mod moments;
pub mod reference;
pub mod stgroup;

pub use error::{Error, Result};
pub use lpoly::CurveFamily;

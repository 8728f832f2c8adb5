//! Exact arithmetic for terminating hypergeometric series, Racah
//! polynomials, and the tilde sequence transform - plus executable
//! verification suites for the identities connecting them and a sweeper
//! for the conjecture that the specialized Racah polynomial `R_n(s, T)`
//! never leaves `[-1, 1]` on its parameter box.
//!
//! Everything is computed over arbitrary-precision rationals in canonical
//! form; there is no floating point and no epsilon anywhere. A check
//! passes when the two sides are *identical* fractions.
//!
//! Module map:
//! * [`exact`] - canonical [`Rational`], rising factorial, binomial.
//! * [`hypergeom`] - terminating `pFq` series: classification and exact
//!   evaluation.
//! * [`transforms`] - the tilde transform, its inverse, the inversion
//!   kernel, and the plain binomial transform.
//! * [`racah`] - general and specialized Racah polynomials, the partial
//!   inverse-transform closed form, and the boundedness sweeper.
//! * [`suites`] - named identity suites with machine-readable reports.
//!
//! ```
//! use kresch::{Rational, hypergeom::{HypSeriesSpec, evaluate_terminating}};
//!
//! // 2F1(-2, 1; 3; 1) = 1/2, exactly
//! let spec = HypSeriesSpec::new(
//!     vec![Rational::from_integer(-2), Rational::one()],
//!     vec![Rational::from_integer(3)],
//!     Rational::one(),
//! );
//! assert_eq!(evaluate_terminating(&spec).unwrap(), Rational::new(1, 2));
//! ```

pub mod error;
pub mod exact;
pub mod hypergeom;
pub mod racah;
pub mod suites;
pub mod transforms;

pub use error::{Error, Result};
pub use exact::{binomial, factorial, rising_factorial, Index, Rational};

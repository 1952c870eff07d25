//! Tropical (idempotent) algebra and closed-form solvers for tropical
//! optimization problems, with a brute-force oracle to check them.
//!
//! ```
//! use tropopt::{semifield::MaxPlus, tropalg::TropMatrix, semifield::Scalar, spectral};
//!
//! let a = TropMatrix::<MaxPlus>::from_rows(vec![
//!     vec![Scalar::parse("1").unwrap(), Scalar::parse("3").unwrap()],
//!     vec![Scalar::parse("0").unwrap(), Scalar::parse("2").unwrap()],
//! ])
//! .unwrap();
//! assert_eq!(spectral::spectral_radius(&a).unwrap(), Scalar::parse("2").unwrap());
//! ```

pub mod error;
pub mod oracle;
pub mod semifield;
pub mod solvers;
pub mod spectral;
pub mod tropalg;

pub use error::{Error, Result};
pub use semifield::{Rational, Scalar, Semifield, SemifieldId};
pub use solvers::{solve, Form, OptimumReport, ProblemInstance, Sense, SolutionSet};
pub use tropalg::{TropMatrix, TropVector};

//! Root counting, root finding and parameter-space geometry for harmonic
//! trinomials `a·z^(n+m) + b·z̄^m + c`.
//!
//! ```
//! use htrinomial::{bohl, roots, HarmonicTrinomial, Tolerances};
//! use num_complex::Complex64;
//!
//! let h = HarmonicTrinomial::monic(Complex64::new(1.0, 0.0), Complex64::new(2f64.sqrt(), 0.0), 2, 1)?;
//! let tol = Tolerances::default();
//! assert_eq!(bohl::count_roots_below(&h, 1.0, &tol)?, 1);
//! assert_eq!(roots::find_all_roots(&h, &tol)?.len(), 3);
//! # Ok::<(), htrinomial::Error>(())
//! ```

pub mod angle;
pub mod bohl;
pub mod egervary;
pub mod error;
pub mod geometry;
pub mod radial;
pub mod roots;
pub mod trinomial;

pub use error::{Error, Result};
pub use trinomial::{HarmonicTrinomial, Tolerances};

//! Exact enumeration of self-avoiding walks from the centre of an
//! even-sided rectangle to its boundary, with the conformal-map machinery
//! needed to test whether the hitting statistics match Schramm-Loewner
//! evolution predictions.
//!
//! The crate has four parts:
//!
//! * [`tm`] — a transfer matrix that builds the rectangle row by row and
//!   produces exact generating functions for walks first hitting the long
//!   sides, the short sides, or each individual boundary point, plus a
//!   brute-force oracle for small lattices;
//! * [`crt`]/[`primes`]/[`bigfloat`] — exact coefficient arithmetic via
//!   modular passes with Chinese-remainder reconstruction, and
//!   configurable-precision decimal evaluation;
//! * [`conformal`] — the map parameter of the rectangle, elliptic integrals
//!   and theta functions, the predicted side/end hitting ratio (by
//!   quadrature and asymptotically), the boundary hitting density, and the
//!   inversion from observed ratios to the boundary exponent;
//! * [`series`] — finite-size ratio sequences, correction-exponent
//!   estimation, and sequence acceleration (Bulirsch-Stoer, Levin u,
//!   Brezinski theta, Neville).

pub mod bigfloat;
pub mod conformal;
pub mod critical;
pub mod crt;
pub mod error;
pub mod genfun;
pub mod geometry;
pub mod io;
pub mod primes;
pub mod series;
pub mod tm;

pub use bigfloat::BigFloat;
pub use critical::{critical_point, literature_point, CriticalPoint, CriticalSource};
pub use error::{Error, Result};
pub use genfun::GenFun;
pub use geometry::Rectangle;
pub use tm::{HittingTable, Mode, SplitSeries, Symmetry};

/// Default working precision (decimal digits) for evaluation and
/// extrapolation.
pub const DEFAULT_PRECISION: u32 = 80;

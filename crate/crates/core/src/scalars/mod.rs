//! Exact coefficient arithmetic: rationals, the formal λ, truncated q-series
//! and the Eisenstein series with Ramanujan's derivative.

mod eisenstein;
mod qseries;
mod quasimodular;
mod ratvec;
mod scalar;

pub use eisenstein::{eisenstein, named_constant, NamedConstant};
pub use qseries::{QSeries, SeriesEq};
pub use quasimodular::{fit_quasimodular, QuasiPoly};
pub use scalar::{parse_rational, Scalar};

//! Truncated power series, the analytic kernel library and formal Newton
//! iteration for implicit relations.

pub mod implicit;
pub mod kernels;
pub mod truncated;

pub use implicit::{newton_implicit_series, SeriesRelation};
pub use kernels::{kernel_eval, kernel_series, kernel_series_at, AnalyticKernel};
pub use truncated::{ts_arith, ts_compose, ts_sqrt1p, ArithOp, FloatSeries, RationalSeries, TruncatedSeries, MAX_ORDER};

//! Exact tools for deciding when metric balls behave like their Euclidean cousins.

pub mod checkers;
pub mod config;
pub mod constructions;
pub mod error;
pub mod gallery;
pub mod interval_union;
pub mod number;
pub mod point;
pub mod region;
pub mod serde_util;
pub mod space;
pub mod topology;

pub use config::ToleranceConfig;
pub use error::{Error, Result};
pub use interval_union::{Interval, IntervalUnion};
pub use number::{BoundedReal, Bounds, Cmp3, Expr, Rational};
pub use point::Point;
pub use region::Region;
pub use space::{eval_distance, verify_metric_axioms, Metric, MetricSpace};

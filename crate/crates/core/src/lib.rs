//! Exact generating functions, weight-preserving maps and q-hypergeometric
//! identity checks for overpartitions whose largest and smallest parts
//! differ by a bounded amount.

pub mod cli;
pub mod hyper;
pub mod maps;
pub mod partitions;
pub mod qseries;
pub mod zpoly;

pub use qseries::{QMonomial, QSeries, QSeriesError, ZMode};
pub use zpoly::ZLaurentPoly;

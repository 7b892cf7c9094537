//! Closed-form generating functions for overpartitions and partitions with
//! bounded difference between largest and smallest parts.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{pochhammer, QMonomial, QSeries, QSeriesError, Result};

/// How the overline-marking variable `z` is treated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZMode {
    /// Keep `z` symbolic.
    #[default]
    Tracked,
    /// `z = 0`: overlines are forbidden, leaving ordinary partitions.
    Zero,
    /// `z = 1`: overlines are counted but not weighted.
    One,
}

impl ZMode {
    pub fn apply(self, s: &QSeries) -> Result<QSeries> {
        match self {
            ZMode::Tracked => Ok(s.clone()),
            ZMode::Zero => s.specialize_z(0),
            ZMode::One => s.specialize_z(1),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ZMode::Tracked => "tracked",
            ZMode::Zero => "zero",
            ZMode::One => "one",
        }
    }
}

impl fmt::Display for ZMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ZMode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "tracked" | "z" => Ok(ZMode::Tracked),
            "zero" | "0" => Ok(ZMode::Zero),
            "one" | "1" => Ok(ZMode::One),
            other => Err(format!(
                "unknown z mode `{other}` (expected tracked, zero or one)"
            )),
        }
    }
}

fn check_t(t: u32) -> Result<i64> {
    if t == 0 {
        Err(QSeriesError::InvalidParameter(
            "t must be a positive integer".into(),
        ))
    } else {
        Ok(t as i64)
    }
}

/// `1/(1 - q^t) * (numerator / (q;q)_t - 1)`.
fn bounded_difference_form(t: i64, numerator: QSeries, target_order: i64) -> Result<QSeries> {
    let q = QMonomial::q_power(1);
    let qt = pochhammer(&q, t as u64, target_order);
    let ratio = numerator.mul(&qt.invert(target_order)?);
    let inner = ratio.sub(&QSeries::one(target_order));
    let geometric =
        QSeries::one_minus(&QMonomial::q_power(t), target_order).invert(target_order)?;
    Ok(geometric.mul(&inner))
}

/// `1/(1 - q^t) * ((-zq;q)_t / (q;q)_t - 1)`: the bivariate generating
/// function of overpartitions whose largest and smallest parts differ by at
/// most `t`, with the largest part unmarked when the difference is exactly
/// `t`. `z` marks overlined parts. With `z_tracked = false`, `z` is set to 1.
pub fn rhs_theorem11(t: u32, z_tracked: bool, target_order: i64) -> Result<QSeries> {
    let t = check_t(t)?;
    let numerator = pochhammer(&QMonomial::new(-1, 1, 1), t as u64, target_order);
    let gf = bounded_difference_form(t, numerator, target_order)?;
    if z_tracked {
        Ok(gf)
    } else {
        gf.specialize_z(1)
    }
}

/// `1/(1 - q^t) * (1/(q;q)_t - 1)`: partitions whose largest and smallest
/// parts differ by at most `t`.
pub fn rhs_breuer_kronholm(t: u32, target_order: i64) -> Result<QSeries> {
    let t = check_t(t)?;
    bounded_difference_form(t, QSeries::one(target_order), target_order)
}

/// `1/(1 - q^t) * ((-q;q)_t / (q;q)_t - 1)`: the unweighted overpartition
/// count, built without passing through `z`.
pub fn rhs_bounded_overpartitions(t: u32, target_order: i64) -> Result<QSeries> {
    let t = check_t(t)?;
    let numerator = pochhammer(&QMonomial::new(-1, 0, 1), t as u64, target_order);
    bounded_difference_form(t, numerator, target_order)
}

//! Truncated Laurent series in `q` whose coefficients are Laurent
//! polynomials in `z`.
//!
//! A [`QSeries`] knows its coefficients exactly on the half-open range
//! `[min_exp, order)`; everything below `min_exp` is zero and everything at
//! or above `order` is unknown. Every operation propagates the valid range
//! pessimistically, so a result never claims more precision than its
//! inputs support.

mod closed_forms;
mod json;
mod monomial;
mod pochhammer;

use std::cmp::{max, min};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use thiserror::Error;

use crate::zpoly::ZLaurentPoly;

pub use closed_forms::{rhs_bounded_overpartitions, rhs_breuer_kronholm, rhs_theorem11, ZMode};
pub use json::QSeriesJson;
pub use monomial::QMonomial;
pub use pochhammer::{pochhammer, pochhammer_infinite};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QSeriesError {
    #[error("lowest coefficient {0} is not a unit monomial ±z^k")]
    NonUnitLeadingCoefficient(String),
    #[error("infinite product (a;q)_inf needs a q-exponent of at least 1, got a = {0}")]
    DivergentProduct(QMonomial),
    #[error(
        "comparison up to q^{needed} needs coefficients that are only known below q^{available}"
    )]
    InsufficientOrder { needed: i64, available: i64 },
    #[error("cannot specialize z = {value}: coefficient {coeff} has a negative power of z")]
    UndefinedSpecialization { value: i64, coeff: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed series JSON: {0}")]
    Json(String),
}

pub type Result<T, E = QSeriesError> = std::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSeries {
    min_exp: i64,
    order: i64,
    coeffs: Vec<ZLaurentPoly>,
}

impl QSeries {
    /// Builds a series from the coefficients of `q^min_exp, q^(min_exp+1), ...`.
    /// The valid range is `[min_exp, min_exp + coeffs.len())`.
    pub fn from_coeffs(min_exp: i64, coeffs: Vec<ZLaurentPoly>) -> Self {
        let order = min_exp + coeffs.len() as i64;
        Self::normalized(min_exp, order, coeffs)
    }

    /// Builds a series from sparse `(q_exp, coeff)` entries. Entries at or
    /// above `order` are discarded.
    pub fn from_sparse<I>(entries: I, order: i64) -> Self
    where
        I: IntoIterator<Item = (i64, ZLaurentPoly)>,
    {
        let mut map: BTreeMap<i64, ZLaurentPoly> = BTreeMap::new();
        for (q, c) in entries {
            if q < order {
                *map.entry(q).or_default() += &c;
            }
        }
        map.retain(|_, c| !c.is_zero());
        let Some((&lo, _)) = map.iter().next() else {
            return Self::zero(order);
        };
        let mut coeffs = vec![ZLaurentPoly::zero(); (order - lo) as usize];
        for (q, c) in map {
            coeffs[(q - lo) as usize] = c;
        }
        Self {
            min_exp: lo,
            order,
            coeffs,
        }
    }

    fn normalized(mut min_exp: i64, order: i64, mut coeffs: Vec<ZLaurentPoly>) -> Self {
        debug_assert_eq!(coeffs.len() as i64, order - min_exp);
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            coeffs.drain(..lead);
            min_exp += lead as i64;
        }
        Self {
            min_exp,
            order,
            coeffs,
        }
    }

    /// The zero series, known exactly below `q^order`.
    pub fn zero(order: i64) -> Self {
        Self {
            min_exp: order,
            order,
            coeffs: Vec::new(),
        }
    }

    pub fn one(order: i64) -> Self {
        Self::constant(ZLaurentPoly::one(), order)
    }

    pub fn constant(c: ZLaurentPoly, order: i64) -> Self {
        Self::from_sparse([(0, c)], order)
    }

    pub fn monomial(m: &QMonomial, order: i64) -> Self {
        Self::from_sparse([(m.q_exp(), m.z_part())], order)
    }

    /// `1 - m`, truncated at `order`.
    pub fn one_minus(m: &QMonomial, order: i64) -> Self {
        Self::from_sparse([(0, ZLaurentPoly::one()), (m.q_exp(), -&m.z_part())], order)
    }

    /// Lowest q-exponent with a possibly nonzero coefficient. Equals
    /// `order` for a series that is zero on its whole valid range.
    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    /// Exclusive upper bound of the valid range.
    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(ZLaurentPoly::is_zero)
    }

    /// Coefficient of `q^exp`, or `None` when `exp` is outside the valid range
    /// from above.
    pub fn coeff(&self, exp: i64) -> Option<ZLaurentPoly> {
        if exp >= self.order {
            None
        } else if exp < self.min_exp {
            Some(ZLaurentPoly::zero())
        } else {
            Some(self.coeffs[(exp - self.min_exp) as usize].clone())
        }
    }

    fn coeff_ref(&self, exp: i64) -> Option<&ZLaurentPoly> {
        if exp < self.min_exp || exp >= self.order {
            None
        } else {
            Some(&self.coeffs[(exp - self.min_exp) as usize])
        }
    }

    /// Coefficient of `z^z_exp q^q_exp`.
    pub fn coeff_zq(&self, z_exp: i64, q_exp: i64) -> Option<BigInt> {
        self.coeff(q_exp).map(|c| c.coeff(z_exp))
    }

    /// Nonzero coefficients in increasing q-exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &ZLaurentPoly)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.min_exp + i as i64, c))
    }

    /// Lowers the valid range to end at `order` (never raises it).
    pub fn truncate(&self, order: i64) -> Self {
        if order >= self.order {
            return self.clone();
        }
        if order <= self.min_exp {
            return Self::zero(order);
        }
        let keep = (order - self.min_exp) as usize;
        Self::normalized(self.min_exp, order, self.coeffs[..keep].to_vec())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate_other: bool) -> Self {
        let order = min(self.order, other.order);
        let lo = min(min(self.min_exp, other.min_exp), order);
        let mut coeffs = vec![ZLaurentPoly::zero(); (order - lo) as usize];
        for (i, slot) in coeffs.iter_mut().enumerate() {
            let e = lo + i as i64;
            if let Some(c) = self.coeff_ref(e) {
                *slot += c;
            }
            if let Some(c) = other.coeff_ref(e) {
                slot.add_scaled(c, negate_other, 0);
            }
        }
        Self::normalized(lo, order, coeffs)
    }

    pub fn neg(&self) -> Self {
        Self {
            min_exp: self.min_exp,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Cauchy product. With operands valid on `[m1, o1)` and `[m2, o2)` the
    /// result is valid on `[m1 + m2, min(o1 + m2, o2 + m1))`.
    pub fn mul(&self, other: &Self) -> Self {
        let lo = self.min_exp + other.min_exp;
        let order = min(self.order + other.min_exp, other.order + self.min_exp);
        let mut coeffs = vec![ZLaurentPoly::zero(); (order - lo).max(0) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let k = i + j;
                if k >= coeffs.len() {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                coeffs[k] += &(a * b);
            }
        }
        Self::normalized(lo, max(order, lo), coeffs)
    }

    /// Multiplies by a coefficient polynomial in `z`.
    pub fn scale(&self, c: &ZLaurentPoly) -> Self {
        Self::normalized(
            self.min_exp,
            self.order,
            self.coeffs.iter().map(|x| x * c).collect(),
        )
    }

    /// Multiplies by the monomial `±z^i q^j`; shifts the valid range by `j`.
    pub fn mul_monomial(&self, m: &QMonomial) -> Self {
        let j = m.q_exp();
        Self {
            min_exp: self.min_exp + j,
            order: self.order + j,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.mul_monomial(m.is_negative(), m.z_exp()))
                .collect(),
        }
    }

    /// Multiplies by the exact binomial `1 - m`.
    pub fn mul_one_minus(&self, m: &QMonomial) -> Self {
        self.sub(&self.mul_monomial(m))
    }

    /// Divides by the binomial `1 - m`. Fails when `m` has q-exponent 0,
    /// since `1 - (±z^i)` is never a unit.
    pub fn div_one_minus(&self, m: &QMonomial) -> Result<Self> {
        let e = m.q_exp();
        if e == 0 {
            return Err(QSeriesError::NonUnitLeadingCoefficient(format!(
                "1 - ({m})"
            )));
        }
        if e < 0 {
            // 1 - m = -m (1 - 1/m), and 1/m has positive q-exponent.
            let inv = m.inv();
            let quotient = self.div_one_minus(&inv)?;
            return Ok(quotient.mul_monomial(&inv.neg()));
        }
        // y_j = x_j + m * y_{j-e}
        let mut coeffs = self.coeffs.clone();
        let step = e as usize;
        for j in step..coeffs.len() {
            let prev = coeffs[j - step].mul_monomial(m.is_negative(), m.z_exp());
            coeffs[j] += &prev;
        }
        Ok(Self::normalized(self.min_exp, self.order, coeffs))
    }

    /// Multiplicative inverse `b` with `self * b = 1` on `[0, target_order)`,
    /// as far as the precision of `self` allows. `b.min_exp = -self.min_exp`.
    pub fn invert(&self, target_order: i64) -> Result<Self> {
        let lead = self
            .coeffs
            .first()
            .ok_or_else(|| QSeriesError::NonUnitLeadingCoefficient("0".into()))?;
        let (neg, ze) = lead
            .as_unit_monomial()
            .ok_or_else(|| QSeriesError::NonUnitLeadingCoefficient(lead.to_string()))?;
        let m = self.min_exp;
        let len = min(target_order, self.order - m).max(0) as usize;
        let mut out: Vec<ZLaurentPoly> = Vec::with_capacity(len);
        for j in 0..len {
            if j == 0 {
                out.push(ZLaurentPoly::monomial(if neg { -1 } else { 1 }, -ze));
                continue;
            }
            let mut acc = ZLaurentPoly::zero();
            for i in 1..=j {
                let a = &self.coeffs[i];
                if a.is_zero() || out[j - i].is_zero() {
                    continue;
                }
                acc += &(a * &out[j - i]);
            }
            // b_j = -u^{-1} * acc
            out.push(acc.mul_monomial(!neg, -ze));
        }
        Ok(Self::normalized(-m, -m + len as i64, out))
    }

    /// `self / other`, valid below `q^target_order` as far as the precision
    /// of both operands allows.
    pub fn div(&self, other: &Self, target_order: i64) -> Result<Self> {
        let inv = other.invert(target_order - self.min_exp + other.min_exp)?;
        Ok(self.mul(&inv))
    }

    /// Substitutes an integer value for `z`.
    pub fn specialize_z(&self, value: i64) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                c.eval(value).map(ZLaurentPoly::constant).ok_or_else(|| {
                    QSeriesError::UndefinedSpecialization {
                        value,
                        coeff: c.to_string(),
                    }
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::normalized(self.min_exp, self.order, coeffs))
    }

    /// Lowest exponent below `upto` where the two series differ, or `None`
    /// when they agree on everything below `upto`. Both series must be valid
    /// up to `upto`.
    pub fn first_difference(&self, other: &Self, upto: i64) -> Result<Option<i64>> {
        let available = min(self.order, other.order);
        if available < upto {
            return Err(QSeriesError::InsufficientOrder {
                needed: upto,
                available,
            });
        }
        let lo = min(self.min_exp, other.min_exp);
        let zero = ZLaurentPoly::zero();
        for e in lo..upto {
            let a = self.coeff_ref(e).unwrap_or(&zero);
            let b = other.coeff_ref(e).unwrap_or(&zero);
            if a != b {
                return Ok(Some(e));
            }
        }
        Ok(None)
    }

    /// Equality of all coefficients below `q^upto`.
    pub fn agrees_with(&self, other: &Self, upto: i64) -> Result<bool> {
        Ok(self.first_difference(other, upto)?.is_none())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("series JSON is always serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| QSeriesError::Json(e.to_string()))
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        QSeries::add(self, rhs)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        QSeries::sub(self, rhs)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        QSeries::mul(self, rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries::neg(self)
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let body = if c.len() > 1 {
                format!("({c})")
            } else {
                c.to_string()
            };
            match e {
                0 => write!(f, "{body}")?,
                1 if c.is_one() => write!(f, "q")?,
                1 => write!(f, "{body}*q")?,
                _ if c.is_one() => write!(f, "q^{e}")?,
                _ => write!(f, "{body}*q^{e}")?,
            }
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(q^{})", self.order)
    }
}

//! Laurent polynomials in the overline-marking variable `z` with big-integer
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// An exact Laurent polynomial `sum_i c_i z^i`.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ZLaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl ZLaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * z^exp`.
    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c.into());
        p
    }

    /// Builds a polynomial from `(z_exp, coeff)` pairs; repeated exponents
    /// are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Coefficient of `z^exp` (zero when absent).
    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += factor * other`, with `factor = sign * z^shift`.
    pub(crate) fn add_scaled(&mut self, other: &ZLaurentPoly, negate: bool, shift: i64) {
        for (e, c) in &other.terms {
            let c = if negate { -c } else { c.clone() };
            self.add_term(e + shift, c);
        }
    }

    /// Multiplies by `±z^shift` without touching coefficient magnitudes.
    pub fn mul_monomial(&self, negate: bool, shift: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e + shift, if negate { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// If the polynomial is a single term `±z^e`, returns `(negative, e)`.
    pub fn as_unit_monomial(&self) -> Option<(bool, i64)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        if c.is_one() {
            Some((false, *e))
        } else if (-c).is_one() {
            Some((true, *e))
        } else {
            None
        }
    }

    /// Evaluates at an integer point. Returns `None` when a negative power
    /// of `z` meets `z = 0`, or when `z = ±1` is not involved and a negative
    /// exponent would require a non-integer result.
    pub fn eval(&self, z: i64) -> Option<BigInt> {
        let mut acc = BigInt::zero();
        for (&e, c) in &self.terms {
            if e < 0 && z != 1 && z != -1 {
                return None;
            }
            let p = u32::try_from(e.unsigned_abs()).ok()?;
            acc += c * BigInt::from(z).pow(p);
        }
        Some(acc)
    }

    /// Sum of all coefficients, i.e. the value at `z = 1`.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }
}

impl Add for &ZLaurentPoly {
    type Output = ZLaurentPoly;
    fn add(self, rhs: &ZLaurentPoly) -> ZLaurentPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, false, 0);
        out
    }
}

impl Sub for &ZLaurentPoly {
    type Output = ZLaurentPoly;
    fn sub(self, rhs: &ZLaurentPoly) -> ZLaurentPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, true, 0);
        out
    }
}

impl AddAssign<&ZLaurentPoly> for ZLaurentPoly {
    fn add_assign(&mut self, rhs: &ZLaurentPoly) {
        self.add_scaled(rhs, false, 0);
    }
}

impl Neg for &ZLaurentPoly {
    type Output = ZLaurentPoly;
    fn neg(self) -> ZLaurentPoly {
        self.mul_monomial(true, 0)
    }
}

impl Mul for &ZLaurentPoly {
    type Output = ZLaurentPoly;
    fn mul(self, rhs: &ZLaurentPoly) -> ZLaurentPoly {
        let mut out = ZLaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for ZLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if e == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = ZLaurentPoly::from_terms([(1, 3), (1, -3), (0, 2)]);
        assert_eq!(p, ZLaurentPoly::constant(2));
        let q = &p - &p;
        assert!(q.is_zero());
    }

    #[test]
    fn product_of_binomials() {
        let a = ZLaurentPoly::from_terms([(0, 1), (1, 1)]);
        let b = ZLaurentPoly::from_terms([(0, 1), (-1, -1)]);
        // (1 + z)(1 - 1/z) = z - 1/z
        assert_eq!(&a * &b, ZLaurentPoly::from_terms([(1, 1), (-1, -1)]));
    }

    #[test]
    fn unit_monomial_detection() {
        assert_eq!(
            ZLaurentPoly::monomial(-1, 3).as_unit_monomial(),
            Some((true, 3))
        );
        assert_eq!(ZLaurentPoly::monomial(2, 3).as_unit_monomial(), None);
        assert_eq!(
            ZLaurentPoly::from_terms([(0, 1), (1, 1)]).as_unit_monomial(),
            None
        );
    }

    #[test]
    fn evaluation() {
        let p = ZLaurentPoly::from_terms([(0, 2), (2, 3), (-1, 1)]);
        assert_eq!(p.eval(1), Some(BigInt::from(6)));
        assert_eq!(p.eval(-1), Some(BigInt::from(4)));
        assert_eq!(p.eval(0), None);
        assert_eq!(
            ZLaurentPoly::from_terms([(0, 2), (3, 5)]).eval(0),
            Some(BigInt::from(2))
        );
    }

    #[test]
    fn display() {
        let p = ZLaurentPoly::from_terms([(0, 1), (1, -2), (3, 1)]);
        assert_eq!(p.to_string(), "1 - 2*z + z^3");
    }
}

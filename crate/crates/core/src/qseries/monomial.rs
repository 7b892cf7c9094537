use std::fmt;

use crate::zpoly::ZLaurentPoly;

/// A signed monomial `±z^i q^j`. Never zero, so quotients of monomials are
/// again monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QMonomial {
    negative: bool,
    z_exp: i64,
    q_exp: i64,
}

impl QMonomial {
    /// `coeff_sign * z^z_exp * q^q_exp`; `coeff_sign` must be `1` or `-1`.
    pub fn new(coeff_sign: i8, z_exp: i64, q_exp: i64) -> Self {
        assert!(
            coeff_sign == 1 || coeff_sign == -1,
            "monomial sign must be ±1"
        );
        Self {
            negative: coeff_sign < 0,
            z_exp,
            q_exp,
        }
    }

    pub fn one() -> Self {
        Self::new(1, 0, 0)
    }

    pub fn q_power(j: i64) -> Self {
        Self::new(1, 0, j)
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn sign(&self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn z_exp(&self) -> i64 {
        self.z_exp
    }

    pub fn q_exp(&self) -> i64 {
        self.q_exp
    }

    /// The `±z^i` part as a polynomial.
    pub fn z_part(&self) -> ZLaurentPoly {
        ZLaurentPoly::monomial(self.sign(), self.z_exp)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            negative: self.negative != other.negative,
            z_exp: self.z_exp + other.z_exp,
            q_exp: self.q_exp + other.q_exp,
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn inv(&self) -> Self {
        Self {
            negative: self.negative,
            z_exp: -self.z_exp,
            q_exp: -self.q_exp,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            negative: !self.negative,
            ..*self
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift_q(&self, k: i64) -> Self {
        Self {
            q_exp: self.q_exp + k,
            ..*self
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        Self {
            negative: self.negative && n % 2 == 1,
            z_exp: self.z_exp * n as i64,
            q_exp: self.q_exp * n as i64,
        }
    }

    /// `Some(n)` when the monomial is exactly `q^{-n}` with `n >= 0`; such a
    /// parameter makes `(a;q)_k` vanish for every `k > n`.
    pub fn terminating_index(&self) -> Option<u64> {
        if !self.negative && self.z_exp == 0 && self.q_exp <= 0 {
            Some(self.q_exp.unsigned_abs())
        } else {
            None
        }
    }
}

impl fmt::Display for QMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-")?;
        }
        let mut parts = Vec::new();
        match self.z_exp {
            0 => {}
            1 => parts.push("z".to_string()),
            e => parts.push(format!("z^{e}")),
        }
        match self.q_exp {
            0 => {}
            1 => parts.push("q".to_string()),
            e => parts.push(format!("q^{e}")),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

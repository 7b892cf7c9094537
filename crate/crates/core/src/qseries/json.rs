use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{QSeries, QSeriesError};
use crate::zpoly::ZLaurentPoly;

/// Wire form of a [`QSeries`]. Only nonzero coefficients are listed and big
/// integers travel as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QSeriesJson {
    pub min_exp: i64,
    pub order: i64,
    pub coeffs: Vec<CoeffJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffJson {
    pub q: i64,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub z: i64,
    pub c: String,
}

impl From<&QSeries> for QSeriesJson {
    fn from(s: &QSeries) -> Self {
        QSeriesJson {
            min_exp: s.min_exp(),
            order: s.order(),
            coeffs: s
                .iter()
                .map(|(q, c)| CoeffJson {
                    q,
                    terms: c
                        .terms()
                        .map(|(z, c)| TermJson {
                            z,
                            c: c.to_string(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<QSeriesJson> for QSeries {
    type Error = QSeriesError;

    fn try_from(j: QSeriesJson) -> Result<Self, Self::Error> {
        let bad = |msg: String| QSeriesError::Json(msg);
        if j.min_exp > j.order {
            return Err(bad(format!(
                "min_exp {} exceeds order {}",
                j.min_exp, j.order
            )));
        }
        let mut last_q = None;
        let mut entries = Vec::with_capacity(j.coeffs.len());
        for coeff in j.coeffs {
            if coeff.q < j.min_exp || coeff.q >= j.order {
                return Err(bad(format!(
                    "q-exponent {} outside [{}, {})",
                    coeff.q, j.min_exp, j.order
                )));
            }
            if last_q.is_some_and(|prev| coeff.q <= prev) {
                return Err(bad(format!(
                    "q-exponents not strictly increasing at {}",
                    coeff.q
                )));
            }
            last_q = Some(coeff.q);
            let mut poly = ZLaurentPoly::zero();
            let mut last_z = None;
            for term in coeff.terms {
                if last_z.is_some_and(|prev| term.z <= prev) {
                    return Err(bad(format!(
                        "z-exponents not strictly increasing at q^{}",
                        coeff.q
                    )));
                }
                last_z = Some(term.z);
                let c: BigInt = term
                    .c
                    .parse()
                    .map_err(|_| bad(format!("`{}` is not a decimal integer", term.c)))?;
                if c == BigInt::from(0) {
                    return Err(bad(format!(
                        "zero coefficient stored at z^{} q^{}",
                        term.z, coeff.q
                    )));
                }
                poly.add_term(term.z, c);
            }
            entries.push((coeff.q, poly));
        }
        let series = QSeries::from_sparse(entries, j.order);
        Ok(series)
    }
}

impl Serialize for QSeries {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        QSeriesJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let j = QSeriesJson::deserialize(deserializer)?;
        QSeries::try_from(j).map_err(serde::de::Error::custom)
    }
}

use std::collections::BTreeMap;

use super::{QMonomial, QSeries, QSeriesError, Result};
use crate::zpoly::ZLaurentPoly;

/// The finite q-Pochhammer symbol `(a;q)_n = prod_{k<n} (1 - a q^k)`,
/// exact below `q^target_order`.
///
/// The product is expanded exactly; a term is dropped only once no
/// remaining factor can pull it back below `target_order`, so negative
/// q-exponents in `a` are handled without losing precision.
pub fn pochhammer(a: &QMonomial, n: u64, target_order: i64) -> QSeries {
    let n = n as i64;
    // lowest exponent any factor after index k can contribute
    let mut tail_low = vec![0i64; n as usize + 1];
    for k in (0..n).rev() {
        tail_low[k as usize] = tail_low[k as usize + 1] + (a.q_exp() + k).min(0);
    }

    let mut acc: BTreeMap<i64, ZLaurentPoly> = BTreeMap::new();
    acc.insert(0, ZLaurentPoly::one());
    for k in 0..n {
        let shift = a.q_exp() + k;
        let cutoff = target_order - tail_low[k as usize + 1];
        let mut next: BTreeMap<i64, ZLaurentPoly> = BTreeMap::new();
        for (&e, c) in &acc {
            if e < cutoff {
                *next.entry(e).or_default() += c;
            }
            if e + shift < cutoff {
                next.entry(e + shift)
                    .or_default()
                    .add_scaled(c, !a.is_negative(), a.z_exp());
            }
        }
        next.retain(|_, c| !c.is_zero());
        if next.is_empty() {
            return QSeries::zero(target_order);
        }
        acc = next;
    }
    QSeries::from_sparse(acc, target_order)
}

/// The infinite product `(a;q)_inf`, exact below `q^target_order`.
/// Requires `a` to carry at least one power of `q`.
pub fn pochhammer_infinite(a: &QMonomial, target_order: i64) -> Result<QSeries> {
    if a.q_exp() < 1 {
        return Err(QSeriesError::DivergentProduct(*a));
    }
    // factors with exponent >= target_order are 1 + O(q^target_order)
    let factors = (target_order - a.q_exp()).max(0) as u64;
    Ok(pochhammer(a, factors, target_order))
}

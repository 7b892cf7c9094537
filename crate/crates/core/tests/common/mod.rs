//! Independent reference implementations used as oracles by the
//! integration tests. Nothing here calls into the library.

#![allow(dead_code)]

use std::collections::BTreeMap;

/// Every partition of `n` into parts at most `max`, parts weakly decreasing.
pub fn partitions(n: u64, max: u64) -> Vec<Vec<u64>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in (1..=max.min(n)).rev() {
        for rest in partitions(n - p, p) {
            let mut v = Vec::with_capacity(rest.len() + 1);
            v.push(p);
            v.extend(rest);
            out.push(v);
        }
    }
    out
}

/// Every overpartition of `n`, as `(part, overlined)` lists with the
/// overline on the first copy of a part.
pub fn overpartitions(n: u64) -> Vec<Vec<(u64, bool)>> {
    let mut out = Vec::new();
    for p in partitions(n, n) {
        let mut distinct: Vec<u64> = p.clone();
        distinct.dedup();
        for mask in 0u64..(1 << distinct.len()) {
            let marked = |part: u64| {
                let idx = distinct.iter().position(|&d| d == part).unwrap();
                mask >> idx & 1 == 1
            };
            let mut v = Vec::with_capacity(p.len());
            for (i, &part) in p.iter().enumerate() {
                let first = i == 0 || p[i - 1] != part;
                v.push((part, first && marked(part)));
            }
            out.push(v);
        }
    }
    out
}

/// Text form `7,4~` of a `(part, overlined)` list.
pub fn render(parts: &[(u64, bool)]) -> String {
    parts
        .iter()
        .map(|&(p, o)| if o { format!("{p}~") } else { p.to_string() })
        .collect::<Vec<_>>()
        .join(",")
}

pub fn overlines(parts: &[(u64, bool)]) -> u64 {
    parts.iter().filter(|p| p.1).count() as u64
}

pub fn is_gt(parts: &[(u64, bool)], t: u64) -> bool {
    let (big, big_over) = parts[0];
    let small = parts[parts.len() - 1].0;
    big - small < t || (big - small == t && !big_over)
}

pub fn is_pt(parts: &[(u64, bool)], t: u64) -> bool {
    parts.iter().all(|&(p, o)| p < t || (p == t && !o))
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `table[n][m]` = number of overpartitions of `n` in `G_t` with `m`
/// overlined parts, counted from ordinary partitions and overline choices.
pub fn gt_counts(t: u64, max_n: u64) -> Vec<Vec<u64>> {
    let mut table = vec![Vec::new(); max_n as usize + 1];
    for n in 1..=max_n {
        let mut row = vec![0u64; n as usize + 1];
        for p in partitions(n, n) {
            let (big, small) = (p[0], p[p.len() - 1]);
            if big - small > t {
                continue;
            }
            let mut distinct = p.clone();
            distinct.dedup();
            let d = distinct.len() as u64;
            // at difference exactly t the largest part stays unmarked
            let free = if big - small == t { d - 1 } else { d };
            for (m, slot) in row.iter_mut().enumerate().take(free as usize + 1) {
                *slot += binomial(free, m as u64);
            }
        }
        table[n as usize] = row;
    }
    table
}

/// Dense power series in q with integer coefficients, `v[i]` the
/// coefficient of `q^i`, all exact below `q^v.len()`.
pub type Dense = Vec<i128>;

pub fn dense_one(len: usize) -> Dense {
    let mut v = vec![0; len];
    v[0] = 1;
    v
}

/// Multiplies by `1 + c q^k`.
pub fn dense_mul_binomial(v: &mut Dense, c: i128, k: usize) {
    for i in (k..v.len()).rev() {
        v[i] += c * v[i - k];
    }
}

/// Divides by `1 - q^k` (k >= 1).
pub fn dense_div_one_minus(v: &mut Dense, k: usize) {
    for i in k..v.len() {
        v[i] += v[i - k];
    }
}

/// `1/(1-q^t) (prod_{k=1}^t (1 + c q^k)/(1 - q^k) - 1)` for `c = 0` or `1`.
pub fn dense_bounded_difference(t: usize, c: i128, len: usize) -> Dense {
    let mut v = dense_one(len);
    for k in 1..=t {
        dense_mul_binomial(&mut v, c, k);
        dense_div_one_minus(&mut v, k);
    }
    v[0] -= 1;
    dense_div_one_minus(&mut v, t);
    v
}

/// Sparse bivariate Laurent series truncated in q: coefficients keyed by
/// `(q_exp, z_exp)`, exact on `[min, order)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Naive {
    pub min: i64,
    pub order: i64,
    pub terms: BTreeMap<(i64, i64), i128>,
}

impl Naive {
    pub fn new(min: i64, order: i64, terms: impl IntoIterator<Item = ((i64, i64), i128)>) -> Self {
        let mut out = Naive {
            min,
            order,
            terms: BTreeMap::new(),
        };
        for (k, c) in terms {
            if k.0 < order {
                *out.terms.entry(k).or_default() += c;
            }
        }
        out.terms.retain(|_, c| *c != 0);
        out
    }

    pub fn add(&self, other: &Naive) -> Naive {
        let order = self.order.min(other.order);
        Naive::new(
            self.min.min(other.min),
            order,
            self.terms.iter().chain(&other.terms).map(|(k, c)| (*k, *c)),
        )
    }

    /// Schoolbook product, kept where both truncations allow it.
    pub fn mul(&self, other: &Naive) -> Naive {
        let order = (self.order + other.min).min(other.order + self.min);
        let mut terms = Vec::new();
        for (&(qa, za), &ca) in &self.terms {
            for (&(qb, zb), &cb) in &other.terms {
                terms.push(((qa + qb, za + zb), ca * cb));
            }
        }
        Naive::new(self.min + other.min, order, terms)
    }

    pub fn coeff(&self, q: i64, z: i64) -> i128 {
        self.terms.get(&(q, z)).copied().unwrap_or(0)
    }

    /// z-exponents with a nonzero coefficient at any q below `order`.
    pub fn z_range(&self) -> (i64, i64) {
        let lo = self.terms.keys().map(|k| k.1).min().unwrap_or(0);
        let hi = self.terms.keys().map(|k| k.1).max().unwrap_or(0);
        (lo, hi)
    }
}

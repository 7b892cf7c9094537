//! Overpartitions, the bipartitions built from them, membership in the three
//! families `G_t`, `P_t`, `B_t`, and exhaustive enumeration by weight.
//!
//! An overpartition is stored as runs of equal parts. The overline of a run
//! always sits on its first occurrence, so "at most one overlined copy per
//! size, on the first occurrence" holds by construction.

mod enumerate;
mod text;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qseries::QSeries;
use crate::zpoly::ZLaurentPoly;

pub use enumerate::{
    enumerate_bounded, enumerate_bt, enumerate_gt, enumerate_overpartitions, enumerate_pt,
    OverpartitionIter,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("an overpartition needs at least one part")]
    Empty,
    #[error("parts must be positive integers")]
    ZeroPart,
    #[error("parts must be weakly decreasing: {0} is followed by the larger part {1}")]
    NotWeaklyDecreasing(u64, u64),
    #[error("part {0} is overlined more than once")]
    DuplicateOverline(u64),
    #[error("bipartition: {0}")]
    InvalidBipartition(String),
    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

/// A maximal block of equal parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Run {
    pub part: u64,
    pub multiplicity: u64,
    /// Whether the first occurrence of `part` is overlined.
    pub first_overlined: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Overpartition {
    runs: Vec<Run>,
}

impl Overpartition {
    /// Validates runs: nonempty, positive parts and multiplicities, parts
    /// strictly decreasing.
    pub fn from_runs(runs: Vec<Run>) -> Result<Self, PartitionError> {
        if runs.is_empty() {
            return Err(PartitionError::Empty);
        }
        for r in &runs {
            if r.part == 0 || r.multiplicity == 0 {
                return Err(PartitionError::ZeroPart);
            }
        }
        for w in runs.windows(2) {
            if w[1].part >= w[0].part {
                return Err(PartitionError::NotWeaklyDecreasing(w[0].part, w[1].part));
            }
        }
        Ok(Self { runs })
    }

    /// Builds from a flat, weakly decreasing list of `(part, overlined)`.
    /// An overline may sit on any one copy of a size and is moved to the
    /// first copy.
    pub fn from_parts(parts: &[(u64, bool)]) -> Result<Self, PartitionError> {
        let mut runs: Vec<Run> = Vec::new();
        for &(p, over) in parts {
            if p == 0 {
                return Err(PartitionError::ZeroPart);
            }
            match runs.last_mut() {
                Some(last) if last.part == p => {
                    if over && last.first_overlined {
                        return Err(PartitionError::DuplicateOverline(p));
                    }
                    last.multiplicity += 1;
                    last.first_overlined |= over;
                }
                Some(last) if last.part < p => {
                    return Err(PartitionError::NotWeaklyDecreasing(last.part, p));
                }
                _ => runs.push(Run {
                    part: p,
                    multiplicity: 1,
                    first_overlined: over,
                }),
            }
        }
        Self::from_runs(runs)
    }

    pub(crate) fn from_runs_unchecked(runs: Vec<Run>) -> Self {
        debug_assert!(Self::from_runs(runs.clone()).is_ok());
        Self { runs }
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    /// Parts in weakly decreasing order with their overline flags.
    pub fn parts(&self) -> impl Iterator<Item = (u64, bool)> + '_ {
        self.runs
            .iter()
            .flat_map(|r| (0..r.multiplicity).map(move |i| (r.part, i == 0 && r.first_overlined)))
    }

    /// Number of parts, `ℓ`.
    pub fn len(&self) -> u64 {
        self.runs.iter().map(|r| r.multiplicity).sum()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Sum of the parts.
    pub fn weight(&self) -> u64 {
        self.runs.iter().map(|r| r.part * r.multiplicity).sum()
    }

    /// Number of overlined parts, `o`.
    pub fn num_overlined(&self) -> u64 {
        self.runs.iter().filter(|r| r.first_overlined).count() as u64
    }

    pub fn largest(&self) -> u64 {
        self.runs[0].part
    }

    pub fn smallest(&self) -> u64 {
        self.runs[self.runs.len() - 1].part
    }

    pub fn largest_overlined(&self) -> bool {
        self.runs[0].first_overlined
    }

    /// How many parts equal `part`.
    pub fn multiplicity(&self, part: u64) -> u64 {
        self.runs
            .iter()
            .find(|r| r.part == part)
            .map_or(0, |r| r.multiplicity)
    }

    pub fn stats(&self, t: u64) -> Stats {
        stats(self, t)
    }
}

/// The statistics used by the map `phi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Stats {
    /// Number of parts.
    pub ell: u64,
    /// Number of overlined parts.
    pub o: u64,
    /// Number of parts equal to `t`.
    pub m_t: u64,
    /// `floor(smallest / t)`.
    pub s: u64,
    /// Number of parts at least `(s + 1) t`.
    pub k: u64,
}

pub fn stats(pi: &Overpartition, t: u64) -> Stats {
    assert!(t >= 1, "t must be positive");
    let s = pi.smallest() / t;
    let bound = (s + 1) * t;
    Stats {
        ell: pi.len(),
        o: pi.num_overlined(),
        m_t: pi.multiplicity(t),
        s,
        k: pi
            .runs
            .iter()
            .filter(|r| r.part >= bound)
            .map(|r| r.multiplicity)
            .sum(),
    }
}

/// Membership in `G_t`: largest minus smallest at most `t`, and when it is
/// exactly `t` the largest part is not overlined.
pub fn in_gt(pi: &Overpartition, t: u64) -> bool {
    let diff = pi.largest() - pi.smallest();
    diff < t || (diff == t && !pi.largest_overlined())
}

/// Membership in `P_t`: every part at most `t` and no overlined `t`.
pub fn in_pt(mu: &Overpartition, t: u64) -> bool {
    mu.largest() < t || (mu.largest() == t && !mu.largest_overlined())
}

/// A pair of a (possibly empty) block of unmarked `t`'s and a nonempty
/// overpartition with parts at most `t`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bipartition {
    t: u64,
    t_count: u64,
    second: Overpartition,
}

impl Bipartition {
    pub fn new(t: u64, t_count: u64, second: Overpartition) -> Result<Self, PartitionError> {
        if t == 0 {
            return Err(PartitionError::InvalidBipartition(
                "t must be positive".into(),
            ));
        }
        if second.largest() > t {
            return Err(PartitionError::InvalidBipartition(format!(
                "second subpartition has part {} larger than t = {t}",
                second.largest()
            )));
        }
        Ok(Self { t, t_count, second })
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    /// Number of `t`'s in the first subpartition.
    pub fn t_count(&self) -> u64 {
        self.t_count
    }

    pub fn second(&self) -> &Overpartition {
        &self.second
    }

    pub fn weight(&self) -> u64 {
        self.t * self.t_count + self.second.weight()
    }

    /// Overlined parts; only the second subpartition can carry any.
    pub fn num_overlined(&self) -> u64 {
        self.second.num_overlined()
    }
}

/// The three families compared by the generating-function identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Gt,
    Pt,
    Bt,
}

/// `sum z^o q^weight` over all members of the family with weight at most
/// `max_n`, valid below `q^(max_n + 1)`.
pub fn gf_from_enumeration(family: Family, t: u64, max_n: u64) -> QSeries {
    let mut entries = Vec::new();
    for n in 1..=max_n {
        let mut by_o: Vec<u64> = Vec::new();
        let mut bump = |o: u64| {
            let o = o as usize;
            if by_o.len() <= o {
                by_o.resize(o + 1, 0);
            }
            by_o[o] += 1;
        };
        match family {
            Family::Gt => enumerate_gt(t, n).for_each(|p| bump(p.num_overlined())),
            Family::Pt => enumerate_pt(t, n).for_each(|p| bump(p.num_overlined())),
            Family::Bt => enumerate_bt(t, n).for_each(|b| bump(b.num_overlined())),
        }
        let poly = ZLaurentPoly::from_terms(by_o.iter().enumerate().map(|(o, &c)| (o as i64, c)));
        entries.push((n as i64, poly));
    }
    QSeries::from_sparse(entries, max_n as i64 + 1)
}

impl fmt::Display for Overpartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (p, over)) in self.parts().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}{}", if over { "~" } else { "" })?;
        }
        Ok(())
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}^{} | {}]", self.t, self.t_count, self.second)
    }
}

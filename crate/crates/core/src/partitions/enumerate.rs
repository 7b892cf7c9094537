//! Lazy enumeration of overpartitions of a fixed weight.
//!
//! Order: lexicographic on the run encoding, where runs compare by part
//! (larger first), then multiplicity (larger first), then unmarked before
//! overlined. For weight 3 this gives
//! `3, 3~, 2,1, 2,1~, 2~,1, 2~,1~, 1,1,1, 1~,1,1`.
//! Restricted families are enumerated directly (not by filtering) and come
//! out as subsequences of the unrestricted order.

use super::{Bipartition, Overpartition, Run};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Constraint {
    /// Any overpartition.
    All,
    /// Parts at most `t`; `t` itself may be overlined.
    Bounded(u64),
    /// Parts at most `t`, no overlined `t`.
    Pt(u64),
    /// Largest minus smallest at most `t`, largest unmarked at difference `t`.
    Gt(u64),
}

#[derive(Clone, Copy, Debug)]
struct Frame {
    run: Run,
    /// Weight still to place before this run was chosen.
    remaining: u64,
    /// Smallest part allowed at this level.
    lo: u64,
    /// Largest part allowed at this level.
    hi: u64,
}

/// Depth-first generator holding only the current run stack.
#[derive(Clone, Debug)]
pub struct OverpartitionIter {
    constraint: Constraint,
    n: u64,
    stack: Vec<Frame>,
    started: bool,
    done: bool,
}

/// Whether `r` is a sum of parts drawn from `[lo, hi]`.
fn feasible(r: u64, lo: u64, hi: u64) -> bool {
    if r == 0 {
        return true;
    }
    if lo == 0 || hi < lo {
        return false;
    }
    r.div_ceil(hi) <= r / lo
}

impl OverpartitionIter {
    fn new(constraint: Constraint, n: u64) -> Self {
        Self {
            constraint,
            n,
            stack: Vec::new(),
            started: false,
            done: n == 0,
        }
    }

    /// Lower bound for parts after the first run, given the first run.
    fn lo_after(&self, level: usize, lo: u64, run: &Run) -> u64 {
        match (self.constraint, level) {
            (Constraint::Gt(t), 0) => {
                let floor = run.part.saturating_sub(t);
                // an overlined largest part forbids smallest = largest - t
                let floor = if run.first_overlined {
                    floor + 1
                } else {
                    floor
                };
                floor.max(1)
            }
            _ => lo,
        }
    }

    fn overline_allowed(&self, part: u64) -> bool {
        match self.constraint {
            Constraint::Pt(t) => part != t,
            _ => true,
        }
    }

    fn valid(&self, level: usize, remaining: u64, lo: u64, run: &Run) -> bool {
        if run.first_overlined && !self.overline_allowed(run.part) {
            return false;
        }
        let rest = remaining - run.part * run.multiplicity;
        feasible(rest, self.lo_after(level, lo, run), run.part - 1)
    }

    /// Successor of `run` in the level order, ignoring validity.
    fn step(remaining: u64, lo: u64, run: Run) -> Option<Run> {
        if !run.first_overlined {
            return Some(Run {
                first_overlined: true,
                ..run
            });
        }
        if run.multiplicity > 1 {
            return Some(Run {
                multiplicity: run.multiplicity - 1,
                first_overlined: false,
                ..run
            });
        }
        if run.part > lo {
            let part = run.part - 1;
            return Some(Run {
                part,
                multiplicity: remaining / part,
                first_overlined: false,
            });
        }
        None
    }

    /// First valid choice at `level` strictly after `after` (or the first
    /// overall when `after` is `None`).
    fn choose(
        &self,
        level: usize,
        remaining: u64,
        lo: u64,
        hi: u64,
        after: Option<Run>,
    ) -> Option<Run> {
        let top = hi.min(remaining);
        if top < lo {
            return None;
        }
        let mut cur = match after {
            Some(run) => Self::step(remaining, lo, run)?,
            None => Run {
                part: top,
                multiplicity: remaining / top,
                first_overlined: false,
            },
        };
        loop {
            if self.valid(level, remaining, lo, &cur) {
                return Some(cur);
            }
            cur = Self::step(remaining, lo, cur)?;
        }
    }

    /// Extends the stack with first choices until the weight is used up.
    fn descend(&mut self) -> bool {
        loop {
            let (remaining, lo, hi) = match self.stack.last() {
                None => {
                    let hi = match self.constraint {
                        Constraint::All | Constraint::Gt(_) => self.n,
                        Constraint::Bounded(t) | Constraint::Pt(t) => t,
                    };
                    (self.n, 1, hi)
                }
                Some(f) => {
                    let rest = f.remaining - f.run.part * f.run.multiplicity;
                    let level = self.stack.len() - 1;
                    (rest, self.lo_after(level, f.lo, &f.run), f.run.part - 1)
                }
            };
            if remaining == 0 {
                return true;
            }
            let level = self.stack.len();
            match self.choose(level, remaining, lo, hi, None) {
                Some(run) => self.stack.push(Frame {
                    run,
                    remaining,
                    lo,
                    hi,
                }),
                None => return false,
            }
        }
    }

    fn current(&self) -> Overpartition {
        Overpartition::from_runs_unchecked(self.stack.iter().map(|f| f.run).collect())
    }
}

impl Iterator for OverpartitionIter {
    type Item = Overpartition;

    fn next(&mut self) -> Option<Overpartition> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.descend() {
                return Some(self.current());
            }
            self.done = true;
            return None;
        }
        while let Some(f) = self.stack.pop() {
            let level = self.stack.len();
            if let Some(run) = self.choose(level, f.remaining, f.lo, f.hi, Some(f.run)) {
                self.stack.push(Frame { run, ..f });
                if self.descend() {
                    return Some(self.current());
                }
                // feasibility pruning guarantees descent succeeds
                unreachable!("dead end after a feasible choice");
            }
        }
        self.done = true;
        None
    }
}

/// Every overpartition of `n`.
pub fn enumerate_overpartitions(n: u64) -> OverpartitionIter {
    OverpartitionIter::new(Constraint::All, n)
}

/// Overpartitions of `n` with all parts at most `t` (overlined `t` allowed).
pub fn enumerate_bounded(t: u64, n: u64) -> OverpartitionIter {
    OverpartitionIter::new(Constraint::Bounded(t), n)
}

/// Members of `P_t` of weight `n`.
pub fn enumerate_pt(t: u64, n: u64) -> OverpartitionIter {
    OverpartitionIter::new(Constraint::Pt(t), n)
}

/// Members of `G_t` of weight `n`.
pub fn enumerate_gt(t: u64, n: u64) -> OverpartitionIter {
    OverpartitionIter::new(Constraint::Gt(t), n)
}

/// Members of `B_t` of weight `n`, by increasing size of the block of `t`'s.
pub fn enumerate_bt(t: u64, n: u64) -> impl Iterator<Item = Bipartition> {
    let max_count = n.checked_div(t).unwrap_or(0);
    (0..=max_count).flat_map(move |count| {
        let rest = n - count * t;
        enumerate_bounded(t, rest).map(move |second| {
            Bipartition::new(t, count, second).expect("bounded parts fit in B_t")
        })
    })
}

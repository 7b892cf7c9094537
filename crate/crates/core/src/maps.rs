//! The weight-preserving surjections `phi: G_t -> P_t` and `psi: B_t -> P_t`,
//! explicit construction of their fibers, and checks of the fiber counts
//! against brute force.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partitions::{
    enumerate_bt, enumerate_gt, enumerate_pt, gf_from_enumeration, in_gt, in_pt, stats,
    Bipartition, Family, Overpartition, Run,
};
use crate::qseries::QSeries;
use crate::zpoly::ZLaurentPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("{input} is not in the domain of {map} for t = {t}: {reason}")]
    NotInDomain {
        map: &'static str,
        input: String,
        t: u64,
        reason: String,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Which of the two maps a fiber or check refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WhichMap {
    Phi,
    Psi,
}

impl WhichMap {
    pub fn as_str(self) -> &'static str {
        match self {
            WhichMap::Phi => "phi",
            WhichMap::Psi => "psi",
        }
    }
}

impl fmt::Display for WhichMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for WhichMap {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "phi" => Ok(WhichMap::Phi),
            "psi" => Ok(WhichMap::Psi),
            other => Err(format!("unknown map `{other}` (expected phi or psi)")),
        }
    }
}

/// The unique `(x, y, s)` with `x > 0`, `y >= 0`, `s >= 0`, `x + y = n` and
/// `s x + (s + 1) y = n'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaSolution {
    pub x: u64,
    pub y: u64,
    pub s: u64,
}

pub fn solve_system(n: u64, nprime: u64) -> Result<LemmaSolution, MapError> {
    if n == 0 {
        return Err(MapError::InvalidArgument("n must be positive".into()));
    }
    let s = nprime / n;
    let y = nprime - s * n;
    Ok(LemmaSolution { x: n - y, y, s })
}

fn not_in_domain(
    map: &'static str,
    input: impl fmt::Display,
    t: u64,
    reason: impl Into<String>,
) -> MapError {
    MapError::NotInDomain {
        map,
        input: input.to_string(),
        t,
        reason: reason.into(),
    }
}

fn check_t(t: u64) -> Result<(), MapError> {
    if t == 0 {
        Err(MapError::InvalidArgument(
            "t must be a positive integer".into(),
        ))
    } else {
        Ok(())
    }
}

fn gt_violation(pi: &Overpartition, t: u64) -> String {
    let diff = pi.largest() - pi.smallest();
    if diff > t {
        format!("largest minus smallest is {diff} > {t}")
    } else {
        format!("largest minus smallest is exactly {t} and the largest part is overlined")
    }
}

fn pt_violation(mu: &Overpartition, t: u64) -> String {
    if mu.largest() > t {
        format!("part {} exceeds t = {t}", mu.largest())
    } else {
        format!("the part {t} is overlined")
    }
}

/// Replaces each part by its residue mod `t`, cyclically rotated so the
/// residues stay weakly decreasing, preceded by the unmarked `t`'s that make
/// up the quotients. Zero residues are deleted together with any overline
/// they carried.
pub fn phi(pi: &Overpartition, t: u64) -> Result<Overpartition, MapError> {
    check_t(t)?;
    if !in_gt(pi, t) {
        return Err(not_in_domain("phi", pi, t, gt_violation(pi, t)));
    }
    let st = stats(pi, t);
    let (s, k) = (st.s, st.k as usize);
    let parts: Vec<(u64, bool)> = pi.parts().collect();
    let ell = parts.len();

    let t_count = s * (ell - k) as u64 + (s + 1) * k as u64;
    let mut image: Vec<(u64, bool)> = vec![(t, false); t_count as usize];
    image.extend(parts[k..].iter().map(|&(p, o)| (p - s * t, o)));
    image.extend(parts[..k].iter().map(|&(p, o)| (p - (s + 1) * t, o)));
    image.retain(|&(p, _)| p > 0);

    Overpartition::from_parts(&image)
        .map_err(|e| MapError::Internal(format!("phi({pi}) is not an overpartition: {e}")))
}

/// Collects every `t` from both subpartitions as unmarked parts and keeps
/// the remaining parts of the second subpartition.
pub fn psi(beta: &Bipartition, t: u64) -> Result<Overpartition, MapError> {
    check_t(t)?;
    if beta.t() != t {
        return Err(not_in_domain(
            "psi",
            beta,
            t,
            format!("bipartition is built on t = {}", beta.t()),
        ));
    }
    let second = beta.second();
    let count = beta.t_count() + second.multiplicity(t);
    let mut runs = Vec::new();
    if count > 0 {
        runs.push(Run {
            part: t,
            multiplicity: count,
            first_overlined: false,
        });
    }
    runs.extend(second.runs().iter().copied().filter(|r| r.part != t));
    Overpartition::from_runs(runs).map_err(|e| MapError::Internal(format!("psi({beta}): {e}")))
}

/// Anything a fiber can hold: it has a weight and a number of overlines.
pub trait Marked: fmt::Display {
    fn weight(&self) -> u64;
    fn num_overlined(&self) -> u64;
}

impl Marked for Overpartition {
    fn weight(&self) -> u64 {
        Overpartition::weight(self)
    }
    fn num_overlined(&self) -> u64 {
        Overpartition::num_overlined(self)
    }
}

impl Marked for Bipartition {
    fn weight(&self) -> u64 {
        Bipartition::weight(self)
    }
    fn num_overlined(&self) -> u64 {
        Bipartition::num_overlined(self)
    }
}

/// A target `mu` together with its full fiber under one of the maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreimageReport<T> {
    pub mu: Overpartition,
    pub t: u64,
    pub fiber: Vec<T>,
    /// Fiber members with as many overlines as `mu`.
    pub same_overlines: u64,
    /// Fiber members with one overline more than `mu`.
    pub one_more_overline: u64,
}

/// Wire form of a [`PreimageReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreimageReportJson {
    pub mu: String,
    pub t: u64,
    pub fiber: Vec<String>,
    pub same_overlines: u64,
    pub one_more_overline: u64,
    pub expected_size: u64,
}

/// `2m` when `mu` consists only of `t`'s, otherwise `2m + 1`.
pub fn expected_fiber_size(mu: &Overpartition, t: u64) -> u64 {
    let m = mu.multiplicity(t);
    if mu.len() == m {
        2 * m
    } else {
        2 * m + 1
    }
}

/// `((1 - delta) + (1 + z) m) z^o(mu)`: the overline-weighted size of a
/// fiber predicted by the counting argument.
pub fn predicted_fiber_weight(mu: &Overpartition, t: u64) -> ZLaurentPoly {
    let m = mu.multiplicity(t) as i64;
    let delta = i64::from(mu.len() as i64 == m);
    let o = mu.num_overlined() as i64;
    ZLaurentPoly::from_terms([(o, 1 - delta + m), (o + 1, m)])
}

impl<T: Marked> PreimageReport<T> {
    fn new(mu: Overpartition, t: u64, fiber: Vec<T>) -> Self {
        let o = mu.num_overlined();
        let same_overlines = fiber.iter().filter(|p| p.num_overlined() == o).count() as u64;
        let one_more_overline = fiber.iter().filter(|p| p.num_overlined() == o + 1).count() as u64;
        Self {
            mu,
            t,
            fiber,
            same_overlines,
            one_more_overline,
        }
    }

    pub fn expected_size(&self) -> u64 {
        expected_fiber_size(&self.mu, self.t)
    }

    /// `sum z^o(member)` over the fiber.
    pub fn fiber_weight(&self) -> ZLaurentPoly {
        ZLaurentPoly::from_terms(self.fiber.iter().map(|p| (p.num_overlined() as i64, 1)))
    }

    pub fn to_json_value(&self) -> PreimageReportJson {
        PreimageReportJson {
            mu: self.mu.to_string(),
            t: self.t,
            fiber: self.fiber.iter().map(ToString::to_string).collect(),
            same_overlines: self.same_overlines,
            one_more_overline: self.one_more_overline,
            expected_size: self.expected_size(),
        }
    }
}

/// Every `pi` in `G_t` with `phi(pi) = mu`, by increasing number of parts,
/// unmarked variant first.
pub fn phi_preimages(
    mu: &Overpartition,
    t: u64,
) -> Result<PreimageReport<Overpartition>, MapError> {
    check_t(t)?;
    if !in_pt(mu, t) {
        return Err(not_in_domain("phi_preimages", mu, t, pt_violation(mu, t)));
    }
    let m = mu.multiplicity(t);
    let residues: Vec<(u64, bool)> = mu.parts().filter(|&(p, _)| p != t).collect();
    let r = residues.len() as u64;
    let delta = u64::from(r == 0);

    let mut fiber = Vec::new();
    for ell in (r + delta)..=(r + m) {
        let sol = solve_system(ell, m)?;
        let (s, k) = (sol.s, sol.y as usize);
        let zeros = (ell - r) as usize;
        let padded: Vec<(u64, bool)> = residues
            .iter()
            .copied()
            .chain(std::iter::repeat_n((0, false), zeros))
            .collect();
        let split = ell as usize - k;

        // first k parts carry quotient s + 1, the rest quotient s
        let mut parts: Vec<(u64, bool)> = padded[split..]
            .iter()
            .map(|&(res, o)| (res + (s + 1) * t, o))
            .collect();
        parts.extend(padded[..split].iter().map(|&(res, o)| (res + s * t, o)));
        if parts.iter().any(|&(p, _)| p == 0) {
            return Err(MapError::Internal(format!(
                "preimage of {mu} with {ell} parts has a zero part"
            )));
        }
        let pi = Overpartition::from_parts(&parts)
            .map_err(|e| MapError::Internal(format!("preimage of {mu}: {e}")))?;

        if zeros > 0 {
            let smallest_multiple = pi
                .runs()
                .iter()
                .rev()
                .find(|run| run.part % t == 0)
                .map(|run| run.part)
                .ok_or_else(|| MapError::Internal(format!("no multiple of t in {pi}")))?;
            let marked: Vec<Run> = pi
                .runs()
                .iter()
                .map(|run| Run {
                    first_overlined: run.first_overlined || run.part == smallest_multiple,
                    ..*run
                })
                .collect();
            let marked = Overpartition::from_runs(marked)
                .map_err(|e| MapError::Internal(format!("marked preimage of {mu}: {e}")))?;
            fiber.push(pi);
            fiber.push(marked);
        } else {
            fiber.push(pi);
        }
    }
    Ok(PreimageReport::new(mu.clone(), t, fiber))
}

/// Every `beta` in `B_t` with `psi(beta) = mu`, by increasing number of
/// `t`'s moved into the second subpartition, unmarked variant first.
pub fn psi_preimages(mu: &Overpartition, t: u64) -> Result<PreimageReport<Bipartition>, MapError> {
    check_t(t)?;
    if !in_pt(mu, t) {
        return Err(not_in_domain("psi_preimages", mu, t, pt_violation(mu, t)));
    }
    let m = mu.multiplicity(t);
    let rest: Vec<Run> = mu.runs().iter().copied().filter(|r| r.part != t).collect();
    let lowest_x = u64::from(rest.is_empty());

    let mut fiber = Vec::new();
    for x in lowest_x..=m {
        let variants: &[bool] = if x == 0 { &[false] } else { &[false, true] };
        for &marked in variants {
            let mut runs = Vec::with_capacity(rest.len() + 1);
            if x > 0 {
                runs.push(Run {
                    part: t,
                    multiplicity: x,
                    first_overlined: marked,
                });
            }
            runs.extend(rest.iter().copied());
            let second = Overpartition::from_runs(runs)
                .map_err(|e| MapError::Internal(format!("psi preimage of {mu}: {e}")))?;
            let beta = Bipartition::new(t, m - x, second)
                .map_err(|e| MapError::Internal(format!("psi preimage of {mu}: {e}")))?;
            fiber.push(beta);
        }
    }
    Ok(PreimageReport::new(mu.clone(), t, fiber))
}

/// Brute-force fibers of `phi` at weight `n`: every member of `G_t`
/// grouped by its image.
pub fn brute_force_phi_fibers(
    t: u64,
    n: u64,
) -> Result<BTreeMap<Overpartition, BTreeSet<Overpartition>>, MapError> {
    let mut out: BTreeMap<Overpartition, BTreeSet<Overpartition>> = BTreeMap::new();
    for pi in enumerate_gt(t, n) {
        out.entry(phi(&pi, t)?).or_default().insert(pi);
    }
    Ok(out)
}

/// Brute-force fibers of `psi` at weight `n`.
pub fn brute_force_psi_fibers(
    t: u64,
    n: u64,
) -> Result<BTreeMap<Overpartition, BTreeSet<Bipartition>>, MapError> {
    let mut out: BTreeMap<Overpartition, BTreeSet<Bipartition>> = BTreeMap::new();
    for beta in enumerate_bt(t, n) {
        out.entry(psi(&beta, t)?).or_default().insert(beta);
    }
    Ok(out)
}

/// Outcome of a fiber check over all `mu` in `P_t` up to some weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberCheckReport {
    pub t: u64,
    pub max_n: u64,
    pub map: WhichMap,
    /// Number of targets `mu` examined.
    pub checked: u64,
    pub pass: bool,
    pub first_failure: Option<String>,
}

impl FiberCheckReport {
    fn start(t: u64, max_n: u64, map: WhichMap) -> Self {
        Self {
            t,
            max_n,
            map,
            checked: 0,
            pass: true,
            first_failure: None,
        }
    }

    fn fail(mut self, why: String) -> Self {
        self.pass = false;
        self.first_failure = Some(why);
        self
    }
}

/// For every `mu` in `P_t` of weight at most `max_n`, checks that the
/// overline-weighted fiber size equals `((1 - delta) + (1 + z) m) z^o(mu)`,
/// then that summing that prediction over `P_t` reproduces the enumerated
/// generating function of `G_t` (for `phi`) or `B_t` (for `psi`).
pub fn verify_fiber_identity(
    t: u64,
    max_n: u64,
    which: WhichMap,
) -> Result<FiberCheckReport, MapError> {
    check_t(t)?;
    let mut report = FiberCheckReport::start(t, max_n, which);
    let mut aggregated = Vec::new();
    for n in 1..=max_n {
        for mu in enumerate_pt(t, n) {
            report.checked += 1;
            let actual = match which {
                WhichMap::Phi => phi_preimages(&mu, t)?.fiber_weight(),
                WhichMap::Psi => psi_preimages(&mu, t)?.fiber_weight(),
            };
            let predicted = predicted_fiber_weight(&mu, t);
            if actual != predicted {
                return Ok(report.fail(format!(
                    "mu = {mu}: fiber weight {actual} but predicted {predicted}"
                )));
            }
            aggregated.push((n as i64, predicted));
        }
    }
    let order = max_n as i64 + 1;
    let lhs = QSeries::from_sparse(aggregated, order);
    let family = match which {
        WhichMap::Phi => Family::Gt,
        WhichMap::Psi => Family::Bt,
    };
    let rhs = gf_from_enumeration(family, t, max_n);
    if let Some(e) = lhs
        .first_difference(&rhs, order)
        .map_err(|e| MapError::Internal(e.to_string()))?
    {
        return Ok(report.fail(format!(
            "aggregated fiber weights differ from the {family:?} enumeration at q^{e}: {} vs {}",
            lhs.coeff(e).unwrap_or_default(),
            rhs.coeff(e).unwrap_or_default()
        )));
    }
    Ok(report)
}

fn check_phi_fiber(
    mu: &Overpartition,
    t: u64,
    brute: Option<&BTreeSet<Overpartition>>,
) -> Result<Option<String>, MapError> {
    let report = phi_preimages(mu, t)?;
    let built: BTreeSet<Overpartition> = report.fiber.iter().cloned().collect();
    let empty = BTreeSet::new();
    let brute = brute.unwrap_or(&empty);
    if built.len() != report.fiber.len() {
        return Ok(Some(format!("phi fiber of {mu} has repeated members")));
    }
    if &built != brute {
        let missing: Vec<String> = brute.difference(&built).map(ToString::to_string).collect();
        let extra: Vec<String> = built.difference(brute).map(ToString::to_string).collect();
        return Ok(Some(format!(
            "phi fiber of {mu}: missing {missing:?}, extra {extra:?}"
        )));
    }
    if report.fiber.len() as u64 != report.expected_size() {
        return Ok(Some(format!(
            "phi fiber of {mu} has {} members, expected {}",
            report.fiber.len(),
            report.expected_size()
        )));
    }
    let m = mu.multiplicity(t);
    if report.one_more_overline != m || report.same_overlines + m != report.fiber.len() as u64 {
        return Ok(Some(format!(
            "phi fiber of {mu}: {} same / {} one-more overlines, m = {m}",
            report.same_overlines, report.one_more_overline
        )));
    }
    let non_t = mu.len() - m;
    let low = non_t + u64::from(non_t == 0);
    for pi in &report.fiber {
        if phi(pi, t)? != *mu {
            return Ok(Some(format!("phi({pi}) != {mu}")));
        }
        if pi.len() < low || pi.len() > mu.len() {
            return Ok(Some(format!(
                "{pi} has {} parts, outside [{low}, {}]",
                pi.len(),
                mu.len()
            )));
        }
        let multiples = pi.parts().filter(|&(p, _)| p % t == 0).count() as u64;
        if multiples != pi.len() - non_t {
            return Ok(Some(format!(
                "{pi} has {multiples} multiples of t, expected {}",
                pi.len() - non_t
            )));
        }
    }
    Ok(None)
}

fn check_psi_fiber(
    mu: &Overpartition,
    t: u64,
    brute: Option<&BTreeSet<Bipartition>>,
) -> Result<Option<String>, MapError> {
    let report = psi_preimages(mu, t)?;
    let built: BTreeSet<Bipartition> = report.fiber.iter().cloned().collect();
    let empty = BTreeSet::new();
    let brute = brute.unwrap_or(&empty);
    if built.len() != report.fiber.len() {
        return Ok(Some(format!("psi fiber of {mu} has repeated members")));
    }
    if &built != brute {
        let missing: Vec<String> = brute.difference(&built).map(ToString::to_string).collect();
        let extra: Vec<String> = built.difference(brute).map(ToString::to_string).collect();
        return Ok(Some(format!(
            "psi fiber of {mu}: missing {missing:?}, extra {extra:?}"
        )));
    }
    if report.fiber.len() as u64 != report.expected_size() {
        return Ok(Some(format!(
            "psi fiber of {mu} has {} members, expected {}",
            report.fiber.len(),
            report.expected_size()
        )));
    }
    let m = mu.multiplicity(t);
    if report.one_more_overline != m || report.same_overlines + m != report.fiber.len() as u64 {
        return Ok(Some(format!(
            "psi fiber of {mu}: {} same / {} one-more overlines, m = {m}",
            report.same_overlines, report.one_more_overline
        )));
    }
    for beta in &report.fiber {
        if psi(beta, t)? != *mu || beta.weight() != mu.weight() {
            return Ok(Some(format!("psi({beta}) != {mu}")));
        }
    }
    Ok(None)
}

/// Compares constructed fibers with brute-force fibers as sets for every
/// `mu` in `P_t` of weight at most `max_n`, and checks the fiber sizes,
/// overline statistics and part-count bounds along the way. Also fails if
/// the brute force finds an image outside `P_t`.
pub fn verify_fibers_exact(
    t: u64,
    max_n: u64,
    which: WhichMap,
) -> Result<FiberCheckReport, MapError> {
    check_t(t)?;
    let mut report = FiberCheckReport::start(t, max_n, which);
    for n in 1..=max_n {
        let failure = match which {
            WhichMap::Phi => {
                let brute = brute_force_phi_fibers(t, n)?;
                first_failure(&mut report, t, n, brute.keys(), |mu| {
                    check_phi_fiber(mu, t, brute.get(mu))
                })?
            }
            WhichMap::Psi => {
                let brute = brute_force_psi_fibers(t, n)?;
                first_failure(&mut report, t, n, brute.keys(), |mu| {
                    check_psi_fiber(mu, t, brute.get(mu))
                })?
            }
        };
        if let Some(why) = failure {
            return Ok(report.fail(why));
        }
    }
    Ok(report)
}

fn first_failure<'a>(
    report: &mut FiberCheckReport,
    t: u64,
    n: u64,
    images: impl Iterator<Item = &'a Overpartition>,
    mut check: impl FnMut(&Overpartition) -> Result<Option<String>, MapError>,
) -> Result<Option<String>, MapError> {
    for image in images {
        if !in_pt(image, t) || image.weight() != n {
            return Ok(Some(format!(
                "image {image} is not a weight-{n} member of P_{t}"
            )));
        }
    }
    for mu in enumerate_pt(t, n) {
        report.checked += 1;
        if let Some(why) = check(&mu)? {
            return Ok(Some(why));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(s: &str) -> Overpartition {
        s.parse().unwrap()
    }

    fn strings<T: fmt::Display>(v: &[T]) -> Vec<String> {
        v.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn phi_worked_examples() {
        assert_eq!(phi(&op("7,4~"), 3).unwrap().to_string(), "3,3,3,1~,1");
        assert_eq!(phi(&op("4~,4,3"), 3).unwrap().to_string(), "3,3,3,1~,1");
    }

    #[test]
    fn phi_drops_overline_on_zero_residue() {
        // 3~ has residue 0 mod 3: the overline disappears
        let image = phi(&op("6,3~"), 3).unwrap();
        assert_eq!(image.to_string(), "3,3,3");
        assert_eq!(image.num_overlined(), 0);
    }

    #[test]
    fn phi_domain_error() {
        assert!(matches!(
            phi(&op("7~,4"), 3),
            Err(MapError::NotInDomain { .. })
        ));
        assert!(matches!(
            phi(&op("8,4"), 3),
            Err(MapError::NotInDomain { .. })
        ));
        assert!(phi(&op("1"), 0).is_err());
    }

    #[test]
    fn phi_fixes_pt() {
        for t in 1..=4 {
            for n in 1..=10 {
                for mu in enumerate_pt(t, n) {
                    assert_eq!(phi(&mu, t).unwrap(), mu);
                }
            }
        }
    }

    #[test]
    fn solve_system_examples() {
        assert_eq!(
            solve_system(3, 3).unwrap(),
            LemmaSolution { x: 3, y: 0, s: 1 }
        );
        assert_eq!(
            solve_system(2, 3).unwrap(),
            LemmaSolution { x: 1, y: 1, s: 1 }
        );
        assert_eq!(
            solve_system(1, 0).unwrap(),
            LemmaSolution { x: 1, y: 0, s: 0 }
        );
        assert!(solve_system(0, 3).is_err());
    }

    #[test]
    fn phi_fiber_all_t() {
        let r = phi_preimages(&op("3,3,3"), 3).unwrap();
        assert_eq!(
            strings(&r.fiber),
            ["9", "9~", "6,3", "6,3~", "3,3,3", "3~,3,3"]
        );
        assert_eq!(r.expected_size(), 6);
        assert_eq!((r.same_overlines, r.one_more_overline), (3, 3));
    }

    #[test]
    fn phi_fiber_with_residues() {
        let r = phi_preimages(&op("3,3,3,1~,1"), 3).unwrap();
        assert_eq!(
            strings(&r.fiber),
            [
                "7,4~",
                "4~,4,3",
                "4~,4,3~",
                "4,3,3,1~",
                "4,3~,3,1~",
                "3,3,3,1~,1",
                "3~,3,3,1~,1"
            ]
        );
        assert_eq!(r.expected_size(), 7);
        assert_eq!((r.same_overlines, r.one_more_overline), (4, 3));
        assert_eq!(r.fiber_weight(), ZLaurentPoly::from_terms([(1, 4), (2, 3)]));
        assert_eq!(predicted_fiber_weight(&r.mu, 3), r.fiber_weight());
    }

    #[test]
    fn phi_fiber_without_t() {
        let r = phi_preimages(&op("1"), 2).unwrap();
        assert_eq!(strings(&r.fiber), ["1"]);
        assert!(phi_preimages(&op("3~"), 3).is_err());
    }

    #[test]
    fn psi_examples() {
        let mu = op("3,3,3,1~,1");
        assert_eq!(psi(&"[3^1 | 3,3,1~,1]".parse().unwrap(), 3).unwrap(), mu);
        assert_eq!(psi(&"[3^1 | 3~,3,1~,1]".parse().unwrap(), 3).unwrap(), mu);
        assert_eq!(
            psi(&"[2^0 | 1~,1]".parse().unwrap(), 2)
                .unwrap()
                .to_string(),
            "1~,1"
        );
        assert!(psi(&"[2^0 | 1]".parse().unwrap(), 3).is_err());
    }

    #[test]
    fn psi_fibers() {
        let r = psi_preimages(&op("3,3,3"), 3).unwrap();
        assert_eq!(
            strings(&r.fiber),
            [
                "[3^2 | 3]",
                "[3^2 | 3~]",
                "[3^1 | 3,3]",
                "[3^1 | 3~,3]",
                "[3^0 | 3,3,3]",
                "[3^0 | 3~,3,3]"
            ]
        );
        let r = psi_preimages(&op("3,3,3,1~,1"), 3).unwrap();
        assert_eq!(r.fiber.len(), 7);
        assert_eq!(r.fiber[0].to_string(), "[3^3 | 1~,1]");
        assert_eq!((r.same_overlines, r.one_more_overline), (4, 3));
        let r = psi_preimages(&op("1~"), 2).unwrap();
        assert_eq!(strings(&r.fiber), ["[2^0 | 1~]"]);
    }

    #[test]
    fn report_json_shape() {
        let r = phi_preimages(&op("3,3,3"), 3).unwrap();
        let v = serde_json::to_value(r.to_json_value()).unwrap();
        assert_eq!(v["mu"], "3,3,3");
        assert_eq!(v["expected_size"], 6);
        assert_eq!(v["fiber"].as_array().unwrap().len(), 6);
    }

    #[test]
    fn small_fiber_checks() {
        for which in [WhichMap::Phi, WhichMap::Psi] {
            for t in 1..=3 {
                let r = verify_fiber_identity(t, 9, which).unwrap();
                assert!(r.pass, "{r:?}");
                let r = verify_fibers_exact(t, 9, which).unwrap();
                assert!(r.pass, "{r:?}");
            }
        }
    }
}

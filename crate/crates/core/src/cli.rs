//! Command-line front end. [`run`] parses arguments, writes the report and
//! returns the process exit code: 0 on success, 1 on usage or domain
//! errors, 2 when a verification fails.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::hyper::{
    check_32_transform, check_chu, chu_grid, smallest_part_sum_matches_enumeration,
    verify_section3_chain,
};
use crate::maps::{
    brute_force_phi_fibers, brute_force_psi_fibers, phi, phi_preimages, psi, psi_preimages,
    verify_fiber_identity, verify_fibers_exact, Marked, PreimageReport, WhichMap,
};
use crate::partitions::{gf_from_enumeration, Bipartition, Family, Overpartition};
use crate::qseries::{rhs_theorem11, QMonomial, QSeries, ZMode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

const DEFAULT_ORDER: i64 = 30;

#[derive(Parser, Debug)]
#[command(
    name = "overpart",
    version,
    about = "Overpartitions with bounded part differences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Table of g_t(m, n): overpartitions of n in G_t with m overlined parts.
    Table(TableArgs),
    /// Apply phi to a member of G_t.
    Phi(MapArgs),
    /// Apply psi to a bipartition written `[t^a | parts]`.
    Psi(MapArgs),
    /// List the fiber of a member of P_t under phi or psi.
    Preimages(PreimageArgs),
    /// Run verification suites over a range of t.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    t: u64,
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    max_n: u64,
    #[arg(long, default_value_t = ZMode::Tracked)]
    z: ZMode,
    /// Cross-check every entry against enumeration.
    #[arg(long)]
    check: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct MapArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    t: u64,
    input: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct PreimageArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    t: u64,
    #[arg(long, default_value_t = WhichMap::Phi)]
    map: WhichMap,
    mu: String,
    /// Compare with the fiber found by brute force.
    #[arg(long)]
    check: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    /// A single value or an inclusive range such as `1..5`.
    #[arg(long, default_value = "1..5")]
    t: TRange,
    #[arg(long, env = "OVERPART_DEFAULT_ORDER", default_value_t = DEFAULT_ORDER)]
    order: i64,
    /// Largest weight for the fiber suites.
    #[arg(long, default_value_t = 20)]
    max_n: u64,
    #[arg(long, default_value_t = ZMode::Tracked)]
    z: ZMode,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Gf,
    Fibers,
    Chu,
    Transform,
    Chain,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Gf => "gf",
            Suite::Fibers => "fibers",
            Suite::Chu => "chu",
            Suite::Transform => "transform",
            Suite::Chain => "chain",
            Suite::All => "all",
        }
    }
}

/// Inclusive range of `t` values.
#[derive(Clone, Debug, PartialEq, Eq)]
struct TRange(RangeInclusive<u64>);

impl FromStr for TRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |x: &str| -> Result<u64, String> {
            match x.trim().parse::<u64>() {
                Ok(0) | Err(_) => Err(format!("`{x}` is not a positive integer")),
                Ok(v) => Ok(v),
            }
        };
        let (lo, hi) = match s.split_once("..") {
            Some((lo, hi)) => (parse(lo)?, parse(hi.strip_prefix('=').unwrap_or(hi))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range `{s}`"));
        }
        Ok(TRange(lo..=hi))
    }
}

/// A usage or domain error; exits with [`EXIT_USAGE`].
#[derive(Debug)]
struct Failure(String);

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure(e.to_string())
}

/// A rendered report plus an optional verification failure that should be
/// reported after the output has been written.
struct Outcome {
    body: String,
    failure: Option<String>,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Self {
            body,
            failure: None,
        }
    }
}

/// Entry point shared by the binary and the tests.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };

    let (common, result) = match &cli.command {
        Command::Table(a) => (&a.common, cmd_table(a)),
        Command::Phi(a) => (&a.common, cmd_phi(a)),
        Command::Psi(a) => (&a.common, cmd_psi(a)),
        Command::Preimages(a) => (&a.common, cmd_preimages(a)),
        Command::Verify(a) => (&a.common, cmd_verify(a)),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.0);
            return EXIT_USAGE;
        }
    };
    let written = match &common.output {
        Some(path) => std::fs::write(path, outcome.body.as_bytes())
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => stdout
            .write_all(outcome.body.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_USAGE;
    }
    match outcome.failure {
        Some(msg) => {
            let _ = writeln!(stderr, "verification failed: {msg}");
            EXIT_VERIFY
        }
        None => EXIT_OK,
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// One row of the g_t(m, n) table; counts are decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: u64,
    pub counts: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub t: u64,
    pub z: ZMode,
    pub max_n: u64,
    /// Column labels: `m` values, or `total` when `z = 1`.
    pub columns: Vec<String>,
    pub rows: Vec<TableRow>,
}

fn table_report(t: u64, max_n: u64, z: ZMode, series: &QSeries) -> TableReport {
    let max_m = (1..=max_n as i64)
        .filter_map(|n| series.coeff(n).and_then(|c| c.max_degree()))
        .max()
        .unwrap_or(0)
        .max(0);
    let columns: Vec<String> = match z {
        ZMode::One => vec!["total".into()],
        _ => (0..=max_m).map(|m| m.to_string()).collect(),
    };
    let rows = (1..=max_n)
        .map(|n| {
            let c = series.coeff(n as i64).unwrap_or_default();
            TableRow {
                n,
                counts: (0..columns.len() as i64)
                    .map(|m| c.coeff(m).to_string())
                    .collect(),
            }
        })
        .collect();
    TableReport {
        t,
        z,
        max_n,
        columns,
        rows,
    }
}

fn render_table(report: &TableReport, format: Format) -> String {
    match format {
        Format::Json => to_json(report),
        Format::Csv => {
            let mut out = format!("n,{}\n", report.columns.join(","));
            for row in &report.rows {
                let _ = writeln!(out, "{},{}", row.n, row.counts.join(","));
            }
            out
        }
        Format::Text => {
            let width = report
                .rows
                .iter()
                .flat_map(|r| r.counts.iter().map(String::len))
                .chain(report.columns.iter().map(String::len))
                .max()
                .unwrap_or(1);
            let n_width = report.max_n.to_string().len().max(1);
            let mut out = format!("t = {}, z = {}\n", report.t, report.z);
            let _ = write!(out, "{:>n_width$}", "n");
            for c in &report.columns {
                let _ = write!(out, "  {c:>width$}");
            }
            out.push('\n');
            for row in &report.rows {
                let _ = write!(out, "{:>n_width$}", row.n);
                for c in &row.counts {
                    let _ = write!(out, "  {c:>width$}");
                }
                out.push('\n');
            }
            out
        }
    }
}

fn cmd_table(a: &TableArgs) -> Result<Outcome, Failure> {
    let order = a.max_n as i64 + 1;
    let tracked = rhs_theorem11(a.t as u32, true, order).map_err(usage)?;
    let series = a.z.apply(&tracked).map_err(usage)?;
    let report = table_report(a.t, a.max_n, a.z, &series);
    let mut outcome = Outcome::ok(render_table(&report, a.common.format));
    if a.check {
        let counted =
            a.z.apply(&gf_from_enumeration(Family::Gt, a.t, a.max_n))
                .map_err(usage)?;
        if let Some(n) = series.first_difference(&counted, order).map_err(usage)? {
            outcome.failure = Some(format!("series and enumeration differ at n = {n}"));
        }
    }
    Ok(outcome)
}

/// Image of a map together with the statistics it used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapReport {
    pub map: WhichMap,
    pub t: u64,
    pub input: String,
    pub image: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t_count: Option<u64>,
    pub weight: u64,
    pub o: u64,
}

fn render_map(r: &MapReport, format: Format) -> String {
    let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
    match format {
        Format::Json => to_json(r),
        Format::Csv => format!(
            "map,t,input,image,s,k,t_count,weight,o\n{},{},{},{},{},{},{},{},{}\n",
            r.map,
            r.t,
            csv_field(&r.input),
            csv_field(&r.image),
            opt(r.s),
            opt(r.k),
            opt(r.t_count),
            r.weight,
            r.o
        ),
        Format::Text => {
            let mut stats = String::new();
            if let (Some(s), Some(k)) = (r.s, r.k) {
                let _ = write!(stats, "s={s} k={k} ");
            }
            if let Some(a) = r.t_count {
                let _ = write!(stats, "t_count={a} ");
            }
            format!("{}\n{stats}weight={} o={}\n", r.image, r.weight, r.o)
        }
    }
}

fn cmd_phi(a: &MapArgs) -> Result<Outcome, Failure> {
    let pi: Overpartition = a.input.parse().map_err(usage)?;
    let image = phi(&pi, a.t).map_err(usage)?;
    let st = pi.stats(a.t);
    let report = MapReport {
        map: WhichMap::Phi,
        t: a.t,
        input: pi.to_string(),
        image: image.to_string(),
        s: Some(st.s),
        k: Some(st.k),
        t_count: None,
        weight: image.weight(),
        o: image.num_overlined(),
    };
    Ok(Outcome::ok(render_map(&report, a.common.format)))
}

fn cmd_psi(a: &MapArgs) -> Result<Outcome, Failure> {
    let beta: Bipartition = a.input.parse().map_err(usage)?;
    let image = psi(&beta, a.t).map_err(usage)?;
    let report = MapReport {
        map: WhichMap::Psi,
        t: a.t,
        input: beta.to_string(),
        image: image.to_string(),
        s: None,
        k: None,
        t_count: Some(beta.t_count()),
        weight: image.weight(),
        o: image.num_overlined(),
    };
    Ok(Outcome::ok(render_map(&report, a.common.format)))
}

fn render_preimages<T: Marked>(report: &PreimageReport<T>, format: Format) -> String {
    match format {
        Format::Json => to_json(&report.to_json_value()),
        Format::Csv => {
            let mut out = String::from("preimage,overlined\n");
            for p in &report.fiber {
                let _ = writeln!(out, "{},{}", csv_field(&p.to_string()), p.num_overlined());
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for p in &report.fiber {
                let _ = writeln!(out, "{p}");
            }
            let _ = writeln!(
                out,
                "count={} expected_size={} same_overlines={} one_more_overline={}",
                report.fiber.len(),
                report.expected_size(),
                report.same_overlines,
                report.one_more_overline
            );
            out
        }
    }
}

fn fiber_check<T: Marked + Ord + Clone>(
    report: &PreimageReport<T>,
    brute: Option<&std::collections::BTreeSet<T>>,
) -> Option<String> {
    let listed: std::collections::BTreeSet<T> = report.fiber.iter().cloned().collect();
    let empty = std::collections::BTreeSet::new();
    let brute = brute.unwrap_or(&empty);
    if &listed != brute {
        return Some(format!(
            "fiber of {} has {} members but brute force finds {}",
            report.mu,
            listed.len(),
            brute.len()
        ));
    }
    if listed.len() as u64 != report.expected_size() {
        return Some(format!(
            "fiber of {} has size {} instead of {}",
            report.mu,
            listed.len(),
            report.expected_size()
        ));
    }
    None
}

fn cmd_preimages(a: &PreimageArgs) -> Result<Outcome, Failure> {
    let mu: Overpartition = a.mu.parse().map_err(usage)?;
    let n = mu.weight();
    match a.map {
        WhichMap::Phi => {
            let report = phi_preimages(&mu, a.t).map_err(usage)?;
            let mut outcome = Outcome::ok(render_preimages(&report, a.common.format));
            if a.check {
                let brute = brute_force_phi_fibers(a.t, n).map_err(usage)?;
                outcome.failure = fiber_check(&report, brute.get(&mu));
            }
            Ok(outcome)
        }
        WhichMap::Psi => {
            let report = psi_preimages(&mu, a.t).map_err(usage)?;
            let mut outcome = Outcome::ok(render_preimages(&report, a.common.format));
            if a.check {
                let brute = brute_force_psi_fibers(a.t, n).map_err(usage)?;
                outcome.failure = fiber_check(&report, brute.get(&mu));
            }
            Ok(outcome)
        }
    }
}

/// One line of the verification summary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyEntry {
    pub suite: Suite,
    /// `None` for checks that do not depend on `t`.
    pub t: Option<u64>,
    pub order: i64,
    pub pass: bool,
    pub details: String,
}

fn entry(
    suite: Suite,
    t: Option<u64>,
    order: i64,
    outcome: Result<(bool, String), String>,
) -> VerifyEntry {
    let (pass, details) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    VerifyEntry {
        suite,
        t,
        order,
        pass,
        details,
    }
}

fn suite_gf(t: u64, order: i64, z: ZMode) -> Result<(bool, String), String> {
    let series = z
        .apply(&rhs_theorem11(t as u32, true, order).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let counted = z
        .apply(&gf_from_enumeration(
            Family::Gt,
            t,
            (order - 1).max(0) as u64,
        ))
        .map_err(|e| e.to_string())?;
    Ok(
        match series
            .first_difference(&counted, order)
            .map_err(|e| e.to_string())?
        {
            None => (
                true,
                format!("closed form matches enumeration below q^{order}"),
            ),
            Some(n) => (
                false,
                format!("closed form and enumeration differ at q^{n}"),
            ),
        },
    )
}

fn suite_fibers(t: u64, max_n: u64) -> Result<(bool, String), String> {
    let mut notes = Vec::new();
    let mut pass = true;
    for which in [WhichMap::Phi, WhichMap::Psi] {
        for (kind, report) in [
            (
                "fibers",
                verify_fibers_exact(t, max_n, which).map_err(|e| e.to_string())?,
            ),
            (
                "weights",
                verify_fiber_identity(t, max_n, which).map_err(|e| e.to_string())?,
            ),
        ] {
            pass &= report.pass;
            match report.first_failure {
                Some(f) => notes.push(format!("{which} {kind}: {f}")),
                None => notes.push(format!("{which} {kind}: {} targets", report.checked)),
            }
        }
    }
    Ok((pass, format!("weights up to {max_n}; {}", notes.join("; "))))
}

fn suite_chu(t: u64, order: i64) -> Result<(bool, String), String> {
    let a = QMonomial::new(-1, 1, 0);
    let c = QMonomial::new(-1, 1, 1);
    let pass = check_chu(&a, &c, t, order).map_err(|e| e.to_string())?;
    Ok((
        pass,
        format!(
            "2phi1(-z, q^-{t}; -zq; q, q^{}) against (q)_{t}/(-zq)_{t}",
            t + 1
        ),
    ))
}

fn suite_chu_grid(order: i64) -> Result<(bool, String), String> {
    let mut failures = Vec::new();
    let grid = chu_grid();
    for (a, c) in &grid {
        for n in 0..=6 {
            if !check_chu(a, c, n, order).map_err(|e| e.to_string())? {
                failures.push(format!("a={a}, c={c}, n={n}"));
            }
        }
    }
    Ok(if failures.is_empty() {
        (true, format!("{} parameter pairs, n <= 6", grid.len()))
    } else {
        (false, format!("failed: {}", failures.join("; ")))
    })
}

fn suite_transform(t: u64, order: i64) -> Result<(bool, String), String> {
    let ti = t as i64;
    let pass = check_32_transform(
        &QMonomial::q_power(1),
        &QMonomial::q_power(1),
        &QMonomial::new(-1, 1, ti + 1),
        &QMonomial::new(-1, 1, 2),
        &QMonomial::q_power(ti + 2),
        order,
    )
    .map_err(|e| e.to_string())?;
    Ok((pass, "a=q, b=q, c=-zq^(t+1), d=-zq^2, e=q^(t+2)".into()))
}

fn suite_chain(t: u64, order: i64, z: ZMode) -> Result<(bool, String), String> {
    let report = verify_section3_chain(t, order, z).map_err(|e| e.to_string())?;
    let counted = smallest_part_sum_matches_enumeration(t, order).map_err(|e| e.to_string())?;
    let mut details = match report.first_mismatch() {
        None => format!("{} lines agree", report.lines.len()),
        Some(label) => format!("first disagreement at `{label}`"),
    };
    details.push_str(if counted {
        "; smallest-part sum matches enumeration"
    } else {
        "; smallest-part sum differs from enumeration"
    });
    Ok((report.pass && counted, details))
}

fn run_suite(suite: Suite, ts: &[u64], order: i64, max_n: u64, z: ZMode) -> Vec<VerifyEntry> {
    // each t is independent; results are collected in t order
    let mut entries: Vec<VerifyEntry> = std::thread::scope(|scope| {
        let handles: Vec<_> = ts
            .iter()
            .map(|&t| {
                scope.spawn(move || {
                    let result = match suite {
                        Suite::Gf => suite_gf(t, order, z),
                        Suite::Fibers => suite_fibers(t, max_n),
                        Suite::Chu => suite_chu(t, order),
                        Suite::Transform => suite_transform(t, order),
                        Suite::Chain => suite_chain(t, order, z),
                        Suite::All => unreachable!("expanded by the caller"),
                    };
                    entry(suite, Some(t), order, result)
                })
            })
            .collect();
        handles
            .into_iter()
            .zip(ts)
            .map(|(h, &t)| {
                h.join()
                    .unwrap_or_else(|_| entry(suite, Some(t), order, Err("check panicked".into())))
            })
            .collect()
    });
    if suite == Suite::Chu {
        entries.push(entry(suite, None, order, suite_chu_grid(order)));
    }
    entries
}

fn render_verify(entries: &[VerifyEntry], format: Format) -> String {
    match format {
        Format::Json => to_json(&entries),
        Format::Csv => {
            let mut out = String::from("suite,t,order,pass,details\n");
            for e in entries {
                let t = e.t.map(|t| t.to_string()).unwrap_or_default();
                let _ = writeln!(
                    out,
                    "{},{t},{},{},{}",
                    e.suite.name(),
                    e.order,
                    e.pass,
                    csv_field(&e.details)
                );
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for e in entries {
                let t =
                    e.t.map(|t| format!("t={t}"))
                        .unwrap_or_else(|| "t=-".into());
                let verdict = if e.pass { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    out,
                    "{verdict} {} {t} order={}: {}",
                    e.suite.name(),
                    e.order,
                    e.details
                );
            }
            out
        }
    }
}

fn cmd_verify(a: &VerifyArgs) -> Result<Outcome, Failure> {
    if a.order < 1 {
        return Err(usage("order must be at least 1"));
    }
    let ts: Vec<u64> = a.t.0.clone().collect();
    let suites = match a.suite {
        Suite::All => vec![
            Suite::Gf,
            Suite::Fibers,
            Suite::Chu,
            Suite::Transform,
            Suite::Chain,
        ],
        s => vec![s],
    };
    let entries: Vec<VerifyEntry> = suites
        .into_iter()
        .flat_map(|s| run_suite(s, &ts, a.order, a.max_n, a.z))
        .collect();
    let failed: Vec<String> = entries
        .iter()
        .filter(|e| !e.pass)
        .map(|e| match e.t {
            Some(t) => format!("{} t={t}", e.suite.name()),
            None => e.suite.name().to_string(),
        })
        .collect();
    let mut outcome = Outcome::ok(render_verify(&entries, a.common.format));
    if !failed.is_empty() {
        outcome.failure = Some(failed.join(", "));
    }
    Ok(outcome)
}

//! Parameter sweeps over `(q, k)` and report rendering.
//!
//! Tasks run on a rayon pool of configurable width; finished reports pass
//! through a reorder buffer so the sink always sees them in `(q, k)` order.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::{mpsc, Arc, OnceLock};

use serde::Serialize;

use crate::arith::{divisors, prime_power};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, DEFAULT_MAX_ORDER};
use crate::matrix::LinearPoly;
use crate::verifier::{self, Branch, Check, VerificationReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KFilter {
    All,
    List(Vec<u64>),
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub q_min: u64,
    pub q_max: u64,
    pub k_filter: KFilter,
    pub branches: Vec<Branch>,
    pub jobs: usize,
    /// Seed for the optional generator-independence check.
    pub seed: u64,
    /// When set, each report also carries a generator-independence check
    /// with this many random orderings of `D_k`.
    pub independence: Option<usize>,
    pub max_order: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            q_min: 3,
            q_max: 100,
            k_filter: KFilter::All,
            branches: vec![Branch::PartI, Branch::PartII, Branch::PartIII],
            jobs: 1,
            seed: 0,
            independence: None,
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.q_min > self.q_max {
            return Err(Error::InvalidArgument(format!(
                "q-min {} exceeds q-max {}",
                self.q_min, self.q_max
            )));
        }
        if self.jobs == 0 {
            return Err(Error::InvalidArgument("jobs must be at least 1".into()));
        }
        if self.q_max > self.max_order {
            return Err(Error::FieldTooLarge {
                q: self.q_max as u128,
                limit: self.max_order,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Task {
    pub q: u64,
    pub p: u64,
    pub s: u32,
    pub k: u64,
}

/// Odd prime powers `q = p^s` in `[lo, hi]` as `(q, p, s)`.
pub fn odd_prime_powers(lo: u64, hi: u64) -> Vec<(u64, u64, u32)> {
    (lo.max(3)..=hi)
        .filter(|q| q % 2 == 1)
        .filter_map(|q| prime_power(q).map(|(p, s)| (q, p, s)))
        .collect()
}

/// Every `(q, k)` the sweep will run, in output order.
pub fn plan(cfg: &SweepConfig) -> Vec<Task> {
    let mut tasks = Vec::new();
    for (q, p, s) in odd_prime_powers(cfg.q_min, cfg.q_max) {
        let ks: Vec<u64> = match &cfg.k_filter {
            KFilter::All => divisors(q - 1),
            KFilter::List(list) => {
                let mut ks: Vec<u64> = list
                    .iter()
                    .copied()
                    .filter(|&k| k > 0 && (q - 1) % k == 0)
                    .collect();
                ks.sort_unstable();
                ks.dedup();
                ks
            }
        };
        for k in ks {
            if cfg.branches.contains(&Branch::classify(q, k)) {
                tasks.push(Task { q, p, s, k });
            }
        }
    }
    tasks
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub reports: usize,
    pub passed: usize,
    pub failed: usize,
    pub degenerate: usize,
}

impl SweepSummary {
    fn record(&mut self, r: &VerificationReport) {
        self.reports += 1;
        if r.passed() {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        if r.degenerate {
            self.degenerate += 1;
        }
    }
}

fn run_task(
    ctx: &FieldCtx,
    task: Task,
    cfg: &SweepConfig,
) -> Result<VerificationReport> {
    let mut report = verifier::verify(ctx, task.k)?;
    if let Some(perms) = cfg.independence {
        let seed = cfg.seed ^ (task.q << 32) ^ task.k;
        report.push_check(verifier::verify_generator_independence(
            ctx, task.k, seed, perms,
        )?);
    }
    Ok(report)
}

/// Runs the sweep, handing reports to `sink` in `(q, k)` order as soon as
/// every earlier report is available.
pub fn run_sweep(
    cfg: &SweepConfig,
    mut sink: impl FnMut(&VerificationReport),
) -> Result<SweepSummary> {
    cfg.validate()?;
    let tasks = plan(cfg);
    let mut fields: BTreeMap<u64, Arc<OnceLock<Result<Arc<FieldCtx>>>>> = BTreeMap::new();
    for t in &tasks {
        fields.entry(t.q).or_default();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;

    let mut summary = SweepSummary::default();
    let mut first_error = None;
    let (tx, rx) = mpsc::channel::<(usize, Result<VerificationReport>)>();
    pool.in_place_scope(|scope| {
        for (idx, &task) in tasks.iter().enumerate() {
            let tx = tx.clone();
            let cell = fields[&task.q].clone();
            scope.spawn(move |_| {
                let ctx = cell.get_or_init(|| {
                    FieldCtx::new(task.p, task.s, cfg.max_order).map(Arc::new)
                });
                let result = match ctx {
                    Ok(ctx) => run_task(ctx, task, cfg),
                    Err(e) => Err(e.clone()),
                };
                log::debug!("finished q = {} k = {}", task.q, task.k);
                // The receiver outlives every task.
                let _ = tx.send((idx, result));
            });
        }
        drop(tx);

        let mut pending = BTreeMap::new();
        let mut next = 0usize;
        for (idx, result) in rx.iter() {
            pending.insert(idx, result);
            while let Some(result) = pending.remove(&next) {
                match result {
                    Ok(report) => {
                        summary.record(&report);
                        if first_error.is_none() {
                            sink(&report);
                        }
                    }
                    Err(e) => {
                        first_error.get_or_insert(e);
                    }
                }
                next += 1;
            }
        }
    });
    match first_error {
        Some(e) => Err(e),
        None => Ok(summary),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(Error::InvalidArgument(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Serialize)]
struct ReportView<'a> {
    q: u64,
    p: u64,
    s: u32,
    k: u64,
    n: u64,
    branch: Branch,
    modulus: &'a [u64],
    generator: &'a [u64],
    det: &'a LinearPoly,
    c_k: Option<i64>,
    d_k: Option<i64>,
    u_k: Option<String>,
    degenerate: bool,
    pass: bool,
    checks: &'a [Check],
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
}

fn view(r: &VerificationReport, timings: bool) -> ReportView<'_> {
    ReportView {
        q: r.q,
        p: r.p,
        s: r.s,
        k: r.k,
        n: r.n,
        branch: r.branch,
        modulus: &r.modulus,
        generator: &r.generator,
        det: &r.det,
        c_k: r.c_k,
        d_k: r.d_k,
        u_k: r.u_k.as_ref().map(|u| u.to_string()),
        degenerate: r.degenerate,
        pass: r.passed(),
        checks: &r.checks,
        elapsed_ms: timings.then_some(r.elapsed.as_millis()),
    }
}

pub const CSV_HEADER: &str = "q,p,s,k,n,branch,det_a,det_b,c_k,d_k,u_k,pass,degenerate";

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(|v| v.to_string()).unwrap_or_default()
}

/// One report as a single JSON line, one CSV row, or an indented text block.
/// Wall-clock time only appears when `timings` is set, so that repeated runs
/// produce identical bytes.
pub fn render(r: &VerificationReport, format: Format, timings: bool) -> String {
    match format {
        Format::Json => serde_json::to_string(&view(r, timings)).expect("report serializes"),
        Format::Csv => format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.q,
            r.p,
            r.s,
            r.k,
            r.n,
            r.branch.as_str(),
            r.det.a,
            r.det.b,
            opt(&r.c_k),
            opt(&r.d_k),
            opt(&r.u_k),
            r.passed(),
            r.degenerate
        ),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "q = {} (p = {}, s = {}), k = {}, n = {}, {} [{}]",
                r.q,
                r.p,
                r.s,
                r.k,
                r.n,
                r.branch.as_str(),
                if r.passed() { "PASS" } else { "FAIL" }
            );
            let _ = writeln!(out, "  modulus {:?}, generator {:?}", r.modulus, r.generator);
            let _ = writeln!(out, "  det A_k(t) = {}", r.det);
            let _ = writeln!(
                out,
                "  c_k = {}, d_k = {}, u_k = {}{}",
                opt(&r.c_k),
                opt(&r.d_k),
                opt(&r.u_k),
                if r.degenerate { " (degenerate)" } else { "" }
            );
            for c in &r.checks {
                let _ = writeln!(
                    out,
                    "  {} {}: {}",
                    if c.pass { "ok  " } else { "FAIL" },
                    c.name,
                    c.detail
                );
            }
            if timings {
                let _ = writeln!(out, "  elapsed {} ms", r.elapsed.as_millis());
            }
            out.pop();
            out
        }
    }
}

pub fn render_summary(s: &SweepSummary) -> String {
    format!(
        "summary: {} reports, {} passed, {} failed, {} degenerate",
        s.reports, s.passed, s.failed, s.degenerate
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers_in_range() {
        let qs: Vec<u64> = odd_prime_powers(1, 30).into_iter().map(|t| t.0).collect();
        assert_eq!(qs, vec![3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29]);
        assert!(odd_prime_powers(24, 24).is_empty());
    }

    #[test]
    fn plan_respects_filters() {
        let cfg = SweepConfig {
            q_min: 3,
            q_max: 13,
            k_filter: KFilter::List(vec![2]),
            ..Default::default()
        };
        let qs: Vec<(u64, u64)> = plan(&cfg).into_iter().map(|t| (t.q, t.k)).collect();
        assert_eq!(qs, vec![(3, 2), (5, 2), (7, 2), (9, 2), (11, 2), (13, 2)]);

        let cfg = SweepConfig {
            q_min: 13,
            q_max: 13,
            branches: vec![Branch::PartIII],
            ..Default::default()
        };
        let ks: Vec<u64> = plan(&cfg).into_iter().map(|t| t.k).collect();
        assert_eq!(ks, vec![4, 12]);
    }

    #[test]
    fn sweep_is_ordered_and_passes() {
        let cfg = SweepConfig {
            q_min: 3,
            q_max: 30,
            jobs: 3,
            ..Default::default()
        };
        let mut seen = Vec::new();
        let summary = run_sweep(&cfg, |r| seen.push((r.q, r.k, r.passed()))).unwrap();
        let mut sorted = seen.clone();
        sorted.sort();
        assert_eq!(seen, sorted);
        assert!(seen.iter().all(|s| s.2));
        assert_eq!(summary.failed, 0);
        assert_eq!(summary.reports, seen.len());
    }

    #[test]
    fn empty_range_is_fine() {
        let cfg = SweepConfig {
            q_min: 24,
            q_max: 24,
            ..Default::default()
        };
        let summary = run_sweep(&cfg, |_| panic!("no reports expected")).unwrap();
        assert_eq!(summary, SweepSummary::default());
    }

    #[test]
    fn invalid_configs() {
        let cfg = SweepConfig {
            q_min: 10,
            q_max: 5,
            ..Default::default()
        };
        assert!(run_sweep(&cfg, |_| {}).is_err());
        let cfg = SweepConfig {
            jobs: 0,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn json_and_csv_carry_the_same_data() {
        let ctx = crate::field::make_field(7, 1).unwrap();
        let r = verifier::verify(&ctx, 2).unwrap();
        let json: serde_json::Value = serde_json::from_str(&render(&r, Format::Json, false)).unwrap();
        let csv = render(&r, Format::Csv, false);
        let cols: Vec<&str> = csv.split(',').collect();
        let header: Vec<&str> = CSV_HEADER.split(',').collect();
        assert_eq!(cols.len(), header.len());
        assert_eq!(json["det"]["a"], cols[6]);
        assert_eq!(json["det"]["b"], cols[7]);
        assert_eq!(json["branch"], cols[5]);
        assert_eq!(json["c_k"].to_string(), cols[8]);
        assert_eq!(json["pass"].to_string(), cols[11]);
        assert!(json.get("elapsed_ms").is_none());
        let timed: serde_json::Value = serde_json::from_str(&render(&r, Format::Json, true)).unwrap();
        assert!(timed.get("elapsed_ms").is_some());
    }
}

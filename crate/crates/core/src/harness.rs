//! Batch runs over `(q, p)`: sieving, parallel evaluation, density and partial-sum
//! reports, oracle verification, and CSV/JSON output.

use std::io::Write;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::Serialize;

use crate::classgroup::class_number;
use crate::error::{Error, Result};
use crate::ring::{QContext, SUPPORTED_Q};
use crate::sixteen::{ep_record, EpRecord};

/// Default bound on `q*p` for running the form-counting oracle.
pub const DEFAULT_ORACLE_CAP: u64 = 30_000_000;

const SEGMENT: u64 = 1 << 18;

fn small_primes(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Primes `p <= x` with `p = 1 mod 4`, ascending. Segmented sieve of Eratosthenes.
pub fn sieve_primes(x: u64) -> Vec<u64> {
    if x < 5 {
        return Vec::new();
    }
    let base = small_primes((x as f64).sqrt() as u64 + 1);
    let mut out = Vec::new();
    let mut lo = 2u64;
    while lo <= x {
        let hi = (lo + SEGMENT - 1).min(x);
        let mut composite = vec![false; (hi - lo + 1) as usize];
        for &p in &base {
            if p * p > hi {
                break;
            }
            let start = (p * p).max(lo.div_ceil(p) * p);
            let mut m = start;
            while m <= hi {
                composite[(m - lo) as usize] = true;
                m += p;
            }
        }
        out.extend(
            composite
                .iter()
                .enumerate()
                .filter(|(_, &c)| !c)
                .map(|(k, _)| lo + k as u64)
                .filter(|n| n % 4 == 1),
        );
        lo = hi + 1;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Symbol criterion only.
    Criterion,
    /// Form counting only; `chi`, `chi4` and `e` are read off `v_2(h)`.
    Oracle,
    /// Both, with agreement recorded.
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub qs: Vec<u64>,
    pub x_max: u64,
    pub method: Method,
    /// The oracle runs in `Both` mode only when `q*p <= oracle_cap`.
    pub oracle_cap: u64,
    pub jobs: usize,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn new(qs: Vec<u64>, x_max: u64) -> Self {
        RunConfig {
            qs,
            x_max,
            method: Method::Criterion,
            oracle_cap: DEFAULT_ORACLE_CAP,
            jobs: 1,
            out: None,
            format: Format::Csv,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.jobs == 0 {
            return Err(Error::InvalidArgument("jobs must be at least 1".into()));
        }
        if self.qs.is_empty() {
            return Err(Error::InvalidArgument("no q selected".into()));
        }
        if let Some(&q) = self.qs.iter().find(|q| !SUPPORTED_Q.contains(q)) {
            return Err(Error::UnsupportedQ(q));
        }
        Ok(())
    }
}

/// Parses `all`, a single `q`, or a comma-separated list.
pub fn parse_q_list(s: &str) -> Result<Vec<u64>> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(SUPPORTED_Q.to_vec());
    }
    let mut qs = Vec::new();
    for part in s.split(',') {
        let q: u64 = part.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad q value {part:?}")))?;
        if !SUPPORTED_Q.contains(&q) {
            return Err(Error::UnsupportedQ(q));
        }
        if !qs.contains(&q) {
            qs.push(q);
        }
    }
    Ok(qs)
}

/// Record built from the class number alone.
pub fn oracle_record(q: u64, p: u64, h: u64) -> EpRecord {
    let k = h.trailing_zeros().min(4);
    EpRecord {
        q,
        p,
        chi: if k >= 2 { 1 } else { -1 },
        chi4: (k >= 2).then_some(if k >= 3 { 1 } else { -1 }),
        u: None,
        v: None,
        e: match k {
            4 => 1,
            3 => -1,
            _ => 0,
        },
        h: Some(h),
        agree: None,
    }
}

fn one_record(ctx: &QContext, p: u64, cfg: &RunConfig) -> Result<EpRecord> {
    let q = ctx.q;
    let h = || class_number(-((q * p) as i64));
    match cfg.method {
        Method::Criterion => ep_record(ctx, p),
        Method::Oracle => Ok(oracle_record(q, p, h()?)),
        Method::Both => {
            let mut rec = ep_record(ctx, p)?;
            if q * p <= cfg.oracle_cap {
                rec.attach_oracle(h()?);
            }
            Ok(rec)
        }
    }
}

/// One record per `(q, p)`, ordered by `q` as given and then by `p`, whatever `jobs` is.
pub fn run_batch(cfg: &RunConfig) -> Result<Vec<EpRecord>> {
    cfg.validate()?;
    let primes = sieve_primes(cfg.x_max);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let mut out = Vec::new();
    for &q in &cfg.qs {
        let ctx = QContext::new(q)?;
        let recs: Result<Vec<EpRecord>> = pool.install(|| {
            primes
                .par_iter()
                .map(|&p| {
                    one_record(&ctx, p, cfg).map_err(|e| match e {
                        Error::Internal { .. } => e,
                        other => Error::Internal { q, p, msg: other.to_string() },
                    })
                })
                .collect()
        });
        out.extend(recs?);
    }
    Ok(out)
}

/// Partial sum of `e_p` after the first `count` primes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Checkpoint {
    pub count: usize,
    pub p: u64,
    pub partial_sum: i64,
    pub nonzero: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    pub q: u64,
    pub x_max: u64,
    pub n1: u64,
    pub count4: u64,
    pub count8: u64,
    pub count16: u64,
    pub ratio4: String,
    pub ratio8: String,
    pub ratio16: String,
    pub partial_sum: i64,
    pub max_abs_partial: i64,
    /// Number of `p` with `e_p != 0`.
    pub nonzero: u64,
    /// Taken when the prime count is a power of two, and at the end.
    pub checkpoints: Vec<Checkpoint>,
}

/// `num/den` rounded to six decimals with exact integer arithmetic; `NA` for `den = 0`.
pub fn render_ratio(num: u64, den: u64) -> String {
    if den == 0 {
        return "NA".into();
    }
    let scaled = (2 * num as u128 * 1_000_000 + den as u128) / (2 * den as u128);
    format!("{}.{:06}", scaled / 1_000_000, scaled % 1_000_000)
}

impl DensityReport {
    pub fn ratio(&self, k: u32) -> Option<f64> {
        let c = match k {
            4 => self.count4,
            8 => self.count8,
            16 => self.count16,
            _ => return None,
        };
        (self.n1 > 0).then(|| c as f64 / self.n1 as f64)
    }
}

/// Report for the records of one `q`, which must be in ascending `p`.
pub fn density_report(q: u64, x_max: u64, records: &[EpRecord]) -> DensityReport {
    let mut rep = DensityReport {
        q,
        x_max,
        n1: 0,
        count4: 0,
        count8: 0,
        count16: 0,
        ratio4: String::new(),
        ratio8: String::new(),
        ratio16: String::new(),
        partial_sum: 0,
        max_abs_partial: 0,
        nonzero: 0,
        checkpoints: Vec::new(),
    };
    for r in records.iter().filter(|r| r.q == q) {
        rep.n1 += 1;
        rep.count4 += u64::from(r.chi == 1);
        rep.count8 += u64::from(r.chi4 == Some(1));
        rep.count16 += u64::from(r.e == 1);
        rep.nonzero += u64::from(r.e != 0);
        rep.partial_sum += r.e as i64;
        rep.max_abs_partial = rep.max_abs_partial.max(rep.partial_sum.abs());
        if rep.n1.is_power_of_two() {
            rep.checkpoints.push(Checkpoint {
                count: rep.n1 as usize,
                p: r.p,
                partial_sum: rep.partial_sum,
                nonzero: rep.nonzero,
            });
        }
    }
    if let Some(last) = records.iter().rfind(|r| r.q == q) {
        if !rep.n1.is_power_of_two() {
            rep.checkpoints.push(Checkpoint {
                count: rep.n1 as usize,
                p: last.p,
                partial_sum: rep.partial_sum,
                nonzero: rep.nonzero,
            });
        }
    }
    rep.ratio4 = render_ratio(rep.count4, rep.n1);
    rep.ratio8 = render_ratio(rep.count8, rep.n1);
    rep.ratio16 = render_ratio(rep.count16, rep.n1);
    rep
}

/// One report per distinct `q`, in first-seen order.
pub fn density_reports(x_max: u64, records: &[EpRecord]) -> Vec<DensityReport> {
    let mut qs: Vec<u64> = Vec::new();
    for r in records {
        if !qs.contains(&r.q) {
            qs.push(r.q);
        }
    }
    qs.into_iter().map(|q| density_report(q, x_max, records)).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verification {
    pub checked: usize,
    pub skipped: usize,
    pub mismatches: Vec<EpRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationSummary {
    pub checked: usize,
    pub skipped: usize,
    pub mismatches: usize,
}

impl Verification {
    pub fn summary(&self) -> VerificationSummary {
        VerificationSummary { checked: self.checked, skipped: self.skipped, mismatches: self.mismatches.len() }
    }
}

/// Records whose criterion values contradict `v_2(h)`. The check is recomputed from
/// `h` rather than read from `agree`; records without `h` are skipped.
pub fn verify(records: &[EpRecord]) -> Verification {
    let mut v = Verification::default();
    for r in records {
        match r.h {
            Some(h) => {
                v.checked += 1;
                if !r.consistent_with(h) {
                    v.mismatches.push(r.clone());
                }
            }
            None => v.skipped += 1,
        }
    }
    v
}

pub const CSV_HEADER: &str = "q,p,chi,chi4,u,v,e,h,v2h,agree";

fn na<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(|| "NA".to_string(), |x| x.to_string())
}

pub fn csv_line(r: &EpRecord) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{}",
        r.q,
        r.p,
        r.chi,
        na(r.chi4),
        na(r.u.as_ref()),
        na(r.v.as_ref()),
        r.e,
        na(r.h),
        na(r.v2h()),
        na(r.agree)
    )
}

pub fn write_csv<W: Write>(mut w: W, records: &[EpRecord]) -> std::io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in records {
        writeln!(w, "{}", csv_line(r))?;
    }
    w.flush()
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub method: Method,
    pub reports: Vec<DensityReport>,
    pub verification: Option<VerificationSummary>,
}

pub fn write_json<W: Write>(mut w: W, report: &RunReport) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut w, report)?;
    writeln!(w)?;
    w.flush()
}

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use sedecim::harness::{
    density_reports, parse_q_list, run_batch, verify, write_csv, write_json, Format, Method, RunConfig, RunReport,
    DEFAULT_ORACLE_CAP,
};
use sedecim::ideals::{find_generator, primes_above};
use sedecim::modular::is_prime;
use sedecim::sixteen::{a_ideal, e_p, orbit_check, unit_coeff_check};
use sedecim::symbols::jacobi;
use sedecim::QContext;

#[derive(Parser)]
#[command(name = "sedecim", version, about = "16-rank of class groups of Q(sqrt(-qp))")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Criterion,
    Oracle,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the criterion for all primes p = 1 mod 4 up to --x-max.
    Density {
        /// One of 3, 7, 11, 19, 43, 67, 163, a comma-separated list, or "all".
        #[arg(long, default_value = "3")]
        q: String,
        #[arg(long, default_value_t = 10_000)]
        x_max: u64,
        #[arg(long, value_enum, default_value = "criterion")]
        method: MethodArg,
        /// Run the class-number oracle only when q*p is at most this.
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        oracle_cap: u64,
        #[arg(long, env = "SEDECIM_JOBS")]
        jobs: Option<usize>,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
    },
    /// Compare the criterion with the class-number oracle.
    Verify {
        #[arg(long, default_value = "all")]
        q: String,
        #[arg(long, default_value_t = 20_000)]
        x_max: u64,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        oracle_cap: u64,
        #[arg(long, env = "SEDECIM_JOBS")]
        jobs: Option<usize>,
    },
    /// Check the unit coefficient rows and the orbit maps mod 4.
    Tables {
        #[arg(long, default_value = "all")]
        q: String,
    },
    /// Evaluate the sequence a(P) at the primes of M_q above the given rational primes.
    Sequence {
        #[arg(long, default_value = "3")]
        q: String,
        /// Comma-separated rational primes.
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<u64>,
    },
}

fn sign(s: num_bigint::Sign) -> char {
    if s == num_bigint::Sign::Minus {
        '-'
    } else {
        '+'
    }
}

/// `[a, b]` as `a*u + b*v` with the zero terms dropped.
fn linear([a, b]: [i64; 2]) -> String {
    let mut out = String::new();
    for (c, var) in [(a, "u"), (b, "v")] {
        if c == 0 {
            continue;
        }
        let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
        if out.is_empty() {
            out = format!("{}{mag}{var}", if c < 0 { "-" } else { "" });
        } else {
            out += &format!(" {} {mag}{var}", if c < 0 { '-' } else { '+' });
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// Failure that maps to exit code 2.
struct Mismatch;

fn default_jobs(jobs: Option<usize>) -> usize {
    jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn output(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> Result<std::result::Result<(), Mismatch>> {
    match cli.command {
        Command::Density { q, x_max, method, oracle_cap, jobs, out, format } => {
            let mut cfg = RunConfig::new(parse_q_list(&q)?, x_max);
            cfg.method = match method {
                MethodArg::Criterion => Method::Criterion,
                MethodArg::Oracle => Method::Oracle,
                MethodArg::Both => Method::Both,
            };
            cfg.oracle_cap = oracle_cap;
            cfg.jobs = default_jobs(jobs);
            cfg.out = out;
            cfg.format = match format {
                FormatArg::Csv => Format::Csv,
                FormatArg::Json => Format::Json,
            };
            let records = run_batch(&cfg)?;
            let reports = density_reports(x_max, &records);
            let check = (cfg.method == Method::Both).then(|| verify(&records));
            let w = output(&cfg.out)?;
            match cfg.format {
                Format::Csv => write_csv(w, &records)?,
                Format::Json => write_json(
                    w,
                    &RunReport { method: cfg.method, reports: reports.clone(), verification: check.as_ref().map(|c| c.summary()) },
                )?,
            }
            for r in &reports {
                eprintln!(
                    "q={} n1={} ratio4={} ratio8={} ratio16={} sum={} max|partial|={} nonzero={}",
                    r.q, r.n1, r.ratio4, r.ratio8, r.ratio16, r.partial_sum, r.max_abs_partial, r.nonzero
                );
            }
            match check {
                Some(c) if !c.mismatches.is_empty() => {
                    eprintln!("{} mismatches against the oracle", c.mismatches.len());
                    Ok(Err(Mismatch))
                }
                _ => Ok(Ok(())),
            }
        }
        Command::Verify { q, x_max, oracle_cap, jobs } => {
            let mut cfg = RunConfig::new(parse_q_list(&q)?, x_max);
            cfg.method = Method::Both;
            cfg.oracle_cap = oracle_cap;
            cfg.jobs = default_jobs(jobs);
            let records = run_batch(&cfg)?;
            let v = verify(&records);
            let mut w = output(&None)?;
            writeln!(w, "checked={} skipped={} mismatches={}", v.checked, v.skipped, v.mismatches.len())?;
            if !v.mismatches.is_empty() {
                write_csv(&mut w, &v.mismatches)?;
            }
            w.flush()?;
            Ok(if v.mismatches.is_empty() { Ok(()) } else { Err(Mismatch) })
        }
        Command::Tables { q } => {
            let mut ok = true;
            let mut w = output(&None)?;
            for q in parse_q_list(&q)? {
                let ctx = QContext::new(q)?;
                let (a1, b1) = &ctx.real_unit;
                let (a, b) = &ctx.coeff_ab;
                let rows = unit_coeff_check(&ctx);
                let orbits = orbit_check(&ctx);
                let disc = ctx.order_discriminant_check();
                ok &= rows && orbits && disc;
                writeln!(w, "q={q}")?;
                writeln!(w, "  eps = {}", ctx.eps)?;
                writeln!(w, "  eps*sigma(eps) = {a1} {} {}*sqrt({q})", sign(b1.sign()), b1.magnitude())?;
                writeln!(w, "  2A = {}, 2qB = {}  [{}]", a * 2, b * 2 * q, if rows { "ok" } else { "MISMATCH" })?;
                let m = ctx.orbit_matrix;
                writeln!(
                    w,
                    "  (u,v) -> ({}, {}) mod 4  [{}]",
                    linear(m[0]),
                    linear(m[1]),
                    if orbits { "ok" } else { "MISMATCH" }
                )?;
                writeln!(w, "  |disc| = {}  [{}]", ctx.trace_discriminant().magnitude(), if disc { "ok" } else { "MISMATCH" })?;
            }
            w.flush()?;
            Ok(if ok { Ok(()) } else { Err(Mismatch) })
        }
        Command::Sequence { q, p } => {
            let qs = parse_q_list(&q)?;
            let mut w = output(&None)?;
            writeln!(w, "q,p,f,generator,a,e")?;
            for q in qs {
                let ctx = QContext::new(q)?;
                for &p in &p {
                    if !is_prime(p) {
                        bail!("{p} is not prime");
                    }
                    if p == 2 || p == q {
                        writeln!(w, "{q},{p},NA,NA,0,NA")?;
                        continue;
                    }
                    let e = if p % 4 == 1 { e_p(&ctx, p)?.to_string() } else { "NA".into() };
                    for prime in primes_above(&ctx, p)? {
                        let g = find_generator(&ctx, &prime)?;
                        let a = a_ideal(&ctx, &g)?;
                        let e = if prime.f == 1 && jacobi(-(q as i128), p as i128)? == 1 { e.as_str() } else { "NA" };
                        writeln!(w, "{q},{p},{},\"{g}\",{a},{e}", prime.f)?;
                    }
                }
            }
            w.flush()?;
            Ok(Ok(()))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return if usage { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Mismatch)) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

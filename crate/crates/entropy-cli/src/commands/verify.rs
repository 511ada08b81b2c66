use super::{parse_pq, CommonArgs};
use crate::output::{emit, parse_range};
use clap::Args;
use entropy_numbers::verify::{binom_suite, gamma_suite, schuett_suite, thm32_suite, SuiteReport};
use entropy_numbers::{Error, Result};
use serde::Serialize;

#[derive(Args)]
pub struct VerifyArgs {
    /// Suite to run: schuett, gamma, binom, or thm32.
    #[arg(long)]
    pub suite: String,
    /// Source exponent p (schuett suite).
    #[arg(long, default_value = "1")]
    pub p: String,
    /// Target exponent q (schuett suite).
    #[arg(long, default_value = "inf")]
    pub q: String,
    /// Grid for m, a value or inclusive range (schuett and gamma suites).
    #[arg(long)]
    pub m: Option<String>,
    /// Grid for n, a value or inclusive range (schuett suite).
    #[arg(long)]
    pub n: Option<String>,
    /// Largest m for the binomial suite.
    #[arg(long, default_value_t = 40)]
    pub max_m: u64,
    /// Random simplex points per m for the gamma suite.
    #[arg(long, default_value_t = 1000)]
    pub samples: u32,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Serialize)]
struct VerifyRow {
    suite: String,
    m: u64,
    n: u64,
    bound: f64,
    lo: f64,
    hi: f64,
    regime: String,
    pass: bool,
    note: String,
}

pub fn run(args: &VerifyArgs) -> Result<i32> {
    let budget = args.common.budget();
    let seed = args.common.seed;
    let report: SuiteReport = match args.suite.as_str() {
        "binom" => binom_suite(args.max_m)?,
        "gamma" => {
            let ms = parse_range(args.m.as_deref().unwrap_or("1..8"))?;
            gamma_suite(
                *ms.first().unwrap() as u32,
                *ms.last().unwrap() as u32,
                args.samples,
                seed,
            )?
        }
        "schuett" => {
            let pq = parse_pq(&args.p, &args.q)?;
            let ms = parse_range(args.m.as_deref().unwrap_or("1..4"))?;
            let ns = parse_range(args.n.as_deref().unwrap_or("1..12"))?;
            schuett_suite(pq, *ms.last().unwrap() as u32, *ns.last().unwrap() as u32, &budget, seed)?
        }
        "thm32" => thm32_suite(&budget, seed)?,
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown suite `{other}` (expected schuett, gamma, binom, or thm32)"
            )))
        }
    };
    let rows: Vec<VerifyRow> = report
        .rows
        .iter()
        .map(|r| VerifyRow {
            suite: report.suite.clone(),
            m: r.m,
            n: r.n,
            bound: r.bound,
            lo: r.lo,
            hi: r.hi,
            regime: r.regime.map(|g| g.to_string()).unwrap_or_default(),
            pass: r.pass,
            note: r.note.clone(),
        })
        .collect();
    emit(&rows, args.common.format, args.common.out.as_ref(), "verify", seed, false)?;
    eprintln!(
        "suite {}: {} rows, max bound/hi {:.4}, max lo/bound {:.4}, {} ms, {}",
        report.suite,
        report.rows.len(),
        report.max_hi_ratio,
        report.max_lo_ratio,
        report.elapsed_ms,
        if report.pass { "PASS" } else { "FAIL" }
    );
    if !report.pass {
        for row in report.failing_rows() {
            eprintln!("  FAIL m={} n={}: {}", row.m, row.n, row.note);
        }
        return Ok(1);
    }
    Ok(0)
}

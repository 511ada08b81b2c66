use super::CommonArgs;
use crate::output::{emit, parse_f64_list, write_text};
use clap::Args;
use entropy_numbers::combinat::{gamma_count, gamma_dominate, gamma_enumerate};
use entropy_numbers::io::write_gamma;
use entropy_numbers::{Error, Result};
use serde::Serialize;

#[derive(Args)]
pub struct GammaArgs {
    /// Block count m.
    #[arg(long)]
    pub m: Option<u32>,
    /// Emit every admissible sequence in the line-oriented witness format.
    #[arg(long)]
    pub enumerate: bool,
    /// Emit count statistics instead of members.
    #[arg(long)]
    pub stats: bool,
    /// Emit the sequence dominating the given probability vector `a1,a2,...`.
    #[arg(long)]
    pub dominate: Option<String>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Serialize)]
struct GammaStatsRow {
    m: u32,
    count: u64,
    /// The cardinality cap `2^(5m/2)`.
    cap: f64,
    /// `count / cap`, at most 1.
    ratio: f64,
}

pub fn run(args: &GammaArgs) -> Result<i32> {
    if let Some(vector) = &args.dominate {
        let alpha = parse_f64_list(vector)?;
        let eps = gamma_dominate(&alpha)?;
        write_text(&format!("{eps}\n"), args.common.out.as_ref())?;
        return Ok(0);
    }
    let m = args
        .m
        .ok_or_else(|| Error::InvalidInput("--m is required without --dominate".into()))?;
    if args.stats {
        let count = gamma_count(m)?;
        let cap = (5.0 * m as f64 / 2.0).exp2();
        let rows = [GammaStatsRow { m, count, cap, ratio: count as f64 / cap }];
        emit(&rows, args.common.format, args.common.out.as_ref(), "gamma", args.common.seed, false)?;
        return Ok(0);
    }
    if args.enumerate {
        let sequences = gamma_enumerate(m)?;
        write_text(&write_gamma(m, &sequences), args.common.out.as_ref())?;
        return Ok(0);
    }
    Err(Error::InvalidInput(
        "choose one of --enumerate, --stats, or --dominate".into(),
    ))
}

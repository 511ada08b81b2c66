use super::CommonArgs;
use crate::output::{emit, write_text};
use clap::Args;
use entropy_numbers::combinat::{family_counting_bound, separated_family};
use entropy_numbers::io::write_set_family;
use entropy_numbers::Result;
use serde::Serialize;

#[derive(Args)]
pub struct CodesArgs {
    /// Ground set size.
    #[arg(long)]
    pub ground: u32,
    /// Member cardinality v.
    #[arg(long)]
    pub v: u32,
    /// Emit only the statistics row instead of the family itself.
    #[arg(long)]
    pub stats_only: bool,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Serialize)]
struct CodesStatsRow {
    ground: u32,
    v: u32,
    size: usize,
    max_intersection: usize,
    /// Exact numerator of the counting lower bound.
    bound_numerator: String,
    /// Exact denominator of the counting lower bound.
    bound_denominator: String,
    bound: f64,
}

pub fn run(args: &CodesArgs) -> Result<i32> {
    let family = separated_family(args.ground, args.v, args.common.seed)?;
    family.validate()?;
    let (num, den) = family_counting_bound(args.ground, args.v);
    let bound = rational_to_f64(&num, &den);
    let stats = CodesStatsRow {
        ground: args.ground,
        v: args.v,
        size: family.members.len(),
        max_intersection: family.max_pairwise_intersection().unwrap_or(0),
        bound_numerator: num.to_string(),
        bound_denominator: den.to_string(),
        bound,
    };
    if args.stats_only {
        emit(
            &[stats],
            args.common.format,
            args.common.out.as_ref(),
            "codes",
            args.common.seed,
            false,
        )?;
        return Ok(0);
    }
    write_text(&write_set_family(&family), args.common.out.as_ref())?;
    eprintln!(
        "family: {} members of size {} over {{1..{}}}, max pairwise intersection {}, counting bound {:.4}",
        stats.size, stats.v, stats.ground, stats.max_intersection, stats.bound
    );
    Ok(0)
}

fn rational_to_f64(num: &num_bigint::BigUint, den: &num_bigint::BigUint) -> f64 {
    use num_traits::ToPrimitive;
    match (num.to_f64(), den.to_f64()) {
        (Some(n), Some(d)) if d > 0.0 => n / d,
        _ => f64::INFINITY,
    }
}

use super::{parse_pq, CommonArgs};
use crate::output::{emit, parse_f64_list, parse_range};
use clap::Args;
use entropy_numbers::bounds::{
    schuett_a, schuett_regime, thm32_a, thm33_a, thm33_b, thm33_d, HeterogeneousNorms,
};
use entropy_numbers::space::EntropyProfile;
use entropy_numbers::{Error, Result};
use serde::Serialize;

#[derive(Args)]
pub struct BoundsArgs {
    /// Which bound to evaluate: 2.1, 3.2, 3.3a, 3.3b, or 3.3d.
    #[arg(long)]
    pub thm: String,
    /// Block count m, a value or inclusive range `a..b`.
    #[arg(long)]
    pub m: String,
    /// Entropy index n, a value or inclusive range `a..b`.
    #[arg(long)]
    pub n: String,
    /// Source exponent p (`inf` allowed).
    #[arg(long)]
    pub p: String,
    /// Target exponent q (`inf` allowed).
    #[arg(long)]
    pub q: String,
    /// Inline entropy profile `e1,e2,...` for the profile-based bounds.
    #[arg(long)]
    pub profile: Option<String>,
    /// Named profile preset (`scalar-identity` for e_k = 2^(1-k)).
    #[arg(long)]
    pub profile_preset: Option<String>,
    /// Block operator norms `b1,b2,...` for the heterogeneous bound.
    #[arg(long)]
    pub norms: Option<String>,
    /// Index-set threshold for the 3.3d variant.
    #[arg(long)]
    pub a: Option<f64>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Serialize)]
struct BoundRow {
    thm: String,
    m: u64,
    n: u64,
    p: String,
    q: String,
    value: f64,
    regime: String,
}

fn profile_from(args: &BoundsArgs) -> Result<EntropyProfile> {
    match (&args.profile, &args.profile_preset) {
        (Some(_), Some(_)) => Err(Error::InvalidInput(
            "give either an inline profile or a preset, not both".into(),
        )),
        (Some(list), None) => EntropyProfile::new(parse_f64_list(list)?),
        (None, Some(name)) => match name.as_str() {
            "scalar-identity" => Ok(EntropyProfile::dyadic(64)),
            other => Err(Error::InvalidInput(format!("unknown profile preset `{other}`"))),
        },
        (None, None) => Err(Error::InvalidInput(
            "this bound needs --profile or --profile-preset".into(),
        )),
    }
}

pub fn run(args: &BoundsArgs) -> Result<i32> {
    let pq = parse_pq(&args.p, &args.q)?;
    let ms = parse_range(&args.m)?;
    let ns = parse_range(&args.n)?;
    let mut rows = Vec::new();
    for &m in &ms {
        for &n in &ns {
            let (value, regime) = match args.thm.as_str() {
                "2.1" => (
                    schuett_a(m, n, pq),
                    schuett_regime(m, n).to_string(),
                ),
                "3.2" => (thm32_a(n, m, &profile_from(args)?, pq)?, String::new()),
                "3.3a" => {
                    let norms = args.norms.as_ref().ok_or_else(|| {
                        Error::InvalidInput("the 3.3a bound needs --norms".into())
                    })?;
                    let norms = HeterogeneousNorms::new(parse_f64_list(norms)?)?;
                    (thm33_a(n, m, &norms, pq)?, String::new())
                }
                "3.3b" => {
                    let profile = profile_from(args)?;
                    (thm33_b(n, &[profile], pq)?, String::new())
                }
                "3.3d" => {
                    let a = args.a.ok_or_else(|| {
                        Error::InvalidInput("the 3.3d bound needs --a".into())
                    })?;
                    (thm33_d(a, n, m, &profile_from(args)?, pq)?, String::new())
                }
                other => {
                    return Err(Error::InvalidInput(format!(
                        "unknown bound `{other}` (expected 2.1, 3.2, 3.3a, 3.3b, or 3.3d)"
                    )))
                }
            };
            rows.push(BoundRow {
                thm: args.thm.clone(),
                m,
                n,
                p: pq.p().to_string(),
                q: pq.q().to_string(),
                value,
                regime,
            });
        }
    }
    emit(
        &rows,
        args.common.format,
        args.common.out.as_ref(),
        "bounds",
        args.common.seed,
        false,
    )?;
    Ok(0)
}

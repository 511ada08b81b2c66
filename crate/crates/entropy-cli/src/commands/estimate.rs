use super::{parse_pq, CommonArgs};
use crate::output::{emit, parse_range};
use clap::Args;
use entropy_numbers::io::{write_net, write_packing};
use entropy_numbers::nets::entropy_bracket;
use entropy_numbers::{Error, Result};
use serde::Serialize;
use std::path::PathBuf;

const MAX_M: u64 = 6;
const MAX_N: u64 = 14;

#[derive(Args)]
pub struct EstimateArgs {
    /// Dimension m, a value or inclusive range `a..b` (at most 6).
    #[arg(long)]
    pub m: String,
    /// Entropy index n, a value or inclusive range `a..b` (at most 14).
    #[arg(long)]
    pub n: String,
    /// Source exponent p (`inf` allowed).
    #[arg(long)]
    pub p: String,
    /// Target exponent q (`inf` allowed).
    #[arg(long)]
    pub q: String,
    /// Directory to dump the witnessing packing and net per grid point.
    #[arg(long)]
    pub witness_dir: Option<PathBuf>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Serialize)]
struct BracketRow {
    m: u64,
    n: u64,
    p: String,
    q: String,
    lo: f64,
    hi: f64,
    f_lo: f64,
    r: f64,
    net_count: u64,
    packing_count: u64,
    seed: u64,
}

pub fn run(args: &EstimateArgs) -> Result<i32> {
    let pq = parse_pq(&args.p, &args.q)?;
    let ms = parse_range(&args.m)?;
    let ns = parse_range(&args.n)?;
    if *ms.last().unwrap() > MAX_M {
        return Err(Error::Domain(format!("estimate supports m <= {MAX_M}")));
    }
    if *ns.last().unwrap() > MAX_N {
        return Err(Error::Domain(format!("estimate supports n <= {MAX_N}")));
    }
    if let Some(dir) = &args.witness_dir {
        std::fs::create_dir_all(dir)
            .map_err(|e| Error::InvalidInput(format!("cannot create {}: {e}", dir.display())))?;
    }
    let budget = args.common.budget();
    let mut rows = Vec::new();
    let mut truncated = false;
    'grid: for &m in &ms {
        for &n in &ns {
            let bracket = match entropy_bracket(m as u32, n as u32, pq, &budget, args.common.seed) {
                Ok(b) => b,
                Err(Error::Resource(_)) => {
                    truncated = true;
                    break 'grid;
                }
                Err(e) => return Err(e),
            };
            let (packing_count, net_count) = match &bracket.witnesses {
                Some((packing, net)) => (packing.len() as u64, net.len() as u64),
                None => (0, 0),
            };
            if let Some(dir) = &args.witness_dir {
                if let Some((packing, net)) = &bracket.witnesses {
                    let stem = format!("m{m}_n{n}");
                    std::fs::write(dir.join(format!("{stem}.net")), write_net(net)).map_err(
                        |e| Error::InvalidInput(format!("cannot write witness: {e}")),
                    )?;
                    std::fs::write(dir.join(format!("{stem}.packing")), write_packing(packing))
                        .map_err(|e| Error::InvalidInput(format!("cannot write witness: {e}")))?;
                }
            }
            rows.push(BracketRow {
                m,
                n,
                p: pq.p().to_string(),
                q: pq.q().to_string(),
                lo: bracket.lo,
                hi: bracket.hi,
                f_lo: bracket.f_lo,
                r: bracket.r.get(),
                net_count,
                packing_count,
                seed: args.common.seed,
            });
        }
    }
    emit(
        &rows,
        args.common.format,
        args.common.out.as_ref(),
        "estimate",
        args.common.seed,
        truncated,
    )?;
    if truncated {
        eprintln!("warning: grid truncated by the resource budget; partial results emitted");
        return Ok(4);
    }
    Ok(0)
}

pub mod bounds;
pub mod codes;
pub mod estimate;
pub mod gamma;
pub mod verify;

use crate::output::Format;
use clap::Args;
use entropy_numbers::nets::Budget;
use entropy_numbers::space::{Exponent, ExponentPair};
use entropy_numbers::Result;
use std::path::PathBuf;

/// Flags shared by every subcommand.
#[derive(Args)]
pub struct CommonArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output file (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Seed for every randomized procedure.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Cap on centers/enumeration size for constructive procedures.
    #[arg(long)]
    pub budget: Option<u64>,
}

impl CommonArgs {
    pub fn budget(&self) -> Budget {
        match self.budget {
            Some(cap) => Budget { max_centers: cap, ..Budget::default() },
            None => Budget::default(),
        }
    }
}

pub fn parse_pq(p: &str, q: &str) -> Result<ExponentPair> {
    let p: Exponent = p.parse()?;
    let q: Exponent = q.parse()?;
    ExponentPair::new(p, q)
}

//! Constructive coverings and packings of `l_p^m` unit balls in the `l_q`
//! metric: lattice nets, greedy packings, certified entropy-number brackets,
//! product nets, the block-decomposition net, and the separated point family
//! used for lower bounds.

mod audit;
mod block;
mod bracket;
mod lattice;
mod packing;
mod pointset;
mod product;
pub mod sample;

pub use audit::{audit_net_coverage, audit_net_coverage_seq, audit_packing, AuditReport};
pub use block::{block_decomposition_net, scalar_identity_block_generator, BlockDecompositionNet, BlockNetGenerator};
pub use bracket::{entropy_bracket, EntropyBracket, EPS_GRID_RATIO};
pub use lattice::{lattice_cell_count, lattice_net};
pub use packing::{greedy_packing, greedy_packing_with_target};
pub use pointset::{lower_bound_pointset, PointsetMeta};
pub use product::product_net;

use crate::error::{Error, Result};
use crate::space::{Exponent, Point};

/// Resource caps for net/packing construction and audits.
#[derive(Debug, Clone)]
pub struct Budget {
    /// Hard cap on centers a single net may contain.
    pub max_centers: u64,
    /// Cap on candidate points examined by greedy packings.
    pub max_candidates: u64,
    /// Random candidates drawn per greedy packing run.
    pub trials: u64,
    /// Random ball points per coverage audit.
    pub audit_samples: u32,
    /// Cap on points generated by `lower_bound_pointset`.
    pub max_pointset: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_centers: 10_000_000,
            max_candidates: 2_000_000,
            trials: 2000,
            audit_samples: 10_000,
            max_pointset: 4096,
        }
    }
}

/// A covering witness: centers of `l_q` balls of the given radius whose
/// union contains the covered set, with `#points <= 2^(claimed_index - 1)`.
#[derive(Debug, Clone)]
pub struct Net {
    pub points: Vec<Point>,
    pub radius: f64,
    pub metric_q: Exponent,
    pub claimed_index: u32,
}

impl Net {
    pub fn new(points: Vec<Point>, radius: f64, metric_q: Exponent, claimed_index: u32) -> Result<Self> {
        let net = Net { points, radius, metric_q, claimed_index };
        net.check_index()?;
        Ok(net)
    }

    fn check_index(&self) -> Result<()> {
        if self.points.is_empty() {
            return Err(Error::InvalidInput("net must have at least one center".into()));
        }
        if self.claimed_index < 1 || !count_fits_index(self.points.len() as u128, self.claimed_index) {
            return Err(Error::InvalidInput(format!(
                "net with {} centers cannot claim index {}",
                self.points.len(),
                self.claimed_index
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Distance from `x` to the nearest center.
    pub fn nearest_distance(&self, x: &[f64]) -> f64 {
        self.points
            .iter()
            .map(|c| crate::space::lq_distance(x, &c.coords, self.metric_q))
            .fold(f64::INFINITY, f64::min)
    }
}

/// `count <= 2^(index - 1)`.
pub(crate) fn count_fits_index(count: u128, index: u32) -> bool {
    if index >= 128 {
        return true;
    }
    count <= 1u128 << (index - 1)
}

/// Smallest index `n` with `count <= 2^(n-1)`.
pub(crate) fn index_for_count(count: u64) -> u32 {
    let mut n = 1u32;
    while !count_fits_index(count as u128, n) {
        n += 1;
    }
    n
}

/// Largest index `n` with `count >= 2^(n-1) + 1`, or 0 if `count < 2`.
pub(crate) fn packing_index_for_count(count: u64) -> u32 {
    if count < 2 {
        return 0;
    }
    // count - 1 >= 2^(n-1)
    (63 - (count - 1).leading_zeros()) + 1
}

/// A packing witness: points of the source ball whose images are pairwise at
/// `l_q` distance at least `2 * separation`; certifies the inner entropy
/// number `f_n >= separation` for `n = claimed_index` when
/// `#points >= 2^(claimed_index - 1) + 1`.
#[derive(Debug, Clone)]
pub struct Packing {
    pub points: Vec<Point>,
    pub separation: f64,
    pub metric_q: Exponent,
    /// 0 when the packing has fewer than two points and certifies nothing.
    pub claimed_index: u32,
}

impl Packing {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Measured minimum pairwise distance (infinite for fewer than 2 points).
    pub fn min_pairwise_distance(&self) -> f64 {
        let q = self.metric_q;
        crate::par::pairwise_min(&self.points, |a, b| {
            crate::space::lq_distance(&a.coords, &b.coords, q)
        })
    }
}

//! A-posteriori audits: coverage of nets against seeded point clouds and
//! exhaustive pairwise-distance checks of packings.

use super::{Budget, Net, Packing};
use crate::par;
use crate::space::ExponentPair;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const AUDIT_REL_TOL: f64 = 1e-9;

/// Outcome of an audit; `max_observed` is the worst distance seen (largest
/// min-distance-to-center for nets, smallest pairwise distance for packings).
#[derive(Debug, Clone, Copy)]
pub struct AuditReport {
    pub pass: bool,
    pub max_observed: f64,
    pub threshold: f64,
    pub samples: usize,
}

/// Coverage audit: seeded random ball points plus deterministic boundary
/// stress points must all lie within the claimed radius of some center.
pub fn audit_net_coverage(net: &Net, pq: ExponentPair, budget: &Budget, seed: u64) -> AuditReport {
    let dim = net.points[0].dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cloud = super::sample::extreme_points(dim, pq.p());
    for _ in 0..budget.audit_samples {
        cloud.push(super::sample::random_ball_point(&mut rng, dim, pq.p()));
    }
    let worst = par::map_max(&cloud, |x| net.nearest_distance(x));
    AuditReport {
        pass: worst <= net.radius * (1.0 + AUDIT_REL_TOL),
        max_observed: worst,
        threshold: net.radius,
        samples: cloud.len(),
    }
}

/// Sequential twin of [`audit_net_coverage`], for the benchmark suite.
pub fn audit_net_coverage_seq(net: &Net, pq: ExponentPair, budget: &Budget, seed: u64) -> AuditReport {
    let dim = net.points[0].dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cloud = super::sample::extreme_points(dim, pq.p());
    for _ in 0..budget.audit_samples {
        cloud.push(super::sample::random_ball_point(&mut rng, dim, pq.p()));
    }
    let worst = par::map_max_seq(&cloud, |x| net.nearest_distance(x));
    AuditReport {
        pass: worst <= net.radius * (1.0 + AUDIT_REL_TOL),
        max_observed: worst,
        threshold: net.radius,
        samples: cloud.len(),
    }
}

/// Exhaustive pairwise-distance audit of a packing, including the cardinality
/// side of its claimed index.
pub fn audit_packing(packing: &Packing) -> AuditReport {
    let n = packing.points.len();
    let threshold = 2.0 * packing.separation;
    if n < 2 {
        return AuditReport {
            pass: packing.claimed_index == 0,
            max_observed: f64::INFINITY,
            threshold,
            samples: n,
        };
    }
    let min_dist = packing.min_pairwise_distance();
    // cardinality side: count >= 2^(claimed - 1) + 1 unless nothing is claimed
    let count_ok = packing.claimed_index == 0
        || (packing.claimed_index < 128
            && n as u128 >= (1u128 << (packing.claimed_index - 1)) + 1);
    AuditReport {
        pass: min_dist >= threshold * (1.0 - AUDIT_REL_TOL) && count_ok,
        max_observed: min_dist,
        threshold,
        samples: n,
    }
}

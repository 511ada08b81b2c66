//! Greedy maximal packings of `B_{l_p^m}` under the `l_q` metric.
//!
//! The candidate stream is deterministic for a fixed seed: axis extreme
//! points, normalized full sign vectors, a corner-aligned lattice of pitch
//! `2*eps` (whose in-ball points are automatically pairwise admissible),
//! then seeded random ball points. A candidate is admitted iff it is in the
//! ball and at `l_q` distance >= `2*eps` from every admitted point.

use super::{packing_index_for_count, sample, Budget, Packing};
use crate::space::{lq_distance, quasi_norm_unchecked, Exponent, ExponentPair, Point};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Greedy packing with pairwise separation `2*eps`.
pub fn greedy_packing(m: u32, pq: ExponentPair, eps: f64, trials: u64, seed: u64) -> Packing {
    greedy_packing_with_target(m, pq, eps, trials, seed, None, &Budget::default())
}

/// As [`greedy_packing`], stopping early once `target` points are admitted
/// (the truncated packing is still a certified lower-bound witness).
pub fn greedy_packing_with_target(
    m: u32,
    pq: ExponentPair,
    eps: f64,
    trials: u64,
    seed: u64,
    target: Option<usize>,
    budget: &Budget,
) -> Packing {
    let dim = m as usize;
    let p = pq.p();
    let q = pq.q();
    let min_dist = 2.0 * eps * (1.0 - 1e-12);
    let mut admitted: Vec<Point> = Vec::new();

    let mut done = false;
    let mut examined = 0u64;
    {
        let mut offer = |coords: Vec<f64>, admitted: &mut Vec<Point>| -> bool {
            if done {
                return false;
            }
            examined += 1;
            if examined > budget.max_candidates {
                done = true;
                return false;
            }
            if quasi_norm_unchecked(&coords, p) > 1.0 + 1e-12 {
                return true;
            }
            if admitted
                .iter()
                .all(|a| lq_distance(&a.coords, &coords, q) >= min_dist)
            {
                admitted.push(Point::new(coords));
                if let Some(t) = target {
                    if admitted.len() >= t {
                        done = true;
                        return false;
                    }
                }
            }
            true
        };

        // axis extreme points
        for i in 0..dim {
            for sign in [1.0, -1.0] {
                let mut c = vec![0.0; dim];
                c[i] = sign;
                if !offer(c, &mut admitted) {
                    return finish(admitted, eps, q);
                }
            }
        }
        // full sign vectors scaled to the l_p sphere (skip in high dimension)
        if dim <= 12 {
            let scale = (m as f64).powf(-p.recip());
            for bits in 0..(1u32 << dim) {
                let c: Vec<f64> = (0..dim)
                    .map(|i| if bits >> i & 1 == 1 { -scale } else { scale })
                    .collect();
                if !offer(c, &mut admitted) {
                    return finish(admitted, eps, q);
                }
            }
        }
        // corner-aligned lattice of pitch 2*eps: points -1 + 2*eps*k
        let pitch = 2.0 * eps;
        let span = (2.0 / pitch).floor() as i64;
        if span >= 0
            && !lattice_candidates(dim, p, pitch, span, &mut vec![0i64; dim], 0, 0.0, &mut |cell| {
                let coords: Vec<f64> = cell.iter().map(|&k| -1.0 + k as f64 * pitch).collect();
                offer(coords, &mut admitted)
            })
        {
            return finish(admitted, eps, q);
        }
        // seeded random ball points
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let c = sample::random_ball_point(&mut rng, dim, p);
            if !offer(c, &mut admitted) {
                return finish(admitted, eps, q);
            }
        }
    }
    finish(admitted, eps, q)
}

fn lattice_candidates(
    dim: usize,
    p: Exponent,
    pitch: f64,
    span: i64,
    cell: &mut [i64],
    pos: usize,
    partial: f64,
    offer: &mut dyn FnMut(&[i64]) -> bool,
) -> bool {
    if pos == dim {
        return offer(cell);
    }
    for k in 0..=span {
        let coord = -1.0 + k as f64 * pitch;
        cell[pos] = k;
        if coord > 1.0 + 1e-12 {
            break;
        }
        // prune on the partial quasi-norm: every extension is at least this
        // far from the origin, so out-of-ball prefixes are skipped wholesale
        let next = match p {
            Exponent::Infinity => partial.max(coord.abs()),
            Exponent::Finite(pv) => partial + coord.abs().powf(pv),
        };
        let bound = match p {
            Exponent::Infinity => next,
            Exponent::Finite(pv) => next.powf(1.0 / pv),
        };
        if bound > 1.0 + 1e-12 {
            continue;
        }
        if !lattice_candidates(dim, p, pitch, span, cell, pos + 1, next, offer) {
            return false;
        }
    }
    true
}

fn finish(points: Vec<Point>, eps: f64, q: Exponent) -> Packing {
    let count = points.len() as u64;
    let separation = if count >= 2 {
        // measured separation: at least eps * (1 - 1e-12) by the admit rule
        let d = crate::par::pairwise_min(&points, |a, b| lq_distance(&a.coords, &b.coords, q));
        d / 2.0
    } else {
        eps
    };
    Packing {
        points,
        separation,
        metric_q: q,
        claimed_index: packing_index_for_count(count),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nets::audit_packing;

    fn pq(p: f64, q: f64) -> ExponentPair {
        ExponentPair::from_values(p, q).unwrap()
    }

    #[test]
    fn one_dimensional_packings_are_tight() {
        for n in 1..=10u32 {
            let eps = (-(n as f64)).exp2();
            let packing = greedy_packing(1, pq(1.0, 2.0), eps, 100, 0);
            assert!(
                packing.len() as u64 >= (1u64 << (n - 1)) + 1,
                "n = {n}: {} points",
                packing.len()
            );
            assert!(audit_packing(&packing).pass);
        }
    }

    #[test]
    fn large_eps_gives_singleton_or_pair() {
        // diameter of the image ball is 2, so eps > 1 forbids a second point
        let packing = greedy_packing(2, pq(1.0, f64::INFINITY), 1.25, 200, 0);
        assert_eq!(packing.len(), 1);
        assert_eq!(packing.claimed_index, 0);
    }

    #[test]
    fn cross_polytope_five_points() {
        // {0, +-e1, +-e2} are pairwise at l_inf distance >= 1
        let packing = greedy_packing(2, pq(1.0, f64::INFINITY), 0.5, 200, 0);
        assert!(packing.len() >= 5, "{}", packing.len());
        assert!(audit_packing(&packing).pass);
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let a = greedy_packing(3, pq(1.0, 2.0), 0.3, 500, 9);
        let b = greedy_packing(3, pq(1.0, 2.0), 0.3, 500, 9);
        assert_eq!(a.points, b.points);
    }

    #[test]
    fn target_truncation_is_still_valid() {
        let full = greedy_packing(2, pq(1.0, 2.0), 0.2, 500, 1);
        let cut = greedy_packing_with_target(2, pq(1.0, 2.0), 0.2, 500, 1, Some(5), &Budget::default());
        assert!(full.len() >= cut.len());
        assert_eq!(cut.len(), 5);
        assert!(audit_packing(&cut).pass);
    }
}

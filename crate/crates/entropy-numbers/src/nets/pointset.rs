//! The separated point family behind the lower bound of the two-sided
//! estimate: coordinates are geometric sums of indicator shells drawn from a
//! bounded-intersection set family, yielding points whose pairwise distances
//! decay like `2^(-r*u) * v^(-alpha)`.

use super::{packing_index_for_count, Budget, Packing};
use crate::combinat::separated_family;
use crate::error::{Error, Result};
use crate::space::{ExponentPair, Point, RNormParam};

/// Construction metadata reported alongside the packing.
#[derive(Debug, Clone, Copy)]
pub struct PointsetMeta {
    /// Shell support size `v` used for the set family.
    pub v: u32,
    /// True when `v` came from the small-`n` fallback `max(1, n/4)` rather
    /// than the asymptotic rule `64 e^3 v <= n`.
    pub fallback: bool,
    /// Number of admissible shells in the underlying set family.
    pub family_size: usize,
    /// The reference scale `2^(-r*u) * v^(-alpha)`.
    pub expected_scale: f64,
    /// Measured minimal pairwise distance divided by the reference scale.
    pub measured_constant: f64,
}

/// Builds the family of points `x_E` indexed by shell tuples
/// `E = (E(1), ..., E(u))` from a bounded-intersection family of `v`-subsets
/// of `{1, ..., n}`: coordinate `i` of `x_E` is
/// `sum_j 2^(-j*r) * v^(-1/p) * [i in E(j)]`. Tuples are enumerated in
/// lexicographic order up to `budget.max_pointset` points; the returned
/// packing carries the measured minimal pairwise `l_q` distance.
pub fn lower_bound_pointset(
    n: u32,
    u: u32,
    pq: ExponentPair,
    r: RNormParam,
    seed: u64,
    budget: &Budget,
) -> Result<(Packing, PointsetMeta)> {
    if n < 1 {
        return Err(Error::InvalidInput("ambient dimension must be positive".into()));
    }
    if u < 1 {
        return Err(Error::InvalidInput("shell count must be positive".into()));
    }
    // asymptotic rule 64 e^3 v <= n, with a desk-scale fallback below it
    let asymptotic = (n as f64 / (64.0 * std::f64::consts::E.powi(3))).floor() as u32;
    let (v, fallback) = if asymptotic >= 1 {
        (asymptotic, false)
    } else {
        ((n / 4).max(1), true)
    };
    let family = separated_family(n, v, seed)?;
    let shells = family.members.len();
    let total = (shells as u128).checked_pow(u).ok_or_else(|| {
        Error::Resource(format!("shell tuple count overflows for u = {u}"))
    })?;
    if total < 1 {
        return Err(Error::Resource("empty shell family".into()));
    }
    let count = total.min(budget.max_pointset as u128) as usize;

    let rv = r.get();
    let coeff: Vec<f64> = (1..=u).map(|j| (-(j as f64) * rv).exp2()).collect();
    let v_scale = (v as f64).powf(-pq.p().recip());

    let mut points = Vec::with_capacity(count);
    let mut tuple = vec![0usize; u as usize];
    for _ in 0..count {
        let mut coords = vec![0.0f64; n as usize];
        for (j, &shell) in tuple.iter().enumerate() {
            for &i in &family.members[shell] {
                coords[(i - 1) as usize] += coeff[j] * v_scale;
            }
        }
        points.push(Point::new(coords));
        // lexicographic increment over shell indices
        for pos in (0..tuple.len()).rev() {
            tuple[pos] += 1;
            if tuple[pos] < shells {
                break;
            }
            tuple[pos] = 0;
        }
    }

    let expected_scale = (-(u as f64) * rv).exp2() * (v as f64).powf(-pq.alpha());
    let packing = if points.len() >= 2 {
        let q = pq.q();
        let min_dist = crate::par::pairwise_min(&points, |a, b| {
            crate::space::lq_distance(&a.coords, &b.coords, q)
        });
        Packing {
            separation: min_dist / 2.0,
            metric_q: q,
            claimed_index: packing_index_for_count(points.len() as u64),
            points,
        }
    } else {
        Packing {
            separation: expected_scale,
            metric_q: pq.q(),
            claimed_index: 0,
            points,
        }
    };
    let measured_constant = if packing.len() >= 2 {
        2.0 * packing.separation / expected_scale
    } else {
        f64::INFINITY
    };
    let meta = PointsetMeta {
        v,
        fallback,
        family_size: shells,
        expected_scale,
        measured_constant,
    };
    Ok((packing, meta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nets::audit_packing;

    fn pq(p: f64, q: f64) -> ExponentPair {
        ExponentPair::from_values(p, q).unwrap()
    }

    #[test]
    fn single_shell_distance_oracle() {
        // u = 1: two tuples differing in their shell disagree on at least v
        // coordinates by the full amount 2^(-r) v^(-1/p), so the l_q distance
        // is at least 2^(-r) v^(-alpha)
        let r = RNormParam::new(1.0).unwrap();
        let pqv = pq(1.0, 2.0);
        let (packing, meta) =
            lower_bound_pointset(16, 1, pqv, r, 0, &Budget::default()).unwrap();
        assert!(packing.len() >= 2, "family too small: {meta:?}");
        let floor = 0.5 * (meta.v as f64).powf(-pqv.alpha());
        assert!(
            2.0 * packing.separation >= floor * (1.0 - 1e-9),
            "min distance {} below {floor}",
            2.0 * packing.separation
        );
        assert!(meta.fallback);
        assert!(audit_packing(&packing).pass);
    }

    #[test]
    fn multi_shell_families_stay_separated() {
        let r = RNormParam::new(1.0).unwrap();
        for &(p, q) in &[(1.0, 2.0), (1.0, f64::INFINITY), (0.5, 1.0)] {
            let pqv = pq(p, q);
            for u in [1u32, 2, 3] {
                let (packing, meta) =
                    lower_bound_pointset(12, u, pqv, r, 7, &Budget::default()).unwrap();
                if packing.len() >= 2 {
                    assert!(audit_packing(&packing).pass, "p={p} q={q} u={u}");
                    assert!(
                        meta.measured_constant > 0.0,
                        "p={p} q={q} u={u}: {meta:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let r = RNormParam::new(0.75).unwrap();
        let a = lower_bound_pointset(10, 2, pq(1.0, 2.0), r, 3, &Budget::default()).unwrap();
        let b = lower_bound_pointset(10, 2, pq(1.0, 2.0), r, 3, &Budget::default()).unwrap();
        assert_eq!(a.0.points, b.0.points);
        assert_eq!(a.1.family_size, b.1.family_size);
    }

    #[test]
    fn budget_caps_the_tuple_enumeration() {
        let r = RNormParam::new(1.0).unwrap();
        let tight = Budget { max_pointset: 3, ..Budget::default() };
        let (packing, _) = lower_bound_pointset(16, 2, pq(1.0, 2.0), r, 0, &tight).unwrap();
        assert!(packing.len() <= 3);
    }

    #[test]
    fn scaling_homogeneity() {
        let r = RNormParam::new(1.0).unwrap();
        let pqv = pq(1.0, 2.0);
        let (packing, _) = lower_bound_pointset(12, 1, pqv, r, 0, &Budget::default()).unwrap();
        let scaled: Vec<Point> = packing
            .points
            .iter()
            .map(|pt| Point::new(pt.coords.iter().map(|c| c * 0.5).collect()))
            .collect();
        let scaled_packing = Packing {
            points: scaled,
            separation: packing.separation * 0.5,
            metric_q: packing.metric_q,
            claimed_index: packing.claimed_index,
        };
        let d = scaled_packing.min_pairwise_distance();
        assert!((d - 2.0 * packing.separation * 0.5).abs() < 1e-12);
    }

    #[test]
    fn argument_validation() {
        let r = RNormParam::new(1.0).unwrap();
        assert!(lower_bound_pointset(0, 1, pq(1.0, 2.0), r, 0, &Budget::default()).is_err());
        assert!(lower_bound_pointset(8, 0, pq(1.0, 2.0), r, 0, &Budget::default()).is_err());
    }
}

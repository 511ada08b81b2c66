//! Certified two-sided brackets for the entropy numbers of the identity
//! `B_{l_p^m} -> l_q^m`: the upper end comes from a lattice covering, the
//! lower end from a greedy packing converted through the inner/outer
//! entropy relation.

use super::{greedy_packing_with_target, lattice_cell_count, lattice_net, Budget, Net, Packing};
use crate::error::{Error, Result};
use crate::space::{ExponentPair, RNormParam};

/// Ratio of the geometric epsilon grid all searches run on, `2^(1/8)`.
/// Grid resolution is part of the bracket width.
pub const EPS_GRID_RATIO: f64 = 1.0905077326652577; // 2^(1/8)

const BRACKET_MAX_M: u32 = 16;
const BRACKET_MAX_N: u32 = 24;
/// Lowest grid exponent examined, `eps = 2^(j/8)` with `j >= MIN_GRID_J`
/// (matches the lattice floor of `2^-20`).
const MIN_GRID_J: i32 = -160;

/// A certified interval `[lo, hi]` containing `e_n` of the identity
/// embedding, with the witnessing packing and covering.
#[derive(Debug, Clone)]
pub struct EntropyBracket {
    pub m: u32,
    pub n: u32,
    pub pq: ExponentPair,
    /// Certified lower bound on `e_n`, `2^(1 - 1/r) * f_lo`.
    pub lo: f64,
    /// Certified upper bound on `e_n`: the smallest grid radius whose
    /// lattice net has at most `2^(n-1)` centers.
    pub hi: f64,
    /// Certified lower bound on the inner entropy number `f_n`.
    pub f_lo: f64,
    /// The r-norm parameter of the target used to convert `f_lo` into `lo`.
    pub r: RNormParam,
    pub witnesses: Option<(Packing, Net)>,
}

/// `2^(j/8)` computed through the exponent, so grid points at integer
/// powers of two are exact.
pub(crate) fn grid_eps(j: i32) -> f64 {
    (j as f64 / 8.0).exp2()
}

/// Computes a certified bracket for `e_n(id: l_p^m -> l_q^m)` on the
/// geometric grid. `lo <= hi` holds by construction: both ends are rigorous
/// bounds on the same entropy number.
pub fn entropy_bracket(
    m: u32,
    n: u32,
    pq: ExponentPair,
    budget: &Budget,
    seed: u64,
) -> Result<EntropyBracket> {
    if m < 1 || m > BRACKET_MAX_M {
        return Err(Error::Domain(format!(
            "bracket supports 1 <= m <= {BRACKET_MAX_M}, got {m}"
        )));
    }
    if n < 1 || n > BRACKET_MAX_N {
        return Err(Error::Domain(format!(
            "bracket supports 1 <= n <= {BRACKET_MAX_N}, got {n}"
        )));
    }
    let max_centers = 1u64 << (n - 1);
    let r = RNormParam::for_target(pq.q());

    // upper end: scan the grid downward from eps = 1 (a single center always
    // suffices there) until the net first needs more than 2^(n-1) centers
    let mut hi_j = 0i32;
    while hi_j > MIN_GRID_J {
        match lattice_cell_count(m, pq, grid_eps(hi_j - 1), max_centers)? {
            Some(_) => hi_j -= 1,
            None => break,
        }
    }
    let hi = grid_eps(hi_j);
    let net = lattice_net(m, pq, hi, budget)?;

    // lower end: largest grid eps admitting a packing of 2^(n-1) + 1 points.
    // No packing exists above f_n <= 2^(1/r - 1) e_n <= 2^(1/r - 1) hi, so
    // the scan starts at the smallest grid point at or above that value.
    let target = max_centers as usize + 1;
    let mut f_lo = 0.0;
    let mut packing = None;
    let mut j = (hi_j + (8.0 * (1.0 / r.get() - 1.0)).ceil() as i32).min(0);
    while j >= MIN_GRID_J {
        let candidate =
            greedy_packing_with_target(m, pq, grid_eps(j), budget.trials, seed, Some(target), budget);
        if candidate.len() >= target {
            f_lo = grid_eps(j);
            packing = Some(candidate);
            break;
        }
        j -= 1;
    }
    let lo = (1.0 - 1.0 / r.get()).exp2() * f_lo;
    debug_assert!(lo <= hi * (1.0 + 1e-12));

    Ok(EntropyBracket {
        m,
        n,
        pq,
        lo,
        hi,
        f_lo,
        r,
        witnesses: packing.map(|p| (p, net)),
    })
}

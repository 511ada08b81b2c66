//! Verification suites shared by the command-line `verify` command and the
//! acceptance harness: each runner evaluates a closed-form bound against an
//! exact oracle or a certified empirical bracket over a parameter grid and
//! reports per-row and summary pass/fail with ratio statistics.

use num_traits::ToPrimitive;

use crate::bounds::{binomial_bounds, schuett_a, schuett_regime, thm32_a, SchuettRegime};
use crate::combinat::{gamma_count, gamma_dominate, gamma_for_each, gamma_membership};
use crate::error::{Error, Result};
use crate::nets::{audit_packing, entropy_bracket, lower_bound_pointset, Budget};
use crate::space::{EntropyProfile, ExponentPair, RNormParam};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One grid point of a verification suite.
#[derive(Debug, Clone)]
pub struct SuiteRow {
    pub m: u64,
    pub n: u64,
    /// Closed-form bound value (or exact count, depending on the suite).
    pub bound: f64,
    /// Certified lower end (bracket lo, or the lower closed form).
    pub lo: f64,
    /// Certified upper end (bracket hi, or the upper closed form).
    pub hi: f64,
    pub regime: Option<SchuettRegime>,
    pub pass: bool,
    pub note: String,
}

/// Result of a suite run; `max_hi_ratio` and `max_lo_ratio` are the largest
/// observed `bound/hi` and `lo/bound`, clamped below by 1.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub rows: Vec<SuiteRow>,
    pub max_hi_ratio: f64,
    pub max_lo_ratio: f64,
    pub pass: bool,
    pub elapsed_ms: u128,
}

impl SuiteReport {
    fn assemble(suite: &str, seed: u64, rows: Vec<SuiteRow>, start: std::time::Instant) -> Self {
        let mut max_hi_ratio = 1.0f64;
        let mut max_lo_ratio = 1.0f64;
        for row in &rows {
            if row.hi > 0.0 {
                max_hi_ratio = max_hi_ratio.max(row.bound / row.hi);
            }
            if row.bound > 0.0 {
                max_lo_ratio = max_lo_ratio.max(row.lo / row.bound);
            }
        }
        SuiteReport {
            suite: suite.to_string(),
            seed,
            pass: rows.iter().all(|r| r.pass),
            rows,
            max_hi_ratio,
            max_lo_ratio,
            elapsed_ms: start.elapsed().as_millis(),
        }
    }

    pub fn failing_rows(&self) -> impl Iterator<Item = &SuiteRow> {
        self.rows.iter().filter(|r| !r.pass)
    }
}

/// Exact binomial sandwich `(m/k)^k <= C(m,k) <= (em/k)^k` over the full
/// triangle `1 <= k <= m <= max_m`. Binomials up to `m = 40` convert to f64
/// without rounding (all are below `2^53`).
pub fn binom_suite(max_m: u64) -> Result<SuiteReport> {
    let start = std::time::Instant::now();
    if max_m > 40 {
        return Err(Error::Domain(format!(
            "binomial suite supports max_m <= 40 (exact f64 conversion), got {max_m}"
        )));
    }
    let mut rows = Vec::new();
    for m in 1..=max_m {
        for k in 1..=m {
            let (lower, exact, upper) = binomial_bounds(m, k)?;
            let exact_f = exact.to_f64().unwrap();
            let pass = lower <= exact_f && exact_f <= upper;
            rows.push(SuiteRow {
                m,
                n: k,
                bound: exact_f,
                lo: lower,
                hi: upper,
                regime: None,
                pass,
                note: if pass { String::new() } else { "binomial sandwich fails".into() },
            });
        }
    }
    Ok(SuiteReport::assemble("binom", 0, rows, start))
}

/// Weight-sequence suite: exact cardinality bound `(#sequences)^2 <= 2^(5m)`,
/// full membership re-validation, and domination on seeded random simplex
/// points. Enumeration runs per `m` in the given inclusive range.
pub fn gamma_suite(m_min: u32, m_max: u32, samples: u32, seed: u64) -> Result<SuiteReport> {
    let start = std::time::Instant::now();
    if m_min < 1 || m_min > m_max {
        return Err(Error::InvalidInput(format!("bad range {m_min}..{m_max}")));
    }
    let mut rows = Vec::new();
    for m in m_min..=m_max {
        let count = gamma_count(m)?;
        // exact integer form of count <= 2^(5m/2)
        let cardinality_ok = (count as u128).pow(2) <= 1u128 << (5 * m).min(127);
        let mut members_ok = true;
        gamma_for_each(m, |eps| {
            members_ok &= gamma_membership(eps);
        })?;
        let mut domination_ok = true;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ m as u64);
        for _ in 0..samples {
            let mut alpha: Vec<f64> = (0..m).map(|_| -rng.gen_range(0.0f64..1.0).ln()).collect();
            let total: f64 = alpha.iter().sum();
            for a in &mut alpha {
                *a /= total;
            }
            let eps = gamma_dominate(&alpha)?;
            domination_ok &= gamma_membership(&eps)
                && eps
                    .values()
                    .zip(&alpha)
                    .all(|(e, &a)| e >= a - 1e-12);
        }
        let pass = cardinality_ok && members_ok && domination_ok;
        rows.push(SuiteRow {
            m: m as u64,
            n: 0,
            bound: (5.0 * m as f64 / 2.0).exp2(),
            lo: count as f64,
            hi: count as f64,
            regime: None,
            pass,
            note: match (cardinality_ok, members_ok, domination_ok) {
                (true, true, true) => String::new(),
                (false, _, _) => "cardinality bound fails".into(),
                (_, false, _) => "membership re-validation fails".into(),
                _ => "domination fails".into(),
            },
        });
    }
    Ok(SuiteReport::assemble("gamma", seed, rows, start))
}

/// Envelope factor for the sandwich suites: the unspecified absolute
/// constants of the two-sided estimates are asserted within this factor.
pub const SANDWICH_ENVELOPE: f64 = 64.0;

/// Three-regime sandwich: for each grid point, the certified bracket
/// `[lo, hi]` must satisfy `bound/64 <= hi` and `lo <= 64*bound`, `lo <= hi`
/// everywhere, and `hi` non-increasing in `n` per `m`. For `m = 1` the
/// bracket must contain the exact value `2^(1-n)` with `hi/lo <= 2^(1/4)`.
pub fn schuett_suite(
    pq: ExponentPair,
    m_max: u32,
    n_max: u32,
    budget: &Budget,
    seed: u64,
) -> Result<SuiteReport> {
    let start = std::time::Instant::now();
    let mut rows = Vec::new();
    for m in 1..=m_max {
        let mut prev_hi = f64::INFINITY;
        for n in 1..=n_max {
            let bound = schuett_a(m as u64, n as u64, pq);
            let bracket = entropy_bracket(m, n, pq, budget, seed)?;
            let mut pass = bracket.lo <= bracket.hi
                && bound <= SANDWICH_ENVELOPE * bracket.hi * (1.0 + 1e-12)
                && bracket.lo <= SANDWICH_ENVELOPE * bound * (1.0 + 1e-12)
                && bracket.hi <= prev_hi * (1.0 + 1e-12);
            let mut note = String::new();
            if m == 1 {
                let exact = (1.0 - n as f64).exp2();
                let tight = bracket.lo <= exact
                    && exact <= bracket.hi
                    && bracket.hi <= bracket.lo * 2f64.powf(0.25) * (1.0 + 1e-12);
                if !tight {
                    note = "one-dimensional bracket not tight".into();
                }
                pass &= tight;
            }
            if !pass && note.is_empty() {
                note = "sandwich envelope violated".into();
            }
            prev_hi = bracket.hi;
            rows.push(SuiteRow {
                m: m as u64,
                n: n as u64,
                bound,
                lo: bracket.lo,
                hi: bracket.hi,
                regime: Some(schuett_regime(m as u64, n as u64)),
                pass,
                note,
            });
        }
    }
    Ok(SuiteReport::assemble("schuett", seed, rows, start))
}

/// Profile-based sandwich for diagonal operators with scalar blocks: the
/// blockwise operator is the one-dimensional identity (dyadic profile), so
/// the diagonal operator is the identity embedding and its bracket must
/// envelope the profile bound within the same factor. Separated point
/// families for the lower-bound side must pass their packing audits.
pub fn thm32_suite(budget: &Budget, seed: u64) -> Result<SuiteReport> {
    let start = std::time::Instant::now();
    let pq = ExponentPair::from_values(1.0, f64::INFINITY)?;
    let profile = EntropyProfile::dyadic(16);
    let r = RNormParam::for_target(pq.q());
    let mut rows = Vec::new();
    for n in 2..=8u64 {
        let m_cap = (1u64 << n).min(16);
        for m in n..=m_cap {
            let bound = thm32_a(n, m, &profile, pq)?;
            let bracket = entropy_bracket(m as u32, n as u32, pq, budget, seed)?;
            let mut pass = bracket.lo <= bracket.hi
                && bound <= SANDWICH_ENVELOPE * bracket.hi * (1.0 + 1e-12)
                && bracket.lo <= SANDWICH_ENVELOPE * bound * (1.0 + 1e-12);
            let mut note = String::new();
            if m == n {
                // run the separated-family lower-bound construction once per n
                let (packing, _meta) =
                    lower_bound_pointset(m as u32, 2, pq, r, seed, budget)?;
                if packing.len() >= 2 && !audit_packing(&packing).pass {
                    pass = false;
                    note = "point family fails its separation audit".into();
                }
            }
            if !pass && note.is_empty() {
                note = "profile sandwich violated".into();
            }
            rows.push(SuiteRow {
                m,
                n,
                bound,
                lo: bracket.lo,
                hi: bracket.hi,
                regime: None,
                pass,
                note,
            });
        }
    }
    Ok(SuiteReport::assemble("thm32", seed, rows, start))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binom_suite_passes() {
        let report = binom_suite(20).unwrap();
        assert!(report.pass);
        assert_eq!(report.rows.len(), 210);
        assert!(report.max_hi_ratio >= 1.0 && report.max_lo_ratio >= 1.0);
        assert!(binom_suite(41).is_err());
    }

    #[test]
    fn gamma_suite_passes_small() {
        let report = gamma_suite(1, 6, 50, 0).unwrap();
        assert!(report.pass, "{:?}", report.failing_rows().next());
        assert_eq!(report.rows.len(), 6);
    }

    #[test]
    fn schuett_suite_passes_small() {
        let budget = Budget { audit_samples: 500, ..Budget::default() };
        let pq = ExponentPair::from_values(1.0, 2.0).unwrap();
        let report = schuett_suite(pq, 2, 6, &budget, 0).unwrap();
        assert!(report.pass, "{:?}", report.failing_rows().next());
        assert!(report.max_hi_ratio <= SANDWICH_ENVELOPE);
        assert!(report.max_lo_ratio <= SANDWICH_ENVELOPE);
    }
}

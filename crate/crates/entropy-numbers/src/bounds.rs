//! Closed-form evaluators for the two-sided entropy-number bounds: the
//! three-regime function `A(m,n)` for the embedding `l_p^m -> l_q^m`, the
//! profile-driven bound `A(n,m,T0)` for diagonal operators, the heterogeneous
//! variants `A(n,m)`, `B(n,m)`, `D(a,n,m)`, binomial estimates, and the inner
//! entropy lower bound for diagonal operators.
//!
//! All logarithms are base 2.

use crate::combinat::binom_exact;
use crate::error::{Error, Result};
use crate::space::{EntropyProfile, Exponent, ExponentPair};
use num_bigint::BigUint;

/// Regime of the three-case bound for `l_p^m -> l_q^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchuettRegime {
    /// `n <= log m`
    SmallN,
    /// `log m <= n <= m`
    Middle,
    /// `n >= m`
    LargeN,
}

impl std::fmt::Display for SchuettRegime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SchuettRegime::SmallN => "SMALL_N",
            SchuettRegime::Middle => "MIDDLE",
            SchuettRegime::LargeN => "LARGE_N",
        };
        write!(f, "{s}")
    }
}

/// `m <= 2^n`, decided in exact integer arithmetic.
pub fn le_pow2(m: u64, n: u64) -> bool {
    if n >= 64 {
        return true;
    }
    m <= (1u64 << n)
}

/// Regime containing `(m, n)`, boundaries resolved in favour of the
/// first-listed case. `n <= log2 m` is decided exactly via `2^n <= m`.
pub fn schuett_regime(m: u64, n: u64) -> SchuettRegime {
    if n < 64 && (1u64 << n) <= m {
        SchuettRegime::SmallN
    } else if n <= m {
        SchuettRegime::Middle
    } else {
        SchuettRegime::LargeN
    }
}

fn schuett_value(regime: SchuettRegime, m: u64, n: u64, pq: ExponentPair) -> f64 {
    let (mf, nf) = (m as f64, n as f64);
    match regime {
        SchuettRegime::SmallN => 1.0,
        SchuettRegime::Middle => ((mf / nf + 1.0).log2() / nf).powf(pq.alpha()),
        SchuettRegime::LargeN => (-nf / mf).exp2() * mf.powf(-pq.alpha()),
    }
}

/// The three-regime bound `A(m, n)` for the natural embedding of `l_p^m`
/// into `l_q^m`.
pub fn schuett_a(m: u64, n: u64, pq: ExponentPair) -> f64 {
    schuett_value(schuett_regime(m, n), m, n, pq)
}

/// Diagnostic variant: value of every regime whose (closed) condition holds
/// at `(m, n)`. The regimes agree up to absolute constants at the boundaries.
pub fn schuett_a_all(m: u64, n: u64, pq: ExponentPair) -> Vec<(SchuettRegime, f64)> {
    let mut out = Vec::new();
    if n < 64 && (1u64 << n) <= m {
        out.push(SchuettRegime::SmallN);
    }
    if le_pow2(m, n) && n <= m {
        out.push(SchuettRegime::Middle);
    }
    if n >= m {
        out.push(SchuettRegime::LargeN);
    }
    out.into_iter()
        .map(|r| (r, schuett_value(r, m, n, pq)))
        .collect()
}

fn check_thm32_hypothesis(n: u64, m: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain(format!("hypothesis 2 <= n violated: n = {n}")));
    }
    if n > m {
        return Err(Error::Domain(format!("hypothesis n <= m violated: n = {n}, m = {m}")));
    }
    if !le_pow2(m, n) {
        return Err(Error::Domain(format!("hypothesis m <= 2^n violated: m = {m}, n = {n}")));
    }
    Ok(())
}

/// `A(n, m, T0) = max( ||T0|| ((log(m/n) + 1)/n)^alpha,
///                     max_{1<=k<=n} (k/n)^alpha e_k(T0) )`
/// for the diagonal operator built from `m` copies of `T0`.
///
/// Requires `2 <= n <= m <= 2^n`.
pub fn thm32_a(n: u64, m: u64, profile: &EntropyProfile, pq: ExponentPair) -> Result<f64> {
    check_thm32_hypothesis(n, m)?;
    let (mf, nf) = (m as f64, n as f64);
    let log_branch = profile.norm() * (((mf / nf).log2() + 1.0) / nf).powf(pq.alpha());
    let profile_branch = (1..=n)
        .map(|k| (k as f64 / nf).powf(pq.alpha()) * profile.get(k as usize))
        .fold(0.0f64, f64::max);
    Ok(log_branch.max(profile_branch))
}

/// Non-increasing sequence of block operator norms `(||T_1||, ..., ||T_m||)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeterogeneousNorms {
    norms: Vec<f64>,
}

impl HeterogeneousNorms {
    pub fn new(norms: Vec<f64>) -> Result<Self> {
        if norms.is_empty() {
            return Err(Error::InvalidInput("norm sequence must be non-empty".into()));
        }
        if norms.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidInput(
                "norm sequence values must be finite and non-negative".into(),
            ));
        }
        if norms.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::InvalidInput("norm sequence must be non-increasing".into()));
        }
        Ok(HeterogeneousNorms { norms })
    }

    pub fn len(&self) -> usize {
        self.norms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `||T_s||` with 1-based `s`.
    pub fn get(&self, s: usize) -> f64 {
        self.norms[s - 1]
    }
}

/// `A(n, m) = max_{s in {n,...,m}, s <= 2^n} ||T_s|| (log(2s/n)/n)^alpha`
/// for heterogeneous diagonal blocks; requires `m >= 2n` and
/// `||T_1|| <= 2 ||T_n||`.
pub fn thm33_a(n: u64, m: u64, norms: &HeterogeneousNorms, pq: ExponentPair) -> Result<f64> {
    if m < 2 * n {
        return Err(Error::Domain(format!("hypothesis m >= 2n violated: m = {m}, n = {n}")));
    }
    if (norms.len() as u64) < m {
        return Err(Error::InvalidInput(format!(
            "need at least m = {m} norms, got {}",
            norms.len()
        )));
    }
    if norms.get(1) > 2.0 * norms.get(n as usize) {
        return Err(Error::InvalidInput(
            "hypothesis ||T_1|| <= 2 ||T_n|| violated".into(),
        ));
    }
    let nf = n as f64;
    let mut best = 0.0f64;
    for s in n..=m {
        if !le_pow2(s, n) {
            break;
        }
        let v = norms.get(s as usize) * ((2.0 * s as f64 / nf).log2() / nf).powf(pq.alpha());
        best = best.max(v);
    }
    Ok(best)
}

/// `B(n, m) = max_{1<=k<=n, 1<=i<=m} (k/n)^alpha e_k(T_i)`.
pub fn thm33_b(n: u64, profiles: &[EntropyProfile], pq: ExponentPair) -> Result<f64> {
    if profiles.is_empty() {
        return Err(Error::InvalidInput("profile list must be non-empty".into()));
    }
    let nf = n as f64;
    let mut best = 0.0f64;
    for profile in profiles {
        for k in 1..=n {
            best = best.max((k as f64 / nf).powf(pq.alpha()) * profile.get(k as usize));
        }
    }
    Ok(best)
}

/// `D(a, n, m) = max_{k in {1,...,n}, k >= a} (k/n)^alpha e_k(T0)`;
/// requires `m <= n` and a non-empty index set (`a <= n`).
pub fn thm33_d(a: f64, n: u64, m: u64, profile: &EntropyProfile, pq: ExponentPair) -> Result<f64> {
    if m > n {
        return Err(Error::Domain(format!("hypothesis m <= n violated: m = {m}, n = {n}")));
    }
    if !(a > 0.0) || a > n as f64 {
        return Err(Error::Domain(format!("empty index set: a = {a}, n = {n}")));
    }
    let k_min = (a.ceil() as u64).max(1);
    let nf = n as f64;
    let mut best = 0.0f64;
    for k in k_min..=n {
        best = best.max((k as f64 / nf).powf(pq.alpha()) * profile.get(k as usize));
    }
    Ok(best)
}

/// The critical cardinality: the smallest positive integer `k` with
/// `k >= n / (2 log(2m/n))`; requires `2 <= n <= m <= 2^n`.
pub fn lemma31_k(m: u64, n: u64) -> Result<u64> {
    check_thm32_hypothesis(n, m)?;
    let a = n as f64 / (2.0 * (2.0 * m as f64 / n as f64).log2());
    Ok((a.ceil() as u64).max(1))
}

/// `((m/k)^k, C(m,k), (em/k)^k)`; the exact middle value uses big-integer
/// arithmetic and the outer bounds always bracket it.
pub fn binomial_bounds(m: u64, k: u64) -> Result<(f64, BigUint, f64)> {
    if k < 1 || k > m {
        return Err(Error::Domain(format!("binomial bounds need 1 <= k <= m, got m = {m}, k = {k}")));
    }
    let (mf, kf) = (m as f64, k as f64);
    let lower = (mf / kf).powi(k as i32);
    let upper = (std::f64::consts::E * mf / kf).powi(k as i32);
    Ok((lower, binom_exact(m, k), upper))
}

/// Inner entropy lower bound for the diagonal operator with `m` blocks each
/// satisfying `f_n(T_i) >= b`: returns `(k, 2^(-1/q) b m^(-alpha))` with
/// `k = floor((n-1) m / 6)` clamped to at least 1.
pub fn lemma25_lower(b: f64, n: u64, m: u64, pq: ExponentPair) -> (u64, f64) {
    let k = ((n - 1) * m / 6).max(1);
    let q_factor = match pq.q() {
        Exponent::Infinity => 1.0,
        Exponent::Finite(q) => (-1.0 / q).exp2(),
    };
    (k, q_factor * b * (m as f64).powf(-pq.alpha()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn pq(p: f64, q: f64) -> ExponentPair {
        ExponentPair::from_values(p, q).unwrap()
    }

    #[test]
    fn schuett_examples() {
        // n = 5 <= log2(1024) = 10
        assert_eq!(schuett_a(1024, 5, pq(1.0, 2.0)), 1.0);
        // third regime: 2^(-8/4) * 4^(0-1) = 1/16
        let v = schuett_a(4, 8, pq(1.0, f64::INFINITY));
        assert!((v - 1.0 / 16.0).abs() < 1e-12);
        // middle regime at m = n = 16: (log2(2)/16)^(1/2) = 1/4
        let v = schuett_a(16, 16, pq(1.0, 2.0));
        assert!((v - 0.25).abs() < 1e-12);
    }

    #[test]
    fn schuett_regime_boundaries_are_exact() {
        assert_eq!(schuett_regime(1024, 10), SchuettRegime::SmallN);
        assert_eq!(schuett_regime(1024, 11), SchuettRegime::Middle);
        assert_eq!(schuett_regime(16, 16), SchuettRegime::Middle);
        assert_eq!(schuett_regime(16, 17), SchuettRegime::LargeN);
        // 2^1 <= 1 fails, so (1, 1) lands in the middle regime (value 1 there too)
        assert_eq!(schuett_regime(1, 1), SchuettRegime::Middle);
        assert_eq!(schuett_a(1, 1, ExponentPair::from_values(1.0, 2.0).unwrap()), 1.0);
    }

    #[test]
    fn schuett_monotone_in_n() {
        let pairs = [pq(1.0, 2.0), pq(1.0, f64::INFINITY), pq(0.5, 2.0)];
        for &pp in &pairs {
            for m in 1..=64u64 {
                let mut prev = f64::INFINITY;
                for n in 1..=4 * m {
                    let v = schuett_a(m, n, pp);
                    assert!(
                        v <= prev + 1e-12,
                        "A({m},{n}) = {v} > A({m},{}) = {prev}",
                        n - 1
                    );
                    prev = v;
                }
            }
        }
    }

    #[test]
    fn schuett_boundary_consistency_within_factor_4() {
        // adjacent regime formulas agree up to a factor <= 4 at the boundaries
        let pairs = [pq(1.0, 2.0), pq(1.0, f64::INFINITY), pq(2.0, 4.0)];
        for &pp in &pairs {
            let mut m = 2u64;
            while m <= 1 << 16 {
                // boundary n = m
                let all = schuett_a_all(m, m, pp);
                let vals: Vec<f64> = all.iter().map(|(_, v)| *v).collect();
                for a in &vals {
                    for b in &vals {
                        if *a > 0.0 && *b > 0.0 {
                            let ratio = a / b;
                            assert!(ratio <= 4.0 + 1e-9 && ratio >= 0.25 - 1e-9,
                                "m={m} boundary n=m ratio {ratio}");
                        }
                    }
                }
                // boundary n = ceil(log2 m) when exact (m a power of two)
                if m.is_power_of_two() {
                    let n = m.trailing_zeros() as u64;
                    if n >= 1 {
                        let all = schuett_a_all(m, n, pp);
                        let vals: Vec<f64> = all.iter().map(|(_, v)| *v).collect();
                        for a in &vals {
                            for b in &vals {
                                let ratio = a / b;
                                assert!(ratio <= 4.0 + 1e-9 && ratio >= 0.25 - 1e-9,
                                    "m={m} boundary n=log m ratio {ratio}");
                            }
                        }
                    }
                }
                m *= 2;
            }
        }
    }

    #[test]
    fn thm32_examples() {
        let pp = pq(1.0, f64::INFINITY);
        // constant profile, n = m: both branches <= 1, attained at k = n
        let flat = EntropyProfile::new(vec![1.0; 8]).unwrap();
        assert!((thm32_a(8, 8, &flat, pp).unwrap() - 1.0).abs() < 1e-12);
        // dyadic profile, n = 4, m = 16: max(3/4, 1/2) = 3/4
        let dyadic = EntropyProfile::dyadic(8);
        assert!((thm32_a(4, 16, &dyadic, pp).unwrap() - 0.75).abs() < 1e-12);
        // zero operator
        let zero = EntropyProfile::new(vec![0.0; 4]).unwrap();
        assert_eq!(thm32_a(4, 8, &zero, pp).unwrap(), 0.0);
    }

    #[test]
    fn thm32_hypothesis_errors_name_the_inequality() {
        let pp = pq(1.0, 2.0);
        let prof = EntropyProfile::dyadic(4);
        let err = thm32_a(8, 4, &prof, pp).unwrap_err();
        assert!(err.to_string().contains("n <= m"));
        let err = thm32_a(2, 5, &prof, pp).unwrap_err();
        assert!(err.to_string().contains("2^n"));
        let err = thm32_a(1, 4, &prof, pp).unwrap_err();
        assert!(err.to_string().contains("2 <= n"));
    }

    #[test]
    fn thm32_positive_homogeneity_in_profile() {
        let pp = pq(1.0, 2.0);
        let prof = EntropyProfile::new(vec![2.0, 1.0, 0.5, 0.25]).unwrap();
        for &t in &[0.5, 3.0, 10.0] {
            let scaled = prof.scaled(t).unwrap();
            for (n, m) in [(2, 4), (3, 6), (4, 16)] {
                let a = thm32_a(n, m, &prof, pp).unwrap();
                let b = thm32_a(n, m, &scaled, pp).unwrap();
                assert!((b - t * a).abs() <= 1e-9 * (1.0 + b));
            }
        }
    }

    #[test]
    fn thm32_robustness_under_grid_perturbation() {
        // Eq 3.2-style robustness: comparable (m, n) give comparable values.
        let pp = pq(1.0, f64::INFINITY);
        let prof = EntropyProfile::dyadic(64);
        for a in [2u64, 4] {
            let mut max_ratio = 1.0f64;
            for n in 2..=32u64 {
                for m in n..=64.min(if n < 10 { 1 << n } else { u64::MAX }) {
                    let base = thm32_a(n, m, &prof, pp).unwrap();
                    for nt in (n.div_ceil(a)).max(2)..=(n * a) {
                        for mt in (m.div_ceil(a)).max(nt)..=(m * a) {
                            if !le_pow2(mt, nt) {
                                continue;
                            }
                            let other = thm32_a(nt, mt, &prof, pp).unwrap();
                            if base > 0.0 && other > 0.0 {
                                max_ratio = max_ratio.max(base / other).max(other / base);
                            }
                        }
                    }
                }
            }
            assert!(max_ratio.is_finite());
            // regression value: observed max ratio for the dyadic profile
            let cap = if a == 2 { 16.0 } else { 64.0 };
            assert!(max_ratio <= cap, "a={a}: max ratio {max_ratio} > {cap}");
        }
    }

    #[test]
    fn thm33_a_examples() {
        let pp = pq(1.0, f64::INFINITY);
        let ones = HeterogeneousNorms::new(vec![1.0; 4]).unwrap();
        assert!((thm33_a(2, 4, &ones, pp).unwrap() - 1.0).abs() < 1e-12);
        let zeros = HeterogeneousNorms::new(vec![0.0; 4]).unwrap();
        assert_eq!(thm33_a(2, 4, &zeros, pp).unwrap(), 0.0);
        let mixed = HeterogeneousNorms::new(vec![1.0, 1.0, 0.5, 0.5]).unwrap();
        assert!((thm33_a(2, 4, &mixed, pp).unwrap() - 0.5).abs() < 1e-12);
        // m < 2n is a domain error
        assert!(thm33_a(3, 4, &ones, pp).is_err());
        // ordering violation is an invalid-input error
        assert!(HeterogeneousNorms::new(vec![0.5, 1.0]).is_err());
    }

    #[test]
    fn thm33_b_examples() {
        let pp = pq(1.0, 2.0);
        let flat = EntropyProfile::new(vec![1.0; 6]).unwrap();
        assert!((thm33_b(6, &[flat.clone()], pp).unwrap() - 1.0).abs() < 1e-12);
        let zero = EntropyProfile::new(vec![0.0; 3]).unwrap();
        assert_eq!(thm33_b(4, &[zero.clone(), zero.clone()], pp).unwrap(), 0.0);
        // dominating profile determines the value
        let small = EntropyProfile::new(vec![0.5, 0.25]).unwrap();
        let b_dom = thm33_b(4, &[flat.clone()], pp).unwrap();
        let b_both = thm33_b(4, &[small, flat], pp).unwrap();
        assert_eq!(b_dom, b_both);
        assert!(thm33_b(4, &[], pp).is_err());
    }

    #[test]
    fn thm33_d_examples() {
        let pp = pq(1.0, f64::INFINITY);
        let dyadic = EntropyProfile::dyadic(8);
        // a = 1 reduces to the profile branch of thm32_a
        let d = thm33_d(1.0, 4, 4, &dyadic, pp).unwrap();
        let expect: f64 = (1..=4)
            .map(|k| (k as f64 / 4.0) * dyadic.get(k))
            .fold(0.0, f64::max);
        assert_eq!(d, expect);
        // a = n: singleton index set
        let d = thm33_d(4.0, 4, 4, &dyadic, pp).unwrap();
        assert!((d - dyadic.get(4)).abs() < 1e-12);
        // enumerated example: max over k in {2,3,4} of (k/4) 2^(1-k) = 1/4
        let d = thm33_d(2.0, 4, 4, &dyadic, pp).unwrap();
        assert!((d - 0.25).abs() < 1e-12);
        assert!(thm33_d(5.0, 4, 4, &dyadic, pp).is_err());
        assert!(thm33_d(1.0, 4, 6, &dyadic, pp).is_err());
    }

    #[test]
    fn lemma31_examples() {
        assert_eq!(lemma31_k(1024, 16).unwrap(), 2);
        for n in 2..=20u64 {
            assert_eq!(lemma31_k(n, n).unwrap(), n.div_ceil(2));
        }
        // m = 2^n: A < 1 for n >= 2, so k = 1
        for n in 2..=20u64 {
            assert_eq!(lemma31_k(1 << n, n).unwrap(), 1);
        }
        assert!(lemma31_k(4, 8).is_err());
    }

    #[test]
    fn binomial_bounds_example() {
        let (lo, exact, hi) = binomial_bounds(10, 3).unwrap();
        assert!((lo - (10.0f64 / 3.0).powi(3)).abs() < 1e-9);
        assert_eq!(exact, BigUint::from(120u32));
        assert!((hi - (std::f64::consts::E * 10.0 / 3.0).powi(3)).abs() < 1e-9);
        assert!(lo <= 120.0 && 120.0 <= hi);

        let (lo, exact, _hi) = binomial_bounds(7, 7).unwrap();
        assert_eq!(lo, 1.0);
        assert_eq!(exact, BigUint::from(1u32));
        let (lo, exact, hi) = binomial_bounds(9, 1).unwrap();
        assert_eq!(lo, 9.0);
        assert_eq!(exact, BigUint::from(9u32));
        assert!((hi - std::f64::consts::E * 9.0).abs() < 1e-9);
        assert!(binomial_bounds(5, 7).is_err());
    }

    #[test]
    fn binomial_bounds_exhaustive_to_40() {
        for m in 1..=40u64 {
            for k in 1..=m {
                let (lo, exact, hi) = binomial_bounds(m, k).unwrap();
                let e = exact.to_f64().unwrap();
                assert!(lo <= e * (1.0 + 1e-12), "m={m} k={k}: {lo} > {e}");
                assert!(e <= hi * (1.0 + 1e-12), "m={m} k={k}: {e} > {hi}");
            }
        }
    }

    #[test]
    fn lemma25_examples() {
        let pp = pq(1.0, f64::INFINITY);
        let (k, bound) = lemma25_lower(1.0, 7, 16, pp);
        assert_eq!(k, 16);
        assert!((bound - 1.0 / 16.0).abs() < 1e-12);

        let pq2 = pq(1.0, 2.0);
        let (k, bound) = lemma25_lower(1.0, 3, 1, pq2);
        assert_eq!(k, 1); // floor(2/6) = 0, clamped
        assert!((bound - (-0.5f64).exp2()).abs() < 1e-12);

        let (_, bound) = lemma25_lower(0.0, 5, 4, pp);
        assert_eq!(bound, 0.0);
    }
}

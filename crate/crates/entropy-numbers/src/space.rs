//! Exponent arithmetic, quasi-norms on finite sequence spaces, entropy
//! profiles and the entropy-number algebra shared by the other modules.

use crate::error::{Error, Result};

/// An extended positive real exponent, `p` in `(0, inf]`.
///
/// Infinity is a dedicated marker (never a large float) so that `1/inf = 0`
/// holds exactly in derived quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || value <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "exponent must be a positive finite real or infinity, got {value}"
            )));
        }
        Ok(Exponent::Finite(value))
    }

    /// `1/p`, with `1/inf = 0` exactly.
    pub fn recip(self) -> f64 {
        match self {
            Exponent::Finite(p) => 1.0 / p,
            Exponent::Infinity => 0.0,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinity)
    }

    /// Strict order on the extended half-line.
    pub fn lt(self, other: Exponent) -> bool {
        match (self, other) {
            (Exponent::Finite(a), Exponent::Finite(b)) => a < b,
            (Exponent::Finite(_), Exponent::Infinity) => true,
            (Exponent::Infinity, _) => false,
        }
    }
}

impl std::fmt::Display for Exponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "oo" => Ok(Exponent::Infinity),
            t => {
                let v: f64 = t
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("cannot parse exponent `{s}`")))?;
                Exponent::new(v)
            }
        }
    }
}

/// The source/target exponent pair `(p, q)` with `0 < p < q <= inf` and the
/// derived exponent `alpha = 1/p - 1/q > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentPair {
    p: Exponent,
    q: Exponent,
    alpha: f64,
}

impl ExponentPair {
    pub fn new(p: Exponent, q: Exponent) -> Result<Self> {
        if !p.lt(q) {
            return Err(Error::InvalidInput(format!(
                "exponent pair requires p < q strictly, got p={p}, q={q}"
            )));
        }
        let alpha = p.recip() - q.recip();
        debug_assert!(alpha > 0.0);
        Ok(ExponentPair { p, q, alpha })
    }

    /// Convenience constructor from raw values; `f64::INFINITY` maps to the
    /// infinity marker.
    pub fn from_values(p: f64, q: f64) -> Result<Self> {
        let p = if p.is_infinite() && p > 0.0 {
            Exponent::Infinity
        } else {
            Exponent::new(p)?
        };
        let q = if q.is_infinite() && q > 0.0 {
            Exponent::Infinity
        } else {
            Exponent::new(q)?
        };
        Self::new(p, q)
    }

    pub fn p(&self) -> Exponent {
        self.p
    }

    pub fn q(&self) -> Exponent {
        self.q
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// The exponent `r` of an r-norm, `0 < r <= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RNormParam(f64);

impl RNormParam {
    pub fn new(r: f64) -> Result<Self> {
        if !(r > 0.0 && r <= 1.0) {
            return Err(Error::InvalidInput(format!(
                "r-norm parameter must lie in (0, 1], got {r}"
            )));
        }
        Ok(RNormParam(r))
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// The r-norm parameter of the target space `l_q`: `min(q, 1)`.
    pub fn for_target(q: Exponent) -> Self {
        match q {
            Exponent::Finite(q) if q < 1.0 => RNormParam(q),
            _ => RNormParam(1.0),
        }
    }
}

/// A point of an `m`-dimensional scalar sequence space.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        Point { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

/// The `l_p` quasi-norm of `x`: `(sum |x_i|^p)^(1/p)` for finite `p`,
/// `max |x_i|` for `p = inf`.
pub fn quasi_norm(coords: &[f64], p: Exponent) -> Result<f64> {
    if coords.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidInput(
            "quasi-norm requires finite coordinates".into(),
        ));
    }
    Ok(quasi_norm_unchecked(coords, p))
}

/// As [`quasi_norm`] without the finiteness check; for hot inner loops on
/// coordinates the caller already validated.
pub fn quasi_norm_unchecked(coords: &[f64], p: Exponent) -> f64 {
    match p {
        Exponent::Infinity => coords.iter().fold(0.0, |m, c| m.max(c.abs())),
        Exponent::Finite(p) => {
            let s: f64 = coords.iter().map(|c| c.abs().powf(p)).sum();
            s.powf(1.0 / p)
        }
    }
}

/// The `l_q` distance between two points of equal dimension.
pub fn lq_distance(a: &[f64], b: &[f64], q: Exponent) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    match q {
        Exponent::Infinity => a
            .iter()
            .zip(b)
            .fold(0.0, |m, (x, y)| m.max((x - y).abs())),
        Exponent::Finite(q) => {
            let s: f64 = a.iter().zip(b).map(|(x, y)| (x - y).abs().powf(q)).sum();
            s.powf(1.0 / q)
        }
    }
}

/// A non-increasing sequence `(e_1, ..., e_L)` standing in for the entropy
/// numbers of an abstract operator; `e_1` is the operator norm. Queries past
/// the stored length return `e_L`.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyProfile {
    values: Vec<f64>,
}

impl EntropyProfile {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidInput("entropy profile must be non-empty".into()));
        }
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidInput(
                "entropy profile values must be finite and non-negative".into(),
            ));
        }
        if values.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::InvalidInput(
                "entropy profile must be non-increasing".into(),
            ));
        }
        Ok(EntropyProfile { values })
    }

    /// The profile `e_k = 2^(1-k)` of the one-dimensional identity embedding.
    pub fn dyadic(len: usize) -> Self {
        EntropyProfile {
            values: (0..len.max(1)).map(|k| (-(k as f64)).exp2()).collect(),
        }
    }

    /// `e_1`, the operator norm.
    pub fn norm(&self) -> f64 {
        self.values[0]
    }

    /// `e_k` with 1-based `k`, clamped to the last stored value past the end.
    pub fn get(&self, k: usize) -> f64 {
        debug_assert!(k >= 1);
        let i = (k - 1).min(self.values.len() - 1);
        self.values[i]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Pointwise scaling by `t >= 0`.
    pub fn scaled(&self, t: f64) -> Result<Self> {
        EntropyProfile::new(self.values.iter().map(|v| v * t).collect())
    }
}

/// `e_{s+n-1}(R o S) <= e_s(R) e_n(S)`: the right-hand side.
pub fn entropy_composition_bound(e_s_r: f64, e_n_s: f64) -> f64 {
    e_s_r * e_n_s
}

/// `e_{s+n-1}(T1 + T2) <= (e_s(T1)^r + e_n(T2)^r)^(1/r)`: the right-hand side.
pub fn entropy_sum_bound(e_s_t1: f64, e_n_t2: f64, r: RNormParam) -> f64 {
    let r = r.get();
    (e_s_t1.powf(r) + e_n_t2.powf(r)).powf(1.0 / r)
}

pub const PIETSCH_DEFAULT_TOL: f64 = 1e-12;

/// Checks the two-sided relation between inner and outer entropy numbers,
/// `f_n <= 2^(1/r - 1) e_n <= 2^(1/r) f_n`, within a relative tolerance.
pub fn pietsch_relation_check_tol(e_n: f64, f_n: f64, r: RNormParam, rel_tol: f64) -> bool {
    let c = (1.0 / r.get() - 1.0).exp2();
    // f <= c * e  and  c * e <= 2 c * f, i.e. e <= 2 f.
    f_n <= c * e_n * (1.0 + rel_tol) + rel_tol && e_n <= 2.0 * f_n * (1.0 + rel_tol) + rel_tol
}

pub fn pietsch_relation_check(e_n: f64, f_n: f64, r: RNormParam) -> bool {
    pietsch_relation_check_tol(e_n, f_n, r, PIETSCH_DEFAULT_TOL)
}

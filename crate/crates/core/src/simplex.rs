//! Probability vectors, relative entropy, and the collinear parameterization
//! `z(t) = t·α + (1−t)·β` of three distributions on a segment.

use crate::{Error, Result};

/// Tolerance within which a probability vector must sum to one; constructors
/// renormalize inside this tolerance and reject outside it.
pub const SUM_TOL: f64 = 1e-12;

/// A point of the standard simplex: a finite probability vector of length
/// `n ≥ 2` with nonnegative entries summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct Dist {
    probs: Vec<f64>,
}

impl Dist {
    /// Validate and construct a distribution. Entries must be finite and
    /// nonnegative and sum to 1 within [`SUM_TOL`]; the vector is
    /// renormalized so the stored sum is exactly 1 up to rounding.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.len() < 2 {
            return Err(Error::Domain(
                "a distribution needs at least 2 entries".into(),
            ));
        }
        if probs.iter().any(|p| !p.is_finite()) {
            return Err(Error::Domain("distribution entries must be finite".into()));
        }
        if probs.iter().any(|&p| p < 0.0) {
            return Err(Error::Domain(
                "distribution entries must be nonnegative".into(),
            ));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::Domain(format!(
                "distribution sums to {sum}, outside tolerance {SUM_TOL}"
            )));
        }
        let probs = probs.into_iter().map(|p| p / sum).collect();
        Ok(Self { probs })
    }

    /// The uniform distribution on `n` symbols.
    pub fn uniform(n: usize) -> Result<Self> {
        Self::new(vec![1.0 / n as f64; n])
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn get(&self, i: usize) -> f64 {
        self.probs[i]
    }
}

/// A collinear family `z(t) = t·α + (1−t)·β` together with parameters
/// `(a, b, c)` selecting `u = z(a)`, `v = z(b)`, `w = z(c)`.
#[derive(Debug, Clone)]
pub struct RayTriple {
    alpha: Dist,
    beta: Dist,
    a: f64,
    b: f64,
    c: f64,
}

impl RayTriple {
    /// Validate `0 ≤ c < b ≤ 1`, `a ∈ [0,1]`, `a ∉ {b, c}`, and matching
    /// lengths.
    pub fn new(alpha: Dist, beta: Dist, a: f64, b: f64, c: f64) -> Result<Self> {
        if alpha.len() != beta.len() {
            return Err(Error::Dimension(format!(
                "alpha has length {}, beta has length {}",
                alpha.len(),
                beta.len()
            )));
        }
        if !(0.0..=1.0).contains(&a) || !a.is_finite() {
            return Err(Error::Domain(format!("a = {a} must lie in [0,1]")));
        }
        if !(0.0 <= c && c < b && b <= 1.0) {
            return Err(Error::Domain(format!("need 0 <= c < b <= 1, got b={b}, c={c}")));
        }
        if a == b || a == c {
            return Err(Error::Domain(format!(
                "a must differ from b and c, got a={a}, b={b}, c={c}"
            )));
        }
        Ok(Self { alpha, beta, a, b, c })
    }

    pub fn alpha(&self) -> &Dist {
        &self.alpha
    }

    pub fn beta(&self) -> &Dist {
        &self.beta
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }
}

/// Relative entropy (KL divergence) `Σ p_i ln(p_i/q_i)` in nats, with the
/// convention `0·ln(0/x) = 0`. Returns `+∞` exactly when some `i` has
/// `p_i > 0` and `q_i = 0`.
pub fn kl(p: &Dist, q: &Dist) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::Dimension(format!(
            "kl: p has length {}, q has length {}",
            p.len(),
            q.len()
        )));
    }
    Ok(kl_slices(p.probs(), q.probs()))
}

/// KL divergence on raw nonnegative slices of equal length (internal helper;
/// also used for conditional rows that are not wrapped in [`Dist`]).
pub(crate) fn kl_slices(p: &[f64], q: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (&pi, &qi) in p.iter().zip(q) {
        if pi > 0.0 {
            if qi == 0.0 {
                return f64::INFINITY;
            }
            acc += pi * (pi / qi).ln();
        }
    }
    acc
}

/// The convex combination `z(t) = t·α + (1−t)·β` for `t ∈ [0,1]`.
pub fn ray_point(alpha: &Dist, beta: &Dist, t: f64) -> Result<Dist> {
    if alpha.len() != beta.len() {
        return Err(Error::Dimension(format!(
            "ray_point: alpha has length {}, beta has length {}",
            alpha.len(),
            beta.len()
        )));
    }
    if !(0.0..=1.0).contains(&t) || !t.is_finite() {
        return Err(Error::Domain(format!("t = {t} must lie in [0,1]")));
    }
    let probs = alpha
        .probs()
        .iter()
        .zip(beta.probs())
        .map(|(&ai, &bi)| t * ai + (1.0 - t) * bi)
        .collect();
    Dist::new(probs)
}

/// The ratio `r = D(v‖u) / D(w‖u)` for `u = z(a)`, `v = z(b)`, `w = z(c)`.
/// Errors when either divergence is infinite or the denominator (or
/// numerator) vanishes, in which case the ratio is undefined.
pub fn kl_ratio(rt: &RayTriple) -> Result<f64> {
    let u = ray_point(&rt.alpha, &rt.beta, rt.a)?;
    let v = ray_point(&rt.alpha, &rt.beta, rt.b)?;
    let w = ray_point(&rt.alpha, &rt.beta, rt.c)?;
    let num = kl(&v, &u)?;
    let den = kl(&w, &u)?;
    if !num.is_finite() || !den.is_finite() {
        return Err(Error::RatioUndefined(
            "a divergence in the ratio is infinite".into(),
        ));
    }
    if num <= 0.0 || den <= 0.0 {
        return Err(Error::RatioUndefined(
            "both divergences must be positive".into(),
        ));
    }
    Ok(num / den)
}

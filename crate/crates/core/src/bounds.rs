//! The tight sandwich on the ratio of relative entropies of collinear
//! distributions, its equivalent interval characterizations in each of the
//! three parameters, extremal families approaching the supremum, and the
//! `F_g` functional with its root `q(g)`.

use crate::numeric::{bisect_monotone, integrate_signed};
use crate::sampling;
use crate::scalarfn::{rho, rho_inv, xi, xi_inv, zeta, BranchId};
use crate::simplex::{kl_ratio, Dist, RayTriple};
use crate::{Error, Result};
use rand::Rng;
use rand::SeedableRng;

/// A single real interval with per-endpoint open/closed flags.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub lo_closed: bool,
    pub hi: f64,
    pub hi_closed: bool,
}

impl Interval {
    /// True when the interval contains no points.
    pub fn is_empty(&self) -> bool {
        if self.lo.is_nan() || self.hi.is_nan() {
            return true;
        }
        if self.lo < self.hi {
            return false;
        }
        !(self.lo == self.hi && self.lo_closed && self.hi_closed)
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_closed { x >= self.lo } else { x > self.lo };
        let below = if self.hi_closed { x <= self.hi } else { x < self.hi };
        above && below
    }
}

/// A finite union of pairwise disjoint intervals, sorted by lower endpoint.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Append an interval that must lie entirely to the right of the current
    /// contents; empty intervals are silently dropped.
    fn push(&mut self, iv: Interval) {
        if iv.is_empty() {
            return;
        }
        if let Some(last) = self.intervals.last() {
            debug_assert!(
                last.hi < iv.lo || (last.hi == iv.lo && !(last.hi_closed && iv.lo_closed)),
                "intervals must be appended in disjoint sorted order"
            );
        }
        self.intervals.push(iv);
    }

    pub fn contains(&self, x: f64) -> bool {
        self.intervals.iter().any(|iv| iv.contains(x))
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    /// The reflection `{1 − x : x ∈ self}`, with endpoint flags swapped.
    pub fn reflect(&self) -> Self {
        let mut out = Self::empty();
        for iv in self.intervals.iter().rev() {
            out.push(Interval {
                lo: 1.0 - iv.hi,
                lo_closed: iv.hi_closed,
                hi: 1.0 - iv.lo,
                hi_closed: iv.lo_closed,
            });
        }
        out
    }
}

/// A positive, bounded, continuous, nonincreasing weight function on (0,1).
pub struct TestWeight {
    eval: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    descriptor: String,
}

impl TestWeight {
    pub fn new(
        descriptor: impl Into<String>,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self { eval: Box::new(eval), descriptor: descriptor.into() }
    }

    /// The constant weight `g ≡ v`.
    pub fn constant(v: f64) -> Self {
        Self::new(format!("const {v}"), move |_| v)
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.eval)(t)
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    /// Spot-check the class invariants (positive, bounded, nonincreasing) on
    /// a 1000-point grid of (0,1).
    pub fn validate(&self) -> Result<()> {
        let n = 1000;
        let mut prev = f64::INFINITY;
        for k in 1..=n {
            let t = k as f64 / (n + 1) as f64;
            let v = self.eval(t);
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::Domain(format!(
                    "test weight '{}' is not positive and bounded at t = {t}",
                    self.descriptor
                )));
            }
            if v > prev + 1e-12 {
                return Err(Error::Domain(format!(
                    "test weight '{}' increases near t = {t}",
                    self.descriptor
                )));
            }
            prev = v;
        }
        Ok(())
    }
}

impl std::fmt::Debug for TestWeight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TestWeight({})", self.descriptor)
    }
}

fn check_abc(a: f64, b: f64, c: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&a) {
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
    Ok(())
}

/// The strict sandwich `(1/ρ(1−a,1−c,1−b), ρ(a,b,c))` bounding every
/// realizable ratio `r = D(v‖u)/D(w‖u)`.
pub fn ratio_bounds(a: f64, b: f64, c: f64) -> Result<(f64, f64)> {
    check_abc(a, b, c)?;
    let lower = 1.0 / rho(1.0 - a, 1.0 - c, 1.0 - b)?;
    let upper = rho(a, b, c)?;
    Ok((lower, upper))
}

fn check_r(r: f64) -> Result<()> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("r = {r} must be a positive real")));
    }
    Ok(())
}

/// The feasible set of `a` for fixed `(r, b, c)`: the union
/// `I₁,↓ ∪ I₁,↑12 ∪ I₁,↑21` of up to three intervals, one inside each
/// monotone region `[0,c)`, `(c,b)`, `(b,1]` of `a ↦ ρ(a,b,c)`.
pub fn feasible_a(r: f64, b: f64, c: f64) -> Result<IntervalSet> {
    check_r(r)?;
    if !(0.0 <= c && c < b && b <= 1.0) {
        return Err(Error::Domain(format!("need 0 <= c < b <= 1, got b={b}, c={c}")));
    }
    let mut out = IntervalSet::empty();

    // Guard constants; divisions by zero produce the intended infinities
    // (e.g. ζ_c(c) = 0 at c = 0 makes the first guard unreachable).
    let z_ratio_upper = zeta(b, b)? / zeta(c, c)?;
    let b_over_c = b / c;
    let z_ratio_lower = zeta(1.0 - b, 1.0 - b)? / zeta(1.0 - c, 1.0 - c)?;
    let lim_a1 = (1.0 - b) / (1.0 - c);

    // I₁,↑12 ⊆ [0, c). The reciprocal inverse has open supremum c/b; when
    // r sits within one ulp of b/c the guard and the inverse's own range
    // check can disagree, in which case the interval is empty.
    if r >= z_ratio_upper {
        match rho_inv(1.0 - c, 1.0 - b, BranchId::RhoUp2, 1.0 / r) {
            Ok(inv) => out.push(Interval {
                lo: rho_inv(b, c, BranchId::RhoUp1, r)?,
                lo_closed: false,
                hi: 1.0 - inv,
                hi_closed: false,
            }),
            Err(Error::OutOfRange(_)) => {}
            Err(e) => return Err(e),
        }
    } else if b_over_c < r {
        match rho_inv(1.0 - c, 1.0 - b, BranchId::RhoUp2, 1.0 / r) {
            Ok(inv) => out.push(Interval {
                lo: 0.0,
                lo_closed: true,
                hi: 1.0 - inv,
                hi_closed: false,
            }),
            Err(Error::OutOfRange(_)) => {}
            Err(e) => return Err(e),
        }
    }

    // I₁,↓ ⊆ (c, b).
    out.push(Interval {
        lo: 1.0 - rho_inv(1.0 - c, 1.0 - b, BranchId::RhoDown, 1.0 / r)?,
        lo_closed: false,
        hi: rho_inv(b, c, BranchId::RhoDown, r)?,
        hi_closed: false,
    });

    // I₁,↑21 ⊆ (b, 1].
    if r <= z_ratio_lower {
        out.push(Interval {
            lo: rho_inv(b, c, BranchId::RhoUp2, r)?,
            lo_closed: false,
            hi: 1.0 - rho_inv(1.0 - c, 1.0 - b, BranchId::RhoUp1, 1.0 / r)?,
            hi_closed: false,
        });
    } else if r < lim_a1 {
        out.push(Interval {
            lo: rho_inv(b, c, BranchId::RhoUp2, r)?,
            lo_closed: false,
            hi: 1.0,
            hi_closed: true,
        });
    }

    Ok(out)
}

/// The feasible set of `b` for fixed `(r, a, c)`: the union `I₂ ∪ I₃`, with
/// `I₂` below `a` (nonempty only when `c < a` and `r < 1`) and `I₃` above
/// `a ∨ c`.
pub fn feasible_b(r: f64, a: f64, c: f64) -> Result<IntervalSet> {
    check_r(r)?;
    if !(0.0..=1.0).contains(&a) {
        return Err(Error::Domain(format!("a = {a} must lie in [0,1]")));
    }
    if !(0.0..1.0).contains(&c) {
        return Err(Error::Domain(format!("c = {c} must lie in [0,1)")));
    }
    if a == c {
        return Err(Error::Domain(format!("a must differ from c, got a=c={a}")));
    }
    let mut out = IntervalSet::empty();

    // I₂: nonempty only if c < a and r < 1.
    if c < a && r < 1.0 {
        let lo = 1.0 - xi_inv(1.0 - a, BranchId::XiUp, r * xi(1.0 - a, 1.0 - c)?)?;
        // ξ_{a,↓}^{-1} degenerates as a → 1: solving ξ_a(t) = r·ξ_a(c) on
        // [0,a] reduces to 1−t = r(1−c) in that limit.
        let hi = if a == 1.0 {
            1.0 - r * (1.0 - c)
        } else {
            xi_inv(a, BranchId::XiDown, r * xi(a, c)?)?
        };
        out.push(Interval { lo, lo_closed: false, hi, hi_closed: false });
    }

    // I₃ guards. ρ(1−a,1−c,0) is +∞ at a = 1 and ρ(a,1,c) is 0 there, so
    // I₃ is empty for a = 1 as required.
    let inv_rho_refl = 1.0 / rho(1.0 - a, 1.0 - c, 0.0)?;
    let rho_a1c = if a == c { f64::INFINITY } else { rho_at_b1(a, c)? };
    if r <= inv_rho_refl || r < rho_a1c {
        let lo = xi_inv(a, BranchId::XiUp, r * xi(a, c)?)?.max(c);
        if r <= inv_rho_refl {
            // ξ_{1−a,↓}^{-1} degenerates as a → 0 (s = 1−a → 1): the upper
            // endpoint reduces to r·c in that limit.
            let hi = if a == 0.0 {
                r * c
            } else {
                1.0 - xi_inv(1.0 - a, BranchId::XiDown, r * xi(1.0 - a, 1.0 - c)?)?
            };
            out.push(Interval { lo, lo_closed: false, hi, hi_closed: false });
        } else {
            out.push(Interval { lo, lo_closed: false, hi: 1.0, hi_closed: true });
        }
    }

    Ok(out)
}

/// `ρ(a, 1, c)` evaluated without requiring `c < 1` fencing issues: equals
/// `(1−a)/ξ_a(c)` for `a < 1` and `0` for `a = 1`.
fn rho_at_b1(a: f64, c: f64) -> Result<f64> {
    if a == 1.0 {
        return Ok(0.0);
    }
    Ok((1.0 - a) / xi(a, c)?)
}

/// The feasible set of `c` for fixed `(r, a, b)`: the reflection
/// `1 − feasible_b(1/r, 1−a, 1−b)` with endpoint flags swapped.
pub fn feasible_c(r: f64, a: f64, b: f64) -> Result<IntervalSet> {
    check_r(r)?;
    if !(0.0..=1.0).contains(&a) {
        return Err(Error::Domain(format!("a = {a} must lie in [0,1]")));
    }
    if !(b > 0.0 && b <= 1.0) {
        return Err(Error::Domain(format!("b = {b} must lie in (0,1]")));
    }
    if a == b {
        return Err(Error::Domain(format!("a must differ from b, got a=b={a}")));
    }
    Ok(feasible_b(1.0 / r, 1.0 - a, 1.0 - b)?.reflect())
}

/// The ratio produced by the extremal family `α = (1−δf(δ), δf(δ), 0, …)`,
/// `β = (1−δ, δ, 0, …)` in dimension `n`; converges to `ρ(a,b,c)` as
/// `δ → 0` when `f(δ) → 0`.
pub fn extremal_ratio(
    a: f64,
    b: f64,
    c: f64,
    delta: f64,
    f_of_delta: f64,
    n: usize,
) -> Result<f64> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Domain(format!("delta = {delta} must lie in (0,1)")));
    }
    if !(0.0..1.0).contains(&f_of_delta) {
        return Err(Error::Domain(format!(
            "f(delta) = {f_of_delta} must lie in [0,1)"
        )));
    }
    if n < 2 {
        return Err(Error::Domain("dimension n must be at least 2".into()));
    }
    let mut alpha = vec![0.0; n];
    let mut beta = vec![0.0; n];
    alpha[0] = 1.0 - delta * f_of_delta;
    alpha[1] = delta * f_of_delta;
    beta[0] = 1.0 - delta;
    beta[1] = delta;
    let rt = RayTriple::new(Dist::new(alpha)?, Dist::new(beta)?, a, b, c)?;
    kl_ratio(&rt)
}

/// Brute-force maximum of the ratio over `samples` random `(α, β)` pairs in
/// dimensions 2..=5, seeded with the extremal family so the supremum
/// `ρ(a,b,c)` is visibly approached (but never attained).
pub fn sup_ratio_search(a: f64, b: f64, c: f64, samples: usize, seed: u64) -> Result<f64> {
    check_abc(a, b, c)?;
    if samples < 1 {
        return Err(Error::Domain("samples must be at least 1".into()));
    }
    let mut best = f64::NEG_INFINITY;
    // Seed with the extremal family.
    for &delta in &[1e-2, 1e-3, 1e-4, 1e-5, 1e-6] {
        if let Ok(r) = extremal_ratio(a, b, c, delta, delta, 2) {
            best = best.max(r);
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let n = rng.gen_range(2..=5usize);
        let alpha = sampling::random_dist(&mut rng, n);
        let beta = sampling::random_dist(&mut rng, n);
        let Ok(rt) = RayTriple::new(alpha, beta, a, b, c) else {
            continue;
        };
        if let Ok(r) = kl_ratio(&rt) {
            best = best.max(r);
        }
    }
    Ok(best)
}

/// The functional
/// `F_g(r,a,b,c) = ∫_b^a (b−t)/(1−t)·g(t) dt − r·∫_c^a (c−t)/(1−t)·g(t) dt`,
/// evaluated by adaptive quadrature (absolute tolerance 1e−10). Requires
/// `a < 1` (the first integrand is not integrable on `(b,1)` otherwise).
pub fn f_g(r: f64, a: f64, b: f64, c: f64, g: &TestWeight) -> Result<f64> {
    if a == 1.0 {
        return Err(Error::Domain("functional undefined at a=1".into()));
    }
    check_abc(a, b, c)?;
    if !r.is_finite() || r < 0.0 {
        return Err(Error::Domain(format!("r = {r} must be a nonnegative real")));
    }
    let tol = 1e-10;
    let kinks = [a, b, c];
    // At b = 1 the factor (b−t)/(1−t) is identically 1 on the range.
    let int1 = if b == 1.0 {
        integrate_signed(|t| g.eval(t), b, a, &kinks, tol)
    } else {
        integrate_signed(|t| (b - t) / (1.0 - t) * g.eval(t), b, a, &kinks, tol)
    };
    let int2 = integrate_signed(|t| (c - t) / (1.0 - t) * g.eval(t), c, a, &kinks, tol);
    Ok(int1 - r * int2)
}

/// The unique `r > 0` with `F_g(r,a,b,c) = 0`, found by bisection on the
/// strictly increasing map `r ↦ F_g(r,a,b,c)`.
pub fn q_of_g(g: &TestWeight, a: f64, b: f64, c: f64) -> Result<f64> {
    g.validate()?;
    let at = |r: f64| f_g(r, a, b, c, g);
    if at(0.0)? >= 0.0 {
        return Err(Error::Bracketing(
            "F_g(0) is nonnegative; no positive root".into(),
        ));
    }
    let mut hi = 1.0;
    while at(hi)? <= 0.0 {
        hi *= 2.0;
        if hi > 1e6 {
            return Err(Error::Bracketing(
                "no sign change for r up to 1e6".into(),
            ));
        }
    }
    Ok(bisect_monotone(|r| at(r).unwrap(), 0.0, hi, 0.0, true))
}

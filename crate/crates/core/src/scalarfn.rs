//! The scalar special functions `ζ_t(s)`, `ξ_s(t)`, `ρ(a,b,c)`, their
//! monotone-branch inverses, and the universal threshold constants `T` and
//! `T(a)`.
//!
//! Extended-real convention: `ρ` legitimately takes the value `+∞` (at
//! `a = c`) and `0` (at `a = b`); these are represented by IEEE infinities
//! rather than sentinels, and all comparisons in the branch inverses handle
//! them directly.

use crate::numeric::bisect_monotone;
use crate::{Error, Result};

/// Slack absorbed at closed endpoints of branch ranges.
const RANGE_SLACK: f64 = 1e-12;

/// `e^{-1}`, the lower edge of the capacity-achieving input band.
pub fn inv_e() -> f64 {
    (-1.0f64).exp()
}

/// Identifier of a monotone branch of `ξ_s` or `ρ(·,b,c)`.
///
/// - `XiDown`: `ξ_s` restricted to `[0, s]` (strictly decreasing).
/// - `XiUp`: `ξ_s` restricted to `[s, 1]` (strictly increasing).
/// - `RhoUp1`: `ρ(·,b,c)` restricted to `[0, c)` (strictly increasing).
/// - `RhoDown`: `ρ(·,b,c)` restricted to `(c, b]` (strictly decreasing).
/// - `RhoUp2`: `ρ(·,b,c)` restricted to `[b, 1]` (strictly increasing).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchId {
    XiDown,
    XiUp,
    RhoUp1,
    RhoDown,
    RhoUp2,
}

/// `ζ_t(s) = s + (1−t)·ln(1−s)` for `t ∈ [0,1]`, `s ∈ [0,1)`; `s = 1` is
/// allowed only together with `t = 1`, where the value is 1.
pub fn zeta(t: f64, s: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("zeta: t = {t} must lie in [0,1]")));
    }
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::Domain(format!("zeta: s = {s} must lie in [0,1]")));
    }
    if s == 1.0 {
        if t == 1.0 {
            return Ok(1.0);
        }
        return Err(Error::Domain(
            "zeta: s = 1 with t < 1 diverges to -inf".into(),
        ));
    }
    Ok(s + (1.0 - t) * (-s).ln_1p())
}

/// `ξ_s(t) = ζ_t(t) − ζ_t(s)` for `s ∈ [0,1)`, `t ∈ [0,1]`. Nonnegative,
/// zero iff `t = s`. Closed forms are used at `t ∈ {0, 1}` to avoid
/// cancellation: `ξ_s(0) = −s − ln(1−s)` and `ξ_s(1) = 1 − s`.
pub fn xi(s: f64, t: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&s) {
        return Err(Error::Domain(format!("xi: s = {s} must lie in [0,1)")));
    }
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("xi: t = {t} must lie in [0,1]")));
    }
    if t == 1.0 {
        return Ok(1.0 - s);
    }
    if t == 0.0 {
        return Ok(-s - (-s).ln_1p());
    }
    let v = t + (1.0 - t) * (-t).ln_1p() - s - (1.0 - t) * (-s).ln_1p();
    // The exact value is >= 0; tiny negative rounding near t = s is clamped.
    Ok(v.max(0.0))
}

fn check_bc(b: f64, c: f64) -> Result<()> {
    if !(0.0 <= c && c < b && b <= 1.0) {
        return Err(Error::Domain(format!("need 0 <= c < b <= 1, got b={b}, c={c}")));
    }
    Ok(())
}

/// `ρ(a,b,c) = ξ_a(b)/ξ_a(c)` for `a < 1` and `(1−b)/(1−c)` for `a = 1`,
/// with `0 ≤ c < b ≤ 1`. Extended-real: returns `+∞` at `a = c` and `0` at
/// `a = b`.
pub fn rho(a: f64, b: f64, c: f64) -> Result<f64> {
    check_bc(b, c)?;
    if !(0.0..=1.0).contains(&a) {
        return Err(Error::Domain(format!("rho: a = {a} must lie in [0,1]")));
    }
    if a == 1.0 {
        return Ok((1.0 - b) / (1.0 - c));
    }
    if a == c {
        return Ok(f64::INFINITY);
    }
    if a == b {
        return Ok(0.0);
    }
    Ok(xi(a, b)? / xi(a, c)?)
}

/// Inverse of a monotone branch of `ξ_s`: the unique `t` on the branch
/// domain with `ξ_s(t) = y`, to absolute tolerance 1e−12.
pub fn xi_inv(s: f64, branch: BranchId, y: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&s) {
        return Err(Error::Domain(format!("xi_inv: s = {s} must lie in [0,1)")));
    }
    if !y.is_finite() {
        return Err(Error::OutOfRange(format!("xi_inv: y = {y} is not finite")));
    }
    match branch {
        BranchId::XiDown => {
            let top = xi(s, 0.0)?;
            if y < -RANGE_SLACK || y > top + RANGE_SLACK {
                return Err(Error::OutOfRange(format!(
                    "xi_inv down branch: y = {y} outside [0, {top}]"
                )));
            }
            let y = y.clamp(0.0, top);
            Ok(bisect_monotone(|t| xi(s, t).unwrap(), 0.0, s, y, false))
        }
        BranchId::XiUp => {
            let top = 1.0 - s;
            if y < -RANGE_SLACK || y > top + RANGE_SLACK {
                return Err(Error::OutOfRange(format!(
                    "xi_inv up branch: y = {y} outside [0, {top}]"
                )));
            }
            let y = y.clamp(0.0, top);
            Ok(bisect_monotone(|t| xi(s, t).unwrap(), s, 1.0, y, true))
        }
        _ => Err(Error::Domain(
            "xi_inv expects branch XiDown or XiUp".into(),
        )),
    }
}

/// Inverse of a monotone branch of `a ↦ ρ(a,b,c)`: the unique preimage on
/// the branch domain with `ρ(a,b,c) = r`, to absolute tolerance 1e−12.
pub fn rho_inv(b: f64, c: f64, branch: BranchId, r: f64) -> Result<f64> {
    check_bc(b, c)?;
    if r.is_nan() || r < 0.0 {
        return Err(Error::OutOfRange(format!(
            "rho_inv: r = {r} must be a nonnegative real"
        )));
    }
    let f = |a: f64| rho(a, b, c).unwrap();
    match branch {
        BranchId::RhoUp1 => {
            // Domain [0, c), increasing from ρ(0,b,c) toward +∞.
            if c == 0.0 {
                return Err(Error::OutOfRange(
                    "rho_inv up1 branch: empty domain [0, c) for c = 0".into(),
                ));
            }
            let bottom = rho(0.0, b, c)?;
            if r < bottom - RANGE_SLACK {
                return Err(Error::OutOfRange(format!(
                    "rho_inv up1 branch: r = {r} below range minimum {bottom}"
                )));
            }
            Ok(bisect_monotone(f, 0.0, c, r.max(bottom), true))
        }
        BranchId::RhoDown => {
            // Domain (c, b], decreasing from +∞ toward ρ(b,b,c) = 0.
            if r == 0.0 || !r.is_finite() {
                return Err(Error::OutOfRange(format!(
                    "rho_inv down branch: r = {r} outside range (0, +inf)"
                )));
            }
            Ok(bisect_monotone(f, c, b, r, false))
        }
        BranchId::RhoUp2 => {
            // Domain [b, 1], increasing from ρ(b,b,c) = 0; the range supremum
            // (1−b)/(1−c) is treated as excluded.
            let top = (1.0 - b) / (1.0 - c);
            if r >= top {
                return Err(Error::OutOfRange(format!(
                    "rho_inv up2 branch: r = {r} at or above range supremum {top}"
                )));
            }
            Ok(bisect_monotone(f, b, 1.0, r, true))
        }
        _ => Err(Error::Domain(
            "rho_inv expects branch RhoUp1, RhoDown, or RhoUp2".into(),
        )),
    }
}

/// The universal threshold `T = 1 − ξ_{e^{-1}.↑}^{-1}(ξ_{e^{-1}}(0)) ≈
/// 0.325176`: the noise-measure level above which encoder side information
/// cannot increase the capacity of any binary-input channel with decoder
/// state knowledge.
pub fn threshold_t() -> f64 {
    let s = inv_e();
    1.0 - xi_inv(s, BranchId::XiUp, xi(s, 0.0).unwrap()).unwrap()
}

/// The per-mass threshold `T(a) = 1 − ξ_{1−a,↑}^{-1}(ξ_{1−a}(0))` for
/// `a ∈ (e^{-1}, 1)`, strictly increasing in `a`.
pub fn threshold_ta(a: f64) -> Result<f64> {
    if !(a > inv_e() && a < 1.0) {
        return Err(Error::Domain(format!(
            "threshold_ta: a = {a} must lie in (e^-1, 1)"
        )));
    }
    let s = 1.0 - a;
    Ok(1.0 - xi_inv(s, BranchId::XiUp, xi(s, 0.0)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Frozen high-precision reference values (30+ digit arithmetic).
    const ZETA_HALF_HALF: f64 = 0.153426409720027345;
    const XI_INVE_0: f64 = 0.0907957042156395694;
    const T_REF: f64 = 0.32517593715647645014;
    const TA_HALF_REF: f64 = 0.131291420524580748;
    const RHO_HALF_1_0: f64 = 2.58869944956208983;

    #[test]
    fn zeta_closed_forms() {
        assert_eq!(zeta(0.3, 0.0).unwrap(), 0.0);
        assert_eq!(zeta(1.0, 0.7).unwrap(), 0.7);
        assert_eq!(zeta(1.0, 1.0).unwrap(), 1.0);
        assert!((zeta(0.5, 0.5).unwrap() - ZETA_HALF_HALF).abs() < 1e-15);
        assert!(zeta(0.5, 1.0).is_err());
        assert!(zeta(-0.1, 0.5).is_err());
    }

    #[test]
    fn zeta_monotone_finite_differences() {
        // ζ_t'(s) = (t−s)/(1−s): increasing for s < t, decreasing for s > t.
        let t = 0.6;
        let h = 1e-6;
        for k in 1..10 {
            let s = k as f64 * 0.09;
            let d = (zeta(t, s + h).unwrap() - zeta(t, s - h).unwrap()) / (2.0 * h);
            let expect = (t - s) / (1.0 - s);
            assert!((d - expect).abs() < 1e-4, "s={s}: {d} vs {expect}");
        }
    }

    #[test]
    fn zeta_ratio_exceeds_linear_ratio() {
        for &(b, c) in &[(0.9, 0.1), (0.5, 0.2), (1.0, 0.6), (0.3, 0.05)] {
            let lhs = zeta(b, b).unwrap() / zeta(c, c).unwrap();
            assert!(lhs > b / c, "b={b}, c={c}");
        }
    }

    #[test]
    fn xi_closed_forms() {
        assert_eq!(xi(0.4, 0.4).unwrap(), 0.0);
        assert_eq!(xi(0.4, 1.0).unwrap(), 0.6);
        assert!((xi(inv_e(), 0.0).unwrap() - XI_INVE_0).abs() < 1e-16);
        assert!(xi(1.0, 0.5).is_err());
    }

    #[test]
    fn xi_branch_monotonicity() {
        let s = 0.5;
        let mut prev = xi(s, 0.0).unwrap();
        for k in 1..=10 {
            let t = k as f64 * 0.05;
            let v = xi(s, t).unwrap();
            assert!(v < prev, "xi not decreasing on (0,s) at t={t}");
            prev = v;
        }
        for k in 11..=20 {
            let t = k as f64 * 0.05;
            let v = xi(s, t).unwrap();
            assert!(v > prev, "xi not increasing on (s,1) at t={t}");
            prev = v;
        }
    }

    #[test]
    fn xi_monotone_in_s_for_fixed_t() {
        let t = 0.5;
        let mut prev = f64::INFINITY;
        for k in 0..10 {
            let s = 0.05 + k as f64 * 0.049;
            let v = xi(s, t).unwrap();
            if s < t {
                assert!(v < prev, "xi_s(t) not decreasing in s at s={s}");
            } else if s > t {
                assert!(v > prev, "xi_s(t) not increasing in s at s={s}");
            }
            prev = v;
        }
    }

    #[test]
    fn rho_special_values() {
        assert!((rho(1.0, 0.8, 0.2).unwrap() - 0.25).abs() < 1e-15);
        assert_eq!(rho(0.1, 0.6, 0.1).unwrap(), f64::INFINITY);
        assert_eq!(rho(0.6, 0.6, 0.1).unwrap(), 0.0);
        // ρ(0,b,c) = ζ_b(b)/ζ_c(c)
        let v = rho(0.0, 0.7, 0.3).unwrap();
        let expect = zeta(0.7, 0.7).unwrap() / zeta(0.3, 0.3).unwrap();
        assert!((v - expect).abs() < 1e-14);
        assert!((rho(0.5, 1.0, 0.0).unwrap() - RHO_HALF_1_0).abs() < 1e-13);
        assert!(rho(0.5, 0.2, 0.4).is_err());
    }

    #[test]
    fn rho_threshold_identities() {
        let t = threshold_t();
        let one = rho(inv_e(), 1.0 - t, 0.0).unwrap();
        assert!((one - 1.0).abs() < 1e-10, "rho(e^-1, 1-T, 0) = {one}");
        let one2 = rho(1.0 - inv_e(), 1.0, 0.0).unwrap();
        assert!((one2 - 1.0).abs() < 1e-12, "rho(1-e^-1, 1, 0) = {one2}");
    }

    #[test]
    fn rho_limit_toward_a_equals_one() {
        // The approach to the a = 1 value is logarithmic in 1−a.
        let (b, c) = (0.8, 0.3);
        let lim = (1.0 - b) / (1.0 - c);
        let mut prev = f64::INFINITY;
        for &a in &[1.0 - 1e-3, 1.0 - 1e-6, 1.0 - 1e-9, 1.0 - 1e-12] {
            let err = (rho(a, b, c).unwrap() - lim).abs();
            assert!(err < prev, "error not decreasing at a={a}");
            prev = err;
        }
        assert!(prev < 0.05, "final error {prev}");
    }

    #[test]
    fn rho_second_and_third_argument_endpoints() {
        // As a function of the second argument: f(c) = +inf is approached;
        // exact endpoint identities f(a) = 0 hold.
        let (a, c) = (0.6, 0.2);
        assert_eq!(rho(a, a, c).unwrap(), 0.0);
        // Third argument: f(b) = 1 and f(a) = +inf.
        let b = 0.9;
        assert_eq!(rho(a, b, a).unwrap(), f64::INFINITY);
        let v = rho(b, b, c).unwrap();
        assert_eq!(v, 0.0);
        // ρ(a,b,b) is outside the domain (c < b required), but ρ(a,b,c)/1 at
        // c -> b approaches 1:
        let near = rho(a, b, b - 1e-9).unwrap();
        assert!((near - 1.0).abs() < 1e-6);
    }

    #[test]
    fn xi_inv_round_trips() {
        let s = 0.35;
        assert!((xi_inv(s, BranchId::XiUp, 0.0).unwrap() - s).abs() < 1e-11);
        assert!((xi_inv(s, BranchId::XiUp, 1.0 - s).unwrap() - 1.0).abs() < 1e-11);
        for k in 1..10 {
            let t = k as f64 * 0.1;
            let y = xi(s, t).unwrap();
            let branch = if t <= s { BranchId::XiDown } else { BranchId::XiUp };
            let back = xi_inv(s, branch, y).unwrap();
            assert!((back - t).abs() < 1e-10, "t={t}, back={back}");
        }
        assert!(xi_inv(s, BranchId::XiUp, 0.7).is_err()); // above 1-s
        assert!(xi_inv(s, BranchId::XiDown, 1.0).is_err());
        assert!(xi_inv(s, BranchId::RhoDown, 0.1).is_err());
    }

    #[test]
    fn rho_inv_round_trips() {
        let (b, c) = (0.8, 0.2);
        for k in 0..=20 {
            let a = k as f64 / 20.0;
            let r = rho(a, b, c).unwrap();
            let branch = if a < c {
                BranchId::RhoUp1
            } else if a <= b {
                if a == c {
                    continue;
                }
                BranchId::RhoDown
            } else {
                BranchId::RhoUp2
            };
            if branch == BranchId::RhoDown && r == 0.0 {
                continue;
            }
            if branch == BranchId::RhoUp2 && r >= (1.0 - b) / (1.0 - c) {
                // The up2 supremum (attained at a = 1) is excluded by design.
                assert!(rho_inv(b, c, branch, r).is_err());
                continue;
            }
            let back = rho_inv(b, c, branch, r).unwrap();
            assert!((back - a).abs() < 1e-9, "a={a}, back={back}");
        }
    }

    #[test]
    fn rho_inv_known_points_and_range_errors() {
        let v = rho_inv(1.0, 0.0, BranchId::RhoDown, 1.0).unwrap();
        assert!((v - (1.0 - inv_e())).abs() < 1e-11);
        // Open supremum of the up2 branch.
        let (b, c) = (0.6, 0.1);
        let top = (1.0 - b) / (1.0 - c);
        assert!(rho_inv(b, c, BranchId::RhoUp2, top).is_err());
        assert!(rho_inv(b, c, BranchId::RhoUp2, top - 1e-6).is_ok());
        // Below the up1 branch minimum.
        let bottom = rho(0.0, b, c).unwrap();
        assert!(rho_inv(b, c, BranchId::RhoUp1, bottom - 1e-6).is_err());
        assert!(rho_inv(1.0, 0.0, BranchId::RhoUp1, 2.0).is_err()); // empty domain
    }

    #[test]
    fn threshold_constant() {
        let t = threshold_t();
        assert!((t - T_REF).abs() < 5e-13, "T = {t}");
        assert!((t - 0.325176).abs() < 5e-7);
        assert!(t < 1.0 - inv_e());
        // Defining equation round-trip.
        let s = inv_e();
        let resid = xi(s, 1.0 - t).unwrap() - xi(s, 0.0).unwrap();
        assert!(resid.abs() < 1e-12);
    }

    #[test]
    fn threshold_ta_values() {
        let t = threshold_t();
        assert!((threshold_ta(1.0 - inv_e()).unwrap() - t).abs() < 1e-10);
        assert!((threshold_ta(0.5).unwrap() - TA_HALF_REF).abs() < 1e-12);
        assert!(threshold_ta(0.5).unwrap() < t);
        assert!(threshold_ta(inv_e()).is_err());
        assert!(threshold_ta(1.0).is_err());
    }

    #[test]
    fn threshold_ta_strictly_increasing() {
        let mut prev = 0.0;
        for k in 1..100 {
            let a = inv_e() + k as f64 / 100.0 * (1.0 - inv_e() - 1e-9);
            let v = threshold_ta(a).unwrap();
            assert!(v > prev, "T(a) not increasing at a={a}");
            prev = v;
        }
    }
}

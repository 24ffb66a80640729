//! Bracketed root-finding on monotone functions and adaptive Simpson
//! quadrature. These are the only numerical primitives the rest of the crate
//! relies on.

/// Absolute tolerance used by all bisection searches.
pub const BISECT_TOL: f64 = 1e-12;

/// Maximum number of bisection iterations.
pub const BISECT_MAX_ITER: u32 = 200;

/// Solve `f(x) = target` for `x` in `[lo, hi]` by bisection, where `f` is
/// monotone on the bracket (`increasing` selects the direction).
///
/// `f` may return `±∞` at interior points (e.g. `ρ(a,b,c) = +∞` at `a = c`);
/// the comparison logic handles extended-real values naturally. The caller is
/// responsible for `target` lying between the (possibly infinite) endpoint
/// values; under that contract the bracket invariant is maintained and the
/// result is accurate to [`BISECT_TOL`].
pub fn bisect_monotone(
    f: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    target: f64,
    increasing: bool,
) -> f64 {
    for _ in 0..BISECT_MAX_ITER {
        if hi - lo <= BISECT_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let v = f(mid);
        let go_right = if increasing { v < target } else { v > target };
        if go_right {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

fn adaptive_step(
    f: &impl Fn(f64) -> f64,
    a: f64,
    fa: f64,
    b: f64,
    fb: f64,
    m: f64,
    fm: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1)
            + adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1)
    }
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` (requires `a <= b`) with
/// absolute tolerance `tol`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    if a >= b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(fa, fm, fb, b - a);
    adaptive_step(&f, a, fa, b, fb, m, fm, whole, tol, 48)
}

/// Signed integral `∫_a^b f` with the integration range split at the given
/// breakpoints (integrand kinks), so each piece is smooth for the adaptive
/// rule.
pub fn integrate_signed(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    tol: f64,
) -> f64 {
    let (lo, hi, sign) = if a <= b { (a, b, 1.0) } else { (b, a, -1.0) };
    let mut cuts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|&p| p > lo && p < hi)
        .collect();
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cuts.dedup();
    let mut total = 0.0;
    let mut start = lo;
    let piece_tol = tol / (cuts.len() + 1) as f64;
    for &p in cuts.iter().chain(std::iter::once(&hi)) {
        total += integrate(&f, start, p, piece_tol);
        start = p;
    }
    sign * total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_finds_square_root() {
        let x = bisect_monotone(|t| t * t, 0.0, 2.0, 2.0, true);
        assert!((x - std::f64::consts::SQRT_2).abs() < 1e-11);
    }

    #[test]
    fn bisect_decreasing_branch() {
        let x = bisect_monotone(|t| 1.0 - t * t, 0.0, 1.0, 0.5, false);
        assert!((x - 0.5f64.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn simpson_exact_on_cubic() {
        let v = integrate(|t| t * t * t - 2.0 * t + 1.0, 0.0, 1.0, 1e-12);
        assert!((v - 0.25).abs() < 1e-12);
    }

    #[test]
    fn simpson_log_integrand() {
        // ∫_0^1 ln(1+t) dt = 2 ln 2 − 1
        let v = integrate(|t| (1.0 + t).ln(), 0.0, 1.0, 1e-11);
        assert!((v - (2.0 * std::f64::consts::LN_2 - 1.0)).abs() < 1e-10);
    }

    #[test]
    fn signed_integration_orientation() {
        let fwd = integrate_signed(|t| t, 0.0, 1.0, &[0.5], 1e-12);
        let bwd = integrate_signed(|t| t, 1.0, 0.0, &[0.5], 1e-12);
        assert!((fwd - 0.5).abs() < 1e-12);
        assert!((fwd + bwd).abs() < 1e-12);
    }
}

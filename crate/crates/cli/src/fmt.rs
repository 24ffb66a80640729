//! Significant-digit formatting for CLI and CSV output.

/// Format `x` with `sig` significant digits, using plain decimal notation
/// for moderate exponents and scientific notation otherwise (like `%g`, but
/// without trailing-zero stripping so output width is stable).
pub fn sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..15).contains(&exp) {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{:.*e}", sig - 1, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_plain_and_scientific() {
        assert_eq!(sig(0.25, 12), "0.250000000000");
        assert_eq!(sig(0.0, 12), "0");
        assert!(sig(0.325176, 12).starts_with("0.325176"));
        assert!(sig(3.2e-7, 12).contains('e'));
        let v: f64 = sig(1.0 / 3.0, 12).parse().unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-12);
    }
}

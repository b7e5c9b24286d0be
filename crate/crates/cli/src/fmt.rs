//! Decimal text output with 12 significant digits.

/// Formats with 12 significant digits in plain decimal notation; exact
/// zeros print as `0.000000000000`.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0.000000000000".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = (11 - exp).max(0) as usize;
    format!("{:.*}", decimals, x)
}

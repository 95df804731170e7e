//! Number formatting shared by the CSV and JSON writers.

/// Twelve significant digits in exponent form, e.g. `1.00000000000e0`.
pub fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

/// Rounds to `digits` significant digits. Non-finite values and zero pass
/// through unchanged.
pub fn round_significant(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x).parse().unwrap_or(x)
}

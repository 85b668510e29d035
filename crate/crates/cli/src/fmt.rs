//! Fixed 12-significant-digit float formatting for byte-stable reports.

/// Formats with exactly twelve significant digits: plain decimal notation
/// for moderate exponents, scientific otherwise. Zero (either sign)
/// canonicalizes to "0.00000000000".
pub fn fmt12(v: f64) -> String {
    if v == 0.0 {
        return "0.00000000000".to_string();
    }
    if !v.is_finite() {
        return if v.is_nan() {
            "nan".to_string()
        } else if v > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        };
    }
    let exp = v.abs().log10().floor() as i32;
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{v:.11e}")
    }
}

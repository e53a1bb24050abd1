//! Shared CSV formatting: `.` decimal separator, 17 significant digits, LF endings.

/// Formats a float with 17 significant digits in scientific notation, which
/// round-trips every finite `f64` exactly.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        // fold -0.0 so reruns never differ in the sign of zero
        return format!("{:.16e}", 0.0);
    }
    format!("{x:.16e}")
}

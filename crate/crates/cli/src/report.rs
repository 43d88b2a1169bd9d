//! Deterministic report formatting.

/// Formats a value with a fixed number of decimals, normalizing anything
/// that rounds to zero so reports never show `-0.000000`.
pub fn fmt_value(value: f64, precision: usize) -> String {
    let rounds_to_zero = value.abs() * 10f64.powi(precision as i32) < 0.5;
    let shown = if rounds_to_zero { 0.0 } else { value };
    format!("{shown:.precision$}")
}

/// Builds a `name = value` line with an optional unit suffix.
pub fn scalar_line(name: &str, value: f64, precision: usize, unit: &str) -> String {
    if unit.is_empty() {
        format!("{name} = {}\n", fmt_value(value, precision))
    } else {
        format!("{name} = {} {unit}\n", fmt_value(value, precision))
    }
}

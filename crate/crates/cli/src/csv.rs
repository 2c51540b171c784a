//! CSV rendering with a `#` metadata header.

use crate::config::ExperimentConfig;
use crate::runner::TimeSeries;

/// Significant digits kept in every value.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds to [`SIGNIFICANT_DIGITS`] and prints the shortest string that
/// reads back to the rounded value. Negative zero prints as `0`.
pub fn format_value(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().expect("float round-trips");
    if rounded == 0.0 {
        return "0".to_string();
    }
    let a = rounded.abs();
    if (1e-4..1e15).contains(&a) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

pub fn render(config: &ExperimentConfig, series: &TimeSeries) -> String {
    let mut out = String::new();
    out.push_str(&format!("# central-spin {}\n", env!("CARGO_PKG_VERSION")));
    for line in config.to_json().lines() {
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
    out.push_str(&series.columns.join(","));
    out.push('\n');
    for row in &series.rows {
        let cells: Vec<String> = row.iter().map(|&x| format_value(x)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting() {
        assert_eq!(format_value(0.1 + 0.2), "0.3");
        assert_eq!(format_value(-0.0), "0");
        assert_eq!(format_value(-1e-300 * 1e-300), "0");
        assert_eq!(format_value(2.0), "2");
        assert_eq!(format_value(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_value(-2.5e-7), "-2.5e-7");
        assert_eq!(format_value(123456.7890123456), "123456.789012");
        assert_eq!(format_value(std::f64::consts::PI * 1e20), "3.14159265359e20");
    }
}

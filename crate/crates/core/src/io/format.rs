/// Shortest decimal text that parses back to exactly `v`.
pub fn format_real(v: f64) -> String {
    let s = format!("{v}");
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

/// Two-decimal text when that is exact, otherwise the shortest exact text.
///
/// Keeps table-style values such as `0.90` intact through a
/// read-write cycle without losing precision on computed values.
pub fn format_distance(v: f64) -> String {
    let fixed = format!("{v:.2}");
    if fixed.parse::<f64>().ok() == Some(v) {
        fixed
    } else {
        format_real(v)
    }
}

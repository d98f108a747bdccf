//! Locale-independent number formatting for text, CSV and listings.

/// `x` rounded to `sig` significant digits, trailing zeros trimmed, always
/// with at least one fractional digit (`1.0`, `0.166666666667`, `-3.0`).
/// Magnitudes below 1e−5 or at least 1e15 use exponent notation (`2.5e-17`).
pub fn sig(x: f64, sig: usize) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0.0".into();
    }
    // Round once in scientific form; the exponent of the rounded value
    // decides the layout.
    let sci = format!("{:.*e}", sig.saturating_sub(1), x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..15).contains(&exp) {
        let m = trim_fraction(mantissa);
        return format!("{m}e{exp}");
    }
    let decimals = (sig as i32 - 1 - exp).max(1) as usize;
    let fixed = format!("{:.*}", decimals, x);
    let out = trim_fraction(&fixed);
    if out == "-0.0" {
        "0.0".into()
    } else {
        out
    }
}

/// Drops trailing zeros after the decimal point, keeping one digit.
fn trim_fraction(s: &str) -> String {
    match s.split_once('.') {
        Some((int, frac)) => {
            let frac = frac.trim_end_matches('0');
            let frac = if frac.is_empty() { "0" } else { frac };
            format!("{int}.{frac}")
        }
        None => format!("{s}.0"),
    }
}

/// Short form for listings: four decimals, trailing zeros and the point
/// dropped (`1.5708`, `0`, `-1`, `0.1667`).
pub fn short(x: f64) -> String {
    let s = format!("{:.4}", x);
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

//! Angle parsing: decimal numbers or `pi` fractions such as `3pi/8`.

use std::f64::consts::PI;

/// Parses `value` as an angle in radians. Plain numbers are read as degrees
/// when `degrees` is set; `pi` expressions are always radians.
pub fn parse_angle(value: &str, degrees: bool) -> Result<f64, String> {
    let s = value.trim().to_ascii_lowercase().replace(['π'], "pi").replace(' ', "");
    if s.contains("pi") {
        return parse_pi_fraction(&s).ok_or_else(|| format!("cannot parse angle '{value}'"));
    }
    let v: f64 = s.parse().map_err(|_| format!("cannot parse angle '{value}'"))?;
    if !v.is_finite() {
        return Err(format!("angle '{value}' is not finite"));
    }
    Ok(if degrees { v.to_radians() } else { v })
}

/// `[-][k][*]pi[/d]`
fn parse_pi_fraction(s: &str) -> Option<f64> {
    let (sign, rest) = match s.strip_prefix('-') {
        Some(r) => (-1.0, r),
        None => (1.0, s),
    };
    let (head, tail) = rest.split_once("pi")?;
    let head = head.strip_suffix('*').unwrap_or(head);
    let num: f64 = if head.is_empty() { 1.0 } else { head.parse().ok()? };
    let den: f64 = match tail {
        "" => 1.0,
        t => t.strip_prefix('/')?.parse().ok()?,
    };
    if !(num.is_finite() && den.is_finite()) || den == 0.0 {
        return None;
    }
    Some(sign * num * PI / den)
}

/// Comma-separated list of angles.
pub fn parse_angle_list(value: &str, degrees: bool) -> Result<Vec<f64>, String> {
    value.split(',').map(|tok| parse_angle(tok, degrees)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

    #[test]
    fn tokens() {
        assert_eq!(parse_angle("pi/8", false).unwrap(), FRAC_PI_8);
        assert_eq!(parse_angle("3pi/8", false).unwrap(), 3.0 * FRAC_PI_8);
        assert_eq!(parse_angle("3*pi/8", false).unwrap(), 3.0 * FRAC_PI_8);
        assert_eq!(parse_angle("pi", false).unwrap(), PI);
        assert_eq!(parse_angle("π/4", false).unwrap(), FRAC_PI_4);
        assert_eq!(parse_angle("-pi/4", false).unwrap(), -FRAC_PI_4);
        assert_eq!(parse_angle(" PI/4 ", true).unwrap(), FRAC_PI_4);
    }

    #[test]
    fn numbers() {
        assert_eq!(parse_angle("0.5", false).unwrap(), 0.5);
        assert_eq!(parse_angle("45", true).unwrap(), FRAC_PI_4);
        assert_eq!(parse_angle_list("pi/8,0.3", false).unwrap(), vec![FRAC_PI_8, 0.3]);
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "abc", "pi/0", "pi/", "2pix", "inf", "nan", "1,5"] {
            assert!(parse_angle(bad, false).is_err(), "{bad}");
        }
        assert!(parse_angle_list("pi/8,,pi/4", false).is_err());
    }
}

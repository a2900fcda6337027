//! Library half of the command-line driver: experiment plans, sweep
//! execution, and log-log scaling fits. The `mcc` binary is a thin layer
//! over these modules.

pub mod fitting;
pub mod plan;
pub mod run;

use num_rational::Rational64;

/// Parses `7`, `7/2`, or `0.05` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational64, String> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let num: i64 = a.trim().parse().map_err(|_| format!("bad rational {s:?}"))?;
        let den: i64 = b.trim().parse().map_err(|_| format!("bad rational {s:?}"))?;
        if den == 0 {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(Rational64::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let digits = frac.len() as u32;
        if digits > 15 {
            return Err(format!("too many decimal digits in {s:?}"));
        }
        let scale = 10i64.pow(digits);
        let sign = if s.starts_with('-') { -1 } else { 1 };
        let int_mag: i64 = match int.trim_start_matches('-') {
            "" => 0,
            t => t.parse().map_err(|_| format!("bad rational {s:?}"))?,
        };
        let frac_mag: i64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| format!("bad rational {s:?}"))?
        };
        return Ok(Rational64::new(sign * (int_mag * scale + frac_mag), scale));
    }
    let v: i64 = s.parse().map_err(|_| format!("bad rational {s:?}"))?;
    Ok(Rational64::new(v, 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_forms() {
        assert_eq!(parse_rational("7").unwrap(), Rational64::new(7, 1));
        assert_eq!(parse_rational("1/2").unwrap(), Rational64::new(1, 2));
        assert_eq!(parse_rational("0.05").unwrap(), Rational64::new(1, 20));
        assert_eq!(parse_rational("2.5").unwrap(), Rational64::new(5, 2));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
    }
}

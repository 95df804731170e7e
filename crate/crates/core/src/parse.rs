use num_complex::Complex64;

use crate::error::{Error, Result};

/// Parses `a`, `bi`, `a+bi` or `a-bi` (whitespace ignored, `i` alone
/// meaning one).
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::BadComplex(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let re: f64 = re.parse().map_err(|_| bad())?;
    let im: f64 = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepted_forms() {
        let cases = [
            ("0.3", (0.3, 0.0)),
            ("-0.2i", (0.0, -0.2)),
            ("0.3+0.2i", (0.3, 0.2)),
            ("0.3-0.2i", (0.3, -0.2)),
            (" 0.1 + 0.4i ", (0.1, 0.4)),
            ("i", (0.0, 1.0)),
            ("-i", (0.0, -1.0)),
            ("0.5-i", (0.5, -1.0)),
            ("1e-3+2e-2i", (1e-3, 2e-2)),
            ("-1e-3-2.5E-1i", (-1e-3, -0.25)),
        ];
        for (text, (re, im)) in cases {
            assert_eq!(parse_complex(text).unwrap(), Complex64::new(re, im), "{text}");
        }
    }

    #[test]
    fn rejected_forms() {
        for text in ["", "abc", "0.3+", "1+2j", "++1i"] {
            assert!(parse_complex(text).is_err(), "{text}");
        }
    }
}

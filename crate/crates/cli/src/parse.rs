//! Literal syntax for command-line values.
//!
//! Complex numbers: `0.3`, `-2i`, `i`, `0.25+0.5i`, `1e-3-2e-2i`.
//! Mixtures: comma-separated `weight@point`, e.g. `0.5@0,0.5@0.5`.

use gkz_core::scalar;
use gkz_core::{Complex, Precision};

use crate::error::CliError;

fn real(prec: Precision, text: &str) -> Result<gkz_core::Float, CliError> {
    let text = text.trim_start_matches('+');
    scalar::parse_real(prec, text).map_err(|_| CliError::Usage(format!("bad number {text:?}")))
}

/// Position of the sign that separates real and imaginary parts.
fn split_point(body: &str) -> Option<usize> {
    let bytes = body.as_bytes();
    (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'))
}

pub fn complex(prec: Precision, text: &str) -> Result<Complex, CliError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(CliError::Usage("empty complex literal".into()));
    }
    let mut z = scalar::zero(prec);
    let Some(body) = text.strip_suffix(['i', 'j']) else {
        z.mut_real().clone_from(&real(prec, text)?);
        return Ok(z);
    };
    let (re, im) = match split_point(body) {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other,
    };
    z.mut_real().clone_from(&real(prec, re)?);
    z.mut_imag().clone_from(&real(prec, im)?);
    Ok(z)
}

pub fn mixture(prec: Precision, text: &str) -> Result<Vec<(Complex, Complex)>, CliError> {
    text.split(',')
        .map(|part| {
            let (w, z) = part
                .split_once('@')
                .ok_or_else(|| CliError::Usage(format!("mixture entry {part:?} is not weight@point")))?;
            Ok((complex(prec, w)?, complex(prec, z)?))
        })
        .collect()
}

pub fn usize_list(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad integer {s:?} in list")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(text: &str) -> [f64; 2] {
        scalar::to_pair(&complex(Precision::DEFAULT, text).unwrap())
    }

    #[test]
    fn complex_forms() {
        assert_eq!(pair("0.3"), [0.3, 0.0]);
        assert_eq!(pair("-2i"), [0.0, -2.0]);
        assert_eq!(pair("i"), [0.0, 1.0]);
        assert_eq!(pair("-i"), [0.0, -1.0]);
        assert_eq!(pair("0.25+0.5i"), [0.25, 0.5]);
        assert_eq!(pair("1e-3-2e-2i"), [1e-3, -2e-2]);
        assert_eq!(pair("-1.5e+2+i"), [-150.0, 1.0]);
        assert!(complex(Precision::DEFAULT, "abc").is_err());
        assert!(complex(Precision::DEFAULT, "").is_err());
    }

    #[test]
    fn mixture_forms() {
        let m = mixture(Precision::DEFAULT, "0.5@0,0.5@0.5").unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(scalar::to_pair(&m[1].1), [0.5, 0.0]);
        assert!(mixture(Precision::DEFAULT, "0.5").is_err());
    }

    #[test]
    fn lists() {
        assert_eq!(usize_list("10, 100").unwrap(), vec![10, 100]);
        assert!(usize_list("10,x").is_err());
    }
}

//! Arbitrary-precision scalars.
//!
//! All complex values are [`rug::Complex`] with both parts at the same
//! precision. A [`Precision`] travels with every container so that values
//! created later (zeros, binomials, products) match the data they meet.

use std::fmt;

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Assign, Complex, Float, Integer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Working precision in bits, at least 53.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Precision(u32);

impl Precision {
    pub const MIN_BITS: u32 = 53;
    pub const DEFAULT: Precision = Precision(113);

    pub fn new(bits: u32) -> Result<Self> {
        if bits < Self::MIN_BITS {
            return Err(Error::Domain(format!(
                "precision must be at least {} bits, got {bits}",
                Self::MIN_BITS
            )));
        }
        if bits > rug::float::prec_max() {
            return Err(Error::Domain(format!("precision {bits} exceeds the MPFR maximum")));
        }
        Ok(Precision(bits))
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    /// Unit roundoff `2^-bits`.
    pub fn epsilon(self) -> f64 {
        (-(self.0 as f64)).exp2()
    }

    /// Same precision widened by `extra` guard bits.
    pub fn widened(self, extra: u32) -> Precision {
        Precision(self.0.saturating_add(extra).min(rug::float::prec_max()))
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self::DEFAULT
    }
}

impl TryFrom<u32> for Precision {
    type Error = Error;

    fn try_from(bits: u32) -> Result<Self> {
        Precision::new(bits)
    }
}

impl From<Precision> for u32 {
    fn from(p: Precision) -> u32 {
        p.0
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} bits", self.0)
    }
}

pub fn complex(prec: Precision, re: f64, im: f64) -> Complex {
    Complex::with_val(prec.bits(), (re, im))
}

pub fn zero(prec: Precision) -> Complex {
    Complex::new(prec.bits())
}

pub fn one(prec: Precision) -> Complex {
    Complex::with_val(prec.bits(), 1)
}

pub fn real(prec: Precision, x: f64) -> Float {
    Float::with_val(prec.bits(), x)
}

/// `e^{i theta}` at the given precision.
pub fn unit(prec: Precision, theta: &Float) -> Complex {
    let (s, c) = theta.clone().sin_cos(Float::new(prec.bits()));
    Complex::with_val(prec.bits(), (c, s))
}

pub fn pi(prec: Precision) -> Float {
    Float::with_val(prec.bits(), Constant::Pi)
}

/// Exact integer rounded once to the working precision.
pub fn integer_to_complex(prec: Precision, n: &Integer) -> Complex {
    Complex::with_val(prec.bits(), n)
}

pub fn modulus(z: &Complex) -> Float {
    Float::with_val(z.prec().0, z.abs_ref())
}

pub fn modulus_f64(z: &Complex) -> f64 {
    modulus(z).to_f64()
}

pub fn is_finite(z: &Complex) -> bool {
    z.real().is_finite() && z.imag().is_finite()
}

/// Errors with [`Error::Range`] when `z` has a NaN or infinite part.
pub fn ensure_finite(z: &Complex, what: &str) -> Result<()> {
    if is_finite(z) {
        Ok(())
    } else {
        Err(Error::Range(format!("{what} is not finite at working precision")))
    }
}

pub fn to_pair(z: &Complex) -> [f64; 2] {
    [z.real().to_f64(), z.imag().to_f64()]
}

/// `z^k` by repeated squaring at the precision of `z`.
pub fn powu(z: &Complex, k: u32) -> Complex {
    z.clone().pow(k)
}

/// Short human-readable rendering for error messages.
pub fn describe(z: &Complex) -> String {
    let [re, im] = to_pair(z);
    if im == 0.0 {
        format!("{re}")
    } else if im < 0.0 {
        format!("{re}-{}i", -im)
    } else {
        format!("{re}+{im}i")
    }
}

/// One complex entry of a JSON document: either `[re, im]` numbers or
/// `["re", "im"]` decimal strings parsed at full working precision.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonComplex {
    Numbers([f64; 2]),
    Strings([String; 2]),
}

impl JsonComplex {
    pub fn from_complex(z: &Complex) -> Self {
        JsonComplex::Numbers(to_pair(z))
    }

    pub fn to_complex(&self, prec: Precision) -> Result<Complex> {
        match self {
            JsonComplex::Numbers([re, im]) => {
                if !re.is_finite() || !im.is_finite() {
                    return Err(Error::Parse("non-finite complex entry".into()));
                }
                Ok(complex(prec, *re, *im))
            }
            JsonComplex::Strings([re, im]) => {
                let mut z = zero(prec);
                z.mut_real().assign(parse_real(prec, re)?);
                z.mut_imag().assign(parse_real(prec, im)?);
                Ok(z)
            }
        }
    }
}

pub fn parse_real(prec: Precision, text: &str) -> Result<Float> {
    let parsed = Float::parse(text.trim())
        .map_err(|e| Error::Parse(format!("invalid decimal {text:?}: {e}")))?;
    let x = Float::with_val(prec.bits(), parsed);
    if !x.is_finite() {
        return Err(Error::Parse(format!("non-finite decimal {text:?}")));
    }
    Ok(x)
}

/// Serde adapter: serialize a complex as an `[re, im]` pair of f64.
pub mod pair {
    use rug::Complex;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(z: &Complex, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(super::to_pair(z))
    }
}

/// Serde adapter for `Vec<Complex>` as a list of `[re, im]` pairs.
pub mod pairs {
    use rug::Complex;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(zs: &[Complex], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(zs.iter().map(super::to_pair))
    }
}

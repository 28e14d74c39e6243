//! Dense complex polynomials at a fixed working precision.

use std::ops::{Add, Mul, Neg, Sub};

use rug::{Assign, Complex, Float};
use serde::ser::{Serialize, Serializer};

use crate::combinatorics::binomial_exact;
use crate::error::{Error, Result};
use crate::scalar::{self, JsonComplex, Precision};

/// `coeffs[j]` is the coefficient of `z^j`.
///
/// The empty list is the zero polynomial. Trailing stored zeros are allowed
/// and ignored by [`Polynomial::degree`]. Also used for truncated power series.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex>,
    prec: Precision,
}

impl Polynomial {
    /// Rounds every coefficient to `prec`.
    pub fn new(prec: Precision, coeffs: Vec<Complex>) -> Self {
        let coeffs = coeffs
            .into_iter()
            .map(|c| Complex::with_val(prec.bits(), c))
            .collect();
        Polynomial { coeffs, prec }
    }

    pub fn zero(prec: Precision) -> Self {
        Polynomial {
            coeffs: Vec::new(),
            prec,
        }
    }

    pub fn constant(prec: Precision, c: Complex) -> Self {
        Self::new(prec, vec![c])
    }

    pub fn monomial(prec: Precision, k: usize) -> Self {
        let mut coeffs = vec![scalar::zero(prec); k + 1];
        coeffs[k] = scalar::one(prec);
        Polynomial { coeffs, prec }
    }

    pub fn from_f64(prec: Precision, coeffs: &[(f64, f64)]) -> Self {
        let coeffs = coeffs
            .iter()
            .map(|&(re, im)| scalar::complex(prec, re, im))
            .collect();
        Polynomial { coeffs, prec }
    }

    pub fn from_json(prec: Precision, coeffs: &[JsonComplex]) -> Result<Self> {
        let coeffs = coeffs
            .iter()
            .map(|c| c.to_complex(prec))
            .collect::<Result<_>>()?;
        Ok(Polynomial { coeffs, prec })
    }

    /// Monic `Π (z - λ_i)`.
    pub fn from_roots(prec: Precision, roots: &[Complex]) -> Self {
        let mut coeffs = vec![scalar::one(prec)];
        for root in roots {
            // multiply by (z - root) in place, highest degree first
            coeffs.push(scalar::zero(prec));
            for j in (0..coeffs.len()).rev() {
                let shifted = if j > 0 {
                    coeffs[j - 1].clone()
                } else {
                    scalar::zero(prec)
                };
                let prod = Complex::with_val(prec.bits(), &coeffs[j] * root);
                coeffs[j] = shifted - prod;
            }
        }
        Polynomial { coeffs, prec }
    }

    /// Dense `(z - α)^n` with exact binomial coefficients, each rounded once
    /// when multiplied by the power of `α`.
    pub fn shifted_power(alpha: &Complex, n: usize) -> Self {
        let prec = Precision::new(alpha.prec().0).unwrap_or_default();
        let neg_alpha = Complex::with_val(prec.bits(), -alpha);
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut power = scalar::one(prec);
        let mut lower = Vec::with_capacity(n + 1);
        for _ in 0..=n {
            lower.push(power.clone());
            power *= &neg_alpha;
        }
        // coefficient of z^j is C(n, j) (-α)^{n-j}
        for j in 0..=n {
            let c = binomial_exact(n as u64, j as u64);
            coeffs.push(Complex::with_val(prec.bits(), &lower[n - j] * &c));
        }
        Polynomial { coeffs, prec }
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex> {
        self.coeffs
    }

    /// Coefficient of `z^j`, zero past the stored length.
    pub fn coeff(&self, j: usize) -> Complex {
        self.coeffs
            .get(j)
            .cloned()
            .unwrap_or_else(|| scalar::zero(self.prec))
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    pub fn leading(&self) -> Option<&Complex> {
        self.degree().map(|d| &self.coeffs[d])
    }

    /// Drops stored trailing zeros.
    pub fn trimmed(mut self) -> Self {
        let len = self.degree().map_or(0, |d| d + 1);
        self.coeffs.truncate(len);
        self
    }

    /// Horner evaluation at working precision.
    pub fn evaluate(&self, x: &Complex) -> Result<Complex> {
        let value = self.evaluate_at(x, self.prec);
        scalar::ensure_finite(&value, "polynomial value")?;
        Ok(value)
    }

    /// Horner evaluation with an explicit working precision, unchecked.
    pub(crate) fn evaluate_at(&self, x: &Complex, prec: Precision) -> Complex {
        let mut acc = scalar::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// `Σ |a_j| |x|^j`, the scale against which evaluation error is measured.
    pub fn absolute_scale(&self, x_abs: &Float) -> Float {
        let mut acc = Float::new(x_abs.prec());
        let mut term = Float::new(x_abs.prec());
        for c in self.coeffs.iter().rev() {
            acc *= x_abs;
            term.assign(c.abs_ref());
            acc += &term;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| Complex::with_val(self.prec.bits(), c * j as u64))
            .collect();
        Polynomial {
            coeffs,
            prec: self.prec,
        }
    }

    pub fn scale(&self, factor: &Complex) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| Complex::with_val(self.prec.bits(), c * factor))
            .collect();
        Polynomial {
            coeffs,
            prec: self.prec,
        }
    }

    /// Divides by the leading coefficient. Errors on the zero polynomial.
    pub fn monic(&self) -> Result<Self> {
        let lead = self
            .leading()
            .ok_or_else(|| Error::Domain("zero polynomial has no leading coefficient".into()))?;
        let inv = Complex::with_val(self.prec.bits(), lead.recip_ref());
        Ok(self.scale(&inv).trimmed())
    }

    /// `max_j |a_j|`.
    pub fn norm_inf(&self) -> Float {
        self.coeffs
            .iter()
            .map(scalar::modulus)
            .max_by(|a, b| a.total_cmp(b))
            .unwrap_or_else(|| Float::new(self.prec.bits()))
    }

    pub fn to_pairs(&self) -> Vec<[f64; 2]> {
        self.coeffs.iter().map(scalar::to_pair).collect()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Complex, &Complex) -> Complex) -> Self {
        let prec = self.prec.max(other.prec);
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = scalar::zero(prec);
        let coeffs = (0..len)
            .map(|j| {
                let a = self.coeffs.get(j).unwrap_or(&zero);
                let b = other.coeffs.get(j).unwrap_or(&zero);
                f(a, b)
            })
            .collect();
        Polynomial { coeffs, prec }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let bits = self.prec.max(rhs.prec).bits();
        self.zip_with(rhs, |a, b| Complex::with_val(bits, a + b))
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let bits = self.prec.max(rhs.prec).bits();
        self.zip_with(rhs, |a, b| Complex::with_val(bits, a - b))
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        let coeffs = self.coeffs.iter().map(|c| -c.clone()).collect();
        Polynomial {
            coeffs,
            prec: self.prec,
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let prec = self.prec.max(rhs.prec);
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Polynomial::zero(prec);
        }
        let mut coeffs = vec![scalar::zero(prec); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += Complex::with_val(prec.bits(), a * b);
            }
        }
        Polynomial { coeffs, prec }
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        scalar::pairs::serialize(&self.coeffs, s)
    }
}

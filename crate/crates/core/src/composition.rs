//! Weighted composition structure of sampled linear maps.
//!
//! A map `T` on polynomials of degree `<= D` is known through the values
//! `(T z^k)(ζ_j)` on a grid in the unit disc. If `T` is a weighted
//! composition `Tf = ψ · (f ∘ φ)` then `ψ = T1` and `φ = Tz / ψ`, and each
//! row divided by its first entry is the moment sequence of a point
//! evaluation at `φ(ζ_j)`.

use rug::{Assign, Complex, Float};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functional::{MomentFunctional, RADIUS_SLACK};
use crate::poly::Polynomial;
use crate::scalar::{self, JsonComplex, Precision};

/// Default degree cap `D`.
pub const DEFAULT_DEGREE: usize = 24;

/// `ψ(ζ_j)` counts as zero below this fraction of the largest matrix entry.
pub const PSI_ZERO_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SampleGrid {
    #[serde(serialize_with = "scalar::pairs::serialize")]
    points: Vec<Complex>,
}

impl SampleGrid {
    /// Every point must lie in the open unit disc.
    pub fn new(points: Vec<Complex>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Domain("sample grid is empty".into()));
        }
        for (j, z) in points.iter().enumerate() {
            scalar::ensure_finite(z, "grid point")?;
            if scalar::modulus(z) >= 1 {
                return Err(Error::Domain(format!(
                    "grid point {j} = {} is outside the open unit disc",
                    scalar::describe(z)
                )));
            }
        }
        Ok(SampleGrid { points })
    }

    /// `r e^{2πi a/angles}` for each radius and `a = 0..angles`.
    pub fn polar(prec: Precision, radii: &[f64], angles: usize) -> Result<Self> {
        let two_pi = scalar::pi(prec) * 2u32;
        let mut points = Vec::with_capacity(radii.len() * angles);
        for &r in radii {
            for a in 0..angles {
                let theta = Float::with_val(prec.bits(), &two_pi * a as u32) / angles as u32;
                points.push(scalar::unit(prec, &theta) * r);
            }
        }
        Self::new(points)
    }

    /// 8 radii `0.1, …, 0.8` times 8 angles.
    pub fn standard(prec: Precision) -> Self {
        let radii: Vec<f64> = (1..=8).map(|i| i as f64 / 10.0).collect();
        Self::polar(prec, &radii, 8).expect("radii below 1")
    }

    pub fn points(&self) -> &[Complex] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// `M[j][k] = (T z^k)(ζ_j)` for `k = 0..=D`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledLinearMap {
    grid: SampleGrid,
    degree: usize,
    matrix: Vec<Vec<Complex>>,
    prec: Precision,
}

#[derive(Deserialize)]
struct MapFile {
    grid: Vec<JsonComplex>,
    degree: usize,
    matrix: Vec<Vec<JsonComplex>>,
}

impl SampledLinearMap {
    pub fn new(prec: Precision, grid: SampleGrid, degree: usize, matrix: Vec<Vec<Complex>>) -> Result<Self> {
        if matrix.len() != grid.len() {
            return Err(Error::Domain(format!(
                "matrix has {} rows for {} grid points",
                matrix.len(),
                grid.len()
            )));
        }
        for (j, row) in matrix.iter().enumerate() {
            if row.len() != degree + 1 {
                return Err(Error::Domain(format!(
                    "row {j} has {} entries, expected D + 1 = {}",
                    row.len(),
                    degree + 1
                )));
            }
            for z in row {
                scalar::ensure_finite(z, "matrix entry")?;
            }
        }
        Ok(SampledLinearMap { grid, degree, matrix, prec })
    }

    /// `M[j][k] = entry(k, ζ_j)`.
    pub fn from_fn(
        prec: Precision,
        grid: SampleGrid,
        degree: usize,
        entry: impl Fn(usize, &Complex) -> Complex,
    ) -> Result<Self> {
        let matrix = grid
            .points()
            .iter()
            .map(|z| (0..=degree).map(|k| Complex::with_val(prec.bits(), entry(k, z))).collect())
            .collect();
        Self::new(prec, grid, degree, matrix)
    }

    /// `Tf = ψ · (f ∘ φ)`, so `M[j][k] = ψ(ζ_j) φ(ζ_j)^k`.
    pub fn weighted_composition(
        prec: Precision,
        grid: SampleGrid,
        degree: usize,
        psi: impl Fn(&Complex) -> Complex,
        phi: impl Fn(&Complex) -> Complex,
    ) -> Result<Self> {
        let matrix = grid
            .points()
            .iter()
            .map(|z| {
                let mut term = Complex::with_val(prec.bits(), psi(z));
                let w = Complex::with_val(prec.bits(), phi(z));
                (0..=degree)
                    .map(|_| {
                        let out = term.clone();
                        term *= &w;
                        out
                    })
                    .collect()
            })
            .collect();
        Self::new(prec, grid, degree, matrix)
    }

    /// `{"grid": [[re, im], …], "degree": D, "matrix": [[[re, im], …], …]}`.
    pub fn from_json(prec: Precision, text: &str) -> Result<Self> {
        let file: MapFile = serde_json::from_str(text)?;
        let convert = |v: &[JsonComplex]| v.iter().map(|e| e.to_complex(prec)).collect::<Result<Vec<_>>>();
        let grid = SampleGrid::new(convert(&file.grid)?)?;
        let matrix = file
            .matrix
            .iter()
            .map(|row| convert(row))
            .collect::<Result<Vec<_>>>()?;
        Self::new(prec, grid, file.degree, matrix)
    }

    pub fn grid(&self) -> &SampleGrid {
        &self.grid
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn matrix(&self) -> &[Vec<Complex>] {
        &self.matrix
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    /// `(Tf)(ζ_j)` for every grid point.
    pub fn apply_polynomial(&self, f: &Polynomial) -> Result<Vec<Complex>> {
        let Some(d) = f.degree() else {
            return Ok(vec![scalar::zero(self.prec); self.grid.len()]);
        };
        if d > self.degree {
            return Err(Error::Truncation { degree: d, order: self.degree });
        }
        let mut term = scalar::zero(self.prec);
        Ok(self
            .matrix
            .iter()
            .map(|row| {
                let mut acc = scalar::zero(self.prec);
                for (a, m) in f.coeffs()[..=d].iter().zip(row) {
                    term.assign(a * m);
                    acc += &term;
                }
                acc
            })
            .collect())
    }

    /// Largest entry modulus over the whole matrix. Each row of a weighted
    /// composition carries the factor `ψ(ζ_j)`, so a row-relative threshold
    /// could never see `ψ` vanish.
    fn matrix_max(&self) -> f64 {
        self.matrix
            .iter()
            .flatten()
            .map(scalar::modulus_f64)
            .fold(0.0, f64::max)
    }

    fn check_psi(&self, j: usize, matrix_max: f64) -> Result<()> {
        let psi = scalar::modulus_f64(&self.matrix[j][0]);
        if matrix_max == 0.0 || psi <= PSI_ZERO_TOLERANCE * matrix_max {
            return Err(Error::HypothesisViolation {
                index: j,
                point: scalar::describe(&self.grid.points[j]),
                reason: format!("psi = T1 vanishes ({psi:e} against matrix max {matrix_max:e})"),
            });
        }
        Ok(())
    }

    /// `ψ = T1` and `φ = Tz / ψ` on the grid. Fails at the first point
    /// where `ψ` vanishes or `|φ| >= r`.
    pub fn detect_symbols(&self, r: f64) -> Result<SymbolPair> {
        if self.degree == 0 {
            return Err(Error::Domain("symbol detection needs D >= 1".into()));
        }
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::Domain(format!("radius must be positive, got {r}")));
        }
        let matrix_max = self.matrix_max();
        let mut psi_samples = Vec::with_capacity(self.grid.len());
        let mut phi_samples = Vec::with_capacity(self.grid.len());
        for (j, row) in self.matrix.iter().enumerate() {
            self.check_psi(j, matrix_max)?;
            let phi = Complex::with_val(self.prec.bits(), &row[1] / &row[0]);
            let modulus = scalar::modulus_f64(&phi);
            if modulus >= r * (1.0 - RADIUS_SLACK) {
                return Err(Error::RangeViolation {
                    index: j,
                    point: scalar::describe(&self.grid.points[j]),
                    modulus,
                    radius: r,
                });
            }
            psi_samples.push(row[0].clone());
            phi_samples.push(phi);
        }
        Ok(SymbolPair {
            psi_samples,
            phi_samples,
            domain_radius: r,
        })
    }

    /// `T_ζ f = (Tf)(ζ_j) / ψ(ζ_j)` as moments `M[j][k] / M[j][0]`.
    pub fn per_point_functional(&self, j: usize) -> Result<MomentFunctional> {
        if j >= self.grid.len() {
            return Err(Error::Domain(format!("grid index {j} out of range 0..{}", self.grid.len())));
        }
        self.check_psi(j, self.matrix_max())?;
        let row = &self.matrix[j];
        let moments = row
            .iter()
            .map(|m| Complex::with_val(self.prec.bits(), m / &row[0]))
            .collect();
        MomentFunctional::normalized(self.prec, moments)
    }

    /// `max_j |(Tf)(ζ_j) - ψ(ζ_j) f(φ(ζ_j))| / (1 + |(Tf)(ζ_j)|)`.
    pub fn verify_factorization(&self, symbols: &SymbolPair, f: &Polynomial) -> Result<f64> {
        if symbols.psi_samples.len() != self.grid.len() {
            return Err(Error::Domain("symbol samples do not match the grid".into()));
        }
        let tf = self.apply_polynomial(f)?;
        let mut worst = 0.0f64;
        for ((t, psi), phi) in tf.iter().zip(&symbols.psi_samples).zip(&symbols.phi_samples) {
            let rhs = Complex::with_val(self.prec.bits(), psi * f.evaluate(phi)?);
            let diff = scalar::modulus_f64(&Complex::with_val(self.prec.bits(), t - &rhs));
            worst = worst.max(diff / (1.0 + scalar::modulus_f64(t)));
        }
        Ok(worst)
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SymbolPair {
    #[serde(serialize_with = "scalar::pairs::serialize")]
    pub psi_samples: Vec<Complex>,
    #[serde(serialize_with = "scalar::pairs::serialize")]
    pub phi_samples: Vec<Complex>,
    pub domain_radius: f64,
}

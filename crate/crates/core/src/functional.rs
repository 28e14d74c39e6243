//! Moment functionals and the GKZ polynomial machinery.
//!
//! A linear functional on polynomials is stored as its moments
//! `m_k = F(z^k)` up to a truncation order `K`. Its degree-`n` GKZ
//! polynomial is `p(t) = F((t - z)^n) = Σ_j (-1)^j C(n,j) m_j t^{n-j}`,
//! whose roots `λ_i` satisfy `e_k(λ) = C(n,k) m_k`. When no root reaches
//! modulus `r` for any `n`, the defect `|(n m_1)^k - k! C(n,k) m_k|` stays
//! below `k! (C(n+k-1,n-1) - C(n,k)) r^k`, which forces `m_k = m_1^k`.

use std::cmp::Ordering;
use std::io::Write;

use rug::ops::Pow;
use rug::{Complex, Float, Integer};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial_exact, count_monomial_terms, factorial_exact};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::roots::{find_roots, RootSet};
use crate::scalar::{self, JsonComplex, Precision};
use crate::symmetric::elementary_symmetric;

/// Default truncation order `K`.
pub const DEFAULT_TRUNCATION: usize = 512;

/// Relative slack on the scan radius and on per-n radii.
pub const RADIUS_SLACK: f64 = 1e-9;

/// Falsifier residuals must satisfy `|F((z-λ)^n)| <= this · ‖p‖∞`.
pub const FALSIFIER_RESIDUAL: f64 = 1e-6;

/// `F` on polynomials of degree `<= K`, by its moments.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentFunctional {
    moments: Vec<Complex>,
    prec: Precision,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MomentFile {
    Bare(Vec<JsonComplex>),
    Object { moments: Vec<JsonComplex> },
}

impl MomentFunctional {
    /// Needs at least `m_0` and `m_1`.
    pub fn new(prec: Precision, moments: Vec<Complex>) -> Result<Self> {
        if moments.len() < 2 {
            return Err(Error::Domain(format!(
                "a moment functional needs truncation order K >= 1, got {} moments",
                moments.len()
            )));
        }
        let moments: Vec<Complex> = moments
            .into_iter()
            .map(|m| Complex::with_val(prec.bits(), m))
            .collect();
        for m in &moments {
            scalar::ensure_finite(m, "moment")?;
        }
        Ok(MomentFunctional { moments, prec })
    }

    /// As [`MomentFunctional::new`], additionally requiring `F(1) = 1`.
    pub fn normalized(prec: Precision, moments: Vec<Complex>) -> Result<Self> {
        let f = Self::new(prec, moments)?;
        f.require_normalized()?;
        Ok(f)
    }

    /// Point evaluation `f ↦ f(w)`: `m_k = w^k`.
    pub fn point_evaluation(w: &Complex, order: usize) -> Result<Self> {
        let prec = Precision::new(w.prec().0)?;
        let mut moments = Vec::with_capacity(order + 1);
        let mut power = scalar::one(prec);
        for _ in 0..=order {
            moments.push(power.clone());
            power *= w;
        }
        Self::new(prec, moments)
    }

    /// `Σ c_i δ_{z_i}`: `m_k = Σ c_i z_i^k`.
    pub fn mixture(prec: Precision, components: &[(Complex, Complex)], order: usize) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Domain("mixture needs at least one component".into()));
        }
        let mut moments = vec![scalar::zero(prec); order + 1];
        for (weight, point) in components {
            let mut term = Complex::with_val(prec.bits(), weight);
            for m in moments.iter_mut() {
                *m += &term;
                term *= point;
            }
        }
        Self::new(prec, moments)
    }

    /// Reads `[[re, im], …]` or `{"moments": [[re, im], …]}`. Entries may
    /// be numbers or decimal strings.
    pub fn from_json(prec: Precision, text: &str) -> Result<Self> {
        let entries = match serde_json::from_str::<MomentFile>(text)? {
            MomentFile::Bare(v) => v,
            MomentFile::Object { moments } => moments,
        };
        let moments = entries
            .iter()
            .map(|e| e.to_complex(prec))
            .collect::<Result<Vec<_>>>()?;
        Self::new(prec, moments)
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn moments(&self) -> &[Complex] {
        &self.moments
    }

    pub fn moment(&self, k: usize) -> Result<&Complex> {
        self.moments.get(k).ok_or(Error::Truncation {
            degree: k,
            order: self.truncation_order(),
        })
    }

    /// `K`, the highest stored moment index.
    pub fn truncation_order(&self) -> usize {
        self.moments.len() - 1
    }

    /// `m_0 = 1` up to a few units in the last place.
    pub fn is_normalized(&self) -> bool {
        let diff = Complex::with_val(self.prec.bits(), &self.moments[0] - 1);
        scalar::modulus_f64(&diff) <= 8.0 * self.prec.epsilon()
    }

    fn require_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::NotNormalized(scalar::describe(&self.moments[0])))
        }
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.truncation_order() {
            return Err(Error::Truncation {
                degree: n,
                order: self.truncation_order(),
            });
        }
        Ok(())
    }

    /// `F(Σ a_k z^k) = Σ a_k m_k`.
    pub fn apply(&self, p: &Polynomial) -> Result<Complex> {
        let Some(degree) = p.degree() else {
            return Ok(scalar::zero(self.prec));
        };
        self.check_degree(degree)?;
        let mut acc = scalar::zero(self.prec);
        let mut term = scalar::zero(self.prec);
        for (a, m) in p.coeffs()[..=degree].iter().zip(&self.moments) {
            rug::Assign::assign(&mut term, a * m);
            acc += &term;
        }
        scalar::ensure_finite(&acc, "F(p)")?;
        Ok(acc)
    }

    /// `p(t) = F((t - z)^n)`, degree `n` in `t`.
    pub fn gkz_polynomial(&self, n: usize) -> Result<Polynomial> {
        if n == 0 {
            return Err(Error::Domain("GKZ polynomial needs n >= 1".into()));
        }
        self.require_normalized()?;
        self.check_degree(n)?;
        let bits = self.prec.bits();
        let mut coeffs = vec![scalar::zero(self.prec); n + 1];
        for j in 0..=n {
            let c = binomial_exact(n as u64, j as u64);
            let mut term = Complex::with_val(bits, &self.moments[j] * &c);
            if j % 2 == 1 {
                term = -term;
            }
            coeffs[n - j] = term;
        }
        Ok(Polynomial::new(self.prec, coeffs))
    }

    /// `F((z - α)^n)` through the expansion of `(z - α)^n`.
    ///
    /// Equals `(-1)^n p(α)` for the GKZ polynomial `p`; both routes exist
    /// so the identity can be checked.
    pub fn apply_shifted_power(&self, alpha: &Complex, n: usize) -> Result<Complex> {
        self.check_degree(n)?;
        let alpha = Complex::with_val(self.prec.bits(), alpha);
        self.apply(&Polynomial::shifted_power(&alpha, n))
    }

    /// `max_{k <= k_max} |m_k - m_1^k|`.
    pub fn max_multiplicative_defect(&self, k_max: usize) -> Result<f64> {
        self.check_degree(k_max)?;
        let w = &self.moments[1];
        let mut power = scalar::one(self.prec);
        let mut worst = 0.0f64;
        for m in &self.moments[..=k_max] {
            let d = Complex::with_val(self.prec.bits(), m - &power);
            worst = worst.max(scalar::modulus_f64(&d));
            power *= w;
        }
        Ok(worst)
    }

    /// Residuals `|e_k(λ) - C(n,k) m_k|` for `k = 1..=k_max`, `λ` the roots
    /// of the degree-`n` GKZ polynomial.
    pub fn vieta_check(&self, n: usize, k_max: usize) -> Result<Vec<f64>> {
        if k_max >= n {
            return Err(Error::Domain(format!("vieta check needs k_max < n, got {k_max} >= {n}")));
        }
        let p = self.gkz_polynomial(n)?;
        let roots = find_roots(&p).map_err(|e| Error::at_degree(n, e))?;
        self.vieta_residuals(&roots, n, k_max)
    }

    fn vieta_residuals(&self, roots: &RootSet, n: usize, k_max: usize) -> Result<Vec<f64>> {
        (1..=k_max)
            .map(|k| {
                let e = elementary_symmetric(roots, k)?;
                let expected = Complex::with_val(
                    self.prec.bits(),
                    &self.moments[k] * binomial_exact(n as u64, k as u64),
                );
                Ok(scalar::modulus_f64(&Complex::with_val(
                    self.prec.bits(),
                    &e - &expected,
                )))
            })
            .collect()
    }

    /// Defect `|(n m_1)^k - k! C(n,k) m_k|` against the bound
    /// `k! (C(n+k-1, n-1) - C(n,k)) r^k`.
    pub fn defect_and_bound(&self, n: usize, k: usize, r: f64) -> Result<DefectBound> {
        if k == 0 || k >= n {
            return Err(Error::Domain(format!("defect needs 1 <= k < n, got k = {k}, n = {n}")));
        }
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::Domain(format!("radius must be positive, got {r}")));
        }
        self.check_degree(n)?;
        let bits = self.prec.bits();

        let n_m1 = Complex::with_val(bits, &self.moments[1] * n as u32);
        let lhs = n_m1.pow(k as u32);
        // k! C(n,k) = n (n-1) … (n-k+1), exact
        let falling = Integer::from(factorial_exact(k as u64) * binomial_exact(n as u64, k as u64));
        let rhs = Complex::with_val(bits, &self.moments[k] * &falling);
        let defect = Float::with_val(bits, Complex::with_val(bits, lhs - rhs).abs_ref());

        let counts = count_monomial_terms(n as u64, k as u64)?;
        let weight = Integer::from(factorial_exact(k as u64) * counts.excess());
        let bound = Float::with_val(bits, Float::with_val(bits, r).pow(k as u32) * &weight);

        Ok(DefectBound {
            n,
            k,
            radius: r,
            defect,
            bound,
        })
    }

    /// Everything about one degree `n`: GKZ polynomial, roots, Vieta
    /// residuals up to `k_max`, and defect rows `k < n` at the per-n radius.
    pub fn gkz_report(&self, n: usize, k_max: usize) -> Result<GkzReport> {
        let gkz_poly = self.gkz_polynomial(n)?;
        let roots = find_roots(&gkz_poly).map_err(|e| Error::at_degree(n, e))?;
        let max_root_modulus = roots.max_modulus();
        let k_max = k_max.min(n - 1);
        let vieta_residuals = self.vieta_residuals(&roots, n, k_max)?;
        let radius = per_n_radius(max_root_modulus);
        let defect_rows = (1..=k_max)
            .map(|k| self.defect_and_bound(n, k, radius).map(DefectRow::from))
            .collect::<Result<Vec<_>>>()?;
        Ok(GkzReport {
            n,
            gkz_poly,
            roots,
            max_root_modulus,
            radius,
            vieta_residuals,
            defect_rows,
        })
    }

    /// Searches `n = 1..=n_max` for GKZ roots of modulus `>= r`.
    ///
    /// A root only counts as a falsifier when its inclusion component lies
    /// outside `r (1 - 1e-9)` and `|F((z - λ)^n)|` re-verifies as small.
    /// Roots past the radius whose inclusion discs reach back inside are
    /// listed as unresolved: the data cannot tell them from a cluster
    /// split by rounding.
    pub fn hypothesis_scan(&self, r: f64, n_max: usize) -> Result<WitnessReport> {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::Domain(format!("radius must be positive, got {r}")));
        }
        if n_max == 0 {
            return Err(Error::Domain("scan needs n_max >= 1".into()));
        }
        self.require_normalized()?;
        self.check_degree(n_max)?;

        let threshold = r * (1.0 - RADIUS_SLACK);
        let mut falsifiers = Vec::new();
        let mut unresolved = Vec::new();
        let mut max_root_moduli = Vec::with_capacity(n_max);

        for n in 1..=n_max {
            let p = self.gkz_polynomial(n)?;
            let roots = find_roots(&p).map_err(|e| Error::at_degree(n, e))?;
            max_root_moduli.push(roots.max_modulus());

            let beyond = roots
                .roots()
                .iter()
                .filter(|z| scalar::modulus_f64(z) >= threshold)
                .count();
            if beyond == 0 {
                continue;
            }
            let scale = p.norm_inf().to_f64();
            let mut certified = 0;
            for i in roots.certified_outside(threshold) {
                let alpha = &roots.roots()[i];
                let residual = scalar::modulus_f64(&self.apply_shifted_power(alpha, n)?);
                if residual <= FALSIFIER_RESIDUAL * scale {
                    certified += 1;
                    falsifiers.push(Falsifier {
                        n,
                        alpha: alpha.clone(),
                        modulus: scalar::modulus_f64(alpha),
                        residual,
                        inclusion_radius: roots.inclusion_radii()[i],
                    });
                }
            }
            if beyond > certified {
                unresolved.push(UnresolvedRoots {
                    n,
                    count: beyond - certified,
                });
            }
        }

        falsifiers.sort_by(|a, b| {
            a.n.cmp(&b.n).then_with(|| {
                let (ta, tb) = (arg(&a.alpha), arg(&b.alpha));
                ta.partial_cmp(&tb).unwrap_or(Ordering::Equal)
            })
        });

        Ok(WitnessReport {
            witness: self.moments[1].clone(),
            radius: r,
            n_max,
            max_defect: self.max_multiplicative_defect(n_max)?,
            scan_passed: falsifiers.is_empty(),
            falsifiers,
            unresolved,
            max_root_moduli,
        })
    }

    /// Normalized defect and bound for each `n` in `n_list`.
    pub fn convergence_table(
        &self,
        k: usize,
        n_list: &[usize],
        mode: RadiusMode,
    ) -> Result<Vec<ConvergenceRow>> {
        n_list
            .iter()
            .map(|&n| {
                if n <= k {
                    return Err(Error::Domain(format!("table rows need n > k, got n = {n}, k = {k}")));
                }
                let radius = match mode {
                    RadiusMode::Fixed(r) => r,
                    RadiusMode::PerN => {
                        let p = self.gkz_polynomial(n)?;
                        let roots = find_roots(&p).map_err(|e| Error::at_degree(n, e))?;
                        per_n_radius(roots.max_modulus())
                    }
                };
                let row = self.defect_and_bound(n, k, radius)?;
                Ok(ConvergenceRow {
                    n,
                    defect_over_nk: row.defect_over_nk(),
                    bound_over_nk: row.bound_over_nk(),
                    radius,
                    holds: row.holds(),
                })
            })
            .collect()
    }
}

/// `r = maxRootModulus · (1 + 1e-9)`, floored so that it stays positive.
pub fn per_n_radius(max_root_modulus: f64) -> f64 {
    (max_root_modulus * (1.0 + RADIUS_SLACK)).max(f64::MIN_POSITIVE)
}

fn arg(z: &Complex) -> f64 {
    let [re, im] = scalar::to_pair(z);
    im.atan2(re)
}

/// Radius used by the defect bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RadiusMode {
    Fixed(f64),
    /// The observed largest GKZ root modulus at each `n`, times `1 + 1e-9`.
    PerN,
}

#[derive(Clone, Debug)]
pub struct DefectBound {
    pub n: usize,
    pub k: usize,
    pub radius: f64,
    pub defect: Float,
    pub bound: Float,
}

impl DefectBound {
    pub fn holds(&self) -> bool {
        self.defect <= self.bound
    }

    fn over_nk(&self, x: &Float) -> f64 {
        let nk = Float::with_val(x.prec(), self.n as u32).pow(self.k as u32);
        Float::with_val(x.prec(), x / &nk).to_f64()
    }

    pub fn defect_over_nk(&self) -> f64 {
        self.over_nk(&self.defect)
    }

    pub fn bound_over_nk(&self) -> f64 {
        self.over_nk(&self.bound)
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DefectRow {
    pub k: usize,
    pub defect: f64,
    pub bound: f64,
    /// `false` marks a numerical fault: the inequality is a theorem.
    pub holds: bool,
}

impl From<DefectBound> for DefectRow {
    fn from(d: DefectBound) -> Self {
        DefectRow {
            k: d.k,
            defect: d.defect.to_f64(),
            bound: d.bound.to_f64(),
            holds: d.holds(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GkzReport {
    pub n: usize,
    pub gkz_poly: Polynomial,
    pub roots: RootSet,
    pub max_root_modulus: f64,
    /// Radius used for `defect_rows`.
    pub radius: f64,
    pub vieta_residuals: Vec<f64>,
    pub defect_rows: Vec<DefectRow>,
}

impl GkzReport {
    pub fn violations(&self) -> impl Iterator<Item = &DefectRow> {
        self.defect_rows.iter().filter(|r| !r.holds)
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Falsifier {
    pub n: usize,
    #[serde(serialize_with = "scalar::pair::serialize")]
    pub alpha: Complex,
    pub modulus: f64,
    /// `|F((z - α)^n)|` recomputed through the expansion of `(z - α)^n`.
    pub residual: f64,
    pub inclusion_radius: f64,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct UnresolvedRoots {
    pub n: usize,
    pub count: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct WitnessReport {
    /// Always `m_1 = F(z)`.
    #[serde(serialize_with = "scalar::pair::serialize")]
    pub witness: Complex,
    pub radius: f64,
    pub n_max: usize,
    /// `max_{k <= n_max} |m_k - m_1^k|`; a finite scan can bound this but
    /// never prove it zero.
    pub max_defect: f64,
    pub scan_passed: bool,
    pub falsifiers: Vec<Falsifier>,
    pub unresolved: Vec<UnresolvedRoots>,
    /// Largest GKZ root modulus for `n = 1..=n_max`.
    pub max_root_moduli: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConvergenceRow {
    pub n: usize,
    pub defect_over_nk: f64,
    pub bound_over_nk: f64,
    pub radius: f64,
    pub holds: bool,
}

/// CSV with header `n,defect_over_nk,bound_over_nk`, LF line endings.
pub fn write_convergence_csv<W: Write>(rows: &[ConvergenceRow], mut out: W) -> std::io::Result<()> {
    out.write_all(b"n,defect_over_nk,bound_over_nk\n")?;
    for row in rows {
        writeln!(out, "{},{},{}", row.n, row.defect_over_nk, row.bound_over_nk)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prec() -> Precision {
        Precision::DEFAULT
    }

    fn c(re: f64, im: f64) -> Complex {
        scalar::complex(prec(), re, im)
    }

    fn half_mixture(order: usize) -> MomentFunctional {
        MomentFunctional::mixture(prec(), &[(c(0.5, 0.0), c(0.0, 0.0)), (c(0.5, 0.0), c(0.5, 0.0))], order)
            .unwrap()
    }

    fn dist(a: &Complex, b: &Complex) -> f64 {
        scalar::modulus_f64(&Complex::with_val(113, a - b))
    }

    #[test]
    fn apply_examples() {
        let w = c(0.3, -0.4);
        let f = MomentFunctional::point_evaluation(&w, 8).unwrap();
        let p = Polynomial::from_f64(prec(), &[(1.0, 0.0), (-2.0, 1.0), (0.0, 0.0), (3.0, 0.0)]);
        assert!(dist(&f.apply(&p).unwrap(), &p.evaluate(&w).unwrap()) < 1e-30);

        let one = Polynomial::constant(prec(), scalar::one(prec()));
        assert_eq!(scalar::to_pair(&half_mixture(4).apply(&one).unwrap()), [1.0, 0.0]);

        let sq = Polynomial::monomial(prec(), 2);
        assert_eq!(scalar::to_pair(&half_mixture(4).apply(&sq).unwrap()), [0.125, 0.0]);
    }

    #[test]
    fn apply_past_truncation_fails() {
        let f = half_mixture(3);
        assert!(matches!(
            f.apply(&Polynomial::monomial(prec(), 4)),
            Err(Error::Truncation { degree: 4, order: 3 })
        ));
    }

    #[test]
    fn gkz_polynomial_examples() {
        let w = c(0.25, 0.5);
        let f = MomentFunctional::point_evaluation(&w, 6).unwrap();
        let p = f.gkz_polynomial(5).unwrap();
        let expected = Polynomial::shifted_power(&w, 5);
        for (a, b) in p.coeffs().iter().zip(expected.coeffs()) {
            assert!(dist(a, b) < 1e-30);
        }

        let f = half_mixture(4);
        assert_eq!(f.gkz_polynomial(1).unwrap().to_pairs(), vec![[-0.25, 0.0], [1.0, 0.0]]);
        assert_eq!(
            f.gkz_polynomial(2).unwrap().to_pairs(),
            vec![[0.125, 0.0], [-0.5, 0.0], [1.0, 0.0]]
        );
    }

    #[test]
    fn unnormalized_functional_is_rejected_for_gkz() {
        let f = MomentFunctional::new(prec(), vec![c(2.0, 0.0), c(1.0, 0.0), c(0.5, 0.0)]).unwrap();
        assert!(matches!(f.gkz_polynomial(1), Err(Error::NotNormalized(_))));
        assert!(MomentFunctional::normalized(prec(), vec![c(2.0, 0.0), c(1.0, 0.0)]).is_err());
        assert!(MomentFunctional::new(prec(), vec![c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn shifted_power_examples() {
        let f = MomentFunctional::point_evaluation(&c(0.0, 0.0), 6).unwrap();
        let alpha = c(0.7, 0.2);
        let expected = scalar::powu(&Complex::with_val(113, -&alpha), 5);
        assert!(dist(&f.apply_shifted_power(&alpha, 5).unwrap(), &expected) < 1e-30);

        let f = MomentFunctional::point_evaluation(&c(0.5, 0.0), 6).unwrap();
        assert_eq!(scalar::to_pair(&f.apply_shifted_power(&c(1.0, 0.0), 3).unwrap()), [-0.125, 0.0]);

        // λ = ω / (2(ω - 1)) with ω = e^{iπ/7} solves t^7 = -(t - 1/2)^7
        let theta = std::f64::consts::PI / 7.0;
        let omega = c(theta.cos(), theta.sin());
        let lambda = Complex::with_val(
            113,
            &omega / Complex::with_val(113, (&omega - scalar::one(prec())) * 2u32),
        );
        let v = half_mixture(8).apply_shifted_power(&lambda, 7).unwrap();
        assert!(scalar::modulus_f64(&v) < 1e-8);
    }

    #[test]
    fn defect_and_bound_examples() {
        let f = MomentFunctional::point_evaluation(&c(0.5, 0.0), 200).unwrap();
        let d = f.defect_and_bound(10, 2, 0.5).unwrap();
        assert_eq!(d.defect.to_f64(), 2.5);
        assert_eq!(d.bound.to_f64(), 5.0);
        assert!(d.holds());

        let d = f.defect_and_bound(100, 2, 0.5).unwrap();
        assert!((d.defect_over_nk() - 0.0025).abs() < 1e-15);
        assert!((d.bound_over_nk() - 0.005).abs() < 1e-15);

        let zero = MomentFunctional::point_evaluation(&c(0.0, 0.0), 20).unwrap();
        for k in 1..5 {
            let d = zero.defect_and_bound(12, k, 0.3).unwrap();
            assert!(d.defect.is_zero() && d.holds());
        }
        assert!(f.defect_and_bound(5, 5, 1.0).is_err());
    }

    #[test]
    fn k_equal_one_defect_is_zero() {
        let f = half_mixture(60);
        let rows = f.convergence_table(1, &[10, 20, 50], RadiusMode::Fixed(1.0)).unwrap();
        assert!(rows.iter().all(|r| r.defect_over_nk == 0.0));
    }

    #[test]
    fn scan_point_evaluation_passes() {
        let w = c(0.3, 0.0);
        let f = MomentFunctional::point_evaluation(&w, 30).unwrap();
        let report = f.hypothesis_scan(1.0, 30).unwrap();
        assert!(report.scan_passed);
        assert!(report.falsifiers.is_empty());
        assert!(dist(&report.witness, &w) < 1e-30);
        assert!(report.max_defect <= 1e-25);
    }

    #[test]
    fn scan_half_mixture() {
        let f = half_mixture(10);
        let report = f.hypothesis_scan(1.0, 10).unwrap();
        assert!(!report.scan_passed);
        let first = &report.falsifiers[0];
        assert_eq!(first.n, 7);
        let expected = 1.0 / (4.0 * (std::f64::consts::PI / 14.0).sin());
        assert!((first.modulus - expected).abs() < 1e-12);
        assert!(report.falsifiers.windows(2).all(|w| w[0].n <= w[1].n));

        let report = f.hypothesis_scan(2.0, 10).unwrap();
        assert!(report.scan_passed);
        assert!((report.max_defect - 0.0625).abs() < 1e-3);
    }

    #[test]
    fn vieta_examples() {
        let f = half_mixture(4);
        let r = f.vieta_check(2, 1).unwrap();
        assert!(r[0] <= 1e-10);
        let w = c(-0.4, 0.35);
        let f = MomentFunctional::point_evaluation(&w, 30).unwrap();
        for r in f.vieta_check(30, 5).unwrap() {
            assert!(r <= 1e-8, "{r}");
        }
        assert!(f.vieta_check(5, 5).is_err());
    }

    #[test]
    fn report_rows_only_below_n() {
        let f = half_mixture(12);
        let report = f.gkz_report(3, 6).unwrap();
        assert_eq!(report.defect_rows.len(), 2);
        assert_eq!(report.gkz_poly.degree(), Some(3));
        assert_eq!(report.violations().count(), 0);
    }

    #[test]
    fn csv_format() {
        let f = MomentFunctional::point_evaluation(&c(0.5, 0.0), 200).unwrap();
        let rows = f.convergence_table(2, &[10, 100], RadiusMode::Fixed(0.5)).unwrap();
        let mut buf = Vec::new();
        write_convergence_csv(&rows, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "n,defect_over_nk,bound_over_nk\n10,0.025,0.05\n100,0.0025,0.005\n"
        );
    }

    #[test]
    fn moment_file_shapes() {
        let a = MomentFunctional::from_json(prec(), "[[1,0],[0.9,0],[0.81,0]]").unwrap();
        let b = MomentFunctional::from_json(prec(), r#"{"moments": [[1,0],["0.9","0"],[0.81,0]]}"#)
            .unwrap();
        assert_eq!(a.truncation_order(), 2);
        assert!(dist(a.moment(1).unwrap(), b.moment(1).unwrap()) < 1e-15);
        assert!(MomentFunctional::from_json(prec(), "[[1,0]]").is_err());
        assert!(MomentFunctional::from_json(prec(), "{oops").is_err());
    }
}

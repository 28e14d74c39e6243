//! Weighted Hardy spaces `H²(β)`.
//!
//! `‖z^n‖ = β_n` with `β_0 = 1`. The shift `M_z` sends `z^n` to `z^{n+1}`,
//! so its weights are `w_n = β_{n+1}/β_n`. Everything here works on a
//! truncation `β_0..=β_N` and reports finite-sample proxies for the
//! asymptotic quantities, together with the window that produced them.
//! Weights are kept as MPFR floats: `1/n!` leaves the f64 range long
//! before `N = 2048`.

use std::path::Path;

use rug::{Assign, Complex, Float};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{self, Precision};

/// Default truncation `N`.
pub const DEFAULT_TRUNCATION: usize = 2048;

/// Square-summability heuristic: last-quarter tail of `Σ w_n²` over total.
pub const SQUARE_SUM_TAIL: f64 = 1e-3;

/// Kernel convergence heuristic: last-quarter tail of `Σ |w|^{2n}/β_n²`.
pub const KERNEL_TAIL: f64 = 1e-6;

/// Where a weight sequence came from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Generator {
    Explicit,
    Classical,
    /// Products of shift weights `w_n = 1/(n+1)`, so `β_n = 1/n!`.
    Reciprocal,
    /// Constant shift weight `q`, so `β_n = q^n`.
    Geometric { q: f64 },
    /// Products of caller-supplied shift weights.
    Custom,
}

/// Shift weights for [`donoghue_weights`].
#[derive(Clone, Debug, PartialEq)]
pub enum DonoghueKind {
    Reciprocal,
    Geometric(f64),
    Custom(Vec<f64>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightSequence {
    beta: Vec<Float>,
    generator: Generator,
    prec: Precision,
}

impl WeightSequence {
    /// `β_0` must be 1 and every entry positive and finite.
    pub fn new(prec: Precision, beta: Vec<Float>, generator: Generator) -> Result<Self> {
        let Some(first) = beta.first() else {
            return Err(Error::Domain("weight sequence is empty".into()));
        };
        let diff = Float::with_val(prec.bits(), first - 1u32).abs();
        if diff.to_f64() > 8.0 * prec.epsilon() {
            return Err(Error::Domain(format!("beta_0 must be 1, got {}", first.to_f64())));
        }
        for (n, b) in beta.iter().enumerate() {
            if !(b.is_finite() && b.is_sign_positive() && !b.is_zero()) {
                return Err(Error::Domain(format!("beta_{n} must be positive and finite")));
            }
        }
        let beta = beta
            .into_iter()
            .map(|b| Float::with_val(prec.bits(), b))
            .collect();
        Ok(WeightSequence { beta, generator, prec })
    }

    pub fn from_f64(prec: Precision, beta: &[f64]) -> Result<Self> {
        let beta = beta.iter().map(|&b| scalar::real(prec, b)).collect();
        Self::new(prec, beta, Generator::Explicit)
    }

    /// `β ≡ 1` on `0..=n`: the Hardy space `H²`.
    pub fn classical(prec: Precision, n: usize) -> Self {
        WeightSequence {
            beta: vec![Float::with_val(prec.bits(), 1); n + 1],
            generator: Generator::Classical,
            prec,
        }
    }

    /// One positive decimal per line, first line 1. Blank lines are skipped.
    pub fn parse_text(prec: Precision, text: &str) -> Result<Self> {
        let beta = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| scalar::parse_real(prec, l))
            .collect::<Result<Vec<_>>>()?;
        Self::new(prec, beta, Generator::Explicit)
    }

    pub fn load(prec: Precision, path: &Path) -> Result<Self> {
        Self::parse_text(prec, &std::fs::read_to_string(path)?)
    }

    pub fn beta(&self) -> &[Float] {
        &self.beta
    }

    pub fn generator(&self) -> &Generator {
        &self.generator
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    /// Truncation index `N`.
    pub fn truncation(&self) -> usize {
        self.beta.len() - 1
    }

    fn float(&self) -> Float {
        Float::new(self.prec.bits())
    }

    /// `w_n = β_{n+1}/β_n` for `n < N`.
    pub fn shift_weights(&self) -> Vec<Float> {
        self.beta
            .windows(2)
            .map(|p| Float::with_val(self.prec.bits(), &p[1] / &p[0]))
            .collect()
    }

    fn require_n(&self, min: usize, what: &str) -> Result<()> {
        if self.truncation() < min {
            return Err(Error::Domain(format!(
                "{what} needs truncation N >= {min}, got {}",
                self.truncation()
            )));
        }
        Ok(())
    }

    /// `max_n β_{n+1}/β_n` over the truncation.
    pub fn shift_norm(&self) -> Result<f64> {
        self.require_n(1, "shift norm")?;
        Ok(max_of(self.shift_weights()).to_f64())
    }

    /// `min β_n^{1/n}` over `n ∈ [N - window, N]`, `n >= 1`.
    pub fn r0_estimate(&self, window: usize) -> Result<f64> {
        let n_top = self.truncation();
        if window > n_top {
            return Err(Error::Domain(format!("window {window} exceeds truncation {n_top}")));
        }
        self.require_n(1, "r0 estimate")?;
        let lo = (n_top - window).max(1);
        let roots = (lo..=n_top).map(|n| self.nth_root(&self.beta[n], n));
        Ok(roots.fold(f64::INFINITY, f64::min))
    }

    fn nth_root(&self, x: &Float, n: usize) -> f64 {
        let mut l = Float::with_val(self.prec.bits(), x.ln_ref());
        l /= n as u32;
        l.exp().to_f64()
    }

    /// `(max_{n <= N-k} β_{n+k}/β_n)^{1/k}` with `k = k_max`.
    pub fn spectral_radius_estimate(&self, k_max: usize) -> Result<f64> {
        if k_max == 0 || k_max >= self.beta.len() - 1 {
            return Err(Error::Domain(format!(
                "k_max must satisfy 1 <= k_max < N = {}, got {k_max}",
                self.truncation()
            )));
        }
        let best = max_of(self.power_ratios(k_max));
        Ok(self.nth_root(&best, k_max))
    }

    /// `β_{n+k}/β_n` for `n = 0..=N-k`.
    pub fn power_ratios(&self, k: usize) -> Vec<Float> {
        (0..self.beta.len().saturating_sub(k))
            .map(|n| Float::with_val(self.prec.bits(), &self.beta[n + k] / &self.beta[n]))
            .collect()
    }

    /// Sufficient test for strict cyclicity of `M_z`: non-increasing shift
    /// weights whose squares sum numerically.
    pub fn strict_cyclicity_sufficient(&self) -> Result<CyclicityVerdict> {
        self.require_n(2, "strict cyclicity test")?;
        let w = self.shift_weights();
        let non_increasing = w.windows(2).all(|p| p[1] <= p[0]);
        let squares: Vec<Float> = w
            .iter()
            .map(|x| Float::with_val(self.prec.bits(), x.square_ref()))
            .collect();
        let tail_ratio = tail_ratio(&squares, self.float());
        let square_summable = tail_ratio <= SQUARE_SUM_TAIL;
        Ok(CyclicityVerdict {
            sufficient: non_increasing && square_summable,
            non_increasing,
            square_summable,
            tail_ratio,
        })
    }

    /// `‖k_w‖ = sqrt(Σ |w|^{2n}/β_n²)` over the truncation.
    pub fn kernel_norm_at(&self, w: &Complex) -> KernelNorm {
        let bits = self.prec.bits();
        let r2 = Float::with_val(bits, w.norm_ref());
        let mut power = Float::with_val(bits, 1);
        let mut terms = Vec::with_capacity(self.beta.len());
        for b in &self.beta {
            let t = Float::with_val(bits, &power / Float::with_val(bits, b.square_ref()));
            terms.push(t);
            power *= &r2;
        }
        let total = sum(&terms, self.float());
        let value = Float::with_val(bits, total.sqrt_ref());
        if !total.is_finite() {
            return KernelNorm {
                value: f64::INFINITY,
                converged: false,
                tail_ratio: f64::INFINITY,
            };
        }
        let ratio = tail_ratio(&terms, self.float());
        let value = value.to_f64();
        KernelNorm {
            value,
            converged: value.is_finite() && ratio <= KERNEL_TAIL,
            tail_ratio: ratio,
        }
    }

    /// Largest `|w|` (to about 1e-9 relative) at which the truncated kernel
    /// passes its convergence test. The test depends only on `|w|` and is
    /// monotone in it.
    pub fn kernel_radius(&self) -> Result<f64> {
        self.require_n(1, "kernel radius")?;
        let probe = |r: f64| self.kernel_norm_at(&scalar::complex(self.prec, r, 0.0)).converged;
        let mut hi = 2.0 * self.shift_norm()?.max(1.0);
        while probe(hi) {
            hi *= 2.0;
            if !hi.is_finite() {
                return Ok(f64::INFINITY);
            }
        }
        let mut lo = 0.0;
        for _ in 0..64 {
            let mid = 0.5 * (lo + hi);
            if probe(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-9 * hi {
                break;
            }
        }
        Ok(lo)
    }

    /// Everything at once, with the default windows `N/4` and `N/2`.
    pub fn diagnostics(&self) -> Result<ShiftDiagnostics> {
        let n = self.truncation();
        self.require_n(2, "shift diagnostics")?;
        let window = (n / 4).max(1);
        let k_max = (n / 2).max(1);
        let strict_cyclicity = self.strict_cyclicity_sufficient()?;
        Ok(ShiftDiagnostics {
            truncation: n,
            generator: self.generator.clone(),
            shift_norm: self.shift_norm()?,
            r0_estimate: self.r0_estimate(window)?,
            r0_window: window,
            spectral_radius_estimate: self.spectral_radius_estimate(k_max)?,
            k_max,
            strictly_cyclic_sufficient: strict_cyclicity.sufficient,
            strict_cyclicity,
            kernel_radius: self.kernel_radius()?,
        })
    }
}

fn max_of(xs: Vec<Float>) -> Float {
    xs.into_iter()
        .reduce(|a, b| if b > a { b } else { a })
        .expect("non-empty")
}

fn sum(xs: &[Float], mut acc: Float) -> Float {
    acc.assign(0);
    for x in xs {
        acc += x;
    }
    acc
}

/// Mass of the last quarter of `xs` over the whole sum.
fn tail_ratio(xs: &[Float], scratch: Float) -> f64 {
    let total = sum(xs, scratch.clone());
    if total.is_zero() {
        return 0.0;
    }
    let start = xs.len() - xs.len() / 4;
    let tail = sum(&xs[start..], scratch);
    Float::with_val(total.prec(), &tail / &total).to_f64()
}

/// `β_0 = 1`, `β_n = w_0 ⋯ w_{n-1}` for `n <= N`.
pub fn donoghue_weights(prec: Precision, kind: &DonoghueKind, n: usize) -> Result<WeightSequence> {
    let bits = prec.bits();
    let weights: Vec<Float> = match kind {
        DonoghueKind::Reciprocal => (0..n)
            .map(|i| Float::with_val(bits, 1u32) / (i as u32 + 1))
            .collect(),
        DonoghueKind::Geometric(q) => {
            if !(*q > 0.0 && *q < 1.0) {
                return Err(Error::Domain(format!("geometric weight must lie in (0, 1), got {q}")));
            }
            vec![Float::with_val(bits, *q); n]
        }
        DonoghueKind::Custom(list) => {
            if list.len() < n {
                return Err(Error::Domain(format!(
                    "custom list has {} weights, need N = {n}",
                    list.len()
                )));
            }
            list[..n].iter().map(|&w| Float::with_val(bits, w)).collect()
        }
    };
    if let Some(i) = weights.iter().position(|w| !(w.is_finite() && *w > 0)) {
        return Err(Error::Domain(format!("shift weight w_{i} must be positive")));
    }
    let mut beta = Vec::with_capacity(n + 1);
    beta.push(Float::with_val(bits, 1));
    for w in &weights {
        let next = Float::with_val(bits, beta.last().unwrap() * w);
        beta.push(next);
    }
    let generator = match kind {
        DonoghueKind::Reciprocal => Generator::Reciprocal,
        DonoghueKind::Geometric(q) => Generator::Geometric { q: *q },
        DonoghueKind::Custom(_) => Generator::Custom,
    };
    WeightSequence::new(prec, beta, generator)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CyclicityVerdict {
    pub sufficient: bool,
    pub non_increasing: bool,
    pub square_summable: bool,
    /// Last-quarter share of `Σ w_n²`.
    pub tail_ratio: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KernelNorm {
    pub value: f64,
    pub converged: bool,
    pub tail_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ShiftDiagnostics {
    pub truncation: usize,
    pub generator: Generator,
    pub shift_norm: f64,
    pub r0_estimate: f64,
    pub r0_window: usize,
    pub spectral_radius_estimate: f64,
    pub k_max: usize,
    pub strictly_cyclic_sufficient: bool,
    /// Sub-verdicts behind `strictly_cyclic_sufficient`.
    pub strict_cyclicity: CyclicityVerdict,
    /// Largest `|w|` whose truncated kernel passes the tail test.
    pub kernel_radius: f64,
}

/// `f = Σ a_n z^n`, finitely many terms.
#[derive(Clone, Debug, PartialEq)]
pub struct HardyElement {
    coeffs: Vec<Complex>,
}

impl HardyElement {
    pub fn new(coeffs: Vec<Complex>) -> Self {
        HardyElement { coeffs }
    }

    pub fn monomial(prec: Precision, n: usize) -> Self {
        let mut coeffs = vec![scalar::zero(prec); n + 1];
        coeffs[n] = scalar::one(prec);
        HardyElement { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    /// `M_z f`.
    pub fn shifted(&self) -> Self {
        let prec = self.coeffs.first().map_or(Precision::DEFAULT.bits(), |c| c.prec().0);
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex::new(prec));
        coeffs.extend(self.coeffs.iter().cloned());
        HardyElement { coeffs }
    }

    /// `‖f‖_β = sqrt(Σ |a_n|² β_n²)`. Shorter elements are zero-padded.
    pub fn norm(&self, beta: &WeightSequence) -> Result<f64> {
        if self.coeffs.len() > beta.beta.len() {
            return Err(Error::Domain(format!(
                "element has {} coefficients, weights stop at N = {}",
                self.coeffs.len(),
                beta.truncation()
            )));
        }
        let bits = beta.prec.bits();
        let mut acc = Float::new(bits);
        for (a, b) in self.coeffs.iter().zip(&beta.beta) {
            let mut t = Float::with_val(bits, a.norm_ref());
            t *= Float::with_val(bits, b.square_ref());
            acc += &t;
        }
        Ok(acc.sqrt().to_f64())
    }

    /// `f(w)` by Horner. Trusted only where the kernel at `w` converges,
    /// since then `|f(w)| <= ‖f‖ ‖k_w‖`.
    pub fn evaluate(&self, w: &Complex, beta: &WeightSequence) -> Evaluation {
        let bits = beta.prec.bits();
        let mut acc = Complex::new(bits);
        for a in self.coeffs.iter().rev() {
            acc *= w;
            acc += a;
        }
        Evaluation {
            value: acc,
            trustworthy: beta.kernel_norm_at(w).converged,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Evaluation {
    pub value: Complex,
    pub trustworthy: bool,
}

/// Lower bound `max_{n <= depth} ‖φ z^n‖_β / β_n` for the multiplier norm
/// `‖M_φ‖`. Terms past the truncation are dropped, which keeps it a lower
/// bound.
pub fn multiplier_norm_lower_bound(phi: &HardyElement, beta: &WeightSequence, depth: usize) -> Result<f64> {
    let n_top = beta.truncation();
    let mut best = 0.0f64;
    let mut shifted = phi.clone();
    for n in 0..=depth.min(n_top) {
        let mut kept = shifted.clone();
        kept.coeffs.truncate(n_top + 1);
        let ratio = kept.norm(beta)? / beta.beta[n].to_f64();
        if ratio.is_finite() {
            best = best.max(ratio);
        }
        shifted = shifted.shifted();
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::ops::Pow;

    fn prec() -> Precision {
        Precision::DEFAULT
    }

    fn c(re: f64, im: f64) -> Complex {
        scalar::complex(prec(), re, im)
    }

    fn reciprocal(n: usize) -> WeightSequence {
        donoghue_weights(prec(), &DonoghueKind::Reciprocal, n).unwrap()
    }

    fn geometric(q: f64, n: usize) -> WeightSequence {
        donoghue_weights(prec(), &DonoghueKind::Geometric(q), n).unwrap()
    }

    fn powers(base: f64, n: usize) -> WeightSequence {
        let beta = (0..=n).map(|i| Float::with_val(113, base).pow(i as u32)).collect();
        WeightSequence::new(prec(), beta, Generator::Explicit).unwrap()
    }

    #[test]
    fn norms() {
        let beta = reciprocal(30);
        for n in 0..=30 {
            let got = HardyElement::monomial(prec(), n).norm(&beta).unwrap();
            assert_eq!(got, beta.beta()[n].to_f64());
        }
        assert_eq!(HardyElement::new(vec![]).norm(&beta).unwrap(), 0.0);
        let f = HardyElement::new(vec![c(1.0, 0.0), c(0.5, 0.0)]);
        let got = f.norm(&WeightSequence::classical(prec(), 4)).unwrap();
        assert!((got - 1.25f64.sqrt()).abs() < 1e-15);
        assert!(HardyElement::monomial(prec(), 5).norm(&reciprocal(4)).is_err());
    }

    #[test]
    fn shift_norm_examples() {
        assert_eq!(WeightSequence::classical(prec(), 10).shift_norm().unwrap(), 1.0);
        assert_eq!(reciprocal(50).shift_norm().unwrap(), 1.0);
        assert_eq!(powers(2.0, 20).shift_norm().unwrap(), 2.0);
    }

    #[test]
    fn r0_examples() {
        assert_eq!(WeightSequence::classical(prec(), 10).r0_estimate(5).unwrap(), 1.0);
        let r0 = reciprocal(200).r0_estimate(50).unwrap();
        // (1/n!)^{1/n} ≈ e/n, smallest at n = 200
        assert!(r0 <= 0.02 && (r0 - std::f64::consts::E / 200.0).abs() < 2e-3, "{r0}");
        assert!((powers(3.0, 40).r0_estimate(10).unwrap() - 3.0).abs() < 1e-14);
        assert!(reciprocal(10).r0_estimate(11).is_err());
    }

    #[test]
    fn spectral_radius_examples() {
        assert_eq!(WeightSequence::classical(prec(), 10).spectral_radius_estimate(5).unwrap(), 1.0);
        assert!(reciprocal(400).spectral_radius_estimate(200).unwrap() <= 0.02);
        assert!((powers(2.0, 30).spectral_radius_estimate(7).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn monotone_weights_peak_at_zero() {
        for beta in [reciprocal(120), geometric(0.7, 120)] {
            for k in 1..=60 {
                let ratios = beta.power_ratios(k);
                let top = ratios[0].to_f64() * (1.0 + 1e-30);
                assert!(ratios.iter().all(|r| r.to_f64() <= top), "k={k}");
            }
        }
    }

    #[test]
    fn cyclicity_examples() {
        let v = reciprocal(2000).strict_cyclicity_sufficient().unwrap();
        assert!(v.sufficient && v.non_increasing && v.square_summable);
        let v = WeightSequence::classical(prec(), 2000).strict_cyclicity_sufficient().unwrap();
        assert!(!v.sufficient && v.non_increasing && !v.square_summable);
        let w: Vec<f64> = (0..2000).map(|n| 1.0 / ((n + 1) as f64).sqrt()).collect();
        let beta = donoghue_weights(prec(), &DonoghueKind::Custom(w), 2000).unwrap();
        let v = beta.strict_cyclicity_sufficient().unwrap();
        assert!(v.non_increasing && !v.square_summable && !v.sufficient);
    }

    #[test]
    fn kernel_examples() {
        let classical = WeightSequence::classical(prec(), 2048);
        let k = classical.kernel_norm_at(&c(0.0, 0.0));
        assert!(k.converged && k.value == 1.0);
        let k = classical.kernel_norm_at(&c(0.6, 0.0));
        assert!(k.converged && (k.value - 1.25).abs() < 1e-12);
        for r in [0.1, 0.5, 0.9] {
            let k = classical.kernel_norm_at(&c(0.0, r));
            let exact = 1.0 / (1.0 - r * r).sqrt();
            assert!(((k.value - exact) / exact).abs() < 1e-6);
        }
        assert!(!reciprocal(2048).kernel_norm_at(&c(0.1, 0.0)).converged);
    }

    #[test]
    fn donoghue_examples() {
        let b: Vec<f64> = reciprocal(5).beta().iter().map(Float::to_f64).collect();
        let expected = [1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0, 1.0 / 120.0];
        for (x, y) in b.iter().zip(expected) {
            assert!((x - y).abs() < 1e-16);
        }
        let g: Vec<f64> = geometric(0.5, 3).beta().iter().map(Float::to_f64).collect();
        assert_eq!(g, vec![1.0, 0.5, 0.25, 0.125]);
        let one = donoghue_weights(prec(), &DonoghueKind::Custom(vec![1.0; 3]), 3).unwrap();
        assert!(one.beta().iter().all(|b| *b == 1));
        assert!(donoghue_weights(prec(), &DonoghueKind::Custom(vec![1.0, -1.0]), 2).is_err());
        assert!(donoghue_weights(prec(), &DonoghueKind::Geometric(1.5), 3).is_err());
    }

    #[test]
    fn evaluation() {
        let classical = WeightSequence::classical(prec(), 512);
        let e = HardyElement::monomial(prec(), 2).evaluate(&c(0.5, 0.0), &classical);
        assert_eq!(scalar::to_pair(&e.value), [0.25, 0.0]);
        assert!(e.trustworthy);
        let e = HardyElement::monomial(prec(), 1).evaluate(&c(0.3, 0.0), &reciprocal(512));
        assert_eq!(scalar::to_pair(&e.value), [0.3, 0.0]);
        assert!(!e.trustworthy);
    }

    #[test]
    fn text_loader() {
        let b = WeightSequence::parse_text(prec(), "1\n0.5\n\n0.25\n").unwrap();
        assert_eq!(b.truncation(), 2);
        assert!(WeightSequence::parse_text(prec(), "2\n1\n").is_err());
        assert!(WeightSequence::parse_text(prec(), "1\n0\n").is_err());
        assert!(WeightSequence::parse_text(prec(), "1\nabc\n").is_err());
    }

    #[test]
    fn diagnostics_are_ordered() {
        for beta in [reciprocal(256), geometric(0.5, 256), WeightSequence::classical(prec(), 256)] {
            let d = beta.diagnostics().unwrap();
            assert!(d.r0_estimate <= d.spectral_radius_estimate + 1e-6, "{d:?}");
        }
        let d = WeightSequence::classical(prec(), 2048).diagnostics().unwrap();
        assert!(d.kernel_radius > 0.95 && d.kernel_radius < 1.0, "{}", d.kernel_radius);
    }

    #[test]
    fn multiplier_lower_bound() {
        let classical = WeightSequence::classical(prec(), 64);
        let phi = HardyElement::new(vec![c(1.0, 0.0), c(0.5, 0.0)]);
        let lb = multiplier_norm_lower_bound(&phi, &classical, 10).unwrap();
        assert!((lb - 1.25f64.sqrt()).abs() < 1e-15);
    }
}

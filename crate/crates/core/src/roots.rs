//! Simultaneous root finding (Aberth–Ehrlich) with inclusion radii.
//!
//! Iterates at the working precision plus guard bits so that clusters of
//! nearly repeated roots, which are the normal case for `(t - w)^n`, are
//! resolved to the roots of the stored polynomial rather than stalling at
//! evaluation noise. Each reported root carries a Gerschgorin-type inclusion
//! radius that also absorbs a relative uncertainty in the coefficients.

use std::cmp::Ordering;

use rug::ops::{CompleteRound, NegAssign, Pow};
use num_complex::Complex64 as C64;
use rug::{Assign, Complex, Float};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::{self, Precision};

/// Roots of one polynomial, with multiplicity.
///
/// Roots are ordered by argument in `(-π, π]`, then by modulus. Roots of a
/// numerical cluster are reported individually and never merged.
#[derive(Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RootSet {
    #[serde(serialize_with = "scalar::pairs::serialize")]
    roots: Vec<Complex>,
    /// `|p(λ_i)|` per root.
    residuals: Vec<f64>,
    max_modulus: f64,
    /// Disc radii around each root guaranteed to contain roots of every
    /// polynomial within the coefficient uncertainty (union/component sense).
    inclusion_radii: Vec<f64>,
    /// `(deg + 1) · max_i Σ_j |a_j| |λ_i|^j`; residuals are bounded by
    /// `tolerance · conditioning`.
    conditioning: f64,
    tolerance: f64,
    /// Relative coefficient uncertainty assumed by the inclusion radii.
    coefficient_uncertainty: f64,
    iterations: usize,
}

impl std::fmt::Debug for RootSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RootSet")
            .field("len", &self.roots.len())
            .field("max_modulus", &self.max_modulus)
            .field("iterations", &self.iterations)
            .finish_non_exhaustive()
    }
}

impl RootSet {
    pub fn roots(&self) -> &[Complex] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn residuals(&self) -> &[f64] {
        &self.residuals
    }

    pub fn max_modulus(&self) -> f64 {
        self.max_modulus
    }

    pub fn inclusion_radii(&self) -> &[f64] {
        &self.inclusion_radii
    }

    pub fn conditioning(&self) -> f64 {
        self.conditioning
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn coefficient_uncertainty(&self) -> f64 {
        self.coefficient_uncertainty
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    /// Builds a root set from given roots, e.g. for symmetric-function work.
    /// Diagnostics are left empty except `max_modulus`.
    pub fn from_roots(roots: Vec<Complex>) -> Self {
        let max_modulus = roots
            .iter()
            .map(scalar::modulus_f64)
            .fold(0.0, f64::max);
        let n = roots.len();
        RootSet {
            roots,
            residuals: vec![0.0; n],
            max_modulus,
            inclusion_radii: vec![0.0; n],
            conditioning: 0.0,
            tolerance: 0.0,
            coefficient_uncertainty: 0.0,
            iterations: 0,
        }
    }

    pub fn precision(&self) -> Option<Precision> {
        self.roots
            .first()
            .and_then(|z| Precision::new(z.prec().0).ok())
    }

    /// Indices of roots whose inclusion disc, and every disc overlapping it
    /// transitively, lies in `|t| >= radius`.
    ///
    /// A connected component of `m` inclusion discs holds exactly `m` roots,
    /// so a component entirely outside the disc certifies that many roots of
    /// modulus at least `radius`.
    pub fn certified_outside(&self, radius: f64) -> Vec<usize> {
        let n = self.roots.len();
        let centers: Vec<[f64; 2]> = self.roots.iter().map(scalar::to_pair).collect();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let d = (centers[i][0] - centers[j][0]).hypot(centers[i][1] - centers[j][1]);
                if d <= self.inclusion_radii[i] + self.inclusion_radii[j] {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let outside: Vec<bool> = (0..n)
            .map(|i| {
                let m = centers[i][0].hypot(centers[i][1]);
                m - self.inclusion_radii[i] >= radius
            })
            .collect();
        let mut component_ok = vec![true; n];
        for i in 0..n {
            let root = find(&mut parent, i);
            component_ok[root] &= outside[i];
        }
        (0..n)
            .filter(|&i| {
                let root = find(&mut parent, i);
                component_ok[root]
            })
            .collect()
    }
}

/// Aberth–Ehrlich configuration.
#[derive(Clone, Debug)]
pub struct RootFinder {
    /// Stop refining a root once `|correction| <= tolerance · max(1, |λ|)`,
    /// or once `|p(λ)|` is at the rounding level of the working precision.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Extra bits used during iteration; `None` picks `64 + 2·bitlen(deg)`.
    pub guard_bits: Option<u32>,
    /// Relative coefficient uncertainty for inclusion radii; `None` uses
    /// `(deg + 2) · 2^-prec`.
    pub coefficient_uncertainty: Option<f64>,
}

impl Default for RootFinder {
    fn default() -> Self {
        RootFinder {
            tolerance: 1e-12,
            max_iterations: 200,
            guard_bits: None,
            coefficient_uncertainty: None,
        }
    }
}

/// All roots of `p` with the default [`RootFinder`].
pub fn find_roots(p: &Polynomial) -> Result<RootSet> {
    RootFinder::default().find(p)
}

impl RootFinder {
    pub fn find(&self, p: &Polynomial) -> Result<RootSet> {
        let degree = p
            .degree()
            .ok_or_else(|| Error::Domain("cannot find roots of the zero polynomial".into()))?;
        if degree == 0 {
            return Err(Error::Domain(
                "cannot find roots of a nonzero constant".into(),
            ));
        }
        let prec = p.precision();
        for c in p.coeffs() {
            scalar::ensure_finite(c, "coefficient")?;
        }
        let coeffs = &p.coeffs()[..=degree];

        // exact zero roots
        let zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        let reduced = &coeffs[zeros..];
        let d = reduced.len() - 1;

        check_leading(&newton_polygon(reduced), prec)?;

        let guard = self
            .guard_bits
            .unwrap_or_else(|| 64 + 2 * (usize::BITS - degree.leading_zeros()));
        let work = prec.widened(guard);
        let a: Vec<Complex> = reduced
            .iter()
            .map(|c| Complex::with_val(work.bits(), c))
            .collect();

        let mut iterations = 0;
        let mut unconverged = 0;
        let z = if d == 0 {
            Vec::new()
        } else if d == 1 {
            vec![-Complex::with_val(work.bits(), &a[0] / &a[1])]
        } else {
            // Starting points come from q(s) = p(s + c) about the root centroid
            // c, where a cluster's Newton polygon shows its true radius. The
            // high-precision sweep runs on p itself: evaluating the shifted
            // coefficients far from c would amplify their rounding error.
            let mut center = Complex::with_val(work.bits(), &a[d - 1] / &a[d]);
            center /= d as u32;
            center.neg_assign();
            let q = taylor_shift(&a, &center);
            // exact low-order zeros of q are roots exactly at the centroid
            let at_center = q.iter().take_while(|c| c.is_zero()).count();
            let mut start = vec![C64::new(0.0, 0.0); at_center];
            start.extend(initial_guesses(&newton_polygon(&q[at_center..]), d));
            debug_assert_eq!(start.len(), d);
            let start = presolve_f64(&q, start, self.max_iterations.min(100));
            let mut z: Vec<Complex> = start
                .iter()
                .map(|u| Complex::with_val(work.bits(), (u.re, u.im)) + &center)
                .collect();

            let da: Vec<Complex> = a
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| Complex::with_val(work.bits(), c * j as u32))
                .collect();
            let mut ws = Workspace::new(work, &a, &z);
            let mut converged = vec![false; d];
            unconverged = d;
            while iterations < self.max_iterations && unconverged > 0 {
                iterations += 1;
                for i in 0..d {
                    if converged[i] {
                        continue;
                    }
                    if ws.aberth_step(&a, &da, &mut z, i, self.tolerance) {
                        converged[i] = true;
                        unconverged -= 1;
                    }
                }
            }
            // one polishing sweep: each converged root is inside the cubic
            // convergence basin, so this tightens it far below the tolerance
            if unconverged == 0 {
                for i in 0..d {
                    ws.aberth_step(&a, &da, &mut z, i, self.tolerance);
                }
            }
            z
        };

        let eta = self
            .coefficient_uncertainty
            .unwrap_or((degree as f64 + 2.0) * prec.epsilon());
        let set = assemble(p, &a, z, zeros, prec, work, eta, self.tolerance, iterations)?;
        if unconverged > 0 {
            return Err(Error::Convergence {
                iterations,
                unconverged,
                partial: Box::new(set),
            });
        }
        Ok(set)
    }
}

/// Coefficients of `p(s + c)`.
fn taylor_shift(a: &[Complex], c: &Complex) -> Vec<Complex> {
    let mut q: Vec<Complex> = a.to_vec();
    let n = q.len();
    // synthetic division repeated n times
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let (lo, hi) = q.split_at_mut(j + 1);
            let t = Complex::with_val(lo[j].prec().0, &hi[0] * c);
            lo[j] += t;
        }
    }
    q
}

/// Double-precision Aberth pre-pass on the scaled variable `s = ρ u`.
///
/// Returns the improved starting points unscaled. Falls back to the input
/// when the coefficients do not fit a double after scaling.
fn presolve_f64(q: &[Complex], start: Vec<C64>, max_iterations: usize) -> Vec<C64> {
    let d = q.len() - 1;
    let rho = start.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if !(rho.is_finite() && rho > 0.0) {
        return start;
    }
    let log2_rho = rho.log2();
    let logs: Vec<f64> = q
        .iter()
        .enumerate()
        .map(|(j, c)| {
            if c.is_zero() {
                f64::NEG_INFINITY
            } else {
                log2_abs(c) + j as f64 * log2_rho
            }
        })
        .collect();
    let top = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !top.is_finite() {
        return start;
    }
    // c_j ρ^j 2^-top, with the exponent applied as one binary shift
    let coeffs: Vec<C64> = q
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let e = j as f64 * log2_rho - top;
            let whole = e.floor();
            let frac = (e - whole).exp2();
            let shift = whole.clamp(-1e6, 1e6) as i32;
            let mut re = Float::with_val(64, c.real());
            let mut im = Float::with_val(64, c.imag());
            re <<= shift;
            im <<= shift;
            C64::new(re.to_f64(), im.to_f64()) * frac
        })
        .collect();
    if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return start;
    }
    let deriv: Vec<C64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(j, c)| c * j as f64)
        .collect();

    let mut u: Vec<C64> = start.iter().map(|z| z / rho).collect();
    let mut done = vec![false; d];
    for _ in 0..max_iterations {
        let mut active = false;
        for i in 0..d {
            if done[i] {
                continue;
            }
            let pv = horner_f64(&coeffs, u[i]);
            let dpv = horner_f64(&deriv, u[i]);
            if pv == C64::new(0.0, 0.0) || dpv == C64::new(0.0, 0.0) {
                done[i] = true;
                continue;
            }
            let newton = pv / dpv;
            let sum: C64 = u
                .iter()
                .enumerate()
                .filter(|&(j, uj)| j != i && *uj != u[i])
                .map(|(_, uj)| (u[i] - uj).inv())
                .sum();
            let step = newton / (C64::new(1.0, 0.0) - newton * sum);
            if !step.re.is_finite() || !step.im.is_finite() {
                done[i] = true;
                continue;
            }
            u[i] -= step;
            if step.norm() <= 1e-14 * u[i].norm().max(1e-300) {
                done[i] = true;
            } else {
                active = true;
            }
        }
        if !active {
            break;
        }
    }
    u.into_iter().map(|x| x * rho).collect()
}

fn horner_f64(coeffs: &[C64], x: C64) -> C64 {
    coeffs
        .iter()
        .rev()
        .fold(C64::new(0.0, 0.0), |acc, c| acc * x + c)
}

/// Reusable state for the high-precision Aberth sweep.
///
/// Root approximations are mirrored in double precision. The repulsion sum
/// `Σ 1/(s_i - s_j)` and the factor `1/(1 - N·S)` are formed there; they only
/// scale the Newton correction `N`, which is always computed at full
/// precision, so the fixed points are unaffected.
struct Workspace {
    pv: Complex,
    dpv: Complex,
    newton: Complex,
    shadow: Vec<C64>,
    /// `|a_j|` at 53 bits, for the rounding-level test.
    abs_a: Vec<Float>,
    /// `8 (d + 1) 2^-bits` of the working precision.
    noise: f64,
}

impl Workspace {
    fn new(prec: Precision, a: &[Complex], s: &[Complex]) -> Self {
        let z = || Complex::new(prec.bits());
        Workspace {
            pv: z(),
            dpv: z(),
            newton: z(),
            shadow: s.iter().map(to_c64).collect(),
            abs_a: a.iter().map(|c| Float::with_val(53, c.abs_ref())).collect(),
            noise: 8.0 * a.len() as f64 * prec.epsilon(),
        }
    }

    /// `|p(z)|` is within rounding of `Σ |a_j| |z|^j`: no correction computed
    /// at this precision can be trusted, so the root is as good as it gets.
    /// Coincident roots split only by rounding end here.
    fn at_rounding_level(&self, z: &Complex) -> bool {
        let r = Float::with_val(53, z.abs_ref());
        let mut scale = Float::new(53);
        for c in self.abs_a.iter().rev() {
            scale *= &r;
            scale += c;
        }
        scale *= self.noise;
        Float::with_val(53, self.pv.abs_ref()) <= scale
    }

    /// Updates `s[i]` in place; returns whether the correction met the
    /// tolerance.
    fn aberth_step(
        &mut self,
        a: &[Complex],
        da: &[Complex],
        s: &mut [Complex],
        i: usize,
        tol: f64,
    ) -> bool {
        horner(a, &s[i], &mut self.pv);
        if self.pv.is_zero() || self.at_rounding_level(&s[i]) {
            return true;
        }
        horner(da, &s[i], &mut self.dpv);
        if self.dpv.is_zero() {
            // stationary point: nudge off it and keep iterating
            let bump = Complex::with_val(53, (1e-8, 1e-8));
            let moved = Complex::with_val(s[i].prec().0, &s[i] * Complex::with_val(53, (1.0, 1e-8)));
            s[i] = moved + bump;
            self.shadow[i] = to_c64(&s[i]);
            return false;
        }
        self.newton.assign(&self.pv / &self.dpv);

        let here = self.shadow[i];
        let sum: C64 = self
            .shadow
            .iter()
            .enumerate()
            .filter(|&(j, sj)| j != i && *sj != here)
            .map(|(_, sj)| (here - sj).inv())
            .sum();
        let n64 = to_c64(&self.newton);
        let factor = (C64::new(1.0, 0.0) - n64 * sum).inv();
        if factor.re.is_finite() && factor.im.is_finite() {
            self.newton *= Complex::with_val(53, (factor.re, factor.im));
        }
        s[i] -= &self.newton;
        self.shadow[i] = to_c64(&s[i]);

        let step = approx_abs(&self.newton);
        let size = self.shadow[i].norm().max(1.0);
        step <= tol * size
    }
}

fn to_c64(z: &Complex) -> C64 {
    C64::new(z.real().to_f64(), z.imag().to_f64())
}

fn horner(coeffs: &[Complex], x: &Complex, out: &mut Complex) {
    out.assign(0);
    for c in coeffs.iter().rev() {
        *out *= x;
        *out += c;
    }
}

fn approx_abs(z: &Complex) -> f64 {
    z.real().to_f64().hypot(z.imag().to_f64())
}

/// Vertex of the upper convex hull of `(j, log2 |a_j|)`.
#[derive(Clone, Copy, Debug)]
struct HullPoint {
    index: usize,
    log2_abs: f64,
}

fn log2_abs(c: &Complex) -> f64 {
    let m = Float::with_val(64, c.abs_ref());
    // mantissa/exponent split stays finite far outside the f64 range
    let (mant, exp) = m.to_f64_exp();
    mant.abs().log2() + exp as f64
}

fn newton_polygon(coeffs: &[Complex]) -> Vec<HullPoint> {
    let mut hull: Vec<HullPoint> = Vec::new();
    for (index, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let p = HullPoint {
            index,
            log2_abs: log2_abs(c),
        };
        while hull.len() >= 2 {
            let o = hull[hull.len() - 2];
            let q = hull[hull.len() - 1];
            let cross = (q.index as f64 - o.index as f64) * (p.log2_abs - o.log2_abs)
                - (q.log2_abs - o.log2_abs) * (p.index as f64 - o.index as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

/// `log2` of the root radius attached to each hull edge, with its root count.
fn edge_radii(hull: &[HullPoint]) -> Vec<(usize, f64)> {
    hull.windows(2)
        .map(|w| {
            let m = w[1].index - w[0].index;
            (m, (w[0].log2_abs - w[1].log2_abs) / m as f64)
        })
        .collect()
}

/// A leading coefficient is numerically negligible when the top hull edge
/// isolates a single root more than `2^(prec/2)` times larger than the rest.
fn check_leading(hull: &[HullPoint], prec: Precision) -> Result<()> {
    let radii = edge_radii(hull);
    if radii.len() < 2 {
        return Ok(());
    }
    let (top_count, top) = radii[radii.len() - 1];
    let (_, next) = radii[radii.len() - 2];
    if top_count == 1 && top - next > prec.bits() as f64 / 2.0 {
        return Err(Error::IllConditioned(format!(
            "leading coefficient is negligible: isolated root of size 2^{top:.1} against 2^{next:.1}"
        )));
    }
    Ok(())
}

/// Starting points on the Newton-polygon circles with staggered angles.
fn initial_guesses(hull: &[HullPoint], d: usize) -> Vec<C64> {
    const SIGMA: f64 = 0.7;
    let two_pi = std::f64::consts::TAU;
    let mut z = Vec::with_capacity(d);
    for (k, (m, log2_r)) in edge_radii(hull).into_iter().enumerate() {
        let radius = log2_r.clamp(-1000.0, 1000.0).exp2();
        for l in 0..m {
            let theta = two_pi * l as f64 / m as f64 + two_pi * k as f64 / d as f64 + SIGMA;
            z.push(C64::from_polar(radius, theta));
        }
    }
    z
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    p: &Polynomial,
    reduced: &[Complex],
    z: Vec<Complex>,
    zeros: usize,
    prec: Precision,
    work: Precision,
    eta: f64,
    tolerance: f64,
    iterations: usize,
) -> Result<RootSet> {
    let degree = zeros + z.len();
    let rounded: Vec<Complex> = z
        .iter()
        .map(|x| Complex::with_val(prec.bits(), x))
        .collect();
    for x in &rounded {
        scalar::ensure_finite(x, "root")?;
    }

    let d = rounded.len();
    let lead = Float::with_val(work.bits(), reduced[d].abs_ref());
    let eta = Float::with_val(work.bits(), eta);
    let mut scratch = Complex::new(work.bits());
    let mut items: Vec<(Complex, f64, f64)> = Vec::with_capacity(degree);
    let mut conditioning = 0.0f64;

    for _ in 0..zeros {
        items.push((scalar::zero(prec), 0.0, 0.0));
    }
    for (i, x) in rounded.iter().enumerate() {
        let residual = scalar::modulus_f64(&p.evaluate_at(x, work));
        horner(reduced, x, &mut scratch);
        let local = Float::with_val(work.bits(), scratch.abs_ref());
        let x_abs = Float::with_val(work.bits(), x.abs_ref());
        let scale = abs_scale(reduced, &x_abs);
        let full_scale = Float::with_val(work.bits(), &scale * x_abs.clone().pow(zeros as u32));
        conditioning = conditioning.max(full_scale.to_f64());

        let mut separation = lead.clone();
        for (j, y) in rounded.iter().enumerate() {
            if j != i {
                let gap = Complex::with_val(work.bits(), x - y);
                separation *= gap.abs().real();
            }
        }
        let numerator = (local + (&eta * &scale).complete(work.bits())) * d as u32;
        let radius = if separation.is_zero() {
            f64::INFINITY
        } else {
            (numerator / separation).to_f64()
        };
        items.push((x.clone(), residual, radius));
    }

    items.sort_by(|a, b| order_key(&a.0).partial_cmp(&order_key(&b.0)).unwrap_or(Ordering::Equal));
    let max_modulus = items
        .iter()
        .map(|(x, _, _)| scalar::modulus_f64(x))
        .fold(0.0, f64::max);
    let (roots, rest): (Vec<_>, Vec<_>) = items.into_iter().map(|(x, r, rho)| (x, (r, rho))).unzip();
    let (residuals, inclusion_radii) = rest.into_iter().unzip();
    Ok(RootSet {
        roots,
        residuals,
        max_modulus,
        inclusion_radii,
        conditioning: (degree as f64 + 1.0) * conditioning,
        tolerance,
        coefficient_uncertainty: eta.to_f64(),
        iterations,
    })
}

fn abs_scale(coeffs: &[Complex], x_abs: &Float) -> Float {
    let mut acc = Float::new(x_abs.prec());
    let mut term = Float::new(x_abs.prec());
    for c in coeffs.iter().rev() {
        acc *= x_abs;
        term.assign(c.abs_ref());
        acc += &term;
    }
    acc
}

fn order_key(z: &Complex) -> (f64, f64) {
    let [re, im] = scalar::to_pair(z);
    let arg = if re == 0.0 && im == 0.0 { 0.0 } else { im.atan2(re) };
    (arg, re.hypot(im))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prec() -> Precision {
        Precision::DEFAULT
    }

    fn sorted_moduli(set: &RootSet) -> Vec<f64> {
        let mut m: Vec<f64> = set.roots().iter().map(scalar::modulus_f64).collect();
        m.sort_by(f64::total_cmp);
        m
    }

    #[test]
    fn difference_of_squares() {
        let p = Polynomial::from_f64(prec(), &[(-1.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
        let set = find_roots(&p).unwrap();
        let mut re: Vec<f64> = set.roots().iter().map(|z| z.real().to_f64()).collect();
        re.sort_by(f64::total_cmp);
        assert!((re[0] + 1.0).abs() < 1e-25 && (re[1] - 1.0).abs() < 1e-25);
        assert_eq!(set.len(), 2);
    }

    #[test]
    fn nearly_real_dyadic_cluster_converges() {
        // rounding leaves the cluster split far below 113 bits, so the step
        // size never settles; the rounding-level test has to stop it
        let w = Complex::with_val(113, (-0.25, 1e-20));
        for n in [6usize, 10, 24] {
            let s = find_roots(&Polynomial::shifted_power(&w, n)).unwrap();
            assert_eq!(s.len(), n);
            assert!((s.max_modulus() - 0.25).abs() < 0.05, "n={n}");
            assert!(s.certified_outside(0.3).is_empty());
        }
    }

    #[test]
    fn repeated_root_cluster() {
        let w = scalar::complex(prec(), 0.3, 0.0);
        let p = Polynomial::shifted_power(&w, 4);
        let set = find_roots(&p).unwrap();
        assert_eq!(set.len(), 4);
        for m in sorted_moduli(&set) {
            assert!((m - 0.3).abs() < 1e-6, "{m}");
        }
        assert!((set.max_modulus() - 0.3).abs() < 1e-6);
    }

    #[test]
    fn mixture_degree_seven_has_root_outside_unit_disc() {
        // 0.5 (t^7 + (t - 0.5)^7)
        let prec = prec();
        let a = Polynomial::monomial(prec, 7);
        let b = Polynomial::shifted_power(&scalar::complex(prec, 0.5, 0.0), 7);
        let p = (&a + &b).scale(&scalar::complex(prec, 0.5, 0.0));
        let set = find_roots(&p).unwrap();
        // closed form: largest root is ω/(2(ω-1)), ω = e^{iπ/7}
        let expected = 1.0 / (4.0 * (std::f64::consts::PI / 14.0).sin());
        assert!((set.max_modulus() - expected).abs() < 1e-12);
        assert!(set.max_modulus() >= 1.0);
        for (r, cond) in set.residuals().iter().zip(std::iter::repeat(set.conditioning())) {
            assert!(*r <= set.tolerance() * cond);
        }
    }

    #[test]
    fn rejects_zero_and_constant() {
        assert!(matches!(
            find_roots(&Polynomial::zero(prec())),
            Err(Error::Domain(_))
        ));
        let c = Polynomial::from_f64(prec(), &[(3.0, 0.0)]);
        assert!(matches!(find_roots(&c), Err(Error::Domain(_))));
    }

    #[test]
    fn negligible_leading_coefficient_is_ill_conditioned() {
        // 1e-40 z^2 + z - 1
        let p = Polynomial::from_f64(prec(), &[(-1.0, 0.0), (1.0, 0.0), (1e-40, 0.0)]);
        assert!(matches!(find_roots(&p), Err(Error::IllConditioned(_))));
    }

    #[test]
    fn exact_zero_roots_are_kept() {
        // z^3 (z - 2)
        let p = Polynomial::from_f64(
            prec(),
            &[(0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (-2.0, 0.0), (1.0, 0.0)],
        );
        let set = find_roots(&p).unwrap();
        assert_eq!(set.roots().iter().filter(|z| z.is_zero()).count(), 3);
        assert_eq!(set.max_modulus(), 2.0);
    }

    #[test]
    fn iteration_cap_reports_partial_result() {
        let w = scalar::complex(prec(), 0.3, 0.1);
        let p = Polynomial::shifted_power(&w, 12);
        let finder = RootFinder {
            max_iterations: 1,
            ..RootFinder::default()
        };
        match finder.find(&p) {
            Err(Error::Convergence { partial, iterations, .. }) => {
                assert_eq!(iterations, 1);
                assert_eq!(partial.len(), 12);
            }
            other => panic!("expected convergence error, got {other:?}"),
        }
    }

    #[test]
    fn certification_rejects_cluster_but_keeps_isolated_root() {
        // roots of (t - 0.9)^40 spread past 1 at 113 bits, but none certify
        let w = scalar::complex(prec(), 0.9, 0.0);
        let set = find_roots(&Polynomial::shifted_power(&w, 40)).unwrap();
        assert!(set.certified_outside(1.0).is_empty());

        let roots: Vec<_> = [0.2, 3.0]
            .iter()
            .map(|&r| scalar::complex(prec(), r, 0.0))
            .collect();
        let set = find_roots(&Polynomial::from_roots(prec(), &roots)).unwrap();
        let outside = set.certified_outside(1.0);
        assert_eq!(outside.len(), 1);
        assert!((scalar::modulus_f64(&set.roots()[outside[0]]) - 3.0).abs() < 1e-20);
    }
}

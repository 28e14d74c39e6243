use gkz_core::scalar::{self, Precision};
use gkz_core::{Complex, Error, Polynomial, SampleGrid, SampledLinearMap};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const P: Precision = Precision::DEFAULT;
const D: usize = 24;

fn c(re: f64, im: f64) -> Complex {
    scalar::complex(P, re, im)
}

fn rel(a: &Complex, b: &Complex) -> f64 {
    let d = scalar::modulus_f64(&Complex::with_val(113, a - b));
    d / scalar::modulus_f64(b).max(1e-300)
}

fn random_poly(rng: &mut ChaCha8Rng, degree: usize) -> Polynomial {
    let coeffs: Vec<(f64, f64)> = (0..=degree)
        .map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    Polynomial::from_f64(P, &coeffs)
}

/// `ψ(ζ) = a + b ζ`, `φ(ζ) = s ζ + t`, with `|φ| < 1` on the grid.
fn declared(rng: &mut ChaCha8Rng) -> (Complex, Complex, Complex, Complex) {
    let a = c(rng.gen_range(1.0..2.0), rng.gen_range(-0.5..0.5));
    let b = c(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
    let s = c(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
    let t = c(rng.gen_range(-0.2..0.2), rng.gen_range(-0.2..0.2));
    (a, b, s, t)
}

#[test]
fn round_trip_recovers_declared_symbols() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let grid = SampleGrid::standard(P);
    for _ in 0..10 {
        let (a, b, s, t) = declared(&mut rng);
        let psi = |z: &Complex| Complex::with_val(113, &a + Complex::with_val(113, &b * z));
        let phi = |z: &Complex| Complex::with_val(113, &t + Complex::with_val(113, &s * z));
        let map = SampledLinearMap::weighted_composition(P, grid.clone(), D, psi, phi).unwrap();
        let symbols = map.detect_symbols(1.0).unwrap();
        for (j, z) in grid.points().iter().enumerate() {
            assert!(rel(&symbols.psi_samples[j], &psi(z)) <= 1e-10);
            let expected = phi(z);
            let err = scalar::modulus_f64(&Complex::with_val(113, &symbols.phi_samples[j] - &expected));
            assert!(err <= 1e-10 * scalar::modulus_f64(&expected).max(1.0));
        }
        for _ in 0..50 {
            let degree = rng.gen_range(0..=D);
            let f = random_poly(&mut rng, degree);
            assert!(map.verify_factorization(&symbols, &f).unwrap() <= 1e-10);
        }
    }
}

#[test]
fn per_point_scan_recovers_phi() {
    let grid = SampleGrid::standard(P);
    let map = SampledLinearMap::weighted_composition(
        P,
        grid.clone(),
        D,
        |z| Complex::with_val(113, z / 2u32) + 1u32,
        |z| Complex::with_val(113, z / 2u32),
    )
    .unwrap();
    let symbols = map.detect_symbols(1.0).unwrap();
    for j in (0..grid.len()).step_by(7) {
        let f = map.per_point_functional(j).unwrap();
        let report = f.hypothesis_scan(1.0, D).unwrap();
        assert!(report.scan_passed, "j={j}");
        let d = Complex::with_val(113, &report.witness - &symbols.phi_samples[j]);
        assert!(scalar::modulus_f64(&d) <= 1e-8);
    }
}

#[test]
fn planted_zero_is_named() {
    let grid = SampleGrid::polar(P, &[0.3, 0.6], 4).unwrap();
    let map = SampledLinearMap::weighted_composition(
        P,
        grid,
        4,
        |z| Complex::with_val(113, z - c(0.0, 0.6)),
        |z| z.clone(),
    )
    .unwrap();
    match map.detect_symbols(1.0) {
        Err(Error::HypothesisViolation { index, point, .. }) => {
            assert_eq!(index, 5);
            assert!(point.starts_with("0.0000000000000000") || point.contains("0.6i"), "{point}");
        }
        other => panic!("{other:?}"),
    }
}

//! Seeded random inputs shared by the commands and the acceptance suite.

use std::f64::consts::TAU;

use gkz_core::scalar;
use gkz_core::{Complex, MomentFunctional, Polynomial, Precision};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform in the disc `|z| <= radius`.
pub fn in_disc(rng: &mut ChaCha8Rng, prec: Precision, radius: f64) -> Complex {
    let r = radius * rng.gen::<f64>().sqrt();
    let t = rng.gen_range(0.0..TAU);
    scalar::complex(prec, r * t.cos(), r * t.sin())
}

/// Convex combination of 1 to 5 point evaluations in `|z| <= radius`. The
/// weights are rounded once at the working precision and the moments then
/// divided by their sum, so `m_0 = 1` to the last bit.
pub fn mixture(rng: &mut ChaCha8Rng, prec: Precision, radius: f64, order: usize) -> MomentFunctional {
    let count = rng.gen_range(1..=5);
    let components: Vec<(Complex, Complex)> = (0..count)
        .map(|_| {
            let w = scalar::complex(prec, rng.gen_range(0.05..1.0), 0.0);
            (w, in_disc(rng, prec, radius))
        })
        .collect();
    let raw = MomentFunctional::mixture(prec, &components, order).expect("non-empty");
    let m0 = raw.moments()[0].clone();
    let moments = raw
        .moments()
        .iter()
        .map(|m| Complex::with_val(prec.bits(), m / &m0))
        .collect();
    MomentFunctional::normalized(prec, moments).expect("normalized by construction")
}

/// `m_0 = 1`, other moments uniform in the unit disc.
pub fn moments(rng: &mut ChaCha8Rng, prec: Precision, order: usize) -> MomentFunctional {
    let mut m = vec![scalar::one(prec)];
    m.extend((0..order).map(|_| in_disc(rng, prec, 1.0)));
    MomentFunctional::normalized(prec, m).expect("m_0 = 1")
}

/// Coefficients uniform in the square `[-1, 1]²`.
pub fn polynomial(rng: &mut ChaCha8Rng, prec: Precision, degree: usize) -> Polynomial {
    let coeffs: Vec<(f64, f64)> = (0..=degree)
        .map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    Polynomial::from_f64(prec, &coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_draws() {
        let p = Precision::DEFAULT;
        let a = mixture(&mut rng(7), p, 0.5, 10);
        let b = mixture(&mut rng(7), p, 0.5, 10);
        assert_eq!(a, b);
        assert!(a.is_normalized());
    }

    #[test]
    fn disc_draws_stay_inside() {
        let mut r = rng(1);
        for _ in 0..1000 {
            assert!(scalar::modulus_f64(&in_disc(&mut r, Precision::DEFAULT, 0.9)) <= 0.9);
        }
    }
}

//! Elementary symmetric functions of root sets and the multinomial
//! expansion of `(λ_1 + … + λ_n)^k`.

use rug::{Assign, Complex};

use crate::combinatorics::{count_monomial_terms, factorial_exact};
use crate::error::{Error, Result};
use crate::roots::RootSet;
use crate::scalar::{self, Precision};

/// Up to this many roots `e_k` is summed over subsets directly.
const DIRECT_LIMIT: usize = 12;

/// Enumeration guard for [`multinomial_power_check`].
pub const MULTINOMIAL_LIMIT: u64 = 1_000_000;

fn precision_of(roots: &RootSet) -> Precision {
    roots.precision().unwrap_or_default()
}

/// `e_k(λ_1, …, λ_n)`.
pub fn elementary_symmetric(roots: &RootSet, k: usize) -> Result<Complex> {
    let n = roots.len();
    if k == 0 || k > n {
        return Err(Error::Domain(format!(
            "elementary symmetric index k = {k} outside 1..={n}"
        )));
    }
    let prec = precision_of(roots);
    if n <= DIRECT_LIMIT {
        Ok(by_subsets(roots.roots(), k, prec))
    } else {
        Ok(all_elementary(roots.roots(), prec).swap_remove(k))
    }
}

/// `[e_0, e_1, …, e_n]` by multiplying in one factor `(1 + λ_i x)` at a time.
pub fn all_elementary(roots: &[Complex], prec: Precision) -> Vec<Complex> {
    let n = roots.len();
    let mut e = vec![scalar::zero(prec); n + 1];
    e[0].assign(1);
    let mut t = scalar::zero(prec);
    for (i, root) in roots.iter().enumerate() {
        for j in (1..=i + 1).rev() {
            t.assign(&e[j - 1] * root);
            e[j] += &t;
        }
    }
    e
}

fn by_subsets(roots: &[Complex], k: usize, prec: Precision) -> Complex {
    let n = roots.len();
    let mut total = scalar::zero(prec);
    for mask in 0u32..(1u32 << n) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let mut prod = scalar::one(prec);
        for (i, root) in roots.iter().enumerate() {
            if mask & (1 << i) != 0 {
                prod *= root;
            }
        }
        total += &prod;
    }
    total
}

/// Both sides of `(Σ λ_i)^k = Σ_{j_1+…+j_n=k} k!/(j_1!⋯j_n!) Π λ_i^{j_i}`.
#[derive(Clone, Debug)]
pub struct MultinomialCheck {
    pub lhs: Complex,
    pub rhs: Complex,
    pub residual: f64,
}

/// Evaluates the power of the sum directly and by enumerating every
/// exponent vector. Refuses when there are more than [`MULTINOMIAL_LIMIT`]
/// exponent vectors.
pub fn multinomial_power_check(roots: &RootSet, k: usize) -> Result<MultinomialCheck> {
    if k == 0 {
        return Err(Error::Domain("multinomial check needs k >= 1".into()));
    }
    let n = roots.len();
    if n == 0 {
        return Err(Error::Domain("multinomial check needs at least one root".into()));
    }
    let counts = count_monomial_terms(n as u64, k as u64)?;
    if counts.a_count > MULTINOMIAL_LIMIT {
        return Err(Error::Size {
            count: counts.a_count.to_string(),
            limit: MULTINOMIAL_LIMIT,
        });
    }
    let prec = precision_of(roots);
    let lambdas = roots.roots();

    let mut sum = scalar::zero(prec);
    for l in lambdas {
        sum += l;
    }
    let lhs = scalar::powu(&sum, k as u32);

    // powers[i][j] = λ_i^j
    let powers: Vec<Vec<Complex>> = lambdas
        .iter()
        .map(|l| {
            let mut row = Vec::with_capacity(k + 1);
            let mut p = scalar::one(prec);
            for _ in 0..=k {
                row.push(p.clone());
                p *= l;
            }
            row
        })
        .collect();
    let factorials: Vec<_> = (0..=k as u64).map(factorial_exact).collect();

    let mut rhs = scalar::zero(prec);
    let mut exps = vec![0usize; n];
    let mut term = scalar::zero(prec);
    for_each_composition(&mut exps, k, 0, &mut |js| {
        let mut denom = rug::Integer::from(1);
        term.assign(1);
        for (i, &j) in js.iter().enumerate() {
            if j > 0 {
                denom *= &factorials[j];
                term *= &powers[i][j];
            }
        }
        let coeff = rug::Integer::from(&factorials[k] / &denom);
        term *= &coeff;
        rhs += &term;
    });

    let residual = scalar::modulus_f64(&Complex::with_val(prec.bits(), &lhs - &rhs));
    Ok(MultinomialCheck { lhs, rhs, residual })
}

/// Calls `f` on every `j` with `j[from..]` summing to `remaining`.
fn for_each_composition(
    exps: &mut [usize],
    remaining: usize,
    from: usize,
    f: &mut impl FnMut(&[usize]),
) {
    let n = exps.len();
    if from == n - 1 {
        exps[from] = remaining;
        f(exps);
        return;
    }
    for j in (0..=remaining).rev() {
        exps[from] = j;
        for_each_composition(exps, remaining - j, from + 1, f);
    }
    exps[from] = 0;
}

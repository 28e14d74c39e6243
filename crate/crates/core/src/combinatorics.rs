//! Exact binomials and the monomial counts of the multinomial expansion.

use rug::Integer;

use crate::error::{Error, Result};

/// Exact `C(n, k)`; zero when `k > n`.
///
/// Multiplicative formula over the smaller of `k` and `n - k`. Every
/// partial quotient is itself a binomial coefficient, so each division is
/// exact.
pub fn binomial_exact(n: u64, k: u64) -> Integer {
    if k > n {
        return Integer::new();
    }
    let k = k.min(n - k);
    let mut acc = Integer::from(1);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial_exact(n: u64) -> Integer {
    let mut acc = Integer::from(1);
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Term counts in `(λ_1 + … + λ_n)^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialCounts {
    /// Exponent vectors `j_1 + … + j_n = k`, i.e. `C(n+k-1, n-1)`.
    pub a_count: Integer,
    /// Square-free terms `λ_{i_1}⋯λ_{i_k}`, i.e. `C(n, k)`.
    pub b_count: Integer,
}

impl MonomialCounts {
    /// `A - B`, the number of terms with a repeated factor.
    pub fn excess(&self) -> Integer {
        Integer::from(&self.a_count - &self.b_count)
    }
}

pub fn count_monomial_terms(n: u64, k: u64) -> Result<MonomialCounts> {
    if n == 0 {
        return Err(Error::Domain("count_monomial_terms needs n >= 1".into()));
    }
    Ok(MonomialCounts {
        a_count: binomial_exact(n + k - 1, n - 1),
        b_count: binomial_exact(n, k),
    })
}

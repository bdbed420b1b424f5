//! Binomial coefficients, exact and in the log domain, and the binary entropy function.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};

fn check_range(n: usize, k: usize) -> Result<()> {
    if k > n {
        return Err(Error::Precondition(format!("binomial C({n}, {k}) needs k <= n")));
    }
    Ok(())
}

/// `C(n, k)` exactly, by the multiplicative recurrence `C(n, i+1) = C(n, i) (n - i) / (i + 1)`.
pub fn binom_exact(n: usize, k: usize) -> Result<BigUint> {
    check_range(n, k)?;
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    Ok(acc)
}

/// `C(n, k)` as `u128`, saturating; zero when `k > n`.
pub fn binom_u128(n: usize, k: usize) -> u128 {
    match binom_exact(n, k) {
        Ok(v) => v.to_u128().unwrap_or(u128::MAX),
        Err(_) => 0,
    }
}

/// `log2 C(n, k)`.
pub fn log_binom(n: usize, k: usize) -> Result<f64> {
    check_range(n, k)?;
    let m = k.min(n - k);
    Ok((1..=m).map(|i| ((n - m + i) as f64 / i as f64).log2()).sum())
}

/// `H(x) = -x log2 x - (1 - x) log2 (1 - x)`, with `H(0) = H(1) = 0`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Precondition(format!("entropy argument {x} outside [0, 1]")));
    }
    let term = |p: f64| if p == 0.0 { 0.0 } else { -p * p.log2() };
    Ok(term(x) + term(1.0 - x))
}

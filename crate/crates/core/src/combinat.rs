//! Catalan and Narayana numbers and the small combinatorial helpers behind
//! the counting identities.

use num_bigint::BigInt;

use crate::error::{Error, Result};

pub fn factorial(n: u64) -> BigInt {
    let mut out = BigInt::from(1);
    for k in 2..=n {
        out *= k;
    }
    out
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut out = BigInt::from(1);
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

/// `c_n = C(2n, n) / (n + 1)`, with `c_0 = 1`.
pub fn catalan(n: u64) -> BigInt {
    binomial(2 * n, n) / (n + 1)
}

/// `N_{n,k} = C(n, k) C(n, k+1) / n` for `n >= 1`, `0 <= k <= n-1`.
pub fn narayana(n: u64, k: u64) -> Result<BigInt> {
    if n == 0 || k >= n {
        return Err(Error::OutOfRange(format!("narayana({n}, {k}) needs n >= 1, k <= n-1")));
    }
    Ok(binomial(n, k) * binomial(n, k + 1) / n)
}

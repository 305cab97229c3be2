use crate::error::{Error, Result};
use crate::foundations::Order;

/// Rising factorial `(x)_n = x (x+1) ... (x+n-1)`.
pub fn pochhammer(x: f64, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, j| acc * (x + f64::from(j)))
}

/// Exact binomial coefficient `C(a, b)`.
pub fn binomial(a: u64, b: u64) -> Result<u128> {
    if b > a {
        return Err(Error::Config(format!("binomial({a}, {b}) with b > a")));
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b {
        // acc * (a - i) is divisible by (i + 1) since acc = C(a, i)
        acc = acc.checked_mul(u128::from(a - i)).ok_or(Error::Overflow {
            index: a,
            max: u64::from(u32::MAX),
        })? / u128::from(i + 1);
    }
    Ok(acc)
}

/// Zero counting function `N_n(t) = ([t])_n / n!` for `t > 0`.
pub fn counting_n(n: Order, t: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain {
            re: t,
            im: 0.0,
            reason: "counting function needs t > 0",
        });
    }
    let m = t.floor() as u64;
    if m == 0 {
        return Ok(0.0);
    }
    let n = u64::from(n.get());
    Ok(binomial(m + n - 1, n)? as f64)
}

/// Multiplicity `C(n+k-1, n-1)` of the zero of `1/Gamma_n` at `-k`.
pub fn zero_multiplicity(n: Order, k: u64) -> Result<u128> {
    let n = u64::from(n.get());
    binomial(n + k - 1, n - 1)
}

/// Both sides of `sum_{l=0}^{k-1} (k-l)_m / m! = (k)_{m+1} / (m+1)!` in integers.
pub fn southeast_diagonal_sum_exact(k: u64, m: u64) -> Result<(u128, u128)> {
    if k == 0 || m == 0 {
        return Err(Error::Config(
            "southeast diagonal sum needs k, m >= 1".into(),
        ));
    }
    let mut lhs: u128 = 0;
    for l in 0..k {
        // (j)_m / m! = C(j+m-1, m)
        lhs += binomial(k - l + m - 1, m)?;
    }
    let rhs = binomial(k + m, m + 1)?;
    Ok((lhs, rhs))
}

pub fn southeast_diagonal_sum(k: u64, m: u64) -> Result<(f64, f64)> {
    let (l, r) = southeast_diagonal_sum_exact(k, m)?;
    Ok((l as f64, r as f64))
}

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const MAX_BERNOULLI_INDEX: u64 = 64;

fn table() -> &'static Vec<BigRational> {
    static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = MAX_BERNOULLI_INDEX as usize;
        let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
        b.push(BigRational::from_integer(BigInt::from(1)));
        for m in 1..=n {
            // sum_{k=0}^{m} C(m+1, k) B_k = 0
            let mut acc = BigRational::zero();
            let mut c = BigInt::from(1);
            for (k, bk) in b.iter().enumerate() {
                acc += BigRational::from_integer(c.clone()) * bk;
                c = c * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
            }
            b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
        }
        b
    })
}

/// Exact Bernoulli number `B_m` with `B_1 = -1/2`.
pub fn bernoulli(m: u64) -> Result<BigRational> {
    if m > MAX_BERNOULLI_INDEX {
        return Err(Error::Overflow {
            index: m,
            max: MAX_BERNOULLI_INDEX,
        });
    }
    Ok(table()[m as usize].clone())
}

/// `B_m` rounded to the nearest double.
pub fn bernoulli_f64(m: u64) -> Result<f64> {
    static F: OnceLock<Vec<f64>> = OnceLock::new();
    if m > MAX_BERNOULLI_INDEX {
        return Err(Error::Overflow {
            index: m,
            max: MAX_BERNOULLI_INDEX,
        });
    }
    let t = F.get_or_init(|| {
        table()
            .iter()
            .map(|b| b.to_f64().unwrap_or(f64::NAN))
            .collect()
    });
    Ok(t[m as usize])
}

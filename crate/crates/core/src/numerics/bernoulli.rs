//! Exact Bernoulli numbers, cached.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

static CACHE: Mutex<Vec<BigRational>> = Mutex::new(Vec::new());

/// `B_0 .. B_n` with `B_1 = -1/2`.
pub fn bernoulli_table(n: usize) -> Vec<BigRational> {
    let mut cache = CACHE.lock().expect("bernoulli cache");
    if cache.len() <= n {
        *cache = compute(n.max(2 * cache.len()).max(64));
    }
    cache[..=n].to_vec()
}

pub fn bernoulli(n: usize) -> BigRational {
    bernoulli_table(n).pop().expect("table has n + 1 entries")
}

// sum_{k<=n} C(n+1, k) B_k = 0 for n >= 1
fn compute(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    for m in 1..=n {
        if m > 1 && m % 2 == 1 {
            b.push(BigRational::zero());
            continue;
        }
        let mut s = BigRational::zero();
        let mut c = BigInt::one();
        for (k, bk) in b.iter().enumerate() {
            if !bk.is_zero() {
                s += bk * &c;
            }
            c = c * (m + 1 - k) / (k + 1);
        }
        b.push(-s / BigInt::from(m + 1));
    }
    b
}

//! Numeric fast paths: `P_n^g(x)` at a fixed integer `x`, and Ramanujan's tau.
//!
//! With `x` substituted first, the exponential `E = exp(x * sum g(k) q^k / k)`
//! satisfies `q E' = (x * sum g(k) q^k) E`, i.e.
//! `n e_n = x * sum_{k=1}^{n} g(k) e_{n-k}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::arith::ArithmeticFunction;
use crate::error::{Error, Result};

/// `P_0^g(x), ..., P_len^g(x)` by the first-order recurrence.
pub fn p_values_at_integer(g: &ArithmeticFunction, x: i64, len: usize) -> Result<Vec<BigRational>> {
    let gv = g.values(len as u64)?;
    let xr = BigInt::from(x);
    let mut e: Vec<BigRational> = Vec::with_capacity(len + 1);
    e.push(BigRational::from_integer(1.into()));
    for n in 1..=len {
        let mut acc = BigRational::zero();
        for k in 1..=n {
            acc += &e[n - k] * BigRational::from_integer(&gv[k - 1] * &xr);
        }
        e.push(acc / BigRational::from_integer(BigInt::from(n)));
    }
    Ok(e)
}

/// `sigma(1..=n)` by a divisor sieve.
fn sigma_sieve(n: usize) -> Vec<u64> {
    let mut s = vec![0u64; n + 1];
    for d in 1..=n {
        for m in (d..=n).step_by(d) {
            s[m] += d as u64;
        }
    }
    s
}

/// `tau(1), ..., tau(count)`, i.e. `P_{n-1}^sigma(-24)`.
///
/// Runs in `i128` and falls back to big integers if any intermediate
/// value would overflow.
pub fn tau_range(count: usize) -> Vec<BigInt> {
    if count == 0 {
        return Vec::new();
    }
    let sig = sigma_sieve(count);
    match tau_range_i128(count, &sig) {
        Some(v) => v.into_iter().map(BigInt::from).collect(),
        None => tau_range_big(count, &sig),
    }
}

fn tau_range_i128(count: usize, sig: &[u64]) -> Option<Vec<i128>> {
    // e[j] = tau(j + 1)
    let mut e: Vec<i128> = Vec::with_capacity(count);
    e.push(1);
    for n in 1..count {
        let mut acc: i128 = 0;
        for k in 1..=n {
            let term = (sig[k] as i128).checked_mul(e[n - k])?;
            acc = acc.checked_add(term)?;
        }
        let num = acc.checked_mul(-24)?;
        if num % n as i128 != 0 {
            return None;
        }
        e.push(num / n as i128);
    }
    Some(e)
}

fn tau_range_big(count: usize, sig: &[u64]) -> Vec<BigInt> {
    let mut e: Vec<BigInt> = Vec::with_capacity(count);
    e.push(BigInt::from(1));
    for n in 1..count {
        let mut acc = BigInt::zero();
        for k in 1..=n {
            acc += &e[n - k] * sig[k];
        }
        let (q, r) = (acc * BigInt::from(-24)).div_rem(&BigInt::from(n));
        debug_assert!(r.is_zero());
        e.push(q);
    }
    e
}

/// Smallest `n <= max` with `tau(n) = 0`, if any.
pub fn first_tau_zero(max: usize) -> Option<u64> {
    tau_range(max).iter().position(Zero::is_zero).map(|i| i as u64 + 1)
}

/// Ramanujan's `tau(n)` for `n >= 1`.
pub fn tau(n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::domain("tau(0) is undefined"));
    }
    let count = n
        .to_usize()
        .ok_or_else(|| Error::domain(format!("tau({n}) is out of range")))?;
    Ok(tau_range(count).pop().expect("count >= 1"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_examples() {
        assert_eq!(tau(1).unwrap(), BigInt::from(1));
        assert_eq!(tau(2).unwrap(), BigInt::from(-24));
        assert_eq!(tau(6).unwrap(), BigInt::from(-6048));
        assert!(tau(0).is_err());
    }

    #[test]
    fn tau_is_multiplicative_on_coprimes() {
        let t = tau_range(60);
        for (m, n) in [(2usize, 3usize), (3, 4), (4, 5), (5, 7), (7, 8), (3, 20)] {
            assert_eq!(&t[m * n - 1], &(&t[m - 1] * &t[n - 1]));
        }
    }

    #[test]
    fn big_fallback_matches() {
        let sig = sigma_sieve(300);
        let fast = tau_range_i128(300, &sig).unwrap();
        let slow = tau_range_big(300, &sig);
        assert!(fast.into_iter().map(BigInt::from).eq(slow));
    }

    #[test]
    fn no_small_zeros() {
        assert_eq!(first_tau_zero(500), None);
        assert_eq!(first_tau_zero(0), None);
    }

    #[test]
    fn known_value() {
        // tau(100) = 37534859200
        assert_eq!(tau(100).unwrap(), BigInt::from(37_534_859_200i64));
    }
}

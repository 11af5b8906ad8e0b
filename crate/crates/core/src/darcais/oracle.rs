//! Independent routes to `A_n^g` and `P_n^g(x)`.
//!
//! Neither function shares code with the recursion in the parent module;
//! they exist so the recursion can be checked against something.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::ArithmeticFunction;
use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Partition count grows quickly; p(25) = 1958.
pub const DEFAULT_ORACLE_BOUND: usize = 25;

pub fn a_poly_oracle(g: &ArithmeticFunction, n: usize) -> Result<IntPoly> {
    a_poly_oracle_bounded(g, n, DEFAULT_ORACLE_BOUND)
}

/// `A_n^g` from the partition expansion
///
/// ```text
/// a_n(s) = n! * sum over partitions (1^{m_1} ... n^{m_n}) of n with sum m_j = s
///          of prod_j (1/m_j!) (g(j)/j)^{m_j}
/// ```
pub fn a_poly_oracle_bounded(g: &ArithmeticFunction, n: usize, bound: usize) -> Result<IntPoly> {
    if n > bound {
        return Err(Error::domain(format!(
            "partition oracle limited to n <= {bound}, got {n}"
        )));
    }
    g.require(n as u64)?;
    let ratios: Vec<BigRational> = (1..=n)
        .map(|j| Ok(BigRational::new(g.value(j as u64)?, BigInt::from(j))))
        .collect::<Result<_>>()?;

    let mut sums = vec![BigRational::zero(); n + 1];
    let mut mult = vec![0usize; n + 1];
    enumerate(n, 1, &mut mult, &mut |m| {
        let parts: usize = m.iter().sum();
        let mut term = BigRational::one();
        for (j, &mj) in m.iter().enumerate().skip(1) {
            if mj == 0 {
                continue;
            }
            let mut pw = BigRational::one();
            for _ in 0..mj {
                pw *= &ratios[j - 1];
            }
            term *= pw / BigRational::from_integer(factorial(mj));
        }
        sums[parts] += term;
    });

    let nf = BigRational::from_integer(factorial(n));
    let coeffs = sums
        .into_iter()
        .enumerate()
        .map(|(s, v)| {
            let c = v * &nf;
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::Internal(format!(
                    "partition oracle produced non-integer coefficient {c} at X^{s}"
                )))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPoly::new(coeffs))
}

/// Visits every multiplicity vector `m` (indexed by part size) with
/// `sum_j j * m_j = remaining`, choosing parts `j >= part` in increasing order.
fn enumerate(remaining: usize, part: usize, m: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if remaining == 0 {
        visit(m);
        return;
    }
    if part >= m.len() {
        return;
    }
    for count in (0..=remaining / part).rev() {
        m[part] = count;
        enumerate(remaining - count * part, part + 1, m, visit);
    }
    m[part] = 0;
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Coefficients of `q^0 .. q^N` in `exp(x * sum_{n>=1} g(n) q^n / n)`,
/// computed as the truncated exponential series `sum_j F^j / j!`.
pub fn series_oracle(g: &ArithmeticFunction, x: i64, len: usize) -> Result<Vec<BigRational>> {
    g.require(len as u64)?;
    let xr = BigRational::from_integer(BigInt::from(x));
    let mut f = vec![BigRational::zero(); len + 1];
    for k in 1..=len {
        f[k] = &xr * BigRational::new(g.value(k as u64)?, BigInt::from(k));
    }

    let mut result = vec![BigRational::zero(); len + 1];
    result[0] = BigRational::one();
    // power = F^j / j!, truncated at q^len; F has no constant term so j <= len.
    let mut power = result.clone();
    for j in 1..=len {
        let mut next = vec![BigRational::zero(); len + 1];
        for (i, pi) in power.iter().enumerate() {
            if pi.is_zero() {
                continue;
            }
            for k in 1..=len - i {
                if !f[k].is_zero() {
                    next[i + k] += pi * &f[k];
                }
            }
        }
        let jr = BigRational::from_integer(BigInt::from(j));
        for c in next.iter_mut() {
            *c /= &jr;
        }
        for (r, c) in result.iter_mut().zip(&next) {
            *r += c;
        }
        power = next;
    }
    Ok(result)
}

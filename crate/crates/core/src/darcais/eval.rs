//! Exact evaluation of rational polynomials at `a*omega_D + b` and
//! `a*zeta_m + b`.
//!
//! Values live in the power basis of the respective field, so a result is
//! zero exactly when the argument is a root.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::{euler_phi, require_quadratic_d};
use crate::error::{Error, Result};
use crate::polymod::cyclotomic;
use crate::poly::RatPoly;

/// `u + v * omega_D` with rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticValue {
    pub u: BigRational,
    pub v: BigRational,
}

impl QuadraticValue {
    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }
}

/// Evaluates `p(a * omega_D + b)` in the basis `{1, omega_D}`.
pub fn evaluate_at_quadratic(p: &RatPoly, d: i64, a: &BigInt, b: &BigInt) -> Result<QuadraticValue> {
    require_quadratic_d(d)?;
    let one_mod_four = d.rem_euclid(4) == 1;
    // omega^2 = sq_const + sq_lin * omega
    let (sq_const, sq_lin) = if one_mod_four {
        (BigRational::from_integer(BigInt::from((d - 1) / 4)), BigRational::from_integer(1.into()))
    } else {
        (BigRational::from_integer(BigInt::from(d)), BigRational::zero())
    };
    let au = BigRational::from_integer(b.clone());
    let av = BigRational::from_integer(a.clone());

    let mut u = BigRational::zero();
    let mut v = BigRational::zero();
    for c in p.coeffs().iter().rev() {
        // (u + v w)(au + av w) = u au + v av w^2 + (u av + v au) w
        let vv = &v * &av;
        let nu = &u * &au + &vv * &sq_const + c;
        let nv = &u * &av + &v * &au + &vv * &sq_lin;
        u = nu;
        v = nv;
    }
    Ok(QuadraticValue { u, v })
}

/// Evaluates `p(a * zeta_m + b)` in the basis `1, zeta_m, ..., zeta_m^{phi(m)-1}`.
pub fn evaluate_at_cyclotomic(p: &RatPoly, m: u64, a: &BigInt, b: &BigInt) -> Result<Vec<BigRational>> {
    if m < 3 {
        return Err(Error::domain(format!("cyclotomic modulus must be >= 3, got {m}")));
    }
    let phi = euler_phi(m)? as usize;
    let modulus = cyclotomic(m)?;
    // zeta^phi = -sum_{i<phi} c_i zeta^i
    let tail: Vec<BigRational> = modulus.coeffs()[..phi]
        .iter()
        .map(|c| BigRational::from_integer(-c.clone()))
        .collect();
    let ar = BigRational::from_integer(a.clone());
    let br = BigRational::from_integer(b.clone());

    let mut acc = vec![BigRational::zero(); phi];
    for c in p.coeffs().iter().rev() {
        // acc <- acc * (a zeta + b) + c
        let overflow = &acc[phi - 1] * &ar;
        let mut next = vec![BigRational::zero(); phi];
        for i in 0..phi {
            next[i] = &acc[i] * &br;
            if i > 0 {
                next[i] += &acc[i - 1] * &ar;
            }
        }
        if !overflow.is_zero() {
            for (n, t) in next.iter_mut().zip(&tail) {
                *n += &overflow * t;
            }
        }
        next[0] += c;
        acc = next;
    }
    Ok(acc)
}

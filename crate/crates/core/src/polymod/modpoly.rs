use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::arith::{is_prime, pow_mod};
use crate::error::{Error, Result};

/// Moduli are single-precision primes so that products fit in a `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

/// Validates a modulus for [`ModPoly`].
pub fn require_modulus(p: u64) -> Result<()> {
    if p >= MAX_MODULUS {
        return Err(Error::domain(format!("modulus {p} exceeds 2^31")));
    }
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    Ok(())
}

/// Polynomial over `F_p`, coefficients ascending and reduced into `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ModPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl ModPoly {
    /// Builds a polynomial over `F_p` after checking that `p` is a usable prime.
    pub fn new(p: u64, coeffs: Vec<u64>) -> Result<Self> {
        require_modulus(p)?;
        Ok(Self::from_raw(p, coeffs.into_iter().map(|c| c % p).collect()))
    }

    pub fn from_i64s(p: u64, coeffs: &[i64]) -> Result<Self> {
        require_modulus(p)?;
        Ok(Self::from_raw(
            p,
            coeffs
                .iter()
                .map(|&c| (c as i128).rem_euclid(p as i128) as u64)
                .collect(),
        ))
    }

    /// No validation: `p` must already be a checked modulus and the
    /// coefficients reduced.
    pub(crate) fn from_raw(p: u64, coeffs: Vec<u64>) -> Self {
        let mut f = ModPoly { p, coeffs };
        f.normalize();
        f
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn zero(p: u64) -> Self {
        ModPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::constant(p, 1)
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::from_raw(p, vec![c % p])
    }

    pub fn x(p: u64) -> Self {
        Self::from_raw(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        pow_mod(a, self.p - 2, self.p)
    }

    /// Divides by the leading coefficient; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.inv(self.leading());
        self.scale(inv)
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.p;
        Self::from_raw(p, self.coeffs.iter().map(|&a| a * (c % p) % p).collect())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::from_raw(p, (0..n).map(|i| (self.coeff(i) + rhs.coeff(i)) % p).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::from_raw(
            p,
            (0..n).map(|i| (self.coeff(i) + p - rhs.coeff(i)) % p).collect(),
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        Self::from_raw(p, out)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        if divisor.is_zero() {
            return Err(Error::domain("division by the zero polynomial"));
        }
        let p = self.p;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(p), self.clone()));
        }
        let inv = self.inv(divisor.leading());
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i] * inv % p;
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let k = i - dd + j;
                rem[k] = (rem[k] + p - c * d % p) % p;
            }
        }
        rem.truncate(dd);
        Ok((Self::from_raw(p, quot), Self::from_raw(p, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Exact quotient; errors when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Internal("inexact division over F_p".into()))
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        !self.is_zero() && other.rem(self).map_or(false, |r| r.is_zero())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::from_raw(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| (k as u64 % p) * c % p)
                .collect(),
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        self.coeffs.iter().rev().fold(0, |acc, &c| (acc * (x % p) + c) % p)
    }

    /// `self^e mod modulus` for an arbitrary-precision exponent.
    pub fn pow_mod(&self, e: &BigUint, modulus: &Self) -> Result<Self> {
        let mut acc = Self::one(self.p).rem(modulus)?;
        let base = self.rem(modulus)?;
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(modulus)?;
            if e.bit(i) {
                acc = acc.mul(&base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    pub fn pow_mod_u64(&self, e: u64, modulus: &Self) -> Result<Self> {
        self.pow_mod(&BigUint::from(e), modulus)
    }

    /// Given `f(X) = h(X^p)`, returns `h` (the `p`-th root in `F_p[X]`).
    pub(crate) fn pth_root(&self) -> Self {
        let p = self.p as usize;
        Self::from_raw(self.p, self.coeffs.iter().step_by(p).copied().collect())
    }

    /// Degree first, then coefficients from the top down.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 (mod {})", self.p);
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if c != 1 || k == 0 {
                write!(f, "{c}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("X")?,
                _ => write!(f, "X^{k}")?,
            }
        }
        write!(f, " (mod {})", self.p)
    }
}

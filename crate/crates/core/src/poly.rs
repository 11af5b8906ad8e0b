//! Dense univariate polynomials over `Z` and `Q`.
//!
//! Coefficients are stored in ascending degree order. The vector is empty
//! for the zero polynomial and otherwise ends in a nonzero coefficient.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Coefficient rings usable in [`Poly`].
pub trait Coeff: Clone + Num + Signed + fmt::Display + fmt::Debug {}
impl<T: Clone + Num + Signed + fmt::Display + fmt::Debug> Coeff for T {}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

/// Polynomial with arbitrary-precision integer coefficients.
pub type IntPoly = Poly<BigInt>;
/// Polynomial with exact rational coefficients.
pub type RatPoly = Poly<BigRational>;

impl<T: Coeff> Poly<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        let mut p = Poly { coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![T::one()] }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `X`.
    pub fn x() -> Self {
        Self::monomial(T::one(), 1)
    }

    /// `c * X^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `X - root`.
    pub fn linear_root(root: T) -> Self {
        Self::new(vec![-root, T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `X^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiplies by `X^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Substitutes `scale * X + shift` for `X`.
    pub fn compose_linear(&self, scale: &T, shift: &T) -> Self {
        let lin = Self::new(vec![shift.clone(), scale.clone()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * &lin) + &Self::constant(c.clone()))
    }

    /// Division by a monic divisor; valid over any coefficient ring.
    pub fn div_rem_monic(&self, divisor: &Self) -> Result<(Self, Self)> {
        if !divisor.is_monic() {
            return Err(Error::domain("divisor must be monic"));
        }
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i].clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] = rem[i - dd + j].clone() - c.clone() * d.clone();
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Divides by `X` when the constant term vanishes.
    pub fn div_x(&self) -> Result<Self> {
        match self.coeffs.first() {
            None => Ok(Self::zero()),
            Some(c) if c.is_zero() => Ok(Poly {
                coeffs: self.coeffs[1..].to_vec(),
            }),
            Some(_) => Err(Error::domain("constant term is nonzero, X does not divide")),
        }
    }

    /// Space-separated coefficients, constant term first. Zero prints as `0`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse_text(text: &str) -> Result<Self>
    where
        T: std::str::FromStr,
    {
        text.split_whitespace()
            .map(|tok| {
                tok.parse::<T>()
                    .map_err(|_| Error::Parse(format!("bad coefficient `{tok}`")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

impl RatPoly {
    pub fn from_int(p: &IntPoly) -> Self {
        Poly::new(
            p.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Returns the integer polynomial when all denominators are 1.
    pub fn to_int(&self) -> Option<IntPoly> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(Poly::new)
    }

    /// Euclidean division over `Q`.
    pub fn div_rem(&self, divisor: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        let lead = divisor
            .leading()
            .ok_or_else(|| Error::domain("division by the zero polynomial"))?
            .clone();
        let monic = divisor.scale(&lead.recip());
        let (q, r) = self.div_rem_monic(&monic)?;
        Ok((q.scale(&lead.recip()), r))
    }

    /// Least common multiple of the denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

impl IntPoly {
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Product of `(X - r)` over the given integer roots.
    pub fn from_roots(roots: &[i64]) -> Self {
        roots
            .iter()
            .fold(Self::one(), |acc, &r| &acc * &Self::linear_root(BigInt::from(r)))
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        RatPoly::from_int(self).eval(x)
    }

    /// Exact quotient by a monic polynomial, erroring on a nonzero remainder.
    pub fn div_exact_monic(&self, divisor: &IntPoly) -> Result<IntPoly> {
        let (q, r) = self.div_rem_monic(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Internal("inexact polynomial division".into()))
        }
    }
}

impl<T: Coeff> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Coeff> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Coeff> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Coeff> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Coeff> $tr for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, rhs: Poly<T>) -> Poly<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Human-readable form, highest degree first: `X^2 + 3X`, `1/6X^3 - X`.
impl<T: Coeff> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if k == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("X")?,
                _ => write!(f, "X^{k}")?,
            }
        }
        Ok(())
    }
}

/// `{"degree": d, "coeffs": ["c0", "c1", ...]}`; the zero polynomial has
/// degree -1 and no coefficients.
impl<T: Coeff> Serialize for Poly<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Poly", 2)?;
        st.serialize_field("degree", &self.degree().map_or(-1, |d| d as i64))?;
        let coeffs: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

#[derive(Deserialize)]
struct PolyRepr {
    degree: i64,
    coeffs: Vec<String>,
}

impl<'de, T: Coeff + std::str::FromStr> Deserialize<'de> for Poly<T> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = PolyRepr::deserialize(d)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|c| {
                c.parse::<T>()
                    .map_err(|_| D::Error::custom(format!("bad coefficient `{c}`")))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let p = Poly::new(coeffs);
        if p.degree().map_or(-1, |x| x as i64) != repr.degree {
            return Err(D::Error::custom("degree does not match coefficients"));
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn canonical_strip() {
        assert!(ip(&[0, 0, 0]).is_zero());
        assert_eq!(ip(&[1, 2, 0, 0]).degree(), Some(1));
    }

    #[test]
    fn display_forms() {
        assert_eq!(ip(&[0, 3, 1]).to_string(), "X^2 + 3X");
        assert_eq!(ip(&[4, -1, -1, 1]).to_string(), "X^3 - X^2 - X + 4");
        assert_eq!(ip(&[-1]).to_string(), "-1");
        let r = RatPoly::new(vec![
            BigRational::zero(),
            BigRational::new(4.into(), 3.into()),
        ]);
        assert_eq!(r.to_string(), "4/3X");
    }

    #[test]
    fn text_and_json_forms() {
        let p = ip(&[8, 21, 1]);
        assert_eq!(p.to_text(), "8 21 1");
        assert_eq!(IntPoly::parse_text("8 21 1").unwrap(), p);
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(js, r#"{"degree":2,"coeffs":["8","21","1"]}"#);
        let back: IntPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p);
        assert_eq!(serde_json::to_string(&IntPoly::zero()).unwrap(), r#"{"degree":-1,"coeffs":[]}"#);
        assert!(serde_json::from_str::<IntPoly>(r#"{"degree":3,"coeffs":["1"]}"#).is_err());
    }

    #[test]
    fn monic_division() {
        let f = ip(&[-1, 0, 0, 0, 1]);
        let (q, r) = f.div_rem_monic(&ip(&[1, 0, 1])).unwrap();
        assert_eq!(q, ip(&[-1, 0, 1]));
        assert!(r.is_zero());
        assert!(f.div_rem_monic(&ip(&[1, 2])).is_err());
    }

    #[test]
    fn compose_linear_shift() {
        // (X - 1)^2 at X = 2Y + 1 is 4Y^2.
        let p = ip(&[1, -2, 1]);
        let q = p.compose_linear(&BigInt::from(2), &BigInt::from(1));
        assert_eq!(q, ip(&[0, 0, 4]));
    }

    fn small_poly() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-20i64..20, 0..7).prop_map(|v| ip(&v))
    }

    proptest! {
        #[test]
        fn division_identity(a in small_poly(), b in prop::collection::vec(-9i64..9, 0..4)) {
            let mut b = b;
            b.push(1);
            let b = ip(&b);
            let (q, r) = a.div_rem_monic(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree().map_or(true, |d| d < b.degree().unwrap()));
        }

        #[test]
        fn evaluation_is_a_ring_map(a in small_poly(), b in small_poly(), x in -10i64..10) {
            let x = BigInt::from(x);
            prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
            prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
        }

        #[test]
        fn text_round_trip(a in small_poly()) {
            prop_assert_eq!(IntPoly::parse_text(&a.to_text()).unwrap(), a);
        }
    }
}

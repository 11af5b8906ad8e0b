//! Polynomials over prime fields, cyclotomic polynomials, and `A_n^g mod p`
//! without materializing the integer polynomial.

pub mod factor;
pub mod modpoly;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::arith::{divisors, mul_mod, pow_mod, ArithmeticFunction};
use crate::error::{Error, Result};
use crate::poly::{IntPoly, RatPoly};

pub use factor::{factor, factor_with_seed, is_irreducible, Factorization, DEFAULT_SEED};
pub use modpoly::{require_modulus, ModPoly, MAX_MODULUS};

fn residue(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

/// Coefficient-wise reduction of an integer polynomial.
pub fn reduce_int(f: &IntPoly, p: u64) -> Result<ModPoly> {
    require_modulus(p)?;
    Ok(ModPoly::from_raw(p, f.coeffs().iter().map(|c| residue(c, p)).collect()))
}

/// Reduction of a rational polynomial; every denominator must be a unit mod `p`.
pub fn reduce_rat(f: &RatPoly, p: u64) -> Result<ModPoly> {
    require_modulus(p)?;
    let coeffs = f
        .coeffs()
        .iter()
        .map(|c| {
            let den = residue(c.denom(), p);
            if den == 0 {
                return Err(Error::NonInvertible {
                    denominator: c.denom().to_string(),
                    p,
                });
            }
            Ok(mul_mod(residue(c.numer(), p), pow_mod(den, p - 2, p), p))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ModPoly::from_raw(p, coeffs))
}

/// The `m`-th cyclotomic polynomial, by dividing `X^m - 1` by `Phi_d` for
/// every proper divisor `d` of `m`.
pub fn cyclotomic(m: u64) -> Result<IntPoly> {
    if m == 0 {
        return Err(Error::domain("cyclotomic polynomial needs m >= 1"));
    }
    let divs = divisors(m);
    let mut found: Vec<(u64, IntPoly)> = Vec::with_capacity(divs.len());
    for &d in &divs {
        let mut f = IntPoly::monomial(BigInt::one(), d as usize) - IntPoly::one();
        for (e, phi_e) in &found {
            if d % e == 0 {
                f = f.div_exact_monic(phi_e)?;
            }
        }
        found.push((d, f));
    }
    Ok(found.pop().expect("m has at least one divisor").1)
}

/// `A_p^g mod p = X^p - g(p) X`.
pub fn a_p_mod(g: &ArithmeticFunction, p: u64) -> Result<ModPoly> {
    require_modulus(p)?;
    let gp = g.value_mod(p, p)?;
    let mut c = vec![0u64; p as usize + 1];
    c[1] = (p - gp) % p;
    c[p as usize] = 1;
    Ok(ModPoly::from_raw(p, c))
}

/// `A_n^g mod p` as `A_r^g * (A_p^g)^l` with `n = l p + r`.
///
/// `A_r^g` comes from the recursion carried out mod `p` (only `r < p` terms),
/// and `A_p^g` from its closed form, so `g` is needed up to `r`, plus `g(p)`
/// when `l > 0`.
pub fn a_poly_mod(g: &ArithmeticFunction, n: u64, p: u64) -> Result<ModPoly> {
    require_modulus(p)?;
    let r = n % p;
    let l = n / p;
    g.require(if l > 0 { p.max(r) } else { r })?;
    let mut a: Vec<ModPoly> = vec![ModPoly::one(p)];
    let gv: Vec<u64> = (1..=r).map(|k| g.value_mod(k, p)).collect::<Result<_>>()?;
    for m in 1..=r as usize {
        let mut acc = vec![0u64; m];
        let mut falling = 1u64;
        for k in 1..=m {
            if k > 1 {
                falling = falling * ((m - k + 1) as u64 % p) % p;
            }
            let w = falling * gv[k - 1] % p;
            if w == 0 {
                continue;
            }
            for (i, &c) in a[m - k].coeffs().iter().enumerate() {
                acc[i] = (acc[i] + w * c) % p;
            }
        }
        let mut shifted = vec![0u64];
        shifted.extend(acc);
        a.push(ModPoly::from_raw(p, shifted));
    }
    let base = a.pop().expect("A_0 is present");
    if l == 0 {
        return Ok(base);
    }
    Ok(base.mul(&a_p_mod(g, p)?.pow(l)))
}

/// Factorization of `A_n^g mod p`, assembled from the factorizations of
/// `A_r^g` and `A_p^g` so that large `n` stay cheap.
pub fn factor_a_poly_mod(g: &ArithmeticFunction, n: u64, p: u64, seed: u64) -> Result<Factorization> {
    let r = n % p;
    let l = n / p;
    let base = factor_with_seed(&a_poly_mod(g, r, p)?, seed)?;
    if l == 0 {
        return Ok(base);
    }
    let ap = factor_with_seed(&a_p_mod(g, p)?, seed)?;
    base.times_power(&ap, l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::darcais::a_poly;

    #[test]
    fn assembled_factorization_matches_direct() {
        let sigma = ArithmeticFunction::sigma();
        let id = ArithmeticFunction::identity();
        for g in [&sigma, &id] {
            for p in [2u64, 3, 5, 7] {
                for n in 0..=30u64 {
                    let direct = factor(&a_poly_mod(g, n, p).unwrap()).unwrap();
                    assert_eq!(factor_a_poly_mod(g, n, p, DEFAULT_SEED).unwrap(), direct, "n={n} p={p}");
                }
            }
        }
    }

    fn mp(p: u64, c: &[i64]) -> ModPoly {
        ModPoly::from_i64s(p, c).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let h5 = IntPoly::from_i64s(&[8, 21, 1]);
        assert_eq!(reduce_int(&h5, 7).unwrap(), mp(7, &[1, 0, 1]));
        assert!(reduce_int(&IntPoly::zero(), 5).unwrap().is_zero());
        let h6 = IntPoly::from_i64s(&[144, 181, 34, 1]);
        assert_eq!(reduce_int(&h6, 7).unwrap(), mp(7, &[4, -1, -1, 1]));
        assert_eq!(reduce_int(&h6, 7).unwrap().coeffs(), &[4, 6, 6, 1]);
        assert!(reduce_int(&h5, 9).is_err());
    }

    #[test]
    fn reduce_rational() {
        let p3 = crate::darcais::p_poly(&ArithmeticFunction::sigma(), 3).unwrap();
        // (X^3 + 9X^2 + 8X)/6 mod 7, 6^{-1} = 6
        assert_eq!(reduce_rat(&p3, 7).unwrap(), mp(7, &[0, 48, 54, 6]));
        assert!(matches!(reduce_rat(&p3, 3), Err(Error::NonInvertible { p: 3, .. })));
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic(1).unwrap(), IntPoly::from_i64s(&[-1, 1]));
        assert_eq!(cyclotomic(4).unwrap(), IntPoly::from_i64s(&[1, 0, 1]));
        assert_eq!(cyclotomic(12).unwrap(), IntPoly::from_i64s(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(3).unwrap(), IntPoly::from_i64s(&[1, 1, 1]));
        // Phi_105 is the first with a coefficient -2
        assert!(cyclotomic(105).unwrap().coeffs().contains(&BigInt::from(-2)));
        assert!(cyclotomic(0).is_err());
    }

    #[test]
    fn cyclotomic_properties() {
        for m in 1..=60u64 {
            let phi = cyclotomic(m).unwrap();
            assert_eq!(phi.degree(), Some(crate::arith::euler_phi(m).unwrap() as usize));
            let xm1 = IntPoly::monomial(BigInt::one(), m as usize) - IntPoly::one();
            assert!(xm1.div_rem_monic(&phi).unwrap().1.is_zero());
            // irreducible mod a prime q that generates (Z/m)^*, when one exists
            if let Some(q) = (2..400u64).find(|&q| {
                crate::arith::is_prime(q)
                    && m % q != 0
                    && crate::arith::multiplicative_order(q % m.max(1), m).ok()
                        == crate::arith::euler_phi(m).ok()
            }) {
                if m >= 3 {
                    assert!(is_irreducible(&reduce_int(&phi, q).unwrap()).unwrap(), "m = {m}, q = {q}");
                }
            }
        }
    }

    #[test]
    fn a_poly_mod_examples() {
        let sigma = ArithmeticFunction::sigma();
        assert_eq!(
            a_poly_mod(&sigma, 12, 7).unwrap(),
            reduce_int(&a_poly(&sigma, 12).unwrap(), 7).unwrap()
        );
        let id = ArithmeticFunction::identity();
        assert_eq!(a_poly_mod(&id, 10, 5).unwrap(), ModPoly::x(5).pow(10));
        for p in [2u64, 3, 5, 7] {
            let gp = sigma.value_mod(p, p).unwrap() as i64;
            let mut c = vec![0i64; p as usize + 1];
            c[1] = -gp;
            c[p as usize] = 1;
            assert_eq!(a_poly_mod(&sigma, p, p).unwrap(), mp(p, &c));
        }
    }

    #[test]
    fn a_poly_mod_matches_reduction() {
        for g in [ArithmeticFunction::sigma(), ArithmeticFunction::identity()] {
            let table = crate::darcais::DArcaisTable::with_len(g.clone(), 40).unwrap();
            for p in [2u64, 3, 5, 7, 11] {
                for n in 0..=40u64 {
                    let want = reduce_int(&table.a_polys()[n as usize], p).unwrap();
                    assert_eq!(a_poly_mod(&g, n, p).unwrap(), want, "g = {g}, n = {n}, p = {p}");
                }
            }
        }
    }

    #[test]
    fn short_table_needs_only_what_it_uses() {
        let g = ArithmeticFunction::from_table("t", vec![1.into(), 2.into(), 3.into()]).unwrap();
        assert!(a_poly_mod(&g, 3, 5).is_ok());
        assert!(matches!(a_poly_mod(&g, 6, 5), Err(Error::Range { needed: 5, .. })));
    }
}

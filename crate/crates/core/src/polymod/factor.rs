//! Complete factorization over `F_p`: squarefree decomposition, then
//! distinct-degree splitting, then equal-degree splitting.
//!
//! Equal-degree splitting is randomized (Cantor-Zassenhaus for odd `p`, the
//! trace map for `p = 2`) and driven by a seeded ChaCha stream, so every run
//! with the same seed is reproducible. The factor list is sorted
//! canonically, which makes the output independent of the random path.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::modpoly::ModPoly;
use crate::arith::factorize;
use crate::error::{Error, Result};

pub const DEFAULT_SEED: u64 = 1;

/// `unit * prod f_i^{e_i}` with monic, irreducible, pairwise distinct `f_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    p: u64,
    seed: u64,
    unit: u64,
    factors: Vec<(ModPoly, u32)>,
}

impl Factorization {
    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn unit(&self) -> u64 {
        self.unit
    }

    pub fn factors(&self) -> &[(ModPoly, u32)] {
        &self.factors
    }

    /// Multiplies everything back together.
    pub fn product(&self) -> ModPoly {
        self.factors
            .iter()
            .fold(ModPoly::constant(self.p, self.unit), |acc, (f, e)| {
                acc.mul(&f.pow(u64::from(*e)))
            })
    }

    /// Degrees of the irreducible factors, repeated by multiplicity.
    pub fn degree_profile(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (f, e) in &self.factors {
            for _ in 0..*e {
                out.push(f.degree().unwrap_or(0));
            }
        }
        out
    }

    pub fn is_split(&self) -> bool {
        self.factors.iter().all(|(f, _)| f.degree() == Some(1))
    }

    pub fn multiplicity_of(&self, f: &ModPoly) -> u32 {
        let f = f.monic();
        self.factors
            .iter()
            .find(|(g, _)| *g == f)
            .map_or(0, |(_, e)| *e)
    }

    /// Factorization of `self * other^k`, merged and sorted canonically.
    pub fn times_power(&self, other: &Factorization, k: u64) -> Result<Factorization> {
        if self.p != other.p {
            return Err(Error::domain("factorizations over different fields"));
        }
        let too_big = || Error::Range {
            name: "factor multiplicity".into(),
            needed: k,
            available: u64::from(u32::MAX),
        };
        let mut all = self.factors.clone();
        for (f, e) in &other.factors {
            let extra = u64::from(*e)
                .checked_mul(k)
                .and_then(|v| u32::try_from(v).ok())
                .ok_or_else(too_big)?;
            if extra == 0 {
                continue;
            }
            match all.iter_mut().find(|(g, _)| g == f) {
                Some((_, m)) => *m = m.checked_add(extra).ok_or_else(too_big)?,
                None => all.push((f.clone(), extra)),
            }
        }
        all.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        let unit = crate::arith::mul_mod(self.unit, crate::arith::pow_mod(other.unit, k, self.p), self.p);
        Ok(Factorization {
            p: self.p,
            seed: self.seed,
            unit,
            factors: all,
        })
    }
}

impl Serialize for Factorization {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            coeffs: &'a [u64],
            mult: u32,
        }
        let entries: Vec<Entry<'_>> = self
            .factors
            .iter()
            .map(|(f, e)| Entry {
                coeffs: f.coeffs(),
                mult: *e,
            })
            .collect();
        let mut st = s.serialize_struct("Factorization", 4)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("seed", &self.seed)?;
        st.serialize_field("unit", &self.unit)?;
        st.serialize_field("factors", &entries)?;
        st.end()
    }
}

pub fn factor(f: &ModPoly) -> Result<Factorization> {
    factor_with_seed(f, DEFAULT_SEED)
}

pub fn factor_with_seed(f: &ModPoly, seed: u64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::domain("cannot factor the zero polynomial"));
    }
    let p = f.modulus();
    let unit = f.leading();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors: Vec<(ModPoly, u32)> = Vec::new();
    for (sqf, mult) in squarefree_decomposition(&f.monic())? {
        for (block, d) in distinct_degree(&sqf)? {
            for irr in equal_degree(&block, d, &mut rng)? {
                factors.push((irr, mult));
            }
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    // Distinct squarefree parts are coprime, so merging is only a safeguard
    // against equal factors reaching us from different parts.
    let mut merged: Vec<(ModPoly, u32)> = Vec::with_capacity(factors.len());
    for (g, e) in factors {
        match merged.last_mut() {
            Some((last, m)) if *last == g => *m += e,
            _ => merged.push((g, e)),
        }
    }
    Ok(Factorization {
        p,
        seed,
        unit,
        factors: merged,
    })
}

/// Monic squarefree `(part, multiplicity)` pairs with `f = prod part^mult`.
pub fn squarefree_decomposition(f: &ModPoly) -> Result<Vec<(ModPoly, u32)>> {
    let p = f.modulus();
    let f = f.monic();
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    let df = f.derivative();
    if df.is_zero() {
        // f = h(X^p)
        for (g, e) in squarefree_decomposition(&f.pth_root())? {
            out.push((g, e * p as u32));
        }
        return Ok(out);
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_exact(&c)?;
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let part = w.div_exact(&y)?;
        if !part.is_one() {
            out.push((part, i));
        }
        w = y;
        c = c.div_exact(&w)?;
        i += 1;
    }
    if !c.is_one() {
        for (g, e) in squarefree_decomposition(&c.pth_root())? {
            out.push((g, e * p as u32));
        }
    }
    Ok(out)
}

/// Splits a monic squarefree `f` into `(product of all degree-d factors, d)`.
pub fn distinct_degree(f: &ModPoly) -> Result<Vec<(ModPoly, usize)>> {
    let p = f.modulus();
    let x = ModPoly::x(p);
    let mut rest = f.monic();
    let mut out = Vec::new();
    let mut h = x.clone();
    let mut d = 0usize;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod_u64(p, &rest)?;
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_exact(&g)?;
            h = h.rem(&rest)?;
            out.push((g, d));
        }
    }
    if let Some(deg) = rest.degree().filter(|&deg| deg > 0) {
        out.push((rest, deg));
    }
    Ok(out)
}

fn random_poly(p: u64, below_degree: usize, rng: &mut ChaCha8Rng) -> ModPoly {
    ModPoly::from_raw(p, (0..below_degree).map(|_| rng.gen_range(0..p)).collect())
}

/// Splits a monic squarefree `f` whose irreducible factors all have degree `d`.
pub fn equal_degree(f: &ModPoly, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<ModPoly>> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Ok(Vec::new());
    }
    if n % d != 0 {
        return Err(Error::Internal(format!(
            "degree {n} is not a multiple of the factor degree {d}"
        )));
    }
    if n == d {
        return Ok(vec![f.monic()]);
    }
    let p = f.modulus();
    let exponent = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    loop {
        let a = random_poly(p, n, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut g = a.gcd(f);
        if g.is_one() {
            let b = if p == 2 {
                // trace map a + a^2 + ... + a^(2^(d-1))
                let mut t = a.rem(f)?;
                let mut acc = t.clone();
                for _ in 1..d {
                    t = t.mul(&t).rem(f)?;
                    acc = acc.add(&t);
                }
                acc
            } else {
                a.pow_mod(&exponent, f)?.sub(&ModPoly::one(p))
            };
            g = b.gcd(f);
        }
        let deg_g = g.degree().unwrap_or(0);
        if deg_g > 0 && deg_g < n {
            let rest = f.div_exact(&g)?;
            let mut out = equal_degree(&g, d, rng)?;
            out.extend(equal_degree(&rest, d, rng)?);
            return Ok(out);
        }
    }
}

/// Rabin's test: `X^(p^n) = X mod f` and `gcd(X^(p^(n/q)) - X, f) = 1`
/// for every prime `q | n`.
pub fn is_irreducible(f: &ModPoly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::domain("the zero polynomial has no irreducibility"));
    }
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Ok(false);
    }
    if n == 1 {
        return Ok(true);
    }
    let f = f.monic();
    let p = f.modulus();
    let x = ModPoly::x(p);
    // frob[k] = X^(p^k) mod f
    let mut frob = vec![x.clone()];
    for k in 1..=n {
        let next = frob[k - 1].pow_mod_u64(p, &f)?;
        frob.push(next);
    }
    if frob[n] != x.rem(&f)? {
        return Ok(false);
    }
    for (q, _) in factorize(n as u64) {
        let k = n / q as usize;
        if !frob[k].sub(&x).gcd(&f).is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mp(p: u64, c: &[i64]) -> ModPoly {
        ModPoly::from_i64s(p, c).unwrap()
    }

    #[test]
    fn x2_plus_1() {
        let f7 = factor(&mp(7, &[1, 0, 1])).unwrap();
        assert_eq!(f7.factors(), &[(mp(7, &[1, 0, 1]), 1)]);
        let f5 = factor(&mp(5, &[1, 0, 1])).unwrap();
        assert_eq!(f5.factors(), &[(mp(5, &[2, 1]), 1), (mp(5, &[3, 1]), 1)]);
    }

    #[test]
    fn x_to_the_p_minus_x() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let mut c = vec![0i64; p as usize + 1];
            c[1] = -1;
            c[p as usize] = 1;
            let fac = factor(&mp(p, &c)).unwrap();
            assert_eq!(fac.factors().len(), p as usize);
            for (i, (f, e)) in fac.factors().iter().enumerate() {
                assert_eq!(*e, 1);
                assert_eq!(f, &mp(p, &[i as i64, 1]));
            }
        }
    }

    #[test]
    fn repeated_and_inseparable_factors() {
        // (X+1)^4 (X^2+X+1)^2 over F_2
        let a = mp(2, &[1, 1]).pow(4);
        let b = mp(2, &[1, 1, 1]).pow(2);
        let fac = factor(&a.mul(&b)).unwrap();
        assert_eq!(fac.factors(), &[(mp(2, &[1, 1]), 4), (mp(2, &[1, 1, 1]), 2)]);
        // X^9 - 1 = (X - 1)^9 over F_3, with a nonmonic unit
        let f = mp(3, &[-2, 0, 0, 0, 0, 0, 0, 0, 0, 2]);
        let fac = factor(&f).unwrap();
        assert_eq!(fac.unit(), 2);
        assert_eq!(fac.factors(), &[(mp(3, &[-1, 1]), 9)]);
        assert_eq!(fac.product(), f);
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&mp(7, &[4, -1, -1, 1])).unwrap());
        assert!(!is_irreducible(&mp(5, &[1, 0, 1])).unwrap());
        assert!(is_irreducible(&mp(2, &[-1, 1])).unwrap());
        assert!(!is_irreducible(&mp(7, &[3])).unwrap());
        assert!(is_irreducible(&ModPoly::zero(7)).is_err());
        assert!(factor(&ModPoly::zero(7)).is_err());
        // X^4 + X + 1 is irreducible over F_2, X^4 + X^2 + 1 = (X^2+X+1)^2 is not
        assert!(is_irreducible(&mp(2, &[1, 1, 0, 0, 1])).unwrap());
        assert!(!is_irreducible(&mp(2, &[1, 0, 1, 0, 1])).unwrap());
    }

    #[test]
    fn count_irreducibles_of_degree_four_over_f3() {
        // Gauss: (1/4)(3^4 - 3^2) = 18 monic irreducible quartics over F_3.
        let mut count = 0;
        for code in 0..81u64 {
            let c: Vec<u64> = (0..4).map(|i| (code / 3u64.pow(i)) % 3).chain([1]).collect();
            let f = ModPoly::new(3, c).unwrap();
            if is_irreducible(&f).unwrap() {
                count += 1;
                assert_eq!(factor(&f).unwrap().factors(), &[(f, 1)]);
            }
        }
        assert_eq!(count, 18);
    }

    #[test]
    fn seed_is_recorded_and_output_is_seed_independent() {
        let f = mp(11, &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 1, 1, 1]);
        let a = factor_with_seed(&f, 1).unwrap();
        let b = factor_with_seed(&f, 99).unwrap();
        assert_eq!(a.seed(), 1);
        assert_eq!(b.seed(), 99);
        assert_eq!(a.factors(), b.factors());
        let js = serde_json::to_value(&a).unwrap();
        assert_eq!(js["p"], 11);
        assert_eq!(js["seed"], 1);
    }

    fn any_modpoly() -> impl Strategy<Value = ModPoly> {
        (
            prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]),
            prop::collection::vec(0u64..1000, 1..14),
        )
            .prop_filter_map("nonzero", |(p, c)| {
                let f = ModPoly::new(p, c).unwrap();
                (!f.is_zero()).then_some(f)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn factor_multiply_round_trip(f in any_modpoly()) {
            let fac = factor(&f).unwrap();
            prop_assert_eq!(fac.product(), f.clone());
            let total: usize = fac.degree_profile().iter().sum();
            prop_assert_eq!(total, f.degree().unwrap());
            for w in fac.factors().windows(2) {
                prop_assert_eq!(w[0].0.canonical_cmp(&w[1].0), std::cmp::Ordering::Less);
            }
            for (g, _) in fac.factors() {
                prop_assert!(g.is_monic());
                prop_assert!(is_irreducible(g).unwrap());
            }
        }

        #[test]
        fn repeated_squares_are_detected(f in any_modpoly()) {
            let sq = f.mul(&f);
            let fac = factor(&sq).unwrap();
            prop_assert!(fac.factors().iter().all(|(_, e)| e % 2 == 0));
        }
    }
}

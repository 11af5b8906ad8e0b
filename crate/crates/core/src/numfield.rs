//! Shifted cyclotomic and quadratic generators: minimal polynomials,
//! indices `[O_K : Z[alpha]]` and the splitting of primes read off from the
//! minimal polynomial modulo `p`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{euler_phi, require_quadratic_d};
use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::polymod::{cyclotomic, factor_with_seed, reduce_int, require_modulus, Factorization, ModPoly};

/// Which generator a candidate is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CandidateKind {
    /// `a * zeta_m + b`
    CyclotomicShift { m: u64, a: i64, b: i64 },
    /// `a * omega_D + b`
    QuadraticShift { d: i64, a: i64, b: i64 },
}

/// An algebraic integer `a * zeta_m + b` or `a * omega_D + b` with `a != 0`,
/// together with its minimal polynomial and index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraicCandidate {
    kind: CandidateKind,
    min_poly: IntPoly,
    index: BigInt,
}

impl AlgebraicCandidate {
    pub fn cyclotomic_shift(m: u64, a: i64, b: i64) -> Result<Self> {
        let min_poly = min_poly_cyclotomic_shift(m, a, b)?;
        let phi = euler_phi(m)?;
        let index = BigInt::from(a.unsigned_abs()).pow((phi * (phi - 1) / 2) as u32);
        Ok(AlgebraicCandidate {
            kind: CandidateKind::CyclotomicShift { m, a, b },
            min_poly,
            index,
        })
    }

    pub fn quadratic_shift(d: i64, a: i64, b: i64) -> Result<Self> {
        let min_poly = min_poly_quadratic_shift(d, a, b)?;
        Ok(AlgebraicCandidate {
            kind: CandidateKind::QuadraticShift { d, a, b },
            min_poly,
            index: BigInt::from(a.unsigned_abs()),
        })
    }

    /// `a*i + b`.
    pub fn gaussian(a: i64, b: i64) -> Result<Self> {
        Self::quadratic_shift(-1, a, b)
    }

    pub fn kind(&self) -> CandidateKind {
        self.kind
    }

    pub fn min_poly(&self) -> &IntPoly {
        &self.min_poly
    }

    /// `[O_K : Z[alpha]]`.
    pub fn index(&self) -> &BigInt {
        &self.index
    }

    pub fn degree(&self) -> usize {
        self.min_poly.degree().expect("minimal polynomial is nonzero")
    }

    pub fn a(&self) -> i64 {
        match self.kind {
            CandidateKind::CyclotomicShift { a, .. } | CandidateKind::QuadraticShift { a, .. } => a,
        }
    }

    pub fn b(&self) -> i64 {
        match self.kind {
            CandidateKind::CyclotomicShift { b, .. } | CandidateKind::QuadraticShift { b, .. } => b,
        }
    }

    /// True for `a*i + b`, written either with `omega_{-1}` or with `zeta_4`.
    pub fn is_gaussian(&self) -> bool {
        matches!(
            self.kind,
            CandidateKind::QuadraticShift { d: -1, .. } | CandidateKind::CyclotomicShift { m: 4, .. }
        )
    }

    /// The command-line form `cyc:m,a,b` or `quad:D,a,b`.
    pub fn spec_string(&self) -> String {
        match self.kind {
            CandidateKind::CyclotomicShift { m, a, b } => format!("cyc:{m},{a},{b}"),
            CandidateKind::QuadraticShift { d, a, b } => format!("quad:{d},{a},{b}"),
        }
    }
}

impl FromStr for AlgebraicCandidate {
    type Err = Error;

    /// Parses `cyc:m,a,b`, `quad:D,a,b` or `gauss:a,b`.
    fn from_str(s: &str) -> Result<Self> {
        let (tag, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("candidate `{s}` has no kind prefix")))?;
        let nums = rest
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("`{t}` is not an integer in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        match (tag, nums.as_slice()) {
            ("cyc", &[m, a, b]) => {
                let m = u64::try_from(m).map_err(|_| Error::domain("m must be positive"))?;
                Self::cyclotomic_shift(m, a, b)
            }
            ("quad", &[d, a, b]) => Self::quadratic_shift(d, a, b),
            ("gauss", &[a, b]) => Self::gaussian(a, b),
            _ => Err(Error::Parse(format!(
                "expected cyc:m,a,b | quad:D,a,b | gauss:a,b, got `{s}`"
            ))),
        }
    }
}

impl fmt::Display for AlgebraicCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, gen, b) = match self.kind {
            CandidateKind::CyclotomicShift { m, a, b } => (a, format!("zeta_{m}"), b),
            CandidateKind::QuadraticShift { d: -1, a, b } => (a, "i".to_string(), b),
            CandidateKind::QuadraticShift { d, a, b } => (a, format!("omega_{d}"), b),
        };
        match a {
            1 => write!(f, "{gen}")?,
            -1 => write!(f, "-{gen}")?,
            _ => write!(f, "{a}*{gen}")?,
        }
        match b.cmp(&0) {
            std::cmp::Ordering::Greater => write!(f, " + {b}"),
            std::cmp::Ordering::Less => write!(f, " - {}", b.unsigned_abs()),
            std::cmp::Ordering::Equal => Ok(()),
        }
    }
}

impl Serialize for AlgebraicCandidate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AlgebraicCandidate", 8)?;
        match self.kind {
            CandidateKind::CyclotomicShift { m, a, b } => {
                st.serialize_field("kind", "cyclotomic")?;
                st.serialize_field("m", &m)?;
                st.serialize_field("a", &a)?;
                st.serialize_field("b", &b)?;
            }
            CandidateKind::QuadraticShift { d, a, b } => {
                st.serialize_field("kind", "quadratic")?;
                st.serialize_field("D", &d)?;
                st.serialize_field("a", &a)?;
                st.serialize_field("b", &b)?;
            }
        }
        st.serialize_field("label", &self.to_string())?;
        st.serialize_field("degree", &self.degree())?;
        st.serialize_field("min_poly", &self.min_poly)?;
        st.serialize_field("index", &self.index.to_string())?;
        st.end()
    }
}

/// `a^phi(m) * Phi_m((X - b)/a)`, monic of degree `phi(m)`.
pub fn min_poly_cyclotomic_shift(m: u64, a: i64, b: i64) -> Result<IntPoly> {
    if m < 3 {
        return Err(Error::domain(format!("cyclotomic modulus must be >= 3, got {m}")));
    }
    if a == 0 {
        return Err(Error::domain("a = 0 leaves a rational integer, not a candidate"));
    }
    let phi_m = cyclotomic(m)?;
    let phi = phi_m.degree().expect("nonzero");
    let a = BigInt::from(a);
    let shifted = IntPoly::linear_root(BigInt::from(b));
    let mut out = IntPoly::zero();
    let mut power = IntPoly::one();
    for (k, c) in phi_m.coeffs().iter().enumerate() {
        let scale = c * a.pow((phi - k) as u32);
        out = &out + &power.scale(&scale);
        power = &power * &shifted;
    }
    Ok(out)
}

/// The monic quadratic with root `a * omega_D + b`.
pub fn min_poly_quadratic_shift(d: i64, a: i64, b: i64) -> Result<IntPoly> {
    require_quadratic_d(d)?;
    if a == 0 {
        return Err(Error::domain("a = 0 leaves a rational integer, not a candidate"));
    }
    let (a, b, d) = (BigInt::from(a), BigInt::from(b), BigInt::from(d));
    let x_minus_b = IntPoly::linear_root(b);
    let sq = &x_minus_b * &x_minus_b;
    let four = BigInt::from(4);
    if (&d % &four + &four) % &four == BigInt::one() {
        // (X-b)^2 - a(X-b) + a^2 (1-D)/4
        let c = &a * &a * ((BigInt::one() - &d) / four);
        Ok(&(&sq - &x_minus_b.scale(&a)) + &IntPoly::constant(c))
    } else {
        Ok(&sq - &IntPoly::constant(&a * &a * d))
    }
}

/// Closed-form index of the candidate.
pub fn index_of(c: &AlgebraicCandidate) -> BigInt {
    c.index().clone()
}

/// Index computed as `|det M|`, where row `j` of `M` holds the coordinates
/// of `alpha^j` in an integral basis of the ring of integers
/// (`1, zeta_m, ..., zeta_m^{phi-1}` or `1, omega_D`).
pub fn index_via_determinant(c: &AlgebraicCandidate) -> Result<BigInt> {
    let n = c.degree();
    let (modulus, alpha) = match c.kind() {
        CandidateKind::CyclotomicShift { m, a, b } => {
            (cyclotomic(m)?, IntPoly::from_i64s(&[b, a]))
        }
        CandidateKind::QuadraticShift { d, a, b } => {
            // omega is a root of X^2 - D or X^2 - X - (D-1)/4
            let m = if d.rem_euclid(4) == 1 {
                IntPoly::from_i64s(&[-(d - 1) / 4, -1, 1])
            } else {
                IntPoly::from_i64s(&[-d, 0, 1])
            };
            (m, IntPoly::from_i64s(&[b, a]))
        }
    };
    let mut rows = Vec::with_capacity(n);
    let mut power = IntPoly::one();
    for _ in 0..n {
        rows.push((0..n).map(|k| power.coeff(k)).collect::<Vec<_>>());
        power = (&power * &alpha).div_rem_monic(&modulus)?.1;
    }
    Ok(bareiss_determinant(rows).abs())
}

/// Fraction-free Gaussian elimination with row pivoting.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// One prime ideal above `p`: its residue polynomial, ramification index
/// `e` and inertia degree `f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeIdealFactor {
    pub poly: ModPoly,
    pub e: u32,
    pub f: usize,
}

/// Splitting of `p` read off from the minimal polynomial mod `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingReport {
    pub p: u64,
    /// False when `p` divides the index, in which case no factors are given.
    pub applicable: bool,
    pub factors: Vec<PrimeIdealFactor>,
    pub ramified: bool,
    pub factorization: Option<Factorization>,
}

impl SplittingReport {
    pub fn is_inert(&self) -> bool {
        self.applicable && self.factors.len() == 1 && self.factors[0].e == 1
    }

    pub fn sum_ef(&self) -> usize {
        self.factors.iter().map(|f| f.e as usize * f.f).sum()
    }
}

impl Serialize for SplittingReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SplittingReport", 6)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("applicable", &self.applicable)?;
        st.serialize_field("ramified", &self.ramified)?;
        st.serialize_field("e", &self.factors.iter().map(|f| f.e).collect::<Vec<_>>())?;
        st.serialize_field("f", &self.factors.iter().map(|f| f.f).collect::<Vec<_>>())?;
        st.serialize_field("factorization", &self.factorization)?;
        st.end()
    }
}

pub fn dedekind_kummer_split(c: &AlgebraicCandidate, p: u64) -> Result<SplittingReport> {
    dedekind_kummer_split_seeded(c, p, crate::polymod::DEFAULT_SEED)
}

pub fn dedekind_kummer_split_seeded(c: &AlgebraicCandidate, p: u64, seed: u64) -> Result<SplittingReport> {
    require_modulus(p)?;
    if (c.index() % BigInt::from(p)).is_zero() {
        return Ok(SplittingReport {
            p,
            applicable: false,
            factors: Vec::new(),
            ramified: false,
            factorization: None,
        });
    }
    let fac = factor_with_seed(&reduce_int(c.min_poly(), p)?, seed)?;
    let factors: Vec<PrimeIdealFactor> = fac
        .factors()
        .iter()
        .map(|(poly, e)| PrimeIdealFactor {
            poly: poly.clone(),
            e: *e,
            f: poly.degree().unwrap_or(0),
        })
        .collect();
    let ramified = factors.iter().any(|f| f.e > 1);
    Ok(SplittingReport {
        p,
        applicable: true,
        factors,
        ramified,
        factorization: Some(fac),
    })
}

/// Whether `p` ramifies in the field generated by the candidate.
///
/// Cyclotomic: `p` divides the conductor (`m`, or `m/2` when `m = 2 mod 4`,
/// since then `Q(zeta_m) = Q(zeta_{m/2})`). Quadratic: `p` divides the
/// discriminant `D` (`D = 1 mod 4`) or `4D`.
pub fn ramifies(c: &AlgebraicCandidate, p: u64) -> Result<bool> {
    crate::arith::require_prime(p)?;
    Ok(match c.kind() {
        CandidateKind::CyclotomicShift { m, .. } => {
            let conductor = if m % 4 == 2 { m / 2 } else { m };
            conductor % p == 0
        }
        CandidateKind::QuadraticShift { d, .. } => {
            let disc = if d.rem_euclid(4) == 1 { d as i128 } else { 4 * d as i128 };
            disc % p as i128 == 0
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{inertia_degree_cyclotomic, is_prime, legendre_symbol};
    use crate::darcais::{evaluate_at_cyclotomic, evaluate_at_quadratic};
    use crate::poly::RatPoly;
    use proptest::prelude::*;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn cyclotomic_shift_examples() {
        assert_eq!(min_poly_cyclotomic_shift(4, 1, 0).unwrap(), ip(&[1, 0, 1]));
        for (a, b) in [(3i64, 2i64), (-5, 7), (2, -1)] {
            let want = ip(&[b * b + a * a, -2 * b, 1]);
            assert_eq!(min_poly_cyclotomic_shift(4, a, b).unwrap(), want);
        }
        assert_eq!(min_poly_cyclotomic_shift(3, 2, 0).unwrap(), ip(&[4, 2, 1]));
        assert!(min_poly_cyclotomic_shift(2, 1, 0).is_err());
        assert!(min_poly_cyclotomic_shift(5, 0, 1).is_err());
    }

    #[test]
    fn quadratic_shift_examples() {
        for (a, b) in [(3i64, 2i64), (-5, 7)] {
            assert_eq!(min_poly_quadratic_shift(-1, a, b).unwrap(), ip(&[b * b + a * a, -2 * b, 1]));
        }
        assert_eq!(min_poly_quadratic_shift(5, 1, 0).unwrap(), ip(&[-1, -1, 1]));
        assert_eq!(min_poly_quadratic_shift(2, 3, 1).unwrap(), ip(&[-17, -2, 1]));
        assert!(min_poly_quadratic_shift(8, 1, 0).is_err());
        assert!(min_poly_quadratic_shift(1, 1, 0).is_err());
        assert!(min_poly_quadratic_shift(-3, 0, 0).is_err());
    }

    #[test]
    fn index_examples() {
        let c = AlgebraicCandidate::cyclotomic_shift(12, 2, 5).unwrap();
        assert_eq!(index_of(&c), BigInt::from(64));
        let q = AlgebraicCandidate::quadratic_shift(5, 3, 7).unwrap();
        assert_eq!(index_of(&q), BigInt::from(3));
        for m in [3u64, 5, 7, 12] {
            for a in [1i64, -1] {
                assert!(AlgebraicCandidate::cyclotomic_shift(m, a, 4).unwrap().index().is_one());
            }
        }
    }

    #[test]
    fn determinant_examples() {
        for (a, b) in [(3i64, 1i64), (-2, 5), (1, 0)] {
            let c = AlgebraicCandidate::cyclotomic_shift(4, a, b).unwrap();
            assert_eq!(index_via_determinant(&c).unwrap(), BigInt::from(a.abs()));
        }
        let c = AlgebraicCandidate::cyclotomic_shift(3, 1, 0).unwrap();
        assert!(index_via_determinant(&c).unwrap().is_one());
        let q = AlgebraicCandidate::quadratic_shift(13, -4, 2).unwrap();
        assert_eq!(index_via_determinant(&q).unwrap(), BigInt::from(4));
    }

    fn leibniz(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * leibniz(&minor)
            })
            .sum()
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor_expansion(
            n in 1usize..5,
            vals in prop::collection::vec(-6i64..6, 16),
        ) {
            let m: Vec<Vec<i64>> = (0..n).map(|i| vals[i * 4..i * 4 + n].to_vec()).collect();
            let big = m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
            prop_assert_eq!(bareiss_determinant(big), BigInt::from(leibniz(&m)));
        }
    }

    #[test]
    fn split_examples() {
        let c = AlgebraicCandidate::cyclotomic_shift(4, 3, 5).unwrap();
        let r = dedekind_kummer_split(&c, 7).unwrap();
        assert!(r.applicable && r.is_inert() && !r.ramified);
        assert_eq!((r.factors[0].e, r.factors[0].f), (1, 2));

        let q = AlgebraicCandidate::quadratic_shift(-7, 6, 1).unwrap();
        assert!(!dedekind_kummer_split(&q, 3).unwrap().applicable);
        assert!(!dedekind_kummer_split(&q, 2).unwrap().applicable);

        let z3 = AlgebraicCandidate::cyclotomic_shift(3, 1, 0).unwrap();
        let r = dedekind_kummer_split(&z3, 3).unwrap();
        assert!(r.ramified);
        assert_eq!(r.factors.len(), 1);
        assert_eq!(r.factors[0].e, 2);
        assert_eq!(r.factors[0].poly, ModPoly::from_i64s(3, &[-1, 1]).unwrap());
        assert!(dedekind_kummer_split(&z3, 4).is_err());
    }

    #[test]
    fn ramification_examples() {
        let q5 = AlgebraicCandidate::quadratic_shift(5, 1, 0).unwrap();
        assert!(!ramifies(&q5, 2).unwrap());
        assert!(ramifies(&q5, 5).unwrap());
        let c12 = AlgebraicCandidate::cyclotomic_shift(12, 1, 0).unwrap();
        assert!(ramifies(&c12, 3).unwrap());
        let gi = AlgebraicCandidate::gaussian(1, 0).unwrap();
        assert!(!ramifies(&gi, 7).unwrap());
        assert!(ramifies(&gi, 2).unwrap());
        let c6 = AlgebraicCandidate::cyclotomic_shift(6, 1, 0).unwrap();
        assert!(!ramifies(&c6, 2).unwrap());
        assert!(!dedekind_kummer_split(&c6, 2).unwrap().ramified);
    }

    #[test]
    fn parse_and_display() {
        let c: AlgebraicCandidate = "gauss:2,1".parse().unwrap();
        assert_eq!(c.to_string(), "2*i + 1");
        assert_eq!(c.spec_string(), "quad:-1,2,1");
        let c: AlgebraicCandidate = "cyc:5,1,-3".parse().unwrap();
        assert_eq!(c.to_string(), "zeta_5 - 3");
        assert!("quad:-1,0,2".parse::<AlgebraicCandidate>().is_err());
        assert!("foo:1,2".parse::<AlgebraicCandidate>().is_err());
        assert!("cyc:5,1".parse::<AlgebraicCandidate>().is_err());
        let js = serde_json::to_value(AlgebraicCandidate::quadratic_shift(5, 3, 7).unwrap()).unwrap();
        assert_eq!(js["index"], "3");
        assert_eq!(js["D"], 5);
    }

    #[test]
    fn index_grid_agrees() {
        for m in 3..=20u64 {
            for a in (-5i64..=5).filter(|&a| a != 0) {
                for b in -5i64..=5 {
                    let c = AlgebraicCandidate::cyclotomic_shift(m, a, b).unwrap();
                    assert_eq!(index_via_determinant(&c).unwrap(), index_of(&c), "m={m} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn min_polys_vanish_at_their_generators() {
        for m in 3..=15u64 {
            for (a, b) in [(1i64, 0i64), (2, -3), (-3, 4)] {
                let c = AlgebraicCandidate::cyclotomic_shift(m, a, b).unwrap();
                let v = evaluate_at_cyclotomic(&RatPoly::from_int(c.min_poly()), m, &a.into(), &b.into()).unwrap();
                assert!(v.iter().all(Zero::is_zero));
                assert!(c.min_poly().is_monic());
                assert_eq!(c.degree() as u64, euler_phi(m).unwrap());
            }
        }
        for d in [-7i64, -3, -2, -1, 2, 3, 5, 6, 13, 21] {
            for (a, b) in [(1i64, 0i64), (2, -3), (-3, 4)] {
                let c = AlgebraicCandidate::quadratic_shift(d, a, b).unwrap();
                let v = evaluate_at_quadratic(&RatPoly::from_int(c.min_poly()), d, &a.into(), &b.into()).unwrap();
                assert!(v.is_zero());
            }
        }
    }

    #[test]
    fn unramified_cyclotomic_inertia() {
        for m in 3..=30u64 {
            for p in (2..=31u64).filter(|&p| is_prime(p) && m % p != 0) {
                for a in [1i64, 2, 3, 5] {
                    if a as u64 % p == 0 {
                        continue;
                    }
                    let c = AlgebraicCandidate::cyclotomic_shift(m, a, 1).unwrap();
                    let r = dedekind_kummer_split(&c, p).unwrap();
                    assert!(r.applicable);
                    assert_eq!(r.sum_ef(), c.degree());
                    let f = inertia_degree_cyclotomic(p, m).unwrap() as usize;
                    assert!(r.factors.iter().all(|x| x.e == 1 && x.f == f), "m={m} p={p} a={a}");
                }
            }
        }
    }

    #[test]
    fn quadratic_trichotomy() {
        for d in (-30i64..=30).filter(|&d| d != 0 && d != 1 && crate::arith::is_squarefree(d)) {
            for p in (3..=30u64).filter(|&p| is_prime(p)) {
                for a in [1i64, 2, 4] {
                    let c = AlgebraicCandidate::quadratic_shift(d, a, 3).unwrap();
                    let r = dedekind_kummer_split(&c, p).unwrap();
                    assert_eq!(r.sum_ef(), 2);
                    match legendre_symbol(d, p).unwrap() {
                        0 => assert!(r.ramified && ramifies(&c, p).unwrap()),
                        1 => assert!(r.factors.len() == 2 && !r.ramified),
                        _ => assert!(r.is_inert()),
                    }
                }
            }
        }
    }
}

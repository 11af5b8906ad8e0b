//! The individual certification methods. Each returns a self-contained
//! certificate; the strategy chain in the parent module only sequences them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Certificate, Evidence, Method, Obstruction, Scope, Target};
use crate::arith::{euler_phi, is_prime, legendre_symbol, mobius, ArithmeticFunction};
use crate::darcais::{evaluate_at_cyclotomic, evaluate_at_quadratic};
use crate::error::{Error, Result};
use crate::numfield::{dedekind_kummer_split_seeded, AlgebraicCandidate, CandidateKind};
use crate::poly::RatPoly;
use crate::polymod::{a_p_mod, factor_a_poly_mod, factor_with_seed, require_modulus, DEFAULT_SEED};

/// The constant of the absolute-value bound, as the exact decimal it is quoted as.
pub fn han_constant() -> BigRational {
    BigRational::new(BigInt::from(97226), BigInt::from(10000))
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact lower bound on `max |alpha'|^2` over the conjugates `alpha'`,
/// namely their mean.
pub fn abs_sq_lower_bound(c: &AlgebraicCandidate) -> Result<BigRational> {
    let (a, b) = (rat(c.a()), rat(c.b()));
    Ok(match c.kind() {
        CandidateKind::CyclotomicShift { m, .. } => {
            // the primitive m-th roots of unity sum to mu(m)
            let mu = rat(i64::from(mobius(m)?));
            let phi = rat(euler_phi(m)? as i64);
            &a * &a + &b * &b + rat(2) * &a * &b * mu / phi
        }
        CandidateKind::QuadraticShift { d, .. } => {
            let (re, im) = if d.rem_euclid(4) == 1 {
                let half = BigRational::new(BigInt::one(), BigInt::from(2));
                (&b + &a * &half, &a * &half)
            } else {
                (b, a)
            };
            &re * &re + &im * &im * rat(d.abs())
        }
    })
}

/// Non-vanishing of `P_n^sigma` outside the disc of radius `c (n - 1)`.
pub fn certify_han_bound(g: &ArithmeticFunction, c: &AlgebraicCandidate, n: u64) -> Result<Certificate> {
    if !g.is_sigma() {
        return Ok(Certificate::inconclusive(c, g, Target::N(n), "the bound is known for sigma only"));
    }
    let lower = abs_sq_lower_bound(c)?;
    let k = han_constant() * rat(n as i64 - 1);
    let threshold = &k * &k;
    if lower <= threshold {
        return Ok(Certificate::inconclusive(
            c,
            g,
            Target::N(n),
            format!("|alpha|^2 >= {lower} does not exceed {threshold}"),
        ));
    }
    let evidence = Evidence {
        abs_sq_lower_bound: Some(lower.to_string()),
        threshold_sq: Some(threshold.to_string()),
        facts: vec!["mean of |conjugate|^2 exceeds (9.7226 (n-1))^2".into()],
        ..Evidence::default()
    };
    Ok(Certificate::proven(c, g, Target::N(n), Scope::Single { n }, Method::HanBound, evidence, None))
}

fn has_odd_prime_factor(m: u64) -> bool {
    m >> m.trailing_zeros() > 1
}

fn has_prime_factor_above_3(m: u64) -> bool {
    let mut k = m;
    for q in [2u64, 3] {
        while k % q == 0 {
            k /= q;
        }
    }
    k > 1
}

/// Which item of the translation theorem covers the candidate, if any.
///
/// `g3_mod_3` is `g(3) mod 3` when known; items 2 and 4 need it in `{0, 1}`.
pub fn translated_item(c: &AlgebraicCandidate, g3_mod_3: Option<u64>) -> Option<u8> {
    let g3_ok = matches!(g3_mod_3, Some(0 | 1));
    match c.kind() {
        CandidateKind::CyclotomicShift { m, a, .. } => {
            if has_odd_prime_factor(m) && a % 2 != 0 {
                Some(1)
            } else if (has_prime_factor_above_3(m) || m % 4 == 0) && a % 3 != 0 && g3_ok {
                Some(2)
            } else {
                None
            }
        }
        CandidateKind::QuadraticShift { d, a, .. } => {
            if d.rem_euclid(8) == 5 && a % 2 != 0 {
                Some(3)
            } else if d.rem_euclid(3) == 2 && a % 3 != 0 && g3_ok {
                Some(4)
            } else {
                None
            }
        }
    }
}

/// Local splitting at `p` for every `n`: `A_p^g mod p` splits into linear
/// factors (so every `A_n^g mod p` does), while the minimal polynomial has a
/// non-linear factor mod `p`. Returns the evidence, or an internal error if
/// either half fails, which would mean a hypothesis check is wrong.
fn split_versus_nonlinear(g: &ArithmeticFunction, c: &AlgebraicCandidate, p: u64) -> Result<Evidence> {
    let split = dedekind_kummer_split_seeded(c, p, DEFAULT_SEED)?;
    if !split.applicable || split.factors.iter().all(|f| f.f == 1) {
        return Err(Error::Internal(format!("{c}: expected a non-linear prime factor above {p}")));
    }
    let ap = factor_with_seed(&a_p_mod(g, p)?, DEFAULT_SEED)?;
    if !ap.is_split() {
        return Err(Error::Internal(format!("A_{p} mod {p} does not split for {g}")));
    }
    Ok(Evidence {
        splitting: Some(split),
        a_n_mod_p: Some(ap),
        ..Evidence::default()
    })
}

pub fn certify_theorem_translated(
    g: &ArithmeticFunction,
    c: &AlgebraicCandidate,
    target: Target,
) -> Result<Certificate> {
    let g3 = g.value_mod(3, 3).ok();
    let Some(item) = translated_item(c, g3) else {
        return Ok(Certificate::inconclusive(c, g, target, "no item's hypotheses hold"));
    };
    let p = if item % 2 == 1 { 2 } else { 3 };
    let mut evidence = split_versus_nonlinear(g, c, p)?;
    evidence.subcase = Some(format!("item {item}"));
    evidence.facts.push(format!("{p} does not divide the index"));
    evidence.facts.push(format!("A_n^g mod {p} = A_r^g (A_{p}^g)^l splits into linear factors"));
    if p == 3 {
        evidence.facts.push(format!("g(3) mod 3 = {}", g3.expect("checked by the predicate")));
    }
    Ok(Certificate::proven(c, g, target, Scope::AllN, Method::ThmTranslated { item }, evidence, Some(p)))
}

/// Case analysis of the Gaussian theorem for `sigma`, applied to `a*i + b`.
pub fn certify_theorem_gaussian_sigma(a: i64, b: i64, target: Target) -> Result<Certificate> {
    if a == 0 {
        return Err(Error::domain("a = 0 is a rational integer, not a Gaussian candidate"));
    }
    gaussian_for(&AlgebraicCandidate::gaussian(a, b)?, target)
}

pub(crate) fn gaussian_for(c: &AlgebraicCandidate, target: Target) -> Result<Certificate> {
    let g = ArithmeticFunction::sigma();
    if !c.is_gaussian() {
        return Err(Error::domain(format!("{c} is not of the form a*i + b")));
    }
    let (a, b) = (c.a(), c.b());
    let case1 = a % 21 != 0;
    let sub_i = a % 3 != 0;
    let sub_ii = !matches!(a.rem_euclid(7), 0 | 1 | 6);
    let sub_iii = a % 7 != 0 && b % 7 != 0;
    let case2 = if sub_i {
        Some("(i)")
    } else if sub_ii {
        Some("(ii)")
    } else if sub_iii {
        Some("(iii)")
    } else {
        None
    };

    let (scope, subcase) = match target {
        Target::AllN => match (case1, case2) {
            (true, Some(s)) => (Scope::AllN, format!("case 1 and case 2 {s}")),
            _ => return Ok(Certificate::inconclusive(c, &g, target, "theorem does not cover every n")),
        },
        Target::N(n) if n % 7 != 5 => {
            if !case1 {
                return Ok(Certificate::inconclusive(c, &g, target, "n mod 7 != 5 but 21 | a"));
            }
            (Scope::ResidueClass { modulus: 7, residues: vec![0, 1, 2, 3, 4, 6] }, "case 1".to_string())
        }
        Target::N(_) => match case2 {
            Some(s) => (Scope::ResidueClass { modulus: 7, residues: vec![5] }, format!("case 2 {s}")),
            None => return Ok(Certificate::inconclusive(c, &g, target, "n = 5 mod 7 and (i)-(iii) all fail")),
        },
    };

    let mut evidence;
    let witness;
    if sub_i {
        witness = 3;
        evidence = split_versus_nonlinear(&g, c, 3)?;
        evidence.facts.push("3 does not divide a, sigma(3) = 1 mod 3".into());
    } else {
        // 3 | a and 7 does not divide a in every covered branch
        witness = 7;
        let split = dedekind_kummer_split_seeded(c, 7, DEFAULT_SEED)?;
        if !split.is_inert() {
            return Err(Error::Internal(format!("{c}: 7 should be inert")));
        }
        let a_r = match target {
            Target::N(n) => Some(factor_a_poly_mod(&g, n % 7, 7, DEFAULT_SEED)?),
            Target::AllN => None,
        };
        if let Some(fac) = &a_r {
            let m7 = &split.factors[0].poly;
            if fac.multiplicity_of(m7) > 0 {
                return Err(Error::Internal(format!("{c}: minimal polynomial divides A_r mod 7")));
            }
        }
        evidence = Evidence {
            splitting: Some(split),
            a_n_mod_p: a_r,
            ..Evidence::default()
        };
        evidence.facts.push("A_n^sigma = A_r^sigma (X^7 - X)^l mod 7 with r = n mod 7".into());
        evidence.facts.push("non-linear factors of A_r^sigma mod 7: X^2 + 1 (r = 5), X^3 - X^2 - X + 4 (r = 6)".into());
    }
    evidence.subcase = Some(subcase);
    Ok(Certificate::proven(c, &g, target, scope, Method::ThmGaussianSigma, evidence, Some(witness)))
}

/// Searches odd primes `p <= bound` for either case of the unramified-prime
/// theorem. Besides the stated hypotheses, `p` must not divide `a` so that
/// the minimal polynomial sees the splitting of `p`.
pub fn certify_theorem_not_ramified(
    g: &ArithmeticFunction,
    c: &AlgebraicCandidate,
    target: Target,
    bound: u64,
) -> Result<Certificate> {
    let CandidateKind::QuadraticShift { d, a, .. } = c.kind() else {
        return Err(Error::domain("the unramified-prime theorem needs a quadratic candidate"));
    };
    let Target::N(n) = target else {
        return Ok(Certificate::inconclusive(c, g, target, "covers only n = 0, 1 mod p"));
    };
    let bound = bound.min(g.max_n().unwrap_or(u64::MAX));
    for p in (3..=bound).filter(|&p| is_prime(p)) {
        if n % p > 1 || a.unsigned_abs() % p == 0 {
            continue;
        }
        let gp = g.value_mod(p, p)?;
        let case = if gp == 0 && d.unsigned_abs() % p != 0 {
            1
        } else if gp == 1 && legendre_symbol(d, p)? == -1 {
            2
        } else {
            continue;
        };
        let split = dedekind_kummer_split_seeded(c, p, DEFAULT_SEED)?;
        let fac = factor_a_poly_mod(g, n, p, DEFAULT_SEED)?;
        if split.ramified || (case == 2 && !split.is_inert()) {
            return Err(Error::Internal(format!("{c}: unexpected splitting at {p}")));
        }
        let evidence = Evidence {
            subcase: Some(format!("case {case}, g({p}) = {gp} mod {p}")),
            facts: vec![format!("n = {} mod {p}", n % p)],
            splitting: Some(split),
            a_n_mod_p: Some(fac),
            ..Evidence::default()
        };
        let scope = Scope::ResidueClass { modulus: p, residues: vec![0, 1] };
        return Ok(Certificate::proven(c, g, target, scope, Method::ThmNotRamified { case }, evidence, Some(p)));
    }
    Ok(Certificate::inconclusive(c, g, target, format!("no qualifying prime up to {bound}")))
}

/// Local obstruction: a factor `q^e` of the minimal polynomial mod `p` with
/// `q^e` not dividing `A_n^g mod p`.
pub fn certify_generic(
    g: &ArithmeticFunction,
    c: &AlgebraicCandidate,
    n: u64,
    primes: &[u64],
    seed: u64,
) -> Result<Certificate> {
    for &p in primes {
        require_modulus(p)?;
    }
    let mut notes = Vec::new();
    for &p in primes {
        let split = dedekind_kummer_split_seeded(c, p, seed)?;
        if !split.applicable {
            notes.push(format!("{p} divides the index"));
            continue;
        }
        let fac = match factor_a_poly_mod(g, n, p, seed) {
            Ok(f) => f,
            Err(e) => {
                notes.push(format!("p = {p}: {e}"));
                continue;
            }
        };
        let hit = split.factors.iter().find_map(|q| {
            let have = fac.multiplicity_of(&q.poly);
            (have < q.e).then(|| Obstruction {
                factor: q.poly.clone(),
                in_min_poly: q.e,
                in_a_n: have,
            })
        });
        if let Some(obstruction) = hit {
            let evidence = Evidence {
                splitting: Some(split),
                a_n_mod_p: Some(fac),
                obstruction: Some(obstruction),
                ..Evidence::default()
            };
            return Ok(Certificate::proven(
                c,
                g,
                Target::N(n),
                Scope::Single { n },
                Method::GenericObstruction { p },
                evidence,
                Some(p),
            ));
        }
        notes.push(format!("p = {p}: every factor divides A_n mod p"));
    }
    let mut cert = Certificate::inconclusive(c, g, Target::N(n), "no prime gave an obstruction");
    cert.evidence.facts.extend(notes);
    Ok(cert)
}

/// Exact value of `P_n^g(alpha)` in the integral basis.
pub fn exact_value(p_n: &RatPoly, c: &AlgebraicCandidate) -> Result<Vec<BigRational>> {
    let (a, b) = (BigInt::from(c.a()), BigInt::from(c.b()));
    match c.kind() {
        CandidateKind::CyclotomicShift { m, .. } => evaluate_at_cyclotomic(p_n, m, &a, &b),
        CandidateKind::QuadraticShift { d, .. } => {
            let v = evaluate_at_quadratic(p_n, d, &a, &b)?;
            Ok(vec![v.u, v.v])
        }
    }
}

pub(crate) fn exact_with(
    g: &ArithmeticFunction,
    c: &AlgebraicCandidate,
    n: u64,
    p_n: &RatPoly,
) -> Result<Certificate> {
    let value = exact_value(p_n, c)?;
    if value.iter().all(Zero::is_zero) {
        return Ok(Certificate::inconclusive(c, g, Target::N(n), "exact evaluation gave no certificate"));
    }
    let evidence = Evidence {
        exact_value: Some(value.iter().map(ToString::to_string).collect()),
        ..Evidence::default()
    };
    Ok(Certificate::proven(c, g, Target::N(n), Scope::Single { n }, Method::ExactEvaluation, evidence, None))
}

pub fn certify_exact(g: &ArithmeticFunction, c: &AlgebraicCandidate, n: u64) -> Result<Certificate> {
    let p_n = crate::darcais::p_poly(g, n as usize)?;
    exact_with(g, c, n, &p_n)
}

/// `zeta_m` itself, once the three local conditions are known to hold for
/// an integer-valued `g`. Only `sigma` is accepted as integer-valued.
pub fn certify_zmija_cyclotomic(
    g: &ArithmeticFunction,
    c: &AlgebraicCandidate,
    target: Target,
    conditions_hold: bool,
) -> Result<Certificate> {
    if !matches!(c.kind(), CandidateKind::CyclotomicShift { a: 1, b: 0, .. }) {
        return Ok(Certificate::inconclusive(c, g, target, "candidate is not a root of unity"));
    }
    if !g.is_sigma() {
        return Ok(Certificate::inconclusive(c, g, target, "integer-valuedness of P_n^g is not established"));
    }
    if !conditions_hold {
        return Ok(Certificate::inconclusive(c, g, target, "local conditions mod 5, 7, 11 fail"));
    }
    let evidence = Evidence {
        facts: vec![
            "P_n^sigma is integer-valued at integers".into(),
            "local conditions mod 5, 7 and 11 hold".into(),
        ],
        ..Evidence::default()
    };
    Ok(Certificate::proven(c, g, target, Scope::AllN, Method::ZmijaCyclotomic, evidence, None))
}

//! Audit of the three local conditions (mod 5, 7 and 11) that rule out
//! roots of unity as roots of every `P_n^g`.

use serde::Serialize;

use crate::arith::ArithmeticFunction;
use crate::error::{Error, Result};
use crate::polymod::{a_poly_mod, factor, Factorization, ModPoly};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactoredA {
    pub r: u64,
    pub factorization: Factorization,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Offender {
    pub r: u64,
    pub factor: ModPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZmijaCondition {
    pub p: u64,
    pub holds: bool,
    pub rule: String,
    pub offenders: Vec<Offender>,
    pub factored: Vec<FactoredA>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZmijaReport {
    pub g_name: String,
    pub condition1: ZmijaCondition,
    pub condition2: ZmijaCondition,
    pub condition3: ZmijaCondition,
    /// Condition 3 in its original form: no factor divides
    /// `X^(11^6 - 1) - 1` while missing every `X^(11^d - 1) - 1`, `d != 6`.
    pub condition3_raw_holds: bool,
    pub all_hold: bool,
    /// `g(p) = 1 mod p` for `p` in {2, 3, 5, 7}; necessary (not
    /// sufficient) for `P_n^g` to be integer-valued, which the conditions
    /// presuppose.
    pub integrality_necessary_check: bool,
}

fn check(
    g: &ArithmeticFunction,
    p: u64,
    rs: impl Iterator<Item = u64>,
    rule: &str,
    bad: impl Fn(&ModPoly) -> Result<bool>,
) -> Result<ZmijaCondition> {
    let mut offenders = Vec::new();
    let mut factored = Vec::new();
    for r in rs {
        let fac = factor(&a_poly_mod(g, r, p)?)?;
        for (q, _) in fac.factors() {
            if bad(q)? {
                offenders.push(Offender { r, factor: q.clone() });
            }
        }
        factored.push(FactoredA { r, factorization: fac });
    }
    Ok(ZmijaCondition {
        p,
        holds: offenders.is_empty(),
        rule: rule.into(),
        offenders,
        factored,
    })
}

/// Whether `q` divides `X^(11^6 - 1) - 1` but no `X^(11^d - 1) - 1` with
/// `1 <= d <= 10`, `d != 6`.
fn raw_condition3_offender(q: &ModPoly) -> Result<bool> {
    let x = ModPoly::x(11);
    let divides = |d: u32| -> Result<bool> { Ok(x.pow_mod_u64(11u64.pow(d) - 1, q)?.is_one()) };
    if !divides(6)? {
        return Ok(false);
    }
    for d in (1..=10).filter(|&d| d != 6) {
        if divides(d)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn check_zmija_conditions(g: &ArithmeticFunction) -> Result<ZmijaReport> {
    g.require(10)?;
    let deg = |q: &ModPoly| q.degree().unwrap_or(0);
    let condition1 = check(g, 5, 3..=4, "no irreducible factor of degree 2 in A_3, A_4 mod 5", |q| {
        Ok(deg(q) == 2)
    })?;
    let condition2 = check(g, 7, 2..=6, "no irreducible factor of degree 4 in A_2..A_6 mod 7", |q| {
        Ok(deg(q) == 4)
    })?;
    let condition3 = check(g, 11, 2..=10, "no irreducible factor of degree 6 in A_2..A_10 mod 11", |q| {
        Ok(deg(q) == 6)
    })?;
    let mut raw = true;
    for fa in &condition3.factored {
        for (q, _) in fa.factorization.factors() {
            let offends = raw_condition3_offender(q)?;
            if offends != (deg(q) == 6) {
                return Err(Error::Internal(format!("degree reduction disagrees on {q}")));
            }
            raw &= !offends;
        }
    }
    let integrality = [2u64, 3, 5, 7]
        .iter()
        .map(|&p| g.value_mod(p, p).map(|v| v == 1))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|b| b);
    let all_hold = condition1.holds && condition2.holds && condition3.holds;
    Ok(ZmijaReport {
        g_name: g.name().to_string(),
        condition1,
        condition2,
        condition3,
        condition3_raw_holds: raw,
        all_hold,
        integrality_necessary_check: integrality,
    })
}

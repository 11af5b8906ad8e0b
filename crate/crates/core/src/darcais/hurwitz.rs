//! Routh-Hurwitz stability test in exact rational arithmetic.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::RatPoly;

/// Outcome of the Routh table construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HurwitzReport {
    pub hurwitz: bool,
    /// First column of the Routh table, as far as it was computed.
    pub first_column: Vec<String>,
    /// Row index of a vanishing pivot, if the table broke down.
    pub zero_pivot_row: Option<usize>,
    pub sign_changes: usize,
}

/// True iff every root of `p` has strictly negative real part.
///
/// A vanishing pivot (including an all-zero row) is reported as not
/// Hurwitz; no perturbation is attempted.
pub fn hurwitz_check(p: &RatPoly) -> Result<bool> {
    Ok(hurwitz_report(p)?.hurwitz)
}

pub fn hurwitz_report(p: &RatPoly) -> Result<HurwitzReport> {
    let n = p
        .degree()
        .ok_or_else(|| Error::domain("the zero polynomial has no Hurwitz property"))?;
    if p.coeff(0).is_zero() {
        return Err(Error::domain("root at the origin; divide out X first"));
    }
    // Descending coefficients c[0] = leading.
    let c: Vec<BigRational> = p.coeffs().iter().rev().cloned().collect();
    let mut prev: Vec<BigRational> = c.iter().step_by(2).cloned().collect();
    let mut cur: Vec<BigRational> = c.iter().skip(1).step_by(2).cloned().collect();
    let mut column = vec![prev[0].clone()];
    let mut zero_pivot_row = None;

    for row in 1..=n {
        let pivot = cur.first().cloned().unwrap_or_else(BigRational::zero);
        column.push(pivot.clone());
        if pivot.is_zero() {
            zero_pivot_row = Some(row);
            break;
        }
        if row == n {
            break;
        }
        let width = prev.len().saturating_sub(1).max(cur.len().saturating_sub(1));
        let mut next = Vec::with_capacity(width);
        for j in 0..width {
            let a = prev.get(j + 1).cloned().unwrap_or_else(BigRational::zero);
            let b = cur.get(j + 1).cloned().unwrap_or_else(BigRational::zero);
            next.push((&pivot * a - &prev[0] * b) / &pivot);
        }
        prev = std::mem::replace(&mut cur, next);
    }

    let sign_changes = column
        .windows(2)
        .filter(|w| !w[0].is_zero() && !w[1].is_zero() && w[0].is_positive() != w[1].is_positive())
        .count();
    let hurwitz = zero_pivot_row.is_none() && sign_changes == 0;
    Ok(HurwitzReport {
        hurwitz,
        first_column: column.iter().map(ToString::to_string).collect(),
        zero_pivot_row,
        sign_changes,
    })
}

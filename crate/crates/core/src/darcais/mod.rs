//! D'Arcais polynomials `P_n^g` and their integral versions `A_n^g = n! P_n^g`.
//!
//! The production path is the recursion
//!
//! ```text
//! A_0 = 1,   A_n(X) = X * sum_{k=1}^{n} (n-1)!/(n-k)! * g(k) * A_{n-k}(X)
//! ```
//!
//! The [`oracle`] module holds two independent routes (partition sum and
//! formal exponential) used to cross-check it.

pub mod eval;
pub mod hurwitz;
pub mod oracle;
pub mod series;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::ArithmeticFunction;
use crate::error::Result;
use crate::poly::{IntPoly, RatPoly};

pub use eval::{evaluate_at_cyclotomic, evaluate_at_quadratic};
pub use hurwitz::{hurwitz_check, hurwitz_report, HurwitzReport};
pub use oracle::{a_poly_oracle, a_poly_oracle_bounded, series_oracle, DEFAULT_ORACLE_BOUND};
pub use series::{first_tau_zero, p_values_at_integer, tau, tau_range};

/// Cached prefix `A_0^g, ..., A_N^g` for one arithmetic function.
///
/// Extending the table only ever appends, so a shared reference always sees
/// a consistent prefix.
#[derive(Debug, Clone)]
pub struct DArcaisTable {
    g: ArithmeticFunction,
    g_values: Vec<BigInt>,
    a: Vec<IntPoly>,
}

impl DArcaisTable {
    pub fn new(g: ArithmeticFunction) -> Self {
        DArcaisTable {
            g,
            g_values: Vec::new(),
            a: vec![IntPoly::one()],
        }
    }

    /// Builds the table up to `A_n^g`.
    pub fn with_len(g: ArithmeticFunction, n: usize) -> Result<Self> {
        let mut t = Self::new(g);
        t.extend_to(n)?;
        Ok(t)
    }

    pub fn g(&self) -> &ArithmeticFunction {
        &self.g
    }

    /// Largest `n` currently cached.
    pub fn max_n(&self) -> usize {
        self.a.len() - 1
    }

    pub fn extend_to(&mut self, n: usize) -> Result<()> {
        if n <= self.max_n() {
            return Ok(());
        }
        self.g.require(n as u64)?;
        for k in self.g_values.len() + 1..=n {
            self.g_values.push(self.g.value(k as u64)?);
        }
        for m in self.a.len()..=n {
            let next = recursion_step(&self.a, &self.g_values, m);
            self.a.push(next);
        }
        Ok(())
    }

    /// `A_n^g`, if already cached.
    pub fn get(&self, n: usize) -> Option<&IntPoly> {
        self.a.get(n)
    }

    pub fn a(&mut self, n: usize) -> Result<&IntPoly> {
        self.extend_to(n)?;
        Ok(&self.a[n])
    }

    pub fn p(&mut self, n: usize) -> Result<RatPoly> {
        self.extend_to(n)?;
        Ok(scale_by_factorial(&self.a[n], n))
    }

    pub fn a_polys(&self) -> &[IntPoly] {
        &self.a
    }
}

/// One step of the recursion; `a` holds `A_0 .. A_{m-1}`.
fn recursion_step(a: &[IntPoly], g: &[BigInt], m: usize) -> IntPoly {
    let mut acc = vec![BigInt::zero(); m];
    // falling = (m-1)(m-2)...(m-k+1)
    let mut falling = BigInt::one();
    for k in 1..=m {
        if k > 1 {
            falling *= BigInt::from(m - k + 1);
        }
        let weight = &falling * &g[k - 1];
        if weight.is_zero() {
            continue;
        }
        for (i, c) in a[m - k].coeffs().iter().enumerate() {
            acc[i] += &weight * c;
        }
    }
    IntPoly::new(acc).shift(1)
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn scale_by_factorial(a: &IntPoly, n: usize) -> RatPoly {
    let nf = factorial(n);
    RatPoly::new(
        a.coeffs()
            .iter()
            .map(|c| BigRational::new(c.clone(), nf.clone()))
            .collect(),
    )
}

/// `A_n^g` via the recursion.
pub fn a_poly(g: &ArithmeticFunction, n: usize) -> Result<IntPoly> {
    let mut t = DArcaisTable::new(g.clone());
    t.extend_to(n)?;
    Ok(t.a.swap_remove(n))
}

/// `P_n^g = A_n^g / n!`.
pub fn p_poly(g: &ArithmeticFunction, n: usize) -> Result<RatPoly> {
    Ok(scale_by_factorial(&a_poly(g, n)?, n))
}

/// `H_n^g = P_n^g / X` for `n >= 1`.
pub fn h_poly(g: &ArithmeticFunction, n: usize) -> Result<RatPoly> {
    if n == 0 {
        return Err(crate::Error::domain("H_0 is undefined, P_0 = 1 has no factor X"));
    }
    p_poly(g, n)?.div_x()
}

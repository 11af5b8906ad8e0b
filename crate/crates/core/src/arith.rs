//! Elementary number theory and the arithmetic function `g`.
//!
//! Everything here works on machine integers except the values of `g`
//! itself, which are arbitrary-precision so that user tables are never
//! truncated.

use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `a * b mod m` without overflow.
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n % w == 0 {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Returns an error unless `p` is prime.
pub fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::domain(format!("{p} is not prime")))
    }
}

/// Prime factorization by trial division, primes in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// True when no square of a prime divides `n`; `0` is not squarefree.
pub fn is_squarefree(n: i64) -> bool {
    n != 0 && factorize(n.unsigned_abs()).iter().all(|&(_, e)| e == 1)
}

/// Validates the discriminant parameter of `Q(sqrt(D))`.
pub fn require_quadratic_d(d: i64) -> Result<()> {
    if d == 0 || d == 1 || !is_squarefree(d) {
        return Err(Error::domain(format!(
            "D must be squarefree and not 0 or 1, got {d}"
        )));
    }
    Ok(())
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factorize(n) {
        let len = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

pub fn sigma(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::domain("sigma(0) is undefined"));
    }
    let total: u128 = divisors(n).into_iter().map(u128::from).sum();
    u64::try_from(total).map_err(|_| Error::domain(format!("sigma({n}) overflows u64")))
}

pub fn mobius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::domain("mobius(0) is undefined"));
    }
    let mut sign = 1i8;
    for (_, e) in factorize(n) {
        if e > 1 {
            return Ok(0);
        }
        sign = -sign;
    }
    Ok(sign)
}

pub fn euler_phi(m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::domain("euler_phi(0) is undefined"));
    }
    Ok(factorize(m)
        .into_iter()
        .fold(m, |acc, (p, _)| acc / p * (p - 1)))
}

/// Legendre symbol `(d / p)` via Euler's criterion.
pub fn legendre_symbol(d: i64, p: u64) -> Result<i8> {
    if p == 2 || !is_prime(p) {
        return Err(Error::domain(format!(
            "Legendre symbol needs an odd prime modulus, got {p}"
        )));
    }
    let r = (d as i128).rem_euclid(p as i128) as u64;
    if r == 0 {
        return Ok(0);
    }
    match pow_mod(r, (p - 1) / 2, p) {
        1 => Ok(1),
        x if x == p - 1 => Ok(-1),
        x => Err(Error::Internal(format!(
            "Euler criterion gave {x} for ({d}/{p})"
        ))),
    }
}

/// Multiplicative order of `a` modulo `m`; `m = 1` or `m = 2` give 1.
pub fn multiplicative_order(a: u64, m: u64) -> Result<u64> {
    if m <= 2 {
        return Ok(1);
    }
    if a.gcd(&m) != 1 {
        return Err(Error::domain(format!("{a} is not a unit modulo {m}")));
    }
    let lambda = euler_phi(m)?;
    let mut order = lambda;
    for (q, _) in factorize(lambda) {
        while order % q == 0 && pow_mod(a, order / q, m) == 1 {
            order /= q;
        }
    }
    Ok(order)
}

/// Inertia degree of `p` in the `m`-th cyclotomic field: the order of `p`
/// modulo the `p`-free part of `m`.
pub fn inertia_degree_cyclotomic(p: u64, m: u64) -> Result<u64> {
    require_prime(p)?;
    if m < 3 {
        return Err(Error::domain(format!("cyclotomic modulus must be >= 3, got {m}")));
    }
    let mut m_p = m;
    while m_p % p == 0 {
        m_p /= p;
    }
    multiplicative_order(p % m_p.max(1), m_p)
}

/// Which arithmetic function a [`ArithmeticFunction`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GKind {
    Sigma,
    Identity,
    Table,
}

/// A `Z`-valued arithmetic function `g` with `g(1) = 1`.
///
/// Table-backed functions are only defined on `1..=max_n()`; evaluating
/// past the end is an [`Error::Range`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArithmeticFunction {
    kind: GKind,
    table: Vec<BigInt>,
    name: String,
}

impl ArithmeticFunction {
    pub fn sigma() -> Self {
        ArithmeticFunction {
            kind: GKind::Sigma,
            table: Vec::new(),
            name: "sigma".into(),
        }
    }

    pub fn identity() -> Self {
        ArithmeticFunction {
            kind: GKind::Identity,
            table: Vec::new(),
            name: "identity".into(),
        }
    }

    /// `values[k]` is `g(k + 1)`.
    pub fn from_table(name: impl Into<String>, values: Vec<BigInt>) -> Result<Self> {
        match values.first() {
            Some(v) if v.is_one() => {}
            Some(v) => return Err(Error::domain(format!("g(1) must be 1, got {v}"))),
            None => return Err(Error::domain("empty table for g")),
        }
        Ok(ArithmeticFunction {
            kind: GKind::Table,
            table: values,
            name: name.into(),
        })
    }

    /// Parses the table format: one integer per line, line `k` holds `g(k)`.
    /// Blank lines and `#` comments are skipped.
    pub fn parse_table(name: impl Into<String>, text: &str) -> Result<Self> {
        let mut values = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let v: BigInt = line.parse().map_err(|_| {
                Error::Parse(format!("line {}: `{line}` is not an integer", lineno + 1))
            })?;
            values.push(v);
        }
        Self::from_table(name, values)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "table".into());
        Self::parse_table(name, &text)
    }

    /// `sigma`, `identity` (alias `id`), or a path to a table file.
    pub fn from_spec(spec: &str) -> Result<Self> {
        match spec {
            "sigma" => Ok(Self::sigma()),
            "identity" | "id" => Ok(Self::identity()),
            path => Self::from_file(path),
        }
    }

    pub fn kind(&self) -> GKind {
        self.kind
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_sigma(&self) -> bool {
        self.kind == GKind::Sigma
    }

    /// Largest `n` at which `g` is defined, `None` when unbounded.
    pub fn max_n(&self) -> Option<u64> {
        match self.kind {
            GKind::Table => Some(self.table.len() as u64),
            _ => None,
        }
    }

    pub fn is_defined_up_to(&self, n: u64) -> bool {
        self.max_n().map_or(true, |max| n <= max)
    }

    /// Declares that `g(1..=n)` will be needed.
    pub fn require(&self, n: u64) -> Result<()> {
        match self.max_n() {
            Some(max) if n > max => Err(Error::Range {
                name: self.name.clone(),
                needed: n,
                available: max,
            }),
            _ => Ok(()),
        }
    }

    pub fn value(&self, n: u64) -> Result<BigInt> {
        if n == 0 {
            return Err(Error::domain("g is defined on positive integers only"));
        }
        match self.kind {
            GKind::Sigma => Ok(BigInt::from(sigma(n)?)),
            GKind::Identity => Ok(BigInt::from(n)),
            GKind::Table => {
                self.require(n)?;
                Ok(self.table[(n - 1) as usize].clone())
            }
        }
    }

    /// `g(n) mod p` as a residue in `[0, p)`.
    pub fn value_mod(&self, n: u64, p: u64) -> Result<u64> {
        let v = self.value(n)?;
        Ok(v.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits"))
    }

    /// Values `g(1), ..., g(n)`.
    pub fn values(&self, n: u64) -> Result<Vec<BigInt>> {
        self.require(n)?;
        (1..=n).map(|k| self.value(k)).collect()
    }

    /// `f_g(n) = (1/n) * sum_{d | n} mu(d) g(n/d)`, exactly.
    pub fn f_g(&self, n: u64) -> Result<BigRational> {
        if n == 0 {
            return Err(Error::domain("f_g(0) is undefined"));
        }
        self.require(n)?;
        let mut total = BigInt::zero();
        for d in divisors(n) {
            let mu = mobius(d)?;
            if mu != 0 {
                total += BigInt::from(mu) * self.value(n / d)?;
            }
        }
        Ok(BigRational::new(total, BigInt::from(n)))
    }
}

impl fmt::Display for ArithmeticFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

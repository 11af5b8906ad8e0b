//! Grids of `a * gen + b` with per-point certification status.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::{Certifier, Method, Target};
use crate::arith::require_quadratic_d;
use crate::error::{Error, Result};
use crate::numfield::AlgebraicCandidate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScanKind {
    Gaussian,
    Quadratic { d: i64 },
    Cyclotomic { m: u64 },
}

impl ScanKind {
    fn validate(self) -> Result<()> {
        match self {
            ScanKind::Gaussian => Ok(()),
            ScanKind::Quadratic { d } => require_quadratic_d(d),
            ScanKind::Cyclotomic { m } if m >= 3 => Ok(()),
            ScanKind::Cyclotomic { m } => Err(Error::domain(format!("cyclotomic modulus must be >= 3, got {m}"))),
        }
    }

    pub fn candidate(self, a: i64, b: i64) -> Result<AlgebraicCandidate> {
        match self {
            ScanKind::Gaussian => AlgebraicCandidate::gaussian(a, b),
            ScanKind::Quadratic { d } => AlgebraicCandidate::quadratic_shift(d, a, b),
            ScanKind::Cyclotomic { m } => AlgebraicCandidate::cyclotomic_shift(m, a, b),
        }
    }
}

impl FromStr for ScanKind {
    type Err = Error;

    /// `gauss`, `quad:D` or `cyc:m`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected gauss | quad:D | cyc:m, got `{s}`"));
        let kind = match s.split_once(':') {
            None if s == "gauss" => ScanKind::Gaussian,
            Some(("quad", d)) => ScanKind::Quadratic { d: d.trim().parse().map_err(|_| bad())? },
            Some(("cyc", m)) => ScanKind::Cyclotomic { m: m.trim().parse().map_err(|_| bad())? },
            _ => return Err(bad()),
        };
        kind.validate()?;
        Ok(kind)
    }
}

impl fmt::Display for ScanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScanKind::Gaussian => f.write_str("gauss"),
            ScanKind::Quadratic { d } => write!(f, "quad:{d}"),
            ScanKind::Cyclotomic { m } => write!(f, "cyc:{m}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PointStatus {
    /// A theorem covers every `n >= 1`.
    AllN,
    /// Every `n <= n_max` was certified individually.
    UpToNmax,
    /// Some but not all `n <= n_max` were certified.
    Partial,
    /// No `n` was certified.
    Unknown,
}

impl fmt::Display for PointStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridPoint {
    pub a: i64,
    pub b: i64,
    pub status: PointStatus,
    pub uncertified: Vec<u64>,
    /// Methods used, in order of first use.
    pub methods: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Grid {
    pub g_name: String,
    pub kind: ScanKind,
    pub a_range: [i64; 2],
    pub b_range: [i64; 2],
    pub n_max: u64,
    pub points: Vec<GridPoint>,
}

fn status_from(settled: &[Option<Method>], n_max: u64) -> (PointStatus, Vec<u64>, Vec<String>) {
    let uncertified: Vec<u64> = (1..=n_max).filter(|&n| settled[n as usize - 1].is_none()).collect();
    let mut methods: Vec<String> = Vec::new();
    for m in settled.iter().flatten() {
        let s = m.to_string();
        if !methods.contains(&s) {
            methods.push(s);
        }
    }
    let status = if uncertified.is_empty() {
        PointStatus::UpToNmax
    } else if uncertified.len() as u64 == n_max {
        PointStatus::Unknown
    } else {
        PointStatus::Partial
    };
    (status, uncertified, methods)
}

fn scan_point(certifier: &Certifier, kind: ScanKind, a: i64, b: i64, n_max: u64) -> Result<GridPoint> {
    if a == 0 {
        let settled = certifier.certify_integer(b, n_max);
        let (status, uncertified, methods) = status_from(&settled, n_max);
        return Ok(GridPoint { a, b, status, uncertified, methods });
    }
    let c = kind.candidate(a, b)?;
    let all = certifier.certify(&c, Target::AllN);
    if let Some(m) = all.method.filter(|_| all.is_proven()) {
        return Ok(GridPoint {
            a,
            b,
            status: PointStatus::AllN,
            uncertified: Vec::new(),
            methods: vec![m.to_string()],
        });
    }
    let settled: Vec<Option<Method>> = (1..=n_max)
        .map(|n| {
            let cert = certifier.certify(&c, Target::N(n));
            cert.method.filter(|_| cert.is_proven())
        })
        .collect();
    let (status, uncertified, methods) = status_from(&settled, n_max);
    Ok(GridPoint { a, b, status, uncertified, methods })
}

/// Certifies every point of `a_range x b_range` (row-major: `a` outer, `b`
/// inner). Points are processed in parallel; the output order is fixed.
pub fn scan_grid(
    certifier: &Certifier,
    kind: ScanKind,
    a_range: RangeInclusive<i64>,
    b_range: RangeInclusive<i64>,
    n_max: u64,
) -> Result<Grid> {
    kind.validate()?;
    let coords: Vec<(i64, i64)> = a_range
        .clone()
        .flat_map(|a| b_range.clone().map(move |b| (a, b)))
        .collect();
    let points = coords
        .par_iter()
        .map(|&(a, b)| scan_point(certifier, kind, a, b, n_max))
        .collect::<Result<Vec<_>>>()?;
    Ok(Grid {
        g_name: certifier.g().name().to_string(),
        kind,
        a_range: [*a_range.start(), *a_range.end()],
        b_range: [*b_range.start(), *b_range.end()],
        n_max,
        points,
    })
}

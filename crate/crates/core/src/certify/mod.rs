//! Non-root certificates for `P_n^g` at shifted cyclotomic and quadratic
//! integers.
//!
//! A [`Certifier`] runs a fixed strategy chain (absolute-value bound, the
//! theorem-based methods, the generic local obstruction, then exact
//! evaluation) and returns the first certificate that proves non-vanishing.
//! Every certificate carries the data needed to replay it.

mod methods;
mod scan;
mod zmija;

use std::fmt;

use serde::Serialize;

use crate::arith::ArithmeticFunction;
use crate::darcais::DArcaisTable;
use crate::error::{Error, Result};
use crate::numfield::{AlgebraicCandidate, SplittingReport};
use crate::poly::RatPoly;
use crate::polymod::{require_modulus, Factorization, ModPoly, DEFAULT_SEED};

pub use methods::{
    abs_sq_lower_bound, certify_exact, certify_generic, certify_han_bound, certify_theorem_gaussian_sigma,
    certify_theorem_not_ramified, certify_theorem_translated, certify_zmija_cyclotomic, exact_value,
    han_constant, translated_item,
};
pub use scan::{scan_grid, Grid, GridPoint, PointStatus, ScanKind};
pub use zmija::{check_zmija_conditions, FactoredA, Offender, ZmijaCondition, ZmijaReport};

pub const DEFAULT_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];
pub const DEFAULT_EXACT_EVAL_BOUND: u64 = 30;
pub const DEFAULT_NOT_RAMIFIED_BOUND: u64 = 100;

/// What a certificate is asked to cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    N(u64),
    AllN,
}

impl Target {
    pub fn n(self) -> Option<u64> {
        match self {
            Target::N(n) => Some(n),
            Target::AllN => None,
        }
    }
}

/// The set of `n` a certificate speaks for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Scope {
    Single { n: u64 },
    ResidueClass { modulus: u64, residues: Vec<u64> },
    AllN,
}

impl Scope {
    pub fn covers(&self, n: u64) -> bool {
        match self {
            Scope::Single { n: m } => *m == n,
            Scope::ResidueClass { modulus, residues } => residues.contains(&(n % modulus)),
            Scope::AllN => n >= 1,
        }
    }

    fn of(target: Target) -> Self {
        match target {
            Target::N(n) => Scope::Single { n },
            Target::AllN => Scope::AllN,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    ProvenNonRoot,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "name")]
pub enum Method {
    HanBound,
    ThmGaussianSigma,
    ThmTranslated { item: u8 },
    ThmNotRamified { case: u8 },
    ZmijaCyclotomic,
    GenericObstruction { p: u64 },
    ExactEvaluation,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::HanBound => f.write_str("HanBound"),
            Method::ThmGaussianSigma => f.write_str("ThmGaussianSigma"),
            Method::ThmTranslated { item } => write!(f, "ThmTranslated({item})"),
            Method::ThmNotRamified { case } => write!(f, "ThmNotRamified({case})"),
            Method::ZmijaCyclotomic => f.write_str("ZmijaCyclotomic"),
            Method::GenericObstruction { p } => write!(f, "GenericObstruction({p})"),
            Method::ExactEvaluation => f.write_str("ExactEvaluation"),
        }
    }
}

/// A factor of the minimal polynomial mod `p` that occurs in `A_n^g mod p`
/// less often than in the minimal polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub factor: ModPoly,
    pub in_min_poly: u32,
    pub in_a_n: u32,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Evidence {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subcase: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub facts: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub splitting: Option<SplittingReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_n_mod_p: Option<Factorization>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<Obstruction>,
    /// Coordinates in the integral basis, as decimal fractions.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_value: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abs_sq_lower_bound: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold_sq: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Attempt {
    pub method: String,
    pub outcome: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub candidate: AlgebraicCandidate,
    pub g_name: String,
    /// The requested `n`, absent for all-`n` requests.
    pub n: Option<u64>,
    pub n_scope: Scope,
    pub verdict: Verdict,
    pub method: Option<Method>,
    pub evidence: Evidence,
    pub witness_prime: Option<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub attempts: Vec<Attempt>,
}

impl Certificate {
    pub(crate) fn proven(
        c: &AlgebraicCandidate,
        g: &ArithmeticFunction,
        target: Target,
        n_scope: Scope,
        method: Method,
        evidence: Evidence,
        witness_prime: Option<u64>,
    ) -> Self {
        Certificate {
            candidate: c.clone(),
            g_name: g.name().to_string(),
            n: target.n(),
            n_scope,
            verdict: Verdict::ProvenNonRoot,
            method: Some(method),
            evidence,
            witness_prime,
            attempts: Vec::new(),
        }
    }

    pub(crate) fn inconclusive(
        c: &AlgebraicCandidate,
        g: &ArithmeticFunction,
        target: Target,
        reason: impl Into<String>,
    ) -> Self {
        Certificate {
            candidate: c.clone(),
            g_name: g.name().to_string(),
            n: target.n(),
            n_scope: Scope::of(target),
            verdict: Verdict::Inconclusive,
            method: None,
            evidence: Evidence {
                facts: vec![reason.into()],
                ..Evidence::default()
            },
            witness_prime: None,
            attempts: Vec::new(),
        }
    }

    pub fn is_proven(&self) -> bool {
        self.verdict == Verdict::ProvenNonRoot
    }

    fn reason(&self) -> String {
        self.evidence.facts.first().cloned().unwrap_or_default()
    }

    /// JSON of everything except the attempt log.
    pub fn core_json(&self) -> serde_json::Value {
        let mut core = self.clone();
        core.attempts.clear();
        serde_json::to_value(core).expect("certificates serialize")
    }

    /// One line such as `ProvenNonRoot P_9^sigma(2*i + 1) via ThmGaussianSigma`.
    pub fn summary(&self) -> String {
        let n = self.n.map_or("n".to_string(), |n| n.to_string());
        let head = format!("{:?} P_{n}^{}({})", self.verdict, self.g_name, self.candidate);
        match self.method {
            Some(m) => format!("{head} via {m}"),
            None => head,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertifyConfig {
    pub primes: Vec<u64>,
    pub exact_eval_bound: u64,
    pub not_ramified_bound: u64,
    pub seed: u64,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig {
            primes: DEFAULT_PRIMES.to_vec(),
            exact_eval_bound: DEFAULT_EXACT_EVAL_BOUND,
            not_ramified_bound: DEFAULT_NOT_RAMIFIED_BOUND,
            seed: DEFAULT_SEED,
        }
    }
}

/// The strategy chain for a fixed `g` and configuration, with `P_n^g`
/// cached up to the exact-evaluation bound.
#[derive(Debug, Clone)]
pub struct Certifier {
    g: ArithmeticFunction,
    config: CertifyConfig,
    p_polys: Vec<RatPoly>,
    zmija_holds: bool,
}

impl Certifier {
    pub fn new(g: ArithmeticFunction, config: CertifyConfig) -> Result<Self> {
        for &p in &config.primes {
            require_modulus(p)?;
        }
        let len = g.max_n().map_or(config.exact_eval_bound, |m| m.min(config.exact_eval_bound));
        let mut table = DArcaisTable::with_len(g.clone(), len as usize)?;
        let p_polys = (0..=len as usize).map(|n| table.p(n)).collect::<Result<Vec<_>>>()?;
        let zmija_holds = g.is_sigma() && check_zmija_conditions(&g)?.all_hold;
        Ok(Certifier {
            g,
            config,
            p_polys,
            zmija_holds,
        })
    }

    pub fn g(&self) -> &ArithmeticFunction {
        &self.g
    }

    pub fn config(&self) -> &CertifyConfig {
        &self.config
    }

    /// Cached `P_n^g` for `n` up to the exact-evaluation bound.
    pub fn p_poly(&self, n: u64) -> Option<&RatPoly> {
        self.p_polys.get(usize::try_from(n).ok()?)
    }

    pub fn certify(&self, c: &AlgebraicCandidate, target: Target) -> Certificate {
        let g = &self.g;
        let mut attempts = Vec::new();
        let mut run = |name: &str, r: Result<Option<Certificate>>| -> Option<Certificate> {
            let outcome = match r {
                Ok(Some(cert)) if cert.is_proven() => return Some(cert),
                Ok(Some(cert)) => format!("inconclusive: {}", cert.reason()),
                Ok(None) => "not applicable".to_string(),
                Err(e) => format!("skipped: {e}"),
            };
            attempts.push(Attempt {
                method: name.to_string(),
                outcome,
            });
            None
        };
        let n = target.n();
        let steps: [(&str, &dyn Fn() -> Result<Option<Certificate>>); 7] = [
            ("HanBound", &|| match n {
                Some(n) if g.is_sigma() => methods::certify_han_bound(g, c, n).map(Some),
                _ => Ok(None),
            }),
            ("ThmTranslated", &|| methods::certify_theorem_translated(g, c, target).map(Some)),
            ("ZmijaCyclotomic", &|| {
                methods::certify_zmija_cyclotomic(g, c, target, self.zmija_holds).map(Some)
            }),
            ("ThmGaussianSigma", &|| {
                if g.is_sigma() && c.is_gaussian() {
                    methods::gaussian_for(c, target).map(Some)
                } else {
                    Ok(None)
                }
            }),
            ("ThmNotRamified", &|| match c.kind() {
                crate::numfield::CandidateKind::QuadraticShift { .. } => {
                    methods::certify_theorem_not_ramified(g, c, target, self.config.not_ramified_bound).map(Some)
                }
                _ => Ok(None),
            }),
            ("GenericObstruction", &|| match n {
                Some(n) => methods::certify_generic(g, c, n, &self.config.primes, self.config.seed).map(Some),
                None => Ok(None),
            }),
            ("ExactEvaluation", &|| match n {
                Some(n) if n <= self.config.exact_eval_bound => match self.p_poly(n) {
                    Some(p) => methods::exact_with(g, c, n, p).map(Some),
                    None => Err(Error::Range {
                        name: g.name().to_string(),
                        needed: n,
                        available: g.max_n().unwrap_or(0),
                    }),
                },
                _ => Ok(None),
            }),
        ];
        for (name, step) in steps {
            if let Some(mut cert) = run(name, step()) {
                cert.attempts = attempts;
                cert.attempts.push(Attempt {
                    method: name.to_string(),
                    outcome: "proven".into(),
                });
                return cert;
            }
        }
        let mut cert = Certificate::inconclusive(c, g, target, "no method produced a certificate");
        cert.attempts = attempts;
        cert
    }

    /// Per-`n` status of the rational integer `x`, which is not an
    /// [`AlgebraicCandidate`]: the absolute-value bound for `sigma`, then the
    /// exact value. Returns the method that settled each `n` in `1..=n_max`.
    pub fn certify_integer(&self, x: i64, n_max: u64) -> Vec<Option<Method>> {
        let values = crate::darcais::p_values_at_integer(&self.g, x, n_max as usize).ok();
        (1..=n_max)
            .map(|n| {
                if self.g.is_sigma() {
                    let k = han_constant() * methods_rat(n as i64 - 1);
                    if methods_rat(x) * methods_rat(x) > &k * &k {
                        return Some(Method::HanBound);
                    }
                }
                let v = values.as_ref()?.get(n as usize)?;
                (!num_traits::Zero::is_zero(v)).then_some(Method::ExactEvaluation)
            })
            .collect()
    }
}

fn methods_rat(n: i64) -> num_rational::BigRational {
    num_rational::BigRational::from_integer(n.into())
}

/// One-shot strategy chain.
pub fn certify(
    g: &ArithmeticFunction,
    c: &AlgebraicCandidate,
    target: Target,
    config: &CertifyConfig,
) -> Result<Certificate> {
    Ok(Certifier::new(g.clone(), config.clone())?.certify(c, target))
}

/// Re-runs the method a certificate cites, using the seed it recorded.
pub fn replay(cert: &Certificate, g: &ArithmeticFunction) -> Result<Certificate> {
    let c = &cert.candidate;
    let target = cert.n.map_or(Target::AllN, Target::N);
    let need_n = || cert.n.ok_or_else(|| Error::domain("per-n method without n"));
    let method = cert
        .method
        .ok_or_else(|| Error::domain("an inconclusive certificate cites no method"))?;
    match method {
        Method::HanBound => certify_han_bound(g, c, need_n()?),
        Method::ThmTranslated { .. } => certify_theorem_translated(g, c, target),
        Method::ThmGaussianSigma => {
            if !g.is_sigma() {
                return Err(Error::domain("the Gaussian theorem is stated for sigma"));
            }
            methods::gaussian_for(c, target)
        }
        Method::ThmNotRamified { .. } => {
            let p = cert.witness_prime.ok_or_else(|| Error::domain("missing witness prime"))?;
            certify_theorem_not_ramified(g, c, target, p)
        }
        Method::ZmijaCyclotomic => {
            let holds = check_zmija_conditions(g)?.all_hold;
            certify_zmija_cyclotomic(g, c, target, holds)
        }
        Method::GenericObstruction { p } => {
            let seed = cert.evidence.a_n_mod_p.as_ref().map_or(DEFAULT_SEED, Factorization::seed);
            certify_generic(g, c, need_n()?, &[p], seed)
        }
        Method::ExactEvaluation => certify_exact(g, c, need_n()?),
    }
}

/// True when `cert` proves a non-root and replaying it reproduces the same
/// certificate (apart from the attempt log).
pub fn verify(cert: &Certificate, g: &ArithmeticFunction) -> Result<bool> {
    if !cert.is_proven() || cert.g_name != g.name() {
        return Ok(false);
    }
    Ok(replay(cert, g)?.core_json() == cert.core_json())
}

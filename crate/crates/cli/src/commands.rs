use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use darcais::certify::{scan_grid, Certifier, Grid, ScanKind, Target};
use darcais::darcais::{a_poly, a_poly_oracle_bounded, first_tau_zero, h_poly, hurwitz_report, p_poly, tau};
use darcais::numfield::{dedekind_kummer_split_seeded, index_via_determinant, ramifies, AlgebraicCandidate};
use darcais::polymod::{a_poly_mod, factor_with_seed, Factorization, ModPoly};
use darcais::ArithmeticFunction;
use serde_json::{json, Value};

use crate::config::{Format, RunConfig};
use crate::CliError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// What a successful run prints, and its exit code.
pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn header(cfg: &RunConfig, command: &str) -> Value {
    json!({
        "tool": "darcais",
        "version": VERSION,
        "command": command,
        "seed": cfg.seed,
        "config": cfg,
    })
}

fn document(cfg: &RunConfig, command: &str, result: Value) -> String {
    let mut doc = header(cfg, command);
    doc["result"] = result;
    let mut s = serde_json::to_string_pretty(&doc).expect("json values serialize");
    s.push('\n');
    s
}

fn text_header(cfg: &RunConfig, command: &str) -> String {
    let config = serde_json::to_string(cfg).expect("config serializes");
    format!("# darcais {VERSION} {command} seed={} config={config}\n", cfg.seed)
}

fn no_csv(format: Format) -> Result<Format, CliError> {
    match format {
        Format::Csv => Err(CliError::Usage("csv output is only available for scan".into())),
        f => Ok(f),
    }
}

fn load_g(cfg: &RunConfig) -> Result<ArithmeticFunction, CliError> {
    Ok(ArithmeticFunction::from_spec(&cfg.g_spec)?)
}

fn parse_candidate(s: &str) -> Result<AlgebraicCandidate, CliError> {
    Ok(s.parse::<AlgebraicCandidate>()?)
}

fn mod_text(f: &ModPoly) -> String {
    let s = f.to_string();
    s.rsplit_once(" (mod").map_or(s.clone(), |(head, _)| head.to_string())
}

fn factorization_text(f: &Factorization) -> String {
    let mut parts = Vec::new();
    if f.unit() != 1 {
        parts.push(f.unit().to_string());
    }
    for (q, e) in f.factors() {
        let q = match q.degree() {
            Some(1) if q.coeffs()[0] == 0 => "X".to_string(),
            _ => format!("({})", mod_text(q)),
        };
        parts.push(if *e == 1 { q } else { format!("{q}^{e}") });
    }
    if parts.is_empty() {
        parts.push("1".into());
    }
    format!("{} (mod {})", parts.join(" * "), f.modulus())
}

pub fn poly(
    cfg: &RunConfig,
    n: usize,
    modulus: Option<u64>,
    factor: bool,
    normalized: bool,
    check: bool,
) -> Result<Output, CliError> {
    let format = no_csv(cfg.format_or(Format::Text))?;
    let g = load_g(cfg)?;
    if factor && modulus.is_none() {
        return Err(CliError::Usage("--factor needs --mod p".into()));
    }
    let name = if normalized { "P" } else { "A" };
    let label = format!("{name}_{n}^{}(X)", g.name());
    let mut result = json!({ "n": n, "g": g.name(), "kind": name });
    let mut lines = Vec::new();
    match modulus {
        Some(p) => {
            if normalized {
                return Err(CliError::Usage("--mod works on A_n^g; drop --normalized".into()));
            }
            let f = a_poly_mod(&g, n as u64, p)?;
            result["modulus"] = json!(p);
            result["polynomial"] = json!(f);
            result["text"] = json!(mod_text(&f));
            lines.push(format!("{label} = {f}"));
            if factor {
                let fac = factor_with_seed(&f, cfg.seed)?;
                lines.push(format!("  = {}", factorization_text(&fac)));
                result["factorization"] = serde_json::to_value(&fac).expect("serializes");
            }
        }
        None if normalized => {
            let f = p_poly(&g, n)?;
            result["polynomial"] = serde_json::to_value(&f).expect("serializes");
            result["text"] = json!(f.to_string());
            lines.push(format!("{label} = {f}"));
        }
        None => {
            let f = a_poly(&g, n)?;
            result["polynomial"] = serde_json::to_value(&f).expect("serializes");
            result["text"] = json!(f.to_string());
            lines.push(format!("{label} = {f}"));
        }
    }
    if check {
        if n > cfg.oracle_bound {
            return Err(CliError::Usage(format!("n = {n} exceeds the oracle bound {}", cfg.oracle_bound)));
        }
        let agrees = a_poly_oracle_bounded(&g, n, cfg.oracle_bound)? == a_poly(&g, n)?;
        result["oracle_agrees"] = json!(agrees);
        lines.push(format!("oracle agrees: {agrees}"));
    }
    Ok(Output::ok(match format {
        Format::Json => document(cfg, "poly", result),
        _ => text_header(cfg, "poly") + &lines.join("\n") + "\n",
    }))
}

pub fn tau_cmd(cfg: &RunConfig, n: Option<u64>, max: Option<u64>) -> Result<Output, CliError> {
    let format = no_csv(cfg.format_or(Format::Text))?;
    if let Some(max) = max {
        let first_zero = first_tau_zero(max as usize);
        let result = json!({ "max": max, "first_zero": first_zero });
        let text = match first_zero {
            Some(z) => format!("tau({z}) = 0\n"),
            None => format!("no zero found for n <= {max}\n"),
        };
        return Ok(Output {
            text: match format {
                Format::Json => document(cfg, "tau", result),
                _ => text_header(cfg, "tau") + &text,
            },
            code: u8::from(first_zero.is_some()),
        });
    }
    let n = n.expect("clap requires n or --max");
    let t = tau(n)?;
    let result = json!({ "n": n, "tau": t.to_string() });
    Ok(Output::ok(match format {
        Format::Json => document(cfg, "tau", result),
        _ => text_header(cfg, "tau") + &format!("tau({n}) = {t}\n"),
    }))
}

pub fn certify(cfg: &RunConfig, candidate: &str, n: Option<u64>) -> Result<Output, CliError> {
    let format = no_csv(cfg.format_or(Format::Json))?;
    let g = load_g(cfg)?;
    let c = parse_candidate(candidate)?;
    let target = match n {
        Some(0) => return Err(CliError::Usage("n must be at least 1".into())),
        Some(n) => Target::N(n),
        None => Target::AllN,
    };
    let cert = Certifier::new(g, cfg.certify_config())?.certify(&c, target);
    let code = if cert.is_proven() { 0 } else { 1 };
    let text = match format {
        Format::Json => document(cfg, "certify", serde_json::to_value(&cert).expect("serializes")),
        _ => {
            let mut s = text_header(cfg, "certify");
            writeln!(s, "{}", cert.summary()).unwrap();
            if let Some(sub) = &cert.evidence.subcase {
                writeln!(s, "  subcase: {sub}").unwrap();
            }
            if let Some(p) = cert.witness_prime {
                writeln!(s, "  witness prime: {p}").unwrap();
            }
            for f in &cert.evidence.facts {
                writeln!(s, "  {f}").unwrap();
            }
            for a in &cert.attempts {
                writeln!(s, "  [{}] {}", a.method, a.outcome).unwrap();
            }
            s
        }
    };
    Ok(Output { text, code })
}

fn grid_csv(cfg: &RunConfig, grid: &Grid) -> Result<String, CliError> {
    let io = |e: csv::Error| CliError::Usage(format!("csv: {e}"));
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["a", "b", "status", "methods", "uncertified"]).map_err(io)?;
    for p in &grid.points {
        let uncertified: Vec<String> = p.uncertified.iter().map(u64::to_string).collect();
        w.write_record([
            p.a.to_string(),
            p.b.to_string(),
            p.status.to_string(),
            p.methods.join(";"),
            uncertified.join(";"),
        ])
        .map_err(io)?;
    }
    let body = String::from_utf8(w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?)
        .expect("csv output is utf-8");
    Ok(text_header(cfg, "scan") + &body)
}

pub fn scan(
    cfg: &RunConfig,
    kind: &str,
    a: (i64, i64),
    b: (i64, i64),
    n_max: u64,
    out: Option<&Path>,
) -> Result<Output, CliError> {
    let kind: ScanKind = kind.parse()?;
    let g = load_g(cfg)?;
    let certifier = Certifier::new(g, cfg.certify_config())?;
    let grid = scan_grid(&certifier, kind, a.0..=a.1, b.0..=b.1, n_max)?;
    let json_doc = || document(cfg, "scan", serde_json::to_value(&grid).expect("serializes"));
    match out {
        Some(base) => {
            let base = base.with_extension("");
            let write = |ext: &str, body: String| {
                let path = base.with_extension(ext);
                fs::write(&path, body).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
            };
            write("csv", grid_csv(cfg, &grid)?)?;
            write("json", json_doc())?;
            let mut s = String::new();
            writeln!(s, "{} points written to {}.{{csv,json}}", grid.points.len(), base.display()).unwrap();
            Ok(Output::ok(s))
        }
        None => Ok(Output::ok(match cfg.format_or(Format::Json) {
            Format::Json => json_doc(),
            Format::Csv => grid_csv(cfg, &grid)?,
            Format::Text => {
                let mut s = text_header(cfg, "scan");
                for p in &grid.points {
                    writeln!(s, "{:>4} {:>4}  {:<9} {}", p.a, p.b, p.status, p.methods.join(", ")).unwrap();
                }
                s
            }
        })),
    }
}

pub fn minpoly(cfg: &RunConfig, candidate: &str) -> Result<Output, CliError> {
    let format = no_csv(cfg.format_or(Format::Text))?;
    let c = parse_candidate(candidate)?;
    let det = index_via_determinant(&c)?;
    let result = json!({
        "candidate": c,
        "index_determinant": det.to_string(),
    });
    Ok(Output::ok(match format {
        Format::Json => document(cfg, "minpoly", result),
        _ => format!(
            "{}m(X) = {}\ndegree {}\nindex {} (determinant {})\n",
            text_header(cfg, "minpoly"),
            c.min_poly(),
            c.degree(),
            c.index(),
            det
        ),
    }))
}

pub fn split(cfg: &RunConfig, candidate: &str, p: u64) -> Result<Output, CliError> {
    let format = no_csv(cfg.format_or(Format::Json))?;
    let c = parse_candidate(candidate)?;
    let report = dedekind_kummer_split_seeded(&c, p, cfg.seed)?;
    let ram = ramifies(&c, p)?;
    let result = json!({ "candidate": c, "p": p, "ramifies": ram, "report": report });
    Ok(Output::ok(match format {
        Format::Json => document(cfg, "split", result),
        _ => {
            let mut s = text_header(cfg, "split");
            writeln!(s, "{} modulo {p}", c.min_poly()).unwrap();
            if !report.applicable {
                writeln!(s, "  {p} divides the index {}; no conclusion", c.index()).unwrap();
            } else {
                for f in &report.factors {
                    writeln!(s, "  ({}) e = {} f = {}", mod_text(&f.poly), f.e, f.f).unwrap();
                }
                let shape = if report.ramified {
                    "ramified"
                } else if report.is_inert() {
                    "inert"
                } else {
                    "split"
                };
                writeln!(s, "  {shape}").unwrap();
            }
            s
        }
    }))
}

pub fn zmija(cfg: &RunConfig) -> Result<Output, CliError> {
    let format = no_csv(cfg.format_or(Format::Json))?;
    let g = load_g(cfg)?;
    let report = darcais::certify::check_zmija_conditions(&g)?;
    Ok(Output::ok(match format {
        Format::Json => document(cfg, "zmija", serde_json::to_value(&report).expect("serializes")),
        _ => {
            let mut s = text_header(cfg, "zmija");
            for (i, c) in [&report.condition1, &report.condition2, &report.condition3].iter().enumerate() {
                let verdict = if c.holds { "holds" } else { "fails" };
                writeln!(s, "condition {} (mod {}): {verdict}; {}", i + 1, c.p, c.rule).unwrap();
                for o in &c.offenders {
                    writeln!(s, "  A_{}: factor {}", o.r, o.factor).unwrap();
                }
            }
            writeln!(s, "condition 3, divisibility form: {}", report.condition3_raw_holds).unwrap();
            writeln!(s, "g(p) = 1 mod p for p <= 7: {}", report.integrality_necessary_check).unwrap();
            s
        }
    }))
}

pub fn hurwitz(cfg: &RunConfig, max: usize) -> Result<Output, CliError> {
    let format = no_csv(cfg.format_or(Format::Text))?;
    let g = load_g(cfg)?;
    let mut rows = Vec::with_capacity(max);
    for n in 1..=max {
        let report = hurwitz_report(&h_poly(&g, n)?)?;
        rows.push(json!({ "n": n, "report": report }));
    }
    let failures: Vec<u64> = rows
        .iter()
        .filter(|r| r["report"]["hurwitz"] == json!(false))
        .map(|r| r["n"].as_u64().expect("n is stored as an integer"))
        .collect();
    Ok(Output::ok(match format {
        Format::Json => document(cfg, "hurwitz", json!({ "max": max, "not_hurwitz": failures, "rows": rows })),
        _ => {
            let mut s = text_header(cfg, "hurwitz");
            if failures.is_empty() {
                writeln!(s, "H_n^{} is Hurwitz for every n <= {max}", g.name()).unwrap();
            } else {
                for r in rows.iter().filter(|r| r["report"]["hurwitz"] == json!(false)) {
                    writeln!(s, "not Hurwitz: {}", r).unwrap();
                }
            }
            s
        }
    }))
}

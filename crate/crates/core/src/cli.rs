//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on a domain error (not a circuit, not
//! nonnegative, uncovered regime, budget exceeded), 2 on a parse or usage
//! error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::circuit::{
    detect_circuit, is_sonc_member_given_decomposition, theta_compare, Circuit, CircuitError,
    CircuitJson,
};
use crate::faces::{self, Budget, FaceQuery};
use crate::poly::{self, Convention, PolyJson, SparsePoly};
use crate::projective;
use crate::rational::{self, Rational};
use crate::realzeros::{self, AffineZero, ZeroSet};
use crate::report::{canonical_json, float17, Float17};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Gamma {
    Full,
    Half,
    Explicit,
}

#[derive(Debug, Parser)]
#[command(name = "sonc", version, about = "Exact real zeros of SONC polynomials")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a circuit polynomial and decide nonnegativity.
    Check { poly: String },
    /// Compare the inner coefficient with the circuit number.
    Theta { poly: String },
    /// Real zeros of a circuit, or of a SONC sum given as a decomposition.
    Zeros {
        poly: Option<String>,
        #[arg(long)]
        decomposition: Option<PathBuf>,
    },
    /// Homogenize with x0 as the new variable.
    Homogenize { poly: String },
    /// Zeros at infinity of a form (or of the homogenization of a polynomial).
    Infinity { poly: String },
    /// Projective zero count of the homogenization.
    Count {
        poly: Option<String>,
        #[arg(long)]
        decomposition: Option<PathBuf>,
        /// Homogenization degree, default the polynomial degree.
        #[arg(long)]
        degree: Option<u32>,
    },
    /// The number B'' for n+1 variables and degree 2d, with a verified witness.
    Bnumber { n_plus_1: usize, two_d: u32 },
    /// A SONC form attaining B''.
    Witness { n_plus_1: usize, two_d: u32 },
    /// Dimension of the exposed face C_{n,2d}(Γ).
    Facedim {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        deg: u32,
        #[arg(long, value_enum, default_value = "full")]
        gamma: Gamma,
        /// Points of Γ for `--gamma explicit`, e.g. "1,1;-1,-1".
        #[arg(long)]
        points: Option<String>,
        #[arg(long)]
        emit_basis: bool,
        #[arg(long)]
        max_vars: Option<usize>,
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(long)]
        max_work: Option<u64>,
    },
    /// Dimension bounds and the generic dimension of P_{n,2d}(Γ).
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        deg: u32,
        #[arg(long, value_enum, default_value = "full")]
        gamma: Gamma,
        #[arg(long)]
        points: Option<String>,
    },
}

#[derive(Debug)]
enum CliError {
    Parse(String),
    Domain(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Domain(m) => m,
        }
    }
}

fn domain<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Domain(e.to_string())
}

struct Output {
    json: Value,
    text: String,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

/// Parse polynomial text or JSON. Text may use `x0` (form) or `x1..` (affine).
fn read_poly(src: &str, convention: Option<Convention>) -> Result<(SparsePoly, Convention), CliError> {
    let trimmed = src.trim_start();
    if trimmed.starts_with('{') {
        let pj: PolyJson = serde_json::from_str(src).map_err(|e| CliError::Parse(format!("json: {e}")))?;
        let p = pj.to_poly().map_err(|e| CliError::Parse(e.to_string()))?;
        return Ok((p, convention.unwrap_or(Convention::Affine)));
    }
    match convention {
        Some(c) => poly::parse(src, c, None).map(|p| (p, c)),
        None => poly::parse_auto_with_convention(src),
    }
    .map_err(|e| CliError::Parse(e.to_string()))
}

fn read_affine(src: &str) -> Result<SparsePoly, CliError> {
    read_poly(src, Some(Convention::Affine)).map(|(p, _)| p)
}

fn read_decomposition(path: &PathBuf) -> Result<Vec<(Rational, Circuit)>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let list: Vec<CircuitJson> =
        serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    list.iter()
        .map(|cj| {
            let w = cj.weight().map_err(|e| CliError::Parse(e.to_string()))?;
            let c = cj.to_circuit().map_err(|e| match e {
                CircuitError::BadRational(_) => CliError::Parse(e.to_string()),
                other => domain(other),
            })?;
            Ok((w, c))
        })
        .collect()
}

/// Parts of a decomposition with positive weight, checked against `poly`.
fn decomposition_parts(
    poly: Option<&str>,
    path: &PathBuf,
) -> Result<Vec<Circuit>, CliError> {
    let parts = read_decomposition(path)?;
    let Some((_, first)) = parts.first() else {
        return Err(CliError::Domain("decomposition is empty".into()));
    };
    let n = first.nvars();
    let sum = is_sonc_member_given_decomposition(n, &parts).map_err(domain)?;
    if let Some(src) = poly {
        let p = read_affine(src)?;
        if p != sum {
            return Err(CliError::Domain(format!(
                "decomposition sums to {}, not to the given polynomial",
                sum.to_affine_string()
            )));
        }
    }
    Ok(parts
        .into_iter()
        .filter(|(w, _)| rational::sign(w) > 0)
        .map(|(_, c)| c)
        .collect())
}

fn circuit_of(src: &str) -> Result<Circuit, CliError> {
    detect_circuit(&read_affine(src)?).map_err(domain)
}

fn lambda_strings(c: &Circuit) -> Vec<String> {
    c.lambda().iter().map(rational::to_canonical).collect()
}

fn check(src: &str) -> Result<Output, CliError> {
    let c = circuit_of(src)?;
    let (verdict, theta) = if c.is_proper() {
        let t = theta_compare(&c).map_err(domain)?;
        (
            serde_json::to_value(t.verdict).expect("verdict serializes"),
            Some(t),
        )
    } else {
        (Value::String("monomial_squares".into()), None)
    };
    let json = json!({
        "circuit": c.to_json(),
        "proper": c.is_proper(),
        "degenerate": c.is_degenerate(),
        "inner_even": c.inner_even(),
        "has_constant_term": c.has_constant_term(),
        "r": c.r(),
        "nonnegative": c.is_nonnegative(),
        "verdict": verdict,
        "theta": theta.as_ref().map(|t| to_value(&Float17(t.theta_float))),
    });
    let mut text = String::new();
    if c.is_proper() {
        text.push_str("proper circuit\n");
    } else {
        text.push_str("improper circuit (sum of monomial squares)\n");
    }
    text.push_str(&format!("lambda: {}\n", lambda_strings(&c).join(", ")));
    text.push_str(&format!(
        "nonnegative: {}\nverdict: {}\n",
        c.is_nonnegative(),
        verdict.as_str().unwrap_or_default()
    ));
    if c.is_degenerate() {
        text.push_str("degenerate: Newton polytope not full-dimensional\n");
    }
    Ok(Output { json, text })
}

fn theta(src: &str) -> Result<Output, CliError> {
    let c = circuit_of(src)?;
    let t = theta_compare(&c).map_err(domain)?;
    let json = json!({
        "lambda": lambda_strings(&c),
        "q": t.q.to_string(),
        "theta_q": rational::to_canonical(&t.theta_q),
        "inner_q": rational::to_canonical(&t.inner_q),
        "verdict": t.verdict,
        "theta_float": Float17(t.theta_float),
    });
    let text = format!(
        "lambda: {}\nq: {}\ntheta^q: {}\n|f_beta|^q: {}\ntheta: {}\nverdict: {}\n",
        lambda_strings(&c).join(", "),
        t.q,
        rational::to_canonical(&t.theta_q),
        rational::to_canonical(&t.inner_q),
        float17(t.theta_float),
        json["verdict"].as_str().unwrap_or_default()
    );
    Ok(Output { json, text })
}

fn zero_text(z: &AffineZero) -> String {
    let coords: Vec<String> = z
        .signs
        .iter()
        .zip(&z.magnitudes)
        .map(|(s, m)| format!("{}{}", if *s < 0 { "-" } else { "" }, m))
        .collect();
    format!("({})", coords.join(", "))
}

fn zero_set_text(zs: &ZeroSet) -> String {
    let mut text = format!(
        "kind: {}\n",
        if zs.is_finite() { "finite" } else { "infinite" }
    );
    match zs.count {
        Some(c) => text.push_str(&format!("count: {c}\n")),
        None => text.push_str("count: infinite\n"),
    }
    for z in &zs.zeros {
        text.push_str(&zero_text(z));
        text.push('\n');
    }
    for s in &zs.coordinate_zeros.strata {
        let zero_vars: Vec<String> = s.zero_variables.iter().map(|i| format!("x{i}")).collect();
        match s.count {
            Some(c) => text.push_str(&format!("{} = 0: {c} zero(s)\n", zero_vars.join(" = "))),
            None => text.push_str(&format!("{} = 0: infinitely many zeros\n", zero_vars.join(" = "))),
        }
    }
    if let Some(w) = &zs.infinite_witness {
        text.push_str(&format!("witness: {}\n", serde_json::to_string(w).expect("witness serializes")));
    }
    text
}

fn zeros(poly: Option<&str>, decomposition: Option<&PathBuf>) -> Result<Output, CliError> {
    let zs = match (poly, decomposition) {
        (_, Some(path)) => realzeros::sonc_common_zeros(&decomposition_parts(poly, path)?).map_err(domain)?,
        (Some(src), None) => {
            let p = read_affine(src)?;
            let c = detect_circuit(&p).map_err(|e| {
                CliError::Domain(format!("{e}; pass --decomposition with a list of circuits"))
            })?;
            if c.is_proper() {
                realzeros::circuit_zeros(&c).map_err(domain)?
            } else {
                realzeros::affine_zero_set(c.nvars(), &[c]).map_err(domain)?
            }
        }
        (None, None) => return Err(CliError::Parse("expected a polynomial or --decomposition".into())),
    };
    Ok(Output {
        json: to_value(&zs),
        text: zero_set_text(&zs),
    })
}

fn homogenize(src: &str) -> Result<Output, CliError> {
    let p = read_affine(src)?;
    let h = p.homogenize().map_err(domain)?;
    Ok(Output {
        json: json!({ "form": h.to_form_string(), "degree": h.degree(), "n_plus_1": h.nvars() }),
        text: format!("{}\n", h.to_form_string()),
    })
}

fn infinity_text(r: &projective::InfinityReport) -> String {
    let mut text = String::new();
    match r.additional_count {
        Some(c) => text.push_str(&format!("additional zeros: {c}\n")),
        None => text.push_str("additional zeros: infinite\n"),
    }
    for &i in &r.axis_zeros {
        let coords: Vec<&str> = (0..r.n_plus_1).map(|k| if k == i { "1" } else { "0" }).collect();
        text.push_str(&format!("[{}]\n", coords.join(":")));
    }
    text
}

fn infinity(src: &str) -> Result<Output, CliError> {
    let (p, convention) = read_poly(src, None)?;
    let form = match convention {
        Convention::Form => p,
        Convention::Affine => p.homogenize().map_err(domain)?,
    };
    let r = projective::zeros_at_infinity(&form).map_err(domain)?;
    Ok(Output {
        json: to_value(&r),
        text: infinity_text(&r),
    })
}

fn count(poly: Option<&str>, decomposition: Option<&PathBuf>, degree: Option<u32>) -> Result<Output, CliError> {
    let parts = match (poly, decomposition) {
        (_, Some(path)) => decomposition_parts(poly, path)?,
        (Some(src), None) => vec![circuit_of(src)?],
        (None, None) => return Err(CliError::Parse("expected a polynomial or --decomposition".into())),
    };
    let r = projective::projective_zero_count(&parts, degree).map_err(domain)?;
    let json = json!({
        "affine_count": r.affine.count,
        "additional_count": r.infinity.additional_count,
        "total": r.total,
        "affine": to_value(&r.affine),
        "infinity": to_value(&r.infinity),
    });
    let show = |c: Option<u64>| c.map_or("infinite".to_string(), |c| c.to_string());
    let text = format!(
        "affine: {}\nat infinity: {}\ntotal: {}\n",
        show(r.affine.count),
        show(r.infinity.additional_count),
        show(r.total)
    );
    Ok(Output { json, text })
}

fn bnumber(n_plus_1: usize, two_d: u32) -> Result<Output, CliError> {
    let r = projective::b_double_prime(n_plus_1, two_d).map_err(domain)?;
    let text = format!("B''_{{{n_plus_1},{two_d}}} = {}\nwitness: {}\n", r.value, r.witness);
    Ok(Output {
        json: to_value(&r),
        text,
    })
}

fn witness(n_plus_1: usize, two_d: u32) -> Result<Output, CliError> {
    let (regime, parts) = projective::witness_parts(n_plus_1, two_d).map_err(domain)?;
    let form = projective::witness_form(n_plus_1, two_d).map_err(domain)?;
    let json = json!({
        "n_plus_1": n_plus_1,
        "two_d": two_d,
        "regime": regime,
        "form": form.to_form_string(),
        "parts": parts.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
    });
    Ok(Output {
        json,
        text: format!("{}\n", form.to_form_string()),
    })
}

fn parse_points(n: usize, src: &str) -> Result<Vec<Vec<Rational>>, CliError> {
    src.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|pt| {
            let coords = pt
                .split(',')
                .map(|x| rational::parse(x).ok_or_else(|| CliError::Parse(format!("bad coordinate {x:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            if coords.len() != n {
                return Err(CliError::Parse(format!("point {pt:?} needs {n} coordinates")));
            }
            Ok(coords)
        })
        .collect()
}

fn face_query(n: usize, deg: u32, gamma: Gamma, points: Option<&str>) -> Result<FaceQuery, CliError> {
    Ok(match gamma {
        Gamma::Full => FaceQuery::full_orbit(n, deg),
        Gamma::Half => FaceQuery::half_orbit(n, deg),
        Gamma::Explicit => {
            let src = points.ok_or_else(|| CliError::Parse("--gamma explicit needs --points".into()))?;
            FaceQuery::explicit(n, deg, parse_points(n, src)?).map_err(domain)?
        }
    })
}

fn bounds(n: usize, deg: u32, gamma: Gamma, points: Option<&str>) -> Result<Output, CliError> {
    let q = face_query(n, deg, gamma, points)?;
    let b = faces::dimension_bounds(&q);
    let (dim_p, valid) = faces::dim_p_generic(n, deg, q.gamma_size());
    let mut json = to_value(&b);
    json["dim_P_generic"] = json!(dim_p);
    json["dim_P_generic_valid"] = json!(valid);
    json["gamma_size"] = json!(q.gamma_size());
    let mut text = String::new();
    for (name, v) in b.all() {
        text.push_str(&format!("{name}: {v}\n"));
    }
    text.push_str(&format!(
        "dim_P_generic: {dim_p}{}\n",
        if valid { "" } else { " (not expected to be exact)" }
    ));
    Ok(Output { json, text })
}

fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Check { poly } => check(poly),
        Command::Theta { poly } => theta(poly),
        Command::Zeros { poly, decomposition } => zeros(poly.as_deref(), decomposition.as_ref()),
        Command::Homogenize { poly } => homogenize(poly),
        Command::Infinity { poly } => infinity(poly),
        Command::Count {
            poly,
            decomposition,
            degree,
        } => count(poly.as_deref(), decomposition.as_ref(), *degree),
        Command::Bnumber { n_plus_1, two_d } => bnumber(*n_plus_1, *two_d),
        Command::Witness { n_plus_1, two_d } => witness(*n_plus_1, *two_d),
        Command::Facedim {
            n,
            deg,
            gamma,
            points,
            emit_basis,
            max_vars,
            max_degree,
            max_work,
        } => {
            let q = face_query(*n, *deg, *gamma, points.as_deref())?;
            let d = Budget::default();
            let budget = Budget {
                max_vars: max_vars.unwrap_or(d.max_vars),
                max_degree: max_degree.unwrap_or(d.max_degree),
                max_work: max_work.unwrap_or(d.max_work),
            };
            let r = faces::face_dimension(&q, &budget, *emit_basis).map_err(domain)?;
            let mut text = format!(
                "dim_C: {}\ndim_P_generic: {}{}\nagiforms: {}\nbound_naive: {}\n",
                r.dim_c,
                r.dim_p_generic,
                if r.dim_p_generic_valid { "" } else { " (not expected to be exact)" },
                r.agiform_count,
                r.bound_naive
            );
            if let Some(b) = r.bound_refined {
                text.push_str(&format!("bound_refined: {b}\n"));
            }
            for f in r.basis.iter().flatten() {
                text.push_str(&format!("{f}\n"));
            }
            Ok(Output {
                json: to_value(&r),
                text,
            })
        }
        Command::Bounds { n, deg, gamma, points } => bounds(*n, *deg, *gamma, points.as_deref()),
    }
}

/// Run with explicit output streams; returns the exit code.
pub fn run_with<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(o) => {
            let body = match cli.format {
                Format::Json => format!("{}\n", canonical_json(&o.json)),
                Format::Text => o.text,
            };
            let _ = out.write_all(body.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
    }
}

pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with(std::iter::once("sonc").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["check", "x1^2 + x2^2"]).0, 0);
        assert_eq!(call(&["check", "1 + x1^2 + x2^2 + 2*x1*x2 + 2*x1 + 2*x2"]).0, 1);
        let (code, _, err) = call(&["check", "1 + x1^^2"]);
        assert_eq!(code, 2);
        assert!(err.contains("column"));
        assert_eq!(call(&["nonsense"]).0, 2);
        assert_eq!(call(&["bnumber", "3", "2"]).0, 1);
    }

    #[test]
    fn motzkin_zeros_json() {
        let (code, out, _) = call(&["zeros", "1 + x1^4*x2^2 + x1^2*x2^4 - 3*x1^2*x2^2"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["count"], json!(4));
        assert_eq!(v["zeros"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn text_format() {
        let (code, out, _) = call(&["--format", "text", "zeros", "1/2 + x1^4 + x2^4 - 2*x1*x2"]);
        assert_eq!(code, 0);
        assert!(out.contains("(-2^(-1/2), -2^(-1/2))"));
        assert!(out.contains("(2^(-1/2), 2^(-1/2))"));
    }
}

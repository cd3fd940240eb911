//! Command-line front end.
//!
//! Results go to standard output as JSON (or CSV with `--format csv`);
//! diagnostics go to standard error. Exit codes: 0 success, 1 domain error
//! (reported as `{"error": <variant>, "message": ...}` on standard output),
//! 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::Error;
use crate::polar::{grace_factorize, s_poly, solve_polar, solve_polar_shifted, PolarProblem};
use crate::poly::Polynomial;
use crate::regions::{
    enclosing_disk, localization_check, polar_zero_bound, Region, DEFAULT_CONTAINMENT_TOL,
};
use crate::roots::{find_roots, max_modulus, roots_of, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::svg::{self, Boundary, Markers};
use crate::verify::{reproduce_paper_examples, run_property_suite, SuiteConfig, SuiteReport};

#[derive(Parser, Debug)]
#[command(
    name = "polar-zeros",
    version,
    about = "Polar polynomials, their zeros, and localization certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct PolyInput {
    /// P as a JSON array of [re, im] pairs, ascending powers
    #[arg(long = "P", value_parser = parse_polynomial, allow_hyphen_values = true)]
    p: Option<Polynomial>,
    /// P given by its zeros (JSON array of [re, im] pairs); expanded to a monic polynomial
    #[arg(long = "P-roots", value_parser = parse_points, allow_hyphen_values = true)]
    p_roots: Option<RootList>,
}

impl PolyInput {
    fn polynomial(&self) -> Polynomial {
        match (&self.p, &self.p_roots) {
            (Some(p), _) => p.clone(),
            (None, Some(r)) => Polynomial::from_roots(&r.0),
            (None, None) => unreachable!("clap enforces the group"),
        }
    }
}

#[derive(Args, Debug)]
struct Shift {
    /// Shift point xi, written a+bi
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    xi: Option<Complex64>,
    /// Differentiation order k >= 1
    #[arg(long)]
    k: Option<usize>,
    /// General monic R as polynomial JSON (k = deg R)
    #[arg(long = "R", value_parser = parse_polynomial, allow_hyphen_values = true)]
    r: Option<Polynomial>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve d^k/dz^k (R Q) = (n+1)_k P for the monic polar polynomial Q
    Solve {
        #[command(flatten)]
        input: PolyInput,
        #[command(flatten)]
        shift: Shift,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// The polynomial S(w) = sum_j C(n+k, j+k) w^j
    Spoly {
        /// Degree n (defaults to the degree of --P / --P-roots)
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "P", value_parser = parse_polynomial, allow_hyphen_values = true)]
        p: Option<Polynomial>,
        #[arg(long = "P-roots", value_parser = parse_points, allow_hyphen_values = true)]
        p_roots: Option<RootList>,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// All zeros of P
    Roots {
        #[command(flatten)]
        input: PolyInput,
        /// Correction tolerance of the iteration
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Solve, find zeros of Q and S, and check Z(Q) in xi - K Z(S)
    Localize {
        #[command(flatten)]
        input: PolyInput,
        #[command(flatten)]
        shift: Shift,
        /// Region K as JSON; defaults to the minimum enclosing disk of the zeros of P(xi + w)
        #[arg(long = "K", value_parser = parse_region, allow_hyphen_values = true)]
        region: Option<Region>,
        #[arg(long, default_value_t = DEFAULT_CONTAINMENT_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Disk radius |xi| + (|xi| + 1)(k + 1)
    Bound {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        xi: Complex64,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Extract S_R with P(xi + w) *G S_R(w) = Q(xi + w)
    Factorize {
        #[command(flatten)]
        input: PolyInput,
        /// Q as polynomial JSON; computed from --R or --k when omitted
        #[arg(long = "Q", value_parser = parse_polynomial, allow_hyphen_values = true)]
        q: Option<Polynomial>,
        #[command(flatten)]
        shift: Shift,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run the randomized property suite
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        cases: usize,
        /// Containment tolerance
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Reproduce the worked examples (free case and factorization counterexample)
    PaperExamples {
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

/// Parses `a+bi`, `a-bi`, `a`, `bi` (also with `j`), e.g. `1+0i`, `-0.5-2i`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim();
    let bad = || format!("invalid complex number '{s}' (expected a+bi)");
    if t.is_empty() {
        return Err(bad());
    }
    let num = |x: &str| -> Result<f64, String> {
        let v: f64 = match x {
            "" | "+" => 1.0,
            "-" => -1.0,
            _ => x.parse().map_err(|_| bad())?,
        };
        v.is_finite().then_some(v).ok_or_else(bad)
    };
    let z = match t.strip_suffix(['i', 'j']) {
        None => Complex64::new(t.parse::<f64>().map_err(|_| bad())?, 0.0),
        Some(body) => {
            let bytes = body.as_bytes();
            let split = (1..bytes.len())
                .rev()
                .find(|&p| matches!(bytes[p], b'+' | b'-') && !matches!(bytes[p - 1], b'e' | b'E'));
            match split {
                Some(p) => Complex64::new(
                    body[..p].parse::<f64>().map_err(|_| bad())?,
                    num(&body[p..])?,
                ),
                None => Complex64::new(0.0, num(body)?),
            }
        }
    };
    if z.is_finite() {
        Ok(z)
    } else {
        Err(bad())
    }
}

fn parse_polynomial(s: &str) -> Result<Polynomial, String> {
    serde_json::from_str(s).map_err(|e| format!("invalid polynomial JSON: {e}"))
}

#[derive(Debug, Clone)]
struct RootList(Vec<Complex64>);

fn parse_points(s: &str) -> Result<RootList, String> {
    let pts: Vec<Complex64> =
        serde_json::from_str(s).map_err(|e| format!("invalid root list JSON: {e}"))?;
    if pts.is_empty() {
        return Err("root list must not be empty".into());
    }
    if pts.iter().any(|z| !z.is_finite()) {
        return Err("roots must be finite".into());
    }
    Ok(RootList(pts))
}

fn parse_region(s: &str) -> Result<Region, String> {
    serde_json::from_str(s).map_err(|e| format!("invalid region JSON: {e}"))
}

/// Integral values print without a fractional part.
fn num(x: f64) -> Value {
    let x = if x == 0.0 { 0.0 } else { x };
    if x.is_finite() && x.fract() == 0.0 && x.abs() < 9.0e15 {
        json!(x as i64)
    } else {
        json!(x)
    }
}

fn cnum(z: Complex64) -> Value {
    json!([num(z.re), num(z.im)])
}

fn poly_json(p: &Polynomial) -> Value {
    Value::Array(p.coeffs().iter().map(|&c| cnum(c)).collect())
}

fn points_json(pts: &[Complex64]) -> Value {
    Value::Array(pts.iter().map(|&c| cnum(c)).collect())
}

enum Failure {
    Usage(String),
    Domain(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

struct Output {
    json: Value,
    csv: String,
    /// Exit code on success paths (verify reports failures with 1).
    code: i32,
}

impl Output {
    fn ok(json: Value, csv: String) -> Self {
        Output { json, csv, code: 0 }
    }
}

/// Runs the CLI on `argv` (including the program name) and returns the
/// process exit code.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    let format = match &cli.command {
        Command::Solve { format, .. }
        | Command::Spoly { format, .. }
        | Command::Roots { format, .. }
        | Command::Localize { format, .. }
        | Command::Bound { format, .. }
        | Command::Factorize { format, .. }
        | Command::Verify { format, .. }
        | Command::PaperExamples { format } => *format,
    };
    match execute(cli.command) {
        Ok(o) => {
            let text = match format {
                Format::Json => serde_json::to_string(&o.json).expect("serializable"),
                Format::Csv => o.csv,
            };
            let _ = writeln!(out, "{}", text.trim_end());
            o.code
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(
                out,
                "{}",
                json!({"error": e.name(), "message": e.to_string()})
            );
            let _ = writeln!(err, "error: {e}");
            1
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

/// Q from either the general R or the (xi, k) fast path.
fn solve_with(p: &Polynomial, shift: &Shift) -> Result<(Polynomial, Complex64, usize), Failure> {
    let xi = shift.xi.unwrap_or_default();
    match (&shift.r, shift.k) {
        (Some(r), k) => {
            if let Some(k) = k {
                if k != r.degree() {
                    return Err(Failure::Usage(format!(
                        "--k {k} does not match deg R = {}",
                        r.degree()
                    )));
                }
            }
            let q = solve_polar(&PolarProblem::new(p.clone(), r.clone()))?;
            Ok((q, xi, r.degree()))
        }
        (None, Some(k)) => Ok((solve_polar_shifted(p, xi, k)?, xi, k)),
        (None, None) => Err(Failure::Usage("--k is required unless --R is given".into())),
    }
}

fn poly_csv(p: &Polynomial) -> String {
    let mut s = String::from("power,re,im\n");
    for (j, c) in p.coeffs().iter().enumerate() {
        s.push_str(&format!("{j},{},{}\n", c.re, c.im));
    }
    s
}

fn write_svg(path: &PathBuf, body: &str) -> Result<(), Failure> {
    std::fs::write(path, body)
        .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
}

fn report_output(report: SuiteReport) -> Output {
    let mut csv = String::from("property,passed,failed,skipped,worst_value,worst_margin\n");
    for p in &report.properties {
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            p.name, p.passed, p.failed, p.skipped, p.worst_value, p.worst_margin
        ));
    }
    let code = if report.all_passed { 0 } else { 1 };
    Output {
        json: serde_json::to_value(&report).expect("serializable"),
        csv,
        code,
    }
}

fn execute(cmd: Command) -> Result<Output, Failure> {
    match cmd {
        Command::Solve { input, shift, .. } => {
            let p = input.polynomial();
            let (q, _, _) = solve_with(&p, &shift)?;
            Ok(Output::ok(json!({ "Q": poly_json(&q) }), poly_csv(&q)))
        }
        Command::Spoly {
            n, p, p_roots, k, ..
        } => {
            let n = match (n, p, p_roots) {
                (Some(n), _, _) => n,
                (None, Some(p), _) => p.degree(),
                (None, None, Some(r)) => r.0.len(),
                (None, None, None) => {
                    return Err(Failure::Usage(
                        "one of --n, --P, --P-roots is required".into(),
                    ))
                }
            };
            if n == 0 {
                return Err(Error::DegreeZero.into());
            }
            if k == 0 {
                return Err(Error::ZeroOrder.into());
            }
            let s = s_poly(n, k);
            Ok(Output::ok(
                json!({ "n": n, "k": k, "S": poly_json(&s) }),
                poly_csv(&s),
            ))
        }
        Command::Roots {
            input, tol, svg, ..
        } => {
            let p = input.polynomial();
            let rs = find_roots(&p, tol, DEFAULT_MAX_ITER)?;
            let top = max_modulus(&rs)?;
            let mut csv = String::from("index,re,im,modulus\n");
            for (i, r) in rs.roots.iter().enumerate() {
                csv.push_str(&format!("{i},{},{},{}\n", r.re, r.im, r.norm()));
            }
            if let Some(path) = svg {
                write_svg(
                    &path,
                    &svg::render(
                        &[Markers {
                            label: "Z(P)",
                            points: &rs.roots,
                        }],
                        &[],
                    ),
                )?;
            }
            Ok(Output::ok(
                json!({
                    "roots": points_json(&rs.roots),
                    "max_modulus": num(top),
                    "max_residual": num(rs.max_residual),
                    "converged": rs.converged,
                }),
                csv,
            ))
        }
        Command::Localize {
            input,
            shift,
            region,
            tol,
            svg,
            ..
        } => {
            let p = input.polynomial();
            let (q, xi, k) = solve_with(&p, &shift)?;
            let n = p.degree();
            let k_region = match region {
                Some(r) => r,
                None => {
                    let zeros: Vec<Complex64> = match &input.p_roots {
                        Some(r) => r.0.clone(),
                        None => roots_of(&p)?.roots,
                    };
                    let shifted: Vec<Complex64> = zeros.iter().map(|z| z - xi).collect();
                    enclosing_disk(&shifted)?
                }
            };
            let s = match &shift.r {
                None => s_poly(n, k),
                Some(_) => grace_factorize(&p, &q, xi)?.s_r,
            };
            let q_zeros = roots_of(&q)?;
            let s_zeros = roots_of(&s)?;
            let report = localization_check(&q_zeros, xi, &k_region, &s_zeros, tol)?;
            let bound = polar_zero_bound(xi, k);
            let mut csv = String::from(
                "index,zeta_re,zeta_im,beta_re,beta_im,quotient_re,quotient_im,margin\n",
            );
            for (i, w) in report.witnesses.iter().enumerate() {
                csv.push_str(&format!(
                    "{i},{},{},{},{},{},{},{}\n",
                    w.zeta.re,
                    w.zeta.im,
                    w.beta.re,
                    w.beta.im,
                    w.quotient.re,
                    w.quotient.im,
                    w.margin
                ));
            }
            if let Some(path) = svg {
                let p_zeros = match &input.p_roots {
                    Some(r) => r.0.clone(),
                    None => roots_of(&p)?.roots,
                };
                let mut shifted_k = k_region.clone();
                shifted_k.center += xi;
                let bound_disk = Region::disk(Complex64::new(0.0, 0.0), bound, true);
                let body = svg::render(
                    &[
                        Markers {
                            label: "Z(P)",
                            points: &p_zeros,
                        },
                        Markers {
                            label: "Z(Q)",
                            points: &q_zeros.roots,
                        },
                    ],
                    &[
                        Boundary {
                            label: "xi + K",
                            region: &shifted_k,
                        },
                        Boundary {
                            label: "disk bound",
                            region: &bound_disk,
                        },
                    ],
                );
                write_svg(&path, &body)?;
            }
            let witnesses: Vec<Value> = report
                .witnesses
                .iter()
                .map(|w| {
                    json!({
                        "zeta": cnum(w.zeta),
                        "beta": cnum(w.beta),
                        "quotient": cnum(w.quotient),
                        "margin": num(w.margin),
                    })
                })
                .collect();
            Ok(Output::ok(
                json!({
                    "Q": poly_json(&q),
                    "xi": cnum(xi),
                    "k": k,
                    "K": serde_json::to_value(&k_region).expect("serializable"),
                    "S": poly_json(&s),
                    "zeros_Q": points_json(&q_zeros.roots),
                    "zeros_S": points_json(&s_zeros.roots),
                    "contained": report.contained,
                    "max_violation": num(report.max_violation),
                    "tol": num(tol),
                    "witnesses": witnesses,
                    "bound": num(bound),
                    "max_modulus_Q": num(max_modulus(&q_zeros)?),
                }),
                csv,
            ))
        }
        Command::Bound { xi, k, .. } => {
            if k == 0 {
                return Err(Error::ZeroOrder.into());
            }
            let r = polar_zero_bound(xi, k);
            Ok(Output::ok(
                json!({ "radius": num(r) }),
                format!("radius\n{r}\n"),
            ))
        }
        Command::Factorize {
            input, q, shift, ..
        } => {
            let p = input.polynomial();
            let (q, xi) = match q {
                Some(q) => (q, shift.xi.unwrap_or_default()),
                None => {
                    let (q, xi, _) = solve_with(&p, &shift)?;
                    (q, xi)
                }
            };
            let f = grace_factorize(&p, &q, xi)?;
            let mut csv = String::from("j,c_re,c_im,s_re,s_im\n");
            for (j, c) in f.c.gamma.iter().enumerate() {
                let s = f.s_r.coeff(j);
                csv.push_str(&format!("{j},{},{},{},{}\n", c.re, c.im, s.re, s.im));
            }
            Ok(Output::ok(
                json!({
                    "S_R": poly_json(&f.s_r),
                    "c": points_json(&f.c.gamma),
                    "exact_match_error": num(f.exact_match_error),
                }),
                csv,
            ))
        }
        Command::Verify {
            seed, cases, tol, ..
        } => {
            let mut cfg = SuiteConfig {
                seed,
                cases,
                ..SuiteConfig::default()
            };
            if let Some(t) = tol {
                cfg.tolerances.containment = t;
            }
            cfg.validate().map_err(Failure::Usage)?;
            Ok(report_output(run_property_suite(&cfg)))
        }
        Command::PaperExamples { .. } => Ok(report_output(reproduce_paper_examples())),
    }
}

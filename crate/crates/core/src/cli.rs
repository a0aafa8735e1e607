//! Command-line front end.
//!
//! Numbers are written as comma-separated coordinates, `x0,x1,...`, and `n`
//! is the number of coordinates. [`run`] returns the captured output and the
//! exit code so that the commands can be tested without spawning a process.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand};

use crate::algebra::{self, PolarNComplex};
use crate::canonical::to_canonical;
use crate::cosexp;
use crate::elementary;
use crate::error::Error;
use crate::geometry::polar_decompose;
use crate::integration::{cauchy_eval, cauchy_quadrature, residue_value, ClosedPath, DEFAULT_STEPS};
use crate::polynomial::{enumerate_rootsets, NPolynomial, DEFAULT_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "polarn", version, about = "Polar n-complex number calculator")]
struct Cli {
    /// Significant digits in printed numbers (default 12; 17 for cosexp).
    #[arg(long, global = true)]
    digits: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sum of two numbers.
    Add {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Product of two numbers.
    Mul {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Multiplicative inverse.
    Inv {
        #[arg(allow_hyphen_values = true)]
        u: String,
    },
    Exp {
        #[arg(allow_hyphen_values = true)]
        u: String,
    },
    /// Principal logarithm.
    Log {
        #[arg(allow_hyphen_values = true)]
        u: String,
    },
    /// Real power `u^m`.
    Pow {
        #[arg(allow_hyphen_values = true)]
        u: String,
        #[arg(allow_hyphen_values = true)]
        m: f64,
    },
    Sin {
        #[arg(allow_hyphen_values = true)]
        u: String,
    },
    Cos {
        #[arg(allow_hyphen_values = true)]
        u: String,
    },
    Sinh {
        #[arg(allow_hyphen_values = true)]
        u: String,
    },
    Cosh {
        #[arg(allow_hyphen_values = true)]
        u: String,
    },
    /// Canonical coordinates, amplitude and angles as key=value lines.
    Decompose {
        #[arg(allow_hyphen_values = true)]
        u: String,
    },
    /// CSV table of the cosexponential functions g_nk(y).
    Cosexp {
        #[arg(long)]
        n: usize,
        /// Only this column.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, allow_hyphen_values = true)]
        to: f64,
        #[arg(long)]
        step: f64,
        /// Report max |sum_k g_nk(y) - e^y| / e^y on stderr.
        #[arg(long)]
        verify: bool,
    },
    /// Root sets of a monic polynomial u^m + a_1 u^(m-1) + ... + a_m.
    Factor {
        /// Dimension check; inferred from the coefficients when omitted.
        #[arg(long)]
        n: Option<usize>,
        /// `a_1;a_2;...;a_m`, each a number literal.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Loop integral of f(u) / (u - pole) by quadrature and in closed form.
    Integrate {
        #[arg(long, allow_hyphen_values = true)]
        pole: String,
        /// File with one vertex literal per line; '#' starts a comment.
        #[arg(long)]
        path: std::path::PathBuf,
        /// Numerator; the constant 1 when omitted.
        #[arg(long = "fn", value_parser = ["exp"])]
        func: Option<String>,
        #[arg(long, default_value_t = DEFAULT_STEPS)]
        steps: usize,
    },
}

/// Captured result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CliOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Formats `x` with `digits` significant digits, dropping trailing zeros.
/// Plain notation is used for decimal exponents in `-5..=16`.
pub fn format_number(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let digits = digits.clamp(1, 17);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..=16).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        let rounded: f64 = sci.parse().expect("valid float");
        trim_zeros(format!("{:.*}", decimals, rounded))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    if t == "-0" {
        "0".into()
    } else {
        t.into()
    }
}

pub fn format_literal(u: &PolarNComplex, digits: usize) -> String {
    u.coords()
        .iter()
        .map(|&x| format_number(x, digits))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn parse_literal(s: &str) -> crate::error::Result<PolarNComplex> {
    let coords = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("'{}' is not a number", t.trim())))
        })
        .collect::<crate::error::Result<Vec<_>>>()?;
    PolarNComplex::new(coords)
}

fn parse_path(text: &str) -> crate::error::Result<ClosedPath> {
    let vertices = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(parse_literal)
        .collect::<crate::error::Result<Vec<_>>>()?;
    ClosedPath::closed(vertices)
}

/// Parses and runs one command line (`args[0]` is the program name).
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput {
                    stderr: text,
                    code: EXIT_USAGE,
                    ..Default::default()
                }
            } else {
                CliOutput {
                    stdout: text,
                    code: EXIT_OK,
                    ..Default::default()
                }
            };
        }
    };
    let mut out = CliOutput::default();
    match dispatch(&cli, &mut out) {
        Ok(()) => out.code = EXIT_OK,
        Err(Failure::Usage(msg)) => {
            out.stderr.push_str(&format!("error: {msg}\n"));
            out.code = EXIT_USAGE;
        }
        Err(Failure::Lib(e)) => {
            out.stderr.push_str(&format!("error: {e}\n"));
            out.code = if e.is_numerical() { EXIT_NUMERICAL } else { EXIT_USAGE };
        }
    }
    out
}

fn dispatch(cli: &Cli, out: &mut CliOutput) -> Result<(), Failure> {
    let digits = cli.digits.unwrap_or(12);
    let unary = |s: &str, f: &dyn Fn(&PolarNComplex) -> crate::error::Result<PolarNComplex>| {
        let u = parse_literal(s)?;
        Ok::<_, Failure>(format_literal(&f(&u)?, digits))
    };
    let binary = |a: &str, b: &str, f: fn(&PolarNComplex, &PolarNComplex) -> crate::error::Result<PolarNComplex>| {
        let (a, b) = (parse_literal(a)?, parse_literal(b)?);
        Ok::<_, Failure>(format_literal(&f(&a, &b)?, digits))
    };
    let line = match &cli.command {
        Command::Add { a, b } => binary(a, b, algebra::add)?,
        Command::Mul { a, b } => binary(a, b, algebra::mul)?,
        Command::Inv { u } => unary(u, &algebra::inverse)?,
        Command::Exp { u } => unary(u, &elementary::exp)?,
        Command::Log { u } => unary(u, &elementary::log)?,
        Command::Pow { u, m } => unary(u, &|x| elementary::pow(x, *m))?,
        Command::Sin { u } => unary(u, &|x| Ok(elementary::sin(x)))?,
        Command::Cos { u } => unary(u, &|x| Ok(elementary::cos(x)))?,
        Command::Sinh { u } => unary(u, &|x| Ok(elementary::sinh(x)))?,
        Command::Cosh { u } => unary(u, &|x| Ok(elementary::cosh(x)))?,
        Command::Decompose { u } => return decompose(&parse_literal(u)?, digits, out),
        Command::Cosexp {
            n,
            k,
            from,
            to,
            step,
            verify,
        } => return cosexp_table(*n, *k, *from, *to, *step, *verify, cli.digits.unwrap_or(17), out),
        Command::Factor { n, coeffs, cap } => return factor(*n, coeffs, *cap, digits, out),
        Command::Integrate {
            pole,
            path,
            func,
            steps,
        } => return integrate(pole, path, func.is_some(), *steps, digits, out),
    };
    out.stdout.push_str(&line);
    out.stdout.push('\n');
    Ok(())
}

fn kv(out: &mut CliOutput, key: &str, value: f64, digits: usize) {
    let _ = writeln!(out.stdout, "{key}={}", format_number(value, digits));
}

fn decompose(u: &PolarNComplex, digits: usize, out: &mut CliOutput) -> Result<(), Failure> {
    let c = to_canonical(u);
    kv(out, "v_plus", c.v_plus, digits);
    if let Some(m) = c.v_minus {
        kv(out, "v_minus", m, digits);
    }
    for (i, z) in c.pairs.iter().enumerate() {
        kv(out, &format!("v_{}", i + 1), z.re, digits);
        kv(out, &format!("vt_{}", i + 1), z.im, digits);
    }
    kv(out, "nu", algebra::nu(u), digits);
    kv(out, "d", u.modulus(), digits);
    if let Ok(rho) = algebra::amplitude(u) {
        kv(out, "rho", rho, digits);
    }
    if u.modulus() == 0.0 {
        let _ = writeln!(out.stdout, "note=DegenerateDirection: zero vector");
        return Ok(());
    }
    match polar_decompose(u) {
        Ok(f) => {
            kv(out, "theta_plus", f.theta_plus, digits);
            if let Some(t) = f.theta_minus {
                kv(out, "theta_minus", t, digits);
            }
            for (i, p) in f.psi.iter().enumerate() {
                kv(out, &format!("psi_{}", i + 1), *p, digits);
            }
            for (i, p) in f.phi.iter().enumerate() {
                kv(out, &format!("phi_{}", i + 1), *p, digits);
            }
            for (i, r) in f.rho_k.iter().enumerate() {
                kv(out, &format!("rho_{}", i + 1), *r, digits);
            }
        }
        Err(e @ Error::DegenerateDirection { .. }) => {
            let _ = writeln!(out.stdout, "note={e}");
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cosexp_table(
    n: usize,
    k: Option<usize>,
    from: f64,
    to: f64,
    step: f64,
    verify: bool,
    digits: usize,
    out: &mut CliOutput,
) -> Result<(), Failure> {
    if n < 2 {
        return Err(Failure::Usage(format!("--n {n}: need n >= 2")));
    }
    if !(step > 0.0) || !from.is_finite() || !to.is_finite() {
        return Err(Failure::Usage("need finite --from/--to and --step > 0".into()));
    }
    if let Some(k) = k {
        if k >= n {
            return Err(Failure::Usage(format!("--k {k}: need k < n")));
        }
    }
    let columns: Vec<usize> = match k {
        Some(k) => vec![k],
        None => (0..n).collect(),
    };
    out.stdout.push('y');
    for c in &columns {
        let _ = write!(out.stdout, ",g_{n}{c}");
    }
    out.stdout.push('\n');
    let mut worst = 0.0_f64;
    let rows = ((to - from) / step + 1e-9).floor();
    let mut i = 0.0;
    while i <= rows {
        let y = from + i * step;
        let g = cosexp::cosexp_values(n, y)?;
        out.stdout.push_str(&format_number(y, digits));
        for &c in &columns {
            out.stdout.push(',');
            out.stdout.push_str(&format_number(g.values[c], digits));
        }
        out.stdout.push('\n');
        worst = worst.max((g.sum() - y.exp()).abs() / y.exp());
        i += 1.0;
    }
    if verify {
        let _ = writeln!(out.stderr, "max_deviation={}", format_number(worst, 3));
    }
    Ok(())
}

fn factor(n: Option<usize>, coeffs: &str, cap: usize, digits: usize, out: &mut CliOutput) -> Result<(), Failure> {
    let coeffs = coeffs
        .split(';')
        .map(parse_literal)
        .collect::<crate::error::Result<Vec<_>>>()?;
    let p = NPolynomial::new(coeffs)?;
    if let Some(n) = n {
        if n != p.n() {
            return Err(Failure::Usage(format!("--n {n} does not match coefficients of length {}", p.n())));
        }
    }
    let e = enumerate_rootsets(&p, cap)?;
    let _ = writeln!(out.stdout, "count={}", e.count);
    let _ = writeln!(out.stdout, "truncated={}", e.truncated);
    for (i, set) in e.sets.iter().enumerate() {
        let _ = writeln!(out.stdout, "# set {}", i + 1);
        for r in &set.roots {
            let _ = writeln!(out.stdout, "{}", format_literal(r, digits));
        }
    }
    Ok(())
}

fn integrate(
    pole: &str,
    path: &std::path::Path,
    with_exp: bool,
    steps: usize,
    digits: usize,
    out: &mut CliOutput,
) -> Result<(), Failure> {
    let u0 = parse_literal(pole)?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let loop_path = parse_path(&text)?;
    if loop_path.n() != u0.n() {
        return Err(Error::DimensionMismatch {
            left: loop_path.n(),
            right: u0.n(),
        }
        .into());
    }
    let (numeric, closed) = if with_exp {
        let f = |u: &PolarNComplex| elementary::exp(u).unwrap_or_else(|_| PolarNComplex::zero(u.n()));
        elementary::exp(&u0)?;
        (
            cauchy_quadrature(f, &u0, &loop_path, steps)?,
            cauchy_eval(f, &u0, &loop_path)?,
        )
    } else {
        let one = |u: &PolarNComplex| PolarNComplex::one(u.n());
        (
            cauchy_quadrature(one, &u0, &loop_path, steps)?,
            residue_value(&u0, &loop_path)?,
        )
    };
    let _ = writeln!(out.stdout, "numeric={}", format_literal(&numeric, digits));
    let _ = writeln!(out.stdout, "closed_form={}", format_literal(&closed, digits));
    kv(out, "max_deviation", numeric.max_abs_diff(&closed), 3);
    Ok(())
}

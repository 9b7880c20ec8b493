mod cases;
mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qeuler::algebra::rational::parse_rat;
use qeuler::algebra::BigRat;
use qeuler::qeuler::{euler_poly_eval, euler_poly_eval_exact, Arg, QEulerCache};
use qeuler::real::{decimal_digits, format_sci, RealCtx, DEFAULT_PRECISION_BITS};
use qeuler::report::{Fields, IdentityId, VerificationReport};
use qeuler::{zeta, Error, Result};
use rayon::prelude::*;
use serde::Serialize;

use cases::Settings;
use render::Format;

/// Exact and certified-numeric checks for q-Euler numbers, polynomials and
/// their symmetric identities.
#[derive(Parser)]
#[command(name = "qeuler", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand)]
enum Command {
    /// Table of q-Euler numbers E_{0..n} in base q^a, optionally evaluated at --q.
    Numbers,
    /// The polynomial E_{n,q^a}(x) in X = q^x.
    Poly,
    /// E_{n,q}(x) at rational q in (0,1) and rational x.
    Eval,
    /// The alternating q-zeta series at (s, x) in base q^a.
    Zeta,
    /// Check one identity: thm21, thm22, thm24, prop23, eq5, eq13, eq17.
    Verify { identity: String },
    /// Check an identity over a parameter grid.
    Sweep { identity: String },
    /// Compare E_{k,q} at q = 1 with the classical Euler numbers for k <= n.
    Limit,
}

fn rational(text: &str) -> std::result::Result<BigRat, String> {
    parse_rat(text).map_err(|e| e.to_string())
}

#[derive(Args, Clone, Debug)]
pub struct Opts {
    /// Index n (degree, or second index of eq17).
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Index m (order of eq5/eq13, first index of eq17).
    #[arg(long, global = true)]
    pub m: Option<usize>,
    /// Positive integer a (odd unless --force).
    #[arg(long, global = true)]
    pub a: Option<usize>,
    /// Positive integer b (odd unless --force).
    #[arg(long, global = true)]
    pub b: Option<usize>,
    /// Zeta argument s, rational.
    #[arg(long, global = true, value_parser = rational, allow_hyphen_values = true)]
    pub s: Option<BigRat>,
    /// Rational x; must be positive for zeta evaluation.
    #[arg(long, global = true, value_parser = rational, allow_hyphen_values = true)]
    pub x: Option<BigRat>,
    /// Rational y.
    #[arg(long, global = true, value_parser = rational, allow_hyphen_values = true)]
    pub y: Option<BigRat>,
    /// Rational q in (0, 1), e.g. 1/2 or 0.3.
    #[arg(long, global = true, value_parser = rational)]
    pub q: Option<BigRat>,
    /// Series variable u for eq13.
    #[arg(long, global = true, value_parser = rational, allow_hyphen_values = true)]
    pub u: Option<BigRat>,
    /// Series variable v for eq13.
    #[arg(long, global = true, value_parser = rational, allow_hyphen_values = true)]
    pub v: Option<BigRat>,
    /// Target accuracy of numeric evaluations.
    #[arg(long, global = true, value_parser = rational, default_value = "1e-30")]
    pub tol: BigRat,
    /// Binary working precision (at least 64).
    #[arg(long = "precision-bits", global = true, default_value_t = DEFAULT_PRECISION_BITS)]
    pub precision_bits: usize,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Allow even a or b (the identities then generally fail).
    #[arg(long, global = true)]
    pub force: bool,
    /// Also compare the S*-sum sides with the sums they are rearranged from.
    #[arg(long = "check-intermediates", global = true)]
    pub check_intermediates: bool,
    /// Sweep bound on n (or m, or m + n).
    #[arg(long = "n-max", global = true)]
    pub n_max: Option<usize>,
    /// Sweep bound on the odd parameters a and b.
    #[arg(long = "odd-max", global = true)]
    pub odd_max: Option<usize>,
}

impl Opts {
    fn settings(&self) -> Result<Settings> {
        if self.tol <= BigRat::from_integer(0.into()) {
            return Err(Error::Usage(format!("--tol must be positive, got {}", self.tol)));
        }
        // Validates the precision up front.
        RealCtx::new(self.precision_bits)?;
        Ok(Settings {
            tol: self.tol.clone(),
            precision_bits: self.precision_bits,
            force: self.force,
            check_intermediates: self.check_intermediates,
        })
    }

    fn digits(&self) -> usize {
        decimal_digits(self.precision_bits)
    }

    fn require<T: Clone>(&self, v: &Option<T>, flag: &str) -> Result<T> {
        v.clone().ok_or_else(|| Error::Usage(format!("missing --{flag}")))
    }
}

fn identity(name: &str) -> Result<IdentityId> {
    IdentityId::parse(name).ok_or_else(|| Error::Usage(format!("unknown identity '{name}'")))
}

/// Outcome of a command: whether every check passed.
type Outcome = Result<bool>;

fn io(e: std::io::Error) -> Error {
    Error::Usage(format!("write failed: {e}"))
}

fn cmd_verify(name: &str, o: &Opts) -> Outcome {
    let id = identity(name)?;
    let st = o.settings()?;
    let report = cases::single(id, o)?.run(&st)?;
    render::reports(o.format, std::slice::from_ref(&report)).map_err(io)?;
    Ok(report.passed)
}

fn cmd_sweep(name: &str, o: &Opts) -> Outcome {
    let id = identity(name)?;
    let st = o.settings()?;
    let (grid, cases) = cases::grid(id, o)?;
    // Collecting an indexed parallel iterator keeps grid order.
    let results: Vec<Result<VerificationReport>> = cases.par_iter().map(|c| c.run(&st)).collect();
    let reports = results.into_iter().collect::<Result<Vec<_>>>()?;
    render::sweep(o.format, id, &grid, &reports).map_err(io)?;
    Ok(reports.iter().all(|r| r.passed))
}

fn cmd_limit(o: &Opts) -> Outcome {
    let report = cases::single(IdentityId::Limit, o)?.run(&o.settings()?)?;
    render::reports(o.format, std::slice::from_ref(&report)).map_err(io)?;
    Ok(report.passed)
}

#[derive(Serialize)]
struct NumberRow {
    n: usize,
    num: Vec<String>,
    den: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<String>,
}

#[derive(Serialize)]
struct NumberTable {
    base_power: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<String>,
    entries: Vec<NumberRow>,
}

fn cmd_numbers(o: &Opts) -> Outcome {
    let n = o.require(&o.n, "n")?;
    let a = o.a.unwrap_or(1);
    if a == 0 {
        return Err(Error::Usage("--a must be positive".into()));
    }
    let table = QEulerCache::global().table(n, a);
    let mut rows = Vec::new();
    let mut display = Vec::new();
    for (k, e) in table.entries()[..=n].iter().enumerate() {
        let value = o.q.as_ref().map(|q| e.eval(q)).transpose()?;
        rows.push(NumberRow {
            n: k,
            num: e.num().coeff_strings(),
            den: e.den().coeff_strings(),
            value: value.as_ref().map(ToString::to_string),
        });
        display.push(e.to_string());
    }
    match o.format {
        Format::Json => render::json(&NumberTable {
            base_power: a,
            q: o.q.as_ref().map(ToString::to_string),
            entries: rows,
        }),
        Format::Csv => render::csv(
            &["n", "num", "den", "value"],
            rows.into_iter().map(|r| {
                vec![
                    r.n.to_string(),
                    format!("[{}]", r.num.join(", ")),
                    format!("[{}]", r.den.join(", ")),
                    r.value.unwrap_or_default(),
                ]
            }),
        ),
        Format::Text => {
            for (r, d) in rows.iter().zip(&display) {
                match &r.value {
                    Some(v) => println!("E_{} = {d} = {v}", r.n),
                    None => println!("E_{} = {d}", r.n),
                }
            }
            Ok(())
        }
    }
    .map_err(io)?;
    Ok(true)
}

fn cmd_poly(o: &Opts) -> Outcome {
    let n = o.require(&o.n, "n")?;
    let a = o.a.unwrap_or(1);
    if a == 0 {
        return Err(Error::Usage("--a must be positive".into()));
    }
    let p = QEulerCache::global().table(n, a).poly(n, Arg::scaled_x(a as i64));
    #[derive(Serialize)]
    struct Out<'a> {
        n: usize,
        base_power: usize,
        terms: &'a qeuler::algebra::LaurentXY,
    }
    match o.format {
        Format::Json => render::json(&Out { n, base_power: a, terms: &p }),
        Format::Csv => render::csv(
            &["x_exp", "y_exp", "num", "den"],
            p.terms().map(|(&(ex, ey), c)| {
                vec![
                    ex.to_string(),
                    ey.to_string(),
                    format!("[{}]", c.num().coeff_strings().join(", ")),
                    format!("[{}]", c.den().coeff_strings().join(", ")),
                ]
            }),
        ),
        Format::Text => {
            println!("{p}");
            Ok(())
        }
    }
    .map_err(io)?;
    Ok(true)
}

fn cmd_eval(o: &Opts) -> Outcome {
    let n = o.require(&o.n, "n")?;
    let q = o.require(&o.q, "q")?;
    let x = o.require(&o.x, "x")?;
    o.settings()?;
    let mut ctx = RealCtx::new(o.precision_bits)?;
    let exact = euler_poly_eval_exact(n, &q, &x)?;
    let value = match &exact {
        Some(v) => format_sci(v, o.digits()),
        None => euler_poly_eval(n, &q, &x, &mut ctx)?.to_sci(o.digits()),
    };
    #[derive(Serialize)]
    struct Out {
        n: usize,
        q: String,
        x: String,
        exact: Option<String>,
        value: String,
    }
    let out = Out {
        n,
        q: q.to_string(),
        x: x.to_string(),
        exact: exact.map(|v| v.to_string()),
        value,
    };
    match o.format {
        Format::Json => render::json(&out),
        Format::Csv => render::csv(
            &["n", "q", "x", "exact", "value"],
            [vec![
                out.n.to_string(),
                out.q.clone(),
                out.x.clone(),
                out.exact.clone().unwrap_or_default(),
                out.value.clone(),
            ]],
        ),
        Format::Text => {
            match &out.exact {
                Some(e) => println!("E_{n}(x={}) at q={} = {e} = {}", out.x, out.q, out.value),
                None => println!("E_{n}(x={}) at q={} = {}", out.x, out.q, out.value),
            }
            Ok(())
        }
    }
    .map_err(io)?;
    Ok(true)
}

fn cmd_zeta(o: &Opts) -> Outcome {
    let s = o.require(&o.s, "s")?;
    let x = o.require(&o.x, "x")?;
    let q = o.require(&o.q, "q")?;
    let a = o.a.unwrap_or(1);
    let st = o.settings()?;
    let mut ctx = RealCtx::new(st.precision_bits)?;
    let z = zeta::zeta_eval(&s, &x, &q, a, &st.tol, &mut ctx)?;
    let fields: Vec<(&str, String)> = vec![
        ("s", s.to_string()),
        ("x", x.to_string()),
        ("q", q.to_string()),
        ("base_power", a.to_string()),
        ("tol", format_sci(&st.tol, 3)),
        ("value", z.value.to_sci(o.digits())),
        ("tail_bound", format_sci(&z.tail_bound, 6)),
        ("rounding_bound", format_sci(&z.rounding_bound, 6)),
        ("terms_used", z.terms_used.to_string()),
    ];
    match o.format {
        Format::Json => {
            let mut map = Fields::new();
            for (k, v) in &fields {
                map.push(k, v);
            }
            render::json(&map)
        }
        Format::Csv => render::csv(
            &fields.iter().map(|(k, _)| *k).collect::<Vec<_>>(),
            [fields.iter().map(|(_, v)| v.clone()).collect()],
        ),
        Format::Text => {
            for (k, v) in &fields {
                println!("{k} = {v}");
            }
            Ok(())
        }
    }
    .map_err(io)?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let o = &cli.opts;
    let outcome = match &cli.command {
        Command::Numbers => cmd_numbers(o),
        Command::Poly => cmd_poly(o),
        Command::Eval => cmd_eval(o),
        Command::Zeta => cmd_zeta(o),
        Command::Verify { identity } => cmd_verify(identity, o),
        Command::Sweep { identity } => cmd_sweep(identity, o),
        Command::Limit => cmd_limit(o),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

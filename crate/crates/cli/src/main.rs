use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use thh_core::adams::{self, KClass};
use thh_core::expr;
use thh_core::rezk::{self, UnitSeries};
use thh_core::thh::{self as pipeline, ExtensionSpec, Factor, ThhReport};
use thh_core::verify;
use thh_core::{Error, TruncatedSeries};

#[derive(Parser)]
#[command(name = "thh", version, about = "THH of K/p over p-complete K-theory, computed exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and report the torsion rank.
    Compute(ComputeArgs),
    /// Check the reference values for one prime.
    Verify {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        json: bool,
    },
    /// Rezk's logarithm of a unit series.
    Log {
        #[command(flatten)]
        ring: Ring,
        #[arg(long)]
        unit: String,
    },
    /// Solve l_p(u) = target for u.
    Solve {
        #[command(flatten)]
        ring: Ring,
        #[arg(long)]
        target: String,
        /// Residue mod p selecting the Teichmüller factor.
        #[arg(long, default_value_t = 1)]
        omega: u64,
        /// Exponent a of the (1 - x)^a factor.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        line: i64,
    },
    /// Apply the projector onto the k-th Adams summand.
    Project {
        #[command(flatten)]
        ring: Ring,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        input: String,
        /// Bott weight of the input class.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        weight: i64,
    },
}

#[derive(Args)]
struct Ring {
    #[arg(long)]
    prime: u64,
    #[arg(long, default_value_t = pipeline::DEFAULT_PRECISION)]
    precision: u32,
    /// Truncation M (working mod x^M); defaults to p.
    #[arg(long)]
    trunc: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ComputeArgs {
    #[arg(long)]
    prime: Option<u64>,
    #[arg(long)]
    precision: Option<u32>,
    /// Truncation M; the rank is confirmed at 2M. Defaults to 2p.
    #[arg(long)]
    trunc: Option<usize>,
    /// `B` for the B-summand alone, or an index k in 2..=p-2.
    #[arg(long)]
    summand: Option<String>,
    /// Coefficient c of the summand-k data c*x.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    coeff: i64,
    /// Integer a of the line-bundle factor.
    #[arg(long, allow_hyphen_values = true)]
    line_bundle: Option<i64>,
    /// Coefficient of the B_2 factor.
    #[arg(long, allow_hyphen_values = true)]
    b2: Option<i64>,
    /// Extension spec as a JSON file.
    #[arg(long)]
    spec: Option<String>,
    /// A built-in spec: `worked` (p = 3, g = -alpha (L - L^-1) / 2).
    #[arg(long)]
    example: Option<String>,
    #[arg(long)]
    json: bool,
}

enum Failure {
    Core(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn parts(&self) -> (&'static str, String, u8) {
        match self {
            Failure::Usage(m) => ("usage", m.clone(), 2),
            Failure::Core(e) => {
                let code = match e {
                    Error::NotInImage(_) => 3,
                    Error::PrecisionExhausted(_) | Error::PrecisionOutOfRange { .. } => 4,
                    Error::Indeterminate(_) => 5,
                    Error::Internal(_) => 1,
                    _ => 2,
                };
                (e.kind(), e.to_string(), code)
            }
        }
    }
}

type Outcome = std::result::Result<(String, u8), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((mut out, code)) => {
            if !out.ends_with('\n') {
                out.push('\n');
            }
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = std::io::stdout().write_all(out.as_bytes());
            ExitCode::from(code)
        }
        Err(f) => {
            let (kind, message, code) = f.parts();
            eprintln!("{}", json!({ "error": { "kind": kind, "message": message, "exit_code": code } }));
            ExitCode::from(code)
        }
    }
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Compute(args) => compute(args),
        Command::Verify { prime, json } => {
            let rows = verify::verify(prime)?;
            let code = if verify::all_passed(&rows) { 0 } else { 1 };
            let out =
                if json { to_json(&json!({ "prime": prime, "rows": rows }))? } else { verify::render_table(&rows) };
            Ok((out, code))
        }
        Command::Log { ring, unit } => {
            let u = UnitSeries::new(read_series(&ring, &unit)?)?;
            let l = rezk::rezk_log(&u)?;
            Ok((show_series(&l, ring.json)?, 0))
        }
        Command::Solve { ring, target, omega, line } => {
            let t = read_series(&ring, &target)?;
            let u = rezk::solve_unit_int(&t, omega, line as i128)?;
            Ok((show_series(u.body(), ring.json)?, 0))
        }
        Command::Project { ring, k, input, weight } => {
            let c = KClass::new(weight, read_series(&ring, &input)?);
            let out = adams::projector(k, &c)?;
            if ring.json {
                return Ok((to_json(&out)?, 0));
            }
            let text = match weight {
                0 => out.body.to_string(),
                w => format!("beta^{w} * ({})", out.body),
            };
            Ok((text, 0))
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> std::result::Result<String, Failure> {
    serde_json::to_string_pretty(v).map_err(|e| Failure::Core(Error::Internal(e.to_string())))
}

fn show_series(s: &TruncatedSeries, as_json: bool) -> std::result::Result<String, Failure> {
    if as_json {
        to_json(s)
    } else {
        Ok(s.to_string())
    }
}

/// A series given either in the text grammar or as series JSON.
fn read_series(ring: &Ring, text: &str) -> std::result::Result<TruncatedSeries, Failure> {
    if text.trim_start().starts_with('{') {
        let s: TruncatedSeries = serde_json::from_str(text).map_err(|e| Failure::Core(Error::Parse(e.to_string())))?;
        if s.prime() != ring.prime {
            return Err(Error::PrimeMismatch(ring.prime, s.prime()).into());
        }
        return Ok(s);
    }
    Ok(expr::parse_series(text, ring.prime, ring.precision, ring.trunc.unwrap_or(ring.prime as usize))?)
}

fn compute(a: ComputeArgs) -> Outcome {
    let mut spec = match (&a.spec, &a.example) {
        (Some(_), Some(_)) => return Err(Failure::Usage("--spec and --example are exclusive".into())),
        (Some(path), None) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
            serde_json::from_str::<ExtensionSpec>(&text)
                .map_err(|e| Failure::Core(Error::InvalidSpec(e.to_string())))?
        }
        (None, Some(name)) => {
            let p = a.prime.ok_or_else(|| Failure::Usage("--example needs --prime".into()))?;
            ExtensionSpec::example(name, p)?
        }
        (None, None) => ExtensionSpec::new(a.prime.ok_or_else(|| Failure::Usage("--prime is required".into()))?),
    };
    if let Some(p) = a.prime {
        if p != spec.prime {
            return Err(Error::PrimeMismatch(spec.prime, p).into());
        }
    }
    if let Some(n) = a.precision {
        spec.precision = n;
    }
    if a.trunc.is_some() {
        spec.truncation = a.trunc;
    }
    match a.summand.as_deref() {
        None | Some("B") | Some("b") | Some("0") => {}
        Some(k) => {
            let k: u64 = k.parse().map_err(|_| Failure::Usage(format!("--summand takes B or an index, got {k:?}")))?;
            spec.factors.push(Factor::Summand { k, coeff: a.coeff });
        }
    }
    if let Some(a) = a.line_bundle {
        spec.factors.push(Factor::LineBundle { a });
    }
    if let Some(c) = a.b2 {
        spec.factors.push(Factor::B2 { coeff: c });
    }
    let report = pipeline::torsion_rank(&spec)?;
    let out = if a.json { to_json(&report)? } else { render_report(&report) };
    Ok((out, 0))
}

fn describe(spec: &ExtensionSpec) -> String {
    let mut parts = vec![format!("B-summand g = {}", spec.b_summand.g)];
    for f in &spec.factors {
        parts.push(match f {
            Factor::Summand { k, coeff } => format!("summand {k} with h = {coeff}*x"),
            Factor::LineBundle { a } => format!("line bundle a = {a}"),
            Factor::B2 { coeff } => format!("B_2 factor with c = {coeff}"),
        });
    }
    parts.join("; ")
}

fn render_report(r: &ThhReport) -> String {
    let p = r.spec.prime;
    let mut out = String::new();
    out.push_str(&format!("prime            {p}\n"));
    out.push_str(&format!("extension        {}\n", describe(&r.spec)));
    out.push_str(&format!("unit u           {}\n", r.unit));
    out.push_str(&format!(
        "normal form      v_p(c0 - 1) = {}, first unit coefficient x^{}\n",
        r.profile.v, r.profile.k
    ));
    for key in ["M", "2M"] {
        out.push_str(&format!("divisors M = {:<4} {:?}\n", r.truncations[key], r.divisors[key]));
    }
    out.push_str(&format!("torsion rank     {}\n", r.rank));
    out.push_str(&format!("pi_n THH         {} for n even, {} for n odd\n", r.homotopy.even, r.homotopy.odd));
    for n in &r.notes {
        out.push_str(&format!("note             {n}\n"));
    }
    out
}

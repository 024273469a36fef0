//! Command-line front end: argument handling, dispatch and output.

pub mod error;
pub mod expr;
pub mod render;
pub mod spec;

use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rhoforms::checks::{self, Outcome};
use rhoforms::{decompose, naturality_report, sample, ComplexSlice, FormSpace, Grade, Presentation};

pub use error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "rhoforms", about = "Differential calculus on rho-commutative algebras")]
pub struct Cli {
    /// `qplane:N=<int>`, `clockshift:n=<int>` or `cyclic:n=<int>`
    #[arg(long, global = true, default_value = "qplane:N=2")]
    pub algebra: String,
    /// Grading character: comma-separated values on the grade group generators
    #[arg(long, global = true)]
    pub phi: Option<String>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form of an element or form
    Normalize { expr: String },
    /// Graded commutator `ab - rho(|a|,|b|) ba`
    Commutator { a: String, b: String },
    /// Apply a derivation spec to an element
    ApplyDeriv { deriv: String, expr: String },
    /// Exterior derivative
    D { expr: String },
    /// Product of forms
    Wedge { a: String, b: String },
    /// Contraction `j_K` applied to a form
    Contract { fvform: String, expr: String },
    /// Lie derivative `L_K` applied to a form
    Lie { fvform: String, expr: String },
    /// Nijenhuis bracket of two field-valued forms
    Nijenhuis { k: String, l: String },
    /// Froelicher-Nijenhuis bracket of two field-valued forms
    FnBracket { k: String, l: String },
    /// Split a derivation of forms into `L_K + j_L`
    Decompose { derivation: String },
    /// Induced map on forms
    OmegaMap { hom: String, expr: String },
    /// Whether `K` and `K'` are related by a homomorphism
    Related { hom: String, k: String, k2: String },
    /// Naturality report for two related pairs
    Naturality { hom: String, k: String, k2: String, l: String, l2: String },
    /// Betti numbers of one grade of the de Rham complex
    Cohomology {
        #[arg(long, allow_hyphen_values = true)]
        grade: String,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
    /// Run property suites
    Check {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// What a command produced: JSON `result` plus its text rendering.
struct Output {
    result: Value,
    text: String,
    ok: bool,
}

impl Output {
    fn ok(result: Value, text: String) -> Self {
        Self { result, text, ok: true }
    }
}

fn form_output(w: &rhoforms::Form) -> Output {
    Output::ok(render::form(w), w.to_string())
}

fn input_text(c: &Command) -> String {
    match c {
        Command::Normalize { expr } | Command::D { expr } => expr.clone(),
        Command::Commutator { a, b } | Command::Wedge { a, b } => format!("{a} ; {b}"),
        Command::ApplyDeriv { deriv: s, expr }
        | Command::Contract { fvform: s, expr }
        | Command::Lie { fvform: s, expr }
        | Command::OmegaMap { hom: s, expr } => format!("{s} ; {expr}"),
        Command::Nijenhuis { k, l } | Command::FnBracket { k, l } => format!("{k} ; {l}"),
        Command::Decompose { derivation } => derivation.clone(),
        Command::Related { hom, k, k2 } => format!("{hom} ; {k} ; {k2}"),
        Command::Naturality { hom, k, k2, l, l2 } => format!("{hom} ; {k} ; {k2} ; {l} ; {l2}"),
        Command::Cohomology { grade, max_degree } => format!("grade={grade} max-degree={max_degree}"),
        Command::Check { suite, seed } => format!("suite={suite} seed={seed}"),
    }
}

fn execute(command: &Command, space: &Arc<FormSpace>) -> Result<Output, CliError> {
    let pres = space.presentation();
    Ok(match command {
        Command::Normalize { expr } => form_output(&expr::form(expr, space)?),
        Command::Commutator { a, b } => {
            let c = expr::element(a, space)?.rho_commutator(&expr::element(b, space)?)?;
            let w = rhoforms::Form::from_element(space, &c)?;
            Output::ok(render::element(&w), w.to_string())
        }
        Command::ApplyDeriv { deriv, expr } => {
            let x = spec::derivation(deriv, space)?;
            let w = rhoforms::Form::from_element(space, &x.apply(&expr::element(expr, space)?)?)?;
            Output::ok(render::element(&w), w.to_string())
        }
        Command::D { expr } => form_output(&expr::form(expr, space)?.differential()),
        Command::Wedge { a, b } => form_output(&expr::form(a, space)?.checked_mul(&expr::form(b, space)?)?),
        Command::Contract { fvform, expr } => form_output(&spec::fvform(fvform, space)?.contract(&expr::form(expr, space)?)?),
        Command::Lie { fvform, expr } => {
            form_output(&spec::fvform(fvform, space)?.lie_derivative(&expr::form(expr, space)?)?)
        }
        Command::Nijenhuis { k, l } | Command::FnBracket { k, l } => {
            let (k, l) = (spec::fvform(k, space)?, spec::fvform(l, space)?);
            let m = if matches!(command, Command::Nijenhuis { .. }) { k.nijenhuis(&l)? } else { k.fn_bracket(&l)? };
            Output::ok(render::fvform(&m), m.to_string())
        }
        Command::Decompose { derivation } => {
            let d = spec::omega_derivation(derivation, space)?;
            let (k, l) = decompose(&d)?;
            Output::ok(
                json!({ "kind": "report", "input": render::omega_derivation(&d), "K": render::fvform(&k), "L": render::fvform(&l), "terms": [] }),
                format!("K: {k}\nL: {l}"),
            )
        }
        Command::OmegaMap { hom, expr } => form_output(&spec::hom(hom, space)?.apply_form(&expr::form(expr, space)?)?),
        Command::Related { hom, k, k2 } => {
            let f = spec::hom(hom, space)?;
            let (k, k2) = (spec::fvform(k, space)?, spec::fvform(k2, space)?);
            let witness = f.relatedness_witness(&k, &k2)?;
            let names = pres.generator_names();
            let witness = witness.map(|i| format!("d({})", names[i]));
            let text = match &witness {
                None => "related".to_string(),
                Some(w) => format!("not related [witness: {w}]"),
            };
            Output::ok(json!({ "kind": "report", "related": witness.is_none(), "witness": witness, "terms": [] }), text)
        }
        Command::Naturality { hom, k, k2, l, l2 } => {
            let f = spec::hom(hom, space)?;
            let parse = |t: &String| spec::fvform(t, space);
            let (k, k2, l, l2) = (parse(k)?, parse(k2)?, parse(l)?, parse(l2)?);
            let samples: Vec<_> = sample::basis_forms(space, 2, 1).into_iter().filter(|w| !w.is_zero()).collect();
            let report = naturality_report(&f, (&k, &k2), (&l, &l2), &samples)?;
            Output::ok(render::naturality(&report), report.to_string().trim_end().to_string())
        }
        Command::Cohomology { grade, max_degree } => {
            let g = Grade::parse(pres.group(), grade)?;
            let slice = ComplexSlice::build(space, &g, *max_degree)?;
            let (betti, dims) = (slice.betti(), slice.dims());
            Output::ok(
                json!({ "kind": "betti", "betti": betti, "dims": dims, "terms": [] }),
                format!("betti {betti:?}\ndims {dims:?}"),
            )
        }
        Command::Check { suite, seed } => {
            let suites: Vec<checks::Suite> = if suite == "all" {
                checks::SUITES.iter().map(|(_, s)| *s).collect()
            } else {
                vec![checks::suite(suite).ok_or_else(|| CliError::Usage(format!("unknown suite '{suite}'")))?]
            };
            let outcomes: Vec<Outcome> = suites.iter().map(|s| s(*seed)).collect();
            let text = outcomes.iter().map(Outcome::to_string).collect::<Vec<_>>().join("\n");
            Output { result: render::suites(&outcomes), text, ok: outcomes.iter().all(Outcome::passed) }
        }
    })
}

/// Runs one command line (without the program name) and returns the exit
/// code and everything written to stdout.
pub fn run_command<I, S>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("rhoforms")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        // --help and --version are not errors
        Err(e) if !e.use_stderr() => return (0, e.to_string()),
        Err(e) => {
            let text = e.to_string();
            let first = text.lines().next().unwrap_or_default().trim_start_matches("error: ");
            let err = CliError::Usage(first.to_string());
            return (err.exit_code(), serde_json::to_string(&err.to_json()).expect("serializable"));
        }
    };
    run(&cli)
}

pub fn run(cli: &Cli) -> (i32, String) {
    let result = Presentation::parse(&cli.algebra)
        .map_err(CliError::domain)
        .and_then(|pres| spec::phi(cli.phi.as_deref(), &pres))
        .and_then(|space| execute(&cli.command, &space));
    match result {
        Ok(out) => {
            let code = if out.ok { 0 } else { 1 };
            let text = match cli.format {
                Format::Text => out.text,
                Format::Json => {
                    let doc = json!({ "input": input_text(&cli.command), "algebra": cli.algebra, "result": out.result });
                    serde_json::to_string_pretty(&doc).expect("serializable")
                }
            };
            (code, text)
        }
        Err(e) => (e.exit_code(), serde_json::to_string(&e.to_json()).expect("serializable")),
    }
}

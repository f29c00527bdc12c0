//! Command-line front end: argument parsing, dispatch and output.

pub mod parse;
pub mod report;

use std::ffi::OsString;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::alexander::{alexander_from_epsilons, delta0_delta2, AlexanderError};
use crate::catalog::{CatalogError, CurveId, CurveSpec};
use crate::exactla::ArithmeticMode;
use crate::jacobian::{validate_with, CurveError, CurveInput, ValidateOptions};
use crate::spectral::{default_qmax, e2_table, injectivity_probe, witnesses, SpectralCell};
use crate::syzygy::{classify_profile, default_jmax, generator_profile, SyzygyError};
use parse::{parse_poly, ParseError};
use report::{AlexanderReport, AnalysisReport, ClassificationReport, InputEcho, Meta, WitnessReport, SCHEMA_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "milnor", version, about = "Monodromy eigenvalues of plane curves from Jacobian syzygies")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Everything: classification, E2 table, Alexander polynomial
    Analyze(CurveArgs),
    /// Alexander polynomial bounds from the first row of the E2 table
    Alexander(CurveArgs),
    /// The E2 dimension table
    E2(CurveArgs),
    /// Dimensions and generator degrees of the syzygy module
    Syzygies(CurveArgs),
    /// Free / nearly free / other
    Classify(CurveArgs),
    /// Explicit 2-forms for the nonzero E2 cells and their Euler contractions
    Witnesses(CurveArgs),
    /// Total Tjurina number
    Tjurina(CurveArgs),
    /// Built-in curves
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    /// List identifiers and parameters
    List {
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Known invariants of one curve, as JSON
    Facts {
        #[arg(long)]
        catalog: String,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        d: Option<u32>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Modular {
    Off,
    Verify,
    Trust,
}

impl From<Modular> for ArithmeticMode {
    fn from(m: Modular) -> Self {
        match m {
            Modular::Off => ArithmeticMode::Exact,
            Modular::Verify => ArithmeticMode::Verify,
            Modular::Trust => ArithmeticMode::Trust,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    /// Curve equation, e.g. "(x^2+y^2)^3+(y^3+z^3)^2"
    #[arg(short = 'f', long = "poly", conflicts_with = "catalog", required_unless_present = "catalog")]
    pub poly: Option<String>,
    /// Catalog identifier (see `catalog list`)
    #[arg(long)]
    pub catalog: Option<String>,
    /// Parameter m for `a-m-m-3` and `c5m`
    #[arg(long)]
    pub m: Option<u32>,
    /// Degree for `fermat`
    #[arg(long)]
    pub d: Option<u32>,
    /// Number of irreducible components r
    #[arg(long)]
    pub components: Option<u32>,
    /// Euler characteristic of the complement, for the second Alexander polynomial
    #[arg(long = "chi-u", allow_hyphen_values = true)]
    pub chi_u: Option<i64>,
    /// Largest q in the E2 table (default 2d)
    #[arg(long)]
    pub qmax: Option<u32>,
    /// Largest syzygy degree searched for generators (default 2d-2)
    #[arg(long)]
    pub jmax: Option<u32>,
    #[arg(long, value_enum, default_value_t = Modular::Off)]
    pub modular: Modular,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Include witness forms in `analyze`
    #[arg(long)]
    pub witnesses: bool,
    /// Exit 0 even when the Alexander polynomial is only bounded
    #[arg(long)]
    pub allow_intervals: bool,
    /// Report elapsed_ms = 0 (byte-identical output across runs)
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Alexander(#[from] AlexanderError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(ParseError::SyntaxError { .. }) => "syntax_error",
            CliError::Parse(ParseError::NotHomogeneous { .. }) => "not_homogeneous",
            CliError::Curve(_) => "invalid_curve",
            CliError::Catalog(CatalogError::UnknownIdentifier(_)) => "unknown_identifier",
            CliError::Catalog(CatalogError::BadParams { .. }) => "bad_params",
            CliError::Catalog(CatalogError::Curve(_)) => "invalid_curve",
            CliError::Alexander(_) => "alexander",
            CliError::Usage(_) => "usage",
        }
    }
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String, inconclusive: bool) -> Self {
        Outcome { code: if inconclusive { EXIT_INCONCLUSIVE } else { EXIT_OK }, stdout, stderr: String::new() }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let (result, format) = match &cli.command {
        Command::Catalog { action } => (run_catalog(action), Format::Table),
        Command::Analyze(a)
        | Command::Alexander(a)
        | Command::E2(a)
        | Command::Syzygies(a)
        | Command::Classify(a)
        | Command::Witnesses(a)
        | Command::Tjurina(a) => (run_curve(&cli.command, a), a.format),
    };
    match result {
        Ok(o) => o,
        Err(e) => {
            let stderr = if format == Format::Json {
                let body = serde_json::json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
                serde_json::to_string_pretty(&body).expect("json") + "\n"
            } else {
                format!("error: {e}\n")
            };
            Outcome { code: EXIT_INVALID, stdout: String::new(), stderr }
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize") + "\n"
}

#[derive(Serialize)]
struct CatalogListing {
    id: &'static str,
    parameter: Option<&'static str>,
    description: &'static str,
}

fn run_catalog(action: &CatalogAction) -> Result<Outcome, CliError> {
    match action {
        CatalogAction::List { format } => {
            let list: Vec<CatalogListing> = CurveId::all()
                .map(|id| CatalogListing { id: id.name(), parameter: id.parameter(), description: id.description() })
                .collect();
            let text = match format {
                Format::Json => to_json(&list),
                Format::Csv => {
                    let mut s = "id,parameter,description\n".to_string();
                    for l in &list {
                        s += &format!("{},{},\"{}\"\n", l.id, l.parameter.unwrap_or(""), l.description);
                    }
                    s
                }
                Format::Table => list
                    .iter()
                    .map(|l| {
                        let p = l.parameter.map(|p| format!(" --{p} <int>")).unwrap_or_default();
                        format!("{:<18} {:<10} {}\n", l.id, p.trim(), l.description)
                    })
                    .collect(),
            };
            Ok(Outcome::ok(text, false))
        }
        CatalogAction::Facts { catalog, m, d } => {
            let spec = catalog_spec(catalog, *m, *d)?;
            #[derive(Serialize)]
            struct Facts {
                curve: CurveSpec,
                facts: Vec<crate::catalog::ExpectedFact>,
            }
            let facts = spec.expected_facts();
            Ok(Outcome::ok(to_json(&Facts { curve: spec, facts }), false))
        }
    }
}

fn catalog_spec(id: &str, m: Option<u32>, d: Option<u32>) -> Result<CurveSpec, CliError> {
    let id = CurveId::parse(id)?;
    let param = match (id.parameter(), m, d) {
        (_, Some(_), Some(_)) => return Err(CliError::Usage("give at most one of --m and --d".into())),
        (Some("d"), Some(_), None) => return Err(CliError::Usage(format!("{} takes --d, not --m", id.name()))),
        (Some("m"), None, Some(_)) => return Err(CliError::Usage(format!("{} takes --m, not --d", id.name()))),
        (_, m, d) => m.or(d),
    };
    Ok(CurveSpec::new(id, param)?)
}

fn load_curve(a: &CurveArgs) -> Result<(CurveInput, Option<String>), CliError> {
    let mode = ArithmeticMode::from(a.modular);
    let opts = ValidateOptions { mode, ..Default::default() };
    match (&a.poly, &a.catalog) {
        (Some(text), None) => {
            if a.m.is_some() || a.d.is_some() {
                return Err(CliError::Usage("--m and --d apply only to --catalog".into()));
            }
            Ok((validate_with(parse_poly(text)?, a.components, opts)?, None))
        }
        (None, Some(id)) => {
            let spec = catalog_spec(id, a.m, a.d)?;
            let curve = spec.build_with(mode)?;
            let curve = match a.components {
                Some(r) => curve.with_components(Some(r)),
                None => curve,
            };
            Ok((curve, Some(spec.label())))
        }
        _ => Err(CliError::Usage("give exactly one of -f <expr> or --catalog <id>".into())),
    }
}

/// Which report sections to compute, and their ranges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Sections {
    pub tjurina: bool,
    pub classification: bool,
    pub generator_profile: bool,
    pub injectivity: bool,
    pub e2: bool,
    pub alexander: bool,
    pub witnesses: bool,
    /// Defaults to `2d - 2`.
    pub jmax: Option<u32>,
    /// Defaults to `2d`.
    pub qmax: Option<u32>,
    pub chi_u: Option<i64>,
}

impl Sections {
    /// Everything `analyze` prints, without witnesses.
    pub fn full() -> Self {
        Sections {
            tjurina: true,
            classification: true,
            generator_profile: true,
            injectivity: true,
            e2: true,
            alexander: true,
            ..Default::default()
        }
    }

    fn with_ranges(self, a: &CurveArgs) -> Self {
        Sections { jmax: a.jmax, qmax: a.qmax, chi_u: a.chi_u, ..self }
    }

    fn for_command(command: &Command, a: &CurveArgs) -> Self {
        let base = Sections::default().with_ranges(a);
        match command {
            Command::Analyze(_) => Sections { witnesses: a.witnesses, ..Sections::full() }.with_ranges(a),
            Command::Tjurina(_) => Sections { tjurina: true, ..base },
            Command::Classify(_) => Sections { classification: true, ..base },
            Command::Syzygies(_) => Sections { classification: true, generator_profile: true, ..base },
            Command::E2(_) => Sections { e2: true, ..base },
            Command::Alexander(_) => Sections { alexander: true, ..base },
            Command::Witnesses(_) => Sections { e2: true, witnesses: true, ..base },
            Command::Catalog { .. } => base,
        }
    }
}

/// Outcome of [`analyze`]: the report and whether any part of it is only partially determined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Analysis {
    pub report: AnalysisReport,
    /// Generators were still appearing at `jmax`.
    pub boundary_warning: bool,
    /// Alexander polynomial requested but only bounded.
    pub uncertified: bool,
}

/// Computes the requested sections for a validated curve. `elapsed_ms` is left at 0.
pub fn analyze(curve: &CurveInput, catalog: Option<String>, s: &Sections) -> Result<Analysis, AlexanderError> {
    let d = curve.degree();
    let mut report = AnalysisReport {
        schema: SCHEMA_VERSION,
        input: InputEcho { poly: curve.f().to_string(), degree: d, components: curve.components(), catalog },
        tjurina: None,
        classification: None,
        generator_profile: None,
        e2: None,
        injectivity: None,
        alexander: None,
        witnesses: None,
        meta: Meta { arithmetic_mode: curve.mode().to_string(), probabilistic: curve.mode().is_probabilistic(), elapsed_ms: 0 },
    };
    let mut boundary_warning = false;
    let mut uncertified = false;

    if s.tjurina {
        report.tjurina = Some(curve.tjurina());
    }
    if s.classification || s.generator_profile || s.injectivity {
        let jmax = s.jmax.unwrap_or_else(|| default_jmax(d));
        let profile = generator_profile(curve, jmax);
        let classified = classify_profile(&profile, d);
        if s.classification {
            report.classification = Some(match &classified {
                Ok(c) => ClassificationReport::from_classification(c, profile.generator_degrees.clone(), jmax),
                Err(e) => {
                    boundary_warning |= matches!(e, SyzygyError::InconclusiveBound { .. });
                    ClassificationReport {
                        kind: "inconclusive".into(),
                        d1: None,
                        d2: None,
                        degrees: profile.generator_degrees.clone(),
                        jmax,
                        note: Some(e.to_string()),
                    }
                }
            });
        }
        if s.injectivity {
            if let Ok(c) = &classified {
                report.injectivity = injectivity_probe(curve, c);
            }
        }
        if s.generator_profile {
            report.generator_profile = Some(profile.degrees);
        }
    }
    if s.e2 || s.alexander || s.witnesses {
        let qmax = s.qmax.unwrap_or_else(|| default_qmax(d));
        let full = e2_table(curve, qmax.max(d - 1));
        let cells: Vec<SpectralCell> = full.iter().filter(|c| c.q <= qmax).copied().collect();
        if s.alexander {
            let eps: Vec<usize> = full.iter().take(d as usize - 1).map(|c| c.epsilon).collect();
            let result = alexander_from_epsilons(d, &eps, curve.components());
            let mut alex = AlexanderReport::new(&result);
            if let (Some(chi), Ok(delta1)) = (s.chi_u, result.delta1()) {
                let (d0, d2) = delta0_delta2(d, chi, &delta1)?;
                alex.delta0 = Some(d0.to_string());
                alex.delta2 = Some(d2.to_string());
            }
            uncertified = !result.certified;
            report.alexander = Some(alex);
        }
        if s.witnesses {
            report.witnesses = Some(witnesses(curve, &cells).iter().map(WitnessReport::from).collect());
        }
        if s.e2 {
            report.e2 = Some(cells);
        }
    }
    Ok(Analysis { report, boundary_warning, uncertified })
}

fn run_curve(command: &Command, a: &CurveArgs) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let (curve, catalog) = load_curve(a)?;
    let Analysis { mut report, boundary_warning, uncertified } = analyze(&curve, catalog, &Sections::for_command(command, a))?;
    let inconclusive = boundary_warning || uncertified && !a.allow_intervals;
    if !a.no_timing {
        report.meta.elapsed_ms = start.elapsed().as_millis() as u64;
    }

    let text = match a.format {
        Format::Json => to_json(&report),
        Format::Table => report::render_text(&report),
        Format::Csv => match command {
            Command::Syzygies(_) => report::profile_csv(report.generator_profile.as_deref().unwrap_or_default()),
            Command::Alexander(_) => report::bounds_csv(&report.alexander.as_ref().expect("alexander computed").bounds),
            _ => match &report.e2 {
                Some(cells) => report::e2_csv(cells),
                None => return Err(CliError::Usage("csv output is available for analyze, e2, syzygies and alexander".into())),
            },
        },
    };
    Ok(Outcome::ok(text, inconclusive))
}

/// Sizes the global thread pool from `MILNOR_THREADS` when set.
pub fn init_threads() {
    if let Some(n) = std::env::var("MILNOR_THREADS").ok().and_then(|s| s.parse::<usize>().ok()).filter(|&n| n > 0) {
        // Fails only if a pool already exists, which is harmless.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Outcome {
        run_from(std::iter::once("milnor").chain(args.iter().copied()))
    }

    #[test]
    fn classify_e14_from_expression() {
        let o = run(&["classify", "-f", "(xz-y^2)^3-x^2*y^4"]);
        assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
        assert!(o.stdout.contains("classification: Free(2,3)"));
    }

    #[test]
    fn invalid_inputs_exit_2() {
        assert_eq!(run(&["e2", "-f", "x^2+y"]).code, EXIT_INVALID);
        assert_eq!(run(&["e2", "-f", "x^2*y"]).code, EXIT_INVALID);
        assert_eq!(run(&["e2", "--catalog", "nodal"]).code, EXIT_INVALID);
        assert_eq!(run(&["e2", "--catalog", "A"]).code, EXIT_INVALID);
        assert_eq!(run(&["e2", "--catalog", "fermat", "--m", "4"]).code, EXIT_INVALID);
        assert_eq!(run(&["frobnicate"]).code, EXIT_INVALID);
    }

    #[test]
    fn structured_errors_in_json_mode() {
        let o = run(&["tjurina", "-f", "x^2+ * y", "--format", "json"]);
        assert_eq!(o.code, EXIT_INVALID);
        let v: serde_json::Value = serde_json::from_str(&o.stderr).unwrap();
        assert_eq!(v["error"]["kind"], "syntax_error");
    }

    #[test]
    fn uncertified_is_inconclusive_unless_allowed() {
        let o = run(&["alexander", "-f", "x^6+y^6+z^6-2*(x^3*y^3+x^3*z^3+y^3*z^3)"]);
        assert_eq!(o.code, EXIT_INCONCLUSIVE, "no component count given");
        let o = run(&["alexander", "-f", "x^6+y^6+z^6-2*(x^3*y^3+x^3*z^3+y^3*z^3)", "--allow-intervals"]);
        assert_eq!(o.code, EXIT_OK);
        assert!(o.stdout.contains("delta1 in: (t^2-t+1)^3"));
    }

    #[test]
    fn boundary_warning_is_inconclusive() {
        let o = run(&["classify", "--catalog", "zariski", "--jmax", "5"]);
        assert_eq!(o.code, EXIT_INCONCLUSIVE);
        assert!(o.stdout.contains("Inconclusive"));
    }

    #[test]
    fn csv_header_and_rows() {
        let o = run(&["e2", "--catalog", "fermat", "--d", "3", "--format", "csv"]);
        let lines: Vec<&str> = o.stdout.lines().collect();
        assert_eq!(lines[0], "q,t,k,dim_syz,dim_kr,kappa,epsilon");
        assert_eq!(lines.len(), 7);
    }

    #[test]
    fn chi_u_gives_delta2() {
        let o = run(&["alexander", "--catalog", "fermat", "--d", "4", "--chi-u", "7", "--format", "json"]);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["alexander"]["delta0"], "t-1");
        assert!(v["alexander"]["delta2"].as_str().unwrap().starts_with("t^27+"));
    }

    #[test]
    fn catalog_listing() {
        let o = run(&["catalog", "list"]);
        assert_eq!(o.code, EXIT_OK);
        assert!(o.stdout.contains("nine-cusp-sextic"));
        let o = run(&["catalog", "facts", "--catalog", "hessian"]);
        assert!(o.stdout.contains("\"h2f\""));
    }
}

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use fibrewise::catalog::{self, CatalogEntry};
use fibrewise::esharp::h0_sharp;
use fibrewise::homology::{derivation_homology, fibre_identity_homology, mapping_homology};
use fibrewise::invariants::{
    hnil_fibre_bound, odd_sphere_prediction, path_space_prediction, samelson_lie_algebra,
};
use fibrewise::io;
use fibrewise::report::{self, DerivationFormat, Predictions};
use fibrewise::sullivan::Usage;
use fibrewise::{DGMorphism, DegreeWindow, Error, RelativeModel};

/// Rational homotopy of spaces of fibrewise self-equivalences.
#[derive(Parser)]
#[command(name = "fibrewise", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a model (and morphism) for well-formedness.
    Validate(Input),
    /// Derivation homology with its bracket, or φ-derivation homology with --morphism.
    Homology(Input),
    /// The group H0(Der_#) with its BCH multiplication table.
    Esharp(Input),
    /// Homology of derivations with values in ∧⁺V⊗∧W.
    Autf(Input),
    /// Nilpotency bounds and structural cross-checks.
    Invariants(Input),
    /// Built-in models.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List the default entries.
    List(Output),
    /// Write an entry in the model file format.
    Export {
        key: String,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
struct Input {
    /// Model file.
    #[arg(long, conflicts_with = "catalog")]
    model: Option<PathBuf>,
    /// Catalog key, e.g. `hopf_s7s3_s4` or `product:sphere2/sphere3`.
    #[arg(long)]
    catalog: Option<String>,
    /// Morphism file; selects the mapping-space complex.
    #[arg(long)]
    morphism: Option<PathBuf>,
    /// Degree window LO:HI.
    #[arg(long)]
    window: Option<String>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Structured,
}

enum Failure {
    Error(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn exit_code(error: &Error) -> u8 {
    match error {
        Error::Io { .. } => 1,
        Error::Parse(_)
        | Error::UnknownGenerator(_)
        | Error::InvalidGenerator(_)
        | Error::AlgebraMismatch(_)
        | Error::Shape(_)
        | Error::UnknownCatalogKey(_)
        | Error::Precondition(_) => 2,
        Error::Validation(_) => 3,
        Error::Unsupported(_) => 4,
        Error::Internal(_) => 5,
    }
}

struct Loaded {
    label: String,
    model: RelativeModel,
    entry: Option<CatalogEntry>,
    morphism: Option<DGMorphism>,
}

fn load(input: &Input) -> Outcome<Loaded> {
    let (label, model, entry) = match (&input.model, &input.catalog) {
        (Some(path), None) => (path.display().to_string(), io::read_model(path)?, None),
        (None, Some(key)) => {
            let entry = catalog::build(key)?;
            (format!("catalog:{key}"), entry.model.clone(), Some(entry))
        }
        (None, None) if input.morphism.is_some() => {
            let f = io::read_morphism(input.morphism.as_deref().expect("checked"))?;
            let label = input.morphism.as_ref().expect("checked").display().to_string();
            return Ok(Loaded {
                label,
                model: (**f.source()).clone(),
                entry: None,
                morphism: Some(f),
            });
        }
        _ => return Err(Failure::Usage("one of --model or --catalog is required".into())),
    };
    let morphism = match &input.morphism {
        Some(path) => Some(io::read_morphism(path)?),
        None => None,
    };
    Ok(Loaded {
        label,
        model,
        entry,
        morphism,
    })
}

fn window(input: &Input, models: &[&RelativeModel]) -> Outcome<DegreeWindow> {
    match &input.window {
        Some(text) => Ok(DegreeWindow::parse(text)?),
        None => {
            let top = models.iter().map(|m| m.total().max_degree()).max().unwrap_or(0);
            Ok(DegreeWindow::new(1, (2 * top as i32).max(1))?)
        }
    }
}

fn emit(output: &Output, structured: Value, human: String) -> Outcome<()> {
    let text = match output.format {
        Format::Structured => report::to_text(&structured),
        Format::Human => human,
    };
    write_out(output.out.as_deref(), &text)
}

fn write_out(path: Option<&Path>, text: &str) -> Outcome<()> {
    match path {
        Some(path) => std::fs::write(path, text).map_err(|source| {
            Failure::Error(Error::Io {
                path: path.display().to_string(),
                source,
            })
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_validate(input: &Input) -> Outcome<()> {
    let loaded = load(input)?;
    let usage = if loaded.morphism.is_some() {
        Usage::MappingSpace
    } else {
        Usage::Endomorphism
    };
    let mut reports = vec![("model", loaded.model.validate_for(usage))];
    if let Some(f) = &loaded.morphism {
        if !Arc::ptr_eq(f.source(), f.target()) {
            reports.push(("target", f.target().validate_for(usage)));
        }
        reports.push(("morphism", f.validate()));
    }
    let ok = reports.iter().all(|(_, r)| r.is_ok());
    let mut body = Map::new();
    body.insert("ok".into(), json!(ok));
    let mut human = String::new();
    for (name, r) in &reports {
        body.insert(name.to_string(), report::validation_json(r));
        human.push_str(&format!("{name}:\n{}", report::validation_text(r)));
    }
    emit(&input.output, report::envelope("validate", &loaded.label, body), human)?;
    if ok {
        Ok(())
    } else {
        let failed = reports.into_iter().find(|(_, r)| !r.is_ok()).expect("some report failed");
        Err(Failure::Error(Error::Validation(failed.1)))
    }
}

fn cmd_homology(input: &Input) -> Outcome<()> {
    let loaded = load(input)?;
    match &loaded.morphism {
        Some(f) => {
            let window = window(input, &[f.source(), f.target()])?;
            let report = mapping_homology(f, window)?;
            let fmt = DerivationFormat {
                fibre: fibrewise::derivations::fibre_generators(f.source()),
                values_in: f.target().total(),
            };
            let mut body = report::homology_json(&report, fmt);
            let note = "H_1 determines pi_1 only up to rank";
            if window.contains(1) {
                body.insert("pi1_rank".into(), json!(report.dim(1)));
            }
            body.insert("notes".into(), json!([note]));
            let mut human = report::homology_text(&report, fmt);
            if window.contains(1) {
                human.push_str(&format!("pi_1 rank: {} ({note})\n", report.dim(1)));
            }
            emit(&input.output, report::envelope("homology", &loaded.label, body), human)
        }
        None => {
            let window = window(input, &[&loaded.model])?;
            let report = derivation_homology(&loaded.model, window)?;
            let fmt = DerivationFormat::of_model(&loaded.model);
            emit(
                &input.output,
                report::envelope("homology", &loaded.label, report::homology_json(&report, fmt)),
                report::homology_text(&report, fmt),
            )
        }
    }
}

fn no_morphism(input: &Input, command: &str) -> Outcome<()> {
    if input.morphism.is_some() {
        return Err(Failure::Error(Error::Unsupported(format!(
            "{command} is defined for self-maps only; drop --morphism"
        ))));
    }
    Ok(())
}

fn cmd_esharp(input: &Input) -> Outcome<()> {
    no_morphism(input, "esharp")?;
    let loaded = load(input)?;
    let profile = h0_sharp(&loaded.model)?.group_profile()?;
    let fmt = DerivationFormat::of_model(&loaded.model);
    emit(
        &input.output,
        report::envelope("esharp", &loaded.label, report::group_json(&profile, fmt)),
        report::group_text(&profile, fmt),
    )
}

fn cmd_autf(input: &Input) -> Outcome<()> {
    no_morphism(input, "autf")?;
    let loaded = load(input)?;
    let window = window(input, &[&loaded.model])?;
    let report = fibre_identity_homology(&loaded.model, window)?;
    let fmt = DerivationFormat::of_model(&loaded.model);
    emit(
        &input.output,
        report::envelope("autf", &loaded.label, report::homology_json(&report, fmt)),
        report::homology_text(&report, fmt),
    )
}

fn cmd_invariants(input: &Input) -> Outcome<()> {
    no_morphism(input, "invariants")?;
    let loaded = load(input)?;
    let window = window(input, &[&loaded.model])?;
    let samelson = samelson_lie_algebra(&loaded.model, window)?;
    let hnil = hnil_fibre_bound(&loaded.model);
    let mut predictions = Predictions::default();
    if let Some(entry) = &loaded.entry {
        if let (Some(n), true) = (entry.flags.odd_sphere_fibre, entry.flags.injective_i_sharp) {
            predictions.odd_sphere = Some((n, odd_sphere_prediction(&loaded.model, n, &samelson.homology)));
        }
        if entry.flags.path_space {
            predictions.path_space = Some(path_space_prediction(&loaded.model, &samelson.homology));
        }
    }
    let fmt = DerivationFormat::of_model(&loaded.model);
    emit(
        &input.output,
        report::envelope(
            "invariants",
            &loaded.label,
            report::invariants_json(&samelson, hnil, &predictions, fmt),
        ),
        report::invariants_text(&samelson, hnil, &predictions, fmt),
    )
}

fn cmd_catalog(action: &CatalogAction) -> Outcome<()> {
    match action {
        CatalogAction::List(output) => {
            let entries = catalog::list();
            emit(
                output,
                report::envelope("catalog", "catalog", report::catalog_json(&entries)),
                report::catalog_text(&entries),
            )
        }
        CatalogAction::Export { key, output } => {
            let entry = catalog::build(key)?;
            write_out(output.out.as_deref(), &io::model_to_string(&entry.model))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate(input) => cmd_validate(input),
        Command::Homology(input) => cmd_homology(input),
        Command::Esharp(input) => cmd_esharp(input),
        Command::Autf(input) => cmd_autf(input),
        Command::Invariants(input) => cmd_invariants(input),
        Command::Catalog { action } => cmd_catalog(action),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

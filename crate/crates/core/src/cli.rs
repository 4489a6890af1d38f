//! Command-line front end.
//!
//! Exit codes: 0 for success or an optimal solve, 2 for an infeasible
//! solve, 1 for any error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{self, Direction, Metric};
use crate::candidates::{self, CandidateSet, LoadOptions, ValidateOptions};
use crate::config::Settings;
use crate::ilp_model::{build_model, variables_of, Assignment, ConstraintKind, IlpModel};
use crate::rational::{self, Rational};
use crate::report::{
    self, FlexRecord, FlexibilityRecord, MetricsRecord, OracleRecord, SolveRecord, SweepRecord, SweepRow,
};
use crate::solver::{self, SolverOptions, Status};
use crate::text_metrics::{compute_metrics, Document, Lexicon};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "parasel", version, about = "Choose a minimal-change set of paraphrases that meets text metric bounds")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Closed-class word list, one word per line (defaults to the built-in list).
    #[arg(long, global = true)]
    pub lexicon: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,

    /// Worker threads for search and sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print word, sentence and function-word counts with the derived ratios.
    Metrics {
        #[arg(long)]
        document: PathBuf,
    },
    /// Solve for the cheapest compliant selection and write the rewritten text.
    Solve {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        bounds: BoundArgs,
        /// Also enumerate every feasible selection and cross-check the optimum.
        #[arg(long)]
        oracle: bool,
        /// Where to write the rewritten document.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report how far each metric can be pushed by the candidates.
    Flexibility {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Re-solve with one bound set to each of several values.
    Sweep {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        bounds: BoundArgs,
        /// k1, k2 or k3.
        #[arg(long)]
        constraint: String,
        /// Comma-separated bound values, e.g. `7.4,10`.
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<String>,
    },
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Candidate file (JSON).
    #[arg(long)]
    pub candidates: PathBuf,
    /// Replace the document embedded in the candidate file.
    #[arg(long)]
    pub document: Option<PathBuf>,
    /// TOML run configuration.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    /// Maximum change in total words (an integer, usually ≤ 0).
    #[arg(long, allow_negative_numbers = true)]
    pub k1: Option<i64>,
    /// Maximum average sentence length (decimal or p/q).
    #[arg(long)]
    pub k2: Option<String>,
    /// Minimum lexical density (decimal or p/q).
    #[arg(long)]
    pub k3: Option<String>,
}

/// A failure that ends the run with [`EXIT_ERROR`].
#[derive(Debug)]
struct Failure(Vec<String>);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(vec![e.to_string()])
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs one subcommand.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_ERROR
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    match run_command(&config, stdout) {
        Ok(code) => code,
        Err(Failure(messages)) => {
            for m in messages {
                let _ = writeln!(stderr, "error: {m}");
            }
            EXIT_ERROR
        }
    }
}

pub fn execute(config: &RunConfig, out: &mut dyn Write) -> Result<i32, Box<dyn std::error::Error>> {
    run_command(config, out).map_err(|Failure(m)| m.join("\n").into())
}

fn run_command(config: &RunConfig, out: &mut dyn Write) -> Outcome {
    let lexicon = match &config.lexicon {
        Some(path) => Lexicon::from_path(path)?,
        None => Lexicon::default(),
    };
    match &config.command {
        Command::Metrics { document } => cmd_metrics(config, document, &lexicon, out),
        Command::Solve {
            input,
            bounds,
            oracle,
            out: out_path,
        } => cmd_solve(config, input, bounds, *oracle, out_path.as_deref(), &lexicon, out),
        Command::Flexibility { input } => cmd_flexibility(config, input, &lexicon, out),
        Command::Sweep {
            input,
            bounds,
            constraint,
            values,
        } => cmd_sweep(config, input, bounds, constraint, values, &lexicon, out),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(vec![format!("cannot read {}: {e}", path.display())]))
}

fn emit_json<T: serde::Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value)?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn cmd_metrics(config: &RunConfig, path: &Path, lexicon: &Lexicon, out: &mut dyn Write) -> Outcome {
    let text = read(path)?;
    let doc = Document::parse(&text, lexicon);
    if doc.sentences.is_empty() {
        return Err(Failure(vec![format!("{}: document contains no words", path.display())]));
    }
    let m = compute_metrics(&doc);
    match config.format {
        Format::Human => writeln!(out, "{}", report::metrics_line(&m))?,
        Format::Json => emit_json(out, &MetricsRecord::from(&m))?,
    }
    Ok(EXIT_OK)
}

fn load_settings(input: &InputArgs, bounds: Option<&BoundArgs>) -> Result<Settings, Failure> {
    let mut settings = match &input.config {
        Some(path) => Settings::from_path(path)?,
        None => Settings::default(),
    };
    if let Some(b) = bounds {
        if b.k1.is_some() {
            settings.k1 = b.k1;
        }
        if let Some(k2) = &b.k2 {
            settings.k2 = Some(rational::parse(k2)?);
        }
        if let Some(k3) = &b.k3 {
            settings.k3 = Some(rational::parse(k3)?);
        }
    }
    Ok(settings)
}

/// Loads the candidate set with derived coefficients and checks it.
/// Returns it with the warnings to report.
fn load_set(input: &InputArgs, settings: &Settings, lexicon: &Lexicon) -> Result<(CandidateSet, Vec<String>), Failure> {
    let json = read(&input.candidates)?;
    let location = input.candidates.display().to_string();
    let mut file = candidates::parse_candidate_file(&json).map_err(|e| Failure(vec![format!("{location}: {e}")]))?;
    if let Some(doc_path) = &input.document {
        file.document = read(doc_path)?;
    }
    let options = LoadOptions {
        allow_sentence_deletion: settings.allow_sentence_deletion,
    };
    let mut cs = candidates::from_file(file, lexicon, options).map_err(|e| Failure(vec![format!("{location}: {e}")]))?;
    if cs.document.sentences.is_empty() {
        return Err(Failure(vec![format!("{location}: document contains no words")]));
    }

    let mut warnings = cs.reconcile();
    let report = candidates::validate_with(
        &cs,
        ValidateOptions {
            per_sentence_exclusivity: settings.per_sentence_exclusivity,
            allow_sentence_deletion: settings.allow_sentence_deletion,
        },
    );
    if report.has_errors() {
        return Err(Failure(report.errors().map(|i| format!("{location}: {i}")).collect()));
    }
    warnings.extend(report.warnings().map(|i| i.to_string()));
    Ok((cs, warnings))
}

fn load_model(
    input: &InputArgs,
    bounds: &BoundArgs,
    lexicon: &Lexicon,
) -> Result<(Settings, CandidateSet, IlpModel, Vec<String>), Failure> {
    let settings = load_settings(input, Some(bounds))?;
    let model_config = settings.model_config()?;
    let (cs, warnings) = load_set(input, &settings, lexicon)?;
    let model = build_model(&cs, &model_config, &settings.weights)?;
    Ok((settings, cs, model, warnings))
}

fn solver_options(config: &RunConfig) -> SolverOptions {
    SolverOptions {
        threads: config.threads.max(1),
        ..SolverOptions::default()
    }
}

fn candidate_ids(cs: &CandidateSet, a: &Assignment) -> Vec<[usize; 2]> {
    a.selected
        .iter()
        .map(|&p| {
            let (i, j) = cs.candidates[p].id();
            [i, j]
        })
        .collect()
}

fn flex_record(cs: &CandidateSet, r: &analysis::FlexibilityReport) -> FlexRecord {
    FlexRecord {
        metric: r.metric,
        direction: r.direction,
        original: rational::exact(&r.original_value),
        extreme: rational::exact(&r.extreme_value),
        extreme_approx: rational::approx(&r.extreme_value),
        selected: candidate_ids(cs, &r.achieving_assignment),
    }
}

fn flexibility(
    cs: &CandidateSet,
    exclusive: bool,
    metric: Metric,
    direction: Direction,
) -> Result<analysis::FlexibilityReport, Failure> {
    Ok(analysis::flexibility_of(&cs.base_metrics(), &variables_of(cs), exclusive, metric, direction)?)
}

fn cmd_solve(
    config: &RunConfig,
    input: &InputArgs,
    bounds: &BoundArgs,
    oracle: bool,
    out_path: Option<&Path>,
    lexicon: &Lexicon,
    out: &mut dyn Write,
) -> Outcome {
    let (settings, cs, model, warnings) = load_model(input, bounds, lexicon)?;
    let solution = solver::solve_with(&model, &solver_options(config))?;
    let mut record = SolveRecord::new(&model, &solution);
    record.warnings = warnings;

    if oracle {
        let feasible = solver::enumerate_feasible_bruteforce(&model, settings.oracle_limit)?;
        let best = solver::oracle_optimum(&model, settings.oracle_limit)?;
        let agrees = match &best {
            Some((a, z)) => solution.is_optimal() && *a == solution.assignment && *z == solution.objective,
            None => !solution.is_optimal(),
        };
        record.oracle = Some(OracleRecord {
            feasible: feasible.iter().map(|a| candidate_ids(&cs, a)).collect(),
            optimum: best.as_ref().map(|(a, _)| candidate_ids(&cs, a)),
            optimum_objective: best.as_ref().map(|(_, z)| rational::exact(z)),
            agrees,
        });
    }

    let code = match solution.status {
        Status::Optimal => {
            let applied = analysis::apply_solution(&cs, &solution.assignment)?;
            record.after = Some(MetricsRecord::from(&applied.metrics));
            if let Some(path) = out_path {
                std::fs::write(path, &applied.text)
                    .map_err(|e| Failure(vec![format!("cannot write {}: {e}", path.display())]))?;
            }
            record.rewritten_text = Some(applied.text);
            EXIT_OK
        }
        Status::Infeasible => {
            let exclusive = settings.per_sentence_exclusivity;
            let nearest = [
                (Metric::TotalWords, Direction::Min),
                (Metric::AvgSentenceLength, Direction::Min),
                (Metric::LexicalDensity, Direction::Max),
            ]
            .into_iter()
            .map(|(m, d)| flexibility(&cs, exclusive, m, d).map(|r| flex_record(&cs, &r)))
            .collect::<Result<Vec<_>, _>>()?;
            record.nearest_achievable = Some(nearest);
            EXIT_INFEASIBLE
        }
    };

    match config.format {
        Format::Human => write!(out, "{}", report::render_solve_human(&record))?,
        Format::Json => emit_json(out, &record)?,
    }
    Ok(code)
}

fn cmd_flexibility(config: &RunConfig, input: &InputArgs, lexicon: &Lexicon, out: &mut dyn Write) -> Outcome {
    let settings = load_settings(input, None)?;
    let (cs, _warnings) = load_set(input, &settings, lexicon)?;
    let exclusive = settings.per_sentence_exclusivity;
    let base = cs.base_metrics();

    let mut extremes = Vec::new();
    let mut reports = Vec::new();
    for metric in Metric::ALL {
        for direction in [Direction::Min, Direction::Max] {
            let r = flexibility(&cs, exclusive, metric, direction)?;
            extremes.push(flex_record(&cs, &r));
            reports.push(r);
        }
    }
    let after = |r: &analysis::FlexibilityReport| {
        let vars = variables_of(&cs);
        r.achieving_assignment.selected.iter().fold(base, |m, &v| {
            let c = vars[v].coefficients;
            m.shifted(c.function_words, c.words, c.sentences)
        })
    };
    let avg = |m: &crate::text_metrics::MetricsSummary| {
        m.avg_sentence_length()
            .map_or_else(|_| "undefined".to_string(), |v| rational::display(&v))
    };
    let find = |metric: Metric| {
        reports
            .iter()
            .find(|r| r.metric == metric && r.direction == Direction::Min)
            .expect("all extremes computed")
    };
    let words_min = after(find(Metric::TotalWords));
    let avg_min = after(find(Metric::AvgSentenceLength));
    let record = FlexibilityRecord {
        original: MetricsRecord::from(&base),
        extremes,
        table: vec![
            ("original text".to_string(), base.words, avg(&base)),
            ("number of words minimised".to_string(), words_min.words, avg(&words_min)),
            ("avg sentence length minimised".to_string(), avg_min.words, avg(&avg_min)),
        ],
    };
    match config.format {
        Format::Human => write!(out, "{}", report::render_flexibility_human(&record))?,
        Format::Json => emit_json(out, &record)?,
    }
    Ok(EXIT_OK)
}

fn cmd_sweep(
    config: &RunConfig,
    input: &InputArgs,
    bounds: &BoundArgs,
    constraint: &str,
    values: &[String],
    lexicon: &Lexicon,
    out: &mut dyn Write,
) -> Outcome {
    let kind = ConstraintKind::parse(constraint)
        .filter(|k| !matches!(k, ConstraintKind::Exclusivity(_)))
        .ok_or_else(|| Failure(vec![format!("unknown constraint {constraint:?}; expected k1, k2 or k3")]))?;
    let parsed = values
        .iter()
        .map(|v| rational::parse(v))
        .collect::<Result<Vec<Rational>, _>>()?;
    let (_settings, _cs, model, _warnings) = load_model(input, bounds, lexicon)?;
    let points = analysis::sweep_constraint(&model, kind, &parsed, &solver_options(config))?;
    let record = SweepRecord {
        constraint: constraint.to_string(),
        bounds: report::BoundsRecord::from(&model.config),
        points: points.iter().map(|p| SweepRow::new(&model, p)).collect(),
    };
    match config.format {
        Format::Human => write!(out, "{}", report::render_sweep_human(&record))?,
        Format::Json => emit_json(out, &record)?,
    }
    Ok(EXIT_OK)
}

//! `labelnoise`: worked-example verification, the Iris label-noise study and
//! noise-sensitivity analysis of user CSV data.
//!
//! Exit codes: 0 success (all checks passed), 1 runtime or check failure,
//! 2 usage error.

mod config;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use labelnoise::data::{CsvTable, LabelMapping};
use labelnoise::experiments::{
    default_noise_list, run_dataset, run_iris, verify_examples, verify_theorems, CheckReport,
};
use labelnoise::{Algorithm, ExperimentReport, NoiseSpec, SolverConfig};

use config::{pick, FileConfig};

#[derive(Parser, Debug)]
#[command(name = "labelnoise", version, about = "Risk minimization under label noise")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the worked examples and the randomized noise-tolerance properties.
    Verify(VerifyArgs),
    /// Iris study: setosa against the rest, labels corrupted, tested on clean labels.
    Iris(StudyArgs),
    /// The Iris protocol applied to a user CSV file.
    Analyze(AnalyzeArgs),
}

#[derive(Args, Debug, Default)]
struct Shared {
    /// Master seed; every random draw derives from it.
    #[arg(long)]
    seed: Option<u64>,
    /// Noisy training sets per noise setting.
    #[arg(long)]
    trials: Option<usize>,
    /// Noise setting, e.g. uniform:0.2, cccn:0.1,0.3, quadrant:0.15,0.2,0.25,0.3[,auto|cx,cy],
    /// perpoint:<file>, none. Repeatable.
    #[arg(long = "noise", value_name = "SPEC")]
    noise: Vec<String>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// File of `key = value` lines; command-line flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated subset of zero-one,hinge,least-squares,log,fld.
    #[arg(long)]
    algorithms: Option<String>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    scope: Option<Scope>,
    /// Random instances per property check.
    #[arg(long)]
    instances: Option<usize>,
    #[command(flatten)]
    shared: Shared,
}

#[derive(Args, Debug)]
struct StudyArgs {
    /// Also write every trial as CSV to this path.
    #[arg(long)]
    records: Option<PathBuf>,
    #[command(flatten)]
    shared: Shared,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[arg(long)]
    data: Option<PathBuf>,
    #[arg(long)]
    label_column: Option<String>,
    /// Raw label mapped to +1.
    #[arg(long)]
    positive: Option<String>,
    /// Raw label mapped to -1 (repeatable). If omitted, the column must hold
    /// exactly one other value.
    #[arg(long)]
    negative: Vec<String>,
    #[command(flatten)]
    study: StudyArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Csv,
    Table,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Scope {
    Examples,
    Theorems,
    All,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

type Outcome = Result<ExitCode, Failure>;

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn runtime(e: impl ToString) -> Failure {
    Failure::Runtime(e.to_string())
}

fn load_config(shared: &Shared) -> Result<FileConfig, Failure> {
    match &shared.config {
        Some(path) => FileConfig::read(path).map_err(usage),
        None => Ok(FileConfig::default()),
    }
}

fn parse_value_enum<T: ValueEnum>(file: &FileConfig, key: &str) -> Result<Option<T>, Failure> {
    file.get(key)
        .map(|v| T::from_str(v, false).map_err(|e| usage(format!("config key '{key}': {e}"))))
        .transpose()
}

/// Settings common to `iris` and `analyze`, after applying precedence.
struct Study {
    seed: u64,
    trials: usize,
    noise: Vec<NoiseSpec>,
    algorithms: Vec<Algorithm>,
    format: Format,
    out: Option<PathBuf>,
    records: Option<PathBuf>,
}

fn resolve_study(args: &StudyArgs, file: &FileConfig) -> Result<Study, Failure> {
    let shared = &args.shared;
    let seed = pick(shared.seed, file.parsed("seed").map_err(usage)?, 0);
    let trials = pick(shared.trials, file.parsed("trials").map_err(usage)?, 10);
    if trials == 0 {
        return Err(usage("--trials must be at least 1"));
    }
    let noise = if !shared.noise.is_empty() {
        shared
            .noise
            .iter()
            .map(|t| NoiseSpec::parse(t))
            .collect::<Result<Vec<_>, _>>()
            .map_err(usage)?
    } else if !file.all("noise").is_empty() {
        file.all("noise")
            .iter()
            .map(|t| NoiseSpec::parse_with_base(t, file.base_dir.as_deref()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(usage)?
    } else {
        default_noise_list()
    };
    let algorithms = match shared.algorithms.as_deref().or(file.get("algorithms")) {
        Some(text) => Algorithm::parse_list(text).map_err(usage)?,
        None => Algorithm::ALL.to_vec(),
    };
    Ok(Study {
        seed,
        trials,
        noise,
        algorithms,
        format: pick(shared.format, parse_value_enum(file, "format")?, Format::Table),
        out: shared.out.clone().or_else(|| file.path("out")),
        records: args.records.clone().or_else(|| file.path("records")),
    })
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| runtime(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_report(report: &ExperimentReport, study: &Study) -> Outcome {
    let text = match study.format {
        Format::Csv => report.to_csv(),
        Format::Table => report.to_table(),
    };
    emit(&text, study.out.as_deref())?;
    if let Some(path) = &study.records {
        emit(&report.records_csv(), Some(path))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn checks_csv(report: &CheckReport) -> String {
    let field = |s: &str| {
        if s.contains([',', '"']) {
            format!("\"{}\"", s.replace('"', "\"\""))
        } else {
            s.to_string()
        }
    };
    let mut out = String::from("section,check,computed,expected,tolerance,verdict\n");
    for c in &report.checks {
        let verdict = if c.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "{},{},{},{},{},{verdict}\n",
            field(&c.section),
            field(&c.name),
            field(&c.computed),
            field(&c.expected),
            field(&c.tolerance)
        ));
    }
    out
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let shared = &args.shared;
    let file = load_config(shared)?;
    for (flag, given) in [
        ("--trials", shared.trials.is_some()),
        ("--noise", !shared.noise.is_empty()),
        ("--algorithms", shared.algorithms.is_some()),
    ] {
        if given {
            return Err(usage(format!("{flag} is not used by verify")));
        }
    }
    let scope = pick(args.scope, parse_value_enum(&file, "scope")?, Scope::All);
    let seed = pick(shared.seed, file.parsed("seed").map_err(usage)?, 0);
    let instances = pick(args.instances, file.parsed("instances").map_err(usage)?, 100);
    if instances == 0 {
        return Err(usage("--instances must be at least 1"));
    }
    let format = pick(shared.format, parse_value_enum(&file, "format")?, Format::Table);
    let out = shared.out.clone().or_else(|| file.path("out"));

    let mut report = CheckReport::default();
    if matches!(scope, Scope::Examples | Scope::All) {
        report.extend(verify_examples());
    }
    if matches!(scope, Scope::Theorems | Scope::All) {
        report.extend(verify_theorems(&SolverConfig::default().with_seed(seed), instances));
    }
    let text = match format {
        Format::Table => report.to_table(),
        Format::Csv => checks_csv(&report),
    };
    emit(&text, out.as_deref())?;
    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_iris(args: &StudyArgs) -> Outcome {
    let file = load_config(&args.shared)?;
    let study = resolve_study(args, &file)?;
    let report = run_iris(study.trials, study.seed, &study.noise, &study.algorithms).map_err(runtime)?;
    emit_report(&report, &study)
}

/// `"a = +1, b and c = -1"`.
fn convention(mapping: &LabelMapping) -> String {
    let neg: Vec<&str> = mapping.negatives().collect();
    let joined = match neg.as_slice() {
        [] => String::new(),
        [one] => one.to_string(),
        [init @ .., last] => format!("{} and {last}", init.join(", ")),
    };
    format!("{} = +1, {joined} = -1", mapping.positive())
}

fn cmd_analyze(args: &AnalyzeArgs) -> Outcome {
    let file = load_config(&args.study.shared)?;
    let study = resolve_study(&args.study, &file)?;
    let data_path = args
        .data
        .clone()
        .or_else(|| file.path("data"))
        .ok_or_else(|| usage("analyze needs --data"))?;
    let positive = args
        .positive
        .clone()
        .or_else(|| file.get("positive").map(str::to_string))
        .ok_or_else(|| usage("analyze needs --positive"))?;
    let label_column = args
        .label_column
        .clone()
        .or_else(|| file.get("label_column").map(str::to_string))
        .unwrap_or_else(|| "class".to_string());
    let negatives: Vec<String> = if args.negative.is_empty() {
        file.all("negative").to_vec()
    } else {
        args.negative.clone()
    };

    let table = CsvTable::read(&data_path).map_err(runtime)?;
    let mapping = if negatives.is_empty() {
        let observed = table.column(&label_column).map_err(runtime)?;
        LabelMapping::infer_binary(&positive, observed.iter().copied()).map_err(runtime)?
    } else {
        LabelMapping::new(positive.as_str(), negatives.iter().map(String::as_str)).map_err(usage)?
    };
    let data = table.to_dataset(&label_column, &mapping).map_err(runtime)?;
    let report = run_dataset(
        &data,
        &convention(&mapping),
        study.trials,
        study.seed,
        &study.noise,
        &study.algorithms,
        &SolverConfig::default(),
    )
    .map_err(runtime)?;
    emit_report(&report, &study)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // help and version exit 0, usage errors exit 2
        Err(e) => e.exit(),
    };
    let outcome = match &cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Iris(args) => cmd_iris(args),
        Command::Analyze(args) => cmd_analyze(args),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn convention_text() {
        let m = LabelMapping::new("Iris-setosa", ["Iris-versicolor", "Iris-virginica"]).unwrap();
        assert_eq!(convention(&m), labelnoise::experiments::IRIS_CONVENTION);
        let m = LabelMapping::new("yes", ["no"]).unwrap();
        assert_eq!(convention(&m), "yes = +1, no = -1");
    }
}

//! `mbr` — budgeted MBR decoding from the command line.
//!
//! Subcommands: `run` (experiment grids), `decode` (single-algorithm
//! selection over an instance file), `synth` (labeled synthetic corpora),
//! `report` (JSON/CSV report conversion).
//!
//! Exit codes: 0 success, 1 config/schema error, 2 i/o error.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use mbr_core::harness::{
    cell_budget, run_algorithm, run_experiment, AlgorithmSpec, ExperimentConfig, HarnessError,
    OracleChoice, Report, ReportFormat, DEFAULT_FRACTIONS, DEFAULT_SEEDS,
};
use mbr_core::harness::load_instances;
use mbr_core::{doubling_trick, planted_batch, RngStream};

#[derive(Parser)]
#[command(
    name = "mbr",
    version,
    about = "Budgeted minimum-Bayes-risk decoding: algorithms, baselines, and a benchmark harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment grid and write a CSV/JSON report.
    Run(RunArgs),
    /// Decode instances with one algorithm and print the picks.
    Decode(DecodeArgs),
    /// Generate planted synthetic instances with a label sidecar.
    Synth(SynthArgs),
    /// Convert a report between JSON and CSV.
    Report(ReportArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Experiment config file (JSON). Mutually exclusive with inline flags.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated algorithm names (exact, nbys, c2f, cbp, ambr,
    /// ambr_replace, aggregation, reward, doubling).
    #[arg(long, value_delimiter = ',')]
    algorithms: Vec<String>,
    /// Comma-separated budget fractions of N(N-1), each in (0, 1].
    #[arg(long, value_delimiter = ',')]
    fractions: Vec<f64>,
    /// Comma-separated seeds, one grid replicate each.
    #[arg(long, value_delimiter = ',')]
    seeds: Vec<u64>,
    /// Utility oracle: unigram_f1, bleu, rouge_l, cosine, dot, or matrix.
    #[arg(long)]
    utility: Option<String>,
    /// Coarse utility for c2f.
    #[arg(long)]
    coarse_utility: Option<String>,
    /// Input JSONL instance file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Output report path (.csv or .json).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DecodeArgs {
    /// Input JSONL instance file.
    #[arg(long)]
    input: PathBuf,
    /// Algorithm name.
    #[arg(long)]
    algorithm: String,
    /// Absolute evaluation budget T. Defaults to unlimited.
    #[arg(long)]
    budget: Option<usize>,
    /// Budget as a fraction of N(N-1), in (0, 1]. Mutually exclusive with
    /// --budget.
    #[arg(long)]
    fraction: Option<f64>,
    /// Budget cap for the doubling trick. Defaults to the budget at which
    /// adaptive halving is provably exact.
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Utility oracle name.
    #[arg(long, default_value = "matrix")]
    utility: String,
    /// Coarse utility for c2f.
    #[arg(long)]
    coarse_utility: Option<String>,
}

#[derive(Args)]
struct SynthArgs {
    /// Pool size N per instance.
    #[arg(long)]
    n: usize,
    /// Number of instances to generate.
    #[arg(long)]
    count: usize,
    /// Utility bonus on pairs touching the planted index.
    #[arg(long, default_value_t = 0.1)]
    gap: f64,
    /// Half-width of the uniform pairwise noise.
    #[arg(long, default_value_t = 0.05)]
    noise: f64,
    /// Baseline utility of every pair.
    #[arg(long, default_value_t = 0.5)]
    base: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output JSONL path; labels go to `<output>.labels.json`.
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct ReportArgs {
    /// Input report (.json or .csv).
    #[arg(long)]
    input: PathBuf,
    /// Output report (.json or .csv).
    #[arg(long)]
    output: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Decode(args) => cmd_decode(args),
        Command::Synth(args) => cmd_synth(args),
        Command::Report(args) => cmd_report(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        // A closed stdout (e.g. piping into `head`) is not a failure.
        Err(HarnessError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn config_error(message: impl Into<String>) -> HarnessError {
    HarnessError::Config(message.into())
}

fn parse_utility(name: &str) -> Result<OracleChoice, HarnessError> {
    name.parse().map_err(config_error)
}

fn parse_algorithm(name: &str) -> Result<AlgorithmSpec, HarnessError> {
    name.parse().map_err(config_error)
}

fn cmd_run(args: RunArgs) -> Result<(), HarnessError> {
    let config = if let Some(config_path) = &args.config {
        let inline_flags_given = !args.algorithms.is_empty()
            || !args.fractions.is_empty()
            || !args.seeds.is_empty()
            || args.utility.is_some()
            || args.coarse_utility.is_some()
            || args.input.is_some()
            || args.output.is_some();
        if inline_flags_given {
            return Err(config_error("--config cannot be combined with inline flags"));
        }
        ExperimentConfig::from_file(config_path)?
    } else {
        let algorithms = args
            .algorithms
            .iter()
            .map(|name| parse_algorithm(name))
            .collect::<Result<Vec<_>, _>>()?;
        if algorithms.is_empty() {
            return Err(config_error("--algorithms is required (or use --config)"));
        }
        let utility = parse_utility(
            args.utility
                .as_deref()
                .ok_or_else(|| config_error("--utility is required"))?,
        )?;
        let coarse_utility = args
            .coarse_utility
            .as_deref()
            .map(parse_utility)
            .transpose()?;
        let config = ExperimentConfig {
            algorithms,
            budget_fractions: if args.fractions.is_empty() {
                DEFAULT_FRACTIONS.to_vec()
            } else {
                args.fractions.clone()
            },
            seeds: if args.seeds.is_empty() {
                DEFAULT_SEEDS.to_vec()
            } else {
                args.seeds.clone()
            },
            utility,
            coarse_utility,
            input: args
                .input
                .clone()
                .ok_or_else(|| config_error("--input is required"))?,
            output: args
                .output
                .clone()
                .ok_or_else(|| config_error("--output is required"))?,
        };
        config.validate()?;
        config
    };

    let report = run_experiment(&config)?;
    let mut stdout = io::stdout().lock();
    for aggregate in &report.aggregates {
        writeln!(
            stdout,
            "{} f={} error={:.4} regret={:.6} evals={:.1} [{}..{}]",
            aggregate.algorithm,
            aggregate.fraction,
            aggregate.error_rate,
            aggregate.mean_regret,
            aggregate.mean_evals,
            aggregate.min_evals,
            aggregate.max_evals,
        )?;
    }
    Ok(())
}

fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

fn cmd_decode(args: DecodeArgs) -> Result<(), HarnessError> {
    if args.budget.is_some() && args.fraction.is_some() {
        return Err(config_error("--budget and --fraction are mutually exclusive"));
    }
    if let Some(fraction) = args.fraction {
        if !(fraction > 0.0 && fraction <= 1.0) {
            return Err(config_error(format!(
                "--fraction must lie in (0, 1], got {fraction}"
            )));
        }
    }
    let spec = parse_algorithm(&args.algorithm)?;
    let utility = parse_utility(&args.utility)?;
    let coarse_utility = args
        .coarse_utility
        .as_deref()
        .map(parse_utility)
        .transpose()?;

    let instances = load_instances(&args.input)?;
    let mut stdout = io::stdout().lock();
    for instance in &instances {
        let n = instance.len();
        let budget = match (args.budget, args.fraction) {
            (Some(budget), _) => budget,
            (None, Some(fraction)) => cell_budget(fraction, n),
            (None, None) => usize::MAX,
        };
        let mut rng = RngStream::new(args.seed);
        let selection = if let AlgorithmSpec::Doubling = spec {
            // Decode exposes the restart schedule directly: T0 from the
            // budget flag, cap from --cap or the provable-exactness budget.
            let initial = match args.budget {
                Some(budget) => budget,
                None => (n * ceil_log2(n)).max(1),
            };
            let cap = args
                .cap
                .unwrap_or_else(|| (n * n * ceil_log2(n)).max(initial));
            let mut oracle = utility.build(instance, cap)?;
            doubling_trick(&mut oracle, initial, cap, &rng)?
        } else {
            run_algorithm(&spec, utility, coarse_utility, instance, budget, &mut rng)?
        };
        let text = &instance.candidates[selection.chosen];
        let flag = match selection.converged() {
            Some(true) => "\tconverged",
            Some(false) => "\tunconverged",
            None => "",
        };
        writeln!(
            stdout,
            "{}\t{}\t{}\t{}{}",
            instance.id, selection.chosen, text, selection.evals_used, flag
        )?;
    }
    Ok(())
}

fn cmd_synth(args: SynthArgs) -> Result<(), HarnessError> {
    if args.n < 2 {
        return Err(config_error("--n must be at least 2"));
    }
    if args.count == 0 {
        return Err(config_error("--count must be at least 1"));
    }
    if args.gap < 0.0 || args.noise < 0.0 || !args.base.is_finite() {
        return Err(config_error("--gap and --noise must be nonnegative, --base finite"));
    }

    let batch = planted_batch(args.n, args.count, args.gap, args.noise, args.base, args.seed);
    let mut lines = String::new();
    let mut labels: BTreeMap<String, usize> = BTreeMap::new();
    for (instance, label) in &batch {
        lines.push_str(&serde_json::to_string(instance)?);
        lines.push('\n');
        labels.insert(instance.id.clone(), *label);
    }
    fs::write(&args.output, lines)?;
    let labels_path = PathBuf::from(format!("{}.labels.json", args.output.display()));
    fs::write(&labels_path, serde_json::to_string_pretty(&labels)?)?;
    writeln!(
        io::stdout(),
        "wrote {} instances to {} (labels: {})",
        batch.len(),
        args.output.display(),
        labels_path.display()
    )?;
    Ok(())
}

fn cmd_report(args: ReportArgs) -> Result<(), HarnessError> {
    let report = match ReportFormat::from_path(&args.input) {
        ReportFormat::Json => Report::from_json_str(&fs::read_to_string(&args.input)?)?,
        ReportFormat::Csv => Report::from_csv_reader(fs::File::open(&args.input)?)?,
    };
    report.write(&args.output, ReportFormat::from_path(&args.output))?;
    writeln!(
        io::stdout(),
        "converted {} -> {} ({} rows, {} aggregates)",
        args.input.display(),
        args.output.display(),
        report.rows.len(),
        report.aggregates.len()
    )?;
    Ok(())
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64 as C64;

use conifold_cli::config::DegenerationConfig;
use conifold_cli::{
    cmd_analyze, cmd_braid, cmd_monodromy, cmd_mutate, cmd_report, exit_code_for,
    AnalyzeOptions, MonodromyOptions,
};

/// Operator-level analysis of conifold degenerations: Picard-Lefschetz and
/// Stokes operators, rigid-flexible atom decomposition, numerical monodromy
/// of the quantum connection, and cluster mutations.
#[derive(Parser)]
#[command(name = "conifold", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit the report as JSON (default).
    #[arg(long, global = true)]
    json: bool,

    /// Emit the report as human-readable text.
    #[arg(long, global = true, conflicts_with = "json")]
    text: bool,

    /// Seed for random-configuration property summaries.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Element cap for group exploration.
    #[arg(long, global = true, default_value_t = 100_000)]
    cap: usize,
}

#[derive(Args)]
struct MonodromyArgs {
    /// Connection parameter as "re,im".
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,

    /// Loop radius in (0,1) around q = -1.
    #[arg(long, default_value_t = 0.3)]
    radius: f64,

    /// Local error tolerance per unit path parameter.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,

    /// Step budget for the adaptive integrator.
    #[arg(long, default_value_t = 1_000_000)]
    max_steps: usize,

    /// Loop orientation: ccw (default) or cw.
    #[arg(long, default_value = "ccw")]
    orientation: String,

    /// Optional basepoint on (-1, 0); loops from a common anchor are directly
    /// comparable across radii.
    #[arg(long, allow_hyphen_values = true)]
    anchor: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Exact invariants: operators, atoms, graph, splitting criterion.
    Analyze { config: PathBuf, #[arg(long)] group_len: Option<usize> },
    /// Numerical loop monodromy around q = -1, appended to the analysis.
    Monodromy {
        config: PathBuf,
        #[command(flatten)]
        args: MonodromyArgs,
    },
    /// Classify the relation of generator pair (i, j); 1-based indices.
    Braid { config: PathBuf, i: usize, j: usize },
    /// Hurwitz mutation d_i -> d_i - lambda_ij d_j; 1-based indices.
    Mutate { config: PathBuf, i: usize, j: usize },
    /// Full bundle: analysis + monodromy + group ball + seeded random-corpus
    /// property summary.
    Report {
        config: PathBuf,
        #[command(flatten)]
        args: MonodromyArgs,
        /// Number of random configurations in the property summary.
        #[arg(long, default_value_t = 50)]
        corpus: usize,
    },
}

fn parse_z(s: &str) -> Result<C64, String> {
    let (re, im) = s.split_once(',').ok_or_else(|| format!("expected re,im got {s:?}"))?;
    let re: f64 = re.trim().parse().map_err(|e| format!("bad re: {e}"))?;
    let im: f64 = im.trim().parse().map_err(|e| format!("bad im: {e}"))?;
    Ok(C64::new(re, im))
}

fn monodromy_options(args: &MonodromyArgs) -> Result<MonodromyOptions, String> {
    let z = args.z.as_deref().map(parse_z).transpose()?;
    let clockwise = match args.orientation.as_str() {
        "ccw" => false,
        "cw" => true,
        other => return Err(format!("orientation must be ccw or cw, got {other:?}")),
    };
    if args.radius >= 1.0 {
        return Err(format!("radius {} >= 1: loop would enclose q = 0", args.radius));
    }
    Ok(MonodromyOptions {
        z,
        radius: args.radius,
        tol: args.tol,
        max_steps: args.max_steps,
        clockwise,
        anchor: args.anchor,
    })
}

fn run(cli: &Cli) -> Result<(String, Vec<String>), (i32, String)> {
    let as_text = cli.text;
    let input_err = |msg: String| (2, msg);
    let core_err = |e: conifold_core::Error| (exit_code_for(&e), e.to_string());

    let load = |path: &PathBuf| DegenerationConfig::from_path(path).map_err(core_err);

    match &cli.command {
        Command::Analyze { config, group_len } => {
            let cfg = load(config)?;
            let opts = AnalyzeOptions { group_len: *group_len, cap: cli.cap };
            let report = cmd_analyze(&cfg, &opts).map_err(core_err)?;
            let failures = report.failing_invariants();
            let out = if as_text { report.to_text() } else { report.to_json() };
            Ok((out, failures))
        }
        Command::Monodromy { config, args } => {
            let cfg = load(config)?;
            let opts = AnalyzeOptions { group_len: None, cap: cli.cap };
            let mopts = monodromy_options(args).map_err(input_err)?;
            let report = cmd_monodromy(&cfg, &opts, &mopts).map_err(core_err)?;
            let failures = report.failing_invariants();
            let out = if as_text { report.to_text() } else { report.to_json() };
            Ok((out, failures))
        }
        Command::Braid { config, i, j } => {
            let cfg = load(config)?;
            let rel = cmd_braid(&cfg, *i, *j).map_err(core_err)?;
            let out = if as_text {
                format!("({i}, {j}): {rel}\n")
            } else {
                format!("{{\"i\": {i}, \"j\": {j}, \"relation\": \"{rel}\"}}\n")
            };
            Ok((out, Vec::new()))
        }
        Command::Mutate { config, i, j } => {
            let cfg = load(config)?;
            let output = cmd_mutate(&cfg, *i, *j).map_err(core_err)?;
            let out = if as_text {
                let mut s = format!("mutated cycles (d_{i} -> d_{i} - lambda_{i}{j} d_{j}):\n");
                for (k, c) in output.mutated.cycles.iter().enumerate() {
                    s.push_str(&format!("    d_{} = [{}]\n", k + 1, c.join(", ")));
                }
                if let Some(cmp) = &output.cluster_comparison {
                    s.push_str(&format!(
                        "cluster: linear {:?} vs cluster {:?} (|diff| {:.6})\n",
                        cmp.linear_transport, cmp.cluster_value, cmp.discrepancy
                    ));
                }
                s
            } else {
                let mut s =
                    serde_json::to_string_pretty(&output).expect("mutate output serializes");
                s.push('\n');
                s
            };
            Ok((out, Vec::new()))
        }
        Command::Report { config, args, corpus } => {
            let cfg = load(config)?;
            let opts = AnalyzeOptions { group_len: None, cap: cli.cap };
            let mopts = monodromy_options(args).map_err(input_err)?;
            let report =
                cmd_report(&cfg, &opts, &mopts, cli.seed, *corpus).map_err(core_err)?;
            let mut failures = report.failing_invariants();
            if let Some(c) = &report.corpus {
                if !c.all_pass {
                    failures.push("random-corpus property summary".to_string());
                }
            }
            let out = if as_text { report.to_text() } else { report.to_json() };
            Ok((out, failures))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((output, failures)) => {
            print!("{output}");
            if failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                let list = serde_json::to_string(&failures).expect("list serializes");
                eprintln!("error: invariant failures: {list}");
                ExitCode::from(1)
            }
        }
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code as u8)
        }
    }
}

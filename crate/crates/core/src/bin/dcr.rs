use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dcr::format::format_significant;
use dcr::report::{compare, input_digest, run_method, Method, RunConfig, RunReport};
use dcr::{apply_all, parse_network_with_diameter, sweep, write_network, Error, Network};

#[derive(Parser)]
#[command(
    name = "dcr",
    version,
    about = "Diameter-constrained two-terminal network reliability"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Input {
    /// Network file.
    #[arg(long)]
    graph: PathBuf,
    /// Hop budget; overrides the file's `d` line.
    #[arg(long)]
    diameter: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the reliability with one method.
    Compute {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "factor")]
        method: Method,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Print per-method statistics after the value.
        #[arg(long)]
        stats: bool,
    },
    /// Per-link irrelevance verdicts.
    Irrelevant {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Apply every reduction to fixpoint and print the reduced network.
    Reduce {
        #[command(flatten)]
        input: Input,
        /// Append the reduction steps as comment lines.
        #[arg(long)]
        trace: bool,
    },
    /// Run several methods and check them against enumeration.
    Compare {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', default_value = "factor,enum,ie,mc")]
        methods: Vec<Method>,
        /// Saved `compute --format json` reports to include.
        #[arg(long = "report")]
        reports: Vec<PathBuf>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

enum Failure {
    Gate,
    Input(String),
    Guard(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_guard_refusal() {
            Failure::Guard(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

fn load(input: &Input) -> Result<(Network, String), Failure> {
    let bytes = std::fs::read(&input.graph).map_err(|e| Failure::Input(format!("{}: {e}", input.graph.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| Failure::Input(format!("{}: not valid UTF-8", input.graph.display())))?;
    let net = parse_network_with_diameter(&text, input.diameter)
        .map_err(|e| Failure::Input(format!("{}: {e}", input.graph.display())))?;
    Ok((net, input_digest(&bytes)))
}

fn load_report(path: &Path) -> Result<RunReport, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Compute {
            input,
            method,
            seed,
            samples,
            format,
            stats,
        } => {
            let (net, digest) = load(&input)?;
            let config = RunConfig {
                seed,
                samples,
                ..Default::default()
            };
            let report = run_method(&net, method, &config, &digest)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
                Format::Text => {
                    println!("{}", format_significant(report.reliability, 12));
                    if stats {
                        for (k, v) in &report.statistics {
                            println!("{k} {v}");
                        }
                        println!("wall_time_ms {:.3}", report.wall_time_ms);
                    }
                }
            }
        }
        Command::Irrelevant { input, format } => {
            let (net, _) = load(&input)?;
            let reports = sweep(&net);
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&reports).unwrap()),
                Format::Text => {
                    println!("link u v cond1 cond2 cond3 exact threshold");
                    for r in reports {
                        let threshold = r.relevance_threshold.map_or("inf".to_string(), |t| t.to_string());
                        println!(
                            "{} {} {} {} {} {} {} {}",
                            r.link_id,
                            r.endpoints.0,
                            r.endpoints.1,
                            r.cond1,
                            r.cond2,
                            r.cond3,
                            r.exact_irrelevant,
                            threshold
                        );
                    }
                }
            }
        }
        Command::Reduce { input, trace } => {
            let (net, _) = load(&input)?;
            let (reduced, steps) = apply_all(&net);
            print!("{}", write_network(&reduced));
            if trace {
                for step in &steps.steps {
                    println!("# step {step}");
                }
                println!("# total_factor {}", format_significant(steps.total_factor(), 17));
                println!("# total_diameter_delta {}", steps.total_diameter_delta());
            }
        }
        Command::Compare {
            input,
            methods,
            reports,
            seed,
            samples,
            format,
        } => {
            let (net, digest) = load(&input)?;
            let saved = reports.iter().map(|p| load_report(p)).collect::<Result<Vec<_>, _>>()?;
            let config = RunConfig {
                seed,
                samples,
                ..Default::default()
            };
            let cmp = compare(&net, &methods, &saved, &config, &digest)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&cmp).unwrap()),
                Format::Text => {
                    println!("method value delta_vs_enum wall_time_ms");
                    for row in &cmp.rows {
                        let delta = row.delta.map_or("-".to_string(), |d| format!("{d:.3e}"));
                        println!(
                            "{} {} {} {:.3}",
                            row.label,
                            format_significant(row.value, 12),
                            delta,
                            row.wall_time_ms
                        );
                    }
                    println!("gate {}", if cmp.gate_passed { "pass" } else { "fail" });
                }
            }
            if !cmp.gate_passed {
                return Err(Failure::Gate);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Gate) => {
            eprintln!("error: methods disagree with enumeration beyond 1e-9");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

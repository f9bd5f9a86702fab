//! `serlab` — batch laboratory for the convergence of positive series.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::json;

use serlab_cli::battery::run_battery;
use serlab_cli::commands::{self, parse_checkpoints, parse_count, parse_eps_list, CommandOutput};
use serlab_cli::report::Envelope;

#[derive(Parser)]
#[command(
    name = "serlab",
    version,
    about = "Numerical laboratory for positive series: certified sums, density diagnostics, \
             prime bound scans, progression structure"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Certified sum bracket of a convergent iterated-log series
    Sum {
        /// series expression, e.g. mb:k=2,s=2
        series: String,
        /// number of directly accumulated indices
        #[arg(long, default_value = "1e6")]
        direct: String,
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convergence classification with empirical support
    Classify {
        series: String,
        /// threshold for the crossing estimate of divergent members
        #[arg(long, default_value_t = 10.0)]
        threshold: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Density profile of an index set
    Density {
        #[arg(long)]
        set: String,
        /// natural | lower | upper | harmonic | weighted
        #[arg(long, default_value = "natural")]
        notion: String,
        /// weight for --notion weighted: n | sqrt | n/ln | n/ln:k
        #[arg(long)]
        weight: Option<String>,
        /// lo:hi[:points-per-decade] or a comma list
        #[arg(long)]
        checkpoints: Option<String>,
        /// shorthand for --checkpoints 1e2:<to>
        #[arg(long)]
        to: Option<String>,
        #[arg(long, default_value = "csv")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one named diagnostic or classical test
    Diagnose {
        /// condensation | olivier | remark1 | salat-toma | stgen |
        /// harmonic-density | kvn-forward | kvn-converse | complex-abel | floor
        #[arg(long)]
        test: String,
        #[arg(long)]
        series: Option<String>,
        /// weight sequence for stgen: n | nlogn | sqrt | n2
        #[arg(long)]
        b_rule: Option<String>,
        /// value sequence for the averaging and floor checks
        #[arg(long)]
        values: Option<String>,
        /// complex sequence for complex-abel
        #[arg(long)]
        z: Option<String>,
        /// declared bound for kvn-converse
        #[arg(long)]
        bound: Option<f64>,
        #[arg(long)]
        m_split: Option<u64>,
        #[arg(long, default_value = "1,0.1,0.01")]
        eps: String,
        #[arg(long, default_value = "1e2:1e6")]
        checkpoints: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Prime-count bound scans
    Primes {
        /// chebyshev | dusart | recip
        #[arg(long)]
        scan: String,
        /// sieve limit
        #[arg(long, default_value = "1.5e6")]
        limit: String,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
        #[arg(long, default_value = "csv")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Progression structure of integer sets
    Progressions {
        #[arg(long)]
        set: Option<String>,
        /// explicit comma list of integers
        #[arg(long)]
        ints: Option<String>,
        /// materialization bound for --set
        #[arg(long)]
        to: Option<String>,
        #[arg(long)]
        longest_ap: bool,
        #[arg(long)]
        count_3ap: bool,
        /// verify the reciprocal block set up to this block
        #[arg(long)]
        block_check: Option<u32>,
        /// one-column CSV of reals to search for near-progressions
        #[arg(long)]
        eps_prog: Option<PathBuf>,
        #[arg(long)]
        len: Option<usize>,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long, default_value = "window")]
        mode: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full verification battery, one line per criterion
    Report {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn write_artifact(out: Option<&PathBuf>, text: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn emit(
    command: &str,
    out: Option<&PathBuf>,
    format: &str,
    result: serlab::Result<CommandOutput>,
) -> i32 {
    match result {
        Ok(output) => {
            let text = if format == "csv" {
                match output.csv {
                    Some(csv) => csv,
                    None => Envelope::ok(command, output.config, output.result).to_json(),
                }
            } else {
                Envelope::ok(command, output.config, output.result).to_json()
            };
            if let Err(e) = write_artifact(out, &text) {
                eprintln!("serlab: cannot write output: {e}");
                return 1;
            }
            0
        }
        Err(e) => {
            let env = Envelope::failed(command, json!({}), &e);
            let _ = write_artifact(out, &env.to_json());
            eprintln!("serlab: {e}");
            e.exit_code()
        }
    }
}

fn run() -> i32 {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Sum {
            series,
            direct,
            format,
            out,
        } => {
            let result =
                parse_count(&direct).and_then(|n| commands::cmd_sum(&series, n, format == "csv"));
            emit("sum", out.as_ref(), &format, result)
        }
        Cmd::Classify {
            series,
            threshold,
            out,
        } => emit(
            "classify",
            out.as_ref(),
            "json",
            commands::cmd_classify(&series, threshold),
        ),
        Cmd::Density {
            set,
            notion,
            weight,
            checkpoints,
            to,
            format,
            out,
        } => {
            let cps = match (&checkpoints, &to) {
                (Some(c), _) => parse_checkpoints(c),
                (None, Some(t)) => parse_count(t).map(|hi| serlab::default_checkpoints(100, hi)),
                (None, None) => Ok(serlab::default_checkpoints(100, 1_000_000)),
            };
            let result = cps.and_then(|cps| {
                commands::cmd_density(&set, &notion, weight.as_deref(), &cps, format == "csv")
            });
            emit("density", out.as_ref(), &format, result)
        }
        Cmd::Diagnose {
            test,
            series,
            b_rule,
            values,
            z,
            bound,
            m_split,
            eps,
            checkpoints,
            out,
        } => {
            let result = parse_eps_list(&eps).and_then(|eps| {
                parse_checkpoints(&checkpoints).and_then(|cps| {
                    commands::cmd_diagnose(
                        &test,
                        series.as_deref(),
                        b_rule.as_deref(),
                        values.as_deref(),
                        z.as_deref(),
                        bound,
                        m_split,
                        &eps,
                        &cps,
                    )
                })
            });
            emit("diagnose", out.as_ref(), "json", result)
        }
        Cmd::Primes {
            scan,
            limit,
            from,
            to,
            format,
            out,
        } => {
            let result = parse_count(&limit).and_then(|lim| {
                let from = from.as_deref().map(parse_count).transpose()?;
                let to = to.as_deref().map(parse_count).transpose()?;
                commands::cmd_primes(&scan, lim, from, to, format == "csv")
            });
            emit("primes", out.as_ref(), &format, result)
        }
        Cmd::Progressions {
            set,
            ints,
            to,
            longest_ap,
            count_3ap,
            block_check,
            eps_prog,
            len,
            eps,
            mode,
            out,
        } => {
            let result = to.as_deref().map(parse_count).transpose().and_then(|to| {
                commands::cmd_progressions(
                    set.as_deref(),
                    ints.as_deref(),
                    to,
                    longest_ap,
                    count_3ap,
                    block_check,
                    eps_prog.as_deref(),
                    len,
                    eps,
                    &mode,
                )
            });
            emit("progressions", out.as_ref(), "json", result)
        }
        Cmd::Report { out } => match run_battery() {
            Ok(results) => {
                let mut all_pass = true;
                for r in &results {
                    println!("{}", r.line());
                    for d in &r.details {
                        println!("    {d}");
                    }
                    all_pass &= r.passed;
                }
                let result = serde_json::to_value(&results).expect("battery serialization");
                let env = Envelope::ok(
                    "report",
                    json!({"criteria": results.len()}),
                    json!({"all_pass": all_pass, "criteria": result}),
                );
                if let Some(path) = out.as_ref() {
                    if let Err(e) = std::fs::write(path, env.to_json()) {
                        eprintln!("serlab: cannot write output: {e}");
                        return 1;
                    }
                }
                if all_pass {
                    0
                } else {
                    1
                }
            }
            Err(e) => {
                eprintln!("serlab: battery failed to start: {e}");
                e.exit_code()
            }
        },
    }
}

fn main() {
    std::process::exit(run());
}

//! Binary entry point; argument parsing and dispatch live here, all the
//! actual work is in [`vertexlab::cli`].

use clap::{Args, Parser, Subcommand};
use vertexlab::cli::{
    cmd_compute_component, cmd_compute_genfun, cmd_compute_partition,
    cmd_compute_sumrule, cmd_enumerate, cmd_spectrum, cmd_verify, OutputFormat,
    RunConfig,
};

#[derive(Parser)]
#[command(
    name = "vertexlab",
    about = "Exact verification and computation for a spin-one vertex model"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Seed for all random parameter draws.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Size cap applied to every family of checks.
    #[arg(long, default_value_t = 2)]
    max_n: usize,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Emit JSON.
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV.
    #[arg(long)]
    csv: bool,
}

impl CommonOpts {
    fn config(&self) -> RunConfig {
        let format = if self.json {
            OutputFormat::Json
        } else if self.csv {
            OutputFormat::Csv
        } else {
            OutputFormat::Human
        };
        RunConfig::new(self.seed, self.max_n, self.jobs, format)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite (local, transfer, sov, partition, asm, all).
    Verify {
        /// Suite name.
        suite: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// One-shot exact computations.
    Compute {
        #[command(subcommand)]
        what: ComputeCommand,
    },
    /// List the matrices of an enumeration class.
    Enumerate {
        /// Class name (plain, half-turn, quarter-turn, vertical-mirror,
        /// double-u-turn, double-mirror).
        #[arg(long)]
        class: String,
        /// Matrix size.
        #[arg(long)]
        size: usize,
        /// Maximum number of matrices to print.
        #[arg(long, default_value_t = 16)]
        limit: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Floating-point sector spectra of the chain Hamiltonian.
    Spectrum {
        /// Chain length (2..=8).
        #[arg(long)]
        n: usize,
        /// Anisotropy value.
        #[arg(long)]
        x: f64,
        /// Twist (diagonal or anti-diagonal).
        #[arg(long, default_value = "diagonal")]
        twist: String,
        #[command(flatten)]
        common: CommonOpts,
    },
}

#[derive(Subcommand)]
enum ComputeCommand {
    /// Weighted enumeration polynomial of a class, or a closed form.
    Genfun {
        /// Enumeration class name.
        #[arg(long)]
        class: Option<String>,
        /// Closed-form name (norm-generating, vertical-mirror,
        /// quarter-turn-1, double-u-turn-2, double-u-turn-2-bare,
        /// half-plus).
        #[arg(long)]
        form: Option<String>,
        /// Matrix size (classes) or index (closed forms).
        #[arg(long)]
        size: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// A partition function at seeded random parameters, with oracle.
    Partition {
        /// Kind (domain-wall, half-turn-plus, half-turn-minus,
        /// quarter-turn, u-turn, double-u-turn, norm-generating,
        /// mixed-overlap).
        #[arg(long)]
        kind: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// One component of the homogeneous special vector.
    Component {
        /// Twist (diagonal or anti-diagonal).
        #[arg(long)]
        twist: String,
        /// Site pattern over the letters u, 0, d (site 1 first).
        #[arg(long)]
        pattern: String,
        /// Deformation parameter as a rational, e.g. 3/2.
        #[arg(long)]
        q: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// The magnetization-refined homogeneous square norm and its special
    /// points.
    Sumrule {
        /// System size (1..=4).
        #[arg(long)]
        n: usize,
        /// Deformation parameter as a rational.
        #[arg(long)]
        q: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Floating-point sector spectra (same as the top-level command).
    Spectrum {
        /// Chain length (2..=8).
        #[arg(long)]
        n: usize,
        /// Anisotropy value.
        #[arg(long)]
        x: f64,
        /// Twist (diagonal or anti-diagonal).
        #[arg(long, default_value = "diagonal")]
        twist: String,
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn main() {
    let cli = Cli::parse();
    let result: Result<(String, bool), String> = match cli.command {
        Command::Verify { suite, common } => {
            let cfg = common.config();
            cmd_verify(&suite, &cfg).map(|r| (r.render(cfg.format), r.all_pass()))
        }
        Command::Compute { what } => match what {
            ComputeCommand::Genfun { class, form, size, common } => cmd_compute_genfun(
                class.as_deref(),
                form.as_deref(),
                size,
                common.config().format,
            )
            .map(|s| (s, true)),
            ComputeCommand::Partition { kind, common } => {
                cmd_compute_partition(&kind, &common.config()).map(|s| (s, true))
            }
            ComputeCommand::Component { twist, pattern, q, common } => {
                cmd_compute_component(&twist, &pattern, &q, common.config().format)
                    .map(|s| (s, true))
            }
            ComputeCommand::Sumrule { n, q, common } => {
                cmd_compute_sumrule(n, &q, common.config().format).map(|s| (s, true))
            }
            ComputeCommand::Spectrum { n, x, twist, common } => {
                cmd_spectrum(n, x, &twist, common.config().format).map(|s| (s, true))
            }
        },
        Command::Enumerate { class, size, limit, common } => {
            cmd_enumerate(&class, size, limit, common.config().format).map(|s| (s, true))
        }
        Command::Spectrum { n, x, twist, common } => {
            cmd_spectrum(n, x, &twist, common.config().format).map(|s| (s, true))
        }
    };
    match result {
        Ok((text, all_pass)) => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            std::process::exit(if all_pass { 0 } else { 1 });
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tln_core::TlnError;

mod commands;

#[derive(Parser, Debug)]
#[command(name = "tln", version, about = "Exact fixed-point and chirotope analysis of competitive threshold-linear networks")]
struct Cli {
    /// Seed for every randomised search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fixed-point supports, one per line.
    Fp {
        network: PathBuf,
        /// Show every x^σ with exact coordinates, status and stability.
        #[arg(long)]
        detail: bool,
    },
    /// Every base sign of the chirotope.
    Chirotope { network: PathBuf },
    /// Cocircuit sign vector of every vertex x^σ.
    Cocircuits { network: PathBuf },
    /// The network's graph, sinks and separating nodes.
    Graph { network: PathBuf },
    /// Every basis with its sign, mutation status and pin.
    Mutations {
        network: PathBuf,
        /// Also search for a network realising each free mutation.
        #[arg(long)]
        realize: bool,
        /// Objective evaluations per search.
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Mutation and bifurcation graphs of one digraph, as DOT.
    Explore {
        /// Edge list such as "1>2,2>1,3>2", or "none".
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        /// Directory for mutation.dot and bifurcation.dot (default: both to stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regimes of all sixteen three-node graph classes.
    Atlas {
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long, default_value = "atlas")]
        out: PathBuf,
    },
    /// Support changes along a one-parameter path, as CSV.
    Sweep {
        network: PathBuf,
        /// W31, W_3,1 or b2 (1-based).
        #[arg(long)]
        param: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[arg(long, default_value = "1e-4")]
        tol: String,
        /// Grid points before bisection.
        #[arg(long, default_value_t = 256)]
        steps: usize,
        /// Also list sign changes that leave FP unchanged.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// RK4 trajectory, as CSV.
    Simulate {
        network: PathBuf,
        /// Initial state, comma separated (default: origin).
        #[arg(long, allow_hyphen_values = true)]
        x0: Option<String>,
        #[arg(long, default_value_t = 20.0)]
        t: f64,
        #[arg(long, default_value_t = tln_core::dynamics::DEFAULT_DT)]
        dt: f64,
        /// Keep every k-th state.
        #[arg(long, default_value_t = 100)]
        every: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate every three-term Grassmann-Plücker relation exactly.
    GpCheck { network: PathBuf },
    /// Single-parameter moves that flip s^123_i while keeping the graph.
    Unlock {
        network: PathBuf,
        /// Neuron i (1-based).
        #[arg(long)]
        target: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            // reader went away, e.g. `tln chirotope net.json | head`
            if e.chain().any(|c| c.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)) {
                return ExitCode::SUCCESS;
            }
            eprintln!("error: {e:#}");
            let degenerate = e.chain().any(|c| c.downcast_ref::<TlnError>().is_some_and(TlnError::is_degenerate));
            ExitCode::from(if degenerate { 2 } else { 1 })
        }
    }
}

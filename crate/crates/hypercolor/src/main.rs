use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hypercolor::experiments::{
    cmd_contract, cmd_couple, cmd_enumerate, cmd_generate, cmd_goodness, cmd_llcheck, cmd_mix, cmd_persist,
    ContractConfig, CoupleConfig, EnumerateConfig, GenerateConfig, GoodnessConfig, GoodnessOpts, LlcheckConfig,
    MixConfig, PersistConfig,
};
use hypercolor::report::Report;
use hypercolor::source::GraphSource;
use hypercolor::{Error, Result};
use hypercolor_core::oracle::DEFAULT_BUDGET;

/// Glauber dynamics on proper colorings of simple k-uniform hypergraphs.
#[derive(Parser)]
#[command(name = "hypercolor", version)]
struct Cli {
    /// Directory for reports and relative output paths.
    #[arg(long, global = true, env = "HYPERCOLOR_OUT_DIR")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Eps {
    /// Goodness scale eps as `a/b` or a decimal (default 1/(50 k^2)).
    #[arg(long)]
    eps: Option<String>,
    /// Constant in the `q >= C_k ln n` condition (default 200 k^2).
    #[arg(long)]
    c_k: Option<f64>,
    /// Constant in `t* = exp(c mu_1 / 2)` (default 1).
    #[arg(long)]
    c: Option<f64>,
}

impl Eps {
    fn opts(self) -> GoodnessOpts {
        GoodnessOpts { eps: self.eps, c_k: self.c_k, c: self.c }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build an instance: random simple hypergraph or a named construction.
    Generate {
        /// Named construction or file instead of the random generator.
        #[arg(long)]
        graph: Option<GraphSource>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        max_deg: Option<usize>,
        /// Exact number of edges; default adds edges until rejections run out.
        #[arg(long)]
        edges: Option<usize>,
        #[arg(long)]
        rejection_cap: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[command(flatten)]
        eps: Eps,
    },
    /// Proper colorings, their goodness and the move graph, by brute force.
    Enumerate {
        #[arg(long)]
        graph: GraphSource,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Write the proper coloring codes here, one per line.
        #[arg(long)]
        dump: Option<PathBuf>,
        #[command(flatten)]
        eps: Eps,
    },
    /// Distance to uniform after t_delta steps, over many replicas.
    Mix {
        #[arg(long)]
        graph: GraphSource,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        #[arg(long, default_value_t = 100_000)]
        replicas: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        steps: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[command(flatten)]
        eps: Eps,
    },
    /// Fraction of bad colorings under Omega and Q, or classify one coloring.
    Goodness {
        #[arg(long)]
        graph: GraphSource,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 1)]
        scale: u32,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        chain_steps: Option<u64>,
        /// Classify this coloring file instead of sampling.
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[command(flatten)]
        eps: Eps,
    },
    /// One-step Hamming contraction of the coupling from 2eps-good pairs.
    Contract {
        #[arg(long)]
        graph: GraphSource,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 100_000)]
        pairs: u64,
        #[arg(long, default_value_t = 1)]
        steps_per_pair: usize,
        #[arg(long, default_value_t = 100_000)]
        max_discards: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        eps: Eps,
    },
    /// Run two coupled chains until they meet.
    Couple {
        #[arg(long)]
        graph: GraphSource,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 1_000_000)]
        max_steps: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        x0: Option<PathBuf>,
        #[arg(long)]
        y0: Option<PathBuf>,
        /// CSV trace of every step.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[command(flatten)]
        eps: Eps,
    },
    /// Whether eps-goodness persists for t0 * min(t*, cap) steps.
    Persist {
        #[arg(long)]
        graph: GraphSource,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 1_000_000)]
        cap: u64,
        #[arg(long)]
        steps: Option<u64>,
        #[arg(long, default_value_t = 1000)]
        replicas: u64,
        #[arg(long, default_value_t = 10_000)]
        max_attempts: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// CSV trace of replica 0's checkpoints.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[command(flatten)]
        eps: Eps,
    },
    /// Local lemma premise, transfer inequality and tail bounds.
    Llcheck {
        #[arg(long)]
        graph: GraphSource,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[command(flatten)]
        eps: Eps,
    },
}

fn place(out: Option<&Path>, path: Option<PathBuf>) -> Option<PathBuf> {
    match (out, path) {
        (Some(dir), Some(p)) if p.is_relative() => Some(dir.join(p)),
        (_, p) => p,
    }
}

fn execute(cli: Cli) -> Result<Report> {
    let out = cli.out.as_deref();
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(|e| Error::Io { path: dir.into(), source: e })?;
    }
    match cli.command {
        Command::Generate { graph, n, k, max_deg, edges, rejection_cap, seed, q, output, eps } => {
            cmd_generate(&GenerateConfig {
                source: graph,
                n,
                k,
                max_degree: max_deg,
                edges,
                rejection_cap,
                seed,
                q,
                goodness: eps.opts(),
                output: place(out, output),
            })
        }
        Command::Enumerate { graph, q, budget, dump, eps } => {
            cmd_enumerate(&EnumerateConfig { graph, q, goodness: eps.opts(), budget, dump: place(out, dump) })
        }
        Command::Mix { graph, q, delta, replicas, seed, steps, budget, eps } => {
            cmd_mix(&MixConfig { graph, q, delta, replicas, seed, steps, budget, goodness: eps.opts() })
        }
        Command::Goodness { graph, q, scale, samples, seed, budget, chain_steps, coloring, eps } => {
            cmd_goodness(&GoodnessConfig {
                graph,
                q,
                goodness: eps.opts(),
                scale,
                samples,
                seed,
                budget,
                chain_steps,
                coloring,
            })
        }
        Command::Contract { graph, q, pairs, steps_per_pair, max_discards, seed, eps } => {
            cmd_contract(&ContractConfig { graph, q, goodness: eps.opts(), pairs, steps_per_pair, max_discards, seed })
        }
        Command::Couple { graph, q, max_steps, seed, x0, y0, trace, eps } => cmd_couple(&CoupleConfig {
            graph,
            q,
            goodness: eps.opts(),
            max_steps,
            seed,
            x0,
            y0,
            trace: place(out, trace),
        }),
        Command::Persist { graph, q, cap, steps, replicas, max_attempts, seed, trace, eps } => {
            cmd_persist(&PersistConfig {
                graph,
                q,
                goodness: eps.opts(),
                cap,
                steps,
                replicas,
                max_attempts,
                seed,
                trace: place(out, trace),
            })
        }
        Command::Llcheck { graph, q, budget, eps } => {
            cmd_llcheck(&LlcheckConfig { graph, q, goodness: eps.opts(), budget })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let out = cli.out.clone();
    let report = match execute(cli) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let json = match report.to_json() {
        Ok(json) => json,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    println!("{json}");
    if let Some(dir) = out {
        let path = dir.join(format!("{}.json", report.command));
        if let Err(e) = std::fs::write(&path, format!("{json}\n")) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    if let Some(violation) = &report.invariant_violation {
        eprintln!("{}", Error::Invariant(violation.clone()));
        return ExitCode::from(2);
    }
    ExitCode::SUCCESS
}

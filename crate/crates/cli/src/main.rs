//! gatlab: a kernel and workbench for finitary generalized algebraic
//! theories, their equality-free first-order language, finite-model
//! semantics and homotopy-invariance suites.

use std::path::PathBuf;

use gatlab::{commands, parse};

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "gatlab", version, about)]
struct Cli {
    /// Emit the machine-readable JSON report on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and check theory/formula/model/hom/category/functor/proof files.
    Check {
        /// Files to check; the kind is inferred from the extension.
        files: Vec<PathBuf>,
        /// Theory file overriding builtin theory resolution.
        #[arg(long)]
        theory: Option<PathBuf>,
    },
    /// Evaluate a formula in a model at a context element.
    Eval {
        /// Theory file; builtin names resolve without it.
        #[arg(long)]
        theory: Option<PathBuf>,
        /// Builtin theory name used when --theory is absent.
        #[arg(long, default_value = "cat_eq")]
        theory_name: String,
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        formula: PathBuf,
        /// Comma-separated element names interpreting the context.
        #[arg(long, default_value = "")]
        at: String,
    },
    /// Check an entailment proof file.
    Prove {
        file: PathBuf,
        #[arg(long)]
        theory: Option<PathBuf>,
    },
    /// Search for a finite model satisfying the first formula but not the second.
    Countermodel {
        #[arg(long)]
        theory: Option<PathBuf>,
        #[arg(long, default_value = "cat_eq")]
        theory_name: String,
        #[arg(long)]
        phi: PathBuf,
        #[arg(long)]
        psi: PathBuf,
        /// Carrier size bound of the exhaustive search.
        #[arg(long, default_value_t = 3)]
        bound: usize,
    },
    /// Check a model homomorphism and test the weak-pullback condition.
    FibCheck {
        #[arg(long)]
        hom: PathBuf,
        #[arg(long)]
        theory: Option<PathBuf>,
    },
    /// Run the invariance suites over the builtin corpus.
    Invariance {
        /// Suite configuration file (TOML).
        #[arg(long)]
        config: Option<PathBuf>,
        /// Seed for sampled (non-exhaustive) runs.
        #[arg(long)]
        seed: Option<u64>,
        /// Check every triple instead of sampling.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Regenerate the builtin corpus files.
    Corpus {
        #[arg(long, default_value = "corpus")]
        out: PathBuf,
    },
}

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check { files, theory } => commands::cmd_check(files, theory.as_deref()),
        Command::Eval { theory, theory_name, model, formula, at } => {
            commands::cmd_eval(theory.as_deref(), theory_name, model, formula, at)
        }
        Command::Prove { file, theory } => commands::cmd_prove(file, theory.as_deref()),
        Command::Countermodel { theory, theory_name, phi, psi, bound } => {
            commands::cmd_countermodel(theory.as_deref(), theory_name, phi, psi, *bound)
        }
        Command::FibCheck { hom, theory } => commands::cmd_fib_check(hom, theory.as_deref()),
        Command::Invariance { config, seed, exhaustive } => {
            let mut options: commands::SuiteOptions = match config {
                Some(path) => {
                    let text = match std::fs::read_to_string(path) {
                        Ok(t) => t,
                        Err(e) => {
                            eprintln!("error: cannot read {}: {e}", path.display());
                            std::process::exit(2);
                        }
                    };
                    match toml::from_str::<parse::SuiteConfig>(&text) {
                        Ok(c) => c.into(),
                        Err(e) => {
                            eprintln!("error: bad suite config: {e}");
                            std::process::exit(2);
                        }
                    }
                }
                None => parse::SuiteConfig::default().into(),
            };
            if let Some(seed) = seed {
                options.seed = *seed;
            }
            if *exhaustive {
                options.exhaustive = true;
            }
            commands::cmd_invariance(&options)
        }
        Command::Corpus { out } => commands::cmd_corpus(out),
    };
    match result {
        Ok(report) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                report.print_human();
            }
            std::process::exit(if report.passed() { 0 } else { 1 });
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}

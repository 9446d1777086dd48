use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use mcs_core::sim::dense::clifford_unitary;
use mcs_core::sim::verify::{verify_branches, verify_filter, verify_sample, verify_stabilizer, Target};
use mcs_core::{random_clifford, synthesize, synthesize_from_inverse, Circuit, Error, Execution, Tableau};

#[derive(Parser)]
#[command(
    name = "mcs",
    version,
    about = "Measurement-assisted Clifford synthesis and verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Branches,
    Sample,
    Stabilizer,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a tableau into a staged circuit and print its metrics.
    Synth {
        #[arg(long)]
        tableau: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Treat the input as the tableau of C† rather than C.
        #[arg(long)]
        from_inverse: bool,
    },
    /// Write the inverse tableau.
    Invert {
        #[arg(long)]
        tableau: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate a random Clifford tableau from a random gate word.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Also write the generating gate list.
        #[arg(long)]
        gates: Option<PathBuf>,
    },
    /// Check a synthesized circuit against its tableau by simulation.
    Verify {
        #[arg(long)]
        tableau: PathBuf,
        /// Circuit to check; synthesized from the tableau when omitted.
        #[arg(long)]
        circuit: Option<PathBuf>,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print resource metrics of a circuit file.
    Stats {
        #[arg(long)]
        circuit: PathBuf,
    },
    /// Run the quantum-filter identity check on random channels.
    FilterCheck {
        /// Kraus operators per channel (1 to 4).
        #[arg(long, default_value_t = 4)]
        kraus: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Input(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SimulationIntegrity(_) => Failure::Verification(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_tableau(path: &Path) -> Result<Tableau, Failure> {
    Tableau::from_text(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_circuit(path: &Path) -> Result<Circuit, Failure> {
    Circuit::from_text(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Synth {
            tableau,
            out,
            from_inverse,
        } => {
            let t = load_tableau(&tableau)?;
            let c = if from_inverse {
                synthesize_from_inverse(&t)?
            } else {
                synthesize(&t)?
            };
            write(&out, &c.to_text())?;
            print!("{}", c.stats());
        }
        Command::Invert { tableau, out } => {
            let t = load_tableau(&tableau)?;
            write(&out, &t.invert()?.to_text())?;
        }
        Command::Random { n, seed, out, gates } => {
            let (t, list) = random_clifford(n, seed)?;
            write(&out, &t.to_text())?;
            if let Some(g) = gates {
                write(&g, &list.to_text())?;
            }
        }
        Command::Verify {
            tableau,
            circuit,
            mode,
            trials,
            tol,
            seed,
        } => {
            let t = load_tableau(&tableau)?;
            let c = match circuit {
                Some(p) => load_circuit(&p)?,
                None => synthesize(&t)?,
            };
            if c.n() != t.n() {
                return Err(Failure::Input(format!(
                    "circuit has n = {} but tableau has n = {}",
                    c.n(),
                    t.n()
                )));
            }
            let exec = Execution::default();
            let report = match mode {
                Mode::Branches | Mode::Sample => {
                    let target = Target::Unitary(clifford_unitary(&t)?);
                    if matches!(mode, Mode::Branches) {
                        verify_branches(&c, &target, trials, tol, seed, exec)?
                    } else {
                        verify_sample(&c, &target, trials, tol, seed, exec)?
                    }
                }
                Mode::Stabilizer => verify_stabilizer(&c, &t, trials, seed, exec)?,
            };
            print!("{report}");
            if !report.pass {
                return Err(Failure::Verification("verification failed".into()));
            }
        }
        Command::Stats { circuit } => {
            print!("{}", load_circuit(&circuit)?.stats());
        }
        Command::FilterCheck {
            kraus,
            trials,
            tol,
            seed,
        } => {
            let report = verify_filter(kraus, trials, tol, seed, Execution::default())?;
            print!("{report}");
            if !report.pass {
                return Err(Failure::Verification("filter check failed".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use hqcm::circuit::{build_grover, grover_iterations, parse_circuit, Circuit};
use hqcm::runner::{
    render_three_control_table, render_trace, run_report, verify_equivalence, ExecutionConfig,
    KappaPolicy, Mode,
};

#[derive(Parser)]
#[command(name = "hqcm", version, about = "Hybrid quantum circuit simulator with byproduct tracking")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Sampling {
    /// Number of shots.
    #[arg(long, default_value_t = 1)]
    shots: usize,
    /// Base seed; shot k uses stream k.
    #[arg(long, env = "HQCM_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a circuit file.
    Run {
        circuit: PathBuf,
        /// hqcm, unitary or both.
        #[arg(long, default_value = "hqcm")]
        mode: Mode,
        #[command(flatten)]
        sampling: Sampling,
        /// Record the information flow per step (first shot).
        #[arg(long)]
        trace: bool,
        /// Track outcomes as symbols; implies --trace, single shot.
        #[arg(long)]
        symbolic: bool,
        /// Ancilla labels: `zero`, `random`, or one 0/1 per rotation.
        #[arg(long, default_value = "zero")]
        kappa: String,
        /// Pin rotation outcomes: one 0/1 per rotation.
        #[arg(long)]
        forced: Option<String>,
        /// Report work qubits in readouts.
        #[arg(long)]
        include_work: bool,
        /// Write the JSON results here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the readout histogram as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Grover search for one marked item.
    Grover {
        /// Number of logical qubits.
        #[arg(long)]
        n: usize,
        /// Marked basis index; bit k is qubit k+1.
        #[arg(long)]
        marked: usize,
        /// Defaults to floor(pi/4 * sqrt(2^n)).
        #[arg(long)]
        iterations: Option<usize>,
        #[arg(long, default_value = "hqcm")]
        mode: Mode,
        #[arg(long, default_value_t = 1000)]
        shots: usize,
        #[arg(long, env = "HQCM_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare byproduct-corrected hybrid runs with the unitary reference.
    Verify {
        circuit: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, env = "HQCM_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Print the symbolic flow table of the three-control Z gate.
    Table1,
}

enum Outcome {
    Ok,
    VerificationFailed,
}

fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .filter(|c| !matches!(c, ',' | ' '))
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => bail!("expected 0 or 1, got '{other}'"),
        })
        .collect()
}

fn kappa_policy(s: &str) -> Result<KappaPolicy> {
    Ok(match s {
        "zero" => KappaPolicy::AsBuilt,
        "random" => KappaPolicy::Random,
        bits => KappaPolicy::PerRotation(parse_bits(bits).context("--kappa")?),
    })
}

fn load(path: &Path) -> Result<Circuit> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_circuit(&text).with_context(|| format!("parsing {}", path.display()))
}

fn check_lengths(circuit: &Circuit, config: &ExecutionConfig) -> Result<()> {
    let r = circuit.rotation_count();
    if let KappaPolicy::PerRotation(k) = &config.kappa {
        if k.len() != r {
            bail!("--kappa lists {} labels, circuit has {r} rotations", k.len());
        }
    }
    if let Some(f) = &config.forced_outcomes {
        if f.len() != r {
            bail!("--forced lists {} outcomes, circuit has {r} rotations", f.len());
        }
    }
    Ok(())
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Run {
            circuit,
            mode,
            sampling,
            trace,
            symbolic,
            kappa,
            forced,
            include_work,
            out,
            csv,
        } => {
            let circuit = load(&circuit)?;
            let config = ExecutionConfig {
                mode,
                shots: sampling.shots,
                seed: sampling.seed,
                trace: trace || symbolic,
                symbolic,
                forced_outcomes: forced.as_deref().map(parse_bits).transpose().context("--forced")?,
                kappa: kappa_policy(&kappa)?,
                include_work,
            };
            check_lengths(&circuit, &config)?;
            let report = run_report(&circuit, &config)?;
            write_or_print(out.as_deref(), &report.to_json())?;
            if let Some(p) = csv {
                fs::write(&p, report.histogram_csv()).with_context(|| format!("writing {}", p.display()))?;
            }
            if out.is_some() {
                for (k, c) in &report.histogram {
                    println!("{k} {c}");
                }
                if config.trace && mode != Mode::Unitary {
                    let shot = hqcm::runner::run_hqcm(&circuit, &ExecutionConfig { shots: 1, ..config.clone() })?;
                    if let Some(t) = &shot[0].trace {
                        let order: Vec<usize> = (0..circuit.num_qubits()).collect();
                        print!("{}", render_trace(t, &order, None)?);
                    }
                }
            }
            Ok(Outcome::Ok)
        }
        Command::Grover {
            n,
            marked,
            iterations,
            mode,
            shots,
            seed,
            out,
        } => {
            let circuit = build_grover(n, marked, iterations)?;
            let config = ExecutionConfig::default()
                .with_mode(mode)
                .with_shots(shots)
                .with_seed(seed);
            let report = run_report(&circuit, &config)?;
            let key: String = (0..n).map(|k| if (marked >> k) & 1 == 1 { '1' } else { '0' }).collect();
            println!(
                "n = {n}, marked = {marked} ({key}), iterations = {}, work qubits = {}",
                iterations.unwrap_or_else(|| grover_iterations(n)),
                circuit.num_work()
            );
            if !report.histogram.is_empty() {
                let total: usize = report.histogram.values().sum();
                println!("readout count frequency");
                for (k, c) in &report.histogram {
                    println!("{k} {c} {:.6}", *c as f64 / total as f64);
                }
                let hits = report.histogram.get(&key).copied().unwrap_or(0);
                println!("success frequency: {:.6}", hits as f64 / total as f64);
            }
            if let Some(u) = &report.unitary {
                let p = u.distribution.get(&key).copied().unwrap_or(0.0);
                println!("success probability (unitary): {p:.6}");
            }
            if let Some(p) = out {
                fs::write(&p, report.to_json()).with_context(|| format!("writing {}", p.display()))?;
            }
            Ok(Outcome::Ok)
        }
        Command::Verify { circuit, trials, seed } => {
            let circuit = load(&circuit)?;
            let report = verify_equivalence(&circuit, trials, seed)?;
            println!(
                "trials = {}, min fidelity = {:.15}, mean fidelity = {:.15}",
                report.trials, report.min_fidelity, report.mean_fidelity
            );
            if report.passed() {
                println!("PASS");
                Ok(Outcome::Ok)
            } else {
                println!("FAIL");
                Ok(Outcome::VerificationFailed)
            }
        }
        Command::Table1 => {
            print!("{}", render_three_control_table()?);
            Ok(Outcome::Ok)
        }
    }
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
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

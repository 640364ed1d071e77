use agora::arguments::ConsistencyMode;
use agora::lang::parse_wff;
use agora::protocol::ProtocolConfig;
use agora::script::{parse_script, Script};
use agora::trace::{emit_trace, export_json, validate_dialogue, ReplayOptions};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "agora", about = "Dialogue-game engine for qualified scientific argumentation", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Consistency {
    #[default]
    Syntactic,
    Classical,
}

#[derive(Args, Clone, Debug, Default)]
struct ProtocolFlags {
    /// Require counter-proposals to strictly lower the contested label,
    /// and forbid retracting proposals.
    #[arg(long = "strict-2-1")]
    strict: bool,
    /// How ground-set consistency is judged.
    #[arg(long, value_enum, default_value_t = Consistency::Syntactic)]
    consistency: Consistency,
}

impl ProtocolFlags {
    fn config(&self) -> ProtocolConfig {
        ProtocolConfig {
            strict: self.strict,
            consistency_mode: match self.consistency {
                Consistency::Syntactic => ConsistencyMode::Syntactic,
                Consistency::Classical => ConsistencyMode::Classical,
            },
            ..ProtocolConfig::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check every move of a script for legality.
    Validate {
        script: PathBuf,
        #[command(flatten)]
        flags: ProtocolFlags,
    },
    /// Replay a script, printing the deterministic trace.
    Replay {
        script: PathBuf,
        #[command(flatten)]
        flags: ProtocolFlags,
        /// Comma-separated wffs whose modalities the snapshot lines show.
        #[arg(long, value_delimiter = ',')]
        focus: Option<Vec<String>>,
        /// Emit a snapshot after every move, not only on change.
        #[arg(long)]
        verbose: bool,
        /// Stop at the first illegal move.
        #[arg(long = "halt-on-violation")]
        halt_on_violation: bool,
        /// Also write the script and trace as JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Ask about one wff in the final state: modality, valuation,
    /// provisional proof and attackers.
    Query {
        script: PathBuf,
        wff: String,
        #[command(flatten)]
        flags: ProtocolFlags,
    },
    /// Start an interactive session, optionally preloading a script.
    Repl {
        script: Option<PathBuf>,
        #[command(flatten)]
        flags: ProtocolFlags,
    },
    /// Verify that provisional proofs and the natural valuation agree on
    /// every tracked claim of the final state.
    CheckTheorem2 {
        script: PathBuf,
        #[command(flatten)]
        flags: ProtocolFlags,
    },
    /// Print the bundled example script.
    Example,
}

fn load_script(path: &PathBuf) -> Result<Script, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    parse_script(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn run() -> Result<ExitCode, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate { script, flags } => {
            let script = load_script(&script)?;
            let report = validate_dialogue(&script, flags.config());
            print!("{}", report.render());
            Ok(if report.is_clean() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Replay {
            script,
            flags,
            focus,
            verbose,
            halt_on_violation,
            json,
        } => {
            let script = load_script(&script)?;
            let focus = focus
                .map(|wffs| {
                    wffs.iter()
                        .map(|w| parse_wff(w).map_err(|e| format!("--focus {w}: {e}")))
                        .collect::<Result<Vec<_>, _>>()
                })
                .transpose()?;
            let options = ReplayOptions {
                config: flags.config(),
                focus,
                verbose,
                halt_on_violation,
            };
            let (trace, _) = emit_trace(&script, &options);
            print!("{}", trace.render());
            if let Some(path) = json {
                std::fs::write(&path, export_json(&script, &trace))
                    .map_err(|e| format!("{}: {e}", path.display()))?;
            }
            Ok(if trace.clean() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Query { script, wff, flags } => {
            let script = load_script(&script)?;
            let wff = parse_wff(&wff).map_err(|e| format!("{wff}: {e}"))?;
            let options = ReplayOptions {
                config: flags.config(),
                ..ReplayOptions::default()
            };
            let (trace, state) = emit_trace(&script, &options);
            println!("modality: {}", state.nature_modality(&wff));
            println!("valuation: {}", state.natural_valuation(&wff));
            match state.provisional_proof(&wff) {
                Some(e) => println!("provisional proof: yes (M{})", e.move_id),
                None => println!("provisional proof: no"),
            }
            let attacks = state.attackers(&wff);
            let rebuttals: Vec<String> =
                attacks.rebuttals.iter().map(|m| format!("M{m}")).collect();
            println!(
                "rebutted by: {}",
                if rebuttals.is_empty() { "-".to_string() } else { rebuttals.join(", ") }
            );
            for (arg, cutters) in &attacks.undercutters {
                let cutters: Vec<String> = cutters.iter().map(|m| format!("M{m}")).collect();
                println!(
                    "argument M{arg} undercut by: {}",
                    if cutters.is_empty() { "-".to_string() } else { cutters.join(", ") }
                );
            }
            Ok(if trace.clean() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Repl { script, flags } => {
            let script = script.as_ref().map(load_script).transpose()?;
            let stdin = io::stdin();
            let stdout = io::stdout();
            let outcome = agora::repl::run_repl(
                stdin.lock(),
                stdout.lock(),
                script,
                flags.config(),
            )
            .map_err(|e| e.to_string())?;
            Ok(if outcome.rejections == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::CheckTheorem2 { script, flags } => {
            let script = load_script(&script)?;
            let options = ReplayOptions {
                config: flags.config(),
                ..ReplayOptions::default()
            };
            let (trace, state) = emit_trace(&script, &options);
            let report = state.check_theorem2();
            println!(
                "checked: {} (skipped {} tautologies, {} obligations pending)",
                report.checked, report.skipped_tautologies, report.pending_obligations
            );
            for c in &report.counterexamples {
                println!(
                    "counterexample: {} has_proof={} valuation={}",
                    c.wff, c.has_provisional_proof, c.valuation
                );
            }
            println!(
                "verdict: {}",
                if report.holds() { "equivalence holds" } else { "equivalence fails" }
            );
            Ok(if report.holds() && trace.all_legal() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Example => {
            print!("{}", agora::EXAMPLE_SCRIPT);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

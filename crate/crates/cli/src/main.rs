use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qst_cli::caps::{resolve, CAPS_ENV};
use qst_cli::commands::{self, LogicOptions, SuiteSelector};
use qst_cli::error::{exit, CliError};
use qst_cli::input::{load_experiment, load_lattice};
use qst_cli::report::{Header, Report};
use qst_core::{Caps, Profile, SearchMode};

#[derive(Parser)]
#[command(
    name = "qst",
    version,
    about = "Finite checks for daseinisation, star negation and operator names"
)]
struct Cli {
    /// Cap overrides, e.g. `subobject_bits=24,valuations=100000`.
    #[arg(long, global = true)]
    caps: Option<String>,
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    out: Option<String>,
    /// Drop the trivial Boolean subalgebra from the context category.
    #[arg(long, global = true)]
    exclude_trivial: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a lattice and describe its context category.
    LatticeCheck {
        /// `boolean:n`, `mo:n` or a lattice TOML file.
        lattice: String,
    },
    /// Run the daseinisation law suites.
    Theorems {
        lattice: String,
        /// One of 2.3, 2.5, 2.6, 3.1, 3.2, 4.2, all.
        #[arg(long, default_value = "all")]
        which: String,
        /// Re-check the witnesses stored in a JSON report instead.
        #[arg(long)]
        replay: Option<String>,
    },
    /// Check the axiom and rule schemas under a semantics profile.
    Logic {
        lattice: String,
        /// star, heyting or coheyting.
        #[arg(long, default_value = "star")]
        profile: String,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Valuations per check in sampled mode.
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        /// Re-check the counterexamples stored in a JSON report instead.
        #[arg(long)]
        replay: Option<String>,
    },
    /// Run an operator experiment through the real-number bridge.
    Bridge { experiment: String },
}

fn read_report(path: &str) -> Result<Report, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.into(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Io {
        path: path.into(),
        message: e.to_string(),
    })
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let env = std::env::var(CAPS_ENV).ok();
    let caps: Caps = resolve(env.as_deref(), cli.caps.as_deref())?;
    let load = |source: &str| {
        let mut l = load_lattice(source, &caps)?;
        if cli.exclude_trivial {
            l.include_trivial = false;
        }
        Ok::<_, CliError>(l)
    };
    let (name, input, seed, (body, code)) = match &cli.command {
        Command::LatticeCheck { lattice } => (
            "lattice-check",
            lattice.clone(),
            None,
            commands::lattice_check(&load(lattice)?, &caps)?,
        ),
        Command::Theorems {
            lattice,
            which,
            replay,
        } => {
            let l = load(lattice)?;
            match replay {
                Some(path) => {
                    let r = read_report(path)?;
                    (
                        "replay",
                        lattice.clone(),
                        None,
                        commands::replay_report(&l, &r, path, &caps)?,
                    )
                }
                None => {
                    let sel = SuiteSelector::parse(which)?;
                    (
                        "theorems",
                        lattice.clone(),
                        None,
                        commands::theorems(&l, sel, &caps)?,
                    )
                }
            }
        }
        Command::Logic {
            lattice,
            profile,
            mode,
            seed,
            samples,
            replay,
        } => {
            let l = load(lattice)?;
            match replay {
                Some(path) => {
                    let r = read_report(path)?;
                    (
                        "replay",
                        lattice.clone(),
                        None,
                        commands::replay_report(&l, &r, path, &caps)?,
                    )
                }
                None => {
                    let opts = LogicOptions {
                        profile: Profile::by_name(profile)?,
                        mode: match mode {
                            Mode::Exhaustive => SearchMode::Exhaustive,
                            Mode::Sampled => SearchMode::Sampled {
                                seed: *seed,
                                count: *samples,
                            },
                        },
                    };
                    (
                        "logic",
                        lattice.clone(),
                        Some(*seed),
                        commands::logic(&l, &opts, &caps)?,
                    )
                }
            }
        }
        Command::Bridge { experiment } => {
            let mut x = load_experiment(experiment)?;
            if cli.exclude_trivial {
                x.include_trivial = false;
            }
            (
                "bridge",
                experiment.clone(),
                None,
                commands::bridge(&x, &caps)?,
            )
        }
    };
    let report = Report {
        header: Header::now(),
        command: name.into(),
        input,
        caps: (&caps).into(),
        seed,
        body,
    };
    if cli.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.render_text());
    }
    if let Some(path) = &cli.out {
        std::fs::write(path, report.to_json() + "\n").map_err(|e| CliError::Io {
            path: path.clone(),
            message: e.to_string(),
        })?;
    }
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    debug_assert!((exit::OK..=exit::CAP_EXCEEDED).contains(&code));
    ExitCode::from(code as u8)
}

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use modind::commands::{self, Flags};
use modind::{exit, parse_file, CliError, Options, Report};

#[derive(Parser)]
#[command(
    name = "modind",
    version,
    about = "Induced modules of restricted Lie algebras in characteristic p"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Field used by objects that do not name one.
    #[arg(long, global = true)]
    field: Option<String>,

    /// Seed for randomized internals.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write the machine-readable report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Print the machine-readable report instead of the text report.
    #[arg(long, global = true)]
    json: bool,

    /// Bind a parameter, e.g. `--param alpha=1` or `--param lambda=i+1`.
    #[arg(long = "param", global = true, value_name = "NAME=EXPR")]
    params: Vec<String>,

    /// Shorthand for `--param alpha=EXPR`.
    #[arg(long, global = true, value_name = "EXPR")]
    alpha: Option<String>,

    /// Shorthand for `--param beta=EXPR`.
    #[arg(long, global = true, value_name = "EXPR")]
    beta: Option<String>,

    /// Shorthand for `--param lambda=EXPR`.
    #[arg(long, global = true, value_name = "EXPR")]
    lambda: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse the document and run every validator.
    Validate { file: PathBuf },
    /// Print the action tables of an induced module.
    Induce {
        file: PathBuf,
        /// Induced module to print (or, with --via-envelope, the source module).
        #[arg(long)]
        module: Option<String>,
        /// Induce through a p-envelope as described in tasks.induce.via_envelope.
        #[arg(long)]
        via_envelope: bool,
        #[arg(long)]
        envelope: Option<String>,
    },
    /// Characters, clusters and the cluster decomposition of a module.
    Cluster {
        file: PathBuf,
        #[arg(long)]
        module: Option<String>,
    },
    /// A basis of the homomorphisms between two modules.
    Hom {
        file: PathBuf,
        #[arg(long)]
        source: Option<String>,
        #[arg(long)]
        target: Option<String>,
    },
    /// Check the induction and restriction adjunction against a target module.
    AdjointCheck {
        file: PathBuf,
        #[arg(long)]
        module: Option<String>,
        #[arg(long)]
        target: Option<String>,
    },
    /// Show and validate a p-envelope.
    Envelope {
        file: PathBuf,
        #[arg(long)]
        envelope: Option<String>,
    },
    /// Replay a built-in example (available: ex42).
    Demo { name: String },
}

fn options(g: &Global) -> Result<Options, CliError> {
    let mut params = Vec::new();
    for p in &g.params {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--param expects NAME=EXPR, got `{}`", p)))?;
        params.push((k.trim().to_string(), v.trim().to_string()));
    }
    for (name, v) in [
        ("alpha", &g.alpha),
        ("beta", &g.beta),
        ("lambda", &g.lambda),
    ] {
        if let Some(v) = v {
            params.push((name.to_string(), v.clone()));
        }
    }
    Ok(Options {
        params,
        default_field: g.field.clone(),
    })
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let opts = options(&cli.global)?;
    let mut flags = Flags {
        seed: cli.global.seed,
        ..Flags::default()
    };
    let load = |file: &Path| parse_file(file, &opts);
    match &cli.command {
        Command::Validate { file } => Ok(commands::validate(&load(file)?)),
        Command::Induce {
            file,
            module,
            via_envelope,
            envelope,
        } => {
            flags.module = module.clone();
            flags.via_envelope = *via_envelope;
            flags.envelope = envelope.clone();
            commands::induce(&load(file)?, &flags)
        }
        Command::Cluster { file, module } => {
            flags.module = module.clone();
            commands::cluster(&load(file)?, &flags)
        }
        Command::Hom {
            file,
            source,
            target,
        } => {
            flags.module = source.clone();
            flags.target = target.clone();
            commands::hom(&load(file)?, &flags)
        }
        Command::AdjointCheck {
            file,
            module,
            target,
        } => {
            flags.module = module.clone();
            flags.target = target.clone();
            commands::adjoint_check(&load(file)?, &flags)
        }
        Command::Envelope { file, envelope } => {
            flags.envelope = envelope.clone();
            commands::envelope(&load(file)?, &flags)
        }
        Command::Demo { name } => commands::demo(name, &opts, &flags),
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            for d in e.diagnostics() {
                eprintln!("error: {}", d);
            }
            if e.diagnostics().is_empty() {
                eprintln!("error: {}", e);
            }
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let json = serde_json::to_string_pretty(&report.to_json()).expect("report serializes") + "\n";
    if let Some(path) = &cli.global.out {
        if let Err(source) = std::fs::write(path, &json) {
            let e = CliError::Io {
                path: path.clone(),
                source,
            };
            eprintln!("error: {}", e);
            return ExitCode::from(exit::IO as u8);
        }
    }
    if cli.global.json {
        print!("{}", json);
    } else {
        print!("{}", report.render_text());
    }
    log::debug!(
        "{} finished with exit status {}",
        report.command,
        report.exit_code()
    );
    ExitCode::from(report.exit_code() as u8)
}

//! Command-line front end: computes cohomology, Toomer invariants and long
//! exact sequences of Sullivan models, and runs the structural checks.
//!
//! Exit codes: 0 pass, 2 usage, 3 invalid model, 4 failed check, 5 internal error.

mod commands;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use commands::{Failure, ModelArgs, RandomArgs, Source};
use report::{render_json, render_text, Document, Status};

#[derive(Parser, Debug)]
#[command(name = "sullivan", version, about = "Exact computations with minimal Sullivan algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Leave the `generated_at` field out of the report.
    #[arg(long, global = true)]
    no_timestamp: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate a model; report its shape and ellipticity.
    Validate {
        #[command(flatten)]
        source: ModelArgs,
        #[command(flatten)]
        random: RandomArgs,
    },
    /// Betti numbers up to a degree.
    Cohomology {
        #[command(flatten)]
        source: ModelArgs,
        #[command(flatten)]
        random: RandomArgs,
        /// Largest degree to compute (default: formal dimension + 2).
        #[arg(long)]
        window: Option<u32>,
    },
    /// Cohomology split by word length, with the n_k and N_k strands.
    Bigraded {
        #[command(flatten)]
        source: ModelArgs,
        #[command(flatten)]
        random: RandomArgs,
    },
    /// Toomer invariant, its spectrum and per-class values.
    Toomer {
        #[command(flatten)]
        source: ModelArgs,
        #[command(flatten)]
        random: RandomArgs,
    },
    /// Long exact sequence for an odd cocycle generator.
    Wang {
        #[command(flatten)]
        source: ModelArgs,
        #[command(flatten)]
        random: RandomArgs,
        /// The odd cocycle generator to split off.
        #[arg(long = "gen")]
        generator: String,
        /// Largest total degree checked.
        #[arg(long)]
        window: Option<u32>,
    },
    /// Long exact sequence for an even cocycle generator.
    Gysin {
        #[command(flatten)]
        source: ModelArgs,
        #[command(flatten)]
        random: RandomArgs,
        /// The even cocycle generator to split off.
        #[arg(long = "gen")]
        generator: String,
        /// Largest total degree checked.
        #[arg(long)]
        window: Option<u32>,
    },
    /// Run one structural check by id, or `all`.
    Verify {
        /// homogeneous, duality, odd-cocycle, total-dimension, length-bound,
        /// nilmanifold, truncated-or-two, or all.
        check: String,
        #[command(flatten)]
        source: ModelArgs,
        #[command(flatten)]
        random: RandomArgs,
    },
    /// Look for gaps in the Toomer spectrum over seeded random models.
    GapScan {
        /// First seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of consecutive seeds.
        #[arg(long, default_value_t = 20)]
        count: u64,
        #[command(flatten)]
        random: RandomArgs,
    },
    /// Built-in models.
    Library {
        #[command(subcommand)]
        action: LibraryAction,
    },
}

#[derive(Subcommand, Debug)]
enum LibraryAction {
    /// List the built-in models.
    List,
    /// Print a model description.
    Emit { name: String },
}

fn run(command: &Command) -> Result<Document, Failure> {
    let load = |source: &ModelArgs, random: &RandomArgs| Source::load(source, random);
    match command {
        Command::Validate { source, random } => commands::validate(&load(source, random)?),
        Command::Cohomology { source, random, window } => commands::cohomology(&load(source, random)?, *window),
        Command::Bigraded { source, random } => commands::bigraded(&load(source, random)?),
        Command::Toomer { source, random } => commands::toomer(&load(source, random)?),
        Command::Wang {
            source,
            random,
            generator,
            window,
        } => commands::sequence(&load(source, random)?, true, generator, *window),
        Command::Gysin {
            source,
            random,
            generator,
            window,
        } => commands::sequence(&load(source, random)?, false, generator, *window),
        Command::Verify { check, source, random } => commands::verify_command(&load(source, random)?, check),
        Command::GapScan { seed, count, random } => commands::gap_scan(*seed, *count, random),
        Command::Library { action } => match action {
            LibraryAction::List => Ok(commands::library_list()),
            LibraryAction::Emit { name } => commands::library_emit(name),
        },
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Validate { .. } => "validate",
        Command::Cohomology { .. } => "cohomology",
        Command::Bigraded { .. } => "bigraded",
        Command::Toomer { .. } => "toomer",
        Command::Wang { .. } => "wang",
        Command::Gysin { .. } => "gysin",
        Command::Verify { .. } => "verify",
        Command::GapScan { .. } => "gap-scan",
        Command::Library { .. } => "library",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let (document, code) = match run(&cli.command) {
        Ok(doc) => {
            let code = doc.status.exit_code();
            (doc, code)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            let status = match failure {
                Failure::Usage(_) => Status::Usage,
                Failure::Invalid(_) => Status::Invalid,
                Failure::Internal(_) => Status::Error,
            };
            let doc = Document::new(
                command_name(&cli.command),
                status,
                json!({"error": failure.message(), "exit_code": failure.exit_code()}),
            );
            (doc, failure.exit_code())
        }
    };
    let tree = document.to_value(!cli.no_timestamp);
    let rendered = match cli.format {
        Format::Json => render_json(&tree),
        // The model description itself, so it can be piped into a file.
        Format::Text if code == 0 && matches!(cli.command, Command::Library { action: LibraryAction::Emit { .. } }) => {
            tree["result"]["text"].as_str().unwrap_or_default().to_string()
        }
        Format::Text => render_text(&tree),
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(5);
            }
        }
        None => print!("{rendered}"),
    }
    ExitCode::from(code)
}

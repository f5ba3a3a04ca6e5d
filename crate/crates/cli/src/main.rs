//! `deltacat`: check, construct and enumerate delta lenses and cofunctors
//! stored as JSON files.
//!
//! Exit codes: 0 when every check passes, 1 when a law fails (a witness is
//! printed), 2 when the input is malformed.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use deltacat::oracle::EnumBounds;

use crate::commands::Ctx;
use crate::report::Report;

#[derive(Debug, Parser)]
#[command(name = "deltacat", version, about = "Check, construct and enumerate delta lenses over finite categories")]
struct Cli {
    /// Print every counterexample, not just the first per law.
    #[arg(long, global = true)]
    witness: bool,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Directory of `<name>.cat.json` files used instead of the built-in fixtures.
    #[arg(long, global = true, env = "DELTACAT_FIXTURES")]
    fixtures: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate any file and report every law checked.
    Check { file: PathBuf },
    /// Apply the Get of a lens to a morphism.
    Get { lens: PathBuf, morphism: String },
    /// Apply the Put of a lens at an object to a base morphism.
    Put { lens: PathBuf, object: String, morphism: String },
    /// Build the cofree lens on a cofunctor (or on a lens's cofunctor).
    Cofree {
        file: PathBuf,
        /// Where to write the cofree lens (`.lens.json`).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split a lens into its unit and the cofree lens.
    Factorize {
        lens: PathBuf,
        /// Directory for `first.fun.json` and `second.lens.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Coalgebras for the comonad on cofunctors.
    Coalgebra {
        #[command(subcommand)]
        action: CoalgebraCommand,
    },
    /// Coproduct of two lenses or two cofunctors over the same base.
    Coproduct {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check both triangle identities of the adjunction.
    Triangles { file: PathBuf },
    /// Check counitality and coassociativity of the comonad.
    ComonadLaws { file: PathBuf },
    /// Count functors, cofunctors, lenses and coalgebras by brute force.
    Enumerate {
        /// Source category: a fixture name or a `.cat.json` path.
        source: Option<String>,
        /// Base category: a fixture name or a `.cat.json` path.
        base: Option<String>,
        /// Largest categories to enumerate over, as `objects,morphisms`.
        #[arg(long, value_parser = parse_bounds, default_value = "3,9")]
        bounds: EnumBounds,
        /// Directory to write every enumerated value into.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum CoalgebraCommand {
    /// Check the counit and comultiplication laws.
    Verify { file: PathBuf },
    /// The coalgebra presenting a lens.
    FromLens {
        lens: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The lens presented by a coalgebra.
    ToLens {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_bounds(s: &str) -> Result<EnumBounds, String> {
    let (o, m) = s.split_once(',').ok_or("expected `objects,morphisms`")?;
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("`{x}`: {e}"));
    Ok(EnumBounds { max_objects: parse(o)?, max_morphisms: parse(m)? })
}

fn run(cli: &Cli) -> deltacat::Result<Report> {
    let ctx = Ctx { all_witnesses: cli.witness, fixtures: cli.fixtures.clone() };
    match &cli.command {
        Command::Check { file } => ctx.check(file),
        Command::Get { lens, morphism } => ctx.get(lens, morphism),
        Command::Put { lens, object, morphism } => ctx.put(lens, object, morphism),
        Command::Cofree { file, out } => ctx.cofree(file, out.as_deref()),
        Command::Factorize { lens, out } => ctx.factorize(lens, out.as_deref()),
        Command::Coalgebra { action } => match action {
            CoalgebraCommand::Verify { file } => ctx.coalgebra_verify(file),
            CoalgebraCommand::FromLens { lens, out } => ctx.coalgebra_from_lens(lens, out.as_deref()),
            CoalgebraCommand::ToLens { file, out } => ctx.coalgebra_to_lens(file, out.as_deref()),
        },
        Command::Coproduct { left, right, out } => ctx.coproduct(left, right, out.as_deref()),
        Command::Triangles { file } => ctx.triangles(file),
        Command::ComonadLaws { file } => ctx.comonad_laws(file),
        Command::Enumerate { source, base, bounds, out } => ctx.enumerate(source.as_deref(), base.as_deref(), *bounds, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = run(&cli).unwrap_or_else(|e| Report::from_error(&e));
    match cli.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
    report.status.exit_code()
}

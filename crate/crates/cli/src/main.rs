use std::path::PathBuf;
use std::process::ExitCode;

use antimorph::morphism::DEFAULT_BOUND;
use antimorph::runner::{self, AuditOp, CatOp, Format, Instance, RunConfig, Task, DEFAULT_SEED, VERIFY_IDS};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exhaustive checks of anti-homomorphisms over a corpus of finite groups,
/// rings, semilinear maps and categories.
#[derive(Parser, Debug)]
#[command(name = "antimorph", version)]
struct Cli {
    /// Corpus file or directory; repeatable. Defaults to the bundled corpus.
    #[arg(long, global = true)]
    corpus: Vec<PathBuf>,
    /// Largest number of candidates any enumeration may scan.
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND, value_parser = clap::value_parser!(u64).range(1..))]
    bound: u64,
    /// Seed for the random semilinear instances.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Record wall-clock time per task.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Text,
    Records,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate every corpus file.
    Validate,
    /// Enumerate Hom(A, B) for every corpus pair.
    EnumHoms,
    /// Enumerate An(A, B) for every corpus pair.
    EnumAntihoms,
    /// Verify theorems by id; with no id the selection is empty.
    Verify(VerifyArgs),
    /// Category engine checks.
    Cat {
        #[arg(value_enum)]
        op: CatArg,
    },
    /// Audits of claims about pointwise structure.
    Audit {
        #[arg(value_enum)]
        op: AuditArg,
    },
    /// Everything, with built-in instances.
    Report,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(VERIFY_IDS))]
    ids: Vec<String>,
    /// Group name or file.
    #[arg(long)]
    group: Option<String>,
    /// Ring name or file.
    #[arg(long)]
    ring: Option<String>,
    /// Normal subgroup: members `0,1,2`, generators `<1>`, or a group name.
    #[arg(long)]
    normal: Option<String>,
    /// Subgroup `A` of the third anti-isomorphism theorem.
    #[arg(long)]
    subgroup: Option<String>,
    /// Inner normal subgroup `C` of the second anti-isomorphism theorem.
    #[arg(long)]
    inner: Option<String>,
    /// Two-sided ideal as members, `0,2`.
    #[arg(long)]
    ideal: Option<String>,
    /// Map name or file.
    #[arg(long)]
    map: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CatArg {
    Caf,
    Fca,
    Anti,
    Assoc,
    Equiv,
    Products,
    Adjunction,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AuditArg {
    PointwiseRing,
    NaturalAnMap,
}

impl Command {
    fn into_tasks(self) -> Vec<Task> {
        match self {
            Command::Validate => vec![Task::Validate],
            Command::EnumHoms => vec![Task::EnumHoms],
            Command::EnumAntihoms => vec![Task::EnumAntihoms],
            Command::Verify(v) => {
                if v.ids.is_empty() {
                    return Vec::new();
                }
                let instance = Instance {
                    group: v.group,
                    ring: v.ring,
                    normal: v.normal,
                    subgroup: v.subgroup,
                    inner: v.inner,
                    ideal: v.ideal,
                    map: v.map,
                };
                vec![Task::Verify { ids: v.ids, instance }]
            }
            Command::Cat { op } => vec![Task::Cat(match op {
                CatArg::Caf => CatOp::Caf,
                CatArg::Fca => CatOp::Fca,
                CatArg::Anti => CatOp::Anti,
                CatArg::Assoc => CatOp::Assoc,
                CatArg::Equiv => CatOp::Equiv,
                CatArg::Products => CatOp::Products,
                CatArg::Adjunction => CatOp::Adjunction,
            })],
            Command::Audit { op } => vec![Task::Audit(match op {
                AuditArg::PointwiseRing => AuditOp::PointwiseRing,
                AuditArg::NaturalAnMap => AuditOp::NaturalAnMap,
            })],
            Command::Report => vec![Task::Report],
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Records => Format::Records,
    };
    let config = RunConfig {
        corpus: cli.corpus,
        bound: cli.bound,
        seed: cli.seed,
        format,
        tasks: cli.command.into_tasks(),
        timing: cli.timing,
    };
    let bundle = runner::run(&config);
    print!("{}", runner::render(&bundle, config.format));
    if bundle.pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

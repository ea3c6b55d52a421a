//! `freesem`: command-line front end for the finite-model workbench.
//!
//! Exit codes: 0 every check passed, 1 a check failed, 2 input or parse
//! error, 3 capacity exceeded.

mod commands;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use freesem::Caps;

use report::{ErrorPayload, RunReport};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Lib(#[from] freesem::Error),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input",
            CliError::Lib(e) => match e {
                freesem::Error::CapacityExceeded { .. } | freesem::Error::EnumerationCapExceeded { .. } => {
                    "capacity"
                }
                freesem::Error::Syntax { .. } => "syntax",
                freesem::Error::InternalLawViolation(_) => "internal",
                _ => "input",
            },
        }
    }

    fn exit_code(&self) -> u8 {
        match self.kind() {
            "capacity" => 3,
            "internal" => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "freesem", version, about = "Finite-model workbench for convolution, Kan and frame semantics")]
pub struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Leave timing out of the report.
    #[arg(long, global = true)]
    no_timing: bool,
    /// Largest morphism count accepted for input categories.
    #[arg(long, global = true, default_value_t = Caps::default().max_morphisms)]
    max_morphisms: usize,
    /// Largest number of solutions or search nodes an enumeration may use.
    #[arg(long, global = true, default_value_t = Caps::default().max_enum)]
    max_enum: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum DialectArg {
    Prop,
    Lambek,
    Full,
}

impl From<DialectArg> for freesem::syntax::Dialect {
    fn from(d: DialectArg) -> Self {
        match d {
            DialectArg::Prop => freesem::syntax::Dialect::Prop,
            DialectArg::Lambek => freesem::syntax::Dialect::Lambek,
            DialectArg::Full => freesem::syntax::Dialect::Full,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Debug, Args)]
pub struct KripkeArgs {
    /// Kripke frame: `{"size": N, "leq": [[p, q], ...]}`.
    #[arg(long)]
    frame: PathBuf,
    /// Reflexive-transitive closure of `leq` before validation.
    #[arg(long)]
    close: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a formula and print it in canonical form.
    Parse {
        formula: String,
        #[arg(long, value_enum, default_value = "full")]
        dialect: DialectArg,
    },
    /// Points of a Kripke frame forcing a formula.
    EvalKripke {
        #[command(flatten)]
        frame: KripkeArgs,
        /// Valuation: `{"name": [points], ...}`.
        #[arg(long)]
        valuation: PathBuf,
        formula: String,
    },
    /// Truth set of a formula over a ternary frame.
    EvalTernary {
        /// Ternary frame: `{"size": N, "triples": [[x, a, b], ...]}`.
        #[arg(long)]
        frame: PathBuf,
        #[arg(long)]
        valuation: PathBuf,
        formula: String,
    },
    /// Partial-order laws of a Kripke frame, and up-closure of a valuation.
    CheckFrame {
        #[command(flatten)]
        frame: KripkeArgs,
        #[arg(long)]
        valuation: Option<PathBuf>,
    },
    /// Algebraic laws.
    #[command(subcommand)]
    Laws(LawsCommand),
    /// Forcing against the ternary semantics of both translations.
    KripkeEquivalence {
        #[command(flatten)]
        frame: KripkeArgs,
        #[arg(long)]
        valuation: PathBuf,
        formula: String,
    },
    /// Semantic consequence over a satisfaction matrix.
    Consequence {
        /// `{"models": [..], "sentences": [..], "matrix": [[bool, ..], ..]}`.
        #[arg(long)]
        relation: PathBuf,
        /// Premise sentence names.
        #[arg(long = "premise")]
        premises: Vec<String>,
        /// Check `premises ⊨ goal`; without it the closure is printed.
        #[arg(long)]
        goal: Option<String>,
    },
    /// The consequence preorder and extension compatibility.
    Kleisli {
        #[arg(long)]
        relation: PathBuf,
    },
    /// Day convolution.
    #[command(subcommand)]
    Day(DayCommand),
    /// Kan liftings, extensions and adjunctions.
    #[command(subcommand)]
    Kan(KanCommand),
    /// Finite categories, coends and ends.
    #[command(subcommand)]
    Cat(CatCommand),
}

#[derive(Debug, Subcommand)]
pub enum LawsCommand {
    /// Both residuation equivalences over all triples of subsets.
    Residuation {
        #[arg(long)]
        frame: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct BaseArg {
    /// `terminal`, `z2`, `chain-min:N`, or a monoidal or promonoidal JSON file.
    #[arg(long)]
    base: String,
}

#[derive(Debug, Subcommand)]
pub enum DayCommand {
    /// `F ⊗ G`.
    Tensor {
        #[command(flatten)]
        base: BaseArg,
        /// Presheaf: `{"sizes": [..], "actions": [[..], ..]}`.
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
    },
    /// `F ⊸ G` on the chosen side.
    Exponent {
        #[command(flatten)]
        base: BaseArg,
        #[arg(long, value_enum, default_value = "left")]
        side: SideArg,
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
    },
    /// `J ⊗ F ≅ F ≅ F ⊗ J`.
    CheckUnits {
        #[command(flatten)]
        base: BaseArg,
        #[arg(long)]
        f: PathBuf,
    },
    /// Representables convolve to the representable of the tensor.
    CheckYoneda {
        #[command(flatten)]
        base: BaseArg,
    },
    /// Both residuation bijections for `H`, `F`, `G`.
    CheckClosed {
        #[command(flatten)]
        base: BaseArg,
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
    },
    /// Pointwise convolution of indexed families against the indexed structure.
    IndexedCheck {
        #[command(flatten)]
        base: BaseArg,
        /// One presheaf file per index, repeated.
        #[arg(long)]
        f: Vec<PathBuf>,
        #[arg(long)]
        g: Vec<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum KanCommand {
    /// Absolute lifting and pointwise extension for `(y, f, g, η)`.
    CheckTriangle {
        #[arg(long)]
        input: PathBuf,
    },
    /// Naturality of unit and counit and the triangle identities.
    CheckAdjunction {
        #[arg(long)]
        input: PathBuf,
    },
    /// A right adjoint of a functor, if one exists.
    FindAdjoint {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatCommand {
    /// Category laws of a composition table.
    Validate {
        #[arg(long)]
        category: PathBuf,
    },
    /// The coend of a bifunctor.
    Coend {
        #[arg(long)]
        bifunctor: PathBuf,
    },
    /// The end of a bifunctor.
    End {
        #[arg(long)]
        bifunctor: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = Caps {
        max_morphisms: cli.max_morphisms,
        max_enum: cli.max_enum,
        ..Caps::default()
    };
    let mut report = RunReport::new(std::env::args().skip(1).collect());
    let start = Instant::now();
    let outcome = commands::run(&cli.command, &caps, &mut report);
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    let mut code = 0;
    if let Err(e) = outcome {
        code = e.exit_code();
        report.error = Some(ErrorPayload {
            kind: e.kind(),
            message: e.to_string(),
        });
    }
    report.finish();
    if code == 0 && report.status == report::Status::Fail {
        code = 1;
    }
    if cli.json {
        if !cli.no_timing {
            report.timing_ms = Some(elapsed);
        }
        print!("{}", report.render_json());
    } else {
        print!("{}", report.render_text());
        if !cli.no_timing {
            eprintln!("time: {elapsed:.3} ms");
        }
    }
    ExitCode::from(code)
}

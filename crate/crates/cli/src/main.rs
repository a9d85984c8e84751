mod cmd;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rdpk3::reproduce::SCHEMA_VERSION;

#[derive(Parser)]
#[command(name = "rdpk3", version, about = "Witt vectors, local cohomology of RDPs, K3 heights and lattice gluing")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Witt vector structure polynomials and arithmetic.
    #[command(subcommand)]
    Witt(WittCmd),
    /// Catalog charts of RDPs and quotient maps.
    #[command(subcommand)]
    Chart(ChartCmd),
    /// Local cohomology classes and Frobenius checks.
    #[command(subcommand)]
    Localcoh(CohCmd),
    /// Heights of RDP K3 surfaces.
    #[command(subcommand)]
    Height(HeightCmd),
    /// Discriminant forms, gluing and overlattices.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Run the check suite.
    Reproduce(ReproduceArgs),
}

#[derive(Subcommand)]
pub enum WittCmd {
    /// Structure polynomials over F_p.
    Table {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        /// Restrict to one operation: sum, product, difference, negation.
        #[arg(long)]
        op: Option<String>,
    },
    /// Evaluate an operation on Witt vectors with polynomial components.
    Eval {
        #[arg(long)]
        p: u32,
        /// Expected length; inferred from `--lhs` when omitted.
        #[arg(long)]
        n: Option<usize>,
        /// add, sub, mul, neg, frob, ver, res.
        #[arg(long)]
        op: String,
        /// e.g. "(a, 0)"
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: Option<String>,
    },
}

#[derive(Subcommand)]
pub enum ChartCmd {
    /// Show a chart: `2:D12:3`, `2:D8:0:alt`, or a quotient key `quot:2:alpha:D4`.
    Show { key: String },
    /// List catalog keys with N up to the bound.
    List {
        #[arg(long, default_value_t = 21)]
        max_n: u32,
    },
}

#[derive(Subcommand)]
pub enum CohCmd {
    /// Canonical form of a class `[(a_0, ..., a_{n-1})]`.
    Reduce {
        #[arg(long)]
        chart: String,
        /// Components in x, y, z, e.g. "(x^-1*y^-1*z, 0)".
        #[arg(long)]
        vec: String,
    },
    /// Frobenius image of `[x^-1 y^-j z]` in `W_n`.
    Frob {
        #[arg(long)]
        chart: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        j: u32,
    },
    /// Run one check, or the whole admissible sweep with `--all`.
    Verify {
        /// frob-d, frob-e8-i2, frob-e, quotient, basis.
        #[arg(long, required_unless_present = "all")]
        check: Option<String>,
        #[arg(long)]
        chart: Option<String>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        j: Option<u32>,
        /// Coindex for frob-e8-i2.
        #[arg(long)]
        r: Option<u32>,
        /// Quotient case: index 1-5 or a key such as `quot:3:mu:A2`.
        #[arg(long)]
        case: Option<String>,
        /// Parameter of an indexed quotient case (p for case 1, n for case 2).
        #[arg(long)]
        param: Option<u32>,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 21)]
        max_n: u32,
    },
}

#[derive(Subcommand)]
pub enum HeightCmd {
    /// Height forced by an RDP `p:S:r`, and whether it occurs on a K3.
    FromRdp { key: String },
    /// Point counts of a surface model, with the height test when the fields form a tower.
    Count {
        #[arg(long)]
        model: std::path::PathBuf,
        /// Field sizes, e.g. 2,4,8.
        #[arg(long, value_delimiter = ',')]
        q: Vec<u32>,
    },
    /// Ordinarity of a weighted hypersurface.
    Ordinary {
        /// Four weights, e.g. 1,1,1,3.
        #[arg(long, value_delimiter = ',')]
        weights: Vec<u64>,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        f: String,
        /// Variable names; defaults to x,y,z,w.
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
    },
    /// Height of a quotient map from the singularities of the quotient.
    Quotient {
        /// mu, alpha or etale.
        #[arg(long = "group", short = 'G')]
        group: String,
        #[arg(long)]
        p: u32,
        /// e.g. "2*D4:0 + A2"
        #[arg(long)]
        sing: String,
    },
}

#[derive(Subcommand)]
pub enum LatticeCmd {
    /// Discriminant form of a lattice.
    Disc(LatticeInput),
    /// Glue two lattices along an anti-isometry (JSON spec file).
    Glue {
        #[arg(long)]
        spec: std::path::PathBuf,
    },
    /// Search for a unimodular overlattice.
    Overlattice(LatticeInput),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
pub struct LatticeInput {
    /// Gram matrix as JSON, e.g. "[[2,1],[1,2]]".
    #[arg(long)]
    gram: Option<String>,
    /// Negative definite root lattice, e.g. D8.
    #[arg(long)]
    dynkin: Option<String>,
}

#[derive(Args)]
pub struct ReproduceArgs {
    /// Group names or id prefixes (repeatable).
    #[arg(long)]
    only: Vec<String>,
    /// Fewer random trials in the property checks.
    #[arg(long)]
    quick: bool,
    #[arg(long, default_value_t = 21)]
    max_n: u32,
}

/// What a command produced.
pub struct Outcome {
    pub result: Value,
    pub text: String,
    pub ok: bool,
}

impl Outcome {
    pub fn ok(result: Value, text: String) -> Self {
        Outcome { result, text, ok: true }
    }
}

pub type CmdResult = Result<Outcome, Box<dyn std::error::Error>>;

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Witt(WittCmd::Table { .. }) => "witt table",
        Command::Witt(WittCmd::Eval { .. }) => "witt eval",
        Command::Chart(ChartCmd::Show { .. }) => "chart show",
        Command::Chart(ChartCmd::List { .. }) => "chart list",
        Command::Localcoh(CohCmd::Reduce { .. }) => "localcoh reduce",
        Command::Localcoh(CohCmd::Frob { .. }) => "localcoh frob",
        Command::Localcoh(CohCmd::Verify { .. }) => "localcoh verify",
        Command::Height(HeightCmd::FromRdp { .. }) => "height from-rdp",
        Command::Height(HeightCmd::Count { .. }) => "height count",
        Command::Height(HeightCmd::Ordinary { .. }) => "height ordinary",
        Command::Height(HeightCmd::Quotient { .. }) => "height quotient",
        Command::Lattice(LatticeCmd::Disc(_)) => "lattice disc",
        Command::Lattice(LatticeCmd::Glue { .. }) => "lattice glue",
        Command::Lattice(LatticeCmd::Overlattice(_)) => "lattice overlattice",
        Command::Reproduce(_) => "reproduce",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    let out = match cli.command {
        Command::Witt(c) => cmd::witt(c),
        Command::Chart(c) => cmd::chart(c),
        Command::Localcoh(c) => cmd::localcoh(c),
        Command::Height(c) => cmd::height(c),
        Command::Lattice(c) => cmd::lattice(c),
        Command::Reproduce(a) => cmd::reproduce(a, cli.seed),
    };
    match out {
        Ok(o) => {
            match cli.format {
                Format::Json => {
                    let mut doc = json!({ "schema_version": SCHEMA_VERSION, "command": name, "ok": o.ok });
                    doc["result"] = o.result;
                    println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
                }
                Format::Text => print!("{}", o.text),
            }
            if o.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if cli.format == Format::Json {
                let doc =
                    json!({ "schema_version": SCHEMA_VERSION, "command": name, "ok": false, "error": e.to_string() });
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

//! `goodint`: classify integers, inspect abelian groups, count fixed sets and
//! average hull dimensions from the command line.
//!
//! Exit codes: 0 success, 2 usage or domain error, 3 verification mismatch.

mod commands;
mod envelope;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::envelope::Failure;

#[derive(Parser, Debug)]
#[command(name = "goodint", version, about, propagate_version = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify ℓ (or a range of ℓ) as good, oddly-good, evenly-good or bad for (a, b).
    ///
    /// CSV columns, in order: l, class, witness, ord, v2ord. `witness` is the
    /// least k with ℓ | a^k + b^k, `ord` is ord_ℓ(a/b) and `v2ord` its 2-adic
    /// valuation; a field is empty when undefined.
    Classify(ClassifyArgs),
    /// Order, exponent and element-order counts of a finite abelian group.
    Group(GroupArgs),
    /// Size of the fixed set Q (Euclidean) or R (Hermitian).
    Fixedset(FixedsetArgs),
    /// Average hull dimension of abelian codes in F_q[A × Z_{p^k}].
    Hullavg(HullavgArgs),
    /// Run the invariant sweeps.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Serialize)]
struct ClassifyArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: i64,
    #[arg(long, allow_hyphen_values = true)]
    b: i64,
    /// Single modulus.
    #[arg(long, conflicts_with_all = ["from", "to"], required_unless_present = "from")]
    l: Option<u64>,
    /// First modulus of an inclusive range.
    #[arg(long, requires = "to")]
    from: Option<u64>,
    /// Last modulus of an inclusive range.
    #[arg(long, requires = "from")]
    to: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug, Serialize)]
struct GroupArgs {
    /// Cyclic orders, e.g. `2,4,3` for Z_2 × Z_4 × Z_3.
    #[arg(long)]
    factors: String,
    /// Table to report.
    #[arg(value_enum, default_value_t = GroupView::Orders)]
    view: GroupView,
}

#[derive(Args, Debug, Serialize)]
struct FixedsetArgs {
    #[arg(long)]
    q: u64,
    /// Group literal, e.g. `2,4,3`.
    #[arg(long)]
    group: String,
    #[arg(long, value_enum)]
    inner: Inner,
    #[arg(long, value_enum, default_value_t = Method::All)]
    method: Method,
}

#[derive(Args, Debug, Serialize)]
struct HullavgArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    nu: u32,
    #[arg(long)]
    k: u32,
    /// Group literal, e.g. `2,4,3`.
    #[arg(long)]
    group: String,
    #[arg(long, value_enum)]
    inner: Inner,
    /// Also enumerate every code class and require exact agreement.
    #[arg(long)]
    verify: bool,
}

#[derive(Args, Debug, Serialize)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::Small)]
    suite: SuiteArg,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
enum GroupView {
    Orders,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
enum Inner {
    #[value(name = "E", alias = "e")]
    E,
    #[value(name = "H", alias = "h")]
    H,
}

impl From<Inner> for goodint::InnerProduct {
    fn from(i: Inner) -> Self {
        match i {
            Inner::E => goodint::InnerProduct::Euclidean,
            Inner::H => goodint::InnerProduct::Hermitian,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Method {
    Direct,
    Sum,
    Closed,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
enum SuiteArg {
    Small,
    Full,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Classify(args) => commands::classify(args),
        Command::Group(args) => commands::group(args),
        Command::Fixedset(args) => commands::fixedset(args),
        Command::Hullavg(args) => commands::hullavg(args),
        Command::Verify(args) => commands::verify(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(3)
        }
        // A closed downstream pipe (e.g. `| head`) is not an error.
        Err(Failure::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

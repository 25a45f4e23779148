use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

const FAMILIES: [&str; 7] = ["fibonacci", "fibpoly", "hilbert", "a", "b", "c", "d"];
const SIGN_VARIANTS: [&str; 3] = ["printed_k", "variant_j", "corrected"];
const READINGS: [&str; 3] = ["printed", "printed_free_i", "amended"];

#[derive(Parser, Debug)]
#[command(name = "filbert", version, about = "Exact inverses of reciprocal Hankel matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Emit the reciprocal Hankel matrix R_n of a family
    Gen(GenArgs),
    /// Emit the inverse, from the closed form or by elimination
    Inv(InvArgs),
    /// Check that a closed-form (or supplied) inverse really is the inverse
    Verify(VerifyArgs),
    /// Run one of the conjecture scans
    Scan(ScanArgs),
    /// Check proof certificates on a parameter grid
    Certify(CertifyArgs),
    /// Time closed-form assembly against elimination and compare the results
    Bench(BenchArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Closed,
    Bareiss,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Conjecture {
    Integrality,
    Fibonomial,
}

#[derive(Args, Debug)]
pub struct MatrixArgs {
    #[arg(long, value_parser = FAMILIES)]
    pub family: String,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub r: Option<u32>,
    #[arg(long, value_parser = SIGN_VARIANTS)]
    pub sign_variant: Option<String>,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of standard output
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    /// Evaluation point for fibpoly
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<i64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct InvArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    #[arg(long, value_enum, default_value_t = Method::Closed)]
    pub method: Method,
    /// Evaluation point for fibpoly; required with --method bareiss
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<i64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_parser = FAMILIES, required_unless_present = "input", conflicts_with = "input")]
    pub family: Option<String>,
    #[arg(
        long,
        value_parser = clap::value_parser!(u64).range(1..),
        required_unless_present = "input",
        conflicts_with = "input"
    )]
    pub n: Option<u64>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..), conflicts_with = "input")]
    pub r: Option<u32>,
    #[arg(long, value_parser = SIGN_VARIANTS, conflicts_with = "input")]
    pub sign_variant: Option<String>,
    /// A matrix document as written by `inv`
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long, value_enum)]
    pub conjecture: Conjecture,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n_max: u64,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub r_max: u32,
    /// Only for the fibonomial scan
    #[arg(long, value_parser = SIGN_VARIANTS)]
    pub sign_variant: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    /// Certificate name, or `all`
    #[arg(long, default_value = "all")]
    pub cert: String,
    #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
    pub n_max: i64,
    #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
    pub r_max: Option<i64>,
    #[arg(long, value_delimiter = ',', default_value = "1,2,3", allow_hyphen_values = true)]
    pub x: Vec<i64>,
    #[arg(long, value_parser = READINGS)]
    pub reading: Option<String>,
    /// Negate the first term of every relation
    #[arg(long)]
    pub mutate: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    /// Evaluation point, required for fibpoly
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<i64>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

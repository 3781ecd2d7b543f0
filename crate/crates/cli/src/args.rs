use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qseries::aeb::FkForm;

#[derive(Parser, Debug)]
#[command(
    name = "qpos",
    version,
    about = "Expand, verify and certify q-series positivity"
)]
pub struct Cli {
    /// Worker threads for independent checks (0 = one per core).
    #[arg(long, global = true, env = "QPOS_WORKERS", default_value_t = 0)]
    pub workers: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the coefficients of a series.
    Expand(ExpandArgs),
    /// Check a named identity coefficient by coefficient.
    Verify(VerifyArgs),
    /// Check strict positivity of a series family.
    Positivity(PositivityArgs),
    /// Check a decomposition and optionally write a certificate.
    Decompose(DecomposeArgs),
    /// Run the acceptance battery.
    Suite(SuiteArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct Params {
    #[arg(long, value_parser = parse_span)]
    pub k: Option<Span>,
    #[arg(long, value_parser = parse_span)]
    pub m: Option<Span>,
    #[arg(long, value_parser = parse_span)]
    pub n: Option<Span>,
    /// Truncation order, or `auto` for a per-check default.
    #[arg(long, value_parser = parse_order, default_value = "auto")]
    pub order: Order,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeriesName {
    F,
    Ratio,
    RatioCor,
    Nu,
    Mock,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Identity {
    OneSub,
    Chu,
    Heine,
    Fine,
    PochReversal,
    BinomRewrite,
    FormAgreement,
    MockTheta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Ratio,
    Cw,
    OneSub,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Profile {
    Desk,
    Quick,
}

#[derive(Args, Debug)]
pub struct ExpandArgs {
    #[arg(long, value_enum)]
    pub series: SeriesName,
    /// Form used for `--series f`.
    #[arg(long, value_parser = parse_form, default_value = "bbk")]
    pub form: FkForm,
    #[command(flatten)]
    pub params: Params,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub identity: Identity,
    #[command(flatten)]
    pub params: Params,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args, Debug)]
pub struct PositivityArgs {
    #[arg(long, value_enum)]
    pub series: SeriesName,
    #[arg(long, value_parser = parse_form, default_value = "bbk")]
    pub form: FkForm,
    #[command(flatten)]
    pub params: Params,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    #[arg(long, value_enum)]
    pub target: Target,
    /// Write a certificate for the (single) decomposition to this file.
    #[arg(long)]
    pub certify: Option<PathBuf>,
    #[command(flatten)]
    pub params: Params,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args, Debug)]
pub struct SuiteArgs {
    #[arg(long, value_enum, default_value_t = Profile::Desk)]
    pub profile: Profile,
    #[command(flatten)]
    pub out: Output,
}

/// Inclusive parameter range, written `a..b` or `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub lo: u64,
    pub hi: u64,
}

impl Span {
    pub fn values(self) -> RangeInclusive<u64> {
        self.lo..=self.hi
    }

    pub fn single(self) -> Option<u64> {
        (self.lo == self.hi).then_some(self.lo)
    }
}

pub fn parse_span(s: &str) -> Result<Span, String> {
    let num = |t: &str| {
        u64::from_str(t.trim()).map_err(|_| format!("'{t}' is not a nonnegative integer"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b)?),
        None => (num(s)?, num(s)?),
    };
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok(Span { lo, hi })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Auto,
    Fixed(i64),
}

impl Order {
    pub fn or(self, auto: i64) -> i64 {
        match self {
            Order::Auto => auto,
            Order::Fixed(n) => n,
        }
    }
}

pub fn parse_order(s: &str) -> Result<Order, String> {
    if s == "auto" {
        return Ok(Order::Auto);
    }
    match i64::from_str(s) {
        Ok(n) if n >= 0 => Ok(Order::Fixed(n)),
        _ => Err(format!(
            "order must be a nonnegative integer or 'auto', got '{s}'"
        )),
    }
}

pub fn parse_form(s: &str) -> Result<FkForm, String> {
    FkForm::from_str(s).map_err(|_| {
        let names: Vec<&str> = FkForm::ALL.iter().map(|f| f.name()).collect();
        format!("unknown form '{s}' (expected one of {})", names.join(", "))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spans() {
        assert_eq!(parse_span("1..50"), Ok(Span { lo: 1, hi: 50 }));
        assert_eq!(parse_span("7"), Ok(Span { lo: 7, hi: 7 }));
        assert!(parse_span("5..2").is_err());
        assert!(parse_span("-1").is_err());
        assert!(parse_span("a..b").is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(parse_order("auto"), Ok(Order::Auto));
        assert_eq!(parse_order("0"), Ok(Order::Fixed(0)));
        assert!(parse_order("-3").is_err());
        assert_eq!(Order::Auto.or(200), 200);
    }
}

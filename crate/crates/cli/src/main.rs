//! `qpos`: expansion, identity checks, positivity scans and certificates for
//! the q-series in the `qseries` crate.

mod args;
mod checks;
mod emit;
mod suite;

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use qseries::verify::VerifyReport;

use args::{Cli, Command, Output, SeriesName};
use checks::Failure;

const USAGE: u8 = 2;
const MATH: u8 = 1;

fn write_out(out: &Output, text: &str) -> Result<(), Failure> {
    match &out.output {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            // A closed pipe is not an error worth reporting.
            let _ = stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush());
            Ok(())
        }
    }
}

fn verdict(all_passed: bool) -> u8 {
    if all_passed {
        0
    } else {
        MATH
    }
}

fn emit_reports(out: &Output, reports: Result<Vec<VerifyReport>, Failure>) -> Result<u8, Failure> {
    let reports = reports?;
    write_out(out, &emit::reports(&reports, out.format))?;
    Ok(verdict(reports.iter().all(VerifyReport::passed)))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Expand(a) => {
            if a.series == SeriesName::F {
                checks::check_form(a.form, a.params.k)?;
            }
            let xs = checks::expand(a.series, a.form, &a.params)?;
            write_out(&a.out, &emit::expansions(&xs, a.out.format))?;
            Ok(0)
        }
        Command::Verify(a) => emit_reports(&a.out, checks::verify(a.identity, &a.params)),
        Command::Positivity(a) => {
            if a.series == SeriesName::F {
                checks::check_form(a.form, a.params.k)?;
            }
            emit_reports(&a.out, checks::positivity(a.series, a.form, &a.params))
        }
        Command::Decompose(a) => emit_reports(
            &a.out,
            checks::decompose(a.target, &a.params, a.certify.as_deref()),
        ),
        Command::Suite(a) => {
            let summary = suite::run(a.profile);
            write_out(&a.out, &emit::suite(&summary, a.out.format))?;
            Ok(verdict(summary.iter().all(emit::CheckSummary::passed)))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.workers > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.workers)
            .build_global()
        {
            eprintln!("qpos: error: cannot start {} workers: {e}", cli.workers);
            return ExitCode::from(USAGE);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("qpos: error: {msg}");
            ExitCode::from(USAGE)
        }
        Err(Failure::Math(msg)) => {
            eprintln!("qpos: failure: {msg}");
            ExitCode::from(MATH)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qseries::verify::assert_equal;
    use qseries::{Error, TruncSeries};

    fn quiet() -> Output {
        Output {
            format: args::Format::Plain,
            output: Some(std::env::temp_dir().join("qpos-unit-test.txt")),
        }
    }

    #[test]
    fn mismatch_exits_1_and_errors_map_to_their_codes() {
        let a = TruncSeries::from_i64s(0, 2, &[1, 1, 1]);
        let b = TruncSeries::from_i64s(0, 2, &[1, 1, 2]);
        let pass = assert_equal(&a, &a, 2).unwrap();
        let fail = assert_equal(&a, &b, 2).unwrap();
        assert_eq!(emit_reports(&quiet(), Ok(vec![pass.clone()])).unwrap(), 0);
        assert_eq!(emit_reports(&quiet(), Ok(vec![pass, fail])).unwrap(), MATH);
        assert!(matches!(
            Failure::from(Error::NonIntegral { what: "x".into() }),
            Failure::Math(_)
        ));
        assert!(matches!(
            Failure::from(Error::InvalidForm { form: "cw", k: 1 }),
            Failure::Usage(_)
        ));
    }
}

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fieldred::report::{census_report, Report, RunConfig, Session, Suite};
use fieldred::GeomError;

#[derive(Parser)]
#[command(name = "fieldred", version, about = "Verify the field reduction of PG(2,q^3) into PG(8,q) at small q")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare every subspace count and composition against its closed form.
    Census {
        #[command(flatten)]
        common: Common,
    },
    /// Run one verification suite, or all of them.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
    },
}

#[derive(clap::Args)]
struct Common {
    /// Order of the base field; a prime power greater than 2.
    #[arg(long, value_parser = parse_q)]
    q: u32,
    /// Containers or instances inspected by each sampled check (q > 3).
    #[arg(long, env = "FIELDRED_SAMPLES", default_value_t = 30)]
    samples: usize,
    /// Seed for every sampled check.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Tables,
    Congruence,
    LinearSets,
    Figueroa,
    Scroll,
    Quadric,
    Properties,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Tables => Suite::Tables,
            SuiteArg::Congruence => Suite::Congruence,
            SuiteArg::LinearSets => Suite::LinearSets,
            SuiteArg::Figueroa => Suite::Figueroa,
            SuiteArg::Scroll => Suite::Scroll,
            SuiteArg::Quadric => Suite::Quadric,
            SuiteArg::Properties => Suite::Properties,
            SuiteArg::All => Suite::All,
        }
    }
}

fn parse_q(s: &str) -> Result<u32, String> {
    let q: u32 = s.parse().map_err(|_| format!("`{s}` is not a positive integer"))?;
    if q <= 2 {
        return Err(format!("q > 2 required, got {q}"));
    }
    let p = (2..=q).find(|d| q % d == 0).unwrap();
    let mut r = q;
    while r % p == 0 {
        r /= p;
    }
    if r != 1 {
        return Err(format!("{q} is not a prime power"));
    }
    Ok(q)
}

fn emit(report: &Report, format: Format) -> ExitCode {
    let text = match format {
        Format::Table => report.to_string(),
        Format::Json => report.to_json(),
    };
    // a closed pipe downstream is not an error of the run
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, suite) = match cli.command {
        Command::Census { common } => (common, None),
        Command::Verify { common, suite } => (common, Some(Suite::from(suite))),
    };
    let cfg = RunConfig { q: common.q, samples: common.samples, seed: common.seed };
    let result = Session::new(cfg).and_then(|s| match suite {
        None => census_report(&s),
        Some(suite) => s.run(suite),
    });
    match result {
        Ok(report) => emit(&report, common.format),
        Err(GeomError::Hypothesis(why)) => {
            eprintln!("rejected: {why}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use alexmod::{analyze, engine::verify_report, strata, Claim, Error, Mode};
use clap::{Parser, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RunMode {
    Hypersurface,
    Arrangement,
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    #[value(alias = "json")]
    Structured,
}

/// Obstructions on the Alexander polynomials of a projective hypersurface complement.
#[derive(Debug, Parser)]
#[command(name = "alexmod", version)]
struct Cli {
    /// Hypersurface or arrangement description (JSON).
    input: PathBuf,
    #[arg(long, value_enum, default_value = "hypersurface")]
    mode: RunMode,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Claimed polynomial `i:<poly>`, e.g. `2:[[0,1,1],[1,1,1]]`; repeatable.
    #[arg(long = "claim", value_name = "I:POLY")]
    claims: Vec<String>,
    /// Analyze the description as an arrangement when verifying claims.
    #[arg(long)]
    arrangement: bool,
}

fn fail(err: &Error) -> ExitCode {
    match err {
        Error::Invalid(errs) => {
            for e in errs {
                eprintln!("error: {e}");
            }
        }
        other => eprintln!("error: {other}"),
    }
    ExitCode::from(1)
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    let text = std::fs::read_to_string(&cli.input).map_err(|e| Error::Parse {
        line: 0,
        column: 0,
        message: format!("cannot read {}: {e}", cli.input.display()),
    })?;
    let mode = match (cli.mode, cli.arrangement) {
        (RunMode::Arrangement, _) | (RunMode::Verify, true) => Mode::Arrangement,
        _ => Mode::Hypersurface,
    };
    let spec = strata::load(&text, mode)?;
    if cli.mode != RunMode::Verify && !cli.claims.is_empty() {
        eprintln!("error: --claim is only accepted with --mode verify");
        return Ok(ExitCode::from(1));
    }
    let report = analyze(&spec)?;
    if cli.mode != RunMode::Verify {
        match cli.format {
            Format::Text => print!("{}", report.render_text()),
            Format::Structured => println!("{}", report.to_json()),
        }
        return Ok(ExitCode::SUCCESS);
    }

    if cli.claims.is_empty() {
        eprintln!("error: verify mode needs at least one --claim");
        return Ok(ExitCode::from(1));
    }
    let claims = cli
        .claims
        .iter()
        .map(|c| Claim::parse(c))
        .collect::<Result<Vec<_>, _>>()?;
    let verified = verify_report(report, &claims)?;
    match cli.format {
        Format::Text => print!("{}", verified.render_text()),
        Format::Structured => println!("{}", verified.to_json()),
    }
    for o in &verified.outcomes {
        if let Some(r) = &o.rejection {
            eprintln!(
                "claim for degree {} rejected by {} [{}]: {}",
                o.degree, r.citation, r.rule, r.reason
            );
        }
    }
    Ok(if verified.all_accepted() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => fail(&e),
    }
}

mod args;
mod commands;

use std::fs::File;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::{Failure, Outcome, Output};

fn write_output(out: &Output, w: &mut dyn Write) -> io::Result<()> {
    match out {
        Output::Json(v) => {
            serde_json::to_writer_pretty(&mut *w, v)?;
            writeln!(w)
        }
        Output::Table { header, rows } => {
            let mut csv = csv::Writer::from_writer(w);
            csv.write_record(header)?;
            for r in rows {
                csv.write_record(r)?;
            }
            csv.flush()
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Construct(c) => commands::construct(c, cli.format),
        Command::Certify(c) => commands::certify_cmd(c, cli.format),
        Command::Verify(v) => commands::verify(v, cli.format),
        Command::Emit(e) => commands::emit(e, cli.format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let written = match &cli.out {
        Some(path) => File::create(path).and_then(|mut f| write_output(&outcome.output, &mut f)),
        None => write_output(&outcome.output, &mut io::stdout().lock()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

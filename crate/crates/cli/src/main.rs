mod args;
mod error;
mod exact_cmds;
mod numeric_cmds;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use error::CliError;
use report::Report;

fn run(cmd: &Command) -> Result<Report, CliError> {
    let seed = cmd.common().seed;
    match cmd {
        Command::Faces { group, .. } => exact_cmds::faces(group, seed),
        Command::Strata { group, .. } => exact_cmds::strata(group, seed),
        Command::Weights { group, .. } => exact_cmds::weights(group, seed),
        Command::Smooth { group, face, .. } => exact_cmds::smooth(group, face.as_deref(), seed),
        Command::Zeta { group, .. } => exact_cmds::zeta(group, seed),
        Command::Symmetries { group, .. } => exact_cmds::symmetries(group, seed),
        Command::CheckCentralizer { group, .. } => exact_cmds::check_centralizer(group, seed),
        Command::CheckIntegrality { group, .. } => exact_cmds::check_integrality(group, seed),
        Command::SuEmbeddingCheck { n, .. } => exact_cmds::su_embedding(*n, seed),
        Command::VerifyNumeric { target, num, .. } => numeric_cmds::verify_numeric(target, num, seed),
        Command::VerifyGlue { num, .. } => numeric_cmds::verify_glue(num, seed),
        Command::VerifyCotangent { num, .. } => numeric_cmds::verify_cotangent(num, seed),
        Command::SampleRep { genus, punctures, num, .. } => {
            numeric_cmds::sample_rep(*genus, *punctures, num, seed)
        }
        Command::ModuliDim { genus, punctures, group, faces, .. } => {
            numeric_cmds::moduli_dim(*genus, *punctures, group, faces, seed)
        }
    }
}

fn emit(cmd: &Command, rep: &Report) -> Result<(), CliError> {
    let common = cmd.common();
    let body = rep.render(common.format)?;
    match &common.output {
        Some(path) => std::fs::write(path, body)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli.command).and_then(|rep| emit(&cli.command, &rep).map(|_| rep.pass));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

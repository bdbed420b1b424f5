//! Library half of the `paving` binary, split out so the integration tests can drive the
//! argument handling directly.

pub mod args;
pub mod commands;
pub mod error;
pub mod generate;
pub mod report;
pub mod verify;

pub use args::{parse_with_config, resolve_seed, Cli, Command};
pub use error::{CliError, CliResult};

pub fn run(cli: &Cli) -> CliResult<()> {
    let seed = resolve_seed(cli.command.common().seed)?;
    match &cli.command {
        Command::Solve(a) => commands::solve(a, seed),
        Command::Audit(a) => commands::audit(a),
        Command::PhiTable(a) => commands::phi_table(a),
        Command::MlsBench(a) => commands::mls_bench(a, seed),
        Command::Verify(a) => verify::verify(a.common.out.as_deref(), seed),
    }
}

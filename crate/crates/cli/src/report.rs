use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::time::Duration;

use paving_core::subset::Subset;
use paving_core::QueryReport;

use crate::error::{CliError, CliResult};

/// One solver run. The same columns are written by every `solve` problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResultRow {
    pub instance: String,
    pub solver: String,
    pub verdict: &'static str,
    pub witness: Option<Subset>,
    pub queries: QueryReport,
    pub wall: Option<Duration>,
}

impl ResultRow {
    pub const HEADER: [&'static str; 6] = ["instance", "solver", "verdict", "witness", "queries", "wall_ms"];

    pub fn record(&self) -> [String; 6] {
        [
            self.instance.clone(),
            self.solver.clone(),
            self.verdict.to_string(),
            self.witness.map(Subset::to_one_based).unwrap_or_default(),
            self.queries.to_compact(),
            self.wall.map(|d| format!("{:.3}", d.as_secs_f64() * 1e3)).unwrap_or_default(),
        ]
    }
}

/// `--out` file, or stdout.
pub fn open_output(path: Option<&str>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|source| CliError::Io {
            path: p.to_string(),
            source,
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn csv_writer(path: Option<&str>) -> CliResult<csv::Writer<Box<dyn Write>>> {
    Ok(csv::Writer::from_writer(open_output(path)?))
}

//! Command-line surface. Every subcommand also accepts `--config FILE` with `key = value`
//! lines naming the same flags; flags given on the command line win.

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{read_file, CliError, CliResult};

/// Environment variable that replaces the default seed when `--seed` is absent.
pub const SEED_VAR: &str = "PAVING_SEED";

#[derive(Debug, Parser)]
#[command(name = "paving", version, about = "Empty Set, matroid intersection and Monotone Local Search experiments")]
#[command(args_override_self = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one solver on parsed or generated instances and write result rows.
    Solve(SolveArgs),
    /// Run a deterministic Empty Set solver against the empty family and look for a fooling certificate.
    Audit(AuditArgs),
    /// Tabulate Φ_g and Ψ_g over a range of n.
    PhiTable(PhiArgs),
    /// Measure MLS extension invocations and success rates on planted and empty instances.
    MlsBench(BenchArgs),
    /// Run the property checks on the small-instance zoo.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    Lmi,
    Emi,
    EsBrute,
    EsViaLmi,
    EsViaEmi,
    Mls,
    #[value(name = "3dm")]
    ThreeDm,
    Hampath,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// One k-subset per line of `--input`.
    Explicit,
    /// Satisfying assignments of a DIMACS formula with exactly k true variables.
    Sat,
    Empty,
    /// A single seeded k-subset.
    Planted,
    /// `lmi` only: matroids drawn independently.
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AuditSolver {
    EsBrute,
    EsViaLmi,
    EsViaEmi,
    /// Queries the first `--budget` k-subsets, then answers.
    Prefix,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// key = value file with defaults for any flag.
    #[arg(long)]
    pub config: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum)]
    pub problem: Problem,
    #[arg(long)]
    pub input: Option<String>,
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 3)]
    pub ell: usize,
    /// Running-time family for MLS: one, exp, klogk, ksquare, poly-n.
    #[arg(long, default_value = "poly-n")]
    pub g: String,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    /// Fill the wall_ms column. Off by default so reruns are byte-identical.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Clone, Args)]
pub struct AuditArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value = "es-brute")]
    pub solver: AuditSolver,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 3)]
    pub ell: usize,
    /// Query budget of the `prefix` solver.
    #[arg(long, default_value_t = 0)]
    pub budget: usize,
}

#[derive(Debug, Clone, Args)]
pub struct PhiArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value = "one")]
    pub g: String,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    /// Largest n of the table (rows 1..=n) unless `--ns` is given.
    #[arg(long, default_value_t = 64)]
    pub n: usize,
    /// Explicit comma-separated n values.
    #[arg(long, value_delimiter = ',')]
    pub ns: Vec<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value = "poly-n")]
    pub g: String,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    /// Largest n (rows 4..=n) unless `--ns` is given.
    #[arg(long, default_value_t = 12)]
    pub n: usize,
    #[arg(long, value_delimiter = ',')]
    pub ns: Vec<usize>,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Solve(a) => &a.common,
            Command::Audit(a) => &a.common,
            Command::PhiTable(a) => &a.common,
            Command::MlsBench(a) => &a.common,
            Command::Verify(a) => &a.common,
        }
    }
}

/// Turns `key = value` lines into `--key value` arguments. `#` starts a comment; a bare key
/// (or `key = true`) is a switch.
pub fn config_to_args(text: &str) -> CliResult<Vec<String>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = match line.split_once('=') {
            Some((k, v)) => (k.trim(), Some(v.trim())),
            None => (line, None),
        };
        if key.is_empty() || key.starts_with('-') || key == "config" {
            return Err(CliError::Usage(format!("config line {}: bad key {key:?}", i + 1)));
        }
        out.push(format!("--{key}"));
        match value {
            Some("true") | None => {}
            Some(v) => out.push(v.to_string()),
        }
    }
    Ok(out)
}

/// Parses `argv`, splicing in the config file's flags right after the subcommand so that
/// later command-line flags override them.
pub fn parse_with_config<I, T>(argv: I) -> CliResult<Cli>
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let mut argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let config_at = argv.iter().position(|a| a == "--config" || a.starts_with("--config="));
    if let Some(at) = config_at {
        let path = match argv[at].strip_prefix("--config=") {
            Some(p) => p.to_string(),
            None => argv
                .get(at + 1)
                .cloned()
                .ok_or_else(|| CliError::Usage("--config needs a file".into()))?,
        };
        let extra = config_to_args(&read_file(&path)?)?;
        let sub = argv
            .iter()
            .skip(1)
            .position(|a| !a.starts_with('-'))
            .map(|p| p + 2)
            .ok_or_else(|| CliError::Usage("--config given without a subcommand".into()))?;
        argv.splice(sub..sub, extra);
    }
    Cli::try_parse_from(argv).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => e.exit(),
        _ => CliError::Usage(e.to_string()),
    })
}

/// `--seed`, else the environment override, else 0.
pub fn resolve_seed(flag: Option<u64>) -> CliResult<u64> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var(SEED_VAR) {
        Ok(v) => {
            let seed = v
                .trim()
                .parse::<u64>()
                .map_err(|_| CliError::Usage(format!("{SEED_VAR}={v:?} is not an unsigned integer")))?;
            log::info!("seed {seed} taken from {SEED_VAR}");
            Ok(seed)
        }
        Err(_) => Ok(0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_lines() {
        let args = config_to_args("# demo\nn = 6\nk=3\n\ntiming\nfamily = empty # trailing\n").unwrap();
        assert_eq!(args, ["--n", "6", "--k", "3", "--timing", "--family", "empty"]);
        assert!(config_to_args("= 4").is_err());
    }

    #[test]
    fn flags_override_config() {
        let dir = tempfile_dir();
        let path = dir.join("run.conf");
        std::fs::write(&path, "n = 6\nk = 3\nfamily = empty\n").unwrap();
        let cli = parse_with_config([
            "paving",
            "solve",
            "--problem",
            "es-brute",
            "--config",
            path.to_str().unwrap(),
            "--k",
            "2",
        ])
        .unwrap();
        let Command::Solve(a) = cli.command else { panic!("wrong subcommand") };
        assert_eq!((a.n, a.k, a.family), (Some(6), Some(2), Some(Family::Empty)));
    }

    fn tempfile_dir() -> std::path::PathBuf {
        let dir = std::env::temp_dir().join(format!("paving-args-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        dir
    }
}

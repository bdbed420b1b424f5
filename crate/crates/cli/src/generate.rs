//! Instances the CLI builds from flags. Everything is a pure function of its arguments, so a
//! witness can be re-validated on a second, freshly built copy.

use paving_core::subset::Subset;
use paving_core::{
    parse_3dm, parse_digraph, parse_dimacs, parse_es_family, partition_matroid, uniform_matroid, EncodedInstance,
    EsInstance, LmiInstance, MatroidOracle,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::args::Family;
use crate::error::{read_file, CliError, CliResult};

/// Seed of trial `i` of a run seeded with `seed`.
pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    paving_core::mls::derive_seed(seed, usize::MAX, trial)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform `k`-subset of `[n]`.
pub fn planted_subset(n: usize, k: usize, seed: u64) -> Subset {
    let mut elements: Vec<usize> = (0..n).collect();
    let (chosen, _) = elements.partial_shuffle(&mut rng(seed), k);
    Subset::from_elements(chosen.iter().copied())
}

fn need<T>(value: Option<T>, flag: &str, what: &str) -> CliResult<T> {
    value.ok_or_else(|| CliError::Usage(format!("{what} needs --{flag}")))
}

/// Where an Empty Set instance comes from.
#[derive(Clone, Debug)]
pub struct EsSource {
    pub family: Family,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub input: Option<String>,
    pub text: Option<String>,
}

impl EsSource {
    pub fn new(family: Family, n: Option<usize>, k: Option<usize>, input: Option<String>) -> CliResult<EsSource> {
        let text = match (&input, family) {
            (Some(path), Family::Explicit | Family::Sat) => Some(read_file(path)?),
            (None, Family::Explicit | Family::Sat) => {
                return Err(CliError::Usage(format!("family {family:?} needs --input").to_lowercase()))
            }
            (_, Family::Random) => return Err(CliError::Usage("family random only applies to --problem lmi".into())),
            _ => None,
        };
        Ok(EsSource { family, n, k, input, text })
    }

    /// Builds the instance for one trial. Only the planted family depends on the seed.
    pub fn build(&self, seed: u64) -> CliResult<EsInstance> {
        let text = self.text.as_deref().unwrap_or("");
        Ok(match self.family {
            Family::Explicit => parse_es_family(text, need(self.n, "n", "family explicit")?, self.k)?,
            Family::Sat => {
                let cnf = parse_dimacs(text)?;
                paving_core::es_from_sat(&cnf, need(self.k, "k", "family sat")?)?
            }
            Family::Empty => EsInstance::empty(need(self.n, "n", "family empty")?, need(self.k, "k", "family empty")?)?,
            Family::Planted => {
                let (n, k) = (need(self.n, "n", "family planted")?, need(self.k, "k", "family planted")?);
                if k > n {
                    return Err(paving_core::Error::Precondition(format!("k = {k} exceeds n = {n}")).into());
                }
                let planted = planted_subset(n, k, seed);
                EsInstance::explicit(n, k, &[planted])?
            }
            Family::Random => unreachable!("rejected in EsSource::new"),
        })
    }

    /// Whether two trials can differ.
    pub fn seeded(&self) -> bool {
        self.family == Family::Planted
    }

    pub fn id(&self, trial: u64) -> String {
        let base = match (&self.input, self.family) {
            (Some(path), Family::Explicit | Family::Sat) => path.clone(),
            (_, f) => format!("{}-n{}-k{}", family_name(f), self.n.unwrap_or(0), self.k.unwrap_or(0)),
        };
        if self.seeded() {
            format!("{base}#{trial}")
        } else {
            base
        }
    }
}

pub fn family_name(f: Family) -> &'static str {
    match f {
        Family::Explicit => "explicit",
        Family::Sat => "sat",
        Family::Empty => "empty",
        Family::Planted => "planted",
        Family::Random => "random",
    }
}

/// Random partition matroid on `[n]` whose bounds make `planted` a basis.
fn planted_partition(r: &mut ChaCha8Rng, n: usize, planted: Subset) -> MatroidOracle {
    let blocks_n = r.gen_range(1..=n.max(1));
    let mut blocks = vec![Subset::EMPTY; blocks_n];
    for e in 0..n {
        let b = r.gen_range(0..blocks_n);
        blocks[b] = blocks[b].with(e);
    }
    let bounds: Vec<usize> = blocks.iter().map(|b| b.intersection(planted).len()).collect();
    partition_matroid(n, &blocks, &bounds).expect("blocks partition [n]")
}

/// `ell` matroids on `[n]`. `planted` shares a common basis of size `k` (default `n / 2`) by
/// construction; `random` draws each matroid on its own and usually has none.
pub fn lmi_instance(family: Family, n: usize, k: Option<usize>, ell: usize, seed: u64) -> CliResult<LmiInstance> {
    if ell == 0 {
        return Err(CliError::Usage("--ell must be at least 1".into()));
    }
    let mut r = rng(seed);
    let matroids: Vec<MatroidOracle> = match family {
        Family::Planted => {
            let k = k.unwrap_or(n / 2);
            if k > n {
                return Err(paving_core::Error::Precondition(format!("k = {k} exceeds n = {n}")).into());
            }
            let planted = planted_subset(n, k, r.gen());
            (0..ell).map(|_| planted_partition(&mut r, n, planted)).collect()
        }
        Family::Random => (0..ell)
            .map(|_| {
                if r.gen_bool(0.25) {
                    uniform_matroid(n, r.gen_range(0..=n))
                } else {
                    let size = r.gen_range(0..=n);
                    let own = planted_subset(n, size, r.gen());
                    Ok(planted_partition(&mut r, n, own))
                }
            })
            .collect::<Result<_, _>>()?,
        other => {
            return Err(CliError::Usage(format!(
                "--problem lmi takes --family planted or random, not {}",
                family_name(other)
            )))
        }
    };
    Ok(LmiInstance::new(matroids)?)
}

pub fn encoded_3dm(path: &str) -> CliResult<EncodedInstance> {
    Ok(paving_core::encode_3dm(&parse_3dm(&read_file(path)?)?)?)
}

pub fn encoded_hampath(path: &str) -> CliResult<EncodedInstance> {
    Ok(paving_core::encode_hampath(&parse_digraph(&read_file(path)?)?)?)
}

//! Monotone Local Search over implicit set problems.
//!
//! For every target size `k`, [`monotone_local_search`] picks the `t` minimising
//! `C(n, t) / C(k, t) * g(k - t)` ([`optimal_t`]), then repeats [`sample`]
//! `ceil(2 C(n, t) / C(k, t))` times. Each sample draws a uniform `t`-subset `X` and asks the
//! extension algorithm for a `(k - t)`-extension. The search stops at the first verified extension.
//!
//! All values of `g` live in the log domain ([`LogTimeFunction`]).

mod analysis;
mod binom;
mod logtime;

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use analysis::{phi, phi_growth_check, psi, GrowthFamily, GrowthReport, GrowthRow};
pub use binom::{binary_entropy, binom_exact, binom_u128, log_binom};
pub use logtime::LogTimeFunction;

use crate::error::Result;
use crate::gadgets::LmiInstance;
use crate::oracle::{is_basis, GroundSet, SetOracle};
use crate::solvers::{extension_solve, ExtensionResult, LmiSolver};
use crate::subset::{k_subsets_of, Subset};

/// Costs closer than this (in log2 units) count as ties.
const TIE_EPSILON: f64 = 1e-9;

/// An implicit set problem: a ground set and a counted membership test for `F`.
#[derive(Clone, Debug)]
pub struct ImplicitSetProblem {
    member: SetOracle,
}

impl ImplicitSetProblem {
    pub fn new<F>(n: usize, member: F) -> Result<ImplicitSetProblem>
    where
        F: Fn(Subset) -> bool + Send + Sync + 'static,
    {
        Ok(ImplicitSetProblem {
            member: SetOracle::new(GroundSet::new(n)?, "member", member),
        })
    }

    /// A problem whose only solution is `planted`.
    pub fn planted(n: usize, planted: Subset) -> Result<ImplicitSetProblem> {
        ImplicitSetProblem::new(n, move |s| s == planted)
    }

    /// `F = ∅`.
    pub fn empty(n: usize) -> Result<ImplicitSetProblem> {
        ImplicitSetProblem::new(n, |_| false)
    }

    pub fn ground(&self) -> GroundSet {
        self.member.ground()
    }

    pub fn ground_size(&self) -> usize {
        self.member.ground_size()
    }

    /// Counted test of `s ∈ F`.
    pub fn is_member(&self, s: Subset) -> bool {
        self.member.query(s)
    }

    pub fn queries(&self) -> u64 {
        self.member.queries()
    }
}

/// `F` = common bases of the instance's matroids.
pub fn lmi_as_implicit_problem(inst: &LmiInstance) -> Result<ImplicitSetProblem> {
    let matroids = inst.matroids().to_vec();
    ImplicitSetProblem::new(inst.ground().size(), move |s| {
        matroids.iter().all(|m| is_basis(m, s))
    })
}

/// A (randomized) extension algorithm of declared running time `g`.
///
/// Given `X` and `ℓ`, returns `S` with `|S| = ℓ`, `S ∩ X = ∅` and `X ∪ S ∈ F`, or ⊥.
pub trait ExtensionAlgorithm {
    fn log_time(&self) -> &LogTimeFunction;
    fn extend(&self, problem: &ImplicitSetProblem, x: Subset, ell: usize, seed: u64) -> Result<ExtensionResult>;
}

/// Tries every `ℓ`-subset of `E \ X` in increasing bitmask order. Deterministic, never misses.
#[derive(Clone, Debug)]
pub struct BruteForceExtension {
    g: LogTimeFunction,
}

impl BruteForceExtension {
    pub fn new(g: LogTimeFunction) -> BruteForceExtension {
        BruteForceExtension { g }
    }
}

impl ExtensionAlgorithm for BruteForceExtension {
    fn log_time(&self) -> &LogTimeFunction {
        &self.g
    }

    fn extend(&self, problem: &ImplicitSetProblem, x: Subset, ell: usize, _seed: u64) -> Result<ExtensionResult> {
        let rest = problem.ground().full().difference(x);
        Ok(k_subsets_of(rest, ell)
            .find(|&s| problem.is_member(x.union(s)))
            .map_or(ExtensionResult::Bottom, ExtensionResult::Extension))
    }
}

/// Extension algorithm for ℓ-MI built on [`extension_solve`] and a parameterized ℓ-MI solver.
pub struct LmiExtension<S> {
    instance: LmiInstance,
    inner: S,
    g: LogTimeFunction,
}

impl<S: LmiSolver> LmiExtension<S> {
    pub fn new(instance: LmiInstance, inner: S, g: LogTimeFunction) -> LmiExtension<S> {
        LmiExtension { instance, inner, g }
    }
}

impl<S: LmiSolver> ExtensionAlgorithm for LmiExtension<S> {
    fn log_time(&self) -> &LogTimeFunction {
        &self.g
    }

    fn extend(&self, _problem: &ImplicitSetProblem, x: Subset, ell: usize, _seed: u64) -> Result<ExtensionResult> {
        extension_solve(&self.instance, x, ell, &self.inner)
    }
}

/// `(t, cost)` with `cost = min over 0 <= t <= k of log2[C(n, t) / C(k, t) * g(k - t)]`.
/// Ties go to the smallest `t`.
pub fn optimal_t(n: usize, k: usize, g: &LogTimeFunction) -> Result<(usize, f64)> {
    let mut best = (0, f64::INFINITY);
    for t in 0..=k {
        let cost = log_binom(n, t)? - log_binom(k, t)? + g.log2(k - t);
        if cost < best.1 - TIE_EPSILON {
            best = (t, cost);
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlanEntry {
    pub k: usize,
    pub t: usize,
    /// `log2(2 C(n, t) / C(k, t))` before rounding up.
    pub log2_repetitions: f64,
    /// `ceil(2 C(n, t) / C(k, t))`.
    pub repetitions: u64,
}

/// How many times [`monotone_local_search`] samples for each `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct BudgetPlan {
    pub n: usize,
    pub entries: Vec<PlanEntry>,
}

impl BudgetPlan {
    pub fn total(&self) -> u128 {
        self.entries.iter().map(|e| u128::from(e.repetitions)).sum()
    }

    /// CSV with header `k,t,log2_repetitions,repetitions`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,t,log2_repetitions,repetitions\n");
        for e in &self.entries {
            writeln!(out, "{},{},{:.6},{}", e.k, e.t, e.log2_repetitions, e.repetitions).expect("string write");
        }
        out
    }
}

/// The sampling budget for a ground set of `n` elements.
pub fn budget_plan(n: usize, g: &LogTimeFunction) -> Result<BudgetPlan> {
    let mut entries = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let (t, _) = optimal_t(n, k, g)?;
        let numerator: BigUint = binom_exact(n, t)? * 2u32;
        let denominator = binom_exact(k, t)?;
        let repetitions = numerator
            .div_ceil(&denominator)
            .to_u64()
            .expect("repetitions fit in u64 for n <= 64");
        entries.push(PlanEntry {
            k,
            t,
            log2_repetitions: 1.0 + log_binom(n, t)? - log_binom(k, t)?,
            repetitions,
        });
    }
    Ok(BudgetPlan { n, entries })
}

/// One draw: a uniform `t`-subset `X` (seeded partial shuffle) handed to `ext` with `ℓ = k - t`.
pub fn sample<E: ExtensionAlgorithm + ?Sized>(
    problem: &ImplicitSetProblem,
    k: usize,
    t: usize,
    ext: &E,
    seed: u64,
) -> Result<ExtensionResult> {
    sample_with_set(problem, k, t, ext, seed).map(|(_, r)| r)
}

fn sample_with_set<E: ExtensionAlgorithm + ?Sized>(
    problem: &ImplicitSetProblem,
    k: usize,
    t: usize,
    ext: &E,
    seed: u64,
) -> Result<(Subset, ExtensionResult)> {
    assert!(t <= k && k <= problem.ground_size(), "need t <= k <= n");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut elements: Vec<usize> = (0..problem.ground_size()).collect();
    let (chosen, _) = elements.partial_shuffle(&mut rng, t);
    let x = Subset::from_elements(chosen.iter().copied());
    let result = ext.extend(problem, x, k - t, rng.gen())?;
    Ok((x, result))
}

#[derive(Clone, Debug)]
pub struct MlsOutcome {
    /// A verified member of `F`, present iff the verdict is "yes".
    pub witness: Option<Subset>,
    pub plan: BudgetPlan,
    /// Extension calls made for each `k`.
    pub invocations: Vec<u64>,
    /// Extensions returned by `ext` that failed re-validation and were treated as ⊥.
    pub rejected: u64,
}

impl MlsOutcome {
    pub fn is_yes(&self) -> bool {
        self.witness.is_some()
    }

    pub fn total_invocations(&self) -> u128 {
        self.invocations.iter().map(|&c| u128::from(c)).sum()
    }
}

/// Seed of repetition `rep` at size `k` of a run seeded with `seed`.
pub fn derive_seed(seed: u64, k: usize, rep: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(seed) ^ k as u64) ^ rep)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Monotone Local Search. "No" is always correct; on a yes-instance the answer is "yes" with
/// probability at least `1 - 1/e` given an extension algorithm that succeeds with probability
/// at least 1/2.
pub fn monotone_local_search<E: ExtensionAlgorithm + ?Sized>(
    problem: &ImplicitSetProblem,
    ext: &E,
    seed: u64,
) -> Result<MlsOutcome> {
    let n = problem.ground_size();
    let plan = budget_plan(n, ext.log_time())?;
    let mut invocations = vec![0u64; n + 1];
    let mut rejected = 0;
    for entry in &plan.entries {
        for rep in 0..entry.repetitions {
            let (x, result) = sample_with_set(problem, entry.k, entry.t, ext, derive_seed(seed, entry.k, rep))?;
            invocations[entry.k] += 1;
            if let ExtensionResult::Extension(s) = result {
                let candidate = x.union(s);
                if s.len() == entry.k - entry.t && s.intersection(x).is_empty() && problem.is_member(candidate) {
                    return Ok(MlsOutcome {
                        witness: Some(candidate),
                        plan,
                        invocations,
                        rejected,
                    });
                }
                rejected += 1;
            }
        }
    }
    Ok(MlsOutcome {
        witness: None,
        plan,
        invocations,
        rejected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn optimal_t_constant_g() {
        let g = LogTimeFunction::one();
        for n in 1..12 {
            for k in 0..=n {
                assert_eq!(optimal_t(n, k, &g).unwrap(), (0, 0.0));
            }
        }
    }

    #[test]
    fn optimal_t_enumerated() {
        // log2 g(l) = 2l, n = 4, k = 2: costs 4, 3, log2 6
        let g = LogTimeFunction::new("4^l", |l| 2.0 * l as f64).unwrap();
        let (t, cost) = optimal_t(4, 2, &g).unwrap();
        assert_eq!(t, 2);
        assert!((cost - 6f64.log2()).abs() < 1e-12);
        assert_eq!(optimal_t(5, 0, &g).unwrap(), (0, 0.0));
    }

    #[test]
    fn plan_rounds_up() {
        let plan = budget_plan(4, &LogTimeFunction::exp()).unwrap();
        for e in &plan.entries {
            let exact = 2.0 * binom_u128(4, e.t) as f64 / binom_u128(e.k, e.t) as f64;
            assert_eq!(e.repetitions, exact.ceil() as u64);
        }
        let csv = plan.to_csv();
        assert!(csv.starts_with("k,t,log2_repetitions,repetitions\n"));
        assert_eq!(csv.lines().count(), 6);
    }

    #[test]
    fn sample_trivial_cases() {
        let with_empty = ImplicitSetProblem::new(5, |s| s.is_empty()).unwrap();
        let ext = BruteForceExtension::new(LogTimeFunction::one());
        assert_eq!(
            sample(&with_empty, 0, 0, &ext, 7).unwrap(),
            ExtensionResult::Extension(Subset::EMPTY)
        );
        let empty = ImplicitSetProblem::empty(6).unwrap();
        for seed in 0..50 {
            assert!(sample(&empty, 3, 1, &ext, seed).unwrap().is_bottom());
        }
    }

    #[test]
    fn sample_is_uniform_over_t_subsets() {
        // every 2-subset of a 5-set appears with frequency near 1/10
        let problem = ImplicitSetProblem::empty(5).unwrap();
        struct Record(std::cell::RefCell<Vec<Subset>>, LogTimeFunction);
        impl ExtensionAlgorithm for Record {
            fn log_time(&self) -> &LogTimeFunction {
                &self.1
            }
            fn extend(&self, _: &ImplicitSetProblem, x: Subset, _: usize, _: u64) -> Result<ExtensionResult> {
                self.0.borrow_mut().push(x);
                Ok(ExtensionResult::Bottom)
            }
        }
        let rec = Record(Default::default(), LogTimeFunction::one());
        for seed in 0..10_000 {
            sample(&problem, 2, 2, &rec, seed).unwrap();
        }
        let seen = rec.0.borrow();
        for s in crate::subset::k_subsets(5, 2) {
            let freq = seen.iter().filter(|&&x| x == s).count() as f64 / 10_000.0;
            assert!((freq - 0.1).abs() < 0.015, "{s:?} {freq}");
        }
    }

    #[test]
    fn empty_family_is_no() {
        let problem = ImplicitSetProblem::empty(6).unwrap();
        let ext = BruteForceExtension::new(LogTimeFunction::exp());
        let out = monotone_local_search(&problem, &ext, 3).unwrap();
        assert!(!out.is_yes());
        assert_eq!(out.total_invocations(), out.plan.total());
    }

    #[test]
    fn rejects_bogus_extensions() {
        struct Liar(LogTimeFunction);
        impl ExtensionAlgorithm for Liar {
            fn log_time(&self) -> &LogTimeFunction {
                &self.0
            }
            fn extend(&self, p: &ImplicitSetProblem, x: Subset, ell: usize, _: u64) -> Result<ExtensionResult> {
                let rest = p.ground().full().difference(x);
                Ok(ExtensionResult::Extension(k_subsets_of(rest, ell).next().unwrap()))
            }
        }
        let problem = ImplicitSetProblem::empty(4).unwrap();
        let out = monotone_local_search(&problem, &Liar(LogTimeFunction::one()), 1).unwrap();
        assert!(!out.is_yes());
        assert_eq!(out.rejected as u128, out.plan.total());
    }

    #[test]
    fn planted_is_found_deterministically_per_seed() {
        let planted = Subset::from_elements([1, 4, 6]);
        let problem = ImplicitSetProblem::planted(8, planted).unwrap();
        let ext = BruteForceExtension::new(LogTimeFunction::poly(8));
        let a = monotone_local_search(&problem, &ext, 11).unwrap();
        let b = monotone_local_search(&problem.clone(), &ext, 11).unwrap();
        assert_eq!(a.witness, b.witness);
        assert_eq!(a.invocations, b.invocations);
        if let Some(w) = a.witness {
            assert_eq!(w, planted);
        }
    }
}

//! Decision procedures for ℓ-MI, EMI and Empty Set, and the reduction-driven Empty Set solvers.
//!
//! Every solver returns a [`SolveOutcome`] whose witness, when present, certifies the verdict and
//! whose [`QueryReport`] holds the queries charged to the oracles of the instance it was given.
//! Enumeration is always in increasing bitmask order, so query transcripts are reproducible.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::gadgets::{
    enumerate_su_matrices, reduce_es_to_emi, reduce_es_to_lmi, EmiInstance, EncodedInstance, EsInstance,
    LmiInstance,
};
use crate::mls::LogTimeFunction;
use crate::oracle::{contract, is_basis, rank, restrict, MatroidOracle, QueryProbe, QueryReport};
use crate::subset::{k_subsets, k_subsets_of, Subset};

/// Largest ground set the brute-force intersection solvers accept.
pub const BRUTE_FORCE_GUARD: usize = 24;

/// Largest `C(n, k)` the Empty Set enumerator accepts.
pub const ES_ENUMERATION_GUARD: u128 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOutcome {
    /// Present iff the answer is "yes".
    pub witness: Option<Subset>,
    pub queries: QueryReport,
}

impl SolveOutcome {
    pub fn yes(witness: Subset, queries: QueryReport) -> SolveOutcome {
        SolveOutcome {
            witness: Some(witness),
            queries,
        }
    }

    pub fn no(queries: QueryReport) -> SolveOutcome {
        SolveOutcome { witness: None, queries }
    }

    pub fn is_yes(&self) -> bool {
        self.witness.is_some()
    }

    pub fn verdict(&self) -> &'static str {
        if self.is_yes() {
            "yes"
        } else {
            "no"
        }
    }
}

/// Result of an extension algorithm: a set `S` with `X ∪ S` feasible, or ⊥.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtensionResult {
    Extension(Subset),
    Bottom,
}

impl ExtensionResult {
    pub fn extension(self) -> Option<Subset> {
        match self {
            ExtensionResult::Extension(s) => Some(s),
            ExtensionResult::Bottom => None,
        }
    }

    pub fn is_bottom(self) -> bool {
        matches!(self, ExtensionResult::Bottom)
    }
}

pub trait LmiSolver {
    fn name(&self) -> &str;
    fn solve_lmi(&self, inst: &LmiInstance) -> Result<SolveOutcome>;
}

pub trait EmiSolver {
    fn name(&self) -> &str;
    fn solve_emi(&self, inst: &EmiInstance) -> Result<SolveOutcome>;
}

pub trait EsSolver {
    fn name(&self) -> &str;
    fn solve_es(&self, es: &EsInstance) -> Result<SolveOutcome>;
}

fn lmi_probe(inst: &LmiInstance) -> QueryProbe {
    QueryProbe::new(inst.matroids().iter().map(MatroidOracle::counter))
}

fn check_brute_force_guard(n: usize) -> Result<()> {
    if n > BRUTE_FORCE_GUARD {
        return Err(Error::guard("brute-force ground set", n as u128, BRUTE_FORCE_GUARD as u128));
    }
    Ok(())
}

/// Independent in every matroid, then maximal in every matroid.
pub fn is_common_basis(matroids: &[MatroidOracle], s: Subset) -> bool {
    matroids.iter().all(|m| m.is_independent(s)) && matroids.iter().all(|m| is_basis(m, s))
}

/// Scans the `rank(M_1)`-subsets of the ground set for a common basis.
pub fn brute_force_lmi(inst: &LmiInstance) -> Result<SolveOutcome> {
    let n = inst.ground().size();
    check_brute_force_guard(n)?;
    let probe = lmi_probe(inst);
    let r = rank(&inst.matroids()[0]);
    let found = k_subsets(n, r).find(|&s| is_common_basis(inst.matroids(), s));
    Ok(SolveOutcome {
        witness: found,
        queries: probe.report(),
    })
}

#[derive(Clone, Copy, Debug, Default)]
pub struct BruteForceLmi;

impl LmiSolver for BruteForceLmi {
    fn name(&self) -> &str {
        "brute-force-lmi"
    }

    fn solve_lmi(&self, inst: &LmiInstance) -> Result<SolveOutcome> {
        brute_force_lmi(inst)
    }
}

/// Desk-scale stand-in for a parameterized ℓ-MI algorithm.
///
/// Same contract as [`brute_force_lmi`]; its nominal running time on a ground set `E` is
/// `g(ℓ) = |E|^ℓ`, see [`ParameterizedStandIn::log_time`].
#[derive(Clone, Copy, Debug, Default)]
pub struct ParameterizedStandIn;

impl ParameterizedStandIn {
    pub fn log_time(ground_size: usize) -> LogTimeFunction {
        LogTimeFunction::poly(ground_size)
    }
}

impl LmiSolver for ParameterizedStandIn {
    fn name(&self) -> &str {
        "parameterized-stand-in"
    }

    fn solve_lmi(&self, inst: &LmiInstance) -> Result<SolveOutcome> {
        brute_force_lmi(inst)
    }
}

pub fn parameterized_lmi_stand_in(inst: &LmiInstance) -> Result<SolveOutcome> {
    ParameterizedStandIn.solve_lmi(inst)
}

/// Scans subsets of size `rank(M_1)` with exactly `k` red elements for a common basis.
pub fn brute_force_emi(inst: &EmiInstance) -> Result<SolveOutcome> {
    let n = inst.ground().size();
    check_brute_force_guard(n)?;
    let probe = QueryProbe::new(inst.matroids().iter().map(MatroidOracle::counter));
    if inst.k() > inst.red().len() {
        return Ok(SolveOutcome::no(probe.report()));
    }
    let r = rank(&inst.matroids()[0]);
    if r < inst.k() {
        return Ok(SolveOutcome::no(probe.report()));
    }
    let found = k_subsets(n, r)
        .filter(|s| s.intersection(inst.red()).len() == inst.k())
        .find(|&s| is_common_basis(inst.matroids(), s));
    Ok(SolveOutcome {
        witness: found,
        queries: probe.report(),
    })
}

#[derive(Clone, Copy, Debug, Default)]
pub struct BruteForceEmi;

impl EmiSolver for BruteForceEmi {
    fn name(&self) -> &str {
        "brute-force-emi"
    }

    fn solve_emi(&self, inst: &EmiInstance) -> Result<SolveOutcome> {
        brute_force_emi(inst)
    }
}

/// EMI by enumerating the red `k`-sets and completing each with blue elements through
/// [`matroid_intersection_2`] on the contracted, blue-restricted matroids.
pub fn emi_via_intersection(inst: &EmiInstance) -> Result<SolveOutcome> {
    let n = inst.ground().size();
    check_brute_force_guard(n)?;
    let probe = QueryProbe::new(inst.matroids().iter().map(MatroidOracle::counter));
    let [m1, m2] = inst.matroids();
    let (r1, r2) = (rank(m1), rank(m2));
    if inst.k() > inst.red().len() || r1 != r2 || r1 < inst.k() {
        return Ok(SolveOutcome::no(probe.report()));
    }
    let blue = inst.ground().full().difference(inst.red());
    for reds in k_subsets_of(inst.red(), inst.k()) {
        if !m1.is_independent(reds) || !m2.is_independent(reds) {
            continue;
        }
        let (c1, c2) = (contract(m1, reds)?, contract(m2, reds)?);
        // blue elements in the contraction's indexing
        let keep: Subset = c1
            .parent_elements()
            .unwrap_or(&[])
            .iter()
            .enumerate()
            .filter(|(_, &e)| blue.contains(e))
            .map(|(i, _)| i)
            .collect();
        let (b1, b2) = (restrict(&c1, keep), restrict(&c2, keep));
        let common = matroid_intersection_2(&b1, &b2);
        if common.len() == r1 - inst.k() {
            let blues = c1.lift(b1.lift(common));
            return Ok(SolveOutcome::yes(reds.union(blues), probe.report()));
        }
    }
    Ok(SolveOutcome::no(probe.report()))
}

#[derive(Clone, Copy, Debug, Default)]
pub struct IntersectionEmi;

impl EmiSolver for IntersectionEmi {
    fn name(&self) -> &str {
        "intersection-emi"
    }

    fn solve_emi(&self, inst: &EmiInstance) -> Result<SolveOutcome> {
        emi_via_intersection(inst)
    }
}

/// Maximum-cardinality common independent set of two matroids on one ground set.
///
/// Augments along shortest paths of the exchange graph: for `y` in `S` and `x` outside,
/// `y -> x` when `S - y + x` is independent in `m1`, and `x -> y` when it is independent in `m2`.
/// Paths run from `{x : S + x ∈ I_1}` to `{x : S + x ∈ I_2}`. Breadth-first search visits
/// sources and neighbours in ascending index order, so the result is deterministic.
pub fn matroid_intersection_2(m1: &MatroidOracle, m2: &MatroidOracle) -> Subset {
    assert_eq!(m1.ground(), m2.ground(), "matroids must share a ground set");
    let n = m1.ground_size();
    let full = m1.ground().full();
    let mut current = Subset::EMPTY;
    loop {
        let outside = full.difference(current);
        let sources: Vec<usize> = outside.iter().filter(|&x| m1.is_independent(current.with(x))).collect();
        let sinks: Subset = outside.iter().filter(|&x| m2.is_independent(current.with(x))).collect();
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
        for y in current {
            for x in outside {
                let swapped = current.without(y).with(x);
                if m1.is_independent(swapped) {
                    adjacency[y].push(x);
                }
                if m2.is_independent(swapped) {
                    adjacency[x].push(y);
                }
            }
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let mut parent = vec![usize::MAX; n];
        let mut seen = Subset::EMPTY;
        let mut queue = VecDeque::new();
        for &s in &sources {
            seen = seen.with(s);
            queue.push_back(s);
        }
        let mut end = None;
        while let Some(v) = queue.pop_front() {
            if sinks.contains(v) {
                end = Some(v);
                break;
            }
            for &w in &adjacency[v] {
                if !seen.contains(w) {
                    seen = seen.with(w);
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        let Some(mut v) = end else {
            return current;
        };
        loop {
            current = Subset(current.0 ^ (1u64 << v));
            if parent[v] == usize::MAX {
                break;
            }
            v = parent[v];
        }
    }
}

/// Extension algorithm built on an ℓ-MI solver.
///
/// 1. `r = rank(M_1)`; 2. ⊥ if `|X| + ℓ_ext != r`; 3. ⊥ if `X` is dependent in some matroid;
/// 4. run `inner` on every matroid contracted by `X`; 5. lift its common basis, or ⊥.
pub fn extension_solve(
    inst: &LmiInstance,
    x: Subset,
    ell_ext: usize,
    inner: &dyn LmiSolver,
) -> Result<ExtensionResult> {
    let r = rank(&inst.matroids()[0]);
    if x.len() + ell_ext != r {
        return Ok(ExtensionResult::Bottom);
    }
    if !inst.matroids().iter().all(|m| m.is_independent(x)) {
        return Ok(ExtensionResult::Bottom);
    }
    let contracted = inst
        .matroids()
        .iter()
        .map(|m| contract(m, x))
        .collect::<Result<Vec<_>>>()?;
    let lifter = contracted[0].clone();
    let outcome = inner.solve_lmi(&LmiInstance::new(contracted)?)?;
    Ok(match outcome.witness {
        Some(s) => {
            let lifted = lifter.lift(s);
            debug_assert_eq!(lifted.len(), ell_ext);
            ExtensionResult::Extension(lifted)
        }
        None => ExtensionResult::Bottom,
    })
}

/// Queries every `k`-subset of `[n]` in increasing bitmask order until one is in `F`.
pub fn solve_es_bruteforce(es: &EsInstance) -> Result<SolveOutcome> {
    let count = crate::mls::binom_u128(es.n(), es.k());
    if count > ES_ENUMERATION_GUARD {
        return Err(Error::guard("C(n, k) for enumeration", count, ES_ENUMERATION_GUARD));
    }
    let probe = QueryProbe::new([es.family().counter()]);
    let found = k_subsets(es.n(), es.k()).find(|&s| es.query(s));
    Ok(SolveOutcome {
        witness: found,
        queries: probe.report(),
    })
}

#[derive(Clone, Copy, Debug, Default)]
pub struct EsBruteForce;

impl EsSolver for EsBruteForce {
    fn name(&self) -> &str {
        "es-brute"
    }

    fn solve_es(&self, es: &EsInstance) -> Result<SolveOutcome> {
        solve_es_bruteforce(es)
    }
}

/// Side `N` with `N^d = n` and `N >= 2`.
pub fn grid_side(n: usize, dim: usize) -> Option<usize> {
    (2..=n).take_while(|s| s.pow(dim as u32) <= n).find(|s| s.pow(dim as u32) == n)
}

/// Empty Set through ℓ-MI: `k = n` and `k <= 1` are answered directly, otherwise every
/// simple-uniform matrix's reduced instance goes to `lmi` until one says yes.
pub fn solve_es_via_lmi_reduction(es: &EsInstance, ell: usize, lmi: &dyn LmiSolver) -> Result<SolveOutcome> {
    if ell < 3 {
        return Err(Error::Precondition(format!("reduction needs ell >= 3, got {ell}")));
    }
    let dim = ell - 1;
    let side = grid_side(es.n(), dim).ok_or_else(|| {
        Error::Precondition(format!("universe {} is not N^{dim} for an integer N >= 2", es.n()))
    })?;
    let (n, k) = (es.n(), es.k());
    if k == n || k <= 1 {
        return solve_es_bruteforce(es);
    }
    let probe = QueryProbe::new([es.family().counter()]);
    let mut inner_queries = QueryReport::new();
    for limits in enumerate_su_matrices(side, dim)? {
        let reduced = reduce_es_to_lmi(es, &limits, ell)?;
        let outcome = lmi.solve_lmi(&reduced)?;
        inner_queries.merge(&outcome.queries);
        if let Some(w) = outcome.witness {
            let mut report = probe.report();
            report.merge(&inner_queries);
            return Ok(SolveOutcome::yes(w, report));
        }
    }
    let mut report = probe.report();
    report.merge(&inner_queries);
    Ok(SolveOutcome::no(report))
}

pub struct EsViaLmi<'a> {
    pub ell: usize,
    pub lmi: &'a dyn LmiSolver,
}

impl EsSolver for EsViaLmi<'_> {
    fn name(&self) -> &str {
        "es-via-lmi"
    }

    fn solve_es(&self, es: &EsInstance) -> Result<SolveOutcome> {
        solve_es_via_lmi_reduction(es, self.ell, self.lmi)
    }
}

/// Empty Set through one call to an EMI solver on the reduced instance. The witness is decoded
/// back to a member of `F`.
pub fn solve_es_via_emi_reduction(es: &EsInstance, emi: &dyn EmiSolver) -> Result<SolveOutcome> {
    let probe = QueryProbe::new([es.family().counter()]);
    let reduced = reduce_es_to_emi(es)?;
    let outcome = emi.solve_emi(&reduced.instance)?;
    let mut report = probe.report();
    report.merge(&outcome.queries);
    Ok(SolveOutcome {
        witness: outcome.witness.map(|w| reduced.decode(w)),
        queries: report,
    })
}

pub struct EsViaEmi<'a> {
    pub emi: &'a dyn EmiSolver,
}

impl EsSolver for EsViaEmi<'_> {
    fn name(&self) -> &str {
        "es-via-emi"
    }

    fn solve_es(&self, es: &EsInstance) -> Result<SolveOutcome> {
        solve_es_via_emi_reduction(es, self.emi)
    }
}

/// Decides an encoded combinatorial instance: yes iff `lmi` finds a common basis of the
/// declared size.
pub fn solve_encoded(enc: &EncodedInstance, lmi: &dyn LmiSolver) -> Result<SolveOutcome> {
    let outcome = lmi.solve_lmi(&enc.lmi)?;
    Ok(SolveOutcome {
        witness: outcome.witness.filter(|w| w.len() == enc.basis_size),
        queries: outcome.queries,
    })
}

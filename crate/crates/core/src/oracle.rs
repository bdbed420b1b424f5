//! Oracle-presented matroids.
//!
//! Every matroid in the crate is a [`MatroidOracle`]: a deterministic membership predicate over
//! subsets of `{0, .., n-1}` together with a [`QueryCounter`] charged once per membership call.
//! Minors built by [`restrict`] and [`contract`] forward exactly one query to the oracle they
//! wrap, so counts compose: a query against a minor shows up on both counters.
//!
//! Counters are atomic, so oracles are `Send + Sync` and may be shared between threads.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::subset::{all_subsets, Subset, MAX_GROUND};

/// Largest ground set accepted by [`verify_matroid_axioms`].
pub const AXIOM_GUARD: usize = 16;

/// Size of a ground set `{0, .., n-1}`.
///
/// Minors may have an empty ground set (contracting a basis leaves nothing behind), so zero is
/// accepted here; the top-level constructors reject it where it makes no sense.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet(usize);

impl GroundSet {
    pub fn new(size: usize) -> Result<GroundSet> {
        if size > MAX_GROUND {
            return Err(Error::guard("ground set size", size as u128, MAX_GROUND as u128));
        }
        Ok(GroundSet(size))
    }

    pub fn size(self) -> usize {
        self.0
    }

    pub fn full(self) -> Subset {
        Subset::full(self.0)
    }

    pub fn contains(self, s: Subset) -> bool {
        s.is_subset_of(self.full())
    }
}

/// Shared, monotone query counter with a label used in reports.
#[derive(Clone)]
pub struct QueryCounter {
    label: Arc<str>,
    count: Arc<AtomicU64>,
}

impl QueryCounter {
    pub fn new(label: impl Into<String>) -> QueryCounter {
        QueryCounter {
            label: Arc::from(label.into()),
            count: Arc::new(AtomicU64::new(0)),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn get(&self) -> u64 {
        self.count.load(Ordering::Relaxed)
    }

    #[inline]
    pub fn bump(&self) {
        self.count.fetch_add(1, Ordering::Relaxed);
    }

    pub fn same_as(&self, other: &QueryCounter) -> bool {
        Arc::ptr_eq(&self.count, &other.count)
    }
}

impl fmt::Debug for QueryCounter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.label, self.get())
    }
}

/// Per-oracle query counts of one run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QueryReport {
    counts: BTreeMap<String, u64>,
}

impl QueryReport {
    pub fn new() -> QueryReport {
        QueryReport::default()
    }

    /// Adds `count` under `label`, merging with an existing entry.
    pub fn add(&mut self, label: &str, count: u64) {
        *self.counts.entry(label.to_string()).or_insert(0) += count;
    }

    pub fn merge(&mut self, other: &QueryReport) {
        for (label, count) in &other.counts {
            self.add(label, *count);
        }
    }

    pub fn get(&self, label: &str) -> u64 {
        self.counts.get(label).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.counts.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// `label=count` pairs joined by `;`, in label order.
    pub fn to_compact(&self) -> String {
        self.counts
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// Snapshot of a set of counters; [`QueryProbe::report`] yields the increments since the snapshot.
/// Counters that are clones of one another are reported once.
pub struct QueryProbe {
    start: Vec<(QueryCounter, u64)>,
}

impl QueryProbe {
    pub fn new<'a, I: IntoIterator<Item = &'a QueryCounter>>(counters: I) -> QueryProbe {
        let mut start: Vec<(QueryCounter, u64)> = Vec::new();
        for c in counters {
            if !start.iter().any(|(seen, _)| seen.same_as(c)) {
                start.push((c.clone(), c.get()));
            }
        }
        QueryProbe { start }
    }

    pub fn report(&self) -> QueryReport {
        let mut report = QueryReport::new();
        for (c, before) in &self.start {
            report.add(c.label(), c.get() - before);
        }
        report
    }
}

type Predicate = Arc<dyn Fn(Subset) -> bool + Send + Sync>;

/// A counted membership predicate over subsets of `{0, .., n-1}`.
///
/// Used both for matroid independence ([`MatroidOracle`]) and for plain set families such as the
/// Empty Set family `F` or the collection `G` of a G-matroid.
#[derive(Clone)]
pub struct SetOracle {
    ground: GroundSet,
    predicate: Predicate,
    counter: QueryCounter,
}

impl SetOracle {
    pub fn new<F>(ground: GroundSet, label: impl Into<String>, predicate: F) -> SetOracle
    where
        F: Fn(Subset) -> bool + Send + Sync + 'static,
    {
        SetOracle {
            ground,
            predicate: Arc::new(predicate),
            counter: QueryCounter::new(label),
        }
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn ground_size(&self) -> usize {
        self.ground.size()
    }

    /// One counted evaluation of the predicate.
    #[inline]
    pub fn query(&self, s: Subset) -> bool {
        debug_assert!(self.ground.contains(s), "{s:?} outside ground of {}", self.ground.size());
        self.counter.bump();
        (self.predicate)(s)
    }

    pub fn counter(&self) -> &QueryCounter {
        &self.counter
    }

    pub fn queries(&self) -> u64 {
        self.counter.get()
    }

    /// Same predicate behind a fresh counter.
    pub fn recounted(&self, label: impl Into<String>) -> SetOracle {
        SetOracle {
            ground: self.ground,
            predicate: self.predicate.clone(),
            counter: QueryCounter::new(label),
        }
    }
}

impl fmt::Debug for SetOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SetOracle")
            .field("ground", &self.ground.size())
            .field("counter", &self.counter)
            .finish()
    }
}

/// A matroid given by an independence oracle.
///
/// The matroid axioms are not checked at construction; [`verify_matroid_axioms`] does that
/// exhaustively for small ground sets.
#[derive(Clone)]
pub struct MatroidOracle {
    oracle: SetOracle,
    lift: Option<Arc<[usize]>>,
}

impl MatroidOracle {
    pub fn new<F>(ground: GroundSet, label: impl Into<String>, independent: F) -> MatroidOracle
    where
        F: Fn(Subset) -> bool + Send + Sync + 'static,
    {
        MatroidOracle {
            oracle: SetOracle::new(ground, label, independent),
            lift: None,
        }
    }

    pub fn ground(&self) -> GroundSet {
        self.oracle.ground()
    }

    pub fn ground_size(&self) -> usize {
        self.oracle.ground_size()
    }

    /// Counted membership query: is `s` independent?
    #[inline]
    pub fn is_independent(&self, s: Subset) -> bool {
        self.oracle.query(s)
    }

    pub fn counter(&self) -> &QueryCounter {
        self.oracle.counter()
    }

    pub fn label(&self) -> &str {
        self.oracle.counter().label()
    }

    pub fn queries(&self) -> u64 {
        self.oracle.queries()
    }

    /// Same matroid behind a fresh counter.
    pub fn recounted(&self, label: impl Into<String>) -> MatroidOracle {
        MatroidOracle {
            oracle: self.oracle.recounted(label),
            lift: self.lift.clone(),
        }
    }

    /// For a minor: element `i` of this oracle is element `parent_elements()[i]` of the oracle it
    /// was derived from.
    pub fn parent_elements(&self) -> Option<&[usize]> {
        self.lift.as_deref()
    }

    /// Maps a subset of this minor back to the parent's indexing; identity for non-minors.
    pub fn lift(&self, s: Subset) -> Subset {
        match &self.lift {
            None => s,
            Some(map) => s.iter().map(|i| map[i]).collect(),
        }
    }
}

impl fmt::Debug for MatroidOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MatroidOracle")
            .field("ground", &self.ground_size())
            .field("counter", self.counter())
            .finish()
    }
}

/// Maximal independent set grown greedily along `order`.
pub fn greedy_basis_in_order(oracle: &MatroidOracle, order: impl IntoIterator<Item = usize>) -> Subset {
    let mut basis = Subset::EMPTY;
    for e in order {
        let grown = basis.with(e);
        if oracle.is_independent(grown) {
            basis = grown;
        }
    }
    basis
}

/// Greedy basis scanning elements in ascending index order.
pub fn greedy_basis(oracle: &MatroidOracle) -> Subset {
    greedy_basis_in_order(oracle, 0..oracle.ground_size())
}

/// Rank of the matroid, `n` membership queries.
pub fn rank(oracle: &MatroidOracle) -> usize {
    greedy_basis(oracle).len()
}

/// `s` is independent and no element outside `s` can be added.
pub fn is_basis(oracle: &MatroidOracle, s: Subset) -> bool {
    oracle.is_independent(s)
        && oracle
            .ground()
            .full()
            .difference(s)
            .iter()
            .all(|e| !oracle.is_independent(s.with(e)))
}

/// Restriction to `s`, re-indexed to `{0, .., |s|-1}` in ascending order of `s`.
pub fn restrict(oracle: &MatroidOracle, s: Subset) -> MatroidOracle {
    debug_assert!(oracle.ground().contains(s));
    let map: Arc<[usize]> = s.to_vec().into();
    let inner = oracle.clone();
    let forward = map.clone();
    let ground = GroundSet(map.len());
    MatroidOracle {
        oracle: SetOracle::new(ground, format!("{}|restrict", oracle.label()), move |t| {
            inner.is_independent(t.iter().map(|i| forward[i]).collect())
        }),
        lift: Some(map),
    }
}

/// Contraction by the independent set `x`, over `E \ x` re-indexed in ascending order.
///
/// Checks independence of `x` with one query up front.
pub fn contract(oracle: &MatroidOracle, x: Subset) -> Result<MatroidOracle> {
    debug_assert!(oracle.ground().contains(x));
    if !oracle.is_independent(x) {
        return Err(Error::NotIndependent(format!("{x:?}")));
    }
    let map: Arc<[usize]> = oracle.ground().full().difference(x).to_vec().into();
    let inner = oracle.clone();
    let forward = map.clone();
    let ground = GroundSet(map.len());
    Ok(MatroidOracle {
        oracle: SetOracle::new(ground, format!("{}|contract", oracle.label()), move |t| {
            let lifted: Subset = t.iter().map(|i| forward[i]).collect();
            inner.is_independent(lifted.union(x))
        }),
        lift: Some(map),
    })
}

/// Outcome of [`verify_matroid_axioms`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomVerdict {
    Pass,
    Counterexample(AxiomViolation),
}

impl AxiomVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, AxiomVerdict::Pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    EmptySetDependent,
    /// `set` is independent but `subset` is not.
    Hereditary { set: Subset, subset: Subset },
    /// Both independent, `|larger| > |smaller|`, and no element of `larger \ smaller` extends
    /// `smaller`.
    Exchange { larger: Subset, smaller: Subset },
}

/// Exhaustive check of the matroid axioms over all `2^n` subsets.
///
/// Issues exactly `2^n` membership queries. The exchange check covers every pair `(A, B)` with
/// `|A| > |B|`: for each independent `B` it finds the largest independent set avoiding all
/// elements that extend `B`, which exists with size `> |B|` iff some pair fails.
pub fn verify_matroid_axioms(oracle: &MatroidOracle) -> Result<AxiomVerdict> {
    let n = oracle.ground_size();
    if n > AXIOM_GUARD {
        return Err(Error::guard("axiom verifier ground set", n as u128, AXIOM_GUARD as u128));
    }
    let indep: Vec<bool> = all_subsets(n).map(|s| oracle.is_independent(s)).collect();
    let full = Subset::full(n);

    if !indep[0] {
        return Ok(AxiomVerdict::Counterexample(AxiomViolation::EmptySetDependent));
    }
    for s in all_subsets(n) {
        if !indep[s.0 as usize] {
            continue;
        }
        for e in s {
            let sub = s.without(e);
            if !indep[sub.0 as usize] {
                return Ok(AxiomVerdict::Counterexample(AxiomViolation::Hereditary { set: s, subset: sub }));
            }
        }
    }

    // largest[u] = size of a largest independent subset of u
    let mut largest = vec![0u8; 1 << n];
    for s in all_subsets(n) {
        let i = s.0 as usize;
        largest[i] = if indep[i] {
            s.len() as u8
        } else {
            s.iter().map(|e| largest[s.without(e).0 as usize]).max().unwrap_or(0)
        };
    }
    for b in all_subsets(n) {
        if !indep[b.0 as usize] {
            continue;
        }
        let extenders: Subset = full
            .difference(b)
            .iter()
            .filter(|&e| indep[b.with(e).0 as usize])
            .collect();
        let mut avoid = full.difference(extenders);
        if (largest[avoid.0 as usize] as usize) > b.len() {
            while !indep[avoid.0 as usize] {
                let target = largest[avoid.0 as usize];
                let e = avoid
                    .iter()
                    .find(|&e| largest[avoid.without(e).0 as usize] == target)
                    .expect("largest independent subset is attained after some removal");
                avoid = avoid.without(e);
            }
            return Ok(AxiomVerdict::Counterexample(AxiomViolation::Exchange {
                larger: avoid,
                smaller: b,
            }));
        }
    }
    Ok(AxiomVerdict::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform(n: usize, k: usize) -> MatroidOracle {
        MatroidOracle::new(GroundSet::new(n).unwrap(), "U", move |s| s.len() <= k)
    }

    #[test]
    fn rank_and_basis_of_uniform() {
        let u = uniform(5, 3);
        assert_eq!(rank(&u), 3);
        assert_eq!(u.queries(), 5);
        let u = uniform(3, 2);
        assert!(is_basis(&u, Subset::from_elements([0, 1])));
        assert!(!is_basis(&u, Subset::from_elements([0])));
    }

    #[test]
    fn membership_counts_every_call() {
        let u = uniform(4, 2);
        let s = Subset::from_elements([1, 3]);
        let first = u.is_independent(s);
        let second = u.is_independent(s);
        assert_eq!(first, second);
        assert_eq!(u.queries(), 2);
    }

    #[test]
    fn restrict_forwards_one_query() {
        let u = uniform(4, 2);
        let r = restrict(&u, Subset::from_elements([0, 1, 2]));
        assert_eq!(r.ground_size(), 3);
        for s in all_subsets(3) {
            assert_eq!(r.is_independent(s), s.len() <= 2);
        }
        assert_eq!(r.queries(), 8);
        assert_eq!(u.queries(), 8);
        assert_eq!(r.lift(Subset::from_elements([0, 2])), Subset::from_elements([0, 2]));
        let r = restrict(&u, Subset::from_elements([1, 3]));
        assert_eq!(r.lift(Subset::from_elements([1])), Subset::from_elements([3]));
    }

    #[test]
    fn restrict_to_full_ground_is_identity() {
        let u = uniform(4, 2);
        let r = restrict(&u, Subset::full(4));
        for s in all_subsets(4) {
            assert_eq!(r.is_independent(s), s.len() <= 2);
        }
    }

    #[test]
    fn contract_uniform() {
        let u = uniform(4, 2);
        let c = contract(&u, Subset::singleton(0)).unwrap();
        assert_eq!(u.queries(), 1, "eager independence check");
        assert_eq!(c.ground_size(), 3);
        assert_eq!(c.parent_elements(), Some(&[1, 2, 3][..]));
        for s in all_subsets(3) {
            assert_eq!(c.is_independent(s), s.len() <= 1);
        }
        assert_eq!(u.queries(), 9);
    }

    #[test]
    fn contract_rejects_dependent_set() {
        let u = uniform(4, 1);
        let err = contract(&u, Subset::from_elements([0, 1])).unwrap_err();
        assert!(matches!(err, Error::NotIndependent(_)));
    }

    #[test]
    fn contract_by_empty_is_identity() {
        let u = uniform(4, 2);
        let c = contract(&u, Subset::EMPTY).unwrap();
        for s in all_subsets(4) {
            assert_eq!(c.is_independent(s), s.len() <= 2);
        }
    }

    #[test]
    fn axioms_pass_for_uniform() {
        assert_eq!(verify_matroid_axioms(&uniform(4, 2)).unwrap(), AxiomVerdict::Pass);
        let u = uniform(6, 3);
        verify_matroid_axioms(&u).unwrap();
        assert_eq!(u.queries(), 64);
    }

    #[test]
    fn axioms_catch_hereditary_violation() {
        let m = MatroidOracle::new(GroundSet::new(3).unwrap(), "bad", |s| s.len() != 1);
        match verify_matroid_axioms(&m).unwrap() {
            AxiomVerdict::Counterexample(AxiomViolation::Hereditary { set, subset }) => {
                assert_eq!(set.len(), 2);
                assert_eq!(subset.len(), 1);
            }
            other => panic!("unexpected verdict {other:?}"),
        }
    }

    #[test]
    fn axioms_catch_empty_dependent() {
        let m = MatroidOracle::new(GroundSet::new(2).unwrap(), "none", |_| false);
        assert_eq!(
            verify_matroid_axioms(&m).unwrap(),
            AxiomVerdict::Counterexample(AxiomViolation::EmptySetDependent)
        );
    }

    #[test]
    fn axioms_catch_exchange_violation() {
        // independent sets: subsets of {0,1} and of {2}: hereditary, but {2} cannot grow from {0,1}
        let m = MatroidOracle::new(GroundSet::new(3).unwrap(), "two-flats", |s| {
            s.is_subset_of(Subset::from_elements([0, 1])) || s.is_subset_of(Subset::singleton(2))
        });
        match verify_matroid_axioms(&m).unwrap() {
            AxiomVerdict::Counterexample(AxiomViolation::Exchange { larger, smaller }) => {
                assert!(larger.len() > smaller.len());
                assert!(larger
                    .difference(smaller)
                    .iter()
                    .all(|e| !m.is_independent(smaller.with(e))));
            }
            other => panic!("unexpected verdict {other:?}"),
        }
    }

    #[test]
    fn axiom_guard() {
        let m = uniform(17, 2);
        assert!(verify_matroid_axioms(&m).unwrap_err().is_guard());
    }

    #[test]
    fn probe_reports_deltas_once_per_counter() {
        let u = uniform(4, 2);
        u.is_independent(Subset::EMPTY);
        let alias = u.clone();
        let probe = QueryProbe::new([u.counter(), alias.counter()]);
        rank(&u);
        let report = probe.report();
        assert_eq!(report.total(), 4);
        assert_eq!(report.get("U"), 4);
        assert_eq!(report.to_compact(), "U=4");
    }
}

//! Adversary audit for deterministic Empty Set solvers.
//!
//! The solver runs against `F = ∅` while every queried `k`-subset is recorded. If it answers
//! "no" having left some `S*` unqueried, then on `F = {S*}` it would see the same all-false
//! transcript and answer "no" again, which is wrong.

use std::collections::BTreeSet;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::gadgets::EsInstance;
use crate::mls::binom_u128;
use crate::oracle::QueryReport;
use crate::solvers::{EsSolver, SolveOutcome};
use crate::subset::{k_subsets, Subset};

/// Largest universe the audit will enumerate.
pub const AUDIT_GUARD: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoolingCertificate {
    pub n: usize,
    pub k: usize,
    /// First `k`-subset (increasing bitmask order) that was never queried.
    pub witness: Subset,
    /// Queries issued to `F`, repeats included.
    pub transcript_len: u64,
    /// Distinct `k`-subsets queried; always below `C(n, k)`.
    pub distinct: u64,
}

#[derive(Clone, Debug)]
pub struct AuditOutcome {
    pub outcome: SolveOutcome,
    pub queries: QueryReport,
    pub certificate: Option<FoolingCertificate>,
}

/// Runs `solver` on the empty family over `S_{n,k}`.
pub fn audited_es_run(solver: &dyn EsSolver, n: usize, k: usize) -> Result<AuditOutcome> {
    if n > AUDIT_GUARD {
        return Err(Error::guard("audit universe", n as u128, AUDIT_GUARD as u128));
    }
    let seen: Arc<Mutex<BTreeSet<Subset>>> = Arc::default();
    let log = Arc::clone(&seen);
    let es = EsInstance::new(n, k, move |s| {
        log.lock().expect("audit log poisoned").insert(s);
        false
    })?;
    let outcome = solver.solve_es(&es)?;
    let mut queries = outcome.queries.clone();
    if queries.get("F") == 0 && es.queries() > 0 {
        queries.add("F", es.queries());
    }
    let seen = seen.lock().expect("audit log poisoned");
    let distinct = seen.len() as u64;
    let certificate = if outcome.is_yes() || u128::from(distinct) >= binom_u128(n, k) {
        None
    } else {
        k_subsets(n, k)
            .find(|s| !seen.contains(s))
            .map(|witness| FoolingCertificate {
                n,
                k,
                witness,
                transcript_len: es.queries(),
                distinct,
            })
    };
    Ok(AuditOutcome {
        outcome,
        queries,
        certificate,
    })
}

//! `paving verify`: a fast pass over the small-instance zoo. The full suites live in the core
//! crate's tests; this is what a user can run against an installed binary.

use std::io::Write;

use paving_core::mls::{budget_plan, derive_seed, monotone_local_search, phi, psi, BruteForceExtension};
use paving_core::solvers::{BruteForceLmi, IntersectionEmi};
use paving_core::subset::{all_subsets, k_subsets, Subset};
use paving_core::{
    audited_es_run, enumerate_su_matrices, g_matroid, graphic_matroid, grid_partition_matroid, is_basis,
    is_l_perfect, matroid_intersection_2, partition_matroid, rank, solve_es_bruteforce, solve_es_via_emi_reduction,
    solve_es_via_lmi_reduction, truncate, uniform_matroid, verify_matroid_axioms, EsInstance, GroundSet, Grid,
    ImplicitSetProblem, LogTimeFunction, MatroidOracle, SetOracle, SuMatrix,
};

use crate::args::Family;
use crate::commands::PrefixSolver;
use crate::error::{CliError, CliResult};
use crate::generate::lmi_instance;
use crate::report::open_output;

struct Check {
    name: &'static str,
    run: fn(u64) -> paving_core::Result<Result<String, String>>,
}

fn hashed_family(n: usize, seed: u64) -> SetOracle {
    SetOracle::new(GroundSet::new(n).expect("n <= 64"), "G", move |s| {
        derive_seed(seed, 0, s.bits()) & 1 == 1
    })
}

fn small_su() -> paving_core::Result<Vec<SuMatrix>> {
    let mut all: Vec<SuMatrix> = enumerate_su_matrices(2, 2)?.collect();
    all.extend(enumerate_su_matrices(3, 2)?);
    Ok(all)
}

fn zoo(seed: u64) -> paving_core::Result<Vec<MatroidOracle>> {
    let k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let mut zoo = vec![
        uniform_matroid(5, 2)?,
        partition_matroid(6, &[Subset::from_elements([0, 1, 2]), Subset::from_elements([3, 4, 5])], &[2, 1])?,
        graphic_matroid(4, &k4)?,
        truncate(&graphic_matroid(4, &k4)?, 2),
    ];
    for (i, l) in small_su()?.iter().enumerate() {
        zoo.push(g_matroid(l, &hashed_family(l.side().pow(l.dim() as u32), seed ^ i as u64))?);
    }
    Ok(zoo)
}

fn axioms(seed: u64) -> paving_core::Result<Result<String, String>> {
    let zoo = zoo(seed)?;
    for m in &zoo {
        if !verify_matroid_axioms(m)?.is_pass() {
            return Ok(Err(format!("{} fails the axioms", m.label())));
        }
    }
    Ok(Ok(format!("{} matroids", zoo.len())))
}

fn paving(seed: u64) -> paving_core::Result<Result<String, String>> {
    let mut count = 0;
    for (i, l) in small_su()?.iter().enumerate() {
        let gm = g_matroid(l, &hashed_family(l.side().pow(l.dim() as u32), seed.rotate_left(7) ^ i as u64))?;
        let k = l.column_sum();
        if rank(&gm) != k || all_subsets(gm.ground_size()).any(|s| s.len() < k && !gm.is_independent(s)) {
            return Ok(Err(format!("G-matroid for L={l} is not paving of rank {k}")));
        }
        count += 1;
    }
    Ok(Ok(format!("{count} G-matroids")))
}

fn perfect_sets(_: u64) -> paving_core::Result<Result<String, String>> {
    let mut checked = 0;
    for l in small_su()? {
        let grid = Grid::new(l.side(), l.dim())?;
        let parts: Vec<MatroidOracle> =
            (1..=l.dim()).map(|j| grid_partition_matroid(&l, j)).collect::<Result<_, _>>()?;
        for s in all_subsets(grid.size()) {
            if is_l_perfect(&grid, s, &l) != parts.iter().all(|m| is_basis(m, s)) {
                return Ok(Err(format!("L={l} S={{{}}}", s.to_one_based())));
            }
            checked += 1;
        }
    }
    Ok(Ok(format!("{checked} sets")))
}

fn families(n: usize, k: usize) -> impl Iterator<Item = Vec<Subset>> {
    let sets: Vec<Subset> = k_subsets(n, k).collect();
    (0u64..1 << sets.len()).map(move |mask| {
        sets.iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, s)| *s)
            .collect()
    })
}

fn reductions(_: u64) -> paving_core::Result<Result<String, String>> {
    let mut count = 0;
    for k in 0..=4 {
        for members in families(4, k) {
            let es = EsInstance::explicit(4, k, &members)?;
            let want = solve_es_bruteforce(&es)?.is_yes();
            let lmi = solve_es_via_lmi_reduction(&es, 3, &BruteForceLmi)?.is_yes();
            let emi = solve_es_via_emi_reduction(&es, &IntersectionEmi)?.is_yes();
            if lmi != want || emi != want {
                return Ok(Err(format!("k={k} family of {} sets: brute {want}, lmi {lmi}, emi {emi}", members.len())));
            }
            count += 1;
        }
    }
    Ok(Ok(format!("{count} families over [4]")))
}

fn max_common(a: &MatroidOracle, b: &MatroidOracle) -> usize {
    all_subsets(a.ground_size())
        .filter(|&s| a.is_independent(s) && b.is_independent(s))
        .map(Subset::len)
        .max()
        .unwrap_or(0)
}

fn intersection(seed: u64) -> paving_core::Result<Result<String, String>> {
    for i in 0..60 {
        let n = 1 + i % 9;
        let inst = lmi_instance(Family::Random, n, None, 2, derive_seed(seed, n, i as u64))
            .map_err(|e| paving_core::Error::Precondition(e.to_string()))?;
        let [a, b] = [&inst.matroids()[0], &inst.matroids()[1]];
        let common = matroid_intersection_2(a, b);
        if !(a.is_independent(common) && b.is_independent(common)) || common.len() != max_common(a, b) {
            return Ok(Err(format!("n={n}: {{{}}} is not a maximum common independent set", common.to_one_based())));
        }
    }
    Ok(Ok("60 random pairs".into()))
}

fn mls_budget(seed: u64) -> paving_core::Result<Result<String, String>> {
    for n in 1..=10 {
        let g = LogTimeFunction::ksquare(1.0);
        let out = monotone_local_search(&ImplicitSetProblem::empty(n)?, &BruteForceExtension::new(g.clone()), seed)?;
        let plan = budget_plan(n, &g)?.total();
        if out.total_invocations() != plan {
            return Ok(Err(format!("n={n}: {} invocations, plan {plan}", out.total_invocations())));
        }
    }
    Ok(Ok("no-instances use the whole plan for n <= 10".into()))
}

fn phi_bounds(_: u64) -> paving_core::Result<Result<String, String>> {
    for n in 1..=200 {
        for g in [
            LogTimeFunction::one(),
            LogTimeFunction::exp(),
            LogTimeFunction::klogk(1.0),
            LogTimeFunction::ksquare(1.0),
            LogTimeFunction::poly(n),
        ] {
            let (value, _) = phi(&g, n);
            let bound = n as f64 - value + (n as f64).log2();
            if psi(&g, n) > bound + 1e-9 || value > 0.15 * n as f64 {
                return Ok(Err(format!("n={n} g={}", g.name())));
            }
        }
    }
    Ok(Ok("n <= 200, five families".into()))
}

fn audits(_: u64) -> paving_core::Result<Result<String, String>> {
    let full = audited_es_run(&paving_core::EsBruteForce, 6, 3)?;
    let short = audited_es_run(&PrefixSolver::new(10), 6, 3)?;
    match (full.certificate, short.certificate) {
        (None, Some(c)) => Ok(Ok(format!("prefix-10 fooled by {{{}}}", c.witness.to_one_based()))),
        (a, b) => Ok(Err(format!("enumerator certificate {a:?}, prefix certificate {b:?}"))),
    }
}

const CHECKS: &[Check] = &[
    Check { name: "matroid axioms", run: axioms },
    Check { name: "G-matroids are paving", run: paving },
    Check { name: "perfect sets are common partition bases", run: perfect_sets },
    Check { name: "reductions agree with enumeration", run: reductions },
    Check { name: "two-matroid intersection is optimal", run: intersection },
    Check { name: "MLS spends its budget on no-instances", run: mls_budget },
    Check { name: "phi and psi bounds", run: phi_bounds },
    Check { name: "fooling audit", run: audits },
];

pub fn verify(out: Option<&str>, seed: u64) -> CliResult<()> {
    let mut w = open_output(out)?;
    let mut failed = 0;
    for check in CHECKS {
        let line = match (check.run)(seed) {
            Ok(Ok(detail)) => format!("PASS {}: {detail}", check.name),
            Ok(Err(detail)) => {
                failed += 1;
                format!("FAIL {}: {detail}", check.name)
            }
            Err(e) => {
                failed += 1;
                format!("FAIL {}: {e}", check.name)
            }
        };
        writeln!(w, "{line}").map_err(|source| CliError::Io {
            path: out.unwrap_or("stdout").into(),
            source,
        })?;
    }
    w.flush().map_err(|source| CliError::Io {
        path: out.unwrap_or("stdout").into(),
        source,
    })?;
    if failed > 0 {
        return Err(CliError::Verify(failed));
    }
    Ok(())
}

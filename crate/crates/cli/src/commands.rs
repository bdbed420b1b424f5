use std::io::Write;
use std::time::Instant;

use paving_core::mls::{budget_plan, monotone_local_search, phi, psi, BruteForceExtension, ImplicitSetProblem};
use paving_core::solvers::{BruteForceLmi, IntersectionEmi};
use paving_core::subset::{k_subsets, Subset};
use paving_core::{
    audited_es_run, brute_force_lmi, emi_via_intersection, is_basis, reduce_es_to_emi, solve_encoded,
    solve_es_bruteforce, solve_es_via_emi_reduction, solve_es_via_lmi_reduction, EncodedInstance, EsInstance,
    EsSolver, EsViaEmi, EsViaLmi, LmiInstance, LogTimeFunction, QueryReport, SolveOutcome,
};

use crate::args::{AuditArgs, AuditSolver, BenchArgs, Family, PhiArgs, Problem, SolveArgs};
use crate::error::{CliError, CliResult};
use crate::generate::{encoded_3dm, encoded_hampath, lmi_instance, planted_subset, trial_seed, EsSource};
use crate::report::{csv_writer, open_output, ResultRow};

pub fn problem_name(p: Problem) -> &'static str {
    match p {
        Problem::Lmi => "lmi",
        Problem::Emi => "emi",
        Problem::EsBrute => "es-brute",
        Problem::EsViaLmi => "es-via-lmi",
        Problem::EsViaEmi => "es-via-emi",
        Problem::Mls => "mls",
        Problem::ThreeDm => "3dm",
        Problem::Hampath => "hampath",
    }
}

/// Unknown family names are a command-line mistake, not a run failure.
pub fn log_time(name: &str, alpha: f64, n: usize) -> CliResult<LogTimeFunction> {
    LogTimeFunction::by_name(name, alpha, n).map_err(|e| CliError::Usage(e.to_string()))
}

fn input(a: &SolveArgs) -> CliResult<&str> {
    a.input
        .as_deref()
        .ok_or_else(|| CliError::Usage(format!("--problem {} needs --input", problem_name(a.problem))))
}

fn es_source(a: &SolveArgs) -> CliResult<EsSource> {
    let family = match (a.family, &a.input) {
        (Some(f), _) => f,
        (None, Some(_)) => Family::Explicit,
        (None, None) => return Err(CliError::Usage("give --family or --input".into())),
    };
    EsSource::new(family, a.n, a.k, a.input.clone())
}

fn lmi_params(a: &SolveArgs) -> CliResult<(Family, usize)> {
    let n = a.n.ok_or_else(|| CliError::Usage("--problem lmi needs --n".into()))?;
    Ok((a.family.unwrap_or(Family::Planted), n))
}

fn invalid(what: &str, w: Subset) -> CliError {
    CliError::Invalid(format!("{what}: {{{}}}", w.to_one_based()))
}

fn check_es_witness(source: &EsSource, seed: u64, w: Subset) -> CliResult<()> {
    if source.build(seed)?.query(w) {
        Ok(())
    } else {
        Err(invalid("not a member of F", w))
    }
}

fn check_common_basis(inst: &LmiInstance, w: Subset) -> CliResult<()> {
    if inst.matroids().iter().all(|m| is_basis(m, w)) {
        Ok(())
    } else {
        Err(invalid("not a common basis", w))
    }
}

fn check_encoded(fresh: &EncodedInstance, w: Subset) -> CliResult<()> {
    if w.len() != fresh.basis_size {
        return Err(invalid("wrong basis size", w));
    }
    check_common_basis(&fresh.lmi, w)
}

fn mls_outcome(es: &EsInstance, g: LogTimeFunction, seed: u64) -> CliResult<SolveOutcome> {
    let member = es.clone();
    let problem = ImplicitSetProblem::new(es.n(), move |s| member.query(s))?;
    let out = monotone_local_search(&problem, &BruteForceExtension::new(g), seed)?;
    let mut q = QueryReport::new();
    q.add("F", problem.queries());
    q.add("extensions", u64::try_from(out.total_invocations()).unwrap_or(u64::MAX));
    Ok(SolveOutcome { witness: out.witness, queries: q })
}

/// Runs one trial and re-validates its witness on a second copy of the instance.
fn run_trial(a: &SolveArgs, seed: u64, trial: u64) -> CliResult<(String, String, SolveOutcome)> {
    let solver = problem_name(a.problem).to_string();
    match a.problem {
        Problem::Lmi => {
            let (family, n) = lmi_params(a)?;
            let inst = lmi_instance(family, n, a.k, a.ell, seed)?;
            let out = brute_force_lmi(&inst)?;
            if let Some(w) = out.witness {
                check_common_basis(&lmi_instance(family, n, a.k, a.ell, seed)?, w)?;
            }
            let id = format!("{}-n{n}-l{}#{trial}", crate::generate::family_name(family), a.ell);
            Ok((id, solver, out))
        }
        Problem::Emi => {
            let source = es_source(a)?;
            let out = emi_via_intersection(&reduce_es_to_emi(&source.build(seed)?)?.instance)?;
            if let Some(w) = out.witness {
                let fresh = reduce_es_to_emi(&source.build(seed)?)?.instance;
                if w.intersection(fresh.red()).len() != fresh.k() {
                    return Err(invalid("wrong red count", w));
                }
                if !fresh.matroids().iter().all(|m| is_basis(m, w)) {
                    return Err(invalid("not a common basis", w));
                }
            }
            Ok((source.id(trial), solver, out))
        }
        Problem::EsBrute | Problem::EsViaLmi | Problem::EsViaEmi | Problem::Mls => {
            let source = es_source(a)?;
            let es = source.build(seed)?;
            let out = match a.problem {
                Problem::EsBrute => solve_es_bruteforce(&es)?,
                Problem::EsViaLmi => solve_es_via_lmi_reduction(&es, a.ell, &BruteForceLmi)?,
                Problem::EsViaEmi => solve_es_via_emi_reduction(&es, &IntersectionEmi)?,
                _ => mls_outcome(&es, log_time(&a.g, a.alpha, es.n())?, seed)?,
            };
            if let Some(w) = out.witness {
                check_es_witness(&source, seed, w)?;
            }
            Ok((source.id(trial), solver, out))
        }
        Problem::ThreeDm | Problem::Hampath => {
            let path = input(a)?;
            let encode = if a.problem == Problem::ThreeDm { encoded_3dm } else { encoded_hampath };
            let out = solve_encoded(&encode(path)?, &BruteForceLmi)?;
            if let Some(w) = out.witness {
                check_encoded(&encode(path)?, w)?;
            }
            Ok((path.to_string(), solver, out))
        }
    }
}

pub fn solve(a: &SolveArgs, seed: u64) -> CliResult<()> {
    let mut rows = Vec::new();
    for trial in 0..a.trials {
        let start = Instant::now();
        let (instance, solver, out) = run_trial(a, trial_seed(seed, trial), trial)?;
        let wall = a.timing.then(|| start.elapsed());
        log::debug!("{instance}: {} after {} queries", out.verdict(), out.queries.total());
        rows.push(ResultRow {
            instance,
            solver,
            verdict: out.verdict(),
            witness: out.witness,
            queries: out.queries,
            wall,
        });
    }
    // nothing is written until every trial succeeded, so a failing run leaves no partial CSV
    let mut w = csv_writer(a.common.out.as_deref())?;
    w.write_record(ResultRow::HEADER)?;
    for row in &rows {
        w.write_record(row.record())?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Queries the first `budget` `k`-subsets in bitmask order and answers from those alone.
pub struct PrefixSolver {
    pub budget: usize,
    name: String,
}

impl PrefixSolver {
    pub fn new(budget: usize) -> PrefixSolver {
        PrefixSolver {
            budget,
            name: format!("prefix-{budget}"),
        }
    }
}

impl EsSolver for PrefixSolver {
    fn name(&self) -> &str {
        &self.name
    }

    fn solve_es(&self, es: &EsInstance) -> paving_core::Result<SolveOutcome> {
        let hit = k_subsets(es.n(), es.k()).take(self.budget).find(|&s| es.query(s));
        let mut q = QueryReport::new();
        q.add("F", es.queries());
        Ok(SolveOutcome { witness: hit, queries: q })
    }
}

pub fn audit(a: &AuditArgs) -> CliResult<()> {
    let via_lmi = EsViaLmi {
        ell: a.ell,
        lmi: &BruteForceLmi,
    };
    let via_emi = EsViaEmi { emi: &IntersectionEmi };
    let prefix = PrefixSolver::new(a.budget);
    let solver: &dyn EsSolver = match a.solver {
        AuditSolver::EsBrute => &paving_core::EsBruteForce,
        AuditSolver::EsViaLmi => &via_lmi,
        AuditSolver::EsViaEmi => &via_emi,
        AuditSolver::Prefix => &prefix,
    };
    let run = audited_es_run(solver, a.n, a.k)?;
    let total = paving_core::mls::binom_u128(a.n, a.k);
    let mut out = open_output(a.common.out.as_deref())?;
    let io = |e| CliError::Io {
        path: a.common.out.clone().unwrap_or_else(|| "stdout".into()),
        source: e,
    };
    let mut text = format!(
        "solver: {}\nn: {}\nk: {}\nverdict: {}\nqueries: {}\n",
        solver.name(),
        a.n,
        a.k,
        run.outcome.verdict(),
        run.queries.to_compact()
    );
    match &run.certificate {
        Some(c) => text.push_str(&format!(
            "certificate: {{{}}} never queried; {} distinct of {total} k-subsets seen in {} F-queries\n",
            c.witness.to_one_based(),
            c.distinct,
            c.transcript_len
        )),
        None if run.outcome.is_yes() => text.push_str("no certificate (answered yes)\n"),
        None => text.push_str("no certificate (full coverage)\n"),
    }
    out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(io)
}

pub fn phi_table(a: &PhiArgs) -> CliResult<()> {
    let ns: Vec<usize> = if a.ns.is_empty() { (1..=a.n).collect() } else { a.ns.clone() };
    let mut w = csv_writer(a.common.out.as_deref())?;
    w.write_record(["n", "g", "phi", "argmax", "log2_psi", "bound", "bound_ok", "small_ok"])?;
    for n in ns {
        let g = log_time(&a.g, a.alpha, n)?;
        let (value, argmax) = phi(&g, n);
        let log2_psi = psi(&g, n);
        let bound = n as f64 - value + (n.max(1) as f64).log2();
        w.write_record([
            n.to_string(),
            g.name().to_string(),
            format!("{value:.6}"),
            argmax.to_string(),
            format!("{log2_psi:.6}"),
            format!("{bound:.6}"),
            (log2_psi <= bound + 1e-9).to_string(),
            (value <= 0.15 * n as f64 + 1e-12).to_string(),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn mls_bench(a: &BenchArgs, seed: u64) -> CliResult<()> {
    let ns: Vec<usize> = if a.ns.is_empty() { (4..=a.n).collect() } else { a.ns.clone() };
    let mut w = csv_writer(a.common.out.as_deref())?;
    w.write_record(["n", "g", "k", "plan_total", "no_invocations", "yes_rate", "budget_ratio"])?;
    for n in ns {
        if n == 0 || n > 20 {
            return Err(paving_core::Error::Guard {
                what: "mls-bench n",
                actual: n as u128,
                limit: 20,
            }
            .into());
        }
        let g = log_time(&a.g, a.alpha, n)?;
        let ext = BruteForceExtension::new(g.clone());
        let plan = budget_plan(n, &g)?;
        let k = n / 2;
        let no = monotone_local_search(&ImplicitSetProblem::empty(n)?, &ext, seed)?;
        let mut yes = 0u64;
        for trial in 0..a.trials {
            let s = trial_seed(seed ^ n as u64, trial);
            let problem = ImplicitSetProblem::planted(n, planted_subset(n, k, s))?;
            yes += u64::from(monotone_local_search(&problem, &ext, s.rotate_left(17))?.is_yes());
        }
        w.write_record([
            n.to_string(),
            g.name().to_string(),
            k.to_string(),
            plan.total().to_string(),
            no.total_invocations().to_string(),
            format!("{:.4}", yes as f64 / a.trials as f64),
            format!("{:.6}", plan.total() as f64 / 2f64.powi(n as i32)),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

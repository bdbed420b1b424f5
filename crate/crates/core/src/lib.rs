//! Oracle matroids, the G-matroid family, Empty Set reductions to matroid intersection, and
//! Monotone Local Search.
//!
//! Every matroid is an oracle ([`MatroidOracle`]) that counts its membership queries, so the
//! cost of each reduction and solver can be read off a [`QueryReport`]. Ground sets have at most
//! 64 elements and subsets are bitmasks ([`Subset`]).

pub mod audit;
pub mod error;
pub mod formats;
pub mod gadgets;
pub mod grid;
pub mod mls;
pub mod oracle;
pub mod solvers;
pub mod subset;
pub mod zoo;

pub use audit::{audited_es_run, AuditOutcome, FoolingCertificate};
pub use error::{Error, Result};
pub use formats::{parse_3dm, parse_digraph, parse_dimacs, parse_es_family};
pub use gadgets::{
    canonical_bijection, encode_3dm, encode_hampath, enumerate_su_matrices, es_from_sat, reduce_es_to_emi,
    reduce_es_to_lmi, x_set, CnfInstance, Digraph, EmiInstance, EncodedInstance, EsInstance, LmiInstance,
    ReducedEmi, ThreeDmInstance,
};
pub use grid::{Grid, SuMatrix};
pub use mls::{
    budget_plan, lmi_as_implicit_problem, monotone_local_search, optimal_t, phi, phi_growth_check, psi, sample,
    BudgetPlan, BruteForceExtension, ExtensionAlgorithm, GrowthFamily, ImplicitSetProblem, LmiExtension,
    LogTimeFunction, MlsOutcome,
};
pub use oracle::{
    contract, greedy_basis, is_basis, rank, restrict, verify_matroid_axioms, AxiomVerdict, AxiomViolation,
    GroundSet, MatroidOracle, QueryCounter, QueryProbe, QueryReport, SetOracle,
};
pub use solvers::{
    brute_force_emi, brute_force_lmi, emi_via_intersection, extension_solve, matroid_intersection_2, solve_es_bruteforce,
    solve_encoded, solve_es_via_emi_reduction, solve_es_via_lmi_reduction, BruteForceEmi, BruteForceLmi, EmiSolver,
    EsBruteForce, EsSolver, EsViaEmi, EsViaLmi, ExtensionResult, IntersectionEmi, LmiSolver, ParameterizedStandIn,
    SolveOutcome,
};
pub use subset::Subset;
pub use zoo::{
    g_matroid, graphic_matroid, grid_partition_matroid, is_l_perfect, partition_matroid, truncate,
    uniform_matroid, SetFamilyOracle,
};

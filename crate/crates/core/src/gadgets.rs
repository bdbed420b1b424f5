//! Problem instances and the reductions between them.
//!
//! * Empty Set instances ([`EsInstance`]) and their reductions to ℓ-matroid intersection
//!   ([`reduce_es_to_lmi`], one instance per simple-uniform matrix) and to exact matroid
//!   intersection ([`reduce_es_to_emi`]).
//! * SAT-backed Empty Set families ([`es_from_sat`]).
//! * 3-dimensional matching and directed Hamiltonian path as 3-matroid intersection.
//!
//! Elements of `[n]` are 1-based in files and docs and 0-based in bitmasks: element `i` is bit
//! `i - 1`. Under the canonical bijection the `m`-th grid point has flattened index `m - 1`, so
//! mapping a subset of `[n]` into the grid leaves its bitmask unchanged.

use crate::error::{Error, Result};
use crate::grid::{Grid, SuMatrix};
use crate::oracle::{restrict, GroundSet, MatroidOracle, SetOracle};
use crate::subset::Subset;
use crate::zoo::{g_matroid, graphic_matroid, grid_partition_matroid, partition_matroid, truncate};

/// Largest grid handed to [`enumerate_su_matrices`].
pub const SU_ENUMERATION_GUARD: usize = 36;

/// Empty Set instance `(n, k, F)`: is the family `F` of `k`-subsets of `[n]` non-empty?
///
/// The family is only reachable through its counted membership oracle. Queries on sets of size
/// other than `k` are charged and answered `false`.
#[derive(Clone, Debug)]
pub struct EsInstance {
    n: usize,
    k: usize,
    family: SetOracle,
}

impl EsInstance {
    pub fn new<F>(n: usize, k: usize, member: F) -> Result<EsInstance>
    where
        F: Fn(Subset) -> bool + Send + Sync + 'static,
    {
        if n == 0 {
            return Err(Error::Precondition("Empty Set universe must be non-empty".into()));
        }
        if k > n {
            return Err(Error::Precondition(format!("cardinality {k} exceeds universe {n}")));
        }
        let family = SetOracle::new(GroundSet::new(n)?, "F", move |s| s.len() == k && member(s));
        Ok(EsInstance { n, k, family })
    }

    /// An explicitly listed family; every member must have exactly `k` elements of `[n]`.
    pub fn explicit(n: usize, k: usize, members: &[Subset]) -> Result<EsInstance> {
        let ground = GroundSet::new(n)?;
        if let Some(bad) = members.iter().find(|s| s.len() != k || !ground.contains(**s)) {
            return Err(Error::Precondition(format!(
                "family member {} is not a {k}-subset of [{n}]",
                bad.to_one_based()
            )));
        }
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        EsInstance::new(n, k, move |s| members.binary_search(&s).is_ok())
    }

    /// `F = ∅`.
    pub fn empty(n: usize, k: usize) -> Result<EsInstance> {
        EsInstance::new(n, k, |_| false)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn family(&self) -> &SetOracle {
        &self.family
    }

    /// One counted query to `F`.
    pub fn query(&self, s: Subset) -> bool {
        self.family.query(s)
    }

    pub fn queries(&self) -> u64 {
        self.family.queries()
    }

    /// Same family behind a fresh counter.
    pub fn recounted(&self) -> EsInstance {
        EsInstance {
            n: self.n,
            k: self.k,
            family: self.family.recounted("F"),
        }
    }
}

/// ℓ-matroid intersection instance: do the `ℓ >= 2` matroids share a common basis?
#[derive(Clone, Debug)]
pub struct LmiInstance {
    ground: GroundSet,
    matroids: Vec<MatroidOracle>,
}

impl LmiInstance {
    pub fn new(matroids: Vec<MatroidOracle>) -> Result<LmiInstance> {
        if matroids.len() < 2 {
            return Err(Error::Precondition(format!(
                "matroid intersection needs at least 2 matroids, got {}",
                matroids.len()
            )));
        }
        let ground = matroids[0].ground();
        if let Some(m) = matroids.iter().find(|m| m.ground() != ground) {
            return Err(Error::Dimension(format!(
                "matroid '{}' has {} elements, expected {}",
                m.label(),
                m.ground_size(),
                ground.size()
            )));
        }
        Ok(LmiInstance { ground, matroids })
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn matroids(&self) -> &[MatroidOracle] {
        &self.matroids
    }

    pub fn ell(&self) -> usize {
        self.matroids.len()
    }

    /// Total queries charged to the matroids of this instance.
    pub fn queries(&self) -> u64 {
        self.matroids.iter().map(MatroidOracle::queries).sum()
    }
}

/// Exact matroid intersection instance: is there a common basis of the two matroids with exactly
/// `k` red elements?
#[derive(Clone, Debug)]
pub struct EmiInstance {
    ground: GroundSet,
    red: Subset,
    matroids: [MatroidOracle; 2],
    k: usize,
}

impl EmiInstance {
    pub fn new(first: MatroidOracle, second: MatroidOracle, red: Subset, k: usize) -> Result<EmiInstance> {
        let ground = first.ground();
        if second.ground() != ground {
            return Err(Error::Dimension(format!(
                "matroids have {} and {} elements",
                ground.size(),
                second.ground_size()
            )));
        }
        if !ground.contains(red) {
            return Err(Error::Dimension("red set leaves the ground set".into()));
        }
        if k > ground.size() {
            return Err(Error::Precondition(format!("target {k} exceeds ground set {}", ground.size())));
        }
        Ok(EmiInstance {
            ground,
            red,
            matroids: [first, second],
            k,
        })
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn red(&self) -> Subset {
        self.red
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn matroids(&self) -> &[MatroidOracle; 2] {
        &self.matroids
    }

    pub fn queries(&self) -> u64 {
        self.matroids.iter().map(MatroidOracle::queries).sum()
    }
}

/// CNF formula over variables `1..=vars`; literal `v` is `x_v`, `-v` its negation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfInstance {
    vars: usize,
    clauses: Vec<Vec<i64>>,
}

impl CnfInstance {
    pub fn new(vars: usize, clauses: Vec<Vec<i64>>) -> Result<CnfInstance> {
        for (c, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(Error::Precondition(format!("clause {} is empty", c + 1)));
            }
            if let Some(lit) = clause.iter().find(|l| **l == 0 || l.unsigned_abs() as usize > vars) {
                return Err(Error::Precondition(format!(
                    "literal {lit} in clause {} outside 1..={vars}",
                    c + 1
                )));
            }
        }
        Ok(CnfInstance { vars, clauses })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn clauses(&self) -> &[Vec<i64>] {
        &self.clauses
    }

    /// Does the assignment "variables in `trues` are true, all others false" satisfy every clause?
    pub fn satisfied_by(&self, trues: Subset) -> bool {
        self.clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let value = trues.contains(lit.unsigned_abs() as usize - 1);
                (lit > 0) == value
            })
        })
    }
}

/// Simple digraph, vertices `0..vertices`, no self-loops, distinct arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    vertices: usize,
    arcs: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new(vertices: usize, arcs: Vec<(usize, usize)>) -> Result<Digraph> {
        for (i, &(u, v)) in arcs.iter().enumerate() {
            if u >= vertices || v >= vertices {
                return Err(Error::Precondition(format!("arc ({u}, {v}) leaves {vertices} vertices")));
            }
            if u == v {
                return Err(Error::Precondition(format!("self-loop at vertex {u}")));
            }
            if arcs[..i].contains(&(u, v)) {
                return Err(Error::Precondition(format!("duplicate arc ({u}, {v})")));
            }
        }
        Ok(Digraph { vertices, arcs })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }
}

/// 3-dimensional matching over `[m]^3`; triplet coordinates are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeDmInstance {
    m: usize,
    triplets: Vec<[usize; 3]>,
}

impl ThreeDmInstance {
    pub fn new(m: usize, triplets: Vec<[usize; 3]>) -> Result<ThreeDmInstance> {
        for (i, t) in triplets.iter().enumerate() {
            if t.iter().any(|&c| c < 1 || c > m) {
                return Err(Error::Precondition(format!("triplet {t:?} outside [{m}]^3")));
            }
            if triplets[..i].contains(t) {
                return Err(Error::Precondition(format!("duplicate triplet {t:?}")));
            }
        }
        Ok(ThreeDmInstance { m, triplets })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn triplets(&self) -> &[[usize; 3]] {
        &self.triplets
    }
}

/// An ℓ-MI instance that answers a combinatorial question when its common bases have
/// `basis_size` elements; a common basis of any other size means "no".
#[derive(Clone, Debug)]
pub struct EncodedInstance {
    pub lmi: LmiInstance,
    pub basis_size: usize,
}

/// The canonical bijection `π : [N^d] -> [N]^d`, lexicographic with coordinate 1 most significant.
#[derive(Clone, Debug)]
pub struct CanonicalBijection {
    grid: Grid,
}

impl CanonicalBijection {
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// `π(m)` for `m` in `1..=N^d`.
    pub fn forward(&self, m: usize) -> Vec<usize> {
        self.grid.point(m - 1)
    }

    /// `π^{-1}(point)`, 1-based.
    pub fn inverse(&self, point: &[usize]) -> Result<usize> {
        Ok(self.grid.index(point)? + 1)
    }

    /// `π(S)` as a grid subset. Identity on bitmasks.
    pub fn image(&self, s: Subset) -> Subset {
        debug_assert!(s.is_subset_of(self.grid.full()));
        s
    }

    /// `π^{-1}(T)` as a subset of `[N^d]`. Identity on bitmasks.
    pub fn preimage(&self, t: Subset) -> Subset {
        t
    }
}

pub fn canonical_bijection(side: usize, dim: usize) -> Result<CanonicalBijection> {
    Ok(CanonicalBijection {
        grid: Grid::new(side, dim)?,
    })
}

/// Every simple-uniform `N x d` matrix exactly once.
///
/// Matrices come in lexicographic order of their column-major entry sequence
/// `(L[1][1], .., L[N][1], L[1][2], ..)`. Requires `N^d <= 36`.
pub fn enumerate_su_matrices(side: usize, dim: usize) -> Result<SuMatrices> {
    let grid = Grid::new(side, dim)?;
    if grid.size() > SU_ENUMERATION_GUARD {
        return Err(Error::guard(
            "grid size for SU enumeration",
            grid.size() as u128,
            SU_ENUMERATION_GUARD as u128,
        ));
    }
    let max_sum = (side * side).min(grid.size() - 1);
    // by_sum[k]: columns in {0..=N}^N summing to k, lexicographic
    let mut by_sum: Vec<Vec<Vec<usize>>> = vec![Vec::new(); side * side + 1];
    let mut column = vec![0usize; side];
    loop {
        let sum: usize = column.iter().sum();
        by_sum[sum].push(column.clone());
        // odometer, last entry fastest, so columns appear in lexicographic order
        let Some(pos) = (0..side).rev().find(|&i| column[i] < side) else {
            break;
        };
        column[pos] += 1;
        column[pos + 1..].iter_mut().for_each(|c| *c = 0);
    }
    let mut firsts: Vec<Vec<usize>> = by_sum[2..=max_sum].iter().flatten().cloned().collect();
    firsts.sort();
    Ok(SuMatrices {
        side,
        dim,
        by_sum,
        firsts,
        first: 0,
        rest: vec![0; dim - 1],
    })
}

/// Iterator returned by [`enumerate_su_matrices`].
#[derive(Debug)]
pub struct SuMatrices {
    side: usize,
    dim: usize,
    by_sum: Vec<Vec<Vec<usize>>>,
    firsts: Vec<Vec<usize>>,
    first: usize,
    rest: Vec<usize>,
}

impl Iterator for SuMatrices {
    type Item = SuMatrix;

    fn next(&mut self) -> Option<SuMatrix> {
        let first = self.firsts.get(self.first)?;
        let sum: usize = first.iter().sum();
        let pool = &self.by_sum[sum];
        let mut columns = Vec::with_capacity(self.dim);
        columns.push(first.clone());
        columns.extend(self.rest.iter().map(|&r| pool[r].clone()));
        // advance: last column fastest
        match (0..self.rest.len()).rev().find(|&i| self.rest[i] + 1 < pool.len()) {
            Some(pos) => {
                self.rest[pos] += 1;
                self.rest[pos + 1..].iter_mut().for_each(|r| *r = 0);
            }
            None => {
                self.first += 1;
                self.rest.iter_mut().for_each(|r| *r = 0);
            }
        }
        debug_assert!(columns.iter().all(|c| c.len() == self.side));
        Some(SuMatrix::from_columns(&columns).expect("enumerated columns are simple-uniform"))
    }
}

/// The reduced ℓ-MI instance of `L` and an Empty Set instance.
///
/// Matroids, in order: the G-matroid of `L` with `G = π(F)`, then the `(L, j)`-partition
/// matroids for `j = 1..=d`. Every query to `G` is exactly one query to `F`.
pub fn reduce_es_to_lmi(es: &EsInstance, limits: &SuMatrix, ell: usize) -> Result<LmiInstance> {
    if ell < 3 {
        return Err(Error::Precondition(format!("reduction needs ell >= 3, got {ell}")));
    }
    if limits.dim() != ell - 1 {
        return Err(Error::Dimension(format!(
            "matrix has {} columns, ell = {ell} needs {}",
            limits.dim(),
            ell - 1
        )));
    }
    let bijection = canonical_bijection(limits.side(), limits.dim())?;
    if bijection.grid().size() != es.n() {
        return Err(Error::Dimension(format!(
            "universe {} is not the grid size {}",
            es.n(),
            bijection.grid().size()
        )));
    }
    let family = es.family().clone();
    let grid_family = SetOracle::new(es.family().ground(), "G", move |t| {
        family.query(bijection.preimage(t))
    });
    let mut matroids = Vec::with_capacity(ell);
    matroids.push(g_matroid(limits, &grid_family)?);
    for j in 1..=limits.dim() {
        matroids.push(grid_partition_matroid(limits, j)?);
    }
    LmiInstance::new(matroids)
}

/// `X(S) = {(s, 1) : s in S} ∪ {(s, 2) : s not in S}` on the grid `[n]^2`.
pub fn x_set(grid: &Grid, s: Subset) -> Subset {
    (0..grid.side())
        .map(|i| {
            let column = if s.contains(i) { 1 } else { 2 };
            i * grid.side() + (column - 1)
        })
        .collect()
}

/// Reduced EMI instance plus the bookkeeping that maps its elements back to the grid.
#[derive(Clone, Debug)]
pub struct ReducedEmi {
    pub instance: EmiInstance,
    pub grid: Grid,
    pub limits: SuMatrix,
    /// Grid index of each element of the instance's ground set.
    pub elements: Vec<usize>,
}

impl ReducedEmi {
    pub fn to_grid(&self, s: Subset) -> Subset {
        s.iter().map(|e| self.elements[e]).collect()
    }

    /// Grid subset to instance elements; `None` if it leaves the first two columns.
    pub fn from_grid(&self, t: Subset) -> Option<Subset> {
        t.iter()
            .map(|g| self.elements.binary_search(&g).ok())
            .collect::<Option<Vec<_>>>()
            .map(Subset::from_elements)
    }

    /// The witness `X(S)` in instance elements.
    pub fn witness_for(&self, s: Subset) -> Subset {
        self.from_grid(x_set(&self.grid, s))
            .expect("X(S) lies in the first two columns")
    }

    /// Recovers `S` from a set of the form `X(S)` given in instance elements.
    pub fn decode(&self, b: Subset) -> Subset {
        self.to_grid(b)
            .iter()
            .filter(|g| g % self.grid.side() == 0)
            .map(|g| g / self.grid.side())
            .collect()
    }
}

/// The reduced EMI instance of an Empty Set instance with `n >= 3`.
///
/// `L` has first column all ones and second column `(k, n - k, 0, .., 0)`. The ground set is the
/// first two grid columns `E` (`2n` elements, ascending grid order), red is column 1, and the two
/// matroids are the restrictions to `E` of the `(L, 1)`-partition matroid and of the G-matroid
/// with `G = {X(S) : S in F}`. The grid must fit a bitmask, so `n <= 8`.
pub fn reduce_es_to_emi(es: &EsInstance) -> Result<ReducedEmi> {
    let (n, k) = (es.n(), es.k());
    if n < 3 {
        return Err(Error::Precondition(format!("EMI reduction needs n >= 3, got {n}")));
    }
    let grid = Grid::new(n, 2)?;
    let columns = vec![
        vec![1; n],
        (1..=n)
            .map(|i| match i {
                1 => k,
                2 => n - k,
                _ => 0,
            })
            .collect(),
    ];
    let limits = SuMatrix::from_columns(&columns)?;

    let family = es.family().clone();
    let g = grid.clone();
    let grid_family = SetOracle::new(GroundSet::new(grid.size())?, "G", move |t| {
        let s: Subset = (0..n).filter(|&i| t.contains(i * n)).collect();
        x_set(&g, s) == t && family.query(s)
    });

    let e_mask = grid.line(2, 1).union(grid.line(2, 2));
    let elements = e_mask.to_vec();
    let red: Subset = elements
        .iter()
        .enumerate()
        .filter(|(_, &g)| g % n == 0)
        .map(|(e, _)| e)
        .collect();
    let partition = restrict(&grid_partition_matroid(&limits, 1)?, e_mask);
    let paving = restrict(&g_matroid(&limits, &grid_family)?, e_mask);
    let instance = EmiInstance::new(partition, paving, red, k)?;
    Ok(ReducedEmi {
        instance,
        grid,
        limits,
        elements,
    })
}

/// Empty Set instance whose members are the `k`-sets of true variables satisfying `cnf`.
pub fn es_from_sat(cnf: &CnfInstance, k: usize) -> Result<EsInstance> {
    let cnf = cnf.clone();
    EsInstance::new(cnf.vars(), k, move |s| cnf.satisfied_by(s))
}

/// 3-DM as 3-MI: one partition matroid per coordinate (blocks by coordinate value, bound 1),
/// each truncated to `m`. Perfect matchings are exactly the common bases of size `m`.
pub fn encode_3dm(inst: &ThreeDmInstance) -> Result<EncodedInstance> {
    if inst.m() < 1 || inst.triplets().is_empty() {
        return Err(Error::Precondition("3-DM needs m >= 1 and at least one triplet".into()));
    }
    let n = inst.triplets().len();
    let mut matroids = Vec::with_capacity(3);
    for coord in 0..3 {
        let blocks: Vec<Subset> = (1..=inst.m())
            .map(|a| {
                inst.triplets()
                    .iter()
                    .enumerate()
                    .filter(|(_, t)| t[coord] == a)
                    .map(|(e, _)| e)
                    .collect()
            })
            .collect();
        let part = partition_matroid(n, &blocks, &vec![1; inst.m()])?;
        matroids.push(truncate(&part, inst.m()));
    }
    Ok(EncodedInstance {
        lmi: LmiInstance::new(matroids)?,
        basis_size: inst.m(),
    })
}

/// Directed Hamiltonian path as 3-MI: out-arc and in-arc partition matroids (bound 1, truncated
/// to `|V| - 1`) and the graphic matroid of the underlying multigraph, where antiparallel arcs
/// stay distinct parallel edges. Hamiltonian paths are exactly the common bases of size `|V| - 1`.
pub fn encode_hampath(g: &Digraph) -> Result<EncodedInstance> {
    let v = g.vertices();
    if v < 2 {
        return Err(Error::Precondition("Hamiltonian path needs at least 2 vertices".into()));
    }
    let n = g.arcs().len();
    let blocks_by = |pick: fn(&(usize, usize)) -> usize| -> Vec<Subset> {
        (0..v)
            .map(|x| {
                g.arcs()
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| pick(a) == x)
                    .map(|(e, _)| e)
                    .collect()
            })
            .collect()
    };
    let out = partition_matroid(n, &blocks_by(|a| a.0), &vec![1; v])?;
    let inn = partition_matroid(n, &blocks_by(|a| a.1), &vec![1; v])?;
    let graphic = graphic_matroid(v, g.arcs())?;
    Ok(EncodedInstance {
        lmi: LmiInstance::new(vec![truncate(&out, v - 1), truncate(&inn, v - 1), graphic])?,
        basis_size: v - 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{is_basis, verify_matroid_axioms};
    use crate::zoo::is_l_perfect;

    #[test]
    fn bijection_two_by_two() {
        let pi = canonical_bijection(2, 2).unwrap();
        assert_eq!(pi.forward(1), vec![1, 1]);
        assert_eq!(pi.forward(2), vec![1, 2]);
        assert_eq!(pi.forward(3), vec![2, 1]);
        assert_eq!(pi.forward(4), vec![2, 2]);
        let pi = canonical_bijection(3, 3).unwrap();
        for m in 1..=27 {
            assert_eq!(pi.inverse(&pi.forward(m)).unwrap(), m);
        }
    }

    #[test]
    fn su_enumeration_two_by_two() {
        let all: Vec<SuMatrix> = enumerate_su_matrices(2, 2).unwrap().collect();
        let ones = SuMatrix::from_rows(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert!(all.contains(&ones));
        assert!(all.iter().all(|l| l.column_sum() >= 2 && l.column_sum() <= 3));
        let column_major = |l: &SuMatrix| [l.column(1), l.column(2)].concat();
        assert!(all.windows(2).all(|w| column_major(&w[0]) < column_major(&w[1])));
        assert!(enumerate_su_matrices(7, 2).unwrap_err().is_guard());
    }

    #[test]
    fn es_queries_off_size_are_false() {
        let es = EsInstance::new(4, 2, |_| true).unwrap();
        assert!(!es.query(Subset::from_elements([0, 1, 2])));
        assert!(es.query(Subset::from_elements([0, 1])));
        assert_eq!(es.queries(), 2);
        assert!(EsInstance::explicit(4, 2, &[Subset::singleton(0)]).is_err());
    }

    #[test]
    fn single_pair_reduction_has_witness() {
        // F = {{2, 4}}
        let s = Subset::from_elements([1, 3]);
        let es = EsInstance::explicit(4, 2, &[s]).unwrap();
        let grid = Grid::new(2, 2).unwrap();
        let limits = SuMatrix::for_set(&grid, s).unwrap();
        assert_eq!(limits.rows(), vec![vec![1, 0], vec![1, 2]]);
        let lmi = reduce_es_to_lmi(&es, &limits, 3).unwrap();
        assert_eq!(lmi.ell(), 3);
        assert!(lmi.matroids().iter().all(|m| is_basis(m, s)));
    }

    #[test]
    fn lmi_reduction_dimension_checks() {
        let es = EsInstance::empty(4, 2).unwrap();
        let l = SuMatrix::from_rows(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert!(reduce_es_to_lmi(&es, &l, 2).is_err());
        assert!(matches!(reduce_es_to_lmi(&es, &l, 4), Err(Error::Dimension(_))));
        let es9 = EsInstance::empty(9, 2).unwrap();
        assert!(matches!(reduce_es_to_lmi(&es9, &l, 3), Err(Error::Dimension(_))));
    }

    #[test]
    fn lmi_reduction_forwards_g_queries() {
        let es = EsInstance::empty(4, 2).unwrap();
        let l = SuMatrix::from_rows(&[vec![1, 1], vec![1, 1]]).unwrap();
        let lmi = reduce_es_to_lmi(&es, &l, 3).unwrap();
        let grid = Grid::new(2, 2).unwrap();
        let g = &lmi.matroids()[0];
        for t in crate::subset::all_subsets(4) {
            let before = es.queries();
            g.is_independent(t);
            let expected = u64::from(t.len() == 2 && is_l_perfect(&grid, t, &l));
            assert_eq!(es.queries() - before, expected, "{t:?}");
        }
    }

    #[test]
    fn one_triple_witness() {
        // F = {{1, 3, 6}}
        let s = Subset::from_elements([0, 2, 5]);
        let es = EsInstance::explicit(6, 3, &[s]).unwrap();
        let red = reduce_es_to_emi(&es).unwrap();
        let grid = &red.grid;
        let expected = grid
            .subset(&[&[1, 1], &[3, 1], &[6, 1], &[2, 2], &[4, 2], &[5, 2]])
            .unwrap();
        assert_eq!(x_set(grid, s), expected);
        let w = red.witness_for(s);
        assert_eq!(red.to_grid(w), expected);
        assert_eq!(red.decode(w), s);
        assert_eq!(w.intersection(red.instance.red()).len(), 3);
        assert!(red.instance.matroids().iter().all(|m| is_basis(m, w)));
        assert_eq!(red.instance.ground().size(), 12);
    }

    #[test]
    fn emi_reduction_guards() {
        assert!(reduce_es_to_emi(&EsInstance::empty(2, 1).unwrap()).is_err());
        assert!(reduce_es_to_emi(&EsInstance::empty(9, 3).unwrap()).unwrap_err().is_guard());
    }

    #[test]
    fn sat_family() {
        let cnf = CnfInstance::new(2, vec![vec![1, 2]]).unwrap();
        let es = es_from_sat(&cnf, 1).unwrap();
        assert!(es.query(Subset::singleton(0)));
        assert!(es.query(Subset::singleton(1)));
        let unsat = CnfInstance::new(1, vec![vec![1], vec![-1]]).unwrap();
        for k in 0..=1 {
            let es = es_from_sat(&unsat, k).unwrap();
            assert!(!es.query(Subset::full(k)));
        }
        let vacuous = CnfInstance::new(3, vec![]).unwrap();
        assert!(es_from_sat(&vacuous, 0).unwrap().query(Subset::EMPTY));
        assert!(CnfInstance::new(2, vec![vec![]]).is_err());
        assert!(CnfInstance::new(2, vec![vec![3]]).is_err());
    }

    #[test]
    fn encoders_produce_matroids() {
        let dm = ThreeDmInstance::new(2, vec![[1, 1, 1], [1, 2, 2], [2, 2, 1], [2, 1, 2]]).unwrap();
        let enc = encode_3dm(&dm).unwrap();
        assert_eq!(enc.basis_size, 2);
        for m in enc.lmi.matroids() {
            assert!(verify_matroid_axioms(m).unwrap().is_pass());
        }
        let g = Digraph::new(3, vec![(0, 1), (1, 2), (2, 0), (1, 0)]).unwrap();
        let enc = encode_hampath(&g).unwrap();
        assert_eq!(enc.basis_size, 2);
        for m in enc.lmi.matroids() {
            assert!(verify_matroid_axioms(m).unwrap().is_pass());
        }
        assert!(Digraph::new(2, vec![(0, 0)]).is_err());
        assert!(Digraph::new(2, vec![(0, 1), (0, 1)]).is_err());
        assert!(ThreeDmInstance::new(2, vec![[1, 1, 3]]).is_err());
    }
}

//! Concrete matroids: uniform, partition, graphic, truncations, the grid partition matroids of a
//! limit matrix, and G-matroids.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grid::{Grid, SuMatrix};
use crate::oracle::{GroundSet, MatroidOracle, SetOracle};
use crate::subset::Subset;

/// A membership oracle for a collection `G` of grid subsets.
pub type SetFamilyOracle = SetOracle;

/// `U(n, k)`: every set of at most `k` elements is independent.
pub fn uniform_matroid(n: usize, k: usize) -> Result<MatroidOracle> {
    if k > n {
        return Err(Error::Precondition(format!("uniform matroid cap {k} exceeds {n}")));
    }
    Ok(MatroidOracle::new(GroundSet::new(n)?, format!("U({n},{k})"), move |s| {
        s.len() <= k
    }))
}

/// Partition matroid: `S` is independent iff `|S ∩ blocks[i]| <= bounds[i]` for every block.
pub fn partition_matroid(n: usize, blocks: &[Subset], bounds: &[usize]) -> Result<MatroidOracle> {
    if blocks.len() != bounds.len() {
        return Err(Error::InvalidPartition(format!(
            "{} blocks but {} bounds",
            blocks.len(),
            bounds.len()
        )));
    }
    let ground = GroundSet::new(n)?;
    let mut covered = Subset::EMPTY;
    for (i, block) in blocks.iter().enumerate() {
        if !ground.contains(*block) {
            return Err(Error::InvalidPartition(format!("block {i} leaves the ground set")));
        }
        if !covered.intersection(*block).is_empty() {
            return Err(Error::InvalidPartition(format!("block {i} overlaps an earlier block")));
        }
        covered = covered.union(*block);
    }
    if covered != ground.full() {
        return Err(Error::InvalidPartition(format!(
            "elements {:?} are in no block",
            ground.full().difference(covered)
        )));
    }
    let parts: Arc<[(Subset, usize)]> = blocks.iter().copied().zip(bounds.iter().copied()).collect();
    Ok(MatroidOracle::new(ground, "partition", move |s| {
        parts.iter().all(|&(block, bound)| s.intersection(block).len() <= bound)
    }))
}

/// The `(L, j)`-partition matroid of the grid: at most `L[i][j]` points with `e_j = i`.
pub fn grid_partition_matroid(limits: &SuMatrix, j: usize) -> Result<MatroidOracle> {
    let grid = Grid::new(limits.side(), limits.dim())?;
    if j < 1 || j > limits.dim() {
        return Err(Error::Dimension(format!("dimension index {j} outside 1..={}", limits.dim())));
    }
    let quotas: Arc<[(Subset, usize)]> = (1..=grid.side())
        .map(|i| (grid.line(j, i), limits.get(i, j)))
        .collect();
    Ok(MatroidOracle::new(
        GroundSet::new(grid.size())?,
        format!("grid-partition-{j}"),
        move |s| quotas.iter().all(|&(line, quota)| s.intersection(line).len() <= quota),
    ))
}

/// `S` hits every quota exactly: `|{e in S : e_j = i}| = L[i][j]` for all `i, j`.
pub fn is_l_perfect(grid: &Grid, s: Subset, limits: &SuMatrix) -> bool {
    (1..=grid.dim()).all(|j| (1..=grid.side()).all(|i| grid.count(s, j, i) == limits.get(i, j)))
}

/// The G-matroid of `L` and `G`.
///
/// With `K` the column sum of `L`: sets smaller than `K` are independent, larger ones are not, and
/// a `K`-set is independent unless it is `L`-perfect and outside `G`. Size is checked before
/// perfectness and perfectness before `G`, so each membership query costs at most one `G` query
/// and `O(N * d)` work otherwise.
pub fn g_matroid(limits: &SuMatrix, family: &SetFamilyOracle) -> Result<MatroidOracle> {
    let grid = Grid::new(limits.side(), limits.dim())?;
    if family.ground_size() != grid.size() {
        return Err(Error::Dimension(format!(
            "family is over {} elements, grid has {}",
            family.ground_size(),
            grid.size()
        )));
    }
    let rank = limits.column_sum();
    let limits = limits.clone();
    let family = family.clone();
    Ok(MatroidOracle::new(
        GroundSet::new(grid.size())?,
        "g-matroid",
        move |s| match s.len().cmp(&rank) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => !is_l_perfect(&grid, s, &limits) || family.query(s),
        },
    ))
}

/// Graphic matroid of an undirected multigraph on `vertices` vertices; edge `i` is element `i`.
///
/// Independent iff acyclic; a loop is a cycle and so are two parallel edges.
pub fn graphic_matroid(vertices: usize, edges: &[(usize, usize)]) -> Result<MatroidOracle> {
    if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= vertices || v >= vertices) {
        return Err(Error::Precondition(format!("edge ({u}, {v}) leaves {vertices} vertices")));
    }
    let edges: Arc<[(usize, usize)]> = edges.into();
    Ok(MatroidOracle::new(GroundSet::new(edges.len())?, "graphic", move |s| {
        let mut forest = UnionFind::new(vertices);
        s.iter().all(|e| {
            let (u, v) = edges[e];
            forest.union(u, v)
        })
    }))
}

/// Truncation to rank `k`: independent iff `|S| <= k` and independent in `inner`.
///
/// Oversized sets are rejected without consulting `inner`.
pub fn truncate(inner: &MatroidOracle, k: usize) -> MatroidOracle {
    let wrapped = inner.clone();
    MatroidOracle::new(inner.ground(), format!("{}|trunc{k}", inner.label()), move |s| {
        s.len() <= k && wrapped.is_independent(s)
    })
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; false if they were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Connected components of an undirected graph, for cross-checking graphic ranks.
pub fn component_count(vertices: usize, edges: &[(usize, usize)]) -> usize {
    let mut uf = UnionFind::new(vertices);
    let merges = edges.iter().filter(|&&(u, v)| uf.union(u, v)).count();
    vertices - merges
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{is_basis, rank, verify_matroid_axioms};
    use crate::subset::{all_subsets, k_subsets};

    fn all_ones_2x2() -> SuMatrix {
        SuMatrix::from_rows(&[vec![1, 1], vec![1, 1]]).unwrap()
    }

    fn diagonal_family(grid: &Grid) -> SetFamilyOracle {
        let member = grid.subset(&[&[1, 1], &[2, 2]]).unwrap();
        SetOracle::new(GroundSet::new(4).unwrap(), "G", move |s| s == member)
    }

    #[test]
    fn uniform_extremes() {
        let u0 = uniform_matroid(3, 0).unwrap();
        assert!(all_subsets(3).all(|s| u0.is_independent(s) == s.is_empty()));
        let u3 = uniform_matroid(3, 3).unwrap();
        assert!(all_subsets(3).all(|s| u3.is_independent(s)));
        assert!(uniform_matroid(2, 3).is_err());
        for n in 0..=8 {
            for k in 0..=n {
                assert_eq!(rank(&uniform_matroid(n, k).unwrap()), k);
            }
        }
    }

    #[test]
    fn partition_validation() {
        let b = [Subset::from_elements([0, 1]), Subset::from_elements([2])];
        assert!(partition_matroid(3, &b, &[1, 1]).is_ok());
        let overlap = [Subset::from_elements([0, 1]), Subset::from_elements([1, 2])];
        assert!(matches!(
            partition_matroid(3, &overlap, &[1, 1]),
            Err(Error::InvalidPartition(_))
        ));
        let gap = [Subset::from_elements([0, 1])];
        assert!(partition_matroid(3, &gap, &[1]).is_err());
        let free = partition_matroid(4, &[Subset::full(4)], &[4]).unwrap();
        assert!(all_subsets(4).all(|s| free.is_independent(s)));
        assert!(partition_matroid(4, &b, &[0, 0]).is_err(), "element 3 is uncovered");
        let zero = partition_matroid(3, &b, &[0, 0]).unwrap();
        assert!(all_subsets(3).all(|s| zero.is_independent(s) == s.is_empty()));
    }

    #[test]
    fn grid_partition_quota() {
        let g = Grid::new(2, 2).unwrap();
        let m = grid_partition_matroid(&all_ones_2x2(), 1).unwrap();
        assert!(!m.is_independent(g.subset(&[&[1, 1], &[1, 2]]).unwrap()));
        assert!(m.is_independent(g.subset(&[&[1, 1], &[2, 2]]).unwrap()));
        assert_eq!(rank(&m), 2);
        assert!(grid_partition_matroid(&all_ones_2x2(), 3).is_err());
    }

    #[test]
    fn starred_set_is_perfect_basis() {
        // 6x6 grid, all quotas 3; rows list the starred columns
        let stars: [[usize; 3]; 6] = [[1, 3, 5], [2, 4, 6], [1, 4, 6], [2, 3, 5], [1, 3, 6], [2, 4, 5]];
        let g = Grid::new(6, 2).unwrap();
        let s: Subset = stars
            .iter()
            .enumerate()
            .flat_map(|(r, cols)| cols.iter().map(move |&c| (r + 1, c)))
            .map(|(r, c)| g.index(&[r, c]).unwrap())
            .collect();
        let l = SuMatrix::from_rows(&vec![vec![3, 3]; 6]).unwrap();
        assert!(is_l_perfect(&g, s, &l));
        for j in 1..=2 {
            let m = grid_partition_matroid(&l, j).unwrap();
            assert!(is_basis(&m, s));
            assert_eq!(rank(&m), 18);
        }
        assert!(!is_l_perfect(&g, Subset::EMPTY, &l));
    }

    #[test]
    fn diagonal_family_bases() {
        let g = Grid::new(2, 2).unwrap();
        let m = g_matroid(&all_ones_2x2(), &diagonal_family(&g)).unwrap();
        let bases: Vec<Subset> = k_subsets(4, 2).filter(|&s| is_basis(&m, s)).collect();
        let expected: Vec<Subset> = [
            [[1, 1], [2, 2]],
            [[1, 1], [1, 2]],
            [[2, 1], [2, 2]],
            [[1, 1], [2, 1]],
            [[1, 2], [2, 2]],
        ]
        .iter()
        .map(|[a, b]| g.subset(&[a, b]).unwrap())
        .collect();
        let mut sorted = expected.clone();
        sorted.sort();
        assert_eq!(bases, sorted);
        assert!(!m.is_independent(g.subset(&[&[2, 1], &[1, 2]]).unwrap()));
        assert!(all_subsets(4).filter(|s| s.len() < 2).all(|s| m.is_independent(s)));
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn g_matroid_queries_family_at_most_once() {
        let g = Grid::new(2, 2).unwrap();
        let family = diagonal_family(&g);
        let m = g_matroid(&all_ones_2x2(), &family).unwrap();
        for s in all_subsets(4) {
            let before = family.queries();
            m.is_independent(s);
            assert!(family.queries() - before <= 1);
        }
        // only the two perfect 2-sets reach the family
        assert_eq!(family.queries(), 2);
    }

    #[test]
    fn g_matroid_dimension_mismatch() {
        let wrong = SetOracle::new(GroundSet::new(9).unwrap(), "G", |_| true);
        assert!(matches!(g_matroid(&all_ones_2x2(), &wrong), Err(Error::Dimension(_))));
    }

    #[test]
    fn triangle_graph() {
        let m = graphic_matroid(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(k_subsets(3, 2).all(|s| m.is_independent(s)));
        assert!(!m.is_independent(Subset::full(3)));
        assert_eq!(rank(&m), 2);
        let path = graphic_matroid(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(is_basis(&path, Subset::full(3)));
        let parallel = graphic_matroid(2, &[(0, 1), (1, 0)]).unwrap();
        assert!(!parallel.is_independent(Subset::full(2)));
    }

    #[test]
    fn truncation() {
        let free = uniform_matroid(5, 5).unwrap();
        let t = truncate(&free, 2);
        assert!(all_subsets(5).all(|s| t.is_independent(s) == (s.len() <= 2)));
        let tri = graphic_matroid(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let same = truncate(&tri, 2);
        assert!(all_subsets(3).all(|s| same.is_independent(s) == tri.is_independent(s)));
        assert!(verify_matroid_axioms(&truncate(&tri, 1)).unwrap().is_pass());
    }
}

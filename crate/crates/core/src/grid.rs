//! The grid `[N]^d`, its canonical flattening, and simple-uniform limit matrices.

use std::fmt;

use crate::error::{Error, Result};
use crate::subset::{Subset, MAX_GROUND};

/// The grid `[N]^d` with `N, d >= 2` and at most 64 points.
///
/// Points are flattened lexicographically with coordinate 1 most significant: the point
/// `(e_1, .., e_d)` (1-based coordinates) has index `sum_j (e_j - 1) * N^(d - j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    side: usize,
    dim: usize,
    // lines[j][i]: points whose coordinate j+1 equals i+1
    lines: Vec<Vec<Subset>>,
}

impl Grid {
    pub fn new(side: usize, dim: usize) -> Result<Grid> {
        if side < 2 || dim < 2 {
            return Err(Error::Dimension(format!(
                "grid needs side >= 2 and dimension >= 2, got side {side}, dimension {dim}"
            )));
        }
        let size = (side as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
        if size > MAX_GROUND as u128 {
            return Err(Error::guard("grid size", size, MAX_GROUND as u128));
        }
        let size = size as usize;
        let mut lines = vec![vec![Subset::EMPTY; side]; dim];
        for index in 0..size {
            for (j, line) in lines.iter_mut().enumerate() {
                let c = coordinate_of(index, j, side, dim);
                line[c - 1] = line[c - 1].with(index);
            }
        }
        Ok(Grid { side, dim, lines })
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn size(&self) -> usize {
        self.side.pow(self.dim as u32)
    }

    /// Flattened index of a point with 1-based coordinates.
    pub fn index(&self, point: &[usize]) -> Result<usize> {
        if point.len() != self.dim {
            return Err(Error::Dimension(format!(
                "point {point:?} has {} coordinates, grid dimension is {}",
                point.len(),
                self.dim
            )));
        }
        let mut index = 0;
        for &c in point {
            if c < 1 || c > self.side {
                return Err(Error::Dimension(format!("coordinate {c} outside 1..={}", self.side)));
            }
            index = index * self.side + (c - 1);
        }
        Ok(index)
    }

    /// The point with flattened `index`, 1-based coordinates.
    pub fn point(&self, index: usize) -> Vec<usize> {
        assert!(index < self.size());
        (0..self.dim)
            .map(|j| coordinate_of(index, j, self.side, self.dim))
            .collect()
    }

    /// Builds a subset from a list of points.
    pub fn subset(&self, points: &[&[usize]]) -> Result<Subset> {
        points.iter().map(|p| self.index(p)).collect()
    }

    /// Points whose coordinate `j` (1-based) equals `i` (1-based).
    pub fn line(&self, j: usize, i: usize) -> Subset {
        self.lines[j - 1][i - 1]
    }

    /// `|{e in s : e_j = i}|` for 1-based `j` and `i`.
    pub fn count(&self, s: Subset, j: usize, i: usize) -> usize {
        s.intersection(self.line(j, i)).len()
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.size())
    }
}

fn coordinate_of(index: usize, j: usize, side: usize, dim: usize) -> usize {
    index / side.pow((dim - 1 - j) as u32) % side + 1
}

/// A simple-uniform limit matrix `L` of shape `N x d`.
///
/// Entries lie in `0..=N`, every column has the same sum `K`, and `2 <= K <= N^d - 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SuMatrix {
    side: usize,
    dim: usize,
    // row-major: entry (i, j) at (i - 1) * dim + (j - 1)
    entries: Vec<usize>,
}

impl SuMatrix {
    /// Builds from rows, `rows[i-1][j-1] = L[i][j]`.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<SuMatrix> {
        let side = rows.len();
        let dim = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::NotSimpleUniform("ragged rows".into()));
        }
        SuMatrix::from_row_major(side, dim, rows.concat())
    }

    /// Builds from columns, `columns[j-1][i-1] = L[i][j]`.
    pub fn from_columns(columns: &[Vec<usize>]) -> Result<SuMatrix> {
        let dim = columns.len();
        let side = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != side) {
            return Err(Error::NotSimpleUniform("ragged columns".into()));
        }
        let mut entries = vec![0; side * dim];
        for (j, col) in columns.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                entries[i * dim + j] = v;
            }
        }
        SuMatrix::from_row_major(side, dim, entries)
    }

    pub fn from_row_major(side: usize, dim: usize, entries: Vec<usize>) -> Result<SuMatrix> {
        check_simple_uniform(side, dim, &entries)?;
        Ok(SuMatrix { side, dim, entries })
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `L[i][j]`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries[(i - 1) * self.dim + (j - 1)]
    }

    /// The common column sum `K`, which is also the rank of every matroid built from `L`.
    pub fn column_sum(&self) -> usize {
        (1..=self.side).map(|i| self.get(i, 1)).sum()
    }

    pub fn column(&self, j: usize) -> Vec<usize> {
        (1..=self.side).map(|i| self.get(i, j)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.entries.chunks(self.dim).map(<[usize]>::to_vec).collect()
    }

    pub fn row_major(&self) -> &[usize] {
        &self.entries
    }

    /// The coordinate-count matrix of `s`: `L[i][j] = |{e in s : e_j = i}|`.
    ///
    /// Fails unless `2 <= |s| <= N^d - 1`, in which case the result is simple-uniform and `s` is
    /// `L`-perfect for it.
    pub fn for_set(grid: &Grid, s: Subset) -> Result<SuMatrix> {
        if s.len() < 2 || s.len() + 1 > grid.size() {
            return Err(Error::Precondition(format!(
                "set size {} outside 2..={}",
                s.len(),
                grid.size() - 1
            )));
        }
        let mut entries = Vec::with_capacity(grid.side() * grid.dim());
        for i in 1..=grid.side() {
            for j in 1..=grid.dim() {
                entries.push(grid.count(s, j, i));
            }
        }
        SuMatrix::from_row_major(grid.side(), grid.dim(), entries)
    }

    /// Checks that this matrix fits `grid`.
    pub fn check_grid(&self, grid: &Grid) -> Result<()> {
        if grid.side() != self.side || grid.dim() != self.dim {
            return Err(Error::Dimension(format!(
                "matrix is {}x{}, grid is [{}]^{}",
                self.side,
                self.dim,
                grid.side(),
                grid.dim()
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for SuMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuMatrix{:?}", self.rows())
    }
}

impl fmt::Display for SuMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "{}", rows.join(" / "))
    }
}

/// The simple-uniform conditions on a row-major `side x dim` entry list.
pub fn check_simple_uniform(side: usize, dim: usize, entries: &[usize]) -> Result<()> {
    if side < 2 || dim < 2 {
        return Err(Error::NotSimpleUniform(format!("shape {side}x{dim}, need both >= 2")));
    }
    if entries.len() != side * dim {
        return Err(Error::NotSimpleUniform(format!(
            "{} entries for a {side}x{dim} matrix",
            entries.len()
        )));
    }
    if let Some(v) = entries.iter().find(|&&v| v > side) {
        return Err(Error::NotSimpleUniform(format!("entry {v} exceeds {side}")));
    }
    let column_sum = |j: usize| (0..side).map(|i| entries[i * dim + j]).sum::<usize>();
    let k = column_sum(0);
    if let Some(j) = (1..dim).find(|&j| column_sum(j) != k) {
        return Err(Error::NotSimpleUniform(format!(
            "column {} sums to {}, column 1 to {k}",
            j + 1,
            column_sum(j)
        )));
    }
    let cells = (side as u128).saturating_pow(dim as u32);
    if k < 2 || k as u128 > cells - 1 {
        return Err(Error::NotSimpleUniform(format!("column sum {k} outside 2..={}", cells - 1)));
    }
    Ok(())
}

//! Bitmask subsets of a ground set `{0, .., n-1}` with `n <= 64`.

use std::fmt;

/// Largest ground set a [`Subset`] can address.
pub const MAX_GROUND: usize = 64;

/// A subset of `{0, .., 63}` stored as a bitmask; bit `i` set means element `i` is present.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Subset {
        assert!(n <= MAX_GROUND, "ground set of {n} elements exceeds {MAX_GROUND}");
        if n == MAX_GROUND {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(e: usize) -> Subset {
        Subset(1u64 << e)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Subset {
        elements.into_iter().fold(Subset::EMPTY, |s, e| s.with(e))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, e: usize) -> bool {
        e < MAX_GROUND && self.0 >> e & 1 == 1
    }

    #[inline]
    pub fn with(self, e: usize) -> Subset {
        Subset(self.0 | 1u64 << e)
    }

    #[inline]
    pub fn without(self, e: usize) -> Subset {
        Subset(self.0 & !(1u64 << e))
    }

    #[inline]
    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Elements in ascending order.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Space separated 1-based element labels, the convention of every file format.
    pub fn to_one_based(self) -> String {
        self.iter()
            .map(|e| (e + 1).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Subset::from_elements(iter)
    }
}

impl IntoIterator for Subset {
    type Item = usize;
    type IntoIter = Elements;
    fn into_iter(self) -> Elements {
        self.iter()
    }
}

/// Iterator over the elements of a [`Subset`] in ascending order.
#[derive(Clone, Debug)]
pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

/// All `k`-subsets of `{0, .., n-1}` in increasing bitmask order (Gosper's hack).
#[derive(Clone, Debug)]
pub struct KSubsets {
    next: Option<u64>,
    limit: u64,
}

impl KSubsets {
    pub fn new(n: usize, k: usize) -> KSubsets {
        assert!(n <= MAX_GROUND);
        if k > n {
            return KSubsets { next: None, limit: 0 };
        }
        let first = if k == 0 { 0 } else { Subset::full(k).0 };
        let limit = if n == MAX_GROUND { u64::MAX } else { (1u64 << n) - 1 };
        KSubsets { next: Some(first), limit }
    }
}

impl Iterator for KSubsets {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let (r, overflow) = cur.overflowing_add(c);
            if overflow || r == 0 {
                None
            } else {
                let nxt = (((r ^ cur) >> 2) / c) | r;
                (nxt <= self.limit && nxt & !self.limit == 0).then_some(nxt)
            }
        };
        Some(Subset(cur))
    }
}

/// All `k`-subsets of `{0, .., n-1}` in increasing bitmask order.
pub fn k_subsets(n: usize, k: usize) -> KSubsets {
    KSubsets::new(n, k)
}

/// All `k`-subsets of the elements of `pool`, ascending in bitmask order of the result.
pub fn k_subsets_of(pool: Subset, k: usize) -> impl Iterator<Item = Subset> {
    let elements = pool.to_vec();
    k_subsets(elements.len(), k).map(move |s| s.iter().map(|i| elements[i]).collect())
}

/// All subsets of `{0, .., n-1}` in increasing bitmask order. Requires `n < 64`.
pub fn all_subsets(n: usize) -> impl Iterator<Item = Subset> {
    assert!(n < MAX_GROUND);
    (0..1u64 << n).map(Subset)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn k_subsets_count_and_order() {
        for n in 0..=10 {
            for k in 0..=n {
                let all: Vec<_> = k_subsets(n, k).collect();
                assert_eq!(all.len() as u64, binom(n as u64, k as u64), "n={n} k={k}");
                assert!(all.windows(2).all(|w| w[0] < w[1]));
                assert!(all.iter().all(|s| s.len() == k && s.is_subset_of(Subset::full(n))));
            }
        }
        assert_eq!(k_subsets(3, 4).count(), 0);
    }

    #[test]
    fn k_subsets_at_full_width() {
        assert_eq!(k_subsets(64, 64).count(), 1);
        assert_eq!(k_subsets(64, 63).count(), 64);
        assert_eq!(k_subsets(64, 1).count(), 64);
    }

    #[test]
    fn k_subsets_of_pool() {
        let pool = Subset::from_elements([1, 4, 6]);
        let got: Vec<_> = k_subsets_of(pool, 2).map(|s| s.to_vec()).collect();
        assert_eq!(got, vec![vec![1, 4], vec![1, 6], vec![4, 6]]);
    }

    #[test]
    fn set_algebra() {
        let a = Subset::from_elements([0, 2, 5]);
        let b = Subset::from_elements([2, 3]);
        assert_eq!(a.union(b).to_vec(), vec![0, 2, 3, 5]);
        assert_eq!(a.intersection(b).to_vec(), vec![2]);
        assert_eq!(a.difference(b).to_vec(), vec![0, 5]);
        assert!(Subset::singleton(2).is_subset_of(a));
        assert_eq!(a.to_one_based(), "1 3 6");
        assert_eq!(format!("{:?}", b), "{2, 3}");
    }
}

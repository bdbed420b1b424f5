// Shared fixtures and independent reference implementations for the integration tests.
#![allow(dead_code)]

use num_bigint::BigUint;
use num_traits::One;
use paving_core::gadgets::{Digraph, ThreeDmInstance};
use paving_core::grid::SuMatrix;
use paving_core::mls::LogTimeFunction;
use paving_core::subset::{all_subsets, k_subsets, k_subsets_of, Subset};
use paving_core::zoo::{g_matroid, graphic_matroid, partition_matroid, truncate, uniform_matroid};
use paving_core::{enumerate_su_matrices, rank, GroundSet, LmiInstance, MatroidOracle, SetOracle};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Pseudo-random family on `ground` elements: `S` is in it with probability about `p`.
pub fn hashed_family(ground: usize, seed: u64, p: f64) -> SetOracle {
    let cut = (p * u64::MAX as f64) as u64;
    SetOracle::new(GroundSet::new(ground).unwrap(), "G", move |s| mix(seed ^ mix(s.0)) < cut)
}

/// The g test family with exact integer values alongside the log-domain functions.
pub struct ExactG {
    pub g: LogTimeFunction,
    pub exact: Box<dyn Fn(usize) -> BigUint>,
}

pub fn g_family(n: usize) -> Vec<ExactG> {
    vec![
        ExactG {
            g: LogTimeFunction::one(),
            exact: Box::new(|_| BigUint::one()),
        },
        ExactG {
            g: LogTimeFunction::exp(),
            exact: Box::new(|l| power(2, l)),
        },
        ExactG {
            g: LogTimeFunction::klogk(1.0),
            exact: Box::new(|l| if l == 0 { BigUint::one() } else { power(l, l) }),
        },
        ExactG {
            g: LogTimeFunction::ksquare(1.0),
            exact: Box::new(|l| power(2, l * l)),
        },
        ExactG {
            g: LogTimeFunction::poly(n),
            exact: Box::new(move |l| power(n.max(1), l)),
        },
    ]
}

pub fn power(base: usize, exp: usize) -> BigUint {
    num_traits::pow(BigUint::from(base), exp)
}

pub fn binom(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    (0..k).fold(BigUint::one(), |acc, i| acc * BigUint::from(n - i) / BigUint::from(i + 1))
}

/// Exact `C(n, t) * g(k - t)` and `C(k, t)`; cost is their quotient.
pub fn exact_cost(n: usize, k: usize, t: usize, g: &ExactG) -> (BigUint, BigUint) {
    (binom(n, t) * (g.exact)(k - t), binom(k, t))
}

pub fn less(a: &(BigUint, BigUint), b: &(BigUint, BigUint)) -> bool {
    &a.0 * &b.1 < &b.0 * &a.1
}

pub fn same(a: &(BigUint, BigUint), b: &(BigUint, BigUint)) -> bool {
    &a.0 * &b.1 == &b.0 * &a.1
}

/// Direct search for a directed Hamiltonian path.
pub fn has_hamiltonian_path(g: &Digraph) -> bool {
    let v = g.vertices();
    if v <= 1 {
        return true;
    }
    let mut order: Vec<usize> = (0..v).collect();
    permutations(&mut order, 0, &mut |p| p.windows(2).all(|w| g.arcs().contains(&(w[0], w[1]))))
}

fn permutations(items: &mut Vec<usize>, at: usize, check: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if at == items.len() {
        return check(items);
    }
    for i in at..items.len() {
        items.swap(at, i);
        if permutations(items, at + 1, check) {
            items.swap(at, i);
            return true;
        }
        items.swap(at, i);
    }
    false
}

/// Every simple digraph on `v` vertices, arcs listed in a fixed order of the `v(v-1)` pairs.
pub fn all_digraphs(v: usize) -> Vec<Digraph> {
    let pairs: Vec<(usize, usize)> = (0..v)
        .flat_map(|a| (0..v).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    all_subsets(pairs.len())
        .map(|mask| Digraph::new(v, mask.iter().map(|i| pairs[i]).collect()).unwrap())
        .collect()
}

pub fn has_perfect_matching(inst: &ThreeDmInstance) -> bool {
    let t = inst.triplets();
    let m = inst.m();
    k_subsets(t.len(), m).any(|s| {
        (0..3).all(|c| {
            let mut used = vec![false; m + 1];
            s.iter().all(|i| !std::mem::replace(&mut used[t[i][c]], true))
        })
    })
}

pub fn random_3dm(r: &mut ChaCha8Rng) -> ThreeDmInstance {
    let m = r.gen_range(1..=3);
    let mut all: Vec<[usize; 3]> = (1..=m)
        .flat_map(|a| (1..=m).flat_map(move |b| (1..=m).map(move |c| [a, b, c])))
        .collect();
    all.shuffle(r);
    let count = r.gen_range(1..=all.len().min(9));
    all.truncate(count);
    ThreeDmInstance::new(m, all).unwrap()
}

fn random_partition(r: &mut ChaCha8Rng, n: usize) -> MatroidOracle {
    let blocks_n = r.gen_range(1..=n.max(1));
    let mut blocks = vec![Subset::EMPTY; blocks_n];
    for e in 0..n {
        let b = r.gen_range(0..blocks_n);
        blocks[b] = blocks[b].with(e);
    }
    let bounds: Vec<usize> = blocks.iter().map(|b| r.gen_range(0..=b.len())).collect();
    partition_matroid(n, &blocks, &bounds).unwrap()
}

fn random_graphic(r: &mut ChaCha8Rng, n: usize) -> MatroidOracle {
    let v = r.gen_range(2..=6);
    let edges: Vec<(usize, usize)> = (0..n).map(|_| (r.gen_range(0..v), r.gen_range(0..v))).collect();
    graphic_matroid(v, &edges).unwrap()
}

/// A random G-matroid on a 2x2 or 3x3 grid; `None` if `n` is not 4 or 9.
pub fn random_g_matroid(r: &mut ChaCha8Rng, n: usize) -> Option<MatroidOracle> {
    let side = match n {
        4 => 2,
        9 => 3,
        _ => return None,
    };
    let all: Vec<SuMatrix> = enumerate_su_matrices(side, 2).unwrap().collect();
    let limits = all[r.gen_range(0..all.len())].clone();
    let family = hashed_family(n, r.gen(), 0.5);
    Some(g_matroid(&limits, &family).unwrap())
}

/// Uniform, partition, graphic, truncated graphic or G-matroid on `n` elements.
pub fn random_matroid(r: &mut ChaCha8Rng, n: usize) -> MatroidOracle {
    match r.gen_range(0..5) {
        0 => uniform_matroid(n, r.gen_range(0..=n)).unwrap(),
        1 => random_partition(r, n),
        2 => random_graphic(r, n),
        3 => {
            let inner = random_graphic(r, n);
            let k = r.gen_range(0..=rank(&inner));
            truncate(&inner, k)
        }
        _ => random_g_matroid(r, n).unwrap_or_else(|| random_partition(r, n)),
    }
}

/// A matroid on `n` elements in which `planted` is a basis.
pub fn planted_matroid(r: &mut ChaCha8Rng, n: usize, planted: Subset) -> MatroidOracle {
    if r.gen_bool(0.3) {
        return uniform_matroid(n, planted.len()).unwrap();
    }
    let blocks_n = r.gen_range(1..=n.max(1));
    let mut blocks = vec![Subset::EMPTY; blocks_n];
    for e in 0..n {
        let b = r.gen_range(0..blocks_n);
        blocks[b] = blocks[b].with(e);
    }
    let bounds: Vec<usize> = blocks.iter().map(|b| b.intersection(planted).len()).collect();
    partition_matroid(n, &blocks, &bounds).unwrap()
}

/// Three matroids on `n` elements; about half the time they share a planted common basis.
pub fn random_lmi(r: &mut ChaCha8Rng, n: usize) -> LmiInstance {
    let planted: Subset = (0..n).filter(|_| r.gen_bool(0.5)).collect();
    let matroids = (0..3)
        .map(|_| {
            if r.gen_bool(0.8) {
                planted_matroid(r, n, planted)
            } else {
                random_matroid(r, n)
            }
        })
        .collect();
    LmiInstance::new(matroids).unwrap()
}

/// Reference extension oracle: does some `ℓ`-subset `S` of `E \ X` make `X ∪ S` a common basis?
pub fn brute_extension(inst: &LmiInstance, x: Subset, ell: usize) -> Option<Subset> {
    let rest = inst.ground().full().difference(x);
    k_subsets_of(rest, ell).find(|&s| {
        inst.matroids()
            .iter()
            .all(|m| paving_core::is_basis(m, x.union(s)))
    })
}

/// Largest common independent set size, by enumeration.
pub fn brute_max_common(m1: &MatroidOracle, m2: &MatroidOracle) -> usize {
    all_subsets(m1.ground_size())
        .filter(|&s| m1.is_independent(s) && m2.is_independent(s))
        .map(Subset::len)
        .max()
        .unwrap_or(0)
}

/// Bitmask view of `S_{n,k}` membership lists: family number `mask` contains the `i`-th
/// k-subset iff bit `i` is set.
pub fn family_from_mask(n: usize, k: usize, mask: u64) -> Vec<Subset> {
    k_subsets(n, k)
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, s)| s)
        .collect()
}

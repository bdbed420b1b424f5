//! The budget functions `Φ_g` and `Ψ_g` and finite-n growth checks for `Φ_g`.

use super::binom::log_binom;
use super::logtime::LogTimeFunction;

/// `Φ_g(n) = max over integers 0 <= ℓ <= n/4 of ℓ log2(n / 4ℓ) - log2 g(ℓ)`, the `ℓ = 0` term
/// being 0. Returns the value and the smallest maximising `ℓ`.
pub fn phi(g: &LogTimeFunction, n: usize) -> (f64, usize) {
    let mut best = (0.0, 0);
    for ell in 1..=n / 4 {
        let value = ell as f64 * (n as f64 / (4 * ell) as f64).log2() - g.log2(ell);
        if value > best.0 {
            best = (value, ell);
        }
    }
    best
}

/// `log2 Ψ_g(n)` where `Ψ_g(n) = max over k of min over t <= k of C(n, t) / C(k, t) * g(k - t)`.
pub fn psi(g: &LogTimeFunction, n: usize) -> f64 {
    (0..=n)
        .map(|k| {
            (0..=k)
                .map(|t| {
                    log_binom(n, t).expect("t <= n") - log_binom(k, t).expect("t <= k") + g.log2(k - t)
                })
                .fold(f64::INFINITY, f64::min)
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Families whose `Φ` growth is checked, each with its normaliser.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GrowthFamily {
    /// `g(ℓ) = ⌊2^(α ℓ log ℓ)⌋`, normalised by `n^(1/(1+α))`.
    KLogK { alpha: f64 },
    /// `g(ℓ) = ⌊2^(α ℓ^2)⌋`, normalised by `log2(n)^2`.
    KSquare { alpha: f64 },
}

impl GrowthFamily {
    pub fn g(self) -> LogTimeFunction {
        match self {
            GrowthFamily::KLogK { alpha } => LogTimeFunction::klogk(alpha),
            GrowthFamily::KSquare { alpha } => LogTimeFunction::ksquare(alpha),
        }
    }

    pub fn normaliser(self, n: usize) -> f64 {
        match self {
            GrowthFamily::KLogK { alpha } => (n as f64).powf(1.0 / (1.0 + alpha)),
            GrowthFamily::KSquare { .. } => (n as f64).log2().powi(2),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthRow {
    pub n: usize,
    pub phi: f64,
    pub argmax: usize,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport {
    pub family: GrowthFamily,
    pub rows: Vec<GrowthRow>,
    /// Half the ratio at the smallest grid point.
    pub floor: f64,
    pub min_ratio: f64,
    /// `Φ` never decreases along the grid.
    pub monotone: bool,
}

impl GrowthReport {
    pub fn passes(&self) -> bool {
        self.floor > 0.0 && self.min_ratio >= self.floor
    }
}

/// Tabulates `Φ_g(n) / normaliser(n)` over `ns` (ascending).
pub fn phi_growth_check(family: GrowthFamily, ns: &[usize]) -> GrowthReport {
    let g = family.g();
    let rows: Vec<GrowthRow> = ns
        .iter()
        .map(|&n| {
            let (value, argmax) = phi(&g, n);
            GrowthRow {
                n,
                phi: value,
                argmax,
                ratio: value / family.normaliser(n),
            }
        })
        .collect();
    let floor = rows.first().map_or(0.0, |r| 0.5 * r.ratio);
    let min_ratio = rows.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min);
    let monotone = rows.windows(2).all(|w| w[1].phi >= w[0].phi);
    GrowthReport {
        family,
        rows,
        floor,
        min_ratio,
        monotone,
    }
}

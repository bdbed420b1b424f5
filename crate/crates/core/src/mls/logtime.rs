use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A running-time bound `g` given by `ℓ -> log2 g(ℓ)`, with `g(0) = 1`.
#[derive(Clone)]
pub struct LogTimeFunction {
    name: Arc<str>,
    eval: Arc<dyn Fn(usize) -> f64 + Send + Sync>,
}

impl LogTimeFunction {
    /// Fails unless the evaluator returns exactly `0` at `ℓ = 0`.
    pub fn new<F>(name: impl Into<String>, eval: F) -> Result<LogTimeFunction>
    where
        F: Fn(usize) -> f64 + Send + Sync + 'static,
    {
        let at_zero = eval(0);
        if at_zero != 0.0 {
            return Err(Error::Precondition(format!("log2 g(0) must be 0, got {at_zero}")));
        }
        Ok(LogTimeFunction {
            name: Arc::from(name.into()),
            eval: Arc::new(eval),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `log2 g(ℓ)`.
    #[inline]
    pub fn log2(&self, ell: usize) -> f64 {
        (self.eval)(ell)
    }

    /// `g ≡ 1`.
    pub fn one() -> LogTimeFunction {
        LogTimeFunction::new("one", |_| 0.0).expect("valid")
    }

    /// `g(ℓ) = 2^ℓ`.
    pub fn exp() -> LogTimeFunction {
        LogTimeFunction::new("exp", |ell| ell as f64).expect("valid")
    }

    /// `g(ℓ) = ⌊2^(α ℓ log2 ℓ)⌋`; for `α = 1` this is `ℓ^ℓ`.
    pub fn klogk(alpha: f64) -> LogTimeFunction {
        LogTimeFunction::new(format!("klogk({alpha})"), move |ell| {
            if ell <= 1 {
                0.0
            } else {
                log2_floor_pow2(alpha * ell as f64 * (ell as f64).log2())
            }
        })
        .expect("valid")
    }

    /// `g(ℓ) = ⌊2^(α ℓ^2)⌋`.
    pub fn ksquare(alpha: f64) -> LogTimeFunction {
        LogTimeFunction::new(format!("ksquare({alpha})"), move |ell| {
            log2_floor_pow2(alpha * (ell * ell) as f64)
        })
        .expect("valid")
    }

    /// `g(ℓ) = n^ℓ` for a fixed `n`.
    pub fn poly(n: usize) -> LogTimeFunction {
        let log_n = (n.max(1) as f64).log2();
        LogTimeFunction::new(format!("poly({n})"), move |ell| ell as f64 * log_n).expect("valid")
    }

    /// Looks up a family by its command-line name: `one`, `exp`, `klogk`, `ksquare`, `poly-n`.
    /// `alpha` applies to `klogk` and `ksquare`, `n` to `poly-n`.
    pub fn by_name(name: &str, alpha: f64, n: usize) -> Result<LogTimeFunction> {
        match name {
            "one" => Ok(LogTimeFunction::one()),
            "exp" => Ok(LogTimeFunction::exp()),
            "klogk" => Ok(LogTimeFunction::klogk(alpha)),
            "ksquare" => Ok(LogTimeFunction::ksquare(alpha)),
            "poly-n" => Ok(LogTimeFunction::poly(n)),
            other => Err(Error::Precondition(format!(
                "unknown g family '{other}' (expected one, exp, klogk, ksquare, poly-n)"
            ))),
        }
    }
}

impl fmt::Debug for LogTimeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LogTimeFunction({})", self.name)
    }
}

/// `log2 ⌊2^x⌋` for `x >= 0`. Values within `1e-9` relative of an integer count as that integer,
/// so exact powers such as `2^(2 log2 2) = 4` are not floored to 3.
fn log2_floor_pow2(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 52.0 {
        // below one unit in the last place
        return x;
    }
    let v = x.exp2();
    let r = v.round();
    let floored = if (v - r).abs() <= 1e-9 * r { r } else { v.floor() };
    floored.log2()
}

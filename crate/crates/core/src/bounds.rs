//! Closed-form cycle-length bounds and the scalar inequalities the
//! constructions rely on, as evaluable functions.
//!
//! Logarithms are base 2 throughout. Bounds that involve `log k` are not
//! defined for `k = 1` and come back as `None`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Class-size constant of the `n + k` color results.
pub const C_N_PLUS_K: f64 = 1e9;
/// Class-size constant of the `n` color result.
pub const C_MAIN: f64 = 1e11;
/// Additive slack in the known approximate directed-girth bound.
pub const SHEN_SLACK: usize = 73;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("parameters out of domain: {0}")]
    DomainError(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundTable {
    pub n: u64,
    pub k: u64,
    /// ceil(n / k)
    pub aharoni: u64,
    /// ceil(n / k) + 73
    pub shen: u64,
    /// 2(n+k)/(3k) * (log k + log log k + 4)
    pub bs_exact: Option<f64>,
    /// 14(n+k) log k / (3k)
    pub bs_cor: Option<f64>,
    /// n (log k)^2 / (10 k^{3/2}) + 14 log k
    pub res_one: Option<f64>,
    /// n (log k)^2 / (5 k^{3/2})
    pub cor_one: Option<f64>,
}

pub fn bs_exact(n: f64, k: f64) -> f64 {
    let lk = k.log2();
    2.0 * (n + k) / (3.0 * k) * (lk + lk.log2() + 4.0)
}

pub fn bs_cor(n: f64, k: f64) -> f64 {
    14.0 * (n + k) * k.log2() / (3.0 * k)
}

pub fn res_one(n: f64, k: f64) -> f64 {
    let lk = k.log2();
    n * lk * lk / (10.0 * k.powf(1.5)) + 14.0 * lk
}

pub fn cor_one(n: f64, k: f64) -> f64 {
    let lk = k.log2();
    n * lk * lk / (5.0 * k.powf(1.5))
}

pub fn bound_table(n: u64, k: u64) -> Result<BoundTable, BoundsError> {
    if n < 1 || k < 1 {
        return Err(BoundsError::DomainError(format!("need n >= 1 and k >= 1, got n={n}, k={k}")));
    }
    let aharoni = n.div_ceil(k);
    let logs = k >= 2;
    let (nf, kf) = (n as f64, k as f64);
    Ok(BoundTable {
        n,
        k,
        aharoni,
        shen: aharoni + SHEN_SLACK as u64,
        bs_exact: logs.then(|| bs_exact(nf, kf)),
        bs_cor: logs.then(|| bs_cor(nf, kf)),
        res_one: logs.then(|| res_one(nf, kf)),
        cor_one: logs.then(|| cor_one(nf, kf)),
    })
}

impl BoundTable {
    /// Aligned two-column text.
    pub fn to_text(&self) -> String {
        let fmt = |x: Option<f64>| x.map_or_else(|| "n/a".to_string(), |v| format!("{v:.6}"));
        let rows = [
            ("n", self.n.to_string()),
            ("k", self.k.to_string()),
            ("aharoni", self.aharoni.to_string()),
            ("shen", self.shen.to_string()),
            ("bs_exact", fmt(self.bs_exact)),
            ("bs_cor", fmt(self.bs_cor)),
            ("res_one", fmt(self.res_one)),
            ("cor_one", fmt(self.cor_one)),
        ];
        rows.iter().map(|(name, value)| format!("{name:<10}{value:>20}\n")).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Lemma {
    /// log log k + 4 <= 6 log k
    LogLogSlack,
    /// (log k)^2 <= 5 sqrt(k)
    SquaredLogVsRoot,
    /// 5 k^{1/9} > log k
    NinthRootVsLog,
    /// 560 <= k^{sqrt(c)/(1120 ln 2) - 1/2} log k, c = 1e9
    HittingResidual,
}

impl Lemma {
    pub const ALL: [Lemma; 4] = [
        Lemma::LogLogSlack,
        Lemma::SquaredLogVsRoot,
        Lemma::NinthRootVsLog,
        Lemma::HittingResidual,
    ];

    pub fn statement(self) -> &'static str {
        match self {
            Lemma::LogLogSlack => "log log k + 4 <= 6 log k",
            Lemma::SquaredLogVsRoot => "(log k)^2 <= 5 sqrt(k)",
            Lemma::NinthRootVsLog => "5 k^(1/9) > log k",
            Lemma::HittingResidual => "560 <= k^(sqrt(c)/(1120 ln 2) - 1/2) log k, c = 1e9",
        }
    }

    /// Floating-point evaluation at integer `k >= 2`.
    pub fn holds(self, k: u64) -> bool {
        let lk = (k as f64).log2();
        match self {
            Lemma::LogLogSlack => lk.log2() + 4.0 <= 6.0 * lk,
            Lemma::SquaredLogVsRoot => lk * lk <= 5.0 * (k as f64).sqrt(),
            Lemma::NinthRootVsLog => 5.0 * (k as f64).powf(1.0 / 9.0) > lk,
            Lemma::HittingResidual => {
                // compared in log2 space; the power overflows binary64 early
                let exponent = C_N_PLUS_K.sqrt() / (1120.0 * std::f64::consts::LN_2) - 0.5;
                exponent * lk + lk.log2() >= 560f64.log2()
            }
        }
    }

    /// Exact integer form at `k = 2^j`, where `log k = j`. `None` when the
    /// lemma has no exact form there (the constant `sqrt(c)` is irrational).
    pub fn holds_at_power_of_two(self, j: u32) -> Option<bool> {
        let j = j as u128;
        match self {
            // log j + 4 <= 6j  <=>  16 j <= 2^(6j)
            Lemma::LogLogSlack => Some(6 * j >= 127 || 16 * j <= 1u128 << (6 * j)),
            // j^2 <= 5 * 2^(j/2)  <=>  j^4 <= 25 * 2^j
            Lemma::SquaredLogVsRoot => Some(j.pow(4) <= 25 * (1u128 << j)),
            // 5 * 2^(j/9) > j  <=>  5^9 * 2^j > j^9
            Lemma::NinthRootVsLog => Some(5u128.pow(9) * (1u128 << j) > j.pow(9)),
            Lemma::HittingResidual => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaResult {
    pub lemma: Lemma,
    pub statement: String,
    pub checked: u64,
    pub passed: bool,
    pub first_failure: Option<u64>,
    /// `(checked, failed)` exact checks at powers of two in range.
    pub exact_checks: Option<(u32, u32)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub k_lo: u64,
    pub k_hi: u64,
    pub all_pass: bool,
    pub lemmas: Vec<LemmaResult>,
}

/// Sweeps every integer `k` in `[k_lo, k_hi]` through the four lemmas.
pub fn check_scalar_lemmas(k_lo: u64, k_hi: u64) -> Result<LemmaReport, BoundsError> {
    if k_lo < 2 || k_hi < k_lo {
        return Err(BoundsError::DomainError(format!("need 2 <= k_lo <= k_hi, got [{k_lo}, {k_hi}]")));
    }
    // exact forms use u128 shifts up to 6j, so j < 21 keeps them in range
    let max_exact_j = 20u32;
    let lemmas: Vec<_> = Lemma::ALL
        .iter()
        .map(|&lemma| {
            let first_failure = (k_lo..=k_hi).find(|&k| !lemma.holds(k));
            let exact_checks = lemma.holds_at_power_of_two(1).map(|_| {
                let js: Vec<u32> = (1..=max_exact_j).filter(|&j| (k_lo..=k_hi).contains(&(1u64 << j))).collect();
                let failed = js.iter().filter(|&&j| lemma.holds_at_power_of_two(j) == Some(false)).count();
                (js.len() as u32, failed as u32)
            });
            let passed = first_failure.is_none() && exact_checks.is_none_or(|(_, f)| f == 0);
            LemmaResult {
                lemma,
                statement: lemma.statement().to_string(),
                checked: k_hi - k_lo + 1,
                passed,
                first_failure,
                exact_checks,
            }
        })
        .collect();
    Ok(LemmaReport {
        k_lo,
        k_hi,
        all_pass: lemmas.iter().all(|l| l.passed),
        lemmas,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VarianceReport {
    pub k: f64,
    pub r: f64,
    pub c: f64,
    pub t: f64,
    pub alpha: f64,
    /// (r - 4k) / r, the point the deletion argument evaluates at.
    pub x: f64,
    pub samples: usize,
    /// Largest f(y) / bound(y) over the sweep of [alpha, 1) and y = x.
    pub max_ratio: f64,
    pub argmax: f64,
    pub ratio_at_x: f64,
    /// Largest ratio over the sample points lying in [x, 1), together with x.
    pub max_ratio_from_x: f64,
    pub pass: bool,
}

/// Upper estimate of the variance of the surviving-edge count.
pub fn variance_f(y: f64, t: f64, k: f64) -> f64 {
    t * y * y * (1.0 - y * y) + (t / 50.0 + 16.0 * k) * t * (y.powi(3) - y.powi(4))
}

/// The bound the variance estimate is compared against.
pub fn variance_rhs(y: f64, t: f64, k: f64, r: f64) -> f64 {
    let s = y * y - 0.01;
    t * t * s * s * k / (2.0 * r)
}

/// Evaluates `f(y) / rhs(y)` at `samples` evenly spaced points of
/// `[alpha, 1)` with `alpha = 1 - 400/c`, and at `y = (r - 4k)/r`.
pub fn variance_bound_check(k: f64, r: f64, c: f64, samples: usize) -> Result<VarianceReport, BoundsError> {
    if k < 1.0 || c <= 0.0 || r <= 0.0 || samples == 0 {
        return Err(BoundsError::DomainError(format!("k={k}, r={r}, c={c}, samples={samples}")));
    }
    let t = c * k;
    if t / 100.0 >= r {
        return Err(BoundsError::HypothesisViolated(format!("t/100 = {} >= r = {r}", t / 100.0)));
    }
    let alpha = 1.0 - 400.0 / c;
    let x = (r - 4.0 * k) / r;
    let ratio = |y: f64| variance_f(y, t, k) / variance_rhs(y, t, k, r);
    let step = (1.0 - alpha) / samples as f64;
    let points = (0..samples).map(|i| alpha + i as f64 * step).chain([x]);
    let (mut max_ratio, mut argmax, mut max_ratio_from_x) = (f64::NEG_INFINITY, alpha, f64::NEG_INFINITY);
    for y in points {
        let q = ratio(y);
        if q > max_ratio {
            max_ratio = q;
            argmax = y;
        }
        if y >= x {
            max_ratio_from_x = max_ratio_from_x.max(q);
        }
    }
    Ok(VarianceReport {
        k,
        r,
        c,
        t,
        alpha,
        x,
        samples,
        max_ratio,
        argmax,
        ratio_at_x: ratio(x),
        max_ratio_from_x,
        pass: max_ratio <= 1.0,
    })
}

/// `(P(X <= (1-eps)mean) bound, P(X >= (1+eps)mean) bound)` for a sum of
/// independent indicators.
pub fn chernoff_tails(mean: f64, eps: f64) -> Result<(f64, f64), BoundsError> {
    if !(mean > 0.0 && eps > 0.0) || !mean.is_finite() || !eps.is_finite() {
        return Err(BoundsError::DomainError(format!("need mean > 0 and eps > 0, got {mean}, {eps}")));
    }
    Ok(((-eps * eps * mean / 2.0).exp(), (-eps * eps * mean / (2.0 + eps)).exp()))
}

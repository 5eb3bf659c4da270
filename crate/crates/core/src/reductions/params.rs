use crate::bounds::{C_MAIN, C_N_PLUS_K};
use serde::{Deserialize, Serialize};

pub const DEFAULT_RETRY_CAP: u32 = 64;

/// Tunable constants of the reductions.
///
/// Everything except `c` and `retry_cap` is derived from `(c, n, k, r)` on
/// demand. The `Option` fields override a derived value so the pipelines can
/// run at desk scale; `None` keeps the formula.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineParams {
    pub c: f64,
    pub retry_cap: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domination_threshold: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hitting_sample_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub star_min_size: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub star_color_cap: Option<usize>,
}

impl Default for PipelineParams {
    fn default() -> Self {
        Self::main_theorem()
    }
}

impl PipelineParams {
    pub fn scaled(c: f64) -> Self {
        PipelineParams {
            c,
            retry_cap: DEFAULT_RETRY_CAP,
            class_size: None,
            domination_threshold: None,
            hitting_sample_size: None,
            star_min_size: None,
            star_color_cap: None,
        }
    }

    /// c = 1e9, the constant of the `n + k` color results.
    pub fn n_plus_k() -> Self {
        Self::scaled(C_N_PLUS_K)
    }

    /// c = 1e11, the constant of the `n` color result.
    pub fn main_theorem() -> Self {
        Self::scaled(C_MAIN)
    }

    /// t = c k, the per-class edge count.
    pub fn t(&self, k: usize) -> f64 {
        self.c * k as f64
    }

    /// Minimum class size the pipelines require: ceil(c k) unless overridden.
    pub fn class_size(&self, k: usize) -> usize {
        self.class_size.unwrap_or_else(|| self.t(k).ceil().max(1.0) as usize)
    }

    /// Edges of one color at one vertex needed for domination: t/100 + 8k.
    pub fn domination_threshold(&self, k: usize) -> f64 {
        self.domination_threshold.unwrap_or_else(|| self.t(k) / 100.0 + 8.0 * k as f64)
    }

    /// Inclusion probability of the random deletion set: 4k / r.
    pub fn deletion_probability(&self, k: usize, r: usize) -> f64 {
        4.0 * k as f64 / r as f64
    }

    /// Exclusive bounds on the accepted deletion-set size: (2k, 8k).
    pub fn deletion_window(&self, k: usize) -> (usize, usize) {
        (2 * k, 8 * k)
    }

    /// s = floor(2 log k) sampling rounds of the hitting-set construction.
    pub fn hitting_rounds(&self, k: usize) -> usize {
        if k < 2 {
            return 0;
        }
        (2.0 * (k as f64).log2()).floor() as usize
    }

    /// floor(n / (560 sqrt k)) vertices per sampling round.
    pub fn hitting_sample_size(&self, n: usize, k: usize) -> usize {
        self.hitting_sample_size
            .unwrap_or_else(|| (n as f64 / (560.0 * (k.max(1) as f64).sqrt())).floor() as usize)
    }

    /// Residual shrink factor each sampling round aims for: exp(-sqrt(c)/1120).
    pub fn hitting_shrink_target(&self) -> f64 {
        (-self.c.sqrt() / 1120.0).exp()
    }

    /// sigma = c k^2 / (4n), the minimum colorful star size.
    pub fn star_min_size(&self, n: usize, k: usize) -> f64 {
        self.star_min_size
            .unwrap_or_else(|| self.c * (k * k) as f64 / (4.0 * n.max(1) as f64))
    }

    /// gamma = c^{2/3} k^{2/3}, the per-color cap inside a colorful star.
    pub fn star_color_cap(&self, k: usize) -> usize {
        self.star_color_cap.unwrap_or_else(|| {
            let gamma = (self.c * k as f64).powf(2.0 / 3.0);
            // powf is not exact on perfect cubes such as 1e9
            let near = gamma.round();
            let gamma = if (gamma - near).abs() <= 1e-9 * near.max(1.0) { near } else { gamma.floor() };
            gamma.max(1.0) as usize
        })
    }

    pub fn derived(&self, n: usize, k: usize) -> DerivedParams {
        DerivedParams {
            t: self.t(k),
            class_size: self.class_size(k),
            domination_threshold: self.domination_threshold(k),
            deletion_window: self.deletion_window(k),
            hitting_rounds: self.hitting_rounds(k),
            hitting_sample_size: self.hitting_sample_size(n, k),
            star_min_size: self.star_min_size(n, k),
            star_color_cap: self.star_color_cap(k),
        }
    }
}

/// Derived values for one `(n, k)`, recorded in reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DerivedParams {
    pub t: f64,
    pub class_size: usize,
    pub domination_threshold: f64,
    pub deletion_window: (usize, usize),
    pub hitting_rounds: usize,
    pub hitting_sample_size: usize,
    pub star_min_size: f64,
    pub star_color_cap: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_constants() {
        let p = PipelineParams::main_theorem();
        assert_eq!(p.t(2), 2e11);
        assert_eq!(p.domination_threshold(2), 2e9 + 16.0);
        assert_eq!(p.deletion_probability(2, 100), 0.08);
        assert_eq!(p.deletion_window(2), (4, 16));
        let q = PipelineParams::n_plus_k();
        assert_eq!(q.hitting_rounds(4), 4);
        assert_eq!(q.hitting_rounds(5), 4);
        assert_eq!(q.hitting_sample_size(1_000_000, 4), 892);
        assert_eq!(q.star_min_size(1000, 2), 1e6);
        assert_eq!(q.star_color_cap(1), 1_000_000);
        assert_eq!(q.class_size(3), 3_000_000_000);
    }

    #[test]
    fn overrides_take_precedence() {
        let mut p = PipelineParams::scaled(2.0);
        assert_eq!(p.class_size(3), 6);
        p.class_size = Some(1);
        p.domination_threshold = Some(2.0);
        assert_eq!(p.class_size(3), 1);
        assert_eq!(p.domination_threshold(3), 2.0);
        let json = serde_json::to_string(&p).unwrap();
        let back: PipelineParams = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }
}

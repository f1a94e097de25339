//! Samplers of unit-sup-norm spectral paths, Brownian paths via scaled
//! partial sums, and the weighted series of signed path terms.
//!
//! Grid paths put every jump on the common grid, so step-function kinds
//! violate the shared-discontinuity assumption across samples; this is a
//! discretization artifact. `NormalizedGeomBM` emits (grid samples of)
//! continuous, strictly positive paths and is the assumption-clean sampler.

use crate::error::{Error, Result};
use crate::grid::GridPath;
use crate::seed::SeedSpec;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};
use serde::{Deserialize, Serialize};

const SIGNS_TAG: u64 = 0x5e1f;
const GAMMA_TAG: u64 = 0x6a77;
const PATHS_TAG: u64 = 0x9a01;

/// A law on the unit sphere of the path space: every emitted path has sup
/// norm exactly 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpectralSampler {
    /// The constant path 1.
    ConstantOne { resolution: usize },
    /// +1 with probability `p`, -1 otherwise.
    SignedConstant { resolution: usize, p: f64 },
    /// Exponential of a Brownian path, normalized by its sup norm.
    NormalizedGeomBM { resolution: usize },
    /// Ingested paths, resampled uniformly and normalized by sup norm.
    NormalizedUserPath { paths: Vec<GridPath> },
}

impl SpectralSampler {
    pub fn validate(&self) -> Result<()> {
        match self {
            SpectralSampler::SignedConstant { p, .. } => {
                if (0.0..=1.0).contains(p) {
                    Ok(())
                } else {
                    Err(Error::InvalidParams(format!("sign probability {p} not in [0,1]")))
                }
            }
            SpectralSampler::NormalizedUserPath { paths } => {
                if paths.is_empty() {
                    return Err(Error::InvalidParams("user path panel is empty".into()));
                }
                if paths.iter().any(|p| p.sup_norm() == 0.0) {
                    return Err(Error::ZeroPath);
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn resolution(&self) -> usize {
        match self {
            SpectralSampler::ConstantOne { resolution }
            | SpectralSampler::SignedConstant { resolution, .. }
            | SpectralSampler::NormalizedGeomBM { resolution } => *resolution,
            SpectralSampler::NormalizedUserPath { paths } => paths[0].resolution(),
        }
    }

    /// Draw one unit path.
    pub fn draw(&self, rng: &mut ChaCha8Rng) -> GridPath {
        match self {
            SpectralSampler::ConstantOne { resolution } => GridPath::constant(*resolution, 1.0),
            SpectralSampler::SignedConstant { resolution, p } => {
                let sign = if rng.gen::<f64>() < *p { 1.0 } else { -1.0 };
                GridPath::constant(*resolution, sign)
            }
            SpectralSampler::NormalizedGeomBM { resolution } => {
                let w = brownian_increments(*resolution, rng);
                let exp_path =
                    GridPath::new(w.values().iter().map(|v| v.exp()).collect()).unwrap();
                exp_path.polar().unwrap().1
            }
            SpectralSampler::NormalizedUserPath { paths } => {
                let idx = rng.gen_range(0..paths.len());
                paths[idx].polar().unwrap().1
            }
        }
    }

    /// Draw only the value at grid index `l` (scalar kinds avoid building a
    /// path; path kinds fall back to a full draw).
    pub fn draw_value_at(&self, l: usize, rng: &mut ChaCha8Rng) -> f64 {
        match self {
            SpectralSampler::ConstantOne { .. } => 1.0,
            SpectralSampler::SignedConstant { p, .. } => {
                if rng.gen::<f64>() < *p { 1.0 } else { -1.0 }
            }
            _ => self.draw(rng).value(l),
        }
    }

    /// Pointwise mean of `z(s)` when available in closed form.
    pub fn phi_closed_form(&self) -> Option<f64> {
        match self {
            SpectralSampler::ConstantOne { .. } => Some(1.0),
            SpectralSampler::SignedConstant { p, .. } => Some(2.0 * p - 1.0),
            _ => None,
        }
    }

    /// Pointwise mean of `z(s)^2` when available in closed form.
    pub fn psi_closed_form(&self) -> Option<f64> {
        match self {
            SpectralSampler::ConstantOne { .. } | SpectralSampler::SignedConstant { .. } => {
                Some(1.0)
            }
            _ => None,
        }
    }

    /// Marginal tail constants `(c_s^+, c_s^-)` of the jump measure at grid
    /// index `l`, for window intensity `c`:
    /// `c_s^+ = c E[(z(s)^+)^alpha]`, `c_s^- = c E[(z(s)^-)^alpha]`.
    /// Closed form for the constant kinds, Monte Carlo otherwise.
    pub fn tail_constants(
        &self,
        l: usize,
        alpha: f64,
        c: f64,
        mc_reps: usize,
        seed: SeedSpec,
    ) -> (f64, f64) {
        match self {
            SpectralSampler::ConstantOne { .. } => (c, 0.0),
            SpectralSampler::SignedConstant { p, .. } => (c * p, c * (1.0 - p)),
            _ => {
                let mut rng = seed.rng();
                let mut plus = 0.0;
                let mut minus = 0.0;
                for _ in 0..mc_reps {
                    let v = self.draw_value_at(l, &mut rng);
                    if v > 0.0 {
                        plus += v.powf(alpha);
                    } else {
                        minus += (-v).powf(alpha);
                    }
                }
                (c * plus / mc_reps as f64, c * minus / mc_reps as f64)
            }
        }
    }
}

/// Draw `count` unit paths.
pub fn sample_spectral(sampler: &SpectralSampler, seed: SeedSpec, count: usize) -> Result<Vec<GridPath>> {
    sampler.validate()?;
    let mut rng = seed.rng();
    Ok((0..count).map(|_| sampler.draw(&mut rng)).collect())
}

/// Monte Carlo estimates of `phi(s) = E z(s)` and `psi(s) = E z(s)^2` per
/// grid point, with closed forms short-circuited for the constant kinds.
pub fn phi_psi(
    sampler: &SpectralSampler,
    seed: SeedSpec,
    count: usize,
    s_grid: &[usize],
) -> Result<(Vec<f64>, Vec<f64>)> {
    sampler.validate()?;
    if let (Some(phi), Some(psi)) = (sampler.phi_closed_form(), sampler.psi_closed_form()) {
        return Ok((vec![phi; s_grid.len()], vec![psi; s_grid.len()]));
    }
    if count == 0 {
        return Err(Error::InvalidParams("phi_psi needs at least one sample".into()));
    }
    let mut rng = seed.rng();
    let mut phi = vec![0.0; s_grid.len()];
    let mut psi = vec![0.0; s_grid.len()];
    for _ in 0..count {
        let z = sampler.draw(&mut rng);
        for (slot, &l) in s_grid.iter().enumerate() {
            let v = z.value(l);
            phi[slot] += v;
            psi[slot] += v * v;
        }
    }
    for v in phi.iter_mut().chain(psi.iter_mut()) {
        *v /= count as f64;
    }
    Ok((phi, psi))
}

fn brownian_increments(m: usize, rng: &mut ChaCha8Rng) -> GridPath {
    let scale = 1.0 / (m as f64).sqrt();
    let mut values = Vec::with_capacity(m + 1);
    let mut acc = 0.0;
    values.push(0.0);
    for _ in 0..m {
        let g: f64 = StandardNormal.sample(rng);
        acc += scale * g;
        values.push(acc);
    }
    GridPath::new(values).unwrap()
}

/// A Brownian path on the grid: scaled partial sums of standard Gaussian
/// increments, `W(0) = 0`.
pub fn brownian_path(m: usize, seed: SeedSpec) -> GridPath {
    brownian_increments(m, &mut seed.rng())
}

/// Base samplers for the series terms `Y_j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum YSampler {
    Brownian { resolution: usize },
    Constant { resolution: usize, value: f64 },
}

impl YSampler {
    pub fn resolution(&self) -> usize {
        match *self {
            YSampler::Brownian { resolution } | YSampler::Constant { resolution, .. } => resolution,
        }
    }

    pub fn draw(&self, seed: SeedSpec) -> GridPath {
        match *self {
            YSampler::Brownian { resolution } => brownian_path(resolution, seed),
            YSampler::Constant { resolution, value } => GridPath::constant(resolution, value),
        }
    }
}

/// The components of a truncated weighted series of signed path terms:
/// signs, arrival-time weights `Gamma_j^{-1/alpha}`, and the paths.
#[derive(Debug, Clone)]
pub struct SeriesTerms {
    pub signs: Vec<f64>,
    pub weights: Vec<f64>,
    pub paths: Vec<GridPath>,
}

impl SeriesTerms {
    /// Sum the first `k` terms (all of them if `k >= len`).
    pub fn partial_sum(&self, k: usize) -> GridPath {
        let m = self.paths[0].resolution();
        let mut acc = GridPath::zero(m);
        for j in 0..k.min(self.paths.len()) {
            acc = acc.add(&self.paths[j].scale(self.signs[j] * self.weights[j]));
        }
        acc
    }

    pub fn build(&self) -> GridPath {
        self.partial_sum(self.paths.len())
    }
}

/// Draw the terms of the truncated series: Rademacher signs, cumulative
/// exponential arrivals, and i.i.d. base paths, each from its own
/// sub-stream so that growing the truncation only appends terms.
pub fn lepage_terms(alpha: f64, k: usize, base: &YSampler, seed: SeedSpec) -> Result<SeriesTerms> {
    if k == 0 {
        return Err(Error::InvalidParams("series truncation must be at least 1".into()));
    }
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::InvalidParams(format!("series index {alpha} not in (0,2)")));
    }
    let mut sign_rng = seed.substream(SIGNS_TAG).rng();
    let mut gamma_rng = seed.substream(GAMMA_TAG).rng();
    let path_seed = seed.substream(PATHS_TAG);
    let mut signs = Vec::with_capacity(k);
    let mut weights = Vec::with_capacity(k);
    let mut paths = Vec::with_capacity(k);
    let mut gamma = 0.0f64;
    for j in 0..k {
        signs.push(if sign_rng.gen::<bool>() { 1.0 } else { -1.0 });
        let e: f64 = Exp1.sample(&mut gamma_rng);
        gamma += e;
        weights.push(gamma.powf(-1.0 / alpha));
        paths.push(base.draw(path_seed.substream(j as u64)));
    }
    Ok(SeriesTerms { signs, weights, paths })
}

/// Truncated series path `sum_{j<=K} eps_j Gamma_j^{-1/alpha} Y_j`.
pub fn lepage_path(alpha: f64, k: usize, base: &YSampler, seed: SeedSpec) -> Result<GridPath> {
    Ok(lepage_terms(alpha, k, base, seed)?.build())
}

/// A Monte Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct McEstimate {
    pub value: f64,
    pub se: f64,
    pub reps: usize,
}

/// Monte Carlo estimate of `E ||Y||^alpha` for the base sampler.
pub fn c_y_alpha(base: &YSampler, alpha: f64, reps: usize, seed: SeedSpec) -> Result<McEstimate> {
    if reps == 0 {
        return Err(Error::InvalidParams("c_y_alpha needs at least one replicate".into()));
    }
    let vals: Vec<f64> = (0..reps)
        .map(|i| base.draw(seed.substream(i as u64)).sup_norm().powf(alpha))
        .collect();
    let stats = crate::stats::SampleStats::from(&vals);
    Ok(McEstimate { value: stats.mean, se: stats.se_mean, reps })
}

/// Violations of the two spectral-measure assumptions observed on emitted
/// samples: fraction of samples vanishing at some grid point (assumption on
/// zero sets), and maximum fraction sharing a jump location (assumption on
/// discontinuity sets; step kinds report positive values by construction).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct AssumptionDiagnostics {
    pub zero_fraction_max: f64,
    pub shared_jump_fraction_max: f64,
}

pub fn assumption_diagnostics(samples: &[GridPath]) -> AssumptionDiagnostics {
    if samples.is_empty() {
        return AssumptionDiagnostics { zero_fraction_max: 0.0, shared_jump_fraction_max: 0.0 };
    }
    let m = samples[0].resolution();
    let n = samples.len() as f64;
    let mut zero_max = 0.0f64;
    let mut jump_max = 0.0f64;
    for l in 0..=m {
        let zeros = samples.iter().filter(|z| z.value(l) == 0.0).count() as f64 / n;
        zero_max = zero_max.max(zeros);
        if l >= 1 {
            let jumps =
                samples.iter().filter(|z| z.value(l) != z.left_limit(l)).count() as f64 / n;
            jump_max = jump_max.max(jumps);
        }
    }
    AssumptionDiagnostics { zero_fraction_max: zero_max, shared_jump_fraction_max: jump_max }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::{abs_normal_moment, SampleStats};

    #[test]
    fn constant_one_emits_all_ones() {
        let s = SpectralSampler::ConstantOne { resolution: 8 };
        let paths = sample_spectral(&s, SeedSpec::new(300, 0), 3).unwrap();
        for p in paths {
            assert!(p.values().iter().all(|&v| v == 1.0));
        }
    }

    #[test]
    fn signed_constant_with_p_one_is_always_plus_one() {
        let s = SpectralSampler::SignedConstant { resolution: 8, p: 1.0 };
        let paths = sample_spectral(&s, SeedSpec::new(301, 0), 16).unwrap();
        for p in paths {
            assert!(p.values().iter().all(|&v| v == 1.0));
        }
    }

    #[test]
    fn geom_bm_has_unit_norm_and_positive_values() {
        let s = SpectralSampler::NormalizedGeomBM { resolution: 32 };
        let paths = sample_spectral(&s, SeedSpec::new(302, 0), 50).unwrap();
        for p in &paths {
            assert_eq!(p.sup_norm(), 1.0);
            assert!(p.values().iter().all(|&v| v > 0.0));
        }
        let diag = assumption_diagnostics(&paths);
        assert_eq!(diag.zero_fraction_max, 0.0);
    }

    #[test]
    fn constant_kinds_satisfy_zero_set_assumption() {
        for s in [
            SpectralSampler::ConstantOne { resolution: 8 },
            SpectralSampler::SignedConstant { resolution: 8, p: 0.4 },
        ] {
            let paths = sample_spectral(&s, SeedSpec::new(303, 0), 64).unwrap();
            let diag = assumption_diagnostics(&paths);
            assert_eq!(diag.zero_fraction_max, 0.0);
            assert_eq!(diag.shared_jump_fraction_max, 0.0);
        }
    }

    #[test]
    fn phi_psi_closed_forms() {
        let grid: Vec<usize> = (0..=8).collect();
        let (phi, psi) = phi_psi(
            &SpectralSampler::ConstantOne { resolution: 8 },
            SeedSpec::new(304, 0),
            1,
            &grid,
        )
        .unwrap();
        assert!(phi.iter().all(|&v| v == 1.0));
        assert!(psi.iter().all(|&v| v == 1.0));
        let (phi, psi) = phi_psi(
            &SpectralSampler::SignedConstant { resolution: 8, p: 0.3 },
            SeedSpec::new(304, 1),
            1,
            &grid,
        )
        .unwrap();
        assert!(phi.iter().all(|&v| (v - (-0.4)).abs() < 1e-15));
        assert!(psi.iter().all(|&v| v == 1.0));
    }

    #[test]
    fn phi_psi_geom_bm_self_consistent() {
        let s = SpectralSampler::NormalizedGeomBM { resolution: 16 };
        let grid = [0usize, 8, 16];
        let (phi_small, _) = phi_psi(&s, SeedSpec::new(305, 0), 2_000, &grid).unwrap();
        let (phi_big, _) = phi_psi(&s, SeedSpec::new(305, 1), 20_000, &grid).unwrap();
        // A rough 3-se band for the smaller run; values live in [0, 1].
        for (a, b) in phi_small.iter().zip(&phi_big) {
            assert!((a - b).abs() < 3.0 * (0.25f64 / 2_000.0).sqrt() + 0.01);
        }
    }

    #[test]
    fn brownian_starts_at_zero_with_unit_terminal_variance() {
        let n = 10_000;
        let terminal: Vec<f64> = (0..n)
            .map(|i| {
                let w = brownian_path(64, SeedSpec::new(999, i as u64));
                assert_eq!(w.value(0), 0.0);
                w.value(64)
            })
            .collect();
        let s = SampleStats::from(&terminal);
        assert!((s.var - 1.0).abs() < 0.03, "terminal variance {}", s.var);
    }

    #[test]
    fn brownian_disjoint_blocks_uncorrelated() {
        let n = 10_000;
        let m = 64;
        let mut a = Vec::with_capacity(n);
        let mut b = Vec::with_capacity(n);
        for i in 0..n {
            let w = brownian_path(m, SeedSpec::new(307, i as u64));
            a.push(w.value(m / 2) - w.value(0));
            b.push(w.value(m) - w.value(m / 2));
        }
        let sa = SampleStats::from(&a);
        let sb = SampleStats::from(&b);
        let cov: f64 = a
            .iter()
            .zip(&b)
            .map(|(x, y)| (x - sa.mean) * (y - sb.mean))
            .sum::<f64>()
            / (n as f64 - 1.0);
        let corr = cov / (sa.var * sb.var).sqrt();
        assert!(corr.abs() < 0.03, "correlation {corr}");
    }

    #[test]
    fn series_with_constant_terms_and_forced_signs() {
        let base = YSampler::Constant { resolution: 4, value: 1.0 };
        let mut terms = lepage_terms(0.7, 16, &base, SeedSpec::new(308, 0)).unwrap();
        terms.signs = vec![1.0; 16];
        let expected: f64 = terms.weights.iter().sum();
        let path = terms.build();
        assert!(path.values().iter().all(|&v| (v - expected).abs() < 1e-12));
    }

    #[test]
    fn single_term_series_is_weighted_base_path() {
        let base = YSampler::Brownian { resolution: 16 };
        let terms = lepage_terms(1.5, 1, &base, SeedSpec::new(309, 0)).unwrap();
        let path = terms.build();
        for l in 0..=16 {
            let expected = terms.signs[0] * terms.weights[0] * terms.paths[0].value(l);
            assert_eq!(path.value(l), expected);
        }
    }

    #[test]
    fn series_prefix_is_stable_under_truncation_growth() {
        let base = YSampler::Brownian { resolution: 8 };
        let seed = SeedSpec::new(310, 0);
        let short = lepage_terms(0.7, 5, &base, seed).unwrap();
        let long = lepage_terms(0.7, 9, &base, seed).unwrap();
        assert_eq!(short.signs, long.signs[..5]);
        assert_eq!(short.weights, long.weights[..5]);
        assert_eq!(short.paths[4], long.paths[4]);
    }

    #[test]
    fn series_truncation_error_shrinks_for_small_alpha() {
        let base = YSampler::Brownian { resolution: 8 };
        let alpha = 0.7;
        let reps = 200;
        let mut means = Vec::new();
        for &k in &[8usize, 16, 32] {
            let mut acc = 0.0;
            for i in 0..reps {
                let terms = lepage_terms(alpha, 2 * k, &base, SeedSpec::new(311, i as u64)).unwrap();
                let full = terms.partial_sum(2 * k);
                let half = terms.partial_sum(k);
                acc += full.sub(&half).sup_norm();
            }
            means.push(acc / reps as f64);
        }
        assert!(means[0] > means[1] && means[1] > means[2], "{means:?}");
    }

    #[test]
    fn c_y_alpha_of_constant_is_exact() {
        let base = YSampler::Constant { resolution: 4, value: 1.0 };
        let est = c_y_alpha(&base, 1.5, 100, SeedSpec::new(312, 0)).unwrap();
        assert_eq!(est.value, 1.0);
        assert_eq!(est.se, 0.0);
    }

    #[test]
    fn brownian_sup_moment_below_reflection_bound() {
        for alpha in [0.5, 1.5] {
            let base = YSampler::Brownian { resolution: 64 };
            let est = c_y_alpha(&base, alpha, 4_000, SeedSpec::new(313, 0)).unwrap();
            let bound = 8.0 * abs_normal_moment(alpha);
            assert!(
                est.value <= bound + 3.0 * est.se,
                "alpha {alpha}: {} vs bound {bound}",
                est.value
            );
        }
    }

    #[test]
    fn c_y_alpha_se_scales_like_inverse_sqrt_reps() {
        let base = YSampler::Brownian { resolution: 16 };
        let small = c_y_alpha(&base, 1.0, 20_000, SeedSpec::new(314, 0)).unwrap();
        let doubled = c_y_alpha(&base, 1.0, 40_000, SeedSpec::new(314, 1)).unwrap();
        let ratio = small.se / doubled.se;
        assert!((1.25..=1.6).contains(&ratio), "se ratio {ratio} vs sqrt(2)");
    }

    #[test]
    fn user_panel_rejects_zero_column() {
        let s = SpectralSampler::NormalizedUserPath {
            paths: vec![GridPath::zero(4)],
        };
        assert!(matches!(s.validate(), Err(Error::ZeroPath)));
    }

    #[test]
    fn user_panel_resamples_normalized_members() {
        let p1 = GridPath::new(vec![0.0, 2.0, -4.0]).unwrap();
        let p2 = GridPath::new(vec![1.0, 0.5, 0.25]).unwrap();
        let s = SpectralSampler::NormalizedUserPath { paths: vec![p1.clone(), p2.clone()] };
        let draws = sample_spectral(&s, SeedSpec::new(315, 0), 40).unwrap();
        let unit1 = p1.polar().unwrap().1;
        let unit2 = p2.polar().unwrap().1;
        let mut seen = [false, false];
        for z in draws {
            assert_eq!(z.sup_norm(), 1.0);
            if z == unit1 {
                seen[0] = true;
            } else if z == unit2 {
                seen[1] = true;
            } else {
                panic!("draw is not a normalized panel member");
            }
        }
        assert!(seen[0] && seen[1]);
    }
}

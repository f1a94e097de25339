//! Statistical verification machinery: two-sample KS tests, the stable tail
//! constant, Laplace-functional checks, and report assembly.

use crate::error::{Error, Result};
use crate::grid::PathOfPaths;
use crate::levy::{MarginalReadings, SigmaReading, WindowParams};
use crate::metrics::{d_j1_0, w_second, w_second_big_d};
use crate::rv::{sample_stable_cms, StableParams, ALPHA_TOL};
use crate::seed::SeedSpec;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

/// Result of a Kolmogorov-Smirnov comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KSResult {
    /// Sup distance between the empirical distribution functions.
    pub d: f64,
    /// Effective sample size `n_a n_b / (n_a + n_b)`.
    pub n_eff: f64,
    /// Asymptotic Kolmogorov p-value.
    pub p_approx: f64,
}

/// Two-sample KS statistic with the asymptotic Kolmogorov p-value.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<KSResult> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySample("ks_two_sample needs two nonempty samples".into()));
    }
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_unstable_by(|u, v| u.partial_cmp(v).unwrap());
    ys.sort_unstable_by(|u, v| u.partial_cmp(v).unwrap());
    let (na, nb) = (xs.len(), ys.len());
    let mut d = 0.0f64;
    let (mut i, mut j) = (0usize, 0usize);
    while i < na && j < nb {
        let t = xs[i].min(ys[j]);
        while i < na && xs[i] <= t {
            i += 1;
        }
        while j < nb && ys[j] <= t {
            j += 1;
        }
        d = d.max((i as f64 / na as f64 - j as f64 / nb as f64).abs());
    }
    let n_eff = na as f64 * nb as f64 / (na + nb) as f64;
    Ok(KSResult { d, n_eff, p_approx: kolmogorov_p(d, n_eff) })
}

/// Asymptotic Kolmogorov tail probability for statistic `d` at effective
/// sample size `n_eff`.
pub fn kolmogorov_p(d: f64, n_eff: f64) -> f64 {
    if d <= 0.0 {
        return 1.0;
    }
    let sqrt_n = n_eff.sqrt();
    let lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
    let mut p = 0.0;
    for k in 1..101 {
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        let term = sign * (-2.0 * (k as f64) * (k as f64) * lambda * lambda).exp();
        p += term;
        if term.abs() < 1e-12 {
            break;
        }
    }
    (2.0 * p).clamp(0.0, 1.0)
}

/// KS threshold at asymptotic level `level` (e.g. 0.05 -> 1.358 band).
pub fn ks_threshold(level: f64, n_eff: f64) -> f64 {
    let c = (-0.5 * (level / 2.0).ln()).sqrt();
    c / n_eff.sqrt()
}

/// `C_alpha^{-1} = Gamma(2 - alpha) / (1 - alpha) * cos(pi alpha / 2)`.
///
/// Positive on both sides of 1: the two factors change sign together.
pub fn c_alpha_inv(alpha: f64) -> Result<f64> {
    if (alpha - 1.0).abs() <= ALPHA_TOL {
        return Err(Error::AlphaOne);
    }
    if alpha <= 0.0 || alpha >= 2.0 {
        return Err(Error::InvalidParams(format!("c_alpha_inv needs alpha in (0,2), got {alpha}")));
    }
    Ok(gamma(2.0 - alpha) / (1.0 - alpha) * (std::f64::consts::FRAC_PI_2 * alpha).cos())
}

/// `E |N(0,1)|^p = 2^{p/2} Gamma((p+1)/2) / sqrt(pi)`.
pub fn abs_normal_moment(p: f64) -> f64 {
    2.0f64.powf(p / 2.0) * gamma((p + 1.0) / 2.0) / std::f64::consts::PI.sqrt()
}

/// Summary moments of a sample with Monte Carlo standard errors.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SampleStats {
    pub n: usize,
    pub mean: f64,
    pub var: f64,
    pub se_mean: f64,
    pub se_var: f64,
}

impl SampleStats {
    pub fn from(xs: &[f64]) -> SampleStats {
        let n = xs.len();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let m2 = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64;
        let m4 = xs.iter().map(|x| (x - mean).powi(4)).sum::<f64>() / n as f64;
        let var = m2 * n as f64 / (n as f64 - 1.0);
        SampleStats {
            n,
            mean,
            var,
            se_mean: (var / n as f64).sqrt(),
            se_var: ((m4 - m2 * m2).max(0.0) / n as f64).sqrt(),
        }
    }
}

/// Monte Carlo vs closed-form Laplace functional of the point cloud on a box
/// `theta * 1_{[0,t] x (r,inf)}`; `theta = inf` gives the void probability.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct LaplaceCheck {
    pub mc: f64,
    pub se: f64,
    pub closed_form: f64,
}

pub fn laplace_functional_check(
    window: &WindowParams,
    t: f64,
    r: f64,
    theta: f64,
    reps: usize,
    seed: SeedSpec,
) -> Result<LaplaceCheck> {
    if r < window.eps {
        return Err(Error::InvalidParams(format!(
            "box radius {r} below the window truncation {}",
            window.eps
        )));
    }
    if t > window.t_max || t < 0.0 || theta < 0.0 {
        return Err(Error::InvalidParams("box must sit inside the window".into()));
    }
    let vals: Vec<f64> = (0..reps)
        .map(|rep| {
            let pts = crate::levy::sample_tr_points(window, seed.substream(rep as u64));
            let count = pts.iter().filter(|&&(ti, ri)| ti <= t && ri > r).count();
            if theta.is_infinite() {
                if count == 0 { 1.0 } else { 0.0 }
            } else {
                (-(theta * count as f64)).exp()
            }
        })
        .collect();
    let s = SampleStats::from(&vals);
    let mass = t * window.c * r.powf(-window.alpha);
    let closed_form = if theta.is_infinite() {
        (-mass).exp()
    } else {
        (-mass * (1.0 - (-theta).exp())).exp()
    };
    Ok(LaplaceCheck { mc: s.mean, se: s.se_mean, closed_form })
}

/// Outcome of a marginal-law KS check run under both scale readings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MarginalKsOutcome {
    pub direct: KSResult,
    pub power: KSResult,
    /// Reading with the smaller statistic.
    pub adjudicated: SigmaReading,
}

impl MarginalKsOutcome {
    pub fn adjudicated_result(&self) -> &KSResult {
        match self.adjudicated {
            SigmaReading::Direct => &self.direct,
            SigmaReading::Power => &self.power,
        }
    }
}

/// Compare construction marginals against the stable oracle under both
/// readings of the scale relation, reporting both and the winner.
pub fn marginal_ks_check(
    samples: &[f64],
    readings: &MarginalReadings,
    reps: usize,
    seed: SeedSpec,
) -> Result<MarginalKsOutcome> {
    if samples.len() < 100 || reps < 100 {
        return Err(Error::EmptySample(
            "marginal KS check needs at least 100 replicates per side".into(),
        ));
    }
    let direct_oracle = sample_stable_cms(&readings.direct, seed.substream(1), reps)?;
    let power_oracle = sample_stable_cms(&readings.power, seed.substream(2), reps)?;
    let direct = ks_two_sample(samples, &direct_oracle)?;
    let power = ks_two_sample(samples, &power_oracle)?;
    let adjudicated = if power.d <= direct.d { SigmaReading::Power } else { SigmaReading::Direct };
    Ok(MarginalKsOutcome { direct, power, adjudicated })
}

/// A marginal sample tagged with its stable target, for cross-construction
/// comparisons.
#[derive(Debug, Clone)]
pub struct MarginalSource {
    pub label: String,
    pub target: StableParams,
    pub samples: Vec<f64>,
}

/// Two-sample KS between marginals of two construction routes aimed at the
/// same stable law. Scale targets may be Monte Carlo estimates, so they are
/// matched to 5% rather than exactly.
pub fn cross_construction_check(a: &MarginalSource, b: &MarginalSource) -> Result<KSResult> {
    let ta = &a.target;
    let tb = &b.target;
    if (ta.alpha - tb.alpha).abs() > 1e-9 || (ta.beta - tb.beta).abs() > 1e-9 {
        return Err(Error::MismatchedTargets(format!(
            "{} targets (alpha={}, beta={}) but {} targets (alpha={}, beta={})",
            a.label, ta.alpha, ta.beta, b.label, tb.alpha, tb.beta
        )));
    }
    if (ta.sigma - tb.sigma).abs() > 0.05 * ta.sigma.max(tb.sigma) {
        return Err(Error::MismatchedTargets(format!(
            "{} scale {} vs {} scale {}",
            a.label, ta.sigma, b.label, tb.sigma
        )));
    }
    ks_two_sample(&a.samples, &b.samples)
}

/// One named check inside a verification report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    /// The mathematical property being exercised.
    pub property: String,
    pub target: Option<f64>,
    pub estimate: f64,
    pub tolerance: Option<f64>,
    pub pass: bool,
    pub seed: u64,
    pub runtime_secs: f64,
}

/// A collection of named checks with outcomes; serializes to JSON and to a
/// plain-text table.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckRecord>,
    pub config_hash: Option<String>,
}

impl VerificationReport {
    pub fn push(&mut self, record: CheckRecord) {
        self.checks.push(record);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            let target = c.target.map(|t| format!("{t:.6}")).unwrap_or_else(|| "-".into());
            let tol = c.tolerance.map(|t| format!("{t:.6}")).unwrap_or_else(|| "-".into());
            out.push_str(&format!(
                "{status} {name} [{property}] estimate={est:.6} target={target} tol={tol} seed={seed} ({rt:.2}s)\n",
                name = c.name,
                property = c.property,
                est = c.estimate,
                seed = c.seed,
                rt = c.runtime_secs,
            ));
        }
        let overall = if self.all_passed() { "ALL CHECKS PASSED" } else { "SOME CHECKS FAILED" };
        out.push_str(overall);
        out.push('\n');
        out
    }
}

/// Empirical tightness diagnostics on a set of path-of-paths replicates:
/// sup-norm mass, the scalar modulus family, and the path-space modulus
/// family, each reported as exceedance frequencies.
pub fn tightness_report(
    replicates: &[PathOfPaths],
    sup_levels: &[f64],
    deltas: &[f64],
    etas: &[f64],
    seed: u64,
) -> Result<VerificationReport> {
    if replicates.is_empty() {
        return Err(Error::EmptySample("tightness report needs replicates".into()));
    }
    let started = std::time::Instant::now();
    let mut report = VerificationReport::default();
    let nrep = replicates.len() as f64;
    let mut push = |name: String, property: &str, estimate: f64, elapsed: f64| {
        report.push(CheckRecord {
            name,
            property: property.into(),
            target: None,
            estimate,
            tolerance: None,
            pass: true,
            seed,
            runtime_secs: elapsed,
        });
    };

    for &a in sup_levels {
        let freq = replicates.iter().filter(|x| x.super_norm() > a).count() as f64 / nrep;
        push(
            format!("sup_norm_exceeds_{a}"),
            "super-uniform norm mass",
            freq,
            started.elapsed().as_secs_f64(),
        );
    }

    for &delta in deltas {
        for &eta in etas {
            let freq_w = replicates
                .iter()
                .filter(|x| x.entries().iter().any(|p| w_second(p, delta) > eta))
                .count() as f64
                / nrep;
            push(
                format!("w_second_any_slice_delta_{delta}_eta_{eta}"),
                "scalar modulus family",
                freq_w,
                started.elapsed().as_secs_f64(),
            );

            let freq_left = replicates
                .iter()
                .filter(|x| {
                    x.entries().iter().any(|p| {
                        let m = p.resolution();
                        let l = ((delta * m as f64) * (1.0 + 1e-12)).floor() as usize;
                        (p.value(l.min(m)) - p.value(0)).abs() > eta
                    })
                })
                .count() as f64
                / nrep;
            push(
                format!("left_endpoint_increment_delta_{delta}_eta_{eta}"),
                "scalar endpoint increments near 0",
                freq_left,
                started.elapsed().as_secs_f64(),
            );

            let freq_right = replicates
                .iter()
                .filter(|x| {
                    x.entries().iter().any(|p| {
                        let m = p.resolution();
                        let l = ((delta * m as f64) * (1.0 + 1e-12)).floor() as usize;
                        (p.left_limit(m) - p.value(m - l.min(m - 1))).abs() > eta
                    })
                })
                .count() as f64
                / nrep;
            push(
                format!("right_endpoint_increment_delta_{delta}_eta_{eta}"),
                "scalar endpoint increments near 1",
                freq_right,
                started.elapsed().as_secs_f64(),
            );

            let freq_wd = replicates
                .iter()
                .filter(|x| w_second_big_d(x, delta).map(|v| v > eta).unwrap_or(false))
                .count() as f64
                / nrep;
            push(
                format!("w_second_d_delta_{delta}_eta_{eta}"),
                "path-space modulus family",
                freq_wd,
                started.elapsed().as_secs_f64(),
            );

            let freq_d0 = replicates
                .iter()
                .filter(|x| {
                    let n = x.time_resolution();
                    let k = ((delta * n as f64) * (1.0 + 1e-12)).floor() as usize;
                    d_j1_0(x.entry(k.min(n)), x.entry(0)).map(|v| v > eta).unwrap_or(false)
                })
                .count() as f64
                / nrep;
            push(
                format!("time_left_endpoint_delta_{delta}_eta_{eta}"),
                "path-space endpoint increments near 0",
                freq_d0,
                started.elapsed().as_secs_f64(),
            );

            let freq_d1 = replicates
                .iter()
                .filter(|x| {
                    let n = x.time_resolution();
                    let k = ((delta * n as f64) * (1.0 + 1e-12)).floor() as usize;
                    d_j1_0(x.entry(n - 1), x.entry(n - k.min(n - 1)))
                        .map(|v| v > eta)
                        .unwrap_or(false)
                })
                .count() as f64
                / nrep;
            push(
                format!("time_right_endpoint_delta_{delta}_eta_{eta}"),
                "path-space endpoint increments near 1",
                freq_d1,
                started.elapsed().as_secs_f64(),
            );
        }
    }
    Ok(report)
}

/// Pearson chi-square test of independence between two integer count
/// sequences, with counts pooled above `cap`.
pub fn chi_square_independence(pairs: &[(u64, u64)], cap: u64) -> Result<(f64, usize, f64)> {
    if pairs.is_empty() {
        return Err(Error::EmptySample("chi-square needs observations".into()));
    }
    let bins = (cap + 1) as usize;
    let mut table = vec![0.0f64; bins * bins];
    for &(a, b) in pairs {
        let i = a.min(cap) as usize;
        let j = b.min(cap) as usize;
        table[i * bins + j] += 1.0;
    }
    let n = pairs.len() as f64;
    let row: Vec<f64> = (0..bins).map(|i| (0..bins).map(|j| table[i * bins + j]).sum()).collect();
    let col: Vec<f64> = (0..bins).map(|j| (0..bins).map(|i| table[i * bins + j]).sum()).collect();
    let mut stat = 0.0;
    let mut dof = 0usize;
    let live_rows = row.iter().filter(|&&r| r > 0.0).count();
    let live_cols = col.iter().filter(|&&c| c > 0.0).count();
    for i in 0..bins {
        for j in 0..bins {
            let expected = row[i] * col[j] / n;
            if expected > 0.0 {
                stat += (table[i * bins + j] - expected).powi(2) / expected;
            }
        }
    }
    if live_rows > 1 && live_cols > 1 {
        dof = (live_rows - 1) * (live_cols - 1);
    }
    if dof == 0 {
        return Err(Error::InsufficientData("degenerate contingency table".into()));
    }
    let dist = statrs::distribution::ChiSquared::new(dof as f64)
        .map_err(|e| Error::InvalidParams(e.to_string()))?;
    use statrs::distribution::ContinuousCDF;
    let p = 1.0 - dist.cdf(stat);
    Ok((stat, dof, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::Rng;

    #[test]
    fn ks_identical_samples_is_zero() {
        let a = vec![1.0, 2.0, 3.0, 4.0];
        let b = vec![4.0, 3.0, 2.0, 1.0];
        assert_eq!(ks_two_sample(&a, &b).unwrap().d, 0.0);
    }

    #[test]
    fn ks_disjoint_supports_is_one() {
        let a = vec![0.0, 0.5, 1.0];
        let b = vec![5.0, 6.0, 7.0];
        assert_eq!(ks_two_sample(&a, &b).unwrap().d, 1.0);
    }

    #[test]
    fn ks_rejects_empty() {
        assert!(matches!(ks_two_sample(&[], &[1.0]), Err(Error::EmptySample(_))));
    }

    #[test]
    fn ks_gaussian_pairs_within_95_band() {
        let n = 10_000;
        let band = 1.358 * (2.0 / n as f64).sqrt();
        let mut hits = 0;
        for s in 0..3u64 {
            let mut rng = SeedSpec::new(200 + s, 0).rng();
            let a: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(rand_distr::StandardNormal)).collect();
            let b: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(rand_distr::StandardNormal)).collect();
            if ks_two_sample(&a, &b).unwrap().d < band {
                hits += 1;
            }
        }
        assert!(hits >= 2);
    }

    #[test]
    fn ks_symmetric_and_invariant_under_monotone_transforms() {
        let mut rng = SeedSpec::new(201, 0).rng();
        let a: Vec<f64> = (0..500).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let b: Vec<f64> = (0..700).map(|_| rng.gen_range(-1.0..3.0)).collect();
        let d0 = ks_two_sample(&a, &b).unwrap().d;
        assert_eq!(d0, ks_two_sample(&b, &a).unwrap().d);
        let fa: Vec<f64> = a.iter().map(|x| x.exp()).collect();
        let fb: Vec<f64> = b.iter().map(|x| x.exp()).collect();
        assert_eq!(d0, ks_two_sample(&fa, &fb).unwrap().d);
        let ga: Vec<f64> = a.iter().map(|x| x.atan()).collect();
        let gb: Vec<f64> = b.iter().map(|x| x.atan()).collect();
        assert_eq!(d0, ks_two_sample(&ga, &gb).unwrap().d);
    }

    #[test]
    fn c_alpha_inv_reference_values() {
        assert_relative_eq!(c_alpha_inv(0.5).unwrap(), 1.253314, max_relative = 1e-5);
        assert_relative_eq!(c_alpha_inv(1.5).unwrap(), 2.506628, max_relative = 1e-5);
    }

    #[test]
    fn c_alpha_inv_positive_across_grid() {
        for i in 1..20 {
            let alpha = i as f64 / 10.0;
            if (alpha - 1.0).abs() < 1e-9 {
                assert!(matches!(c_alpha_inv(alpha), Err(Error::AlphaOne)));
            } else {
                assert!(c_alpha_inv(alpha).unwrap() > 0.0, "alpha = {alpha}");
            }
        }
    }

    #[test]
    fn c_alpha_inv_continuous_on_each_side() {
        // Relative increments stay small on a fine grid; the function blows
        // up only at the interval endpoints.
        for (lo, hi) in [(0.05, 0.95), (1.05, 1.9)] {
            let mut prev = c_alpha_inv(lo).unwrap();
            let steps = 400;
            for i in 1..=steps {
                let alpha = lo + (hi - lo) * i as f64 / steps as f64;
                let v = c_alpha_inv(alpha).unwrap();
                assert!((v - prev).abs() / prev.abs() < 0.1, "jump at alpha = {alpha}");
                prev = v;
            }
        }
    }

    #[test]
    fn abs_normal_moment_known_values() {
        assert_relative_eq!(abs_normal_moment(1.0), (2.0 / std::f64::consts::PI).sqrt(), max_relative = 1e-12);
        assert_relative_eq!(abs_normal_moment(2.0), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn chi_square_detects_dependence_and_passes_independence() {
        let mut rng = SeedSpec::new(202, 0).rng();
        let indep: Vec<(u64, u64)> = (0..4000)
            .map(|_| (rng.gen_range(0..4u64), rng.gen_range(0..4u64)))
            .collect();
        let (_, _, p) = chi_square_independence(&indep, 3).unwrap();
        assert!(p > 0.01, "independent counts rejected: p = {p}");
        let dep: Vec<(u64, u64)> = (0..4000).map(|_| { let v = rng.gen_range(0..4u64); (v, v) }).collect();
        let (_, _, p) = chi_square_independence(&dep, 3).unwrap();
        assert!(p < 1e-6, "dependent counts accepted: p = {p}");
    }

    #[test]
    fn laplace_with_zero_theta_is_exactly_one() {
        let window = crate::levy::WindowParams::new(1.0, 0.5, 1.0, 0.5).unwrap();
        let check =
            laplace_functional_check(&window, 1.0, 1.0, 0.0, 200, SeedSpec::new(203, 0)).unwrap();
        assert_eq!(check.mc, 1.0);
        assert_eq!(check.closed_form, 1.0);
    }

    #[test]
    fn laplace_se_halves_when_reps_quadruple() {
        let window = crate::levy::WindowParams::new(1.0, 0.5, 1.0, 1.5).unwrap();
        let small =
            laplace_functional_check(&window, 1.0, 1.0, 1.0, 10_000, SeedSpec::new(204, 0)).unwrap();
        let big =
            laplace_functional_check(&window, 1.0, 1.0, 1.0, 40_000, SeedSpec::new(204, 1)).unwrap();
        let ratio = small.se / big.se;
        assert!((1.7..=2.3).contains(&ratio), "se ratio {ratio} vs 2");
    }

    #[test]
    fn tightness_of_zero_sheets_has_zero_frequencies() {
        let replicates = vec![PathOfPaths::zero(6, 6); 20];
        let report = tightness_report(&replicates, &[0.1], &[0.2], &[0.05], 0).unwrap();
        for check in &report.checks {
            assert_eq!(check.estimate, 0.0, "{}", check.name);
        }
    }

    #[test]
    fn tightness_modulus_frequency_monotone_in_delta() {
        // w''_D grows with the window, so exceedance frequencies cannot
        // decrease as delta increases (they shrink as delta drops to 0,
        // which is what tightness needs).
        let mut rng = SeedSpec::new(205, 0).rng();
        let replicates: Vec<PathOfPaths> = (0..30)
            .map(|_| {
                PathOfPaths::new(
                    (0..=8)
                        .map(|_| {
                            crate::grid::GridPath::new(
                                (0..=4).map(|_| rng.gen_range(-1.0..1.0)).collect(),
                            )
                            .unwrap()
                        })
                        .collect(),
                )
                .unwrap()
            })
            .collect();
        let eta = 0.6;
        let freq = |delta: f64| {
            replicates
                .iter()
                .filter(|x| w_second_big_d(x, delta).unwrap() > eta)
                .count() as f64
        };
        let (f1, f2, f3) = (freq(0.15), freq(0.3), freq(0.6));
        assert!(f1 <= f2 && f2 <= f3, "{f1} {f2} {f3}");
    }

    #[test]
    fn cross_check_rejects_mismatched_targets() {
        let a = MarginalSource {
            label: "a".into(),
            target: StableParams::new(1.5, 1.0, 0.0, 0.0).unwrap(),
            samples: vec![0.0; 100],
        };
        let mut b = MarginalSource {
            label: "b".into(),
            target: StableParams::new(0.5, 1.0, 0.0, 0.0).unwrap(),
            samples: vec![0.0; 100],
        };
        assert!(matches!(cross_construction_check(&a, &b), Err(Error::MismatchedTargets(_))));
        b.target = StableParams::new(1.5, 1.2, 0.0, 0.0).unwrap();
        assert!(matches!(cross_construction_check(&a, &b), Err(Error::MismatchedTargets(_))));
        b.target = StableParams::new(1.5, 1.001, 0.0, 0.0).unwrap();
        assert!(cross_construction_check(&a, &b).is_ok());
    }

    #[test]
    fn report_renders_and_round_trips() {
        let mut report = VerificationReport::default();
        report.push(CheckRecord {
            name: "demo".into(),
            property: "demo property".into(),
            target: Some(1.0),
            estimate: 1.01,
            tolerance: Some(0.05),
            pass: true,
            seed: 7,
            runtime_secs: 0.1,
        });
        assert!(report.all_passed());
        let text = report.render_text();
        assert!(text.contains("PASS demo"));
        let back: VerificationReport = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(back.checks.len(), 1);
    }
}

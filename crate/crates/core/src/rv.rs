//! Regularly varying scalar laws, the stable oracle sampler, normalizing
//! sequences and centering constants.
//!
//! The five law families all have constant-limit slowly varying parts, so
//! the normalizing sequence is `a_n = (C n)^{1/alpha}` with `C` the tail
//! constant. Stable draws use the Chambers-Mallows-Stuck transform in the
//! 1-parameterization `S_alpha(sigma, beta, mu)`, the convention under which
//! `S_2(sigma, 0, 0) = N(0, 2 sigma^2)`.

use crate::error::{Error, Result};
use crate::seed::SeedSpec;
use rand::Rng;
use rand_distr::{Distribution, Exp1, Open01};
use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

/// Boundary tolerance for the open interval (0,2) and the excluded point 1.
pub const ALPHA_TOL: f64 = 1e-9;

/// Parameters of the stable law `S_alpha(sigma, beta, mu)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StableParams {
    pub alpha: f64,
    pub sigma: f64,
    pub beta: f64,
    pub mu: f64,
}

impl StableParams {
    pub fn new(alpha: f64, sigma: f64, beta: f64, mu: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 2.0) {
            return Err(Error::InvalidParams(format!("stable alpha {alpha} not in (0,2]")));
        }
        if !(sigma > 0.0) {
            return Err(Error::InvalidParams(format!("stable sigma {sigma} must be positive")));
        }
        if !(-1.0..=1.0).contains(&beta) || !mu.is_finite() {
            return Err(Error::InvalidParams(format!("stable beta {beta} / mu {mu} invalid")));
        }
        Ok(StableParams { alpha, sigma, beta, mu })
    }
}

/// A regularly varying scalar law with constant-limit slowly varying part.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RVLaw {
    /// Density `alpha x^{-alpha-1}` on `x > 1`.
    Pareto { alpha: f64 },
    /// Density `p alpha x^{-alpha-1}` on `x > 1`, `q alpha (-x)^{-alpha-1}` on `x < -1`.
    TwoSidedPareto { alpha: f64, p: f64 },
    /// Distribution function `exp(-x^{-alpha})` on `x > 0`.
    Frechet { alpha: f64 },
    /// Density `a b x^{b-1} (1 + x^b)^{-a-1}` on `x > 0`; tail index `a b`.
    Burr { a: f64, b: f64 },
    Stable(StableParams),
}

impl RVLaw {
    pub fn validate(&self) -> Result<()> {
        match *self {
            RVLaw::Pareto { alpha } | RVLaw::Frechet { alpha } => {
                if alpha > 0.0 { Ok(()) } else {
                    Err(Error::InvalidParams(format!("alpha {alpha} must be positive")))
                }
            }
            RVLaw::TwoSidedPareto { alpha, p } => {
                if alpha <= 0.0 {
                    Err(Error::InvalidParams(format!("alpha {alpha} must be positive")))
                } else if !(0.0..=1.0).contains(&p) {
                    Err(Error::InvalidParams(format!("tail fraction p {p} not in [0,1]")))
                } else {
                    Ok(())
                }
            }
            RVLaw::Burr { a, b } => {
                if a > 0.0 && b > 0.0 { Ok(()) } else {
                    Err(Error::InvalidParams(format!("Burr parameters a {a}, b {b} must be positive")))
                }
            }
            RVLaw::Stable(p) => StableParams::new(p.alpha, p.sigma, p.beta, p.mu).map(|_| ()),
        }
    }

    /// Reject laws unusable in the constructions: the index must lie in the
    /// open interval (0,2) and away from 1, both with tolerance [`ALPHA_TOL`].
    pub fn validate_for_construction(&self) -> Result<()> {
        self.validate()?;
        let alpha = self.index();
        if alpha <= ALPHA_TOL || alpha >= 2.0 - ALPHA_TOL {
            return Err(Error::InvalidParams(format!(
                "tail index {alpha} outside the open interval (0,2)"
            )));
        }
        if (alpha - 1.0).abs() <= ALPHA_TOL {
            return Err(Error::AlphaOne);
        }
        Ok(())
    }

    /// Tail index alpha (`a*b` for Burr).
    pub fn index(&self) -> f64 {
        match *self {
            RVLaw::Pareto { alpha } | RVLaw::Frechet { alpha } => alpha,
            RVLaw::TwoSidedPareto { alpha, .. } => alpha,
            RVLaw::Burr { a, b } => a * b,
            RVLaw::Stable(p) => p.alpha,
        }
    }

    /// Positive-tail fraction `p = lim P(X > x) / P(|X| > x)`.
    pub fn tail_fraction(&self) -> f64 {
        match *self {
            RVLaw::Pareto { .. } | RVLaw::Frechet { .. } | RVLaw::Burr { .. } => 1.0,
            RVLaw::TwoSidedPareto { p, .. } => p,
            RVLaw::Stable(s) => (1.0 + s.beta) / 2.0,
        }
    }

    /// Tail constant `C = lim x^alpha P(|X| > x)`.
    pub fn tail_constant(&self) -> Result<f64> {
        match *self {
            RVLaw::Pareto { .. }
            | RVLaw::TwoSidedPareto { .. }
            | RVLaw::Frechet { .. }
            | RVLaw::Burr { .. } => Ok(1.0),
            RVLaw::Stable(s) => {
                let c_alpha_inv = crate::stats::c_alpha_inv(s.alpha)?;
                Ok(s.sigma.powf(s.alpha) / c_alpha_inv)
            }
        }
    }

    /// Distribution function, available in closed form for the inverse-CDF
    /// families (used by the probability-integral-transform checks).
    pub fn cdf(&self, x: f64) -> Option<f64> {
        match *self {
            RVLaw::Pareto { alpha } => {
                Some(if x <= 1.0 { 0.0 } else { 1.0 - x.powf(-alpha) })
            }
            RVLaw::TwoSidedPareto { alpha, p } => {
                let q = 1.0 - p;
                Some(if x <= -1.0 {
                    q * (-x).powf(-alpha)
                } else if x < 1.0 {
                    q
                } else {
                    1.0 - p * x.powf(-alpha)
                })
            }
            RVLaw::Frechet { alpha } => {
                Some(if x <= 0.0 { 0.0 } else { (-x.powf(-alpha)).exp() })
            }
            RVLaw::Burr { a, b } => {
                Some(if x <= 0.0 { 0.0 } else { 1.0 - (1.0 + x.powf(b)).powf(-a) })
            }
            RVLaw::Stable(_) => None,
        }
    }
}

/// Pareto quantile in tail form: `u` is the tail probability.
pub fn pareto_quantile(alpha: f64, u: f64) -> f64 {
    u.powf(-1.0 / alpha)
}

/// Frechet quantile: `u` is the distribution-function probability.
pub fn frechet_quantile(alpha: f64, u: f64) -> f64 {
    (-u.ln()).powf(-1.0 / alpha)
}

/// Burr quantile: `u` is the distribution-function probability.
pub fn burr_quantile(a: f64, b: f64, u: f64) -> f64 {
    ((1.0 - u).powf(-1.0 / a) - 1.0).powf(1.0 / b)
}

/// Draw `count` i.i.d. values of the law.
pub fn sample(law: &RVLaw, seed: SeedSpec, count: usize) -> Result<Vec<f64>> {
    law.validate()?;
    let mut rng = seed.rng();
    let mut out = Vec::with_capacity(count);
    match *law {
        RVLaw::Pareto { alpha } => {
            for _ in 0..count {
                let u: f64 = Open01.sample(&mut rng);
                out.push(pareto_quantile(alpha, u));
            }
        }
        RVLaw::TwoSidedPareto { alpha, p } => {
            for _ in 0..count {
                let u: f64 = Open01.sample(&mut rng);
                let sign = if rng.gen::<f64>() < p { 1.0 } else { -1.0 };
                out.push(sign * pareto_quantile(alpha, u));
            }
        }
        RVLaw::Frechet { alpha } => {
            for _ in 0..count {
                let u: f64 = Open01.sample(&mut rng);
                out.push(frechet_quantile(alpha, u));
            }
        }
        RVLaw::Burr { a, b } => {
            for _ in 0..count {
                let u: f64 = Open01.sample(&mut rng);
                out.push(burr_quantile(a, b, u));
            }
        }
        RVLaw::Stable(p) => return sample_stable_cms(&p, seed, count),
    }
    Ok(out)
}

/// The Chambers-Mallows-Stuck kernel: maps `(v, e)` with `v` uniform on
/// `(-pi/2, pi/2)` and `e` standard exponential to a standard
/// `S_alpha(1, beta, 0)` draw.
pub fn cms_transform(alpha: f64, beta: f64, v: f64, e: f64) -> f64 {
    if (alpha - 1.0).abs() < 1e-12 {
        let half_pi = std::f64::consts::FRAC_PI_2;
        let t = half_pi + beta * v;
        return (t * v.tan() - beta * ((half_pi * e * v.cos()) / t).ln()) / half_pi;
    }
    let tan_term = beta * (std::f64::consts::FRAC_PI_2 * alpha).tan();
    let b = tan_term.atan() / alpha;
    let s = (1.0 + tan_term * tan_term).powf(1.0 / (2.0 * alpha));
    let num = (alpha * (v + b)).sin();
    let den = v.cos().powf(1.0 / alpha);
    let tail = ((v - alpha * (v + b)).cos() / e).powf((1.0 - alpha) / alpha);
    s * num / den * tail
}

/// Draw `count` i.i.d. `S_alpha(sigma, beta, mu)` values.
pub fn sample_stable_cms(params: &StableParams, seed: SeedSpec, count: usize) -> Result<Vec<f64>> {
    StableParams::new(params.alpha, params.sigma, params.beta, params.mu)?;
    let mut rng = seed.rng();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let u: f64 = Open01.sample(&mut rng);
        let v = std::f64::consts::PI * (u - 0.5);
        let e: f64 = Exp1.sample(&mut rng);
        let x = cms_transform(params.alpha, params.beta, v, e);
        let y = if (params.alpha - 1.0).abs() < 1e-12 {
            params.sigma * x
                + params.mu
                + 2.0 / std::f64::consts::PI * params.beta * params.sigma * params.sigma.ln()
        } else {
            params.sigma * x + params.mu
        };
        out.push(y);
    }
    Ok(out)
}

/// Normalizing sequence `a_n = (C n)^{1/alpha}`.
pub fn normalizing_a_n(law: &RVLaw, n: usize) -> Result<f64> {
    law.validate()?;
    let c = law.tail_constant()?;
    Ok((c * n as f64).powf(1.0 / law.index()))
}

/// Centering constant: 0 when `alpha < 1`, the mean when `alpha > 1`.
pub fn centering_mu(law: &RVLaw) -> Result<f64> {
    law.validate()?;
    let alpha = law.index();
    if (alpha - 1.0).abs() <= ALPHA_TOL {
        return Err(Error::AlphaOne);
    }
    if alpha < 1.0 {
        return Ok(0.0);
    }
    match *law {
        RVLaw::Pareto { alpha } => Ok(alpha / (alpha - 1.0)),
        RVLaw::TwoSidedPareto { alpha, p } => Ok((2.0 * p - 1.0) * alpha / (alpha - 1.0)),
        RVLaw::Frechet { alpha } => Ok(gamma(1.0 - 1.0 / alpha)),
        RVLaw::Burr { a, b } => burr_mean(a, b),
        RVLaw::Stable(s) => Ok(s.mu),
    }
}

/// Mean of the Burr(a,b) law by adaptive quadrature of the quantile
/// function, relative tolerance 1e-8. Requires `a b > 1`.
pub fn burr_mean(a: f64, b: f64) -> Result<f64> {
    if a * b <= 1.0 {
        return Err(Error::InvalidParams(format!(
            "Burr mean requires a*b > 1 (got {})",
            a * b
        )));
    }
    // E X = int_0^1 (v^{-1/a} - 1)^{1/b} dv; the integrand behaves like
    // v^{-1/(ab)} near 0, so split off [0, v0] and bound it by the power
    // envelope, then refine adaptively on [v0, 1].
    let f = |v: f64| (v.powf(-1.0 / a) - 1.0).powf(1.0 / b);
    let v0 = 1e-13f64;
    let head = v0.powf(1.0 - 1.0 / (a * b)) / (1.0 - 1.0 / (a * b));
    let body = adaptive_simpson(&f, v0, 1.0, 1e-10, 60);
    Ok(head + body)
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        ((b - a) / 6.0 * (fa + 4.0 * fm + fb), m, fm)
    }
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        m: f64,
        fm: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (left, lm, flm) = simpson(f, a, fa, m, fm);
        let (right, rm, frm) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, fa, m, fm, left, lm, flm, tol / 2.0, depth - 1)
                + recurse(f, m, fm, b, fb, right, rm, frm, tol / 2.0, depth - 1)
        }
    }
    let fa = f(a);
    let fb = f(b);
    let (whole, m, fm) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, whole, m, fm, tol, depth)
}

/// Hill estimator of the tail index: reciprocal mean log-excess of the `k`
/// largest points over the next order statistic.
pub fn hill_estimator(samples: &[f64], k: usize) -> Result<f64> {
    if k == 0 || k >= samples.len() {
        return Err(Error::InsufficientData(format!(
            "hill estimator needs 0 < k < sample size (k = {k}, size = {})",
            samples.len()
        )));
    }
    let mut sorted: Vec<f64> = samples.to_vec();
    sorted.sort_unstable_by(|a, b| b.partial_cmp(a).unwrap());
    let threshold = sorted[k];
    if threshold <= 0.0 {
        return Err(Error::InsufficientData(
            "hill estimator needs positive order statistics".into(),
        ));
    }
    let sum_log: f64 = sorted[..k].iter().map(|x| (x / threshold).ln()).sum();
    if sum_log <= 0.0 {
        return Err(Error::InsufficientData(
            "degenerate sample: zero mean log-excess".into(),
        ));
    }
    Ok(k as f64 / sum_log)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn mean(v: &[f64]) -> f64 {
        v.iter().sum::<f64>() / v.len() as f64
    }

    fn variance(v: &[f64]) -> f64 {
        let m = mean(v);
        v.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (v.len() - 1) as f64
    }

    /// One-sample KS statistic against a CDF.
    fn ks_statistic(sorted: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
        let n = sorted.len() as f64;
        sorted
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let f = cdf(x);
                (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn pareto_quantile_arithmetic() {
        assert_eq!(pareto_quantile(0.5, 0.5), 4.0);
    }

    #[test]
    fn frechet_lower_endpoint() {
        // Quantiles approach 0+ at the lower endpoint of the law (slowly:
        // the rate is (-ln u)^{-1/alpha}).
        let mut last = f64::INFINITY;
        for u in [1e-2, 1e-4, 1e-8, 1e-100, 1e-300] {
            let x = frechet_quantile(1.5, u);
            assert!(x > 0.0 && x < last);
            last = x;
        }
        assert!(last < 0.02);
    }

    #[test]
    fn pareto_sample_mean_matches_closed_form() {
        let law = RVLaw::Pareto { alpha: 3.0 };
        let xs = sample(&law, SeedSpec::new(1, 0), 1_000_000).unwrap();
        assert!((mean(&xs) - 1.5).abs() < 0.01, "mean {}", mean(&xs));
    }

    #[test]
    fn stable_alpha_two_is_gaussian_with_variance_two_sigma_sq() {
        let p = StableParams::new(2.0, 1.0 / 2.0f64.sqrt(), 0.0, 0.0).unwrap();
        let mut xs = sample_stable_cms(&p, SeedSpec::new(2, 0), 100_000).unwrap();
        assert!((variance(&xs) - 1.0).abs() < 0.02, "variance {}", variance(&xs));
        assert!(mean(&xs).abs() < 0.01, "mean {}", mean(&xs));
        // KS against the unit normal distribution function.
        xs.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
        let d = ks_statistic(&xs, |x| {
            0.5 * statrs::function::erf::erfc(-x / 2.0f64.sqrt())
        });
        assert!(d < 0.01, "KS D = {d}");
    }

    #[test]
    fn stable_alpha_one_is_cauchy() {
        let p = StableParams::new(1.0, 1.0, 0.0, 0.0).unwrap();
        let mut xs = sample_stable_cms(&p, SeedSpec::new(4, 0), 100_000).unwrap();
        xs.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
        let d = ks_statistic(&xs, |x| 0.5 + x.atan() / std::f64::consts::PI);
        assert!(d < 0.01, "KS D = {d}");
    }

    #[test]
    fn cms_beta_negation_mirrors_output() {
        for (v, e) in [(0.3, 1.2), (-0.7, 0.4), (1.1, 2.5), (-1.4, 0.9)] {
            for alpha in [0.5, 0.8, 1.5, 1.9] {
                let plus = cms_transform(alpha, 0.7, v, e);
                let minus = cms_transform(alpha, -0.7, -v, e);
                assert_relative_eq!(plus, -minus, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn cms_levy_half_matches_closed_form_cdf() {
        // S_{1/2}(sigma, 1, 0) is the Levy law with distribution function
        // erfc(sqrt(sigma / (2x))) on x > 0.
        let p = StableParams::new(0.5, 1.0, 1.0, 0.0).unwrap();
        let mut xs = sample_stable_cms(&p, SeedSpec::new(3, 0), 100_000).unwrap();
        xs.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
        assert!(xs[0] > 0.0, "Levy draws must be positive");
        let d = ks_statistic(&xs, |x| statrs::function::erf::erfc((1.0 / (2.0 * x)).sqrt()));
        assert!(d < 0.01, "KS D = {d}");
    }

    #[test]
    fn normalizing_sequence_values() {
        let law = RVLaw::Pareto { alpha: 0.5 };
        assert_relative_eq!(normalizing_a_n(&law, 400).unwrap(), 160000.0, max_relative = 1e-12);
        let law = RVLaw::Pareto { alpha: 1.5 };
        assert_relative_eq!(normalizing_a_n(&law, 400).unwrap(), 400f64.powf(2.0 / 3.0), max_relative = 1e-12);
        for alpha in [0.3, 0.5, 1.2, 1.9] {
            assert_relative_eq!(normalizing_a_n(&RVLaw::Pareto { alpha }, 1).unwrap(), 1.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn centering_values() {
        assert_relative_eq!(
            centering_mu(&RVLaw::Pareto { alpha: 1.5 }).unwrap(),
            3.0,
            max_relative = 1e-12
        );
        for law in [
            RVLaw::Pareto { alpha: 0.5 },
            RVLaw::Frechet { alpha: 0.5 },
            RVLaw::TwoSidedPareto { alpha: 0.5, p: 0.3 },
            RVLaw::Burr { a: 1.0, b: 0.5 },
        ] {
            assert_eq!(centering_mu(&law).unwrap(), 0.0);
        }
        assert!(matches!(centering_mu(&RVLaw::Pareto { alpha: 1.0 }), Err(Error::AlphaOne)));
    }

    #[test]
    fn burr_mean_matches_beta_identity() {
        // Gamma(a - 1/b) Gamma(1 + 1/b) / Gamma(a)
        let exact = |a: f64, b: f64| gamma(a - 1.0 / b) * gamma(1.0 + 1.0 / b) / gamma(a);
        assert_relative_eq!(burr_mean(3.0, 1.0).unwrap(), 0.5, max_relative = 1e-7);
        assert_relative_eq!(burr_mean(2.0, 1.0).unwrap(), exact(2.0, 1.0), max_relative = 1e-7);
        assert_relative_eq!(burr_mean(3.0, 0.5).unwrap(), exact(3.0, 0.5), max_relative = 1e-7);
    }

    #[test]
    fn hill_on_exact_quantile_grid() {
        let alpha = 1.7;
        let n = 10_000;
        let xs: Vec<f64> = (1..=n)
            .map(|i| pareto_quantile(alpha, (i as f64 - 0.5) / n as f64))
            .collect();
        for k in [100usize, 1000] {
            let est = hill_estimator(&xs, k).unwrap();
            let budget = alpha * 2.0 * (k as f64).ln() / k as f64;
            assert!((est - alpha).abs() <= budget, "k={k}: {est} vs {alpha}");
        }
    }

    #[test]
    fn hill_recovers_pareto_index_majority_of_seeds() {
        let law = RVLaw::Pareto { alpha: 1.5 };
        let mut hits = 0;
        for s in 0..3u64 {
            let xs = sample(&law, SeedSpec::new(40 + s, 0), 10_000).unwrap();
            let est = hill_estimator(&xs, 500).unwrap();
            if (1.35..=1.65).contains(&est) {
                hits += 1;
            }
        }
        assert!(hits >= 2, "only {hits}/3 seeds recovered alpha");
    }

    #[test]
    fn hill_rejects_degenerate_input() {
        let xs = vec![2.0; 100];
        assert!(matches!(hill_estimator(&xs, 10), Err(Error::InsufficientData(_))));
        assert!(matches!(hill_estimator(&xs, 0), Err(Error::InsufficientData(_))));
        assert!(matches!(hill_estimator(&[1.0], 1), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let law = RVLaw::TwoSidedPareto { alpha: 1.2, p: 0.4 };
        let a = sample(&law, SeedSpec::new(7, 3), 64).unwrap();
        let b = sample(&law, SeedSpec::new(7, 3), 64).unwrap();
        assert_eq!(a, b);
        let c = sample(&law, SeedSpec::new(7, 4), 64).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn probability_integral_transform_is_ks_uniform() {
        let n = 10_000;
        let band = 1.358 * (2.0 / n as f64).sqrt();
        for law in [
            RVLaw::Pareto { alpha: 0.7 },
            RVLaw::TwoSidedPareto { alpha: 1.5, p: 0.5 },
            RVLaw::Frechet { alpha: 1.5 },
            RVLaw::Burr { a: 3.0, b: 0.5 },
        ] {
            let mut hits = 0;
            for s in 0..3u64 {
                let xs = sample(&law, SeedSpec::new(50 + s, 1), n).unwrap();
                let mut u: Vec<f64> = xs.iter().map(|&x| law.cdf(x).unwrap()).collect();
                u.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
                if ks_statistic(&u, |x| x.clamp(0.0, 1.0)) < band {
                    hits += 1;
                }
            }
            assert!(hits >= 2, "{law:?}: PIT failed on {}/3 seeds", 3 - hits);
        }
    }

    #[test]
    fn tail_counts_match_regular_variation_limit() {
        // n P(xi > a_n eps) -> p eps^{-alpha} with a_n = (C n)^{1/alpha}.
        let n = 100_000;
        let eps = 0.5;
        for law in [
            RVLaw::Pareto { alpha: 1.5 },
            RVLaw::TwoSidedPareto { alpha: 1.5, p: 0.5 },
            RVLaw::Frechet { alpha: 0.8 },
            RVLaw::Burr { a: 3.0, b: 0.5 },
            RVLaw::Stable(StableParams::new(1.5, 1.0, 0.0, 0.0).unwrap()),
        ] {
            let alpha = law.index();
            let a_n = normalizing_a_n(&law, n).unwrap();
            let xs = sample(&law, SeedSpec::new(60, 2), n).unwrap();
            let count = xs.iter().filter(|&&x| x > a_n * eps).count() as f64;
            let target = law.tail_fraction() * eps.powf(-alpha);
            let se = target.sqrt().max(1.0);
            assert!(
                (count - target).abs() <= 3.0 * se,
                "{law:?}: count {count} vs target {target}"
            );
        }
    }

    #[test]
    fn construction_gate_rejects_boundary_and_one() {
        assert!(RVLaw::Pareto { alpha: 1.0 }.validate_for_construction().is_err());
        assert!(RVLaw::Pareto { alpha: 2.0 }.validate_for_construction().is_err());
        assert!(RVLaw::Pareto { alpha: 1e-12 }.validate_for_construction().is_err());
        assert!(RVLaw::Burr { a: 3.0, b: 1.0 }.validate_for_construction().is_err());
        assert!(RVLaw::Pareto { alpha: 1.5 }.validate_for_construction().is_ok());
    }

    #[test]
    fn invalid_parameters_are_rejected_at_sampling() {
        assert!(sample(&RVLaw::Pareto { alpha: -1.0 }, SeedSpec::new(70, 0), 4).is_err());
        assert!(sample(&RVLaw::TwoSidedPareto { alpha: 1.5, p: 1.5 }, SeedSpec::new(70, 0), 4).is_err());
        assert!(sample(&RVLaw::Burr { a: 0.0, b: 1.0 }, SeedSpec::new(70, 0), 4).is_err());
        assert!(StableParams::new(2.5, 1.0, 0.0, 0.0).is_err());
        assert!(StableParams::new(1.5, -1.0, 0.0, 0.0).is_err());
        assert!(StableParams::new(1.5, 1.0, 2.0, 0.0).is_err());
    }

    #[test]
    fn law_json_round_trip() {
        let law = RVLaw::TwoSidedPareto { alpha: 1.5, p: 0.25 };
        let text = serde_json::to_string(&law).unwrap();
        let back: RVLaw = serde_json::from_str(&text).unwrap();
        assert_eq!(law, back);
    }
}

//! Skorokhod-type distances and moduli for grid paths.
//!
//! The J1 infimum over all continuous time changes is not finitely
//! computable; the matcher here minimizes over piecewise-linear bijections
//! whose knots are grid-node pairs and whose segments advance by one cell in
//! one coordinate and `d >= 1` cells in the other (integer or reciprocal
//! integer slopes). The result is an upper bound on the true infimum and is
//! exact for jump matching on co-resolved grids; distances to the zero path
//! equal the sup norm exactly.

use crate::error::Result;
use crate::grid::{co_resolve, GridPath, PathOfPaths};

/// Time-deformation penalty used by the matcher.
#[derive(Debug, Clone, Copy, PartialEq)]
enum TimeCost {
    /// `sup |lambda - e|` over the horizon (attained at knots).
    Deviation { horizon: f64 },
    /// `||lambda||^0`: max |log slope| over segments.
    LogSlope,
}

/// Minimax matcher over monotone knot paths on the (m+1) x (m+1) lattice.
///
/// `cell_cost(a, b)` is the mismatch of x-cell `a` against y-cell `b`
/// (cells run over `0..m`); `endpoint_cost` compares the right endpoints.
fn matcher_distance<F>(m: usize, cell_cost: F, endpoint_cost: f64, time_cost: TimeCost) -> f64
where
    F: Fn(usize, usize) -> f64,
{
    let knot_dev = |i: usize, j: usize| -> f64 {
        match time_cost {
            TimeCost::Deviation { horizon } => {
                (i as f64 - j as f64).abs() / m as f64 * horizon
            }
            TimeCost::LogSlope => 0.0,
        }
    };
    let slope_cost = |d: usize| -> f64 {
        match time_cost {
            TimeCost::Deviation { .. } => 0.0,
            TimeCost::LogSlope => (d as f64).ln(),
        }
    };

    let size = m + 1;
    let mut dp = vec![f64::INFINITY; size * size];
    dp[0] = 0.0;
    for i in 0..size {
        for j in 0..size {
            let cur = dp[i * size + j];
            if !cur.is_finite() || (i == m && j == m) {
                continue;
            }
            // Vertical-ish segments (1, d): x-cell i against y-cells j..j+d.
            if i < m {
                let mut seg = f64::NEG_INFINITY;
                for d in 1..=(m - j) {
                    seg = seg.max(cell_cost(i, j + d - 1));
                    let cand = cur
                        .max(seg)
                        .max(slope_cost(d))
                        .max(knot_dev(i + 1, j + d));
                    let slot = &mut dp[(i + 1) * size + (j + d)];
                    if cand < *slot {
                        *slot = cand;
                    }
                }
            }
            // Horizontal-ish segments (d, 1): x-cells i..i+d against y-cell j.
            if j < m {
                let mut seg = f64::NEG_INFINITY;
                for d in 1..=(m - i) {
                    seg = seg.max(cell_cost(i + d - 1, j));
                    let cand = cur
                        .max(seg)
                        .max(slope_cost(d))
                        .max(knot_dev(i + d, j + 1));
                    let slot = &mut dp[(i + d) * size + (j + 1)];
                    if cand < *slot {
                        *slot = cand;
                    }
                }
            }
        }
    }
    dp[m * size + m].max(endpoint_cost)
}

/// J1 distance with uniform time-change penalty `sup |lambda - e|`.
pub fn d_j1(x: &GridPath, y: &GridPath) -> Result<f64> {
    let (x, y) = co_resolve(x, y)?;
    let m = x.resolution();
    Ok(matcher_distance(
        m,
        |a, b| (x.value(a) - y.value(b)).abs(),
        (x.value(m) - y.value(m)).abs(),
        TimeCost::Deviation { horizon: 1.0 },
    ))
}

/// J1 distance with log-slope penalty `||lambda||^0` (the complete metric).
pub fn d_j1_0(x: &GridPath, y: &GridPath) -> Result<f64> {
    let (x, y) = co_resolve(x, y)?;
    let m = x.resolution();
    Ok(matcher_distance(
        m,
        |a, b| (x.value(a) - y.value(b)).abs(),
        (x.value(m) - y.value(m)).abs(),
        TimeCost::LogSlope,
    ))
}

/// Modulus `w''(x, delta)`: max over grid triples `s1 <= s <= s2` with
/// `s2 - s1 <= delta` of `|x(s)-x(s1)| /\ |x(s2)-x(s)|`.
pub fn w_second(x: &GridPath, delta: f64) -> f64 {
    let m = x.resolution();
    let window = grid_window(m, delta);
    let v = x.values();
    let mut best = 0.0f64;
    for l1 in 0..=m {
        for l2 in l1..=(l1 + window).min(m) {
            for l in l1..=l2 {
                let a = (v[l] - v[l1]).abs();
                let b = (v[l2] - v[l]).abs();
                best = best.max(a.min(b));
            }
        }
    }
    best
}

/// Largest number of grid cells spanning at most `delta`.
fn grid_window(m: usize, delta: f64) -> usize {
    ((delta * m as f64) * (1.0 + 1e-12)).floor() as usize
}

fn co_resolve_pp(x: &PathOfPaths, y: &PathOfPaths) -> Result<(PathOfPaths, PathOfPaths)> {
    let mut xs = x.entries().to_vec();
    let mut ys = y.entries().to_vec();
    let ms = crate::grid::lcm(x.space_resolution(), y.space_resolution());
    if ms != x.space_resolution() || ms != y.space_resolution() {
        xs = xs.iter().map(|e| e.resample(ms)).collect::<Result<_>>()?;
        ys = ys.iter().map(|e| e.resample(ms)).collect::<Result<_>>()?;
    }
    let n = crate::grid::lcm(x.time_resolution(), y.time_resolution());
    let expand = |entries: Vec<GridPath>, old_n: usize| -> Vec<GridPath> {
        (0..=n).map(|k| entries[(k * old_n) / n].clone()).collect()
    };
    let xn = x.time_resolution();
    let yn = y.time_resolution();
    Ok((
        PathOfPaths::new(expand(xs, xn))?,
        PathOfPaths::new(expand(ys, yn))?,
    ))
}

/// Uniform distance on paths of paths: `sup_t d_J1^0(x(t), y(t))`.
pub fn rho_d(x: &PathOfPaths, y: &PathOfPaths) -> Result<f64> {
    let (x, y) = co_resolve_pp(x, y)?;
    let mut best = 0.0f64;
    for (a, b) in x.entries().iter().zip(y.entries()) {
        best = best.max(d_j1_0(a, b)?);
    }
    Ok(best)
}

/// Skorokhod distance on paths of paths over a horizon `T`:
/// matcher over time-grid changes of `max(sup |lambda - e|, rho_D(x, y o lambda))`.
pub fn d_big_d(x: &PathOfPaths, y: &PathOfPaths, horizon: f64) -> Result<f64> {
    let (x, y) = co_resolve_pp(x, y)?;
    let n = x.time_resolution();
    let costs = slice_cost_matrix(&x, &y)?;
    Ok(matcher_distance(
        n,
        |a, b| costs[a * (n + 1) + b],
        costs[n * (n + 1) + n],
        TimeCost::Deviation { horizon },
    ))
}

fn slice_cost_matrix(x: &PathOfPaths, y: &PathOfPaths) -> Result<Vec<f64>> {
    let n = x.time_resolution();
    let mut costs = vec![0.0; (n + 1) * (n + 1)];
    for a in 0..=n {
        for b in 0..=n {
            costs[a * (n + 1) + b] = d_j1_0(x.entry(a), y.entry(b))?;
        }
    }
    Ok(costs)
}

/// Result of the whole-half-line distance: truncated quadrature value plus
/// the analytic bound on the discarded tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DInfty {
    pub value: f64,
    pub tail_bound: f64,
}

/// Distance on cadlag maps of `[0, T_max]` into the path space:
/// trapezoid quadrature of `exp(-t) (d_{t,D}(r_t x, r_t y) /\ 1)` on the time
/// grid, truncated at `T_max`; the integrand is bounded by 1 so the discarded
/// tail is at most `exp(-T_max)`, reported separately.
pub fn d_infty(x: &PathOfPaths, y: &PathOfPaths, t_max: f64) -> Result<DInfty> {
    let (x, y) = co_resolve_pp(x, y)?;
    let n = x.time_resolution();
    let costs = slice_cost_matrix(&x, &y)?;
    let mut integrand = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let t_k = t_max * k as f64 / n as f64;
        let d = if k == 0 {
            costs[0]
        } else {
            matcher_distance(
                k,
                |a, b| costs[a * (n + 1) + b],
                costs[k * (n + 1) + k],
                TimeCost::Deviation { horizon: t_k },
            )
        };
        integrand.push((-t_k).exp() * d.min(1.0));
    }
    let h = t_max / n as f64;
    let mut value = 0.0;
    for k in 1..=n {
        value += 0.5 * (integrand[k - 1] + integrand[k]) * h;
    }
    Ok(DInfty { value, tail_bound: (-t_max).exp() })
}

/// Modulus `w''_D(x, delta)` on paths of paths, with `d_J1^0` in place of the
/// absolute difference.
pub fn w_second_big_d(x: &PathOfPaths, delta: f64) -> Result<f64> {
    let n = x.time_resolution();
    let window = grid_window(n, delta);
    // Pairwise slice distances within the window, reused across triples.
    let mut dist = vec![0.0f64; (n + 1) * (n + 1)];
    for k1 in 0..=n {
        for k2 in (k1 + 1)..=(k1 + window).min(n) {
            let d = d_j1_0(x.entry(k1), x.entry(k2))?;
            dist[k1 * (n + 1) + k2] = d;
            dist[k2 * (n + 1) + k1] = d;
        }
    }
    let mut best = 0.0f64;
    for k1 in 0..=n {
        for k2 in k1..=(k1 + window).min(n) {
            for k in k1..=k2 {
                let a = dist[k * (n + 1) + k1];
                let b = dist[k2 * (n + 1) + k];
                best = best.max(a.min(b));
            }
        }
    }
    Ok(best)
}

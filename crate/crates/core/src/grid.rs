//! Grid-based cadlag step paths on [0,1] and paths of paths.
//!
//! A [`GridPath`] holds `m + 1` values on the uniform grid `l/m`; the path is
//! right-continuous and constant on each cell `[l/m, (l+1)/m)`, with
//! `x(1) = values[m]`. Every construction in this crate produces jumps at
//! sample points, so the grid representation is lossless for simulated
//! objects. All types are immutable after construction and all operations
//! are pure.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A cadlag step function on [0,1] sampled on the uniform grid of size `m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridPath {
    resolution: usize,
    values: Vec<f64>,
}

impl GridPath {
    /// Build from `m + 1` finite values; `values[l] = x(l/m)`.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidParams(
                "a grid path needs at least resolution 1 (two values)".into(),
            ));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams("grid path values must be finite".into()));
        }
        Ok(GridPath { resolution: values.len() - 1, values })
    }

    /// Path identically equal to `v`.
    pub fn constant(resolution: usize, v: f64) -> Self {
        GridPath { resolution, values: vec![v; resolution + 1] }
    }

    pub fn zero(resolution: usize) -> Self {
        Self::constant(resolution, 0.0)
    }

    /// Indicator of `[l0/m, 1]`.
    pub fn step_indicator(resolution: usize, l0: usize) -> Self {
        let values = (0..=resolution).map(|l| if l >= l0 { 1.0 } else { 0.0 }).collect();
        GridPath { resolution, values }
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Value at grid index `l` (i.e. x(l/m)).
    pub fn value(&self, l: usize) -> f64 {
        self.values[l]
    }

    /// Pointwise evaluation at arbitrary `s` in [0,1], right-continuous.
    pub fn eval(&self, s: f64) -> f64 {
        if s >= 1.0 {
            return self.values[self.resolution];
        }
        let l = (s.max(0.0) * self.resolution as f64).floor() as usize;
        self.values[l.min(self.resolution)]
    }

    /// Left limit at grid index `l >= 1`: equals `values[l-1]`.
    pub fn left_limit(&self, l: usize) -> f64 {
        self.values[l - 1]
    }

    /// `sup |x(s)|`, attained on the grid.
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
    }

    /// Polar decomposition `x = r * z` with `r = ||x||` and `||z|| = 1`.
    ///
    /// The maximizing entry divides to exactly +-1, so the sup norm of `z`
    /// is exactly 1.0.
    pub fn polar(&self) -> Result<(f64, GridPath)> {
        let r = self.sup_norm();
        if r == 0.0 {
            return Err(Error::ZeroPath);
        }
        let z = GridPath {
            resolution: self.resolution,
            values: self.values.iter().map(|v| v / r).collect(),
        };
        Ok((r, z))
    }

    /// Right-continuous step extension to a multiple resolution.
    ///
    /// `target` must be a multiple of the current resolution; cell values are
    /// copied, so the function is unchanged pointwise.
    pub fn resample(&self, target: usize) -> Result<GridPath> {
        if target % self.resolution != 0 {
            return Err(Error::InvalidParams(format!(
                "resample target {} is not a multiple of resolution {}",
                target, self.resolution
            )));
        }
        let values = (0..=target)
            .map(|l| self.values[(l * self.resolution) / target])
            .collect();
        Ok(GridPath { resolution: target, values })
    }

    /// Grid indices where the path jumps (value differs from the left limit).
    pub fn jump_indices(&self) -> Vec<usize> {
        (1..=self.resolution).filter(|&l| self.values[l] != self.values[l - 1]).collect()
    }

    pub fn scale(&self, a: f64) -> GridPath {
        GridPath {
            resolution: self.resolution,
            values: self.values.iter().map(|v| a * v).collect(),
        }
    }

    pub fn add(&self, other: &GridPath) -> GridPath {
        assert_eq!(self.resolution, other.resolution, "resolution mismatch in path addition");
        GridPath {
            resolution: self.resolution,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &GridPath) -> GridPath {
        assert_eq!(self.resolution, other.resolution, "resolution mismatch in path subtraction");
        GridPath {
            resolution: self.resolution,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Least common multiple of two grid resolutions.
pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Bring two paths to a common grid by right-continuous step extension.
pub fn co_resolve(x: &GridPath, y: &GridPath) -> Result<(GridPath, GridPath)> {
    if x.resolution == y.resolution {
        return Ok((x.clone(), y.clone()));
    }
    let m = lcm(x.resolution, y.resolution);
    Ok((x.resample(m)?, y.resample(m)?))
}

/// A strictly increasing piecewise-linear time change of [0,1].
///
/// Stored as knot pairs `(i, j)` on the resolution-`m` grid: the map sends
/// `i/m` to `j/m` and is linear between consecutive knots. Both coordinate
/// sequences are strictly increasing with endpoints `(0,0)` and `(m,m)`, so
/// every segment has a positive slope.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TimeChange {
    resolution: usize,
    knots: Vec<(usize, usize)>,
}

impl TimeChange {
    pub fn new(resolution: usize, knots: Vec<(usize, usize)>) -> Result<Self> {
        if knots.first() != Some(&(0, 0)) || knots.last() != Some(&(resolution, resolution)) {
            return Err(Error::InvalidParams(
                "time change knots must start at (0,0) and end at (m,m)".into(),
            ));
        }
        for w in knots.windows(2) {
            if w[1].0 <= w[0].0 || w[1].1 <= w[0].1 {
                return Err(Error::InvalidParams(
                    "time change knots must be strictly increasing in both coordinates".into(),
                ));
            }
        }
        Ok(TimeChange { resolution, knots })
    }

    pub fn identity(resolution: usize) -> Self {
        TimeChange { resolution, knots: vec![(0, 0), (resolution, resolution)] }
    }

    /// Draw a random time change: a uniform knot count, then uniformly chosen
    /// strictly increasing interior knot coordinates in each axis.
    pub fn sample(resolution: usize, seed: crate::seed::SeedSpec) -> Self {
        use rand::Rng;
        let mut rng = seed.rng();
        let interior = resolution.saturating_sub(1);
        let k = rng.gen_range(0..=interior.min(resolution / 2 + 1));
        let pick = |rng: &mut rand_chacha::ChaCha8Rng| {
            let mut idx = rand::seq::index::sample(rng, interior, k).into_vec();
            idx.sort_unstable();
            idx.into_iter().map(|v| v + 1).collect::<Vec<_>>()
        };
        let is = pick(&mut rng);
        let js = pick(&mut rng);
        let mut knots = vec![(0, 0)];
        knots.extend(is.into_iter().zip(js));
        knots.push((resolution, resolution));
        TimeChange { resolution, knots }
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn knots(&self) -> &[(usize, usize)] {
        &self.knots
    }

    /// Evaluate the piecewise-linear map at `s`.
    pub fn eval(&self, s: f64) -> f64 {
        let m = self.resolution as f64;
        let u = s.clamp(0.0, 1.0) * m;
        for w in self.knots.windows(2) {
            let (i0, j0) = (w[0].0 as f64, w[0].1 as f64);
            let (i1, j1) = (w[1].0 as f64, w[1].1 as f64);
            if u <= i1 {
                return (j0 + (u - i0) * (j1 - j0) / (i1 - i0)) / m;
            }
        }
        1.0
    }

    /// `sup |lambda(s) - s|`; attained at knots for a piecewise-linear map.
    pub fn sup_deviation(&self) -> f64 {
        let m = self.resolution as f64;
        self.knots
            .iter()
            .fold(0.0f64, |acc, &(i, j)| acc.max((i as f64 - j as f64).abs() / m))
    }

    /// `||lambda||^0`: the maximum over linear segments of |log slope|.
    pub fn log_norm(&self) -> f64 {
        self.knots
            .windows(2)
            .fold(0.0f64, |acc, w| {
                let slope = (w[1].1 - w[0].1) as f64 / (w[1].0 - w[0].0) as f64;
                acc.max(slope.ln().abs())
            })
    }
}

/// A cadlag-in-time step function on [0,1] with values in the path space:
/// `n + 1` grid paths sharing one space resolution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathOfPaths {
    time_resolution: usize,
    space_resolution: usize,
    entries: Vec<GridPath>,
}

impl PathOfPaths {
    pub fn new(entries: Vec<GridPath>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::InvalidParams(
                "a path of paths needs at least time resolution 1".into(),
            ));
        }
        let m = entries[0].resolution();
        if entries.iter().any(|e| e.resolution() != m) {
            return Err(Error::InvalidParams(
                "all entries must share one space resolution".into(),
            ));
        }
        Ok(PathOfPaths { time_resolution: entries.len() - 1, space_resolution: m, entries })
    }

    pub fn constant(time_resolution: usize, path: GridPath) -> Self {
        let entries = vec![path; time_resolution + 1];
        PathOfPaths {
            time_resolution,
            space_resolution: entries[0].resolution(),
            entries,
        }
    }

    pub fn zero(time_resolution: usize, space_resolution: usize) -> Self {
        Self::constant(time_resolution, GridPath::zero(space_resolution))
    }

    pub fn time_resolution(&self) -> usize {
        self.time_resolution
    }

    pub fn space_resolution(&self) -> usize {
        self.space_resolution
    }

    pub fn entries(&self) -> &[GridPath] {
        &self.entries
    }

    /// Path at time grid index `k` (i.e. x(k/n)).
    pub fn entry(&self, k: usize) -> &GridPath {
        &self.entries[k]
    }

    /// Super-uniform norm: `max_k ||x(t_k)||`.
    pub fn super_norm(&self) -> f64 {
        self.entries.iter().fold(0.0f64, |acc, e| acc.max(e.sup_norm()))
    }

    pub fn add(&self, other: &PathOfPaths) -> PathOfPaths {
        assert_eq!(self.time_resolution, other.time_resolution);
        PathOfPaths {
            time_resolution: self.time_resolution,
            space_resolution: self.space_resolution,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &PathOfPaths) -> PathOfPaths {
        assert_eq!(self.time_resolution, other.time_resolution);
        PathOfPaths {
            time_resolution: self.time_resolution,
            space_resolution: self.space_resolution,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    /// Restriction to the first `k` time cells (entries 0..=k).
    pub fn restrict(&self, k: usize) -> PathOfPaths {
        assert!(k >= 1 && k <= self.time_resolution);
        PathOfPaths {
            time_resolution: k,
            space_resolution: self.space_resolution,
            entries: self.entries[..=k].to_vec(),
        }
    }
}

//! Noisy pseudoranges, grid search over a plane, and Monte-Carlo error
//! statistics.
//!
//! The cost of a candidate position `p` is the spread of the residuals
//! `r_i = |s_i - p| - t_i` around their mean; the mean absorbs the unknown bias.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constraints::AffineConstraint;
use crate::error::{Error, Result};
use crate::numerics::Vector;

pub const DEFAULT_RESOLUTION: usize = 401;
pub const DEFAULT_HALF_WIDTH: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseModel {
    pub sigma: f64,
    pub seed: u64,
}

/// Rectangular grid `lower..=upper` in the coordinates of a plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchRegion {
    pub constraint: AffineConstraint,
    pub lower: [f64; 2],
    pub upper: [f64; 2],
    pub resolution: [usize; 2],
}

impl SearchRegion {
    /// The square `center +- half_width` (plane coordinates of `center`).
    pub fn around(
        constraint: AffineConstraint,
        center: &Vector,
        half_width: f64,
        resolution: usize,
    ) -> Self {
        let d = center - &constraint.base;
        let c: Vec<f64> = constraint.basis.iter().map(|b| b.dot(&d)).collect();
        Self {
            lower: [c[0] - half_width, c[1] - half_width],
            upper: [c[0] + half_width, c[1] + half_width],
            resolution: [resolution, resolution],
            constraint,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.constraint.validate_basis()?;
        if self.constraint.dim() != 2 {
            return Err(Error::InvalidRegion(format!(
                "search plane must be 2-dimensional, got {}",
                self.constraint.dim()
            )));
        }
        for i in 0..2 {
            if self.lower[i].partial_cmp(&self.upper[i]) != Some(std::cmp::Ordering::Less) {
                return Err(Error::InvalidRegion(format!(
                    "lower[{i}] must be below upper[{i}]"
                )));
            }
            if self.resolution[i] < 2 {
                return Err(Error::InvalidRegion(format!(
                    "resolution[{i}] must be at least 2"
                )));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.resolution[0] * self.resolution[1]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Plane coordinates of grid node `idx` (row-major, the first coordinate
    /// varying fastest).
    pub fn coords(&self, idx: usize) -> [f64; 2] {
        let (ix, iy) = (idx % self.resolution[0], idx / self.resolution[0]);
        let step = |i: usize, k: usize| {
            self.lower[i]
                + (self.upper[i] - self.lower[i]) * k as f64 / (self.resolution[i] - 1) as f64
        };
        [step(0, ix), step(1, iy)]
    }

    pub fn point(&self, idx: usize) -> Vector {
        self.constraint.point(&self.coords(idx))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostSurface {
    pub region: SearchRegion,
    /// Row-major, as [`SearchRegion::coords`].
    pub values: Vec<f64>,
    pub argmin: usize,
    #[serde(with = "crate::serde_vec::vector")]
    pub argmin_point: Vector,
}

impl CostSurface {
    /// `x,y,E` rows, one per grid node.
    pub fn write_csv<W: std::io::Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "x,y,E")?;
        for (i, e) in self.values.iter().enumerate() {
            let [x, y] = self.region.coords(i);
            writeln!(out, "{x:.17e},{y:.17e},{e:.17e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorStats {
    pub trials: usize,
    pub mean_error: f64,
    pub std_error: f64,
}

/// `t_i = |s_i - x| + b + noise`.
pub fn synthesize_pseudoranges(
    receivers: &[Vector],
    x_true: &Vector,
    b_true: f64,
    noise: &NoiseModel,
) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(noise.seed);
    synthesize_with(receivers, x_true, b_true, noise.sigma, &mut rng)
}

fn synthesize_with(
    receivers: &[Vector],
    x_true: &Vector,
    b_true: f64,
    sigma: f64,
    rng: &mut ChaCha8Rng,
) -> Vec<f64> {
    receivers
        .iter()
        .map(|s| {
            let eps: f64 = StandardNormal.sample(rng);
            (s - x_true).norm() + b_true + sigma * eps
        })
        .collect()
}

/// Flattened geometry for the inner loop.
struct Grid {
    receivers: Vec<Vec<f64>>,
    base: Vec<f64>,
    e1: Vec<f64>,
    e2: Vec<f64>,
}

impl Grid {
    fn new(receivers: &[Vector], region: &SearchRegion) -> Self {
        let c = &region.constraint;
        Self {
            receivers: receivers
                .iter()
                .map(|s| s.iter().copied().collect())
                .collect(),
            base: c.base.iter().copied().collect(),
            e1: c.basis[0].iter().copied().collect(),
            e2: c.basis[1].iter().copied().collect(),
        }
    }

    fn cost(&self, x: f64, y: f64, t: &[f64], p: &mut [f64], r: &mut [f64]) -> f64 {
        for (i, pi) in p.iter_mut().enumerate() {
            *pi = self.base[i] + x * self.e1[i] + y * self.e2[i];
        }
        let mut mean = 0.0;
        for (k, s) in self.receivers.iter().enumerate() {
            let d2: f64 = s.iter().zip(p.iter()).map(|(a, b)| (a - b) * (a - b)).sum();
            r[k] = d2.sqrt() - t[k];
            mean += r[k];
        }
        mean /= r.len() as f64;
        r.iter().map(|ri| (ri - mean) * (ri - mean)).sum()
    }
}

fn check_inputs(receivers: &[Vector], t: &[f64], region: &SearchRegion) -> Result<()> {
    region.validate()?;
    if receivers.is_empty() {
        return Err(Error::NoSatellites);
    }
    if t.len() != receivers.len() {
        return Err(Error::DimensionMismatch {
            what: "pseudoranges".into(),
            expected: receivers.len(),
            found: t.len(),
        });
    }
    let n = region.constraint.base.len();
    if let Some(s) = receivers.iter().find(|s| s.len() != n) {
        return Err(Error::DimensionMismatch {
            what: "receiver".into(),
            expected: n,
            found: s.len(),
        });
    }
    Ok(())
}

pub fn cost_surface(receivers: &[Vector], t: &[f64], region: &SearchRegion) -> Result<CostSurface> {
    check_inputs(receivers, t, region)?;
    let grid = Grid::new(receivers, region);
    let n = grid.base.len();
    let (mut p, mut r) = (vec![0.0; n], vec![0.0; t.len()]);
    let values: Vec<f64> = (0..region.len())
        .map(|i| {
            let [x, y] = region.coords(i);
            grid.cost(x, y, t, &mut p, &mut r)
        })
        .collect();
    let argmin = argmin(&values);
    Ok(CostSurface {
        argmin_point: region.point(argmin),
        region: region.clone(),
        values,
        argmin,
    })
}

/// Lowest index attaining the minimum.
fn argmin(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v < values[best] {
            best = i;
        }
    }
    best
}

pub fn grid_locate(surface: &CostSurface) -> Vector {
    surface.argmin_point.clone()
}

/// Grid minimum without materializing the surface.
fn locate(grid: &Grid, t: &[f64], region: &SearchRegion) -> usize {
    let (mut p, mut r) = (vec![0.0; grid.base.len()], vec![0.0; t.len()]);
    let mut best = (0, f64::INFINITY);
    for i in 0..region.len() {
        let [x, y] = region.coords(i);
        let e = grid.cost(x, y, t, &mut p, &mut r);
        if e < best.1 {
            best = (i, e);
        }
    }
    best.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialConfig {
    #[serde(with = "crate::serde_vec::vectors")]
    pub receivers: Vec<Vector>,
    #[serde(with = "crate::serde_vec::vector")]
    pub x_true: Vector,
    pub b_true: f64,
    pub noise: NoiseModel,
    pub region: SearchRegion,
}

/// Per-trial generator: the base seed with the trial index as stream, so the
/// outcome does not depend on how trials are scheduled.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// The noisy pseudoranges of one trial.
pub fn trial_pseudoranges(config: &TrialConfig, trial: usize) -> Vec<f64> {
    let mut rng = trial_rng(config.noise.seed, trial);
    synthesize_with(
        &config.receivers,
        &config.x_true,
        config.b_true,
        config.noise.sigma,
        &mut rng,
    )
}

/// Position errors of independent noisy trials (in position units).
pub fn trial_errors(config: &TrialConfig, n_trials: usize) -> Result<Vec<f64>> {
    if n_trials == 0 {
        return Err(Error::Input("at least one trial is required".into()));
    }
    if !config.noise.sigma.is_finite() || config.noise.sigma < 0.0 {
        return Err(Error::Input(format!(
            "invalid noise sigma {}",
            config.noise.sigma
        )));
    }
    check_inputs(
        &config.receivers,
        &vec![0.0; config.receivers.len()],
        &config.region,
    )?;
    let grid = Grid::new(&config.receivers, &config.region);
    Ok((0..n_trials)
        .into_par_iter()
        .map(|trial| {
            let t = trial_pseudoranges(config, trial);
            let idx = locate(&grid, &t, &config.region);
            (config.region.point(idx) - &config.x_true).norm()
        })
        .collect())
}

/// Mean and (population) standard deviation of the position error.
pub fn run_trials(config: &TrialConfig, n_trials: usize) -> Result<ErrorStats> {
    let errors = trial_errors(config, n_trials)?;
    let n = errors.len() as f64;
    let mean = errors.iter().sum::<f64>() / n;
    let var = errors.iter().map(|e| (e - mean) * (e - mean)).sum::<f64>() / n;
    Ok(ErrorStats {
        trials: errors.len(),
        mean_error: mean,
        std_error: var.sqrt(),
    })
}

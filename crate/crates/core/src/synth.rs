//! Synthetic sequences: Metropolis–Hastings samples of stationary densities
//! `exp(-V/T)` and a self-propelled particle swarm.
//!
//! Two potentials drive the bifurcation experiments:
//!
//! * `rvp`: `V = (x1^2 + x2^2)^2 / 2 + h (x1^2 + x2^2)`, a ring of radius
//!   `sqrt(-h)` for `h < 0` that collapses to a point at `h = 0`;
//! * `double_well`: `V = (x1^2 - h)^2 + x2^2`, two wells at `x1 = +-sqrt(h)`
//!   merging at `h = 0`.
//!
//! A harmonic potential `(x1^2 + x2^2) / 2` is included to validate the
//! sampler against an exact Gaussian.
//!
//! At the experiment temperatures a single random-walk chain cannot cross
//! between the modes of either potential, so samples come from an ensemble of
//! independent chains started uniformly in a box, each run past burn-in.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::point_data::{PointCloud, SequenceDataset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PotentialKind {
    Rvp,
    DoubleWell,
    /// Validation only: standard normal at `T = 1`.
    Harmonic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSpec {
    pub kind: PotentialKind,
    pub h: f64,
    pub temperature: f64,
}

impl PotentialSpec {
    pub fn new(kind: PotentialKind, h: f64, temperature: f64) -> Result<Self> {
        if !(temperature > 0.0 && temperature.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "temperature must be > 0, got {temperature}"
            )));
        }
        if !h.is_finite() {
            return Err(Error::InvalidParameter("h must be finite".into()));
        }
        Ok(Self {
            kind,
            h,
            temperature,
        })
    }

    pub fn energy(&self, x: [f64; 2]) -> f64 {
        let r2 = x[0] * x[0] + x[1] * x[1];
        match self.kind {
            PotentialKind::Rvp => 0.5 * r2 * r2 + self.h * r2,
            PotentialKind::DoubleWell => {
                let a = x[0] * x[0] - self.h;
                a * a + x[1] * x[1]
            }
            PotentialKind::Harmonic => 0.5 * r2,
        }
    }
}

/// Sampler tuning.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default)]
pub struct McmcConfig {
    pub burn_in: usize,
    /// Steps between retained samples of one chain.
    pub thin: usize,
    /// Proposal standard deviation; `None` means `step_factor * sqrt(T)`.
    pub step_scale: Option<f64>,
    pub step_factor: f64,
    /// Independent chains; `None` means one chain per sample.
    pub chains: Option<usize>,
    /// Chains start uniformly in `[-w, w]^2`.
    pub init_half_width: f64,
}

impl Default for McmcConfig {
    fn default() -> Self {
        Self {
            burn_in: 5000,
            thin: 10,
            step_scale: None,
            step_factor: 1.0,
            chains: None,
            init_half_width: 2.0,
        }
    }
}

impl McmcConfig {
    pub fn step_for(&self, temperature: f64) -> f64 {
        self.step_scale
            .unwrap_or(self.step_factor * temperature.sqrt())
    }

    pub fn validate(&self, temperature: f64) -> Result<()> {
        let step = self.step_for(temperature);
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "step scale must be > 0, got {step}"
            )));
        }
        if self.chains == Some(0) {
            return Err(Error::InvalidParameter("chains must be >= 1".into()));
        }
        if !(self.init_half_width > 0.0) {
            return Err(Error::InvalidParameter(
                "init_half_width must be > 0".into(),
            ));
        }
        Ok(())
    }
}

/// Deterministic seed for the `k`-th independent stream derived from `seed`.
pub fn derive_seed(seed: u64, k: u64) -> u64 {
    // splitmix64 finalizer over a combined word
    let mut z = seed ^ k.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Samples plus the overall acceptance rate.
#[derive(Debug, Clone)]
pub struct McmcOutput {
    pub cloud: PointCloud,
    pub acceptance: f64,
}

/// Draws `n` points from the density proportional to `exp(-V/T)`.
pub fn sample_mh(
    spec: &PotentialSpec,
    n: usize,
    cfg: &McmcConfig,
    seed: u64,
) -> Result<PointCloud> {
    sample_mh_with_stats(spec, n, cfg, seed).map(|o| o.cloud)
}

pub fn sample_mh_with_stats(
    spec: &PotentialSpec,
    n: usize,
    cfg: &McmcConfig,
    seed: u64,
) -> Result<McmcOutput> {
    if n == 0 {
        return Err(Error::InvalidParameter("sample count must be >= 1".into()));
    }
    cfg.validate(spec.temperature)?;
    let step = cfg.step_for(spec.temperature);
    let chains = cfg.chains.unwrap_or(n).min(n);
    let per_chain = n.div_ceil(chains);
    let thin = cfg.thin.max(1);
    let w = cfg.init_half_width;

    let mut pts = Vec::with_capacity(n);
    let (mut accepted, mut proposed) = (0u64, 0u64);
    for c in 0..chains {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, c as u64));
        let mut x = [rng.random_range(-w..=w), rng.random_range(-w..=w)];
        let mut e = spec.energy(x);
        let mut advance = |steps: usize, x: &mut [f64; 2], e: &mut f64| {
            for _ in 0..steps {
                let dx: f64 = StandardNormal.sample(&mut rng);
                let dy: f64 = StandardNormal.sample(&mut rng);
                let y = [x[0] + step * dx, x[1] + step * dy];
                let ey = spec.energy(y);
                let u: f64 = rng.random();
                proposed += 1;
                // log form of min(1, exp(-(V(y) - V(x)) / T))
                if ey <= *e || u.ln() < -(ey - *e) / spec.temperature {
                    *x = y;
                    *e = ey;
                    accepted += 1;
                }
            }
        };
        advance(cfg.burn_in, &mut x, &mut e);
        for s in 0..per_chain {
            if pts.len() == n {
                break;
            }
            if s > 0 {
                advance(thin, &mut x, &mut e);
            }
            pts.push(x);
        }
    }
    let coords = DMatrix::from_fn(n, 2, |i, k| pts[i][k]);
    Ok(McmcOutput {
        cloud: PointCloud::new(coords)?,
        acceptance: if proposed == 0 {
            1.0
        } else {
            accepted as f64 / proposed as f64
        },
    })
}

/// `k` evenly spaced values from `a` to `b` inclusive.
pub fn linspace(a: f64, b: f64, k: usize) -> Vec<f64> {
    match k {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..k)
            .map(|i| a + (b - a) * i as f64 / (k - 1) as f64)
            .collect(),
    }
}

/// One independent cloud per `h`, with `frame_param = h`.
pub fn make_sequence(
    kind: PotentialKind,
    h_grid: &[f64],
    temperature: f64,
    n: usize,
    cfg: &McmcConfig,
    seed: u64,
) -> Result<SequenceDataset> {
    if h_grid.is_empty() {
        return Err(Error::InvalidParameter("h grid must be nonempty".into()));
    }
    let frames = h_grid
        .par_iter()
        .enumerate()
        .map(|(i, &h)| {
            let spec = PotentialSpec::new(kind, h, temperature)?;
            Ok(sample_mh(&spec, n, cfg, derive_seed(seed, 1_000_003 + i as u64))?.with_param(h))
        })
        .collect::<Result<Vec<_>>>()?;
    SequenceDataset::new(frames)
}

/// Self-propelled swarm with Morse interactions.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default)]
pub struct DorsognaParams {
    pub n_particles: usize,
    pub self_prop: f64,
    pub friction: f64,
    pub attract_strength: f64,
    pub attract_range: f64,
    pub repel_strength: f64,
    pub repel_range: f64,
    pub dt: f64,
    pub snapshot_times: Vec<f64>,
    /// Initial positions are uniform in `[-w, w]^2`.
    pub init_half_width: f64,
    /// Standard deviation of the initial velocity components.
    pub init_speed: f64,
}

impl Default for DorsognaParams {
    fn default() -> Self {
        Self {
            n_particles: 300,
            self_prop: 1.0,
            friction: 0.5,
            attract_strength: 0.5,
            attract_range: 2.0,
            repel_strength: 1.0,
            repel_range: 0.5,
            dt: 0.01,
            snapshot_times: linspace(1.0, 60.0, 61),
            init_half_width: 2.0,
            init_speed: 1.0,
        }
    }
}

impl DorsognaParams {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("self_prop", self.self_prop),
            ("friction", self.friction),
            ("attract_strength", self.attract_strength),
            ("attract_range", self.attract_range),
            ("repel_strength", self.repel_strength),
            ("repel_range", self.repel_range),
            ("dt", self.dt),
            ("init_half_width", self.init_half_width),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be > 0, got {v}"
                )));
            }
        }
        if self.n_particles == 0 {
            return Err(Error::InvalidParameter("n_particles must be >= 1".into()));
        }
        if self.snapshot_times.is_empty() {
            return Err(Error::InvalidParameter(
                "need at least one snapshot time".into(),
            ));
        }
        if self.snapshot_times.windows(2).any(|w| !(w[1] > w[0]))
            || !(self.snapshot_times[0] >= 0.0)
        {
            return Err(Error::InvalidParameter(
                "snapshot times must be nonnegative and strictly increasing".into(),
            ));
        }
        Ok(())
    }

    /// Speed at which propulsion balances drag.
    pub fn terminal_speed(&self) -> f64 {
        (self.self_prop / self.friction).sqrt()
    }
}

fn accelerations(p: &DorsognaParams, x: &[[f64; 2]], v: &[[f64; 2]], out: &mut [[f64; 2]]) {
    let n = x.len();
    for (o, vi) in out.iter_mut().zip(v) {
        let s = p.self_prop - p.friction * (vi[0] * vi[0] + vi[1] * vi[1]);
        *o = [s * vi[0], s * vi[1]];
    }
    let (ca, la, cr, lr) = (
        p.attract_strength,
        p.attract_range,
        p.repel_strength,
        p.repel_range,
    );
    for i in 0..n {
        for j in (i + 1)..n {
            let dx = x[i][0] - x[j][0];
            let dy = x[i][1] - x[j][1];
            let r = (dx * dx + dy * dy).sqrt();
            if r == 0.0 {
                continue;
            }
            // -U'(r): positive pushes i away from j
            let push = cr / lr * (-r / lr).exp() - ca / la * (-r / la).exp();
            let (fx, fy) = (push * dx / r, push * dy / r);
            out[i][0] += fx;
            out[i][1] += fy;
            out[j][0] -= fx;
            out[j][1] -= fy;
        }
    }
}

/// Integrates the swarm and records `(x, y, v_x, v_y)` snapshots.
pub fn simulate_dorsogna(params: &DorsognaParams, seed: u64) -> Result<SequenceDataset> {
    params.validate()?;
    let n = params.n_particles;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = params.init_half_width;
    let mut x: Vec<[f64; 2]> = (0..n)
        .map(|_| [rng.random_range(-w..=w), rng.random_range(-w..=w)])
        .collect();
    let mut v: Vec<[f64; 2]> = (0..n)
        .map(|_| {
            let a: f64 = StandardNormal.sample(&mut rng);
            let b: f64 = StandardNormal.sample(&mut rng);
            [params.init_speed * a, params.init_speed * b]
        })
        .collect();
    let dt = params.dt;
    let mut acc = vec![[0.0; 2]; n];
    accelerations(params, &x, &v, &mut acc);

    let snapshot = |x: &[[f64; 2]], v: &[[f64; 2]], t: f64| {
        let coords = DMatrix::from_fn(n, 4, |i, k| if k < 2 { x[i][k] } else { v[i][k - 2] });
        PointCloud::new(coords).map(|c| c.with_param(t))
    };
    let mut frames = Vec::with_capacity(params.snapshot_times.len());
    let mut step = 0usize;
    for &t_snap in &params.snapshot_times {
        let target = (t_snap / dt).round() as usize;
        while step < target {
            for i in 0..n {
                v[i][0] += 0.5 * dt * acc[i][0];
                v[i][1] += 0.5 * dt * acc[i][1];
                x[i][0] += dt * v[i][0];
                x[i][1] += dt * v[i][1];
            }
            accelerations(params, &x, &v, &mut acc);
            for i in 0..n {
                v[i][0] += 0.5 * dt * acc[i][0];
                v[i][1] += 0.5 * dt * acc[i][1];
            }
            step += 1;
            let blown = x
                .iter()
                .chain(v.iter())
                .any(|p| !(p[0].is_finite() && p[1].is_finite()));
            if blown {
                return Err(Error::Integration {
                    step,
                    time: step as f64 * dt,
                });
            }
        }
        frames.push(snapshot(&x, &v, t_snap)?);
    }
    SequenceDataset::new(frames)
}

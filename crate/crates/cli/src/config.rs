//! Resolved run configuration shared by the analysis commands.

use clap::{Args, ValueEnum};
use serde::Serialize;
use topotip::entropy::MatchMode;
use topotip::geodesic::{CurveConfig, ReferenceMode};
use topotip::mtn::MtnConfig;
use topotip::point_data::KernelKind;
use topotip::tpot::TpotConfig;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reference {
    Global,
    Segment,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Matching {
    Argmax,
    Assignment,
}

/// Every analysis tunable. Flags are the field names in kebab case.
#[derive(Debug, Clone, Args, Serialize)]
pub struct RunConfig {
    /// Weight of the geometric distortion against the topological one.
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    /// Weight of the hypergraph distortion.
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    /// Entropic regularization of the point coupling.
    #[arg(long, default_value_t = 0.003)]
    pub eps_v: f64,
    /// Entropic regularization of the cycle coupling.
    #[arg(long, default_value_t = 0.01)]
    pub eps_e: f64,
    #[arg(long, default_value_t = 50)]
    pub outer_iters: usize,
    #[arg(long, default_value_t = 2000)]
    pub sinkhorn_iters: usize,
    /// Outer stopping threshold on the objective change.
    #[arg(long, default_value_t = 1e-7)]
    pub tol: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub sinkhorn_tol: f64,
    /// Vertex-side weight of the symmetric hypergraph entropy.
    #[arg(long, default_value_t = 0.5)]
    pub gamma: f64,
    /// Most persistent cycles kept per frame.
    #[arg(long, default_value_t = 20)]
    pub max_cycles: usize,
    #[arg(long, default_value_t = 1)]
    pub hom_dim: usize,
    /// Gaussian kernel bandwidth; squared distances are used when absent.
    #[arg(long)]
    pub gaussian_sigma: Option<f64>,
    /// Grid points per keyframe segment (interp).
    #[arg(long = "steps", short = 'L', default_value_t = 13)]
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = Reference::Global)]
    pub reference: Reference,
    #[arg(long, value_enum, default_value_t = Matching::Argmax)]
    pub matching: Matching,
    /// Seed for resampling unequal frames.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let c = CurveConfig::default();
        Self {
            alpha: c.tpot.alpha,
            beta: c.tpot.beta,
            eps_v: c.tpot.eps_v,
            eps_e: c.tpot.eps_e,
            outer_iters: c.tpot.outer_iters,
            sinkhorn_iters: c.tpot.sinkhorn_iters,
            tol: c.tpot.tol,
            sinkhorn_tol: c.tpot.sinkhorn_tol,
            gamma: c.gamma,
            max_cycles: c.mtn.max_cycles,
            hom_dim: c.mtn.hom_dim,
            gaussian_sigma: None,
            steps: c.steps,
            reference: Reference::Global,
            matching: Matching::Argmax,
            seed: c.seed,
        }
    }
}

impl RunConfig {
    /// Library configuration, validated before any compute starts.
    pub fn curve_config(&self) -> CliResult<CurveConfig> {
        let cfg = CurveConfig {
            tpot: TpotConfig {
                p: 2,
                alpha: self.alpha,
                beta: self.beta,
                eps_v: self.eps_v,
                eps_e: self.eps_e,
                outer_iters: self.outer_iters,
                sinkhorn_iters: self.sinkhorn_iters,
                tol: self.tol,
                sinkhorn_tol: self.sinkhorn_tol,
            },
            mtn: MtnConfig {
                hom_dim: self.hom_dim,
                max_cycles: self.max_cycles,
                kernel: match self.gaussian_sigma {
                    Some(sigma) => KernelKind::Gaussian { sigma },
                    None => KernelKind::SquaredEuclidean,
                },
            },
            gamma: self.gamma,
            steps: self.steps,
            reference: match self.reference {
                Reference::Global => ReferenceMode::Global,
                Reference::Segment => ReferenceMode::Segment,
            },
            matching: match self.matching {
                Matching::Argmax => MatchMode::Argmax,
                Matching::Assignment => MatchMode::Assignment,
            },
            seed: self.seed,
        };
        cfg.validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_the_library() {
        assert_eq!(
            RunConfig::default().curve_config().unwrap(),
            CurveConfig::default()
        );
    }

    #[test]
    fn invalid_values_are_config_errors() {
        let cfg = RunConfig {
            alpha: 1.5,
            ..RunConfig::default()
        };
        let err = cfg.curve_config().unwrap_err();
        assert_eq!(err.exit_code(), 2);
        let cfg = RunConfig {
            hom_dim: 0,
            ..RunConfig::default()
        };
        assert_eq!(cfg.curve_config().unwrap_err().exit_code(), 2);
    }
}

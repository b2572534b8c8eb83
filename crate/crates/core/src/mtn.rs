//! Measure topological networks.
//!
//! A network bundles three things built from one point cloud: the
//! metric-measure space `(X, k, mu)`, the retained persistence pairs with
//! their measure `(Y, iota, nu)`, and the binary point/cycle incidence
//! `omega`. Both measures are uniform.

use nalgebra::{DMatrix, DVector};

use crate::entropy::IncidenceMatrix;
use crate::error::{Error, Result};
use crate::persistence::{rips_persistence, top_k_pairs, PersistenceDiagram, PersistencePair};
use crate::point_data::{pairwise_sq_dist, KernelKind, PointCloud, SquaredDistanceMatrix};

/// How networks are assembled from clouds.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default)]
pub struct MtnConfig {
    /// Homology dimension of the retained cycles. Only 1 is supported.
    pub hom_dim: usize,
    /// At most this many pairs (by persistence) become hyperedges.
    pub max_cycles: usize,
    pub kernel: KernelKind,
}

impl Default for MtnConfig {
    fn default() -> Self {
        Self {
            hom_dim: 1,
            max_cycles: 20,
            kernel: KernelKind::SquaredEuclidean,
        }
    }
}

impl MtnConfig {
    pub fn validate(&self) -> Result<()> {
        if self.hom_dim != 1 {
            return Err(Error::InvalidParameter(format!(
                "hom_dim must be 1 (cycles carry the incidence), got {}",
                self.hom_dim
            )));
        }
        if let KernelKind::Gaussian { sigma } = self.kernel {
            if !(sigma > 0.0 && sigma.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "gaussian sigma must be > 0, got {sigma}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct MeasureTopologicalNetwork {
    sq_dist: SquaredDistanceMatrix,
    kernel: DMatrix<f64>,
    mu: DVector<f64>,
    cycles: Vec<PersistencePair>,
    diagram: DMatrix<f64>,
    nu: DVector<f64>,
    incidence: DMatrix<f64>,
    full_diagram: PersistenceDiagram,
    source: Option<PointCloud>,
}

fn uniform(n: usize) -> DVector<f64> {
    DVector::from_element(n, 1.0 / n as f64)
}

/// Builds the network of `cloud`.
pub fn build_mtn(cloud: &PointCloud, cfg: &MtnConfig) -> Result<MeasureTopologicalNetwork> {
    cfg.validate()?;
    let sq_dist = pairwise_sq_dist(cloud);
    let full_diagram = rips_persistence(&sq_dist, f64::INFINITY)?;
    let cycles = top_k_pairs(&full_diagram, cfg.hom_dim, cfg.max_cycles)
        .pairs()
        .to_vec();
    let kernel = match cfg.kernel {
        KernelKind::SquaredEuclidean => sq_dist.matrix().clone(),
        KernelKind::Gaussian { sigma } => sq_dist.gaussian_affinity(sigma),
    };
    let n = cloud.len();
    let mut incidence = DMatrix::zeros(n, cycles.len());
    for (e, c) in cycles.iter().enumerate() {
        for &v in &c.representative {
            incidence[(v, e)] = 1.0;
        }
    }
    let diagram = DMatrix::from_fn(cycles.len(), 2, |u, c| {
        if c == 0 {
            cycles[u].birth
        } else {
            cycles[u].death
        }
    });
    Ok(MeasureTopologicalNetwork {
        mu: uniform(n),
        nu: uniform(cycles.len()),
        sq_dist,
        kernel,
        cycles,
        diagram,
        incidence,
        full_diagram,
        source: Some(cloud.clone()),
    })
}

impl MeasureTopologicalNetwork {
    /// Assembles a network directly from a kernel, an `M x 2` diagram and an
    /// `N x M` binary incidence, with uniform measures. Meant for tests and
    /// for callers that already hold the pieces.
    pub fn from_parts(
        sq_dist: SquaredDistanceMatrix,
        diagram: DMatrix<f64>,
        incidence: DMatrix<f64>,
    ) -> Result<Self> {
        let n = sq_dist.len();
        let m = diagram.nrows();
        if n == 0 {
            return Err(Error::Shape("network needs at least one point".into()));
        }
        if diagram.ncols() != 2 || incidence.nrows() != n || incidence.ncols() != m {
            return Err(Error::Shape(format!(
                "diagram {}x{} and incidence {}x{} do not fit {n} points",
                diagram.nrows(),
                diagram.ncols(),
                incidence.nrows(),
                incidence.ncols()
            )));
        }
        for u in 0..m {
            if !(diagram[(u, 1)] > diagram[(u, 0)]) || !diagram[(u, 1)].is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "diagram row {u} needs finite death > birth"
                )));
            }
            let col = incidence.column(u);
            if col.iter().any(|&x| x != 0.0 && x != 1.0) || col.sum() == 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "incidence column {u} must be binary and nonempty"
                )));
            }
        }
        let cycles = (0..m)
            .map(|u| PersistencePair {
                dim: 1,
                birth: diagram[(u, 0)],
                death: diagram[(u, 1)],
                representative: (0..n).filter(|&v| incidence[(v, u)] > 0.0).collect(),
            })
            .collect::<Vec<_>>();
        Ok(Self {
            kernel: sq_dist.matrix().clone(),
            mu: uniform(n),
            nu: uniform(m),
            full_diagram: PersistenceDiagram::new(cycles.clone()),
            sq_dist,
            cycles,
            diagram,
            incidence,
            source: None,
        })
    }

    pub fn n_points(&self) -> usize {
        self.mu.len()
    }

    pub fn n_cycles(&self) -> usize {
        self.nu.len()
    }

    /// The kernel `k` used by the geometric cost.
    pub fn kernel(&self) -> &DMatrix<f64> {
        &self.kernel
    }

    pub fn sq_dist(&self) -> &SquaredDistanceMatrix {
        &self.sq_dist
    }

    pub fn mu(&self) -> &DVector<f64> {
        &self.mu
    }

    pub fn nu(&self) -> &DVector<f64> {
        &self.nu
    }

    /// Retained pairs as an `M x 2` matrix of `(birth, death)`.
    pub fn diagram(&self) -> &DMatrix<f64> {
        &self.diagram
    }

    pub fn cycles(&self) -> &[PersistencePair] {
        &self.cycles
    }

    /// `N x M` binary incidence.
    pub fn incidence(&self) -> &DMatrix<f64> {
        &self.incidence
    }

    pub fn incidence_matrix(&self) -> IncidenceMatrix {
        IncidenceMatrix::new(self.incidence.clone()).expect("binary incidence is valid")
    }

    /// The complete diagram the cycles were selected from.
    pub fn full_diagram(&self) -> &PersistenceDiagram {
        &self.full_diagram
    }

    pub fn source_cloud(&self) -> Option<&PointCloud> {
        self.source.as_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cloud(rows: &[[f64; 2]]) -> PointCloud {
        PointCloud::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    const SQUARE: [[f64; 2]; 4] = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];

    #[test]
    fn square_network() {
        let p = build_mtn(&cloud(&SQUARE), &MtnConfig::default()).unwrap();
        assert_eq!(p.n_cycles(), 1);
        assert_eq!(p.incidence(), &DMatrix::from_element(4, 1, 1.0));
        assert_eq!(p.diagram()[(0, 0)], 1.0);
        assert!((p.diagram()[(0, 1)] - 2f64.sqrt()).abs() < 1e-12);
        assert!(p.mu().iter().all(|&x| x == 0.25));
        assert_eq!(p.nu()[0], 1.0);
    }

    #[test]
    fn collinear_has_no_cycles() {
        let p = build_mtn(
            &cloud(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]),
            &MtnConfig::default(),
        )
        .unwrap();
        assert_eq!(p.n_cycles(), 0);
        assert_eq!(p.incidence().shape(), (3, 0));
        assert!(p.nu().is_empty());
    }

    #[test]
    fn two_far_squares() {
        let mut pts = SQUARE.to_vec();
        pts.extend(SQUARE.iter().map(|p| [p[0] + 10.0, p[1]]));
        // The two bridging edges at distance 9 also close a short loop that dies at sqrt(82).
        let full = build_mtn(&cloud(&pts), &MtnConfig::default()).unwrap();
        assert_eq!(full.n_cycles(), 3);
        assert!((full.diagram()[(2, 1)] - 82f64.sqrt()).abs() < 1e-12);
        let cfg = MtnConfig {
            max_cycles: 2,
            ..MtnConfig::default()
        };
        let p = build_mtn(&cloud(&pts), &cfg).unwrap();
        assert_eq!(p.n_cycles(), 2);
        let w = p.incidence();
        let mut cols: Vec<Vec<usize>> = (0..2)
            .map(|e| (0..8).filter(|&v| w[(v, e)] == 1.0).collect())
            .collect();
        cols.sort();
        assert_eq!(cols, vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]]);
    }

    #[test]
    fn max_cycles_caps_hyperedges() {
        let mut pts = Vec::new();
        for k in 0..3 {
            let s = 1.0 + k as f64 * 0.5;
            pts.extend(
                SQUARE
                    .iter()
                    .map(|p| [p[0] * s + 20.0 * k as f64, p[1] * s]),
            );
        }
        let cfg = MtnConfig {
            max_cycles: 2,
            ..MtnConfig::default()
        };
        let p = build_mtn(&cloud(&pts), &cfg).unwrap();
        assert_eq!(p.n_cycles(), 2);
        // the two largest squares survive
        assert!(p.diagram()[(0, 0)] >= 1.5 && p.diagram()[(1, 0)] >= 1.5);
    }

    #[test]
    fn permutation_equivariance() {
        let pts: Vec<[f64; 2]> = (0..12)
            .map(|k| {
                // generic positions, so no ties in the filtration order
                let t = k as f64 * std::f64::consts::TAU / 12.0 + 0.02 * (3.1 * k as f64).cos();
                let r = 1.0 + 0.05 * (1.7 * k as f64).sin();
                [r * t.cos(), r * t.sin()]
            })
            .collect();
        let perm: Vec<usize> = (0..12).map(|k| (k * 5) % 12).collect();
        let shuffled: Vec<[f64; 2]> = perm.iter().map(|&i| pts[i]).collect();
        let a = build_mtn(&cloud(&pts), &MtnConfig::default()).unwrap();
        let b = build_mtn(&cloud(&shuffled), &MtnConfig::default()).unwrap();
        for (r, &i) in perm.iter().enumerate() {
            for (c, &j) in perm.iter().enumerate() {
                assert_eq!(b.kernel()[(r, c)], a.kernel()[(i, j)]);
            }
        }
        assert_eq!(a.diagram(), b.diagram());
        for e in 0..a.n_cycles() {
            for (r, &i) in perm.iter().enumerate() {
                assert_eq!(b.incidence()[(r, e)], a.incidence()[(i, e)]);
            }
        }
    }

    #[test]
    fn from_parts_validates() {
        let d = pairwise_sq_dist(&cloud(&SQUARE));
        let ok = MeasureTopologicalNetwork::from_parts(
            d.clone(),
            DMatrix::from_row_slice(1, 2, &[0.0, 1.0]),
            DMatrix::from_element(4, 1, 1.0),
        );
        assert!(ok.is_ok());
        let bad = MeasureTopologicalNetwork::from_parts(
            d,
            DMatrix::from_row_slice(1, 2, &[1.0, 1.0]),
            DMatrix::from_element(4, 1, 1.0),
        );
        assert!(bad.is_err());
        assert!(MtnConfig {
            hom_dim: 0,
            ..MtnConfig::default()
        }
        .validate()
        .is_err());
    }
}

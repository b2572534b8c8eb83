//! Hypergraph entropies of cycle incidence structures and the point-level
//! entropy field.
//!
//! Vertices are data points, hyperedges are persistent cycles, and the
//! incidence `omega[v][e]` is 1 when point `v` lies on the representative of
//! cycle `e`. With degrees `L(v)`, sizes `S(e)` and total incidence `I`:
//!
//! * `HE_V = -sum_v (L(v)/I) ln(L(v)/I)` over active vertices,
//! * `HE_E = -sum_e (S(e)/I) ln(S(e)/I)` over active hyperedges,
//! * `HE_sym = gamma HE_V / ln|V*| + (1 - gamma) HE_E / ln|E*|`.
//!
//! The spectral (eigenvalue) entropy is kept as a comparison baseline.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::assignment;
use crate::error::{Error, Result};

/// A scalar indicator together with a flag marking inputs where it is only
/// defined by convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Flagged {
    pub value: f64,
    pub degenerate: bool,
}

impl Flagged {
    pub fn ok(value: f64) -> Self {
        Self {
            value,
            degenerate: false,
        }
    }

    pub fn degenerate(value: f64) -> Self {
        Self {
            value,
            degenerate: true,
        }
    }

    /// Shannon entropy of the positive `weights` after normalization, using
    /// `log` as the logarithm. Empty or all-zero input is a degenerate 0.
    pub fn from_weights(weights: &[f64], log: impl Fn(f64) -> f64) -> Self {
        let mut w: Vec<f64> = weights.iter().copied().filter(|&x| x > 0.0).collect();
        // Sorting makes the result independent of input order, bit for bit.
        w.sort_by(f64::total_cmp);
        let total: f64 = w.iter().sum();
        if w.is_empty() || total <= 0.0 {
            return Self::degenerate(0.0);
        }
        let h = -w
            .iter()
            .map(|&x| {
                let p = x / total;
                p * log(p)
            })
            .sum::<f64>();
        Self::ok(h.max(0.0))
    }
}

/// A nonnegative `n x m` vertex–hyperedge incidence matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct IncidenceMatrix {
    omega: DMatrix<f64>,
}

impl IncidenceMatrix {
    pub fn new(omega: DMatrix<f64>) -> Result<Self> {
        if omega.iter().any(|&x| !x.is_finite() || x < 0.0) {
            return Err(Error::InvalidParameter(
                "incidence entries must be finite and nonnegative".into(),
            ));
        }
        Ok(Self { omega })
    }

    /// Binary incidence with hyperedge `e` covering `members[e]`.
    pub fn from_members(n: usize, members: &[Vec<usize>]) -> Result<Self> {
        let mut omega = DMatrix::zeros(n, members.len());
        for (e, vs) in members.iter().enumerate() {
            for &v in vs {
                if v >= n {
                    return Err(Error::Shape(format!("vertex {v} out of range for n = {n}")));
                }
                omega[(v, e)] = 1.0;
            }
        }
        Ok(Self { omega })
    }

    pub fn omega(&self) -> &DMatrix<f64> {
        &self.omega
    }

    pub fn degrees(&self) -> Vec<f64> {
        self.omega.row_iter().map(|r| r.sum()).collect()
    }

    pub fn sizes(&self) -> Vec<f64> {
        self.omega.column_iter().map(|c| c.sum()).collect()
    }

    /// Indices of vertices with positive degree (`V*`).
    pub fn active_vertices(&self) -> Vec<usize> {
        positive_indices(&self.degrees())
    }

    /// Indices of hyperedges with positive size (`E*`).
    pub fn active_edges(&self) -> Vec<usize> {
        positive_indices(&self.sizes())
    }

    pub fn total_incidence(&self) -> f64 {
        self.omega.sum()
    }
}

fn positive_indices(v: &[f64]) -> Vec<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, &x)| x > 0.0)
        .map(|(i, _)| i)
        .collect()
}

/// Vertex-perspective entropy (natural log).
pub fn he_vertex(inc: &IncidenceMatrix) -> Flagged {
    Flagged::from_weights(&inc.degrees(), f64::ln)
}

/// Hyperedge-perspective entropy (natural log).
pub fn he_edge(inc: &IncidenceMatrix) -> Flagged {
    Flagged::from_weights(&inc.sizes(), f64::ln)
}

fn normalized(h: Flagged, active: usize) -> (f64, bool) {
    match active {
        0 => (0.0, true),
        // A single element is trivially regular/uniform: 0 / ln 1 taken as 1.
        1 => (1.0, true),
        k => (h.value / (k as f64).ln(), h.degenerate),
    }
}

/// Symmetric hypergraph entropy with weight `gamma` on the vertex side.
pub fn he_sym(inc: &IncidenceMatrix, gamma: f64) -> Result<Flagged> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::InvalidParameter(format!(
            "gamma must lie in [0, 1], got {gamma}"
        )));
    }
    if inc.total_incidence() <= 0.0 {
        return Ok(Flagged::degenerate(0.0));
    }
    let (v, dv) = normalized(he_vertex(inc), inc.active_vertices().len());
    let (e, de) = normalized(he_edge(inc), inc.active_edges().len());
    Ok(Flagged {
        value: gamma * v + (1.0 - gamma) * e,
        degenerate: dv || de,
    })
}

/// Base-2 Shannon entropy of the trace-normalized spectrum of `omega omega^T`.
///
/// `omega^T omega` has the same nonzero eigenvalues and is the smaller matrix
/// whenever there are fewer hyperedges than vertices.
pub fn spectral_entropy(inc: &IncidenceMatrix) -> Flagged {
    let w = inc.omega();
    let gram = if w.ncols() <= w.nrows() {
        w.transpose() * w
    } else {
        w * w.transpose()
    };
    let trace = gram.trace();
    if gram.nrows() == 0 || trace <= 0.0 {
        return Flagged::degenerate(0.0);
    }
    let eig = SymmetricEigen::new(gram).eigenvalues;
    let cutoff = 1e-12 * trace;
    let kept: Vec<f64> = eig.iter().copied().filter(|&l| l > cutoff).collect();
    Flagged::from_weights(&kept, f64::log2)
}

/// How cycles are put in correspondence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchMode {
    /// Row-wise argmax of the coupling, lowest index on ties.
    #[default]
    Argmax,
    /// Exact linear assignment maximizing coupled mass (validation).
    Assignment,
}

/// Builds the `m' x m` alignment matrix from an augmented cycle coupling of
/// shape `(m + 1) x (m' + 1)` (reference rows, target columns, last row and
/// column are the diagonal slots). A reference cycle whose best partner is the
/// diagonal gets a zero column.
pub fn align_cycles(pi_e: &DMatrix<f64>, mode: MatchMode) -> Result<DMatrix<f64>> {
    if pi_e.nrows() == 0 || pi_e.ncols() == 0 {
        return Err(Error::Shape(
            "cycle coupling must include the diagonal slots".into(),
        ));
    }
    let (m, mt) = (pi_e.nrows() - 1, pi_e.ncols() - 1);
    let mut a = DMatrix::zeros(mt, m);
    match mode {
        MatchMode::Argmax => {
            for j in 0..m {
                let mut best = 0;
                for c in 1..=mt {
                    if pi_e[(j, c)] > pi_e[(j, best)] {
                        best = c;
                    }
                }
                if best < mt {
                    a[(best, j)] = 1.0;
                }
            }
        }
        MatchMode::Assignment => {
            // Each reference row may use any target once, or its own copy of the diagonal.
            let cost: Vec<Vec<f64>> = (0..m)
                .map(|j| {
                    (0..mt)
                        .map(|c| -pi_e[(j, c)])
                        .chain((0..m).map(|k| if k == j { -pi_e[(j, mt)] } else { 0.0 }))
                        .collect()
                })
                .collect();
            for (j, c) in assignment::solve(&cost)?.into_iter().enumerate() {
                if c < mt {
                    a[(c, j)] = 1.0;
                }
            }
        }
    }
    Ok(a)
}

/// Per-vertex entropy change scores on the target cloud.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyField {
    /// `s = P_hat |dH|`, one score per target vertex.
    pub scores: DVector<f64>,
    /// `dH_j = H_hat_j - H_j` for each reference cycle.
    pub per_cycle_delta: DVector<f64>,
    /// Set when a normalizer `ln n` vanishes (a one-point cloud).
    pub degenerate: bool,
}

fn column_normalize(w: &DMatrix<f64>, eps: f64) -> DMatrix<f64> {
    let mut p = w.clone();
    for mut col in p.column_iter_mut() {
        let s = col.sum() + eps;
        col /= s;
    }
    p
}

fn column_entropies(p: &DMatrix<f64>, n: usize) -> (DVector<f64>, bool) {
    let norm = (n as f64).ln();
    let degenerate = norm <= 0.0;
    let h = DVector::from_iterator(
        p.ncols(),
        p.column_iter().map(|c| {
            if degenerate {
                return 0.0;
            }
            -c.iter()
                .filter(|&&x| x > 0.0)
                .map(|&x| x * x.ln())
                .sum::<f64>()
                / norm
        }),
    );
    (h, degenerate)
}

/// Point-level hypergraph-entropy field between a reference incidence
/// (`n x m`) and a target incidence (`n' x m'`) aligned by `align` (`m' x m`).
pub fn point_level_field(
    omega_ref: &DMatrix<f64>,
    omega_tgt: &DMatrix<f64>,
    align: &DMatrix<f64>,
    eps: f64,
) -> Result<EntropyField> {
    if eps <= 0.0 || !eps.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "eps must be > 0, got {eps}"
        )));
    }
    if align.nrows() != omega_tgt.ncols() || align.ncols() != omega_ref.ncols() {
        return Err(Error::Shape(format!(
            "alignment is {}x{}, expected {}x{}",
            align.nrows(),
            align.ncols(),
            omega_tgt.ncols(),
            omega_ref.ncols()
        )));
    }
    let aligned = omega_tgt * align;
    let p = column_normalize(omega_ref, eps);
    let p_hat = column_normalize(&aligned, eps);
    let (h, d1) = column_entropies(&p, omega_ref.nrows());
    let (h_hat, d2) = column_entropies(&p_hat, omega_tgt.nrows());
    let delta = &h_hat - &h;
    let scores = &p_hat * delta.abs();
    Ok(EntropyField {
        scores,
        per_cycle_delta: delta,
        degenerate: d1 || d2,
    })
}

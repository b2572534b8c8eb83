//! Geodesic reconstruction between snapshots and the indicator curves built
//! on it.
//!
//! Between two coupled clouds the squared distances are interpolated along
//! a hard matching, embedded back into coordinates by classical MDS and
//! rigidly aligned to the pointwise blend of the endpoints. Topology is then
//! recomputed on the embedded points, so every intermediate frame carries
//! genuine cycles rather than interpolated incidences.

use std::path::Path;

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;

use crate::assignment;
use crate::entropy::{he_edge, he_sym, he_vertex, MatchMode};
use crate::error::{Error, Result};
use crate::mtn::{build_mtn, MeasureTopologicalNetwork, MtnConfig};
use crate::persistence::persistence_entropy;
use crate::point_data::{
    fmt_real, resample, save_table, PointCloud, SequenceDataset, SquaredDistanceMatrix,
};
use crate::synth::derive_seed;
use crate::tpot::{solve_tpot, TpotConfig};

/// One target index per source point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    targets: Vec<usize>,
}

impl Matching {
    pub fn new(targets: Vec<usize>) -> Self {
        Self { targets }
    }

    pub fn identity(n: usize) -> Self {
        Self::new((0..n).collect())
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    /// `(source, target)` pairs in source order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.targets.iter().copied().enumerate()
    }
}

/// Row-wise argmax of a point coupling, lowest column on ties.
pub fn extract_matching(pi_v: &DMatrix<f64>) -> Result<Matching> {
    let mut targets = Vec::with_capacity(pi_v.nrows());
    for (i, row) in pi_v.row_iter().enumerate() {
        let mut best = None;
        for (j, &x) in row.iter().enumerate() {
            if x > 0.0 && best.is_none_or(|(_, b)| x > b) {
                best = Some((j, x));
            }
        }
        match best {
            Some((j, _)) => targets.push(j),
            None => return Err(Error::EmptyCouplingRow(i)),
        }
    }
    Ok(Matching::new(targets))
}

/// Exact assignment maximizing coupled mass. Needs at most as many rows as
/// columns; the result is injective.
pub fn assignment_matching(pi_v: &DMatrix<f64>) -> Result<Matching> {
    if let Some(i) = (0..pi_v.nrows()).find(|&i| !pi_v.row(i).iter().any(|&x| x > 0.0)) {
        return Err(Error::EmptyCouplingRow(i));
    }
    let cost: Vec<Vec<f64>> = pi_v
        .row_iter()
        .map(|r| r.iter().map(|&x| -x).collect())
        .collect();
    Ok(Matching::new(assignment::solve(&cost)?))
}

pub fn matching_with(pi_v: &DMatrix<f64>, mode: MatchMode) -> Result<Matching> {
    match mode {
        MatchMode::Argmax => extract_matching(pi_v),
        MatchMode::Assignment => assignment_matching(pi_v),
    }
}

fn check_t(t: f64) -> Result<()> {
    if (0.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "t must lie in [0, 1], got {t}"
        )))
    }
}

/// `k_t[i][j] = (1 - t) kA[i][j] + t kB[m(i)][m(j)]`.
pub fn interpolate_sq_dist(
    ka: &SquaredDistanceMatrix,
    kb: &SquaredDistanceMatrix,
    m: &Matching,
    t: f64,
) -> Result<SquaredDistanceMatrix> {
    check_t(t)?;
    let n = ka.len();
    if m.len() != n || m.targets().iter().any(|&j| j >= kb.len()) {
        return Err(Error::Shape(format!(
            "matching of {} points does not fit {n} -> {}",
            m.len(),
            kb.len()
        )));
    }
    let tg = m.targets();
    let (a, b) = (ka.matrix(), kb.matrix());
    let kt = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            0.0
        } else {
            (1.0 - t) * a[(i, j)] + t * b[(tg[i], tg[j])]
        }
    });
    // a convex blend of two valid matrices is valid
    Ok(SquaredDistanceMatrix::from_matrix_unchecked(kt))
}

/// Classical MDS into `d` dimensions. Negative eigenvalues of the
/// double-centered matrix are clamped to zero.
pub fn classical_mds(k: &SquaredDistanceMatrix, d: usize) -> Result<PointCloud> {
    if d == 0 {
        return Err(Error::InvalidParameter(
            "embedding dimension must be >= 1".into(),
        ));
    }
    let n = k.len();
    let km = k.matrix();
    let row_mean: Vec<f64> = (0..n).map(|i| km.row(i).sum() / n as f64).collect();
    let total_mean = row_mean.iter().sum::<f64>() / n as f64;
    let b = DMatrix::from_fn(n, n, |i, j| {
        -0.5 * (km[(i, j)] - row_mean[i] - row_mean[j] + total_mean)
    });
    let eig = SymmetricEigen::new(b);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| {
        eig.eigenvalues[y]
            .total_cmp(&eig.eigenvalues[x])
            .then(x.cmp(&y))
    });
    let mut coords = DMatrix::zeros(n, d);
    for (c, &e) in order.iter().take(d).enumerate() {
        let s = eig.eigenvalues[e].max(0.0).sqrt();
        if s == 0.0 {
            continue;
        }
        let v = eig.eigenvectors.column(e);
        // fix the sign so the output does not depend on the eigensolver's choice
        let pivot = v
            .iter()
            .copied()
            .fold(0.0f64, |acc, x| if x.abs() > acc.abs() { x } else { acc });
        let sign = if pivot < 0.0 { -1.0 } else { 1.0 };
        for i in 0..n {
            coords[(i, c)] = sign * s * v[i];
        }
    }
    PointCloud::new(coords)
}

/// Proper rigid motion (rotation plus translation) of `x` that best fits
/// `reference` in the least-squares sense.
pub fn procrustes_align(x: &PointCloud, reference: &PointCloud) -> Result<PointCloud> {
    if x.len() != reference.len() || x.dim() != reference.dim() {
        return Err(Error::Shape(format!(
            "cannot align {}x{} onto {}x{}",
            x.len(),
            x.dim(),
            reference.len(),
            reference.dim()
        )));
    }
    let (xm, rm) = (x.coords(), reference.coords());
    let mean_x = xm.row_mean();
    let mean_r = rm.row_mean();
    let mut xc = xm.clone();
    let mut rc = rm.clone();
    for mut row in xc.row_iter_mut() {
        row -= &mean_x;
    }
    for mut row in rc.row_iter_mut() {
        row -= &mean_r;
    }
    let h = xc.transpose() * &rc;
    let svd = h.svd(true, true);
    let (u, v_t) = (svd.u.expect("u requested"), svd.v_t.expect("v requested"));
    let v = v_t.transpose();
    let d = x.dim();
    let mut fix = DMatrix::<f64>::identity(d, d);
    if (&v * u.transpose()).determinant() < 0.0 {
        fix[(d - 1, d - 1)] = -1.0;
    }
    let q = v * fix * u.transpose();
    let mut out = xc * q.transpose();
    for mut row in out.row_iter_mut() {
        row += &mean_r;
    }
    let mut cloud = PointCloud::new(out)?;
    if let Some(p) = x.frame_param() {
        cloud = cloud.with_param(p);
    }
    Ok(cloud)
}

/// The geodesic frame at time `t` between `a` and `b` coupled by `pi_v`.
pub fn reconstruct_frame(
    a: &PointCloud,
    b: &PointCloud,
    pi_v: &DMatrix<f64>,
    t: f64,
) -> Result<PointCloud> {
    reconstruct_frame_with(a, b, pi_v, t, MatchMode::Argmax)
}

pub fn reconstruct_frame_with(
    a: &PointCloud,
    b: &PointCloud,
    pi_v: &DMatrix<f64>,
    t: f64,
    mode: MatchMode,
) -> Result<PointCloud> {
    check_t(t)?;
    if a.dim() != b.dim() {
        return Err(Error::Shape(format!(
            "endpoint dimensions {} and {} differ",
            a.dim(),
            b.dim()
        )));
    }
    if pi_v.shape() != (a.len(), b.len()) {
        return Err(Error::Shape(format!(
            "coupling is {:?}, expected {}x{}",
            pi_v.shape(),
            a.len(),
            b.len()
        )));
    }
    let m = matching_with(pi_v, mode)?;
    let ka = crate::point_data::pairwise_sq_dist(a);
    let kb = crate::point_data::pairwise_sq_dist(b);
    let kt = interpolate_sq_dist(&ka, &kb, &m, t)?;
    let embedded = classical_mds(&kt, a.dim())?;
    let bm = b.coords();
    let anchor = DMatrix::from_fn(a.len(), a.dim(), |i, k| {
        (1.0 - t) * a.coords()[(i, k)] + t * bm[(m.targets()[i], k)]
    });
    let mut out = procrustes_align(&embedded, &PointCloud::new(anchor)?)?;
    if let (Some(pa), Some(pb)) = (a.frame_param(), b.frame_param()) {
        out = out.with_param((1.0 - t) * pa + t * pb);
    }
    Ok(out)
}

/// Blends incidences directly, `(1 - t) omega_a + t omega_b[m] A`, without
/// recomputing topology. Only useful as a negative control: the blend keeps
/// fractional memberships of cycles that no longer exist.
pub fn blend_incidence(
    omega_a: &DMatrix<f64>,
    omega_b: &DMatrix<f64>,
    m: &Matching,
    align: &DMatrix<f64>,
    t: f64,
) -> Result<DMatrix<f64>> {
    check_t(t)?;
    if m.len() != omega_a.nrows() || align.shape() != (omega_b.ncols(), omega_a.ncols()) {
        return Err(Error::Shape(
            "matching or alignment does not fit the incidences".into(),
        ));
    }
    let moved = DMatrix::from_fn(m.len(), omega_b.ncols(), |i, u| {
        omega_b[(m.targets()[i], u)]
    });
    Ok(omega_a * (1.0 - t) + moved * align * t)
}

/// Which network the curve rows are compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReferenceMode {
    /// The first keyframe for every row.
    #[default]
    Global,
    /// The starting keyframe of each segment.
    Segment,
}

/// Settings shared by the baseline and the interpolated curves.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default)]
pub struct CurveConfig {
    pub tpot: TpotConfig,
    pub mtn: MtnConfig,
    /// Vertex-side weight of the symmetric entropy.
    pub gamma: f64,
    /// Grid points per keyframe segment.
    pub steps: usize,
    pub reference: ReferenceMode,
    pub matching: MatchMode,
    /// Seed for resampling unequal keyframes to a common size.
    pub seed: u64,
}

impl Default for CurveConfig {
    fn default() -> Self {
        Self {
            tpot: TpotConfig::default(),
            mtn: MtnConfig::default(),
            gamma: 0.5,
            steps: 13,
            reference: ReferenceMode::Global,
            matching: MatchMode::Argmax,
            seed: 0,
        }
    }
}

impl CurveConfig {
    pub fn validate(&self) -> Result<()> {
        self.tpot.validate()?;
        self.mtn.validate()?;
        if !(0.0..=1.0).contains(&self.gamma) {
            return Err(Error::InvalidParameter(format!(
                "gamma must lie in [0, 1], got {}",
                self.gamma
            )));
        }
        if self.steps == 0 {
            return Err(Error::InvalidParameter("steps must be >= 1".into()));
        }
        Ok(())
    }
}

/// One row of an indicator curve.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorRow {
    pub tau: f64,
    pub l_geom: f64,
    pub l_topo: f64,
    pub l_hyper: f64,
    pub pe: f64,
    pub he_v: f64,
    pub he_e: f64,
    pub he_sym: f64,
    pub converged: bool,
    pub n_cycles: usize,
    /// Frame parameter (interpolated between keyframes), when known.
    pub param: Option<f64>,
    /// Weighted objective of the evaluation solve.
    pub objective: f64,
    pub max_marginal_violation: f64,
    pub sinkhorn_converged: bool,
    /// Some entropy in the row is only defined by convention.
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct IndicatorTable {
    pub rows: Vec<IndicatorRow>,
}

pub const INDICATOR_HEADER: [&str; 10] = [
    "tau",
    "L_geom",
    "L_topo",
    "L_hyper",
    "PE",
    "HE_V",
    "HE_E",
    "HE_sym",
    "converged",
    "n_cycles",
];

pub const DIAGNOSTICS_HEADER: [&str; 6] = [
    "tau",
    "param",
    "objective",
    "max_marginal_violation",
    "sinkhorn_converged",
    "degenerate",
];

impl IndicatorTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column(&self, f: impl Fn(&IndicatorRow) -> f64) -> Vec<f64> {
        self.rows.iter().map(f).collect()
    }

    pub fn n_unconverged(&self) -> usize {
        self.rows.iter().filter(|r| !r.converged).count()
    }

    pub fn save_csv<P: AsRef<Path>>(&self, path: P) -> Result<()> {
        let header = INDICATOR_HEADER.map(String::from);
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    fmt_real(r.tau),
                    fmt_real(r.l_geom),
                    fmt_real(r.l_topo),
                    fmt_real(r.l_hyper),
                    fmt_real(r.pe),
                    fmt_real(r.he_v),
                    fmt_real(r.he_e),
                    fmt_real(r.he_sym),
                    r.converged.to_string(),
                    r.n_cycles.to_string(),
                ]
            })
            .collect();
        save_table(path, &header, &rows)
    }

    /// Sidecar with the solver diagnostics that do not belong in the curve file.
    pub fn save_diagnostics<P: AsRef<Path>>(&self, path: P) -> Result<()> {
        let header = DIAGNOSTICS_HEADER.map(String::from);
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    fmt_real(r.tau),
                    r.param.map_or(String::new(), fmt_real),
                    fmt_real(r.objective),
                    fmt_real(r.max_marginal_violation),
                    r.sinkhorn_converged.to_string(),
                    r.degenerate.to_string(),
                ]
            })
            .collect();
        save_table(path, &header, &rows)
    }
}

/// Compares `frame` against `reference` and collects every indicator.
pub fn indicator_row(
    reference: &MeasureTopologicalNetwork,
    frame: &MeasureTopologicalNetwork,
    tau: f64,
    param: Option<f64>,
    cfg: &CurveConfig,
) -> Result<IndicatorRow> {
    let sol = solve_tpot(reference, frame, &cfg.tpot)?;
    let pe = persistence_entropy(frame.full_diagram(), 1);
    let inc = frame.incidence_matrix();
    let (hv, he) = (he_vertex(&inc), he_edge(&inc));
    let hs = he_sym(&inc, cfg.gamma)?;
    Ok(IndicatorRow {
        tau,
        l_geom: sol.distortion.geom,
        l_topo: sol.distortion.topo,
        l_hyper: sol.distortion.hyper,
        pe: pe.value,
        he_v: hv.value,
        he_e: he.value,
        he_sym: hs.value,
        converged: sol.converged,
        n_cycles: frame.n_cycles(),
        param,
        objective: sol.distortion.objective,
        max_marginal_violation: sol.max_marginal_violation,
        sinkhorn_converged: sol.sinkhorn_converged,
        degenerate: pe.degenerate || hv.degenerate || he.degenerate || hs.degenerate,
    })
}

/// Every frame compared against the first one; row `i` sits at `i / (T - 1)`.
pub fn baseline_curves(seq: &SequenceDataset, cfg: &CurveConfig) -> Result<IndicatorTable> {
    cfg.validate()?;
    let t = seq.len();
    if t < 2 {
        return Err(Error::InvalidParameter(format!(
            "baseline needs >= 2 frames, got {t}"
        )));
    }
    let nets = seq
        .frames()
        .par_iter()
        .map(|f| build_mtn(f, &cfg.mtn))
        .collect::<Result<Vec<_>>>()?;
    let rows = (0..t)
        .into_par_iter()
        .map(|i| {
            let tau = i as f64 / (t - 1) as f64;
            indicator_row(&nets[0], &nets[i], tau, seq.frames()[i].frame_param(), cfg)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IndicatorTable { rows })
}

/// Global time of grid point `step` (of `steps`) in segment `segment` out of
/// `keyframes - 1`, computed as one rounded division.
pub fn global_tau(segment: usize, step: usize, steps: usize, keyframes: usize) -> f64 {
    (segment * steps + step) as f64 / ((keyframes - 1) * steps) as f64
}

fn check_keyframes(keyframes: &[usize], len: usize) -> Result<()> {
    if keyframes.len() < 2 {
        return Err(Error::InvalidParameter("need at least 2 keyframes".into()));
    }
    if keyframes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter(
            "keyframes must be strictly increasing".into(),
        ));
    }
    if let Some(&k) = keyframes.iter().find(|&&k| k >= len) {
        return Err(Error::InvalidParameter(format!(
            "keyframe {k} outside a {len}-frame sequence"
        )));
    }
    Ok(())
}

/// Indicator curves along reconstructed geodesics between consecutive
/// keyframes. Each segment contributes `steps` rows at `tau = l / steps`,
/// and the last segment adds its endpoint at global time 1.
pub fn dynamic_curves(
    seq: &SequenceDataset,
    keyframes: &[usize],
    cfg: &CurveConfig,
) -> Result<IndicatorTable> {
    cfg.validate()?;
    check_keyframes(keyframes, seq.len())?;
    let k = keyframes.len();
    let clouds: Vec<&PointCloud> = keyframes.iter().map(|&i| &seq.frames()[i]).collect();
    let global_ref = build_mtn(clouds[0], &cfg.mtn)?;
    let mut rows = Vec::new();
    for s in 0..k - 1 {
        let n = clouds[s].len().min(clouds[s + 1].len());
        let fit = |c: &PointCloud, tag: u64| -> Result<PointCloud> {
            if c.len() == n {
                Ok(c.clone())
            } else {
                resample(c, n, derive_seed(cfg.seed, tag))
            }
        };
        let a = fit(clouds[s], 2 * s as u64)?;
        let b = fit(clouds[s + 1], 2 * s as u64 + 1)?;
        let pa = build_mtn(&a, &cfg.mtn)?;
        let pb = build_mtn(&b, &cfg.mtn)?;
        let pi_v = solve_tpot(&pa, &pb, &cfg.tpot)?.coupling.pi_v;
        let reference = match cfg.reference {
            ReferenceMode::Global => &global_ref,
            ReferenceMode::Segment => &pa,
        };
        let last = if s + 2 == k { cfg.steps } else { cfg.steps - 1 };
        let segment_rows = (0..=last)
            .into_par_iter()
            .map(|l| {
                let t = l as f64 / cfg.steps as f64;
                let x = reconstruct_frame_with(&a, &b, &pi_v, t, cfg.matching)?;
                let net = build_mtn(&x, &cfg.mtn)?;
                indicator_row(
                    reference,
                    &net,
                    global_tau(s, l, cfg.steps, k),
                    x.frame_param(),
                    cfg,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        rows.extend(segment_rows);
    }
    Ok(IndicatorTable { rows })
}

/// `count` keyframe indices spread evenly over `len` frames, endpoints included.
pub fn equidistant_keyframes(len: usize, count: usize) -> Result<Vec<usize>> {
    if count < 2 || count > len {
        return Err(Error::InvalidParameter(format!(
            "cannot pick {count} keyframes from {len} frames"
        )));
    }
    Ok((0..count)
        .map(|i| ((i * (len - 1)) as f64 / (count - 1) as f64).round() as usize)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point_data::pairwise_sq_dist;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_cloud(rng: &mut ChaCha8Rng, n: usize, d: usize) -> PointCloud {
        PointCloud::new(DMatrix::from_fn(n, d, |_, _| rng.random_range(-1.0..1.0))).unwrap()
    }

    fn max_abs_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
        (a - b).amax()
    }

    #[test]
    fn argmax_matching_examples() {
        let id = DMatrix::<f64>::identity(3, 3) / 3.0;
        assert_eq!(extract_matching(&id).unwrap(), Matching::identity(3));
        let rev = DMatrix::from_fn(3, 3, |i, j| if i + j == 2 { 1.0 } else { 0.0 });
        assert_eq!(extract_matching(&rev).unwrap().targets(), &[2, 1, 0]);
        let row = DMatrix::from_row_slice(1, 3, &[0.3, 0.3, 0.4]);
        assert_eq!(extract_matching(&row).unwrap().targets(), &[2]);
        let tie = DMatrix::from_row_slice(1, 3, &[0.5, 0.5, 0.0]);
        assert_eq!(extract_matching(&tie).unwrap().targets(), &[0]);
        let dead = DMatrix::from_row_slice(2, 2, &[0.5, 0.0, 0.0, 0.0]);
        assert!(matches!(
            extract_matching(&dead),
            Err(Error::EmptyCouplingRow(1))
        ));
    }

    #[test]
    fn assignment_matching_is_injective() {
        // argmax would send both rows to column 0
        let pi = DMatrix::from_row_slice(2, 2, &[0.3, 0.2, 0.28, 0.22]);
        assert_eq!(extract_matching(&pi).unwrap().targets(), &[0, 0]);
        assert_eq!(assignment_matching(&pi).unwrap().targets(), &[0, 1]);
    }

    #[test]
    fn interpolation_examples() {
        let ka = SquaredDistanceMatrix::from_matrix(DMatrix::from_row_slice(
            2,
            2,
            &[0.0, 1.0, 1.0, 0.0],
        ))
        .unwrap();
        let kb = SquaredDistanceMatrix::from_matrix(DMatrix::from_row_slice(
            2,
            2,
            &[0.0, 9.0, 9.0, 0.0],
        ))
        .unwrap();
        let m = Matching::identity(2);
        assert_eq!(interpolate_sq_dist(&ka, &kb, &m, 0.0).unwrap(), ka);
        assert_eq!(interpolate_sq_dist(&ka, &kb, &m, 1.0).unwrap(), kb);
        assert_eq!(
            interpolate_sq_dist(&ka, &kb, &m, 0.5).unwrap().get(0, 1),
            5.0
        );
        assert!(interpolate_sq_dist(&ka, &kb, &m, 1.5).is_err());
    }

    #[test]
    fn mds_examples() {
        let tri =
            PointCloud::from_rows(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.5, 3f64.sqrt() / 2.0]])
                .unwrap();
        let k = pairwise_sq_dist(&tri);
        let out = classical_mds(&k, 2).unwrap();
        assert!(max_abs_diff(pairwise_sq_dist(&out).matrix(), k.matrix()) < 1e-9);

        let zero = SquaredDistanceMatrix::from_matrix(DMatrix::zeros(4, 4)).unwrap();
        assert!(classical_mds(&zero, 2)
            .unwrap()
            .coords()
            .iter()
            .all(|&x| x == 0.0));

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let c = random_cloud(&mut rng, 30, 2);
            let k = pairwise_sq_dist(&c);
            let back = pairwise_sq_dist(&classical_mds(&k, 2).unwrap());
            assert!((back.matrix() - k.matrix()).norm() < 1e-8);
        }
    }

    fn rmsd(a: &PointCloud, b: &PointCloud) -> f64 {
        ((a.coords() - b.coords()).norm_squared() / a.len() as f64).sqrt()
    }

    #[test]
    fn procrustes_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let r = random_cloud(&mut rng, 12, 2);
        let rot = PointCloud::new(DMatrix::from_fn(12, 2, |i, k| {
            let (x, y) = (r.coords()[(i, 0)], r.coords()[(i, 1)]);
            if k == 0 {
                -y
            } else {
                x
            }
        }))
        .unwrap();
        assert!(rmsd(&procrustes_align(&rot, &r).unwrap(), &r) < 1e-9);
        let shifted = PointCloud::new(DMatrix::from_fn(12, 2, |i, k| {
            r.coords()[(i, k)] + [5.0, -3.0][k]
        }))
        .unwrap();
        assert!(rmsd(&procrustes_align(&shifted, &r).unwrap(), &r) < 1e-12);
        assert!(rmsd(&procrustes_align(&r, &r).unwrap(), &r) < 1e-14);
    }

    #[test]
    fn procrustes_never_reflects() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let r = random_cloud(&mut rng, 10, 2);
        let mirrored = PointCloud::new(DMatrix::from_fn(10, 2, |i, k| {
            if k == 0 {
                -r.coords()[(i, 0)]
            } else {
                r.coords()[(i, 1)]
            }
        }))
        .unwrap();
        let out = procrustes_align(&mirrored, &r).unwrap();
        // distances are kept but handedness cannot be undone
        assert!(
            max_abs_diff(
                pairwise_sq_dist(&out).matrix(),
                pairwise_sq_dist(&r).matrix()
            ) < 1e-12
        );
        assert!(rmsd(&out, &r) > 1e-3);
    }

    #[test]
    fn constant_geodesic() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let a = random_cloud(&mut rng, 15, 2);
        let pi = DMatrix::<f64>::identity(15, 15) / 15.0;
        for t in [0.0, 0.3, 0.7, 1.0] {
            let x = reconstruct_frame(&a, &a, &pi, t).unwrap();
            assert!(rmsd(&x, &a) < 1e-9);
        }
    }

    #[test]
    fn global_tau_is_exact() {
        assert_eq!(global_tau(0, 0, 13, 4), 0.0);
        assert_eq!(global_tau(2, 13, 13, 4), 1.0);
        assert_eq!(global_tau(1, 0, 13, 4), 1.0 / 3.0);
        assert_eq!(equidistant_keyframes(51, 4).unwrap(), vec![0, 17, 33, 50]);
    }

    #[test]
    fn blended_incidence_is_fractional() {
        let wa = DMatrix::from_element(3, 1, 1.0);
        let wb = DMatrix::from_row_slice(3, 1, &[1.0, 0.0, 0.0]);
        let w = blend_incidence(
            &wa,
            &wb,
            &Matching::identity(3),
            &DMatrix::from_element(1, 1, 1.0),
            0.5,
        )
        .unwrap();
        assert_eq!(w.as_slice(), &[1.0, 0.5, 0.5]);
    }
}

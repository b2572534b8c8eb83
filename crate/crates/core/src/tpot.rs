//! Topological-pattern optimal transport between measure topological networks.
//!
//! Two couplings are optimized jointly: `pi_v` between the points and `pi_e`
//! between the persistence pairs, where each side's cycle set is augmented
//! with one diagonal slot so unmatched pairs can be sent to the diagonal.
//! With `p = 2` the three distortions are
//!
//! * `geom  = sum (k[i][j] - k'[i'][j'])^2 pi_v[i][i'] pi_v[j][j']`,
//! * `topo  = sum c(u, u') pi_e[u][u']` with `c` the squared distance between
//!   diagram points (or to the diagonal projection),
//! * `hyper = sum 1/2 |w[i][u] - w'[i'][u']|^2 pi_v[i][i'] pi_e[u][u']`, the
//!   incidences of diagonal slots being zero.
//!
//! The solver alternates entropic Sinkhorn steps: the point step uses the
//! linearization of `alpha geom + beta hyper` at the current couplings, the
//! cycle step solves the (exactly linear) cycle problem. For
//! squared-distance kernels `geom` is concave on the set of couplings, so
//! linearizing with its true gradient `2 L (x) pi_v` makes every step decrease
//! the regularized objective.

use std::path::Path;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::mtn::MeasureTopologicalNetwork;
use crate::point_data::{fmt_real, save_table};

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default)]
pub struct TpotConfig {
    /// Ground-cost exponent. Only 2 is supported.
    pub p: u32,
    /// Weight of `geom` against `topo`.
    pub alpha: f64,
    /// Weight of `hyper`.
    pub beta: f64,
    pub eps_v: f64,
    pub eps_e: f64,
    pub outer_iters: usize,
    pub sinkhorn_iters: usize,
    /// Outer stopping threshold on the change of the regularized objective.
    pub tol: f64,
    /// Sinkhorn stops once the summed marginal violation drops below this.
    pub sinkhorn_tol: f64,
}

impl Default for TpotConfig {
    fn default() -> Self {
        Self {
            p: 2,
            alpha: 0.5,
            beta: 1.0,
            eps_v: 0.003,
            eps_e: 0.01,
            outer_iters: 50,
            sinkhorn_iters: 2000,
            tol: 1e-7,
            sinkhorn_tol: 1e-6,
        }
    }
}

impl TpotConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if self.p != 2 {
            return bad(format!("only p = 2 is supported, got {}", self.p));
        }
        if !(0.0..=1.0).contains(&self.alpha) {
            return bad(format!("alpha must lie in [0, 1], got {}", self.alpha));
        }
        if !(self.beta >= 0.0 && self.beta.is_finite()) {
            return bad(format!("beta must be >= 0, got {}", self.beta));
        }
        for (name, v) in [
            ("eps_v", self.eps_v),
            ("eps_e", self.eps_e),
            ("tol", self.tol),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return bad(format!("{name} must be > 0, got {v}"));
            }
        }
        if !(self.sinkhorn_tol > 0.0) {
            return bad(format!(
                "sinkhorn_tol must be > 0, got {}",
                self.sinkhorn_tol
            ));
        }
        if self.outer_iters == 0 || self.sinkhorn_iters == 0 {
            return bad("iteration counts must be >= 1".into());
        }
        Ok(())
    }
}

/// Point coupling and augmented cycle coupling. The last row and column of
/// `pi_e` are the diagonal slots.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingPair {
    pub pi_v: DMatrix<f64>,
    pub pi_e: DMatrix<f64>,
}

/// Unweighted distortions and the weighted objective
/// `alpha geom + (1 - alpha) topo + beta hyper`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DistortionBreakdown {
    pub geom: f64,
    pub topo: f64,
    pub hyper: f64,
    pub objective: f64,
}

impl DistortionBreakdown {
    pub fn new(geom: f64, topo: f64, hyper: f64, alpha: f64, beta: f64) -> Self {
        Self {
            geom,
            topo,
            hyper,
            objective: alpha * geom + (1.0 - alpha) * topo + beta * hyper,
        }
    }
}

#[derive(Debug, Clone)]
pub struct TpotSolution {
    pub coupling: CouplingPair,
    pub distortion: DistortionBreakdown,
    /// The outer loop met `tol` within `outer_iters`.
    pub converged: bool,
    /// The final Sinkhorn calls met `sinkhorn_tol`. Plans are rounded onto
    /// their marginals either way.
    pub sinkhorn_converged: bool,
    pub outer_iterations: usize,
    /// Regularized objective (in rescaled kernel units) after each outer iteration.
    pub history: Vec<f64>,
    /// Largest summed marginal violation seen before rounding.
    pub max_sinkhorn_error: f64,
    /// Largest absolute marginal violation of the returned couplings.
    pub max_marginal_violation: f64,
    /// Joint maximum used to rescale the kernels.
    pub kernel_scale: f64,
}

/// Augmented cycle measures. Each diagonal slot carries the total mass of the
/// opposite diagram (1 when it has cycles, 0 otherwise), so both sides have
/// equal total mass.
pub fn augmented_cycle_marginals(
    p: &MeasureTopologicalNetwork,
    q: &MeasureTopologicalNetwork,
) -> (DVector<f64>, DVector<f64>) {
    let (m, mq) = (p.n_cycles(), q.n_cycles());
    let mass = |k: usize| if k > 0 { 1.0 } else { 0.0 };
    let mut a = DVector::zeros(m + 1);
    a.rows_mut(0, m).copy_from(p.nu());
    a[m] = mass(mq);
    let mut b = DVector::zeros(mq + 1);
    b.rows_mut(0, mq).copy_from(q.nu());
    b[mq] = mass(m);
    (a, b)
}

/// `(M+1) x (M'+1)` ground cost between augmented diagrams. A pair against a
/// diagonal slot costs `(d - b)^2 / 2`; the corner costs 0.
pub fn topo_cost_matrix(diag_a: &DMatrix<f64>, diag_b: &DMatrix<f64>) -> DMatrix<f64> {
    let (m, mq) = (diag_a.nrows(), diag_b.nrows());
    let to_diag = |d: &DMatrix<f64>, u: usize| {
        let l = d[(u, 1)] - d[(u, 0)];
        0.5 * l * l
    };
    DMatrix::from_fn(m + 1, mq + 1, |u, v| match (u < m, v < mq) {
        (true, true) => {
            let db = diag_a[(u, 0)] - diag_b[(v, 0)];
            let dd = diag_a[(u, 1)] - diag_b[(v, 1)];
            db * db + dd * dd
        }
        (true, false) => to_diag(diag_a, u),
        (false, true) => to_diag(diag_b, v),
        (false, false) => 0.0,
    })
}

/// `(L (x) C)[i][i'] = sum_{j,j'} (ka[i][j] - kb[i'][j'])^2 C[j][j']`, via
/// `ka^2 r 1^T + 1 (kb^2 c)^T - 2 ka C kb^T` with `r`, `c` the marginals of `C`.
pub fn geom_cost_apply(
    ka: &DMatrix<f64>,
    kb: &DMatrix<f64>,
    c: &DMatrix<f64>,
) -> Result<DMatrix<f64>> {
    if !ka.is_square() || !kb.is_square() || c.shape() != (ka.nrows(), kb.nrows()) {
        return Err(Error::Shape(format!(
            "kernels {:?}, {:?} do not fit coupling {:?}",
            ka.shape(),
            kb.shape(),
            c.shape()
        )));
    }
    let r = c.column_sum();
    let cs = c.row_sum().transpose();
    let left = ka.component_mul(ka) * r;
    let right = kb.component_mul(kb) * cs;
    let mut out = ka * c * kb.transpose();
    out *= -2.0;
    for j in 0..out.ncols() {
        for i in 0..out.nrows() {
            out[(i, j)] += left[i] + right[j];
        }
    }
    Ok(out)
}

/// Appends the all-zero incidence column of the diagonal slot.
pub fn augment_incidence(omega: &DMatrix<f64>) -> DMatrix<f64> {
    omega.clone().insert_column(omega.ncols(), 0.0)
}

fn check_shape(got: (usize, usize), want: (usize, usize), what: &str) -> Result<()> {
    if got != want {
        return Err(Error::Shape(format!(
            "{what} is {got:?}, incidences need {want:?}"
        )));
    }
    Ok(())
}

/// Point-side hyper cost for a fixed cycle coupling:
/// `H_v[i][i'] = 1/2 sum_{u,u'} (w[i][u] - w'[i'][u'])^2 pi_e[u][u']`.
/// The incidences must already carry their diagonal column.
pub fn hyper_cost_apply(
    wa: &DMatrix<f64>,
    wb: &DMatrix<f64>,
    pi_e: &DMatrix<f64>,
) -> Result<DMatrix<f64>> {
    check_shape(pi_e.shape(), (wa.ncols(), wb.ncols()), "pi_e")?;
    let r = pi_e.column_sum();
    let c = pi_e.row_sum().transpose();
    let left = wa.component_mul(wa) * r;
    let right = wb.component_mul(wb) * c;
    let mut out = wa * pi_e * wb.transpose();
    out *= -1.0;
    for j in 0..out.ncols() {
        for i in 0..out.nrows() {
            out[(i, j)] += 0.5 * (left[i] + right[j]);
        }
    }
    Ok(out)
}

/// Cycle-side hyper cost for a fixed point coupling:
/// `H_e[u][u'] = 1/2 sum_{i,i'} (w[i][u] - w'[i'][u'])^2 pi_v[i][i']`.
pub fn hyper_cost_cycles(
    wa: &DMatrix<f64>,
    wb: &DMatrix<f64>,
    pi_v: &DMatrix<f64>,
) -> Result<DMatrix<f64>> {
    check_shape(pi_v.shape(), (wa.nrows(), wb.nrows()), "pi_v")?;
    let r = pi_v.column_sum();
    let c = pi_v.row_sum().transpose();
    let left = wa.component_mul(wa).transpose() * r;
    let right = wb.component_mul(wb).transpose() * c;
    let mut out = wa.transpose() * pi_v * wb;
    out *= -1.0;
    for j in 0..out.ncols() {
        for i in 0..out.nrows() {
            out[(i, j)] += 0.5 * (left[i] + right[j]);
        }
    }
    Ok(out)
}

fn frobenius_dot(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

/// Result of one entropic transport solve.
#[derive(Debug, Clone)]
pub struct SinkhornOutput {
    /// Plan after rounding onto the exact marginals.
    pub plan: DMatrix<f64>,
    pub iterations: usize,
    /// Summed marginal violation before rounding.
    pub error: f64,
    pub converged: bool,
}

/// Dual potentials carried between calls for warm starts.
#[derive(Debug, Clone, Default)]
pub struct Potentials {
    f: Vec<f64>,
    g: Vec<f64>,
}

fn log_sum_exp(values: impl Iterator<Item = f64> + Clone) -> f64 {
    let m = values.clone().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + values.map(|v| (v - m).exp()).sum::<f64>().ln()
}

/// Entropic OT `min <C, P> + eps sum P (ln P - 1)` with marginals `a`, `b`,
/// solved by Sinkhorn scaling stabilized in the log domain (potentials are
/// absorbed whenever the scalings leave a safe range). Zero-mass rows and
/// columns are excluded. The returned plan is rounded onto the marginals.
pub fn sinkhorn_log(
    cost: &DMatrix<f64>,
    a: &DVector<f64>,
    b: &DVector<f64>,
    eps: f64,
    max_iters: usize,
    tol: f64,
    warm: &mut Potentials,
) -> Result<SinkhornOutput> {
    let (n, m) = cost.shape();
    if a.len() != n || b.len() != m {
        return Err(Error::Shape(format!(
            "cost {n}x{m} does not match marginals {} and {}",
            a.len(),
            b.len()
        )));
    }
    if cost.iter().any(|c| !c.is_finite()) {
        return Err(Error::Numerical("non-finite transport cost".into()));
    }
    let rows: Vec<usize> = (0..n).filter(|&i| a[i] > 0.0).collect();
    let cols: Vec<usize> = (0..m).filter(|&j| b[j] > 0.0).collect();
    let mut plan = DMatrix::zeros(n, m);
    if rows.is_empty() || cols.is_empty() {
        return Ok(SinkhornOutput {
            plan,
            iterations: 0,
            error: 0.0,
            converged: true,
        });
    }
    let (nr, nc) = (rows.len(), cols.len());
    // Row-major copy of the active block.
    let c: Vec<f64> = rows
        .iter()
        .flat_map(|&i| cols.iter().map(move |&j| cost[(i, j)]))
        .collect();
    let la: Vec<f64> = rows.iter().map(|&i| a[i].ln()).collect();
    let lb: Vec<f64> = cols.iter().map(|&j| b[j].ln()).collect();
    let aa: Vec<f64> = rows.iter().map(|&i| a[i]).collect();
    let bb: Vec<f64> = cols.iter().map(|&j| b[j]).collect();
    if warm.f.len() != n || warm.g.len() != m {
        warm.f = vec![0.0; n];
        warm.g = vec![0.0; m];
    }
    let mut f: Vec<f64> = rows.iter().map(|&i| warm.f[i]).collect();
    let mut g: Vec<f64> = cols.iter().map(|&j| warm.g[j]).collect();

    let log_update = |f: &mut [f64], g: &mut [f64]| {
        for r in 0..nr {
            let row = &c[r * nc..(r + 1) * nc];
            f[r] = eps * la[r]
                - eps * log_sum_exp(row.iter().zip(g.iter()).map(|(&cij, &gj)| (gj - cij) / eps));
        }
        for s in 0..nc {
            g[s] = eps * lb[s] - eps * log_sum_exp((0..nr).map(|r| (f[r] - c[r * nc + s]) / eps));
        }
    };
    let kernel = |f: &[f64], g: &[f64]| -> Vec<f64> {
        let mut k = vec![0.0; nr * nc];
        for r in 0..nr {
            for s in 0..nc {
                k[r * nc + s] = ((f[r] + g[s] - c[r * nc + s]) / eps).exp();
            }
        }
        k
    };

    log_update(&mut f, &mut g);
    let mut k = kernel(&f, &g);
    let (mut u, mut v) = (vec![1.0; nr], vec![1.0; nc]);
    let mut kv = vec![0.0; nr];
    let mut ktu = vec![0.0; nc];
    const BOUND: f64 = 1e50;
    let mut iterations = 0;
    let mut error = f64::INFINITY;
    while iterations < max_iters {
        iterations += 1;
        for r in 0..nr {
            let row = &k[r * nc..(r + 1) * nc];
            kv[r] = row.iter().zip(&v).map(|(x, y)| x * y).sum();
        }
        let mut degenerate = false;
        for r in 0..nr {
            u[r] = aa[r] / kv[r];
            degenerate |= !u[r].is_finite() || u[r] == 0.0;
        }
        ktu.iter_mut().for_each(|x| *x = 0.0);
        for r in 0..nr {
            let ur = u[r];
            for (s, x) in k[r * nc..(r + 1) * nc].iter().enumerate() {
                ktu[s] += x * ur;
            }
        }
        for s in 0..nc {
            v[s] = bb[s] / ktu[s];
            degenerate |= !v[s].is_finite() || v[s] == 0.0;
        }
        let out_of_range = u
            .iter()
            .chain(&v)
            .any(|&x| !(1.0 / BOUND..=BOUND).contains(&x));
        if degenerate || out_of_range {
            if !degenerate {
                for r in 0..nr {
                    f[r] += eps * u[r].ln();
                }
                for s in 0..nc {
                    g[s] += eps * v[s].ln();
                }
            }
            // An exact log-domain sweep re-centers the potentials.
            log_update(&mut f, &mut g);
            k = kernel(&f, &g);
            u.iter_mut().for_each(|x| *x = 1.0);
            v.iter_mut().for_each(|x| *x = 1.0);
            continue;
        }
        if iterations % 10 == 0 || iterations == max_iters {
            // Columns are exact after the v update; measure the rows.
            error = 0.0;
            for r in 0..nr {
                let row = &k[r * nc..(r + 1) * nc];
                let s: f64 = row.iter().zip(&v).map(|(x, y)| x * y).sum();
                error += (u[r] * s - aa[r]).abs();
            }
            if error < tol {
                break;
            }
        }
    }
    for r in 0..nr {
        f[r] += eps * u[r].ln();
    }
    for s in 0..nc {
        g[s] += eps * v[s].ln();
    }
    if f.iter().chain(&g).any(|x| !x.is_finite()) {
        return Err(Error::Numerical("Sinkhorn potentials diverged".into()));
    }
    for (r, &i) in rows.iter().enumerate() {
        warm.f[i] = f[r];
        for (s, &j) in cols.iter().enumerate() {
            plan[(i, j)] = ((f[r] + g[s] - c[r * nc + s]) / eps).exp();
        }
    }
    for (s, &j) in cols.iter().enumerate() {
        warm.g[j] = g[s];
    }
    if !error.is_finite() {
        error = marginal_violation_l1(&plan, a, b);
    }
    let converged = error < tol;
    Ok(SinkhornOutput {
        plan: round_to_marginals(&plan, a, b),
        iterations,
        error,
        converged,
    })
}

fn marginal_violation_l1(p: &DMatrix<f64>, a: &DVector<f64>, b: &DVector<f64>) -> f64 {
    let r = p.column_sum();
    let c = p.row_sum().transpose();
    (r - a).abs().sum() + (c - b).abs().sum()
}

/// Largest absolute deviation of the row and column sums of `p` from `a`, `b`.
pub fn max_marginal_violation(p: &DMatrix<f64>, a: &DVector<f64>, b: &DVector<f64>) -> f64 {
    let r = p.column_sum();
    let c = p.row_sum().transpose();
    (r - a).amax().max((c - b).amax())
}

/// Projects a nonnegative plan onto the transport polytope of `(a, b)`:
/// rows and columns are scaled down to their targets, then the missing mass
/// is added back as a rank-one correction.
pub fn round_to_marginals(p: &DMatrix<f64>, a: &DVector<f64>, b: &DVector<f64>) -> DMatrix<f64> {
    let mut x = p.clone();
    let r = x.column_sum();
    for i in 0..x.nrows() {
        let s = if r[i] > a[i] { a[i] / r[i] } else { 1.0 };
        x.row_mut(i).scale_mut(s);
    }
    let c = x.row_sum();
    for j in 0..x.ncols() {
        let s = if c[j] > b[j] { b[j] / c[j] } else { 1.0 };
        x.column_mut(j).scale_mut(s);
    }
    // Deficits are nonnegative up to rounding.
    let er = (a - x.column_sum()).map(|v| v.max(0.0));
    let ec = (b - x.row_sum().transpose()).map(|v| v.max(0.0));
    let total = er.sum();
    if total > 0.0 {
        x += er * ec.transpose() / total;
    }
    x
}

fn neg_entropy(p: &DMatrix<f64>) -> f64 {
    p.iter().filter(|&&x| x > 0.0).map(|&x| x * x.ln()).sum()
}

/// Plugs fixed couplings into the three distortions, in original units and
/// without regularization.
pub fn evaluate_distortions(
    p: &MeasureTopologicalNetwork,
    q: &MeasureTopologicalNetwork,
    coupling: &CouplingPair,
    alpha: f64,
    beta: f64,
) -> Result<DistortionBreakdown> {
    let pi_v = &coupling.pi_v;
    let pi_e = &coupling.pi_e;
    if pi_e.shape() != (p.n_cycles() + 1, q.n_cycles() + 1) {
        return Err(Error::Shape(format!(
            "pi_e is {:?}, expected {}x{}",
            pi_e.shape(),
            p.n_cycles() + 1,
            q.n_cycles() + 1
        )));
    }
    let geom = frobenius_dot(&geom_cost_apply(p.kernel(), q.kernel(), pi_v)?, pi_v);
    let topo = frobenius_dot(&topo_cost_matrix(p.diagram(), q.diagram()), pi_e);
    let wa = augment_incidence(p.incidence());
    let wb = augment_incidence(q.incidence());
    let hyper = frobenius_dot(&hyper_cost_apply(&wa, &wb, pi_e)?, pi_v);
    Ok(DistortionBreakdown::new(
        geom.max(0.0),
        topo.max(0.0),
        hyper.max(0.0),
        alpha,
        beta,
    ))
}

/// Alternating entropic solve of TpOT between `p` and `q`.
pub fn solve_tpot(
    p: &MeasureTopologicalNetwork,
    q: &MeasureTopologicalNetwork,
    cfg: &TpotConfig,
) -> Result<TpotSolution> {
    cfg.validate()?;
    let scale = p.kernel().amax().max(q.kernel().amax());
    let scale = if scale > 0.0 { scale } else { 1.0 };
    let ka = p.kernel() / scale;
    let kb = q.kernel() / scale;
    let (mu, mu_q) = (p.mu(), q.mu());
    let (nu_bar, nu_bar_q) = augmented_cycle_marginals(p, q);
    let c_topo = topo_cost_matrix(p.diagram(), q.diagram());
    let wa = augment_incidence(p.incidence());
    let wb = augment_incidence(q.incidence());

    let mut pi_v = mu * mu_q.transpose();
    let total = nu_bar.sum();
    let mut pi_e = if total > 0.0 {
        &nu_bar * nu_bar_q.transpose() / total
    } else {
        DMatrix::zeros(nu_bar.len(), nu_bar_q.len())
    };

    let (alpha, beta) = (cfg.alpha, cfg.beta);
    let (mut warm_v, mut warm_e) = (Potentials::default(), Potentials::default());
    let mut history = Vec::new();
    let mut max_err: f64 = 0.0;
    let mut max_violation: f64 = 0.0;
    let mut outer_converged = false;
    let mut last_sinkhorn_ok = true;
    let mut outer = 0;
    while outer < cfg.outer_iters {
        outer += 1;
        let mut cv = geom_cost_apply(&ka, &kb, &pi_v)? * (2.0 * alpha);
        if beta > 0.0 {
            cv += hyper_cost_apply(&wa, &wb, &pi_e)? * beta;
        }
        let sv = sinkhorn_log(
            &cv,
            mu,
            mu_q,
            cfg.eps_v,
            cfg.sinkhorn_iters,
            cfg.sinkhorn_tol,
            &mut warm_v,
        )?;
        pi_v = sv.plan;

        let mut ce = &c_topo * (1.0 - alpha);
        if beta > 0.0 {
            ce += hyper_cost_cycles(&wa, &wb, &pi_v)? * beta;
        }
        let se = sinkhorn_log(
            &ce,
            &nu_bar,
            &nu_bar_q,
            cfg.eps_e,
            cfg.sinkhorn_iters,
            cfg.sinkhorn_tol,
            &mut warm_e,
        )?;
        pi_e = se.plan;

        max_err = max_err.max(sv.error).max(se.error);
        max_violation = max_violation
            .max(max_marginal_violation(&pi_v, mu, mu_q))
            .max(max_marginal_violation(&pi_e, &nu_bar, &nu_bar_q));
        last_sinkhorn_ok = sv.converged && se.converged;

        let geom_s = frobenius_dot(&geom_cost_apply(&ka, &kb, &pi_v)?, &pi_v);
        let topo = frobenius_dot(&c_topo, &pi_e);
        let hyper = frobenius_dot(&hyper_cost_apply(&wa, &wb, &pi_e)?, &pi_v);
        let reg = alpha * geom_s
            + (1.0 - alpha) * topo
            + beta * hyper
            + cfg.eps_v * neg_entropy(&pi_v)
            + cfg.eps_e * neg_entropy(&pi_e);
        if !reg.is_finite() {
            return Err(Error::Numerical("TpOT objective is not finite".into()));
        }
        let done = history
            .last()
            .is_some_and(|&prev: &f64| (prev - reg).abs() < cfg.tol);
        history.push(reg);
        if done {
            outer_converged = true;
            break;
        }
    }
    let coupling = CouplingPair { pi_v, pi_e };
    let distortion = evaluate_distortions(p, q, &coupling, alpha, beta)?;
    Ok(TpotSolution {
        coupling,
        distortion,
        converged: outer_converged,
        sinkhorn_converged: last_sinkhorn_ok,
        outer_iterations: outer,
        history,
        max_sinkhorn_error: max_err,
        max_marginal_violation: max_violation,
        kernel_scale: scale,
    })
}

/// Writes the nonzero entries of a coupling as `i,j,mass`.
pub fn save_coupling_csv<P: AsRef<Path>>(path: P, coupling: &DMatrix<f64>) -> Result<()> {
    let header = ["i", "j", "mass"].map(String::from);
    let mut rows = Vec::new();
    for i in 0..coupling.nrows() {
        for j in 0..coupling.ncols() {
            let x = coupling[(i, j)];
            if x != 0.0 {
                rows.push(vec![i.to_string(), j.to_string(), fmt_real(x)]);
            }
        }
    }
    save_table(path, &header, &rows)
}

//! Independent oracles for the library's numerical contracts.
//!
//! Every check here recomputes its reference value from first principles
//! (dense reductions, brute-force sums, direct entropy formulas) rather than
//! through the routines under test. `selftest` runs them all; the acceptance
//! suite calls them individually.

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use topotip::entropy::{he_edge, he_sym, he_vertex, spectral_entropy, IncidenceMatrix};
use topotip::geodesic::{classical_mds, extract_matching, reconstruct_frame, IndicatorRow};
use topotip::mtn::{build_mtn, MeasureTopologicalNetwork, MtnConfig};
use topotip::persistence::{
    build_vr_filtration, compute_persistence, rips_persistence, PersistencePair,
};
use topotip::point_data::{pairwise_sq_dist, PointCloud, SquaredDistanceMatrix};
use topotip::tpot::{evaluate_distortions, solve_tpot, CouplingPair, TpotConfig};

/// Outcome of one check.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name,
            passed,
            detail: detail.into(),
        }
    }

    pub fn line(&self) -> String {
        format!(
            "{} {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------------
// Persistence

/// A pair in canonical form for comparison: `(dim, birth, death, support)`.
pub type CanonPair = (usize, f64, f64, Vec<usize>);

fn canon(pairs: &[PersistencePair]) -> Vec<CanonPair> {
    let mut v: Vec<CanonPair> = pairs
        .iter()
        .map(|p| (p.dim, p.birth, p.death, p.representative.clone()))
        .collect();
    sort_canon(&mut v);
    v
}

fn sort_canon(v: &mut [CanonPair]) {
    v.sort_by(|a, b| {
        a.0.cmp(&b.0)
            .then(a.2.total_cmp(&b.2))
            .then(a.1.total_cmp(&b.1))
            .then(a.3.cmp(&b.3))
    });
}

/// Full Rips persistence (H0 and H1) by the textbook dense reduction: every
/// simplex up to dimension 2, sorted by (value, dimension, vertices), boundary
/// columns over Z/2 reduced left to right. No clearing, no twist, no implicit
/// coboundaries. Representatives are the vertex support of the reduced death
/// column.
pub fn naive_persistence(points: &[[f64; 2]]) -> Vec<CanonPair> {
    let n = points.len();
    let dist = |i: usize, j: usize| {
        let (dx, dy) = (points[i][0] - points[j][0], points[i][1] - points[j][1]);
        (dx * dx + dy * dy).sqrt()
    };
    let mut simplices: Vec<(f64, Vec<usize>)> = (0..n).map(|i| (0.0, vec![i])).collect();
    for i in 0..n {
        for j in i + 1..n {
            simplices.push((dist(i, j), vec![i, j]));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let v = dist(i, j).max(dist(i, k)).max(dist(j, k));
                simplices.push((v, vec![i, j, k]));
            }
        }
    }
    simplices.sort_by(|a, b| {
        a.0.total_cmp(&b.0)
            .then(a.1.len().cmp(&b.1.len()))
            .then(a.1.cmp(&b.1))
    });
    let index = |s: &[usize]| simplices.iter().position(|(_, t)| t == s).unwrap();

    let total = simplices.len();
    let mut cols: Vec<Vec<bool>> = simplices
        .iter()
        .map(|(_, s)| {
            let mut c = vec![false; total];
            if s.len() > 1 {
                for skip in 0..s.len() {
                    let face: Vec<usize> = s
                        .iter()
                        .enumerate()
                        .filter(|&(k, _)| k != skip)
                        .map(|(_, &v)| v)
                        .collect();
                    c[index(&face)] = true;
                }
            }
            c
        })
        .collect();
    let low = |c: &[bool]| c.iter().rposition(|&x| x);

    let mut owner: Vec<Option<usize>> = vec![None; total];
    let mut paired = vec![false; total];
    let mut pairs = Vec::new();
    for j in 0..total {
        while let Some(l) = low(&cols[j]) {
            match owner[l] {
                Some(k) => {
                    let add = cols[k].clone();
                    for (x, y) in cols[j].iter_mut().zip(add) {
                        *x ^= y;
                    }
                }
                None => break,
            }
        }
        if let Some(l) = low(&cols[j]) {
            owner[l] = Some(j);
            paired[l] = true;
            paired[j] = true;
            let (birth, death) = (simplices[l].0, simplices[j].0);
            if death > birth {
                let dim = simplices[l].1.len() - 1;
                let rep = if dim == 1 {
                    let support: BTreeSet<usize> = cols[j]
                        .iter()
                        .enumerate()
                        .filter(|&(_, &x)| x)
                        .flat_map(|(e, _)| simplices[e].1.clone())
                        .collect();
                    support.into_iter().collect()
                } else {
                    Vec::new()
                };
                pairs.push((dim, birth, death, rep));
            }
        }
    }
    for (s, (v, verts)) in simplices.iter().enumerate() {
        let dim = verts.len() - 1;
        if !paired[s] && dim <= 1 {
            pairs.push((dim, *v, f64::INFINITY, Vec::new()));
        }
    }
    sort_canon(&mut pairs);
    pairs
}

fn pairs_match(a: &[CanonPair], b: &[CanonPair], tol: f64) -> bool {
    let close = |x: f64, y: f64| x == y || (x - y).abs() <= tol;
    a.len() == b.len()
        && a.iter()
            .zip(b)
            .all(|(p, q)| p.0 == q.0 && close(p.1, q.1) && close(p.2, q.2) && p.3 == q.3)
}

fn random_configuration(rng: &mut ChaCha8Rng, k: usize) -> Vec<[f64; 2]> {
    let n = rng.random_range(3..=7);
    if k.is_multiple_of(2) {
        (0..n)
            .map(|_| [rng.random_range(0.0..1.0), rng.random_range(0.0..1.0)])
            .collect()
    } else {
        // integer lattice points: many exactly tied distances
        let mut cells: Vec<(i32, i32)> = (0..4).flat_map(|x| (0..4).map(move |y| (x, y))).collect();
        cells.shuffle(rng);
        cells[..n]
            .iter()
            .map(|&(x, y)| [x as f64, y as f64])
            .collect()
    }
}

/// Both persistence routes against the dense oracle on `count` random
/// configurations of at most 7 points.
pub fn persistence_oracle(seed: u64, count: usize) -> Check {
    let mut rng = rng(seed);
    let mut failures = Vec::new();
    for k in 0..count {
        let pts = random_configuration(&mut rng, k);
        let rows: Vec<Vec<f64>> = pts.iter().map(|p| p.to_vec()).collect();
        let d = pairwise_sq_dist(&PointCloud::from_rows(&rows).unwrap());
        let expect = naive_persistence(&pts);
        let explicit = compute_persistence(&build_vr_filtration(&d, 2, f64::INFINITY).unwrap());
        let implicit = rips_persistence(&d, f64::INFINITY).unwrap();
        if !pairs_match(&canon(explicit.pairs()), &expect, 1e-12)
            || !pairs_match(&canon(implicit.pairs()), &expect, 1e-12)
        {
            failures.push(k);
        }
    }
    Check::new(
        "persistence matches the dense reduction",
        failures.is_empty(),
        format!(
            "{} of {count} configurations differ {failures:?}",
            failures.len()
        ),
    )
}

/// The unit square has exactly one H1 pair, born at 1 and dying at sqrt 2.
pub fn unit_square() -> Check {
    let rows = vec![
        vec![0.0, 0.0],
        vec![1.0, 0.0],
        vec![1.0, 1.0],
        vec![0.0, 1.0],
    ];
    let d = pairwise_sq_dist(&PointCloud::from_rows(&rows).unwrap());
    let diag = rips_persistence(&d, f64::INFINITY).unwrap();
    let h1: Vec<&PersistencePair> = diag.dim_pairs(1).collect();
    let ok = h1.len() == 1
        && (h1[0].birth - 1.0).abs() <= 1e-12
        && (h1[0].death - 2f64.sqrt()).abs() <= 1e-12
        && h1[0].representative == vec![0, 1, 2, 3];
    let got: Vec<(f64, f64)> = h1.iter().map(|p| (p.birth, p.death)).collect();
    Check::new("unit square H1 = (1, sqrt 2)", ok, format!("{got:?}"))
}

// ---------------------------------------------------------------------------
// Transport

fn uniform_points(rng: &mut ChaCha8Rng, n: usize) -> PointCloud {
    PointCloud::new(DMatrix::from_fn(n, 2, |_, _| rng.random_range(0.0..1.0))).unwrap()
}

fn random_network(rng: &mut ChaCha8Rng, n: usize, m: usize) -> MeasureTopologicalNetwork {
    let d = pairwise_sq_dist(&uniform_points(rng, n));
    let mut dg = DMatrix::zeros(m, 2);
    for r in 0..m {
        let b = rng.random_range(0.0..1.0);
        dg[(r, 0)] = b;
        dg[(r, 1)] = b + rng.random_range(0.05..1.0);
    }
    let mut w = DMatrix::from_fn(n, m, |_, _| if rng.random_bool(0.5) { 1.0 } else { 0.0 });
    for e in 0..m {
        w[(rng.random_range(0..n), e)] = 1.0;
    }
    MeasureTopologicalNetwork::from_parts(d, dg, w).unwrap()
}

/// Random nonnegative plan pushed onto the given marginals by plain iterative
/// proportional fitting.
fn random_plan(rng: &mut ChaCha8Rng, a: &[f64], b: &[f64]) -> DMatrix<f64> {
    let mut p = DMatrix::from_fn(a.len(), b.len(), |_, _| rng.random_range(0.05..1.0));
    for _ in 0..500 {
        for (i, &ai) in a.iter().enumerate() {
            let s = p.row(i).sum();
            if s > 0.0 {
                p.row_mut(i).scale_mut(ai / s);
            }
        }
        for (j, &bj) in b.iter().enumerate() {
            let s = p.column(j).sum();
            if s > 0.0 {
                p.column_mut(j).scale_mut(bj / s);
            }
        }
    }
    p
}

fn augmented(m: usize, opposite: usize) -> Vec<f64> {
    let mut v = vec![1.0 / m as f64; m];
    v.push(if opposite > 0 { 1.0 } else { 0.0 });
    v
}

/// Unweighted `(geom, topo, hyper)` by direct quadruple and double sums.
pub fn brute_force_distortions(
    p: &MeasureTopologicalNetwork,
    q: &MeasureTopologicalNetwork,
    c: &CouplingPair,
) -> (f64, f64, f64) {
    let (ka, kb) = (p.kernel(), q.kernel());
    let (n, nq) = (p.n_points(), q.n_points());
    let (m, mq) = (p.n_cycles(), q.n_cycles());
    let (pv, pe) = (&c.pi_v, &c.pi_e);
    let mut geom = 0.0;
    for i in 0..n {
        for j in 0..n {
            for a in 0..nq {
                for b in 0..nq {
                    geom += (ka[(i, j)] - kb[(a, b)]).powi(2) * pv[(i, a)] * pv[(j, b)];
                }
            }
        }
    }
    let (da, db) = (p.diagram(), q.diagram());
    let to_diag = |d: &DMatrix<f64>, u: usize| (d[(u, 1)] - d[(u, 0)]).powi(2) / 2.0;
    let mut topo = 0.0;
    for u in 0..=m {
        for v in 0..=mq {
            let cost = match (u < m, v < mq) {
                (true, true) => {
                    (da[(u, 0)] - db[(v, 0)]).powi(2) + (da[(u, 1)] - db[(v, 1)]).powi(2)
                }
                (true, false) => to_diag(da, u),
                (false, true) => to_diag(db, v),
                (false, false) => 0.0,
            };
            topo += cost * pe[(u, v)];
        }
    }
    let (wa, wb) = (p.incidence(), q.incidence());
    let mut hyper = 0.0;
    for i in 0..n {
        for a in 0..nq {
            for u in 0..=m {
                for v in 0..=mq {
                    let x = if u < m { wa[(i, u)] } else { 0.0 };
                    let y = if v < mq { wb[(a, v)] } else { 0.0 };
                    hyper += 0.5 * (x - y).powi(2) * pv[(i, a)] * pe[(u, v)];
                }
            }
        }
    }
    (geom, topo, hyper)
}

/// `evaluate_distortions` against the brute-force sums on random networks
/// with at most 4 points and 2 cycles.
pub fn distortion_oracle(seed: u64, count: usize) -> Check {
    let mut rng = rng(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..count {
        let (n, nq) = (rng.random_range(1..=4), rng.random_range(1..=4));
        let (m, mq) = (rng.random_range(0..=2), rng.random_range(0..=2));
        let p = random_network(&mut rng, n, m);
        let q = random_network(&mut rng, nq, mq);
        let pi_v = random_plan(
            &mut rng,
            &vec![1.0 / n as f64; n],
            &vec![1.0 / nq as f64; nq],
        );
        let pi_e = random_plan(&mut rng, &augmented(m, mq), &augmented(mq, m));
        let c = CouplingPair { pi_v, pi_e };
        let got = evaluate_distortions(&p, &q, &c, 0.5, 1.0).unwrap();
        let (g, t, h) = brute_force_distortions(&p, &q, &c);
        for (x, y) in [(got.geom, g), (got.topo, t), (got.hyper, h)] {
            worst = worst.max((x - y).abs());
        }
        let objective = 0.5 * g + 0.5 * t + h;
        worst = worst.max((got.objective - objective).abs());
    }
    Check::new(
        "distortions match brute-force sums",
        worst < 1e-10,
        format!("max abs error {worst:.2e} over {count} instances"),
    )
}

/// Self-distance of random unit-scale networks stays within `10 eps_v`.
pub fn self_distance(seed: u64, count: usize) -> Check {
    let mut rng = rng(seed);
    let cfg = TpotConfig::default();
    let mut worst: f64 = 0.0;
    for _ in 0..count {
        let n = rng.random_range(8..=24);
        let cloud = if rng.random_bool(0.5) {
            uniform_points(&mut rng, n)
        } else {
            let rows: Vec<Vec<f64>> = (0..n)
                .map(|_| {
                    let t = rng.random_range(0.0..std::f64::consts::TAU);
                    let r = rng.random_range(0.85..1.15);
                    vec![r * t.cos(), r * t.sin()]
                })
                .collect();
            PointCloud::from_rows(&rows).unwrap()
        };
        let p = build_mtn(&cloud, &MtnConfig::default()).unwrap();
        worst = worst.max(solve_tpot(&p, &p, &cfg).unwrap().distortion.objective);
    }
    Check::new(
        "self-distance <= 10 eps_v",
        worst <= 10.0 * cfg.eps_v,
        format!(
            "max self objective {worst:.4} (bound {:.3}) over {count} networks",
            10.0 * cfg.eps_v
        ),
    )
}

/// Every solve behind `rows` returned plans on their marginals.
pub fn marginal_feasibility(rows: &[IndicatorRow]) -> Check {
    let worst = rows
        .iter()
        .map(|r| r.max_marginal_violation)
        .fold(0.0, f64::max);
    Check::new(
        "marginal violations < 1e-6",
        worst < 1e-6,
        format!("max violation {worst:.2e} over {} solves", rows.len()),
    )
}

// ---------------------------------------------------------------------------
// Entropy

fn shannon(weights: &[f64]) -> f64 {
    let total: f64 = weights.iter().sum();
    -weights
        .iter()
        .filter(|&&w| w > 0.0)
        .map(|&w| (w / total) * (w / total).ln())
        .sum::<f64>()
}

fn random_incidence(rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let (n, m) = (rng.random_range(2..25), rng.random_range(2..10));
    let mut w = DMatrix::from_fn(n, m, |_, _| if rng.random_bool(0.3) { 1.0 } else { 0.0 });
    for e in 0..m {
        w[(rng.random_range(0..n), e)] = 1.0;
    }
    w
}

/// Bounds `0 <= HE <= ln |active|` on random incidences, equality on regular
/// and uniform ones, and agreement with the direct formulas.
pub fn entropy_bounds(seed: u64, count: usize) -> Check {
    let mut rng = rng(seed);
    let mut bad = 0;
    for _ in 0..count {
        let w = random_incidence(&mut rng);
        let degrees: Vec<f64> = w.row_iter().map(|r| r.sum()).collect();
        let sizes: Vec<f64> = w.column_iter().map(|c| c.sum()).collect();
        let nv = degrees.iter().filter(|&&x| x > 0.0).count() as f64;
        let ne = sizes.iter().filter(|&&x| x > 0.0).count() as f64;
        let inc = IncidenceMatrix::new(w).unwrap();
        let (hv, he) = (he_vertex(&inc).value, he_edge(&inc).value);
        let ok = hv >= 0.0
            && he >= 0.0
            && hv <= nv.ln() + 1e-12
            && he <= ne.ln() + 1e-12
            && (hv - shannon(&degrees)).abs() < 1e-12
            && (he - shannon(&sizes)).abs() < 1e-12;
        bad += usize::from(!ok);
    }
    // k-regular and k-uniform: every vertex in every hyperedge, and a cyclic design
    let mut eq_ok = true;
    for (n, m) in [(4, 2), (7, 3), (5, 5)] {
        let full = IncidenceMatrix::new(DMatrix::from_element(n, m, 1.0)).unwrap();
        eq_ok &= (he_vertex(&full).value - (n as f64).ln()).abs() < 1e-12;
        eq_ok &= (he_edge(&full).value - (m as f64).ln()).abs() < 1e-12;
    }
    let cyclic = IncidenceMatrix::new(DMatrix::from_fn(6, 6, |i, e| {
        if (i + 6 - e) % 6 < 2 {
            1.0
        } else {
            0.0
        }
    }))
    .unwrap();
    eq_ok &= (he_vertex(&cyclic).value - 6f64.ln()).abs() < 1e-12;
    eq_ok &= (he_edge(&cyclic).value - 6f64.ln()).abs() < 1e-12;
    // a non-regular hypergraph stays strictly below the bound
    let skew = IncidenceMatrix::new(DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 0.0])).unwrap();
    eq_ok &= he_vertex(&skew).value < 2f64.ln() - 1e-3;
    Check::new(
        "entropy bounds and equality cases",
        bad == 0 && eq_ok,
        format!(
            "{bad} of {count} random incidences out of bounds; equality cases {}",
            if eq_ok { "exact" } else { "wrong" }
        ),
    )
}

/// Appending a random nonempty hyperedge moves both entropies.
pub fn entropy_sensitivity(seed: u64, count: usize) -> (Check, f64) {
    let mut rng = rng(seed);
    let mut changed = 0;
    for _ in 0..count {
        let w = random_incidence(&mut rng);
        let (n, m) = w.shape();
        let mut grown = w.clone().insert_column(m, 0.0);
        let mut members: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.4)).collect();
        if members.is_empty() {
            members.push(rng.random_range(0..n));
        }
        for v in members {
            grown[(v, m)] = 1.0;
        }
        let (a, b) = (
            IncidenceMatrix::new(w).unwrap(),
            IncidenceMatrix::new(grown).unwrap(),
        );
        let dv = (he_vertex(&a).value - he_vertex(&b).value).abs();
        let de = (he_edge(&a).value - he_edge(&b).value).abs();
        changed += usize::from(dv > 1e-12 && de > 1e-12);
    }
    let rate = changed as f64 / count as f64;
    (
        Check::new(
            "entropy sensitivity rate >= 99%",
            rate >= 0.99,
            format!(
                "{changed} of {count} hypergraphs changed ({:.1}%)",
                100.0 * rate
            ),
        ),
        rate,
    )
}

/// Simultaneous row and column relabeling leaves every entropy unchanged.
pub fn entropy_isomorphism(seed: u64, count: usize) -> Check {
    let mut rng = rng(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..count {
        let w = random_incidence(&mut rng);
        let (n, m) = w.shape();
        let mut rp: Vec<usize> = (0..n).collect();
        let mut cp: Vec<usize> = (0..m).collect();
        rp.shuffle(&mut rng);
        cp.shuffle(&mut rng);
        let permuted = DMatrix::from_fn(n, m, |i, e| w[(rp[i], cp[e])]);
        let (a, b) = (
            IncidenceMatrix::new(w).unwrap(),
            IncidenceMatrix::new(permuted).unwrap(),
        );
        for (x, y) in [
            (he_vertex(&a).value, he_vertex(&b).value),
            (he_edge(&a).value, he_edge(&b).value),
            (
                he_sym(&a, 0.5).unwrap().value,
                he_sym(&b, 0.5).unwrap().value,
            ),
            (spectral_entropy(&a).value, spectral_entropy(&b).value),
        ] {
            worst = worst.max((x - y).abs());
        }
    }
    Check::new(
        "entropies invariant under relabeling",
        worst <= 1e-14,
        format!("max change {worst:.2e} over {count} relabelings"),
    )
}

/// `HE_E <= ln(number of retained cycles)` on every network behind `rows`.
pub fn topological_bound(rows: &[IndicatorRow]) -> Check {
    let violations = rows
        .iter()
        .filter(|r| {
            let bound = if r.n_cycles > 0 {
                (r.n_cycles as f64).ln()
            } else {
                0.0
            };
            r.he_e > bound + 1e-12
        })
        .count();
    Check::new(
        "HE_E <= ln |D_1|",
        violations == 0,
        format!("{violations} of {} networks violate the bound", rows.len()),
    )
}

// ---------------------------------------------------------------------------
// Geodesic

fn max_abs_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (a - b).amax()
}

/// `reconstruct_frame` at `t = 0` and `t = 1` reproduces the endpoint
/// squared distances (the latter through the extracted matching).
pub fn geodesic_endpoints(seed: u64, count: usize) -> Check {
    let mut rng = rng(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..count {
        let (n, m) = (rng.random_range(3..=40), rng.random_range(3..=40));
        let d = rng.random_range(2..=3);
        let a =
            PointCloud::new(DMatrix::from_fn(n, d, |_, _| rng.random_range(-2.0..2.0))).unwrap();
        let b =
            PointCloud::new(DMatrix::from_fn(m, d, |_, _| rng.random_range(-2.0..2.0))).unwrap();
        let pi = DMatrix::from_fn(n, m, |_, _| rng.random_range(0.0..1.0));
        let targets = extract_matching(&pi).unwrap().targets().to_vec();

        let ka = pairwise_sq_dist(&a);
        let x0 = pairwise_sq_dist(&reconstruct_frame(&a, &b, &pi, 0.0).unwrap());
        worst = worst.max(max_abs_diff(x0.matrix(), ka.matrix()));

        let kb = pairwise_sq_dist(&b);
        let want = DMatrix::from_fn(n, n, |i, j| kb.get(targets[i], targets[j]));
        let x1 = pairwise_sq_dist(&reconstruct_frame(&a, &b, &pi, 1.0).unwrap());
        worst = worst.max(max_abs_diff(x1.matrix(), &want));
    }
    Check::new(
        "geodesic endpoints reproduced",
        worst < 1e-8,
        format!("max abs error {worst:.2e} over {count} pairs"),
    )
}

/// Classical MDS recovers exactly embeddable squared distances.
pub fn mds_round_trip(seed: u64, count: usize) -> Check {
    let mut rng = rng(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..count {
        let n = rng.random_range(3..=60);
        let d = rng.random_range(1..=4);
        let x =
            PointCloud::new(DMatrix::from_fn(n, d, |_, _| rng.random_range(-3.0..3.0))).unwrap();
        let k = pairwise_sq_dist(&x);
        let y = classical_mds(&k, d).unwrap();
        let back: SquaredDistanceMatrix = pairwise_sq_dist(&y);
        worst = worst.max((back.matrix() - k.matrix()).norm());
    }
    Check::new(
        "MDS round trip",
        worst < 1e-8,
        format!("max Frobenius error {worst:.2e} over {count} inputs"),
    )
}

/// Every self-contained check, in a fixed order.
pub fn run_all(seed: u64) -> Vec<Check> {
    vec![
        persistence_oracle(seed, 50),
        unit_square(),
        distortion_oracle(seed + 1, 50),
        self_distance(seed + 2, 20),
        entropy_bounds(seed + 3, 1000),
        entropy_sensitivity(seed + 4, 1000).0,
        entropy_isomorphism(seed + 5, 200),
        geodesic_endpoints(seed + 6, 20),
        mds_round_trip(seed + 7, 20),
    ]
}

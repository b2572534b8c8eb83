use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use topotip::entropy::{he_vertex, IncidenceMatrix};
use topotip::geodesic::*;
use topotip::mtn::{build_mtn, MtnConfig};
use topotip::point_data::{pairwise_sq_dist, PointCloud, SequenceDataset, SquaredDistanceMatrix};
use topotip::tpot::TpotConfig;

fn random_cloud(rng: &mut ChaCha8Rng, n: usize, d: usize) -> PointCloud {
    PointCloud::new(DMatrix::from_fn(n, d, |_, _| rng.random_range(-2.0..2.0))).unwrap()
}

/// A slightly irregular ring. Exactly regular polygons are avoided on purpose:
/// their symmetry makes the product coupling a stationary point of the solver.
fn ring(n: usize, r: f64, phase: f64) -> PointCloud {
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|k| {
            let jitter = 0.15 * (2.3 * k as f64).sin();
            let t = phase + (k as f64 + jitter) * std::f64::consts::TAU / n as f64;
            let r = r * (1.0 + 0.03 * (1.7 * k as f64).cos());
            vec![r * t.cos(), r * t.sin()]
        })
        .collect();
    PointCloud::from_rows(&rows).unwrap()
}

#[test]
fn endpoints_are_reproduced() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..20 {
        let (n, m) = (rng.random_range(3..=50), rng.random_range(3..=50));
        let d = rng.random_range(2..=3);
        let a = random_cloud(&mut rng, n, d);
        let b = random_cloud(&mut rng, m, d);
        let pi = DMatrix::from_fn(n, m, |_, _| rng.random_range(0.0..1.0));
        let m_ab = extract_matching(&pi).unwrap();

        let x0 = reconstruct_frame(&a, &b, &pi, 0.0).unwrap();
        let k0 = pairwise_sq_dist(&x0);
        assert!((k0.matrix() - pairwise_sq_dist(&a).matrix()).amax() < 1e-8);

        let x1 = reconstruct_frame(&a, &b, &pi, 1.0).unwrap();
        let kb = pairwise_sq_dist(&b);
        let t = m_ab.targets();
        let expect = DMatrix::from_fn(n, n, |i, j| kb.get(t[i], t[j]));
        assert!((pairwise_sq_dist(&x1).matrix() - expect).amax() < 1e-8);
    }
}

#[test]
fn embeddable_blends_keep_their_distances() {
    // kB = c kA, so every blend is a scaled copy of kA and embeds exactly in 2D
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let a = random_cloud(&mut rng, 25, 2);
    let ka = pairwise_sq_dist(&a);
    let kb = SquaredDistanceMatrix::from_matrix(ka.matrix() * 3.0).unwrap();
    for t in [0.1, 0.5, 0.9] {
        let kt = interpolate_sq_dist(&ka, &kb, &Matching::identity(25), t).unwrap();
        let x = classical_mds(&kt, 2).unwrap();
        assert!((pairwise_sq_dist(&x).matrix() - kt.matrix()).amax() < 1e-6);
    }
}

fn quick() -> CurveConfig {
    CurveConfig {
        steps: 3,
        ..CurveConfig::default()
    }
}

#[test]
fn constant_sequence_gives_flat_curves() {
    let frame = ring(16, 1.0, 0.1);
    let seq = SequenceDataset::new(vec![frame.clone(), frame.clone(), frame]).unwrap();
    let cfg = quick();
    let eps = cfg.tpot.eps_v;
    for table in [
        baseline_curves(&seq, &cfg).unwrap(),
        dynamic_curves(&seq, &[0, 1, 2], &cfg).unwrap(),
    ] {
        let first = &table.rows[0];
        for r in &table.rows {
            assert!(
                r.l_geom <= 10.0 * eps && r.l_topo <= 10.0 * eps && r.l_hyper <= 10.0 * eps,
                "{r:?}"
            );
            assert!((r.he_sym - first.he_sym).abs() < 1e-12);
            assert!((r.pe - first.pe).abs() < 1e-9);
            assert_eq!(r.n_cycles, first.n_cycles);
        }
    }
}

#[test]
fn tau_column_follows_the_grid_formula() {
    let frames: Vec<PointCloud> = (0..4)
        .map(|k| ring(12, 1.0 + 0.1 * k as f64, 0.0))
        .collect();
    let seq = SequenceDataset::new(frames).unwrap();
    let cfg = quick();
    let table = dynamic_curves(&seq, &[0, 2, 3], &cfg).unwrap();
    // two segments of 3 steps plus the endpoint
    assert_eq!(table.len(), 7);
    let expect: Vec<f64> = (0..7).map(|k| k as f64 / 6.0).collect();
    assert_eq!(table.column(|r| r.tau), expect);
    assert!(table.column(|r| r.tau).windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn single_step_interpolation_matches_baseline() {
    let frames: Vec<PointCloud> = (0..3)
        .map(|k| ring(14, 1.0 + 0.3 * k as f64, 0.05 * k as f64).with_param(k as f64))
        .collect();
    let seq = SequenceDataset::new(frames).unwrap();
    // a bijective matching makes each segment's endpoint the next keyframe exactly
    let cfg = CurveConfig {
        steps: 1,
        matching: topotip::entropy::MatchMode::Assignment,
        ..CurveConfig::default()
    };
    let base = baseline_curves(&seq, &cfg).unwrap();
    let dynamic = dynamic_curves(&seq, &[0, 1, 2], &cfg).unwrap();
    assert_eq!(base.len(), dynamic.len());
    for (b, d) in base.rows.iter().zip(&dynamic.rows) {
        assert_eq!(b.tau, d.tau);
        assert_eq!(b.param, d.param);
        assert_eq!(b.n_cycles, d.n_cycles);
        assert!((b.pe - d.pe).abs() < 1e-9);
        assert!((b.he_sym - d.he_sym).abs() < 1e-12);
        let tol = 1e-4 * (1.0 + b.l_geom);
        assert!(
            (b.l_geom - d.l_geom).abs() < tol,
            "{} vs {}",
            b.l_geom,
            d.l_geom
        );
        assert!((b.l_topo - d.l_topo).abs() < 1e-6);
    }
}

#[test]
fn curves_are_deterministic() {
    let frames: Vec<PointCloud> = (0..3)
        .map(|k| ring(15, 1.0 + 0.2 * k as f64, 0.3 * k as f64))
        .collect();
    let seq = SequenceDataset::new(frames).unwrap();
    let a = dynamic_curves(&seq, &[0, 2], &quick()).unwrap();
    let b = dynamic_curves(&seq, &[0, 2], &quick()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn blended_incidences_miss_the_collapse() {
    // A ring collapses into a tight cluster without loops. Recomputed topology
    // loses the cycle along the way; the blended incidence only rescales, so
    // its vertex entropy never moves.
    let a = ring(16, 1.0, 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let b = PointCloud::new(DMatrix::from_fn(16, 2, |_, k| {
        0.02 * k as f64 + rng.random_range(-0.01..0.01)
    }))
    .unwrap();
    let cfg = MtnConfig::default();
    let (pa, pb) = (build_mtn(&a, &cfg).unwrap(), build_mtn(&b, &cfg).unwrap());
    assert_eq!(pa.n_cycles(), 1);
    let pi = topotip::tpot::solve_tpot(&pa, &pb, &TpotConfig::default())
        .unwrap()
        .coupling
        .pi_v;
    let m = extract_matching(&pi).unwrap();
    let align = DMatrix::zeros(pb.n_cycles(), pa.n_cycles());

    let ts = [0.0, 0.25, 0.5, 0.75, 1.0];
    let blended: Vec<f64> = ts[..4]
        .iter()
        .map(|&t| {
            let w = blend_incidence(pa.incidence(), pb.incidence(), &m, &align, t).unwrap();
            he_vertex(&IncidenceMatrix::new(w).unwrap()).value
        })
        .collect();
    assert!(blended.iter().all(|&h| (h - blended[0]).abs() < 1e-12));

    let recomputed: Vec<usize> = ts
        .iter()
        .map(|&t| {
            build_mtn(&reconstruct_frame(&a, &b, &pi, t).unwrap(), &cfg)
                .unwrap()
                .n_cycles()
        })
        .collect();
    assert_eq!(recomputed[0], 1);
    assert_eq!(*recomputed.last().unwrap(), 0);
}

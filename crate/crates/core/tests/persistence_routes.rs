use proptest::prelude::*;
use topotip::persistence::{build_vr_filtration, compute_persistence, rips_persistence};
use topotip::point_data::{pairwise_sq_dist, PointCloud};

fn cloud(coords: &[(f64, f64)]) -> PointCloud {
    let rows: Vec<Vec<f64>> = coords.iter().map(|&(x, y)| vec![x, y]).collect();
    PointCloud::from_rows(&rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // The implicit cohomology route must reproduce the explicit boundary
    // reduction pair for pair, representatives included.
    #[test]
    fn implicit_matches_explicit(
        pts in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 3..18),
        cut in prop::option::of(0.3f64..2.0),
    ) {
        let d = pairwise_sq_dist(&cloud(&pts));
        let threshold = cut.unwrap_or(f64::INFINITY);
        let explicit = compute_persistence(&build_vr_filtration(&d, 2, threshold).unwrap());
        let implicit = rips_persistence(&d, threshold).unwrap();
        let fin = |diag: &topotip::persistence::PersistenceDiagram, dim| {
            diag.finite_pairs(dim).cloned().collect::<Vec<_>>()
        };
        prop_assert_eq!(fin(&explicit, 0), fin(&implicit, 0));
        prop_assert_eq!(fin(&explicit, 1), fin(&implicit, 1));
    }
}

#[test]
fn noisy_circle_has_one_dominant_loop() {
    let pts: Vec<(f64, f64)> = (0..60)
        .map(|k| {
            let t = k as f64 * std::f64::consts::TAU / 60.0;
            let r = 1.0 + 0.05 * ((7 * k) % 5) as f64 / 5.0;
            (r * t.cos(), r * t.sin())
        })
        .collect();
    let diag = rips_persistence(&pairwise_sq_dist(&cloud(&pts)), f64::INFINITY).unwrap();
    let mut pers: Vec<f64> = diag.finite_pairs(1).map(|p| p.persistence()).collect();
    pers.sort_by(|a, b| b.total_cmp(a));
    assert!(pers[0] > 1.0);
    assert!(pers.get(1).copied().unwrap_or(0.0) < 0.1);
    let top = diag
        .finite_pairs(1)
        .max_by(|a, b| a.persistence().total_cmp(&b.persistence()))
        .unwrap();
    assert!(top.representative.len() >= 20);
}

use topotip::persistence::rips_persistence;
use topotip::point_data::pairwise_sq_dist;
use topotip::synth::{simulate_dorsogna, DorsognaParams};

// One full-length run in the mill regime (about 15 s optimized).
#[test]
fn mill_forms_at_terminal_speed() {
    let p = DorsognaParams {
        snapshot_times: vec![1.0, 60.0],
        ..DorsognaParams::default()
    };
    let seq = simulate_dorsogna(&p, 7).unwrap();
    let last = &seq.frames()[1];
    let c = last.coords();
    let speed = (0..last.len())
        .map(|i| c[(i, 2)].hypot(c[(i, 3)]))
        .sum::<f64>()
        / last.len() as f64;
    let target = p.terminal_speed();
    assert!(
        (speed - target).abs() <= 0.1 * target,
        "speed {speed} vs {target}"
    );

    let loop_size = |k: usize| {
        let xy = seq.frames()[k].project(&[0, 1]).unwrap();
        rips_persistence(&pairwise_sq_dist(&xy), f64::INFINITY)
            .unwrap()
            .max_persistence(1)
    };
    assert!(loop_size(1) > loop_size(0));
}

//! Frozen single-step swarm trace plus an independent hand-computed update.
//!
//! Regenerate the golden file with `RA_BEAMKIT_BLESS=1 cargo test --test pso_golden`.

use std::path::PathBuf;

use ra_beamkit::ao::solve_single_beam;
use ra_beamkit::array_model::{ArrayGeometry, ArrayModel, RadiationPattern, Scenario};
use ra_beamkit::pso::{
    coefficient_draws, initialize, step, update_inertia, FitnessContext, PsoConfig, Swarm,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, PartialEq, Serialize, Deserialize)]
struct Trace {
    initial: Swarm,
    after_one_step: Swarm,
}

fn setup() -> (
    RadiationPattern,
    ArrayModel,
    Scenario,
    PsoConfig,
    Vec<num_complex::Complex64>,
) {
    let pattern = RadiationPattern::default();
    let geometry = ArrayGeometry::half_wavelength(2).unwrap();
    let scenario = Scenario::new(vec![70.0], vec![175.0], -10.0).unwrap();
    let weights = solve_single_beam(70.0, &pattern, &geometry)
        .unwrap()
        .weights;
    let config = PsoConfig {
        num_particles: 3,
        max_iterations: 10,
        rng_seed: 42,
        ..PsoConfig::default()
    };
    (
        pattern,
        ArrayModel::three_gpp(geometry, pattern),
        scenario,
        config,
        weights,
    )
}

fn trace() -> Trace {
    let (pattern, model, scenario, config, weights) = setup();
    let ctx = FitnessContext::new(&weights, &scenario, &model, config.penalty_factor);
    let bounds = pattern.rotation_bounds();
    let initial = initialize(&[10.0, -40.0], &bounds, &ctx, &config);
    let after_one_step = step(&initial, 1, &bounds, &ctx, &config);
    Trace {
        initial,
        after_one_step,
    }
}

#[test]
fn matches_frozen_trace() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/pso_golden_s3_n2.json");
    let current = trace();
    if std::env::var_os("RA_BEAMKIT_BLESS").is_some() {
        std::fs::write(&path, serde_json::to_string_pretty(&current).unwrap()).unwrap();
    }
    let frozen: Trace = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(current, frozen);
}

#[test]
fn step_matches_hand_computation() {
    let (pattern, model, scenario, config, weights) = setup();
    let ctx = FitnessContext::new(&weights, &scenario, &model, config.penalty_factor);
    let bounds = pattern.rotation_bounds();
    let swarm = trace().initial;

    // particle 0 is the seed position, clamped into the box
    assert_eq!(swarm.positions[0], vec![10.0, bounds.theta_min_deg]);

    let inertia = update_inertia(1, &config);
    assert_eq!(inertia, 0.9 - 0.7 / 10.0);
    let v_max = bounds.theta_max_deg - bounds.theta_min_deg;

    let mut expected = swarm.clone();
    for s in 0..3 {
        let draws = coefficient_draws(42, s, 1, 2);
        let mut next = vec![0.0; 2];
        let mut vel = vec![0.0; 2];
        for n in 0..2 {
            let x = swarm.positions[s][n];
            let v = inertia * swarm.velocities[s][n]
                + 1.4 * draws[n].0 * (swarm.local_best_positions[s][n] - x)
                + 1.4 * draws[n].1 * (swarm.global_best_position[n] - x);
            vel[n] = v.clamp(-v_max, v_max);
            next[n] = (x + vel[n]).clamp(bounds.theta_min_deg, bounds.theta_max_deg);
        }
        let f = ctx.evaluate(&next);
        if f > expected.local_best_fitness[s] {
            expected.local_best_fitness[s] = f;
            expected.local_best_positions[s] = next.clone();
        }
        if f > expected.global_best_fitness {
            expected.global_best_fitness = f;
            expected.global_best_position = next.clone();
        }
        expected.positions[s] = next;
        expected.velocities[s] = vel;
    }
    assert_eq!(step(&swarm, 1, &bounds, &ctx, &config), expected);
}

#[test]
fn draws_are_unit_interval_and_distinct_per_particle() {
    let a = coefficient_draws(42, 0, 1, 2);
    let b = coefficient_draws(42, 1, 1, 2);
    let c = coefficient_draws(42, 0, 2, 2);
    assert_ne!(a, b);
    assert_ne!(a, c);
    for (x, y) in a.iter().chain(&b).chain(&c) {
        assert!((0.0..1.0).contains(x) && (0.0..1.0).contains(y));
    }
}

//! Particle swarm search over the rotation box `[θ_min, θ_max]^N` with the
//! weights held fixed.
//!
//! Fitness is the minimum desired-direction gain minus `τ` times the summed
//! gain of every interference direction whose gain exceeds the cap. The
//! inertia weight decays linearly from `inertia_initial` to `inertia_final`
//! over `max_iterations`, and positions are clamped back into the box after
//! every move.
//!
//! Random coefficients come from a counter-based stream: the two draws of
//! particle `s` at iteration `t` are a pure function of
//! `(rng_seed, s, t)`, so the particles can be updated in any order (or in
//! parallel) and a run is bit-reproducible.

use num_complex::Complex64;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::array_model::{ArrayGeometry, ArrayModel, RadiationPattern, RotationBounds, Scenario};
use crate::error::{check_len, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PsoConfig {
    pub num_particles: usize,
    pub max_iterations: usize,
    pub inertia_initial: f64,
    pub inertia_final: f64,
    /// Attraction toward the particle's own best.
    pub learn_local: f64,
    /// Attraction toward the swarm best.
    pub learn_global: f64,
    pub penalty_factor: f64,
    /// Early stop once the swarm best improves by less than this in one iteration.
    pub delta_threshold: f64,
    /// Consecutive low-gain iterations tolerated before the early stop fires.
    pub stall_iterations: usize,
    pub rng_seed: u64,
}

impl Default for PsoConfig {
    fn default() -> Self {
        Self {
            num_particles: 200,
            max_iterations: 100,
            inertia_initial: 0.9,
            inertia_final: 0.2,
            learn_local: 1.4,
            learn_global: 1.4,
            penalty_factor: 1e6,
            delta_threshold: 1e-2,
            stall_iterations: 10,
            rng_seed: 0,
        }
    }
}

impl PsoConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: &str| Err(Error::InvalidParameter(format!("pso {msg}")));
        if self.num_particles == 0 {
            return fail("num_particles must be at least 1");
        }
        if self.max_iterations == 0 {
            return fail("max_iterations must be at least 1");
        }
        if !(self.inertia_final > 0.0 && self.inertia_initial >= self.inertia_final) {
            return fail("inertia must satisfy inertia_initial >= inertia_final > 0");
        }
        if !(self.learn_local >= 0.0 && self.learn_global >= 0.0) {
            return fail("learning factors must be non-negative");
        }
        if !(self.penalty_factor >= 0.0) {
            return fail("penalty_factor must be non-negative");
        }
        if !(self.delta_threshold > 0.0) {
            return fail("delta_threshold must be positive");
        }
        if self.stall_iterations == 0 {
            return fail("stall_iterations must be at least 1");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Swarm {
    pub positions: Vec<Vec<f64>>,
    pub velocities: Vec<Vec<f64>>,
    pub local_best_positions: Vec<Vec<f64>>,
    pub local_best_fitness: Vec<f64>,
    pub global_best_position: Vec<f64>,
    pub global_best_fitness: f64,
}

impl Swarm {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// Everything the fitness function needs besides the rotations.
#[derive(Debug, Clone, Copy)]
pub struct FitnessContext<'a> {
    pub weights: &'a [Complex64],
    pub scenario: &'a Scenario,
    pub model: &'a ArrayModel,
    pub eta_max: f64,
    pub penalty_factor: f64,
}

impl<'a> FitnessContext<'a> {
    pub fn new(
        weights: &'a [Complex64],
        scenario: &'a Scenario,
        model: &'a ArrayModel,
        penalty_factor: f64,
    ) -> Self {
        Self {
            weights,
            scenario,
            model,
            eta_max: scenario.eta_max_linear(),
            penalty_factor,
        }
    }

    pub fn evaluate(&self, rotations_deg: &[f64]) -> f64 {
        let min_desired = self
            .scenario
            .desired_angles_deg
            .iter()
            .map(|&psi| self.model.gain_unchecked(self.weights, rotations_deg, psi))
            .fold(f64::INFINITY, f64::min);
        let violation: f64 = self
            .scenario
            .interference_angles_deg
            .iter()
            .map(|&psi| self.model.gain_unchecked(self.weights, rotations_deg, psi))
            .filter(|&g| g > self.eta_max)
            .sum();
        if violation > 0.0 {
            min_desired - self.penalty_factor * violation
        } else {
            min_desired
        }
    }
}

/// Penalized min-desired-gain fitness of one rotation vector.
pub fn fitness(
    rotations_deg: &[f64],
    weights: &[Complex64],
    scenario: &Scenario,
    pattern: &RadiationPattern,
    geometry: &ArrayGeometry,
    penalty_factor: f64,
) -> Result<f64> {
    check_len(geometry.num_antennas, rotations_deg.len())?;
    check_len(geometry.num_antennas, weights.len())?;
    let model = ArrayModel::three_gpp(*geometry, *pattern);
    Ok(FitnessContext::new(weights, scenario, &model, penalty_factor).evaluate(rotations_deg))
}

/// Inertia weight at iteration `t` (linear decay, `t = 0` gives the initial value).
pub fn update_inertia(t: usize, config: &PsoConfig) -> f64 {
    config.inertia_initial
        - (config.inertia_initial - config.inertia_final) * t as f64 / config.max_iterations as f64
}

/// Uniform `[0, 1)` coefficients for `particle` at `iteration`: one
/// `(local, global)` pair per dimension.
pub fn coefficient_draws(
    seed: u64,
    particle: usize,
    iteration: usize,
    dims: usize,
) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(particle as u64);
    // each f64 draw consumes two 32-bit words
    rng.set_word_pos(4 * (dims as u128) * iteration as u128);
    (0..dims)
        .map(|_| (rng.gen::<f64>(), rng.gen::<f64>()))
        .collect()
}

/// Initial-position stream, kept apart from the coefficient streams.
fn init_rng(seed: u64, particle: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5bd1_e995_9e37_79b9);
    rng.set_stream(particle as u64);
    rng
}

/// Builds the initial swarm. Particle 0 sits at `seed_position` (clamped
/// into the box); the rest are uniform over the box. Velocities start at 0.
pub fn initialize(
    seed_position: &[f64],
    bounds: &RotationBounds,
    ctx: &FitnessContext<'_>,
    config: &PsoConfig,
) -> Swarm {
    let positions: Vec<Vec<f64>> = (0..config.num_particles)
        .map(|s| {
            if s == 0 {
                seed_position.iter().map(|&x| bounds.clamp(x)).collect()
            } else {
                let mut rng = init_rng(config.rng_seed, s);
                (0..seed_position.len())
                    .map(|_| bounds.theta_min_deg + bounds.width() * rng.gen::<f64>())
                    .collect()
            }
        })
        .collect();
    let fitness: Vec<f64> = positions.par_iter().map(|p| ctx.evaluate(p)).collect();
    let mut best = 0;
    for s in 1..fitness.len() {
        if fitness[s] > fitness[best] {
            best = s;
        }
    }
    Swarm {
        velocities: vec![vec![0.0; seed_position.len()]; positions.len()],
        local_best_positions: positions.clone(),
        local_best_fitness: fitness.clone(),
        global_best_position: positions[best].clone(),
        global_best_fitness: fitness[best],
        positions,
    }
}

/// One synchronous swarm update using the seeded coefficient streams.
pub fn step(
    swarm: &Swarm,
    t: usize,
    bounds: &RotationBounds,
    ctx: &FitnessContext<'_>,
    config: &PsoConfig,
) -> Swarm {
    let dims = swarm.global_best_position.len();
    step_with(swarm, t, bounds, ctx, config, |s| {
        coefficient_draws(config.rng_seed, s, t, dims)
    })
}

/// As [`step`], with the per-particle coefficient pair supplied by `draws`.
///
/// Every particle moves against the swarm best from the start of the
/// iteration; bests are then folded in particle-index order, replacing only
/// on strict improvement.
pub fn step_with<D>(
    swarm: &Swarm,
    t: usize,
    bounds: &RotationBounds,
    ctx: &FitnessContext<'_>,
    config: &PsoConfig,
    draws: D,
) -> Swarm
where
    D: Fn(usize) -> Vec<(f64, f64)> + Sync,
{
    let inertia = update_inertia(t, config);
    let v_max = bounds.width();
    let moved: Vec<(Vec<f64>, Vec<f64>, f64)> = (0..swarm.len())
        .into_par_iter()
        .map(|s| {
            let coefficients = draws(s);
            let position = &swarm.positions[s];
            let local = &swarm.local_best_positions[s];
            let global = &swarm.global_best_position;
            let mut velocity = Vec::with_capacity(position.len());
            let mut next = Vec::with_capacity(position.len());
            for (n, &(r_loc, r_glo)) in coefficients.iter().enumerate().take(position.len()) {
                let v = inertia * swarm.velocities[s][n]
                    + config.learn_local * r_loc * (local[n] - position[n])
                    + config.learn_global * r_glo * (global[n] - position[n]);
                let v = v.clamp(-v_max, v_max);
                velocity.push(v);
                next.push(bounds.clamp(position[n] + v));
            }
            let fit = ctx.evaluate(&next);
            (next, velocity, fit)
        })
        .collect();

    let mut out = swarm.clone();
    for (s, (position, velocity, fit)) in moved.into_iter().enumerate() {
        if fit > out.local_best_fitness[s] {
            out.local_best_fitness[s] = fit;
            out.local_best_positions[s] = position.clone();
        }
        if fit > out.global_best_fitness {
            out.global_best_fitness = fit;
            out.global_best_position = position.clone();
        }
        out.positions[s] = position;
        out.velocities[s] = velocity;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsoOutcome {
    pub rotations_deg: Vec<f64>,
    pub fitness: f64,
    /// Swarm iterations actually run (excluding initialization).
    pub iterations: usize,
    /// Global best fitness after initialization and after each iteration.
    pub best_history: Vec<f64>,
}

/// Runs the swarm with `initial_best` injected as particle 0, so the
/// returned fitness is never below `fitness(initial_best)`.
pub fn optimize_rotations(
    weights: &[Complex64],
    initial_best: &[f64],
    scenario: &Scenario,
    pattern: &RadiationPattern,
    geometry: &ArrayGeometry,
    config: &PsoConfig,
) -> Result<PsoOutcome> {
    config.validate()?;
    check_len(geometry.num_antennas, weights.len())?;
    check_len(geometry.num_antennas, initial_best.len())?;
    let model = ArrayModel::three_gpp(*geometry, *pattern);
    let bounds = pattern.rotation_bounds();
    let ctx = FitnessContext::new(weights, scenario, &model, config.penalty_factor);

    let mut swarm = initialize(initial_best, &bounds, &ctx, config);
    let mut best_history = vec![swarm.global_best_fitness];
    let mut last = f64::NEG_INFINITY;
    let mut stalled = 0;
    let mut iterations = 0;
    for t in 1..=config.max_iterations {
        swarm = step(&swarm, t, &bounds, &ctx, config);
        iterations = t;
        best_history.push(swarm.global_best_fitness);
        let current = swarm.global_best_fitness;
        if current - last < config.delta_threshold {
            stalled += 1;
            if stalled >= config.stall_iterations {
                break;
            }
        } else {
            stalled = 0;
            last = current;
        }
    }

    Ok(PsoOutcome {
        rotations_deg: swarm.global_best_position,
        fitness: swarm.global_best_fitness,
        iterations,
        best_history,
    })
}

/// Spreads one run seed into independent per-use seeds.
pub fn derive_seed(seed: u64, salt: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(salt);
    rng.next_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geometry(n: usize) -> ArrayGeometry {
        ArrayGeometry::half_wavelength(n).unwrap()
    }

    fn mrc(n: usize, psi: f64) -> Vec<Complex64> {
        let scale = 1.0 / (n as f64).sqrt();
        crate::array_model::steering_vector(&geometry(n), psi)
            .into_iter()
            .map(|z| z * scale)
            .collect()
    }

    #[test]
    fn inertia_schedule() {
        let cfg = PsoConfig::default();
        assert!((update_inertia(100, &cfg) - 0.2).abs() < 1e-15);
        assert!((update_inertia(0, &cfg) - 0.9).abs() < 1e-15);
        assert!((update_inertia(50, &cfg) - 0.55).abs() < 1e-15);
    }

    #[test]
    fn fitness_without_interference_is_min_gain() {
        let p = RadiationPattern::default();
        let geo = geometry(4);
        let w = mrc(4, 70.0);
        let rot = [0.0, 10.0, -5.0, 20.0];
        let scenario = Scenario::new(vec![70.0, 100.0], vec![], -10.0).unwrap();
        let model = ArrayModel::three_gpp(geo, p);
        let expected = model
            .gain(&w, &rot, 70.0)
            .unwrap()
            .min(model.gain(&w, &rot, 100.0).unwrap());
        assert_eq!(
            fitness(&rot, &w, &scenario, &p, &geo, 1e6).unwrap(),
            expected
        );
    }

    #[test]
    fn fitness_with_satisfied_cap_is_min_gain() {
        let p = RadiationPattern::default();
        let geo = geometry(4);
        let w = mrc(4, 90.0);
        let rot = [0.0; 4];
        let model = ArrayModel::three_gpp(geo, p);
        // at ψ = 0 the half-wavelength array nulls a broadside beam
        let interference_gain = model.gain(&w, &rot, 0.0).unwrap();
        assert!(interference_gain < 0.1);
        let scenario = Scenario::new(vec![90.0], vec![0.0], -10.0).unwrap();
        let expected = model.gain(&w, &rot, 90.0).unwrap();
        assert_eq!(
            fitness(&rot, &w, &scenario, &p, &geo, 1e6).unwrap(),
            expected
        );
    }

    #[test]
    fn fitness_penalizes_single_violation() {
        // N = 1: gain toward ψ is |w|²·Ḡ_e(ψ − θ). With θ = 0 choose |w|² so
        // that the ψ = 155° gain is exactly 0.2 (Ḡ_e(155°) = 10^-0.4).
        let p = RadiationPattern::default();
        let geo = geometry(1);
        let w = [Complex64::new((0.2 / 10f64.powf(-0.4)).sqrt(), 0.0)];
        let scenario = Scenario::new(vec![90.0], vec![155.0], -10.0).unwrap();
        let model = ArrayModel::three_gpp(geo, p);
        let g_int = model.gain(&w, &[0.0], 155.0).unwrap();
        assert!((g_int - 0.2).abs() < 1e-12);
        let g_min = model.gain(&w, &[0.0], 90.0).unwrap();
        let f = fitness(&[0.0], &w, &scenario, &p, &geo, 1e6).unwrap();
        assert!((f - (g_min - 2e5)).abs() < 1e-6);
    }

    fn ctx_parts() -> (Vec<Complex64>, Scenario, ArrayModel) {
        let geo = geometry(2);
        (
            mrc(2, 80.0),
            Scenario::new(vec![80.0], vec![], -10.0).unwrap(),
            ArrayModel::three_gpp(geo, RadiationPattern::default()),
        )
    }

    #[test]
    fn particle_at_best_with_zero_draws_stays_put() {
        let (w, scenario, model) = ctx_parts();
        let ctx = FitnessContext::new(&w, &scenario, &model, 1e6);
        let bounds = RadiationPattern::default().rotation_bounds();
        let cfg = PsoConfig {
            num_particles: 3,
            ..PsoConfig::default()
        };
        let swarm = initialize(&[-10.0, -10.0], &bounds, &ctx, &cfg);
        let next = step_with(&swarm, 1, &bounds, &ctx, &cfg, |_| vec![(0.0, 0.0); 2]);
        assert_eq!(next.positions, swarm.positions);
    }

    #[test]
    fn overshoot_is_projected_to_upper_bound() {
        let (w, scenario, model) = ctx_parts();
        let ctx = FitnessContext::new(&w, &scenario, &model, 1e6);
        let bounds = RadiationPattern::default().rotation_bounds();
        let cfg = PsoConfig {
            num_particles: 1,
            ..PsoConfig::default()
        };
        let mut swarm = initialize(&[190.0, 190.0], &bounds, &ctx, &cfg);
        swarm.velocities = vec![vec![50.0, 50.0]];
        let next = step_with(&swarm, 1, &bounds, &ctx, &cfg, |_| vec![(0.0, 0.0); 2]);
        assert_eq!(next.positions[0], vec![bounds.theta_max_deg; 2]);
    }

    #[test]
    fn degenerate_swarm_is_stationary() {
        let (w, scenario, _) = ctx_parts();
        let cfg = PsoConfig {
            num_particles: 1,
            learn_local: 0.0,
            learn_global: 0.0,
            ..PsoConfig::default()
        };
        let p = RadiationPattern::default();
        let out = optimize_rotations(&w, &[3.0, 4.0], &scenario, &p, &geometry(2), &cfg).unwrap();
        assert_eq!(out.rotations_deg, vec![3.0, 4.0]);
    }

    #[test]
    fn draws_are_counter_based() {
        let a = coefficient_draws(9, 3, 17, 4);
        assert_eq!(a, coefficient_draws(9, 3, 17, 4));
        assert_ne!(a, coefficient_draws(9, 4, 17, 4));
        assert_ne!(a, coefficient_draws(9, 3, 18, 4));
        assert!(a
            .iter()
            .all(|(x, y)| (0.0..1.0).contains(x) && (0.0..1.0).contains(y)));
    }

    #[test]
    fn single_beam_rotations_align() {
        let n = 6;
        let p = RadiationPattern::default();
        let scenario = Scenario::single_beam(90.0).unwrap();
        let w = mrc(n, 90.0);
        let cfg = PsoConfig {
            rng_seed: 4,
            ..PsoConfig::default()
        };
        let out = optimize_rotations(&w, &[40.0; 6], &scenario, &p, &geometry(n), &cfg).unwrap();
        let full = n as f64 * 10f64.powf(0.8);
        assert!(out.fitness >= 0.98 * full, "{} vs {full}", out.fitness);
        assert!(out.rotations_deg.iter().all(|t| t.abs() < 15.0));
    }

    #[test]
    fn best_history_is_monotone_and_in_bounds() {
        let p = RadiationPattern::default();
        let bounds = p.rotation_bounds();
        let scenario = Scenario::new(vec![55.0, 60.0], vec![20.0, 160.0], -10.0).unwrap();
        let w = mrc(8, 57.0);
        let cfg = PsoConfig {
            rng_seed: 12,
            num_particles: 40,
            ..PsoConfig::default()
        };
        let out = optimize_rotations(&w, &[0.0; 8], &scenario, &p, &geometry(8), &cfg).unwrap();
        for pair in out.best_history.windows(2) {
            assert!(pair[1] >= pair[0]);
        }
        assert!(out.rotations_deg.iter().all(|t| bounds.contains(*t)));
        let start = fitness(&[0.0; 8], &w, &scenario, &p, &geometry(8), 1e6).unwrap();
        assert!(out.fitness >= start);
    }
}

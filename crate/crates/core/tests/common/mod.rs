#![allow(dead_code)]

use num_complex::Complex64;
use ra_beamkit::array_model::{ArrayGeometry, ArrayModel, RadiationPattern, Scenario};
use ra_beamkit::convex::EpigraphProblem;
use ra_beamkit::sca::linearized_problem;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const FULL_N15: f64 = 94.643601672029;

pub fn fig4a() -> Scenario {
    Scenario::new(vec![55.0, 60.0], vec![20.0, 160.0], -10.0).unwrap()
}

pub fn fig4b() -> Scenario {
    Scenario::new(vec![60.0, 140.0], vec![20.0, 160.0], -10.0).unwrap()
}

/// Small SCA-shaped instance: N ≤ 3 elements, K ≤ 2 linearized desired
/// gains, L ≤ 1 interference cap, expanded at a random unit-norm point.
pub fn random_instance(seed: u64) -> (EpigraphProblem, Vec<Complex64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=3);
    let k = rng.gen_range(1..=2);
    let l = rng.gen_range(0..=1);
    let model = ArrayModel::three_gpp(
        ArrayGeometry::half_wavelength(n).unwrap(),
        RadiationPattern::default(),
    );
    let bounds = RadiationPattern::default().rotation_bounds();
    let rotations: Vec<f64> = (0..n)
        .map(|_| rng.gen_range(bounds.theta_min_deg..bounds.theta_max_deg))
        .collect();
    let response = |rng: &mut ChaCha8Rng| {
        model
            .response(&rotations, rng.gen_range(0.0..=180.0))
            .unwrap()
    };
    let desired: Vec<_> = (0..k).map(|_| response(&mut rng)).collect();
    let interference: Vec<_> = (0..l).map(|_| response(&mut rng)).collect();
    let w0 = unit_sphere(&mut rng, n);
    let cap = rng.gen_range(0.02..0.5);
    (
        linearized_problem(&w0, &desired, &interference, cap).unwrap(),
        w0,
    )
}

pub fn unit_sphere(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    loop {
        let w: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let r = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if r > 1e-3 {
            return w.into_iter().map(|z| z / r).collect();
        }
    }
}

/// Uniform point in the unit ball of ℂⁿ (rejection from the cube).
fn unit_ball(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    loop {
        let w: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        if w.iter().map(|z| z.norm_sqr()).sum::<f64>() <= 1.0 {
            return w;
        }
    }
}

/// Largest radial scaling `α ≤ 1` that makes `α·w` feasible. The feasible
/// set contains the origin and every constraint is homogeneous, so this
/// lands on the boundary in closed form.
fn repair(problem: &EpigraphProblem, w: &[Complex64]) -> Vec<Complex64> {
    let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let mut alpha: f64 = 1.0;
    if norm > problem.ball_radius {
        alpha = problem.ball_radius / norm;
    }
    for v in &problem.quad_vectors {
        let g: f64 = v
            .iter()
            .zip(w)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            .norm_sqr();
        if g > problem.quad_cap {
            alpha = alpha.min((problem.quad_cap / g).sqrt());
        }
    }
    // shave a hair so rounding never leaves the set
    let alpha = if alpha < 1.0 {
        alpha * (1.0 - 1e-15)
    } else {
        alpha
    };
    w.iter().map(|z| z * alpha).collect()
}

/// Best objective over `samples` uniform ball points (radially repaired
/// into the feasible set), polished by a shrinking random local search.
pub fn sampling_oracle(problem: &EpigraphProblem, samples: usize, seed: u64) -> f64 {
    let n = problem.dimension();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best_w = vec![Complex64::new(0.0, 0.0); n];
    let mut best = problem.objective_at(&best_w);
    let consider = |w: Vec<Complex64>, best: &mut f64, best_w: &mut Vec<Complex64>| -> bool {
        let w = repair(problem, &w);
        if problem.residual_at(&w) > 0.0 {
            return false;
        }
        let f = problem.objective_at(&w);
        if f > *best {
            *best = f;
            *best_w = w;
            return true;
        }
        false
    };
    for _ in 0..samples {
        let w = unit_ball(&mut rng, n);
        consider(w, &mut best, &mut best_w);
    }
    let mut radius = 0.05;
    while radius > 1e-10 {
        let mut improved = false;
        for _ in 0..5000 {
            let trial: Vec<Complex64> = best_w
                .iter()
                .map(|z| {
                    z + Complex64::new(
                        rng.gen_range(-radius..radius),
                        rng.gen_range(-radius..radius),
                    )
                })
                .collect();
            improved |= consider(trial, &mut best, &mut best_w);
        }
        if !improved {
            radius *= 0.7;
        }
    }
    best
}

//! PSO over element rotations with the weights held fixed.
//!
//! Starting from MRC weights toward 90° and every element at the lower
//! rotation bound, the swarm turns elements back toward broadside. Elements
//! left near the bound lose little gain, so the swarm stalls a few percent
//! short of the full array gain; inside the outer loop SCA then re-adapts
//! the weights. The best-fitness history is printed every few iterations.
//!
//! ```bash
//! cargo run --example pso_rotations
//! ```

use ra_beamkit::ao::solve_single_beam;
use ra_beamkit::array_model::{ArrayGeometry, ArrayModel, RadiationPattern, Scenario};
use ra_beamkit::pso::{optimize_rotations, PsoConfig};

fn main() -> ra_beamkit::error::Result<()> {
    let pattern = RadiationPattern::default();
    let geometry = ArrayGeometry::half_wavelength(15)?;
    let model = ArrayModel::three_gpp(geometry, pattern);
    let scenario = Scenario::single_beam(90.0)?;
    let weights = solve_single_beam(90.0, &pattern, &geometry)?.weights;
    let start = vec![pattern.rotation_bounds().theta_min_deg; 15];

    let config = PsoConfig {
        rng_seed: 7,
        ..PsoConfig::default()
    };
    let outcome = optimize_rotations(&weights, &start, &scenario, &pattern, &geometry, &config)?;

    for (t, best) in outcome.best_history.iter().enumerate().step_by(5) {
        println!("iter {t:>3}  best fitness {best:.4}");
    }
    println!(
        "stopped after {} iterations, fitness {:.4} of full {:.4}",
        outcome.iterations,
        outcome.fitness,
        model.full_array_gain()
    );
    let rotations: Vec<String> = outcome
        .rotations_deg
        .iter()
        .map(|r| format!("{r:.1}"))
        .collect();
    println!("rotations (deg): [{}]", rotations.join(", "));
    Ok(())
}

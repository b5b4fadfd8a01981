//! SCA weight optimization with rotations frozen at 0°: the epigraph value
//! climbs each iteration until it gains less than the threshold.
//!
//! ```bash
//! cargo run --example sca_weights
//! ```

use ra_beamkit::ao::random_phase_weights;
use ra_beamkit::array_model::{
    ArrayGeometry, ArrayModel, BeamformerState, RadiationPattern, Scenario,
};
use ra_beamkit::sca::{optimize_weights, ScaConfig};

fn main() -> ra_beamkit::error::Result<()> {
    let model = ArrayModel::three_gpp(
        ArrayGeometry::half_wavelength(15)?,
        RadiationPattern::default(),
    );
    let scenario = Scenario::new(vec![55.0, 60.0], vec![20.0, 160.0], -10.0)?;
    let state = BeamformerState::new(random_phase_weights(15, 3), vec![0.0; 15])?;

    println!(
        "initial min desired gain {:.4}",
        model.min_desired_gain(&state, &scenario)?
    );
    let report = optimize_weights(&state, &scenario, &model, &ScaConfig::default())?;
    for (i, t) in report.objective_history.iter().enumerate() {
        println!("iter {:>2}  t = {t:.6}", i + 1);
    }

    let out = BeamformerState::new(report.weights, state.rotations_deg)?;
    println!(
        "converged {} after {} iterations",
        report.converged, report.iterations
    );
    println!(
        "min desired gain   {:.6}",
        model.min_desired_gain(&out, &scenario)?
    );
    println!(
        "max interference   {:.6} (cap {})",
        model.max_interference_gain(&out, &scenario)?,
        scenario.eta_max_linear()
    );
    println!("‖w‖                {:.9}", out.weight_norm());
    Ok(())
}

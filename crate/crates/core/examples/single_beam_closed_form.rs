//! Closed-form single-beam solution: MRC weights with every element facing
//! the user, clamped into the rotation range.
//!
//! Inside the unclamped region (about 77°–103°) the full array gain
//! `N·10^(Gmax/10)` is reached; further out the clamp costs directivity.
//!
//! ```bash
//! cargo run --example single_beam_closed_form
//! ```

use std::time::Instant;

use ra_beamkit::ao::solve_single_beam;
use ra_beamkit::array_model::{ArrayGeometry, ArrayModel, RadiationPattern};

fn main() -> ra_beamkit::error::Result<()> {
    let pattern = RadiationPattern::default();
    let geometry = ArrayGeometry::half_wavelength(15)?;
    let model = ArrayModel::three_gpp(geometry, pattern);
    let full = model.full_array_gain();
    println!("full array gain N·10^0.8 = {full:.9}\n");

    println!(
        "{:>6}  {:>10}  {:>10}  {:>8}",
        "ϑ", "θ_n", "gain", "of full"
    );
    for target in [0.0, 30.0, 60.0, 77.0, 90.0, 103.0, 120.0, 150.0, 180.0] {
        let start = Instant::now();
        let state = solve_single_beam(target, &pattern, &geometry)?;
        let elapsed = start.elapsed();
        let gain = model.gain(&state.weights, &state.rotations_deg, target)?;
        println!(
            "{target:>6.1}  {:>10.4}  {gain:>10.4}  {:>7.2}%   ({elapsed:?})",
            state.rotations_deg[0],
            100.0 * gain / full
        );
    }
    Ok(())
}

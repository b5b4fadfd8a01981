//! The convex core on its own: maximize `t` subject to affine lower bounds
//! `2·Re{c_kᴴw} − b_k ≥ t`, quadratic caps `|v_lᴴw|² ≤ η` and `‖w‖ ≤ 1`.
//!
//! Here the affine bounds come from expanding two desired-direction gains
//! at a uniform weight vector, exactly what one SCA step does.
//!
//! ```bash
//! cargo run --example convex_subproblem
//! ```

use num_complex::Complex64;
use ra_beamkit::array_model::{ArrayGeometry, ArrayModel, RadiationPattern};
use ra_beamkit::convex::solve_epigraph;
use ra_beamkit::sca::linearized_problem;

fn main() -> ra_beamkit::error::Result<()> {
    let n = 6;
    let model = ArrayModel::three_gpp(
        ArrayGeometry::half_wavelength(n)?,
        RadiationPattern::default(),
    );
    let rotations = vec![0.0; n];
    let desired = vec![
        model.response(&rotations, 70.0)?,
        model.response(&rotations, 110.0)?,
    ];
    let interference = vec![model.response(&rotations, 30.0)?];
    let eta = 0.1;

    let w0 = vec![Complex64::new(1.0 / (n as f64).sqrt(), 0.0); n];
    let problem = linearized_problem(&w0, &desired, &interference, eta)?;
    let solution = solve_epigraph(&problem, &w0, 1e-9)?;

    println!("status     {:?}", solution.status);
    println!("objective  {:.9}", solution.objective);
    println!("residual   {:.3e}", solution.feasibility_residual);
    println!("newton     {}", solution.newton_steps);
    println!(
        "‖w‖        {:.9}",
        solution
            .weights
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    );
    for (label, psi) in [("desired", 70.0), ("desired", 110.0), ("interferer", 30.0)] {
        let gain = model.gain(&solution.weights, &rotations, psi)?;
        println!("{label:<10} {psi:>5.0}°  gain {gain:.6}");
    }
    Ok(())
}

//! The 3GPP element pattern, its linear gain, and the admissible rotation
//! range it implies.
//!
//! ```bash
//! cargo run --example element_pattern
//! ```

use ra_beamkit::array_model::{element_gain_dbi, element_gain_linear, RadiationPattern};

fn main() {
    let pattern = RadiationPattern::default();
    let bounds = pattern.rotation_bounds();
    println!(
        "Gmax = {} dBi, θ3dB = {}°, SLA = {} dB, Amax = {} dB",
        pattern.max_gain_dbi,
        pattern.beamwidth_3db_deg,
        pattern.sidelobe_limit_db,
        pattern.front_to_back_db
    );
    println!(
        "rotation range [{:.4}°, {:.4}°] (width {:.4}°)\n",
        bounds.theta_min_deg,
        bounds.theta_max_deg,
        bounds.width()
    );

    println!("{:>8}  {:>10}  {:>10}", "ψ (deg)", "G (dBi)", "linear");
    for psi in (0..=360).step_by(15) {
        let psi = psi as f64;
        println!(
            "{psi:>8.1}  {:>10.4}  {:>10.6}",
            element_gain_dbi(&pattern, psi),
            element_gain_linear(&pattern, psi)
        );
    }

    // A narrower, higher-gain element shrinks the rotation range.
    let narrow = RadiationPattern::new(12.0, 40.0, 30.0, 30.0).expect("valid pattern");
    let nb = narrow.rotation_bounds();
    println!(
        "\nnarrow element (12 dBi, 40°): range [{:.3}°, {:.3}°], peak linear gain {:.3}",
        nb.theta_min_deg,
        nb.theta_max_deg,
        narrow.max_gain_linear()
    );
}

//! Rotatable vs fixed-orientation vs isotropic arrays for a single user at
//! 60°, driven through the scenario-file pipeline. Writes reports, pattern
//! CSVs and a summary to a temporary directory and prints a coarse pattern
//! cut so the three beams can be compared by eye.
//!
//! ```bash
//! cargo run --release --example scheme_comparison [scenario.toml]
//! ```

use std::path::PathBuf;

use ra_beamkit::experiment::{run_scenario_file, sample_pattern, ScenarioFile};
use ra_beamkit::units::linear_to_db;

fn main() -> ra_beamkit::error::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            PathBuf::from(env!("CARGO_MANIFEST_DIR"))
                .join("examples/scenarios/fig3_single_beam.toml")
        });
    let file = ScenarioFile::load(&path)?;
    let out = std::env::temp_dir().join("ra-beamkit-scheme-comparison");
    let outcome = run_scenario_file(&file, &out)?;

    for s in &outcome.summaries {
        println!(
            "{:<4} min gain {:>8.3} ({:>7.3} dB)  {:>6.2}% of full",
            s.scheme,
            s.min_desired_gain_linear,
            s.min_desired_gain_db,
            100.0 * s.fraction_of_full_gain
        );
    }

    println!(
        "\n{:>6}{}",
        "ψ",
        file.schemes
            .iter()
            .map(|s| format!("{:>10}", s.as_str()))
            .collect::<String>()
    );
    let cuts = outcome
        .best_reports
        .iter()
        .zip(&file.schemes)
        .map(|(report, scheme)| sample_pattern(&file.model_for(*scheme)?, report, 10.0))
        .collect::<ra_beamkit::error::Result<Vec<_>>>()?;
    for i in 0..cuts[0].len() {
        let row: String = cuts
            .iter()
            .map(|c| format!("{:>10.2}", linear_to_db(c[i].gain_linear)))
            .collect();
        println!("{:>6.0}{row}", cuts[0][i].psi_deg);
    }
    println!("\nfiles in {}", out.display());
    Ok(())
}

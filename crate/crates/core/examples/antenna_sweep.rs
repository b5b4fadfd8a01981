//! Mean max-min gain versus array size over random two-user, two-interferer
//! scenarios (angles uniform on [0°, 180°]).
//!
//! ```bash
//! cargo run --release --example antenna_sweep [num_scenarios]
//! ```

use std::path::PathBuf;

use ra_beamkit::experiment::{run_sweep_file, ScenarioFile, SweepField, SweepSpec};

fn main() -> ra_beamkit::error::Result<()> {
    let scenarios = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(30);
    let base = ScenarioFile::load(
        &PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/scenarios/random_two_users.toml"),
    )?;
    let spec = SweepSpec {
        field: SweepField::NumAntennas,
        values: vec![5.0, 10.0, 15.0, 20.0],
        random_scenarios: Some(scenarios),
        base_seed: 0,
    };
    let out = std::env::temp_dir().join("ra-beamkit-antenna-sweep");
    let rows = run_sweep_file(&base, &spec, &out)?;

    println!(
        "{:>4}  {:<4}  {:>10}  {:>10}",
        "N", "", "mean dB", "RA − this"
    );
    for row in &rows {
        println!(
            "{:>4}  {:<4}  {:>10.3}  {:>10.3}",
            row.sweep_value,
            row.scheme,
            row.mean_maxmin_gain_db,
            row.delta_vs_ra_db.unwrap_or(f64::NAN)
        );
    }
    println!("\n{}", out.join("sweep.csv").display());
    Ok(())
}

//! Decibel conversions used at I/O boundaries.

/// Floor reported for a zero (or negative) linear gain.
pub const DB_FLOOR: f64 = -300.0;

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// `10·log10(x)`, floored at [`DB_FLOOR`] so CSV output stays finite.
pub fn linear_to_db(linear: f64) -> f64 {
    if linear > 0.0 {
        (10.0 * linear.log10()).max(DB_FLOOR)
    } else {
        DB_FLOOR
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_gain_hits_floor() {
        assert_eq!(linear_to_db(0.0), DB_FLOOR);
        assert_eq!(linear_to_db(1e-40), DB_FLOOR);
    }

    #[test]
    fn round_trip() {
        for db in [-22.0, -10.0, 0.0, 8.0, 19.76] {
            assert!((linear_to_db(db_to_linear(db)) - db).abs() < 1e-12);
        }
    }
}

//! Element pattern, steering vectors and array gain for a linear array of
//! rotatable antennas.
//!
//! Angles are in degrees everywhere in the public API. Gains are linear
//! power ratios unless the name says `dbi`/`db`.
//!
//! Element `n` of the array sits at `n·d` along the array axis, so element 0
//! is the phase reference. Rotating element `n` by `θ_n` shifts its
//! pattern: the element sees a wave from direction `ψ` at relative angle
//! `ψ − θ_n`, and its boresight is at a relative angle of 90°.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::units::db_to_linear;

/// Vertical 3GPP element pattern parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiationPattern {
    /// Peak directional gain in dBi.
    pub max_gain_dbi: f64,
    /// Vertical 3 dB beamwidth in degrees.
    pub beamwidth_3db_deg: f64,
    /// Side-lobe level limit in dB.
    pub sidelobe_limit_db: f64,
    /// Front-to-back ratio in dB.
    pub front_to_back_db: f64,
}

impl Default for RadiationPattern {
    fn default() -> Self {
        Self {
            max_gain_dbi: 8.0,
            beamwidth_3db_deg: 65.0,
            sidelobe_limit_db: 30.0,
            front_to_back_db: 30.0,
        }
    }
}

impl RadiationPattern {
    pub fn new(
        max_gain_dbi: f64,
        beamwidth_3db_deg: f64,
        sidelobe_limit_db: f64,
        front_to_back_db: f64,
    ) -> Result<Self> {
        let pattern = Self {
            max_gain_dbi,
            beamwidth_3db_deg,
            sidelobe_limit_db,
            front_to_back_db,
        };
        pattern.validate()?;
        Ok(pattern)
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("max_gain_dbi", self.max_gain_dbi),
            ("beamwidth_3db_deg", self.beamwidth_3db_deg),
            ("sidelobe_limit_db", self.sidelobe_limit_db),
            ("front_to_back_db", self.front_to_back_db),
        ];
        for (name, value) in fields {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive, got {value}"
                )));
            }
        }
        Ok(())
    }

    pub fn rotation_bounds(&self) -> RotationBounds {
        rotation_bounds(self)
    }

    /// Peak element gain, linear.
    pub fn max_gain_linear(&self) -> f64 {
        db_to_linear(self.max_gain_dbi)
    }
}

/// Uniform linear array geometry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArrayGeometry {
    pub num_antennas: usize,
    /// Inter-element spacing `d/λ`.
    pub spacing_wavelengths: f64,
}

impl ArrayGeometry {
    pub fn new(num_antennas: usize, spacing_wavelengths: f64) -> Result<Self> {
        let geometry = Self {
            num_antennas,
            spacing_wavelengths,
        };
        geometry.validate()?;
        Ok(geometry)
    }

    /// Half-wavelength spaced array of `num_antennas` elements.
    pub fn half_wavelength(num_antennas: usize) -> Result<Self> {
        Self::new(num_antennas, 0.5)
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_antennas == 0 {
            return Err(Error::InvalidParameter(
                "num_antennas must be at least 1".into(),
            ));
        }
        if !(self.spacing_wavelengths.is_finite() && self.spacing_wavelengths > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "spacing_wavelengths must be positive, got {}",
                self.spacing_wavelengths
            )));
        }
        Ok(())
    }
}

/// Admissible rotation interval, derived from a [`RadiationPattern`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotationBounds {
    pub theta_min_deg: f64,
    pub theta_max_deg: f64,
}

impl RotationBounds {
    pub fn contains(&self, theta_deg: f64) -> bool {
        theta_deg >= self.theta_min_deg && theta_deg <= self.theta_max_deg
    }

    /// Projection onto the interval.
    pub fn clamp(&self, theta_deg: f64) -> f64 {
        if theta_deg < self.theta_min_deg {
            self.theta_min_deg
        } else if theta_deg > self.theta_max_deg {
            self.theta_max_deg
        } else {
            theta_deg
        }
    }

    pub fn width(&self) -> f64 {
        self.theta_max_deg - self.theta_min_deg
    }
}

/// An AWV/ARAV pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BeamformerState {
    pub weights: Vec<Complex64>,
    pub rotations_deg: Vec<f64>,
}

/// Slack allowed on the unit-norm weight constraint.
pub const NORM_TOLERANCE: f64 = 1e-8;

impl BeamformerState {
    pub fn new(weights: Vec<Complex64>, rotations_deg: Vec<f64>) -> Result<Self> {
        check_len(weights.len(), rotations_deg.len())?;
        Ok(Self {
            weights,
            rotations_deg,
        })
    }

    pub fn num_antennas(&self) -> usize {
        self.weights.len()
    }

    pub fn weight_norm(&self) -> f64 {
        norm(&self.weights)
    }

    /// Checks the norm and rotation-range constraints.
    pub fn validate(&self, bounds: &RotationBounds) -> Result<()> {
        check_len(self.weights.len(), self.rotations_deg.len())?;
        let norm = self.weight_norm();
        if !(norm <= 1.0 + NORM_TOLERANCE) {
            return Err(Error::InvalidParameter(format!(
                "weight norm {norm} exceeds 1"
            )));
        }
        if let Some((n, theta)) = self
            .rotations_deg
            .iter()
            .enumerate()
            .find(|(_, t)| !bounds.contains(**t))
        {
            return Err(Error::InvalidParameter(format!(
                "rotation {n} = {theta}° outside [{}, {}]",
                bounds.theta_min_deg, bounds.theta_max_deg
            )));
        }
        Ok(())
    }
}

/// Desired and interference directions plus the interference gain cap.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub desired_angles_deg: Vec<f64>,
    pub interference_angles_deg: Vec<f64>,
    pub eta_max_db: f64,
}

impl Scenario {
    pub fn new(
        desired_angles_deg: Vec<f64>,
        interference_angles_deg: Vec<f64>,
        eta_max_db: f64,
    ) -> Result<Self> {
        let scenario = Self {
            desired_angles_deg,
            interference_angles_deg,
            eta_max_db,
        };
        scenario.validate()?;
        Ok(scenario)
    }

    /// Single desired direction, no interference.
    pub fn single_beam(desired_deg: f64) -> Result<Self> {
        Self::new(vec![desired_deg], Vec::new(), -10.0)
    }

    pub fn validate(&self) -> Result<()> {
        if self.desired_angles_deg.is_empty() {
            return Err(Error::InvalidScenario(
                "at least one desired direction is required".into(),
            ));
        }
        let all = self
            .desired_angles_deg
            .iter()
            .map(|a| ("desired_angles_deg", a))
            .chain(
                self.interference_angles_deg
                    .iter()
                    .map(|a| ("interference_angles_deg", a)),
            );
        for (key, &angle) in all {
            if !(0.0..=180.0).contains(&angle) {
                return Err(Error::InvalidScenario(format!(
                    "{key}: angle {angle} outside [0, 180]"
                )));
            }
        }
        if let Some(angle) = self
            .desired_angles_deg
            .iter()
            .find(|a| self.interference_angles_deg.contains(a))
        {
            return Err(Error::InvalidScenario(format!(
                "angle {angle} is both desired and interference"
            )));
        }
        if !self.eta_max_db.is_finite() {
            return Err(Error::InvalidScenario("eta_max_db must be finite".into()));
        }
        Ok(())
    }

    pub fn eta_max_linear(&self) -> f64 {
        db_to_linear(self.eta_max_db)
    }
}

/// 3GPP element gain in dBi at relative angle `steer_deg`.
///
/// Applied verbatim for any real angle; there is no wrapping into [0, 180].
pub fn element_gain_dbi(pattern: &RadiationPattern, steer_deg: f64) -> f64 {
    let offset = (steer_deg - 90.0) / pattern.beamwidth_3db_deg;
    let vertical_loss = (12.0 * offset * offset).min(pattern.sidelobe_limit_db);
    pattern.max_gain_dbi - vertical_loss.min(pattern.front_to_back_db)
}

pub fn element_gain_linear(pattern: &RadiationPattern, steer_deg: f64) -> f64 {
    db_to_linear(element_gain_dbi(pattern, steer_deg))
}

pub fn rotation_bounds(pattern: &RadiationPattern) -> RotationBounds {
    let half_width = pattern.beamwidth_3db_deg * (pattern.sidelobe_limit_db / 12.0).sqrt();
    RotationBounds {
        theta_min_deg: 90.0 - half_width,
        theta_max_deg: 90.0 + half_width,
    }
}

/// Amplitude (square root of linear gain) seen by each rotated element.
pub fn effective_gain_vector(
    pattern: &RadiationPattern,
    rotations_deg: &[f64],
    psi_deg: f64,
) -> Vec<f64> {
    rotations_deg
        .iter()
        .map(|theta| element_gain_linear(pattern, psi_deg - theta).sqrt())
        .collect()
}

/// Steering vector `[1, e^{j2π(d/λ)cosψ}, …]`.
pub fn steering_vector(geometry: &ArrayGeometry, psi_deg: f64) -> Vec<Complex64> {
    let phase_step = 2.0 * PI * geometry.spacing_wavelengths * psi_deg.to_radians().cos();
    (0..geometry.num_antennas)
        .map(|n| Complex64::from_polar(1.0, phase_step * n as f64))
        .collect()
}

/// Elementwise product of the effective gain and steering vectors.
pub fn composite_response(
    pattern: &RadiationPattern,
    geometry: &ArrayGeometry,
    rotations_deg: &[f64],
    psi_deg: f64,
) -> Result<Vec<Complex64>> {
    ArrayModel::new(*geometry, ElementModel::ThreeGpp(*pattern)).response(rotations_deg, psi_deg)
}

/// `|wᴴ (g ⊙ a)|²`.
pub fn array_gain(
    weights: &[Complex64],
    pattern: &RadiationPattern,
    geometry: &ArrayGeometry,
    rotations_deg: &[f64],
    psi_deg: f64,
) -> Result<f64> {
    ArrayModel::new(*geometry, ElementModel::ThreeGpp(*pattern)).gain(
        weights,
        rotations_deg,
        psi_deg,
    )
}

/// Per-element directivity model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ElementModel {
    ThreeGpp(RadiationPattern),
    /// Unit gain in every direction; rotations have no effect.
    Isotropic,
}

impl ElementModel {
    /// Linear power gain at relative angle `steer_deg`.
    pub fn linear_gain(&self, steer_deg: f64) -> f64 {
        match self {
            ElementModel::ThreeGpp(pattern) => element_gain_linear(pattern, steer_deg),
            ElementModel::Isotropic => 1.0,
        }
    }

    pub fn max_gain_linear(&self) -> f64 {
        match self {
            ElementModel::ThreeGpp(pattern) => pattern.max_gain_linear(),
            ElementModel::Isotropic => 1.0,
        }
    }
}

/// Geometry plus element model: everything needed to evaluate gains.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArrayModel {
    pub geometry: ArrayGeometry,
    pub element: ElementModel,
}

impl ArrayModel {
    pub fn new(geometry: ArrayGeometry, element: ElementModel) -> Self {
        Self { geometry, element }
    }

    pub fn three_gpp(geometry: ArrayGeometry, pattern: RadiationPattern) -> Self {
        Self::new(geometry, ElementModel::ThreeGpp(pattern))
    }

    pub fn isotropic(geometry: ArrayGeometry) -> Self {
        Self::new(geometry, ElementModel::Isotropic)
    }

    pub fn num_antennas(&self) -> usize {
        self.geometry.num_antennas
    }

    /// `N · max element gain`: the best any unit-norm AWV can reach.
    pub fn full_array_gain(&self) -> f64 {
        self.geometry.num_antennas as f64 * self.element.max_gain_linear()
    }

    /// Composite response `v(θ, ψ) = g(θ, ψ) ⊙ a(ψ)`.
    pub fn response(&self, rotations_deg: &[f64], psi_deg: f64) -> Result<Vec<Complex64>> {
        check_len(self.num_antennas(), rotations_deg.len())?;
        let mut out = vec![Complex64::new(0.0, 0.0); self.num_antennas()];
        self.response_into(rotations_deg, psi_deg, &mut out);
        Ok(out)
    }

    fn response_into(&self, rotations_deg: &[f64], psi_deg: f64, out: &mut [Complex64]) {
        let phase_step = 2.0 * PI * self.geometry.spacing_wavelengths * psi_deg.to_radians().cos();
        for (n, (slot, theta)) in out.iter_mut().zip(rotations_deg).enumerate() {
            let amplitude = self.element.linear_gain(psi_deg - theta).sqrt();
            *slot = Complex64::from_polar(amplitude, phase_step * n as f64);
        }
    }

    /// Array gain `|wᴴ v(θ, ψ)|²`.
    pub fn gain(&self, weights: &[Complex64], rotations_deg: &[f64], psi_deg: f64) -> Result<f64> {
        check_len(self.num_antennas(), weights.len())?;
        check_len(self.num_antennas(), rotations_deg.len())?;
        Ok(self.gain_unchecked(weights, rotations_deg, psi_deg))
    }

    pub(crate) fn gain_unchecked(
        &self,
        weights: &[Complex64],
        rotations_deg: &[f64],
        psi_deg: f64,
    ) -> f64 {
        let phase_step = 2.0 * PI * self.geometry.spacing_wavelengths * psi_deg.to_radians().cos();
        let mut acc = Complex64::new(0.0, 0.0);
        for (n, (w, theta)) in weights.iter().zip(rotations_deg).enumerate() {
            let amplitude = self.element.linear_gain(psi_deg - theta).sqrt();
            acc += w.conj() * Complex64::from_polar(amplitude, phase_step * n as f64);
        }
        acc.norm_sqr()
    }

    /// Gains toward each angle in `angles_deg`.
    pub fn gains(
        &self,
        weights: &[Complex64],
        rotations_deg: &[f64],
        angles_deg: &[f64],
    ) -> Result<Vec<f64>> {
        check_len(self.num_antennas(), weights.len())?;
        check_len(self.num_antennas(), rotations_deg.len())?;
        Ok(angles_deg
            .iter()
            .map(|&psi| self.gain_unchecked(weights, rotations_deg, psi))
            .collect())
    }

    /// Minimum gain over the scenario's desired directions.
    pub fn min_desired_gain(&self, state: &BeamformerState, scenario: &Scenario) -> Result<f64> {
        Ok(self
            .gains(
                &state.weights,
                &state.rotations_deg,
                &scenario.desired_angles_deg,
            )?
            .into_iter()
            .fold(f64::INFINITY, f64::min))
    }

    /// Maximum gain over the interference directions; 0 when there are none.
    pub fn max_interference_gain(
        &self,
        state: &BeamformerState,
        scenario: &Scenario,
    ) -> Result<f64> {
        Ok(self
            .gains(
                &state.weights,
                &state.rotations_deg,
                &scenario.interference_angles_deg,
            )?
            .into_iter()
            .fold(0.0, f64::max))
    }
}

pub(crate) fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `aᴴ b`.
pub(crate) fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

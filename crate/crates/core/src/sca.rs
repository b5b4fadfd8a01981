//! Successive convex approximation for the weight subproblem (rotations
//! fixed).
//!
//! Each desired-direction gain `|vᴴw|²` is convex in `w`, so its first-order
//! expansion at the current iterate `w⁽ⁱ⁾`,
//!
//! ```text
//! Ḡ(w | w⁽ⁱ⁾) = 2·Re{(w⁽ⁱ⁾)ᴴ v vᴴ w} − |vᴴ w⁽ⁱ⁾|²
//! ```
//!
//! is a global affine minorant, tight at `w⁽ⁱ⁾`. Replacing each desired gain
//! by its minorant gives an [`EpigraphProblem`] whose solution is the next
//! iterate.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::array_model::{inner, norm, ArrayModel, BeamformerState, Scenario, NORM_TOLERANCE};
use crate::convex::{solve_epigraph, EpigraphProblem, SolveStatus};
use crate::error::{check_len, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScaConfig {
    /// Stop once the epigraph value rises by less than this.
    pub delta_threshold: f64,
    pub max_iterations: usize,
    /// Objective accuracy requested from each convex solve.
    pub subproblem_tolerance: f64,
}

impl Default for ScaConfig {
    fn default() -> Self {
        Self {
            delta_threshold: 1e-2,
            max_iterations: 100,
            subproblem_tolerance: 1e-7,
        }
    }
}

impl ScaConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.delta_threshold > 0.0) {
            return Err(Error::InvalidParameter(
                "sca delta_threshold must be positive".into(),
            ));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidParameter(
                "sca max_iterations must be at least 1".into(),
            ));
        }
        if !(self.subproblem_tolerance > 0.0) {
            return Err(Error::InvalidParameter(
                "sca subproblem_tolerance must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScaReport {
    pub weights: Vec<Complex64>,
    /// Epigraph value `t` after each iteration.
    pub objective_history: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

/// Affine minorant of `|vᴴw|²` expanded at `expansion_point`.
pub fn surrogate_gain(
    weights: &[Complex64],
    expansion_point: &[Complex64],
    composite_v: &[Complex64],
) -> Result<f64> {
    check_len(composite_v.len(), weights.len())?;
    check_len(composite_v.len(), expansion_point.len())?;
    let at_expansion = inner(composite_v, expansion_point);
    let at_weights = inner(composite_v, weights);
    // (w⁽ⁱ⁾)ᴴ v vᴴ w = conj(vᴴ w⁽ⁱ⁾) · (vᴴ w)
    Ok(2.0 * (at_expansion.conj() * at_weights).re - at_expansion.norm_sqr())
}

/// Builds the convex subproblem around `expansion_point`.
pub fn linearized_problem(
    expansion_point: &[Complex64],
    desired: &[Vec<Complex64>],
    interference: &[Vec<Complex64>],
    eta_max: f64,
) -> Result<EpigraphProblem> {
    let mut linear_terms = Vec::with_capacity(desired.len());
    let mut offsets = Vec::with_capacity(desired.len());
    for v in desired {
        let proj = inner(v, expansion_point);
        // c = v vᴴ w⁽ⁱ⁾, so that cᴴ w = (w⁽ⁱ⁾)ᴴ v vᴴ w
        linear_terms.push(v.iter().map(|z| z * proj).collect());
        offsets.push(proj.norm_sqr());
    }
    EpigraphProblem::new(linear_terms, offsets, interference.to_vec(), eta_max, 1.0)
}

/// Runs SCA from `state.weights` with `state.rotations_deg` held fixed.
pub fn optimize_weights(
    state: &BeamformerState,
    scenario: &Scenario,
    model: &ArrayModel,
    config: &ScaConfig,
) -> Result<ScaReport> {
    config.validate()?;
    scenario.validate()?;
    check_len(model.num_antennas(), state.weights.len())?;
    check_len(model.num_antennas(), state.rotations_deg.len())?;
    let w_norm = norm(&state.weights);
    if w_norm == 0.0 {
        return Err(Error::ZeroInitialWeights);
    }
    if !(w_norm <= 1.0 + NORM_TOLERANCE) {
        return Err(Error::InvalidParameter(format!(
            "initial weight norm {w_norm} exceeds 1"
        )));
    }

    let responses = |angles: &[f64]| -> Result<Vec<Vec<Complex64>>> {
        angles
            .iter()
            .map(|&psi| model.response(&state.rotations_deg, psi))
            .collect()
    };
    let desired = responses(&scenario.desired_angles_deg)?;
    let interference = responses(&scenario.interference_angles_deg)?;
    let eta_max = scenario.eta_max_linear();

    let mut weights = state.weights.clone();
    let mut history = Vec::new();
    let mut previous = f64::NEG_INFINITY;
    let mut converged = false;

    for _ in 0..config.max_iterations {
        let problem = linearized_problem(&weights, &desired, &interference, eta_max)?;
        let solution = solve_epigraph(&problem, &weights, config.subproblem_tolerance)?;
        if solution.status == SolveStatus::Infeasible {
            return Err(Error::Infeasible {
                residual: solution.feasibility_residual,
            });
        }
        weights = solution.weights;
        history.push(solution.objective);
        if solution.objective - previous < config.delta_threshold {
            converged = true;
            break;
        }
        previous = solution.objective;
    }

    Ok(ScaReport {
        weights,
        iterations: history.len(),
        objective_history: history,
        converged,
    })
}

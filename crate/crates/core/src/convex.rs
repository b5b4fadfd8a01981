//! Small dense solver for the SCA weight subproblem
//!
//! ```text
//! maximize    t
//! subject to  2·Re{c_kᴴ w} − b_k ≥ t      k = 1..K
//!             |v_lᴴ w|² ≤ η               l = 1..L
//!             ‖w‖ ≤ r
//! ```
//!
//! The complex variable is stacked as `x = [Re w; Im w]` and the problem is
//! solved with a log-barrier interior point method (damped Newton centering,
//! geometric barrier schedule). Iterates stay strictly feasible, so the
//! returned point satisfies every constraint and the reported objective is a
//! feasible value whose gap to the optimum is bounded by `m / s` for `m`
//! inequality constraints and barrier weight `s`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::array_model::{inner, norm};
use crate::error::{check_len, Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct EpigraphProblem {
    /// `c_k`: constraint `k` reads `2·Re{c_kᴴ w} − b_k ≥ t`.
    pub linear_terms: Vec<Vec<Complex64>>,
    /// `b_k`.
    pub offsets: Vec<f64>,
    /// `v_l`: constraint `|v_lᴴ w|² ≤ quad_cap`.
    pub quad_vectors: Vec<Vec<Complex64>>,
    pub quad_cap: f64,
    pub ball_radius: f64,
}

impl EpigraphProblem {
    pub fn new(
        linear_terms: Vec<Vec<Complex64>>,
        offsets: Vec<f64>,
        quad_vectors: Vec<Vec<Complex64>>,
        quad_cap: f64,
        ball_radius: f64,
    ) -> Result<Self> {
        let problem = Self {
            linear_terms,
            offsets,
            quad_vectors,
            quad_cap,
            ball_radius,
        };
        problem.validate()?;
        Ok(problem)
    }

    pub fn dimension(&self) -> usize {
        self.linear_terms.first().map_or(0, Vec::len)
    }

    pub fn validate(&self) -> Result<()> {
        if self.linear_terms.is_empty() {
            return Err(Error::InvalidParameter(
                "epigraph problem needs at least one linear term".into(),
            ));
        }
        check_len(self.linear_terms.len(), self.offsets.len())?;
        let n = self.dimension();
        for v in self.linear_terms.iter().chain(&self.quad_vectors) {
            check_len(n, v.len())?;
        }
        if !(self.quad_cap > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "quad_cap must be positive, got {}",
                self.quad_cap
            )));
        }
        if !(self.ball_radius > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "ball_radius must be positive, got {}",
                self.ball_radius
            )));
        }
        Ok(())
    }

    /// `min_k 2·Re{c_kᴴ w} − b_k`.
    pub fn objective_at(&self, w: &[Complex64]) -> f64 {
        self.linear_terms
            .iter()
            .zip(&self.offsets)
            .map(|(c, b)| 2.0 * inner(c, w).re - b)
            .fold(f64::INFINITY, f64::min)
    }

    /// Largest violation of the quadratic and ball constraints (0 if feasible).
    pub fn residual_at(&self, w: &[Complex64]) -> f64 {
        let ball = norm(w) - self.ball_radius;
        self.quad_vectors
            .iter()
            .map(|v| inner(v, w).norm_sqr() - self.quad_cap)
            .fold(ball, f64::max)
            .max(0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Optimal,
    MaxIterations,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexSolution {
    pub weights: Vec<Complex64>,
    pub objective: f64,
    pub feasibility_residual: f64,
    pub status: SolveStatus,
    /// Total Newton steps taken.
    pub newton_steps: usize,
}

/// Barrier-method knobs. The defaults meet a 1e-6 objective / 1e-8
/// feasibility contract on the problem sizes used here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarrierSettings {
    pub barrier_growth: f64,
    pub max_newton_steps: usize,
    pub centering_tolerance: f64,
}

impl Default for BarrierSettings {
    fn default() -> Self {
        Self {
            barrier_growth: 8.0,
            max_newton_steps: 2_000,
            centering_tolerance: 1e-10,
        }
    }
}

/// Real-stacked constraint data.
struct Stacked {
    dim: usize,
    // (a_k, b_k) with 2·Re{c_kᴴ w} = a_k·x
    linear: Vec<(DVector<f64>, f64)>,
    // (p_l, q_l) with |v_lᴴ w|² = (p_l·x)² + (q_l·x)²
    quads: Vec<(DVector<f64>, DVector<f64>)>,
    cap: f64,
    radius_sq: f64,
}

impl Stacked {
    fn new(problem: &EpigraphProblem) -> Self {
        let n = problem.dimension();
        let linear = problem
            .linear_terms
            .iter()
            .zip(&problem.offsets)
            .map(|(c, &b)| {
                let a = DVector::from_iterator(
                    2 * n,
                    c.iter()
                        .map(|z| 2.0 * z.re)
                        .chain(c.iter().map(|z| 2.0 * z.im)),
                );
                (a, b)
            })
            .collect();
        let quads = problem
            .quad_vectors
            .iter()
            .map(|v| {
                let p = DVector::from_iterator(
                    2 * n,
                    v.iter().map(|z| z.re).chain(v.iter().map(|z| z.im)),
                );
                let q = DVector::from_iterator(
                    2 * n,
                    v.iter().map(|z| -z.im).chain(v.iter().map(|z| z.re)),
                );
                (p, q)
            })
            .collect();
        Self {
            dim: 2 * n,
            linear,
            quads,
            cap: problem.quad_cap,
            radius_sq: problem.ball_radius * problem.ball_radius,
        }
    }

    fn num_constraints(&self) -> usize {
        self.linear.len() + self.quads.len() + 1
    }

    fn quad_value<'a>(&'a self, x: &'a DVector<f64>) -> impl Iterator<Item = f64> + 'a {
        self.quads.iter().map(move |(p, q)| {
            let (u, v) = (p.dot(x), q.dot(x));
            u * u + v * v
        })
    }

    fn objective(&self, x: &DVector<f64>) -> f64 {
        self.linear
            .iter()
            .map(|(a, b)| a.dot(x) - b)
            .fold(f64::INFINITY, f64::min)
    }

    /// Whether `(x, t)` is strictly inside every constraint.
    fn strictly_feasible(&self, x: &DVector<f64>, t: f64) -> bool {
        x.norm_squared() < self.radius_sq
            && self.quad_value(x).all(|f| f < self.cap)
            && self.linear.iter().all(|(a, b)| a.dot(x) - b - t > 0.0)
    }

    /// Barrier function `−s·t − Σ log(slack)`; `+∞` outside the domain.
    fn barrier(&self, x: &DVector<f64>, t: f64, s: f64) -> f64 {
        if !self.strictly_feasible(x, t) {
            return f64::INFINITY;
        }
        let mut value = -s * t - (self.radius_sq - x.norm_squared()).ln();
        for f in self.quad_value(x) {
            value -= (self.cap - f).ln();
        }
        for (a, b) in &self.linear {
            value -= (a.dot(x) - b - t).ln();
        }
        value
    }

    /// Gradient and Hessian of the barrier at a strictly feasible point.
    fn derivatives(&self, x: &DVector<f64>, t: f64, s: f64) -> (DVector<f64>, DMatrix<f64>) {
        let d = self.dim;
        let mut grad = DVector::zeros(d + 1);
        let mut hess = DMatrix::zeros(d + 1, d + 1);
        grad[d] = -s;

        for (a, b) in &self.linear {
            let slack = a.dot(x) - b - t;
            // gradient of the slack is (a, -1)
            let mut da = DVector::zeros(d + 1);
            da.rows_mut(0, d).copy_from(a);
            da[d] = -1.0;
            grad.axpy(-1.0 / slack, &da, 1.0);
            hess.ger(1.0 / (slack * slack), &da, &da, 1.0);
        }

        let mut quad_term =
            |grad_f: DVector<f64>, slack: f64, curvature: &dyn Fn(&mut DMatrix<f64>, f64)| {
                let mut gf = DVector::zeros(d + 1);
                gf.rows_mut(0, d).copy_from(&grad_f);
                grad.axpy(1.0 / slack, &gf, 1.0);
                hess.ger(1.0 / (slack * slack), &gf, &gf, 1.0);
                curvature(&mut hess, 1.0 / slack);
            };

        for (p, q) in &self.quads {
            let (u, v) = (p.dot(x), q.dot(x));
            let slack = self.cap - (u * u + v * v);
            let grad_f = p * (2.0 * u) + q * (2.0 * v);
            quad_term(grad_f, slack, &|h: &mut DMatrix<f64>, scale: f64| {
                let mut hx = h.view_mut((0, 0), (d, d));
                hx.ger(2.0 * scale, p, p, 1.0);
                hx.ger(2.0 * scale, q, q, 1.0);
            });
        }

        let slack = self.radius_sq - x.norm_squared();
        quad_term(x * 2.0, slack, &|h: &mut DMatrix<f64>, scale: f64| {
            for i in 0..d {
                h[(i, i)] += 2.0 * scale;
            }
        });

        (grad, hess)
    }
}

fn to_real(w: &[Complex64]) -> DVector<f64> {
    DVector::from_iterator(
        2 * w.len(),
        w.iter().map(|z| z.re).chain(w.iter().map(|z| z.im)),
    )
}

fn to_complex(x: &DVector<f64>) -> Vec<Complex64> {
    let n = x.len() / 2;
    (0..n).map(|i| Complex64::new(x[i], x[n + i])).collect()
}

fn newton_direction(grad: &DVector<f64>, hess: DMatrix<f64>) -> Option<DVector<f64>> {
    let rhs = -grad;
    match hess.clone().cholesky() {
        Some(chol) => Some(chol.solve(&rhs)),
        None => hess.lu().solve(&rhs),
    }
}

/// Scales `warm_start` into the strict interior of the quadratic and ball
/// constraints; the constraints are homogeneous so shrinking never hurts.
fn interior_start(stacked: &Stacked, warm_start: &[Complex64]) -> DVector<f64> {
    let x = to_real(warm_start);
    if x.iter().any(|v| !v.is_finite()) {
        return DVector::zeros(stacked.dim);
    }
    let mut ratio: f64 = x.norm_squared() / stacked.radius_sq;
    for f in stacked.quad_value(&x) {
        ratio = ratio.max(f / stacked.cap);
    }
    // Land at 99% of the tightest constraint.
    if ratio > 0.98 {
        x * (0.99 / ratio.sqrt())
    } else {
        x
    }
}

pub fn solve_epigraph(
    problem: &EpigraphProblem,
    warm_start: &[Complex64],
    tolerance: f64,
) -> Result<ConvexSolution> {
    solve_epigraph_with(problem, warm_start, tolerance, &BarrierSettings::default())
}

pub fn solve_epigraph_with(
    problem: &EpigraphProblem,
    warm_start: &[Complex64],
    tolerance: f64,
    settings: &BarrierSettings,
) -> Result<ConvexSolution> {
    check_len(problem.dimension(), warm_start.len())?;
    if problem.linear_terms.is_empty() {
        return Err(Error::InvalidParameter(
            "epigraph problem needs at least one linear term".into(),
        ));
    }
    if !(tolerance > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tolerance}"
        )));
    }

    let stacked = Stacked::new(problem);
    let mut x = interior_start(&stacked, warm_start);
    let data_finite = stacked
        .linear
        .iter()
        .all(|(a, b)| b.is_finite() && a.iter().all(|v| v.is_finite()))
        && stacked
            .quads
            .iter()
            .all(|(p, q)| p.iter().chain(q.iter()).all(|v| v.is_finite()));
    let start_objective = stacked.objective(&x);
    let mut t = start_objective - 0.1 * (1.0 + start_objective.abs());

    if !data_finite || !stacked.strictly_feasible(&x, t) {
        // The zero vector is the last resort; if even it is not strictly
        // inside, the constraint set has no interior.
        x = DVector::zeros(stacked.dim);
        let obj = stacked.objective(&x);
        t = obj - 0.1 * (1.0 + obj.abs());
        if !data_finite || !stacked.strictly_feasible(&x, t) {
            let w = to_complex(&x);
            return Ok(ConvexSolution {
                objective: f64::NEG_INFINITY,
                feasibility_residual: problem.residual_at(&w),
                weights: w,
                status: SolveStatus::Infeasible,
                newton_steps: 0,
            });
        }
    }

    let m = stacked.num_constraints() as f64;
    let mut s = (m / (1.0 + t.abs())).max(1e-3);
    let mut steps = 0usize;
    let mut status = SolveStatus::MaxIterations;

    'outer: loop {
        // Newton centering for the current barrier weight.
        loop {
            if steps >= settings.max_newton_steps {
                break 'outer;
            }
            let (grad, hess) = stacked.derivatives(&x, t, s);
            let Some(dir) = newton_direction(&grad, hess) else {
                break 'outer;
            };
            let decrement_sq = -grad.dot(&dir);
            if decrement_sq / 2.0 <= settings.centering_tolerance {
                break;
            }
            steps += 1;

            let dx = dir.rows(0, stacked.dim).into_owned();
            let dt = dir[stacked.dim];
            let f0 = stacked.barrier(&x, t, s);
            let mut step = 1.0;
            let mut moved = false;
            while step >= 1e-14 {
                let x_new = &x + &dx * step;
                let t_new = t + dt * step;
                let f_new = stacked.barrier(&x_new, t_new, s);
                // Strict decrease: at large s the Armijo slack drops below
                // the rounding of f and would accept null steps.
                if f_new < f0 && f_new <= f0 - 0.25 * step * decrement_sq {
                    x = x_new;
                    t = t_new;
                    moved = true;
                    break;
                }
                step *= 0.5;
            }
            if !moved {
                break;
            }
        }

        if m / s <= tolerance {
            status = SolveStatus::Optimal;
            break;
        }
        s *= settings.barrier_growth;
    }

    let weights = to_complex(&x);
    Ok(ConvexSolution {
        objective: problem.objective_at(&weights),
        feasibility_residual: problem.residual_at(&weights),
        weights,
        status,
        newton_steps: steps,
    })
}

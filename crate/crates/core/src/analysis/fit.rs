// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Least-squares fit of the transition curve
//! `d(n) = 0.5 + c1/n^c2 + c3/n^(1/3)`.
//!
//! Levenberg–Marquardt with Marquardt's diagonal scaling and the analytic
//! Jacobian. A step is accepted only if it lowers the residual sum of
//! squares, so the RSS never increases between iterations.

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::contour::ContourCurve;

/// Human-readable form of the fitted model.
pub const MODEL_FORMULA: &str = "0.5 + c1/n^c2 + c3/n^(1/3)";
/// Initial guess when none is given.
pub const DEFAULT_INIT: TransitionParams = TransitionParams {
    c1: 5.0,
    c2: 0.8,
    c3: 1.0,
};
/// Fewest contour points a fit accepts.
pub const MIN_FIT_POINTS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransitionParams {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl TransitionParams {
    fn as_vector(&self) -> Vector3<f64> {
        Vector3::new(self.c1, self.c2, self.c3)
    }

    fn from_vector(v: &Vector3<f64>) -> Self {
        TransitionParams {
            c1: v[0],
            c2: v[1],
            c3: v[2],
        }
    }
}

/// Evaluates `0.5 + c1/n^c2 + c3/n^(1/3)`.
pub fn transition_model(n: f64, p: &TransitionParams) -> f64 {
    0.5 + p.c1 * n.powf(-p.c2) + p.c3 / n.cbrt()
}

/// Partial derivatives of [`transition_model`] with respect to
/// `(c1, c2, c3)`: `(n^-c2, -c1·ln(n)·n^-c2, n^(-1/3))`.
pub fn jacobian_transition(n: f64, p: &TransitionParams) -> [f64; 3] {
    let pow = n.powf(-p.c2);
    [pow, -p.c1 * n.ln() * pow, 1.0 / n.cbrt()]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitOptions {
    pub max_iterations: usize,
    /// Stop when an accepted step lowers the RSS by less than this fraction.
    pub relative_tolerance: f64,
    /// Stop when the gradient `‖Jᵀr‖` falls below this.
    pub gradient_tolerance: f64,
    /// Drop contour points with `n` below this value.
    pub min_n: usize,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            max_iterations: 500,
            relative_tolerance: 1e-10,
            gradient_tolerance: 1e-9,
            min_n: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub rss: f64,
    pub iterations: usize,
    pub converged: bool,
    pub gradient_norm: f64,
    pub points: usize,
}

impl FitResult {
    pub fn params(&self) -> TransitionParams {
        TransitionParams {
            c1: self.c1,
            c2: self.c2,
            c3: self.c3,
        }
    }

    pub fn eval(&self, n: f64) -> f64 {
        transition_model(n, &self.params())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FitError {
    #[error("a fit needs at least {MIN_FIT_POINTS} points, got {0}")]
    TooFewPoints(usize),
    #[error("initial c2 must be positive, got {0}")]
    NonPositiveExponent(f64),
}

struct Problem {
    n: Vec<f64>,
    d: Vec<f64>,
}

impl Problem {
    fn rss(&self, p: &TransitionParams) -> f64 {
        self.n
            .iter()
            .zip(&self.d)
            .map(|(&n, &d)| {
                let r = d - transition_model(n, p);
                r * r
            })
            .sum()
    }

    /// `JᵀJ` and `Jᵀr` with `r = d - model`.
    fn normal_equations(&self, p: &TransitionParams) -> (Matrix3<f64>, Vector3<f64>) {
        let mut jtj = Matrix3::zeros();
        let mut jtr = Vector3::zeros();
        for (&n, &d) in self.n.iter().zip(&self.d) {
            let j = Vector3::from(jacobian_transition(n, p));
            let r = d - transition_model(n, p);
            jtj += j * j.transpose();
            jtr += j * r;
        }
        (jtj, jtr)
    }
}

pub fn fit_transition(
    curve: &ContourCurve,
    init: TransitionParams,
    options: &FitOptions,
) -> Result<FitResult, FitError> {
    let (n, d): (Vec<f64>, Vec<f64>) = curve
        .points
        .iter()
        .filter(|p| p.n >= options.min_n)
        .map(|p| (p.n as f64, p.density))
        .unzip();
    fit_points(Problem { n, d }, init, options)
}

/// Fits raw `(n, density)` pairs.
pub fn fit_transition_points(
    points: &[(f64, f64)],
    init: TransitionParams,
    options: &FitOptions,
) -> Result<FitResult, FitError> {
    let (n, d) = points.iter().copied().unzip();
    fit_points(Problem { n, d }, init, options)
}

fn fit_points(problem: Problem, init: TransitionParams, options: &FitOptions) -> Result<FitResult, FitError> {
    let count = problem.n.len();
    if count < MIN_FIT_POINTS {
        return Err(FitError::TooFewPoints(count));
    }
    if init.c2.is_nan() || init.c2 <= 0.0 {
        return Err(FitError::NonPositiveExponent(init.c2));
    }

    let mut params = init;
    let mut rss = problem.rss(&params);
    let mut lambda = 1e-3;
    let mut converged = false;
    let mut iterations = 0;
    let (mut jtj, mut jtr) = problem.normal_equations(&params);

    while iterations < options.max_iterations {
        if jtr.norm() < options.gradient_tolerance || rss == 0.0 {
            converged = true;
            break;
        }
        iterations += 1;

        let mut accepted = None;
        while lambda < 1e16 {
            let mut damped = jtj;
            for i in 0..3 {
                damped[(i, i)] += lambda * jtj[(i, i)].max(1e-12);
            }
            let step = damped.cholesky().map(|c| c.solve(&jtr));
            if let Some(step) = step {
                let candidate = TransitionParams::from_vector(&(params.as_vector() + step));
                let cand_rss = problem.rss(&candidate);
                if candidate.c2 > 0.0 && cand_rss.is_finite() && cand_rss < rss {
                    accepted = Some((candidate, cand_rss));
                    lambda = (lambda / 10.0).max(1e-12);
                    break;
                }
            }
            lambda *= 10.0;
        }

        let Some((candidate, cand_rss)) = accepted else {
            // No descent direction left at machine precision.
            converged = jtr.norm() < options.gradient_tolerance;
            break;
        };
        let decrease = (rss - cand_rss) / rss;
        params = candidate;
        rss = cand_rss;
        (jtj, jtr) = problem.normal_equations(&params);
        if decrease < options.relative_tolerance {
            converged = true;
            break;
        }
    }

    Ok(FitResult {
        c1: params.c1,
        c2: params.c2,
        c3: params.c3,
        rss,
        iterations,
        converged,
        gradient_norm: jtr.norm(),
        points: count,
    })
}

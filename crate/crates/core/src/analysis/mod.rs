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

//! From surfaces to transition curves: contour extraction, curve fitting
//! and the closed-form surrogate model.

pub mod contour;
pub mod fit;
pub mod model;

pub use contour::{contour, ContourCurve, ContourError, ContourPoint};
pub use fit::{
    fit_transition, fit_transition_points, jacobian_transition, transition_model, FitError, FitOptions, FitResult,
    TransitionParams, DEFAULT_INIT, MODEL_FORMULA,
};
pub use model::{psi, transition_width_limit, transition_width_ratio, zeta, ModelError, ZetaParams};

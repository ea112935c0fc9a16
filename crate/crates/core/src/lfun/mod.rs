//! Dirichlet series with Γ_R gamma factors: coefficient series and twists,
//! completed L-values, functional-equation residuals, a smoothed evaluator
//! for general gamma products, and zeros of ζ on the critical line.

mod checks;
mod eval;
pub(crate) mod fe;
mod series;
mod smoothed;
mod zeros;

pub use checks::{check_fe_residual, check_fed_residual, check_prop34_residual, prop34_sides};
pub use eval::{eval_completed, eval_dirichlet_L, gamma_factor, twisted_shifts};
pub use fe::{FunctionalEquationData, PolarPart};
pub use series::{
    dirichlet_divide, dirichlet_multiply_zeta, identify_eisenstein_pair, twist_coefficients, CoefficientSeries,
    EisensteinStructure, TwistKind, TwistSpec,
};
pub use smoothed::{smoothed_eval, SmoothedParams};
pub use zeros::{hardy_z, riemann_siegel_theta, zeta_zeros};

use crate::dirichlet::DirichletError;
use crate::value::ComplexValue;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LfunError {
    #[error("gamma factor has a pole at s = {0}")]
    GammaPole(ComplexValue),
    #[error("pole of L(s, ψ) at s = 1 for principal ψ")]
    PoleAtOne,
    #[error("no evaluation lane applies: {0}")]
    UnsupportedLane(String),
    #[error("not enough coefficients: {0}")]
    TruncationInsufficient(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Character(#[from] DirichletError),
}

/// [k] ∈ {0, 1} with k ≡ [k] mod 2.
pub fn parity_bracket(k: i64) -> u8 {
    k.rem_euclid(2) as u8
}

/// The default residual grid: Re s ∈ {0.3, 0.5, 0.7} with Im s drawn from
/// {0, ±1.5, ±4}, ten points in all.
pub fn sample_grid() -> Vec<ComplexValue> {
    let pts: [(f64, f64); 10] = [
        (0.3, 0.0),
        (0.3, 1.5),
        (0.3, -4.0),
        (0.5, 1.5),
        (0.5, -1.5),
        (0.5, 4.0),
        (0.5, -4.0),
        (0.7, 0.0),
        (0.7, -1.5),
        (0.7, 4.0),
    ];
    pts.iter().map(|&(re, im)| ComplexValue::new(re, im)).collect()
}

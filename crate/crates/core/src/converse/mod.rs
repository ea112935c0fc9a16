//! Tools around the converse theorem for weight-0 Maass forms of eigenvalue
//! 1/4: prime sets T_β and Vandermonde weights, the special factors G_k and
//! J_k, residue evaluation of the contour integrals 𝓘_k and 𝓘̃_k,
//! Fourier–Whittaker series and numerical modularity checks.

mod checks;
mod gj;
mod residues;
mod tbeta;
mod vandermonde;
mod whittaker;

pub use checks::{
    check_bessel_mellin, check_expansion_identity, contour_integral, expansion_sum, remainder_exponent,
    residue_expansion, ExpansionReport,
};
pub use gj::{g_factor, j_factor, jg_product, GJFactors};
pub use residues::{residue_integrals, residue_integrals_by_quadrature};
pub use tbeta::{build_tbeta, TBetaSet};
pub use vandermonde::{solve_vandermonde, solve_vandermonde_extended, LogExtension, VandermondeWeights};
pub use whittaker::{
    check_modularity, constant_term, default_truncation, whittaker_nonconstant, whittaker_series, MaassData,
    MaassEvalPoint,
};

use crate::hyp2f1::HypError;
use crate::lfun::LfunError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConverseError {
    #[error("duplicate node {0}")]
    DuplicateNode(String),
    #[error("t0 = {t0} needs more than {m} nodes")]
    T0OutOfRange { t0: usize, m: usize },
    #[error("no pool member gives a nonsingular extended system")]
    PoolExhausted,
    #[error("digamma pole at s = {0}")]
    DigammaPole(String),
    #[error("pole data missing for s = {0}")]
    IncompletePoleData(f64),
    #[error("truncation insufficient: {0}")]
    TruncationInsufficient(String),
    #[error("quadrature did not converge: {0}")]
    QuadratureFailure(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Lfun(#[from] LfunError),
    #[error(transparent)]
    Hyp(#[from] HypError),
}

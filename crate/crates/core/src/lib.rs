//! Numerical toolkit for twisted L-functions: special functions, degenerate
//! Gauss hypergeometric continuation, Dirichlet characters and twist
//! identities, completed L-functions and their functional equations, Artin
//! Euler-factor pipelines, and converse-theorem checks for Maass forms.

pub mod artin;
pub mod converse;
pub mod dirichlet;
pub mod hyp2f1;
pub mod lfun;
pub mod quad;
pub mod specfun;
pub mod value;

pub use value::ComplexValue;

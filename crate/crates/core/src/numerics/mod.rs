//! Multiprecision special functions, convergence acceleration and the
//! analytic interpolations of the sporadic sequences.

pub mod accel;
mod bernoulli;
pub mod checks;
mod gamma;
mod hyper;
mod interp;
mod theta;

pub use accel::{AccelScheme, NodeMap, DEFAULT_PARTIAL_SUM_CAP};
pub use bernoulli::{bernoulli, bernoulli_table};
pub use gamma::{binomial_general, gamma, gamma_rational, gen_binomial, pochhammer, rgamma};
pub use hyper::{gauss_at_one, hyp2f1, hyp2f1_side, pfq, Side};
pub use theta::{modular_lambda, theta2, theta3};
pub use interp::{
    apery_functional_residual, clausen_2f1_at_z0, default_scheme, interp_eval, interp_eval_C, interp_eval_with,
    interp_partial_sum, interp_term, label_functional_residual, residue_E, residue_E_closed_form, residue_E_limit,
    AccelMethod, InterpLabel,
};

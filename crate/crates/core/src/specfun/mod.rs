//! Special functions and the named constants of short random walks.

mod constants;
mod elliptic;
mod gamma;
mod hyp;
mod levin;

pub use constants::{
    a4_hypergeometric, b4_hypergeometric, constant, improbable_5f4, registry, ConstantEntry,
};
pub use elliptic::{agm, elliptic_k, elliptic_kprime};
pub use gamma::{binom_real, digamma, gamma, gamma_fn, lgamma, pochhammer, rgamma, trigamma};
pub use hyp::{hyp2f1, hyp2f1_deriv, pfq, pfq_rat, HypSeriesSpec, SeriesValue};
pub use levin::levin_u;

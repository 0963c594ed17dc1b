//! Base distributions: generalized gamma, generalized negative binomial,
//! Snedecor–Fisher (gamma-ratio convention), and the elementary samplers they
//! are built from (gamma, Weibull, positive strictly stable, gamma-ratio Z).

pub mod gg;
pub mod gnb;
pub mod samplers;
pub mod sf;

pub use gg::{gg_cdf, gg_pdf, gg_quantile, gg_sample, GGParams};
pub use gnb::{gnb_pmf, gnb_sample, gnb_truncation_index, nb_pmf};
pub use samplers::{gamma_sample, stable_sample, weibull_sample, z_ratio_sample};
pub use sf::{sf_cdf, sf_quantile, sf_sample};

//! Statistical models for precipitation series built around the generalized
//! gamma (GG) and generalized negative binomial (GNB) families.
//!
//! The crate covers five areas:
//!
//! - [`dist`] — special functions, base samplers and the GG / GNB / Snedecor–Fisher
//!   distributions, including positive strictly stable variates.
//! - [`gnbfit`] — fitting NB and GNB models to wet-period duration histograms by
//!   ℓ1/ℓ2/ℓ∞ distance minimization, with chi-square goodness of fit.
//! - [`extremes`] — the limit law of the maximum daily precipitation within a wet
//!   period: CDF/pdf/quantile, four product-form samplers, fractional moments,
//!   the mixed-exponential tail check and GNB random-sum limits.
//! - [`trend`] — least-squares estimation of the stability parameters `(a, beta)`
//!   of cumulative daily precipitation.
//! - [`abtest`] — the `SR_GG` abnormality test for total wet-period volumes and the
//!   moving-window scan classifying periods as absolutely / intermediate /
//!   relatively / not extreme.
//!
//! [`pipeline`] handles CSV ingestion and wet-period segmentation; the `precip-glaw`
//! binary exposes everything as subcommands.

// Domain checks are written `!(x > 0.0)` so that NaN fails them too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod abtest;
pub mod cli;
pub mod dist;
pub mod error;
pub mod extremes;
pub mod gnbfit;
pub mod ks;
pub mod optim;
pub mod pipeline;
pub mod quad;
pub mod rng;
pub mod roots;
pub mod special;
pub mod trend;

pub use error::{Error, Result};
pub use rng::Rng;

/// Version tag written as the first line of every CSV the tool emits.
pub const CSV_VERSION_HEADER: &str = "# precip-glaw v1";

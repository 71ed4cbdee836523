//! Scalar special functions: log-Gamma, Mittag-Leffler, Wright M.

pub mod log_gamma;
pub mod mittag_leffler;
pub mod wright;

pub use log_gamma::{gamma, ln_gamma_complex, log_gamma, recip_gamma, LogGamma};
pub use mittag_leffler::{mittag_leffler, mittag_leffler_complex};
pub use wright::{wright_m, wright_table, WrightM};

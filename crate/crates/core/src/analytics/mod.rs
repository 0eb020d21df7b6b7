//! Band counts, μ values, zeta series, spectral radius, prime-counting
//! constants and the domestic/non-domestic verdict.

mod arithmetic;
mod classify;
mod counting;
mod pnt;
mod spectral;
mod zeta;

pub use arithmetic::{divisors, mobius, totient, ArithmeticTables};
pub use classify::{classify, mu_closed_form, Classification, Evidence, Growth, MuTerm, Verdict};
pub use counting::{band_count_pi, mu_from_n, mu_from_pi, CountingReport};
pub use pnt::{pnt_constants, pnt_ratio_table, PntConstants, PntRow};
pub use spectral::{eigenvalues, peripheral_count, spectral_radius, SpectralRadius};
pub use zeta::{
    euler_product_coefficients, exp_log_coefficients, power_sums_from_reciprocal,
    zeta_coefficients, ZetaReport,
};

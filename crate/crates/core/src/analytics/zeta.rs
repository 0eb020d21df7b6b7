use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polynomial::IntegerPolynomial;
use crate::strings::BandClass;

/// `Σ_m p_m t^m = −t d/dt log P(t)` read off a polynomial with `P(0) = 1`.
pub fn power_sums_from_reciprocal(reciprocal: &IntegerPolynomial, count: usize) -> Vec<BigInt> {
    let mut p: Vec<BigInt> = Vec::with_capacity(count);
    for m in 1..=count {
        let mut s = -reciprocal.coeff(m) * BigInt::from(m);
        for k in 1..m {
            s -= reciprocal.coeff(k) * &p[m - k - 1];
        }
        p.push(s);
    }
    p
}

/// Coefficients of `1/P(t)` through `t^terms`.
fn series_inverse(reciprocal: &IntegerPolynomial, terms: usize) -> Vec<BigInt> {
    let mut z = vec![BigInt::one()];
    for m in 1..=terms {
        let s: BigInt = (1..=m).map(|k| reciprocal.coeff(k) * &z[m - k]).sum();
        z.push(-s);
    }
    z
}

/// `exp(Σ_{m ≤ M} N_m t^m / m)` through `t^M`, in exact rationals;
/// `n[i]` holds `N_{i+1}`.
pub fn exp_log_coefficients(n: &[BigInt], terms: usize) -> Result<Vec<BigInt>> {
    if n.len() < terms {
        return Err(Error::Precondition(format!(
            "exp-log expansion to t^{terms} needs {terms} closed-walk counts"
        )));
    }
    let mut e = vec![BigRational::one()];
    for m in 1..=terms {
        let s: BigRational = (1..=m)
            .map(|k| BigRational::from_integer(n[k - 1].clone()) * &e[m - k])
            .sum();
        e.push(s / BigRational::from_integer(BigInt::from(m)));
    }
    e.into_iter()
        .enumerate()
        .map(|(m, c)| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::consistency(format!("exp-log coefficient of t^{m} is {c}")))
            }
        })
        .collect()
}

/// Coefficients of `det(I − tA)^{-1}` through `t^terms`, checked against the
/// exp-log expansion of the same polynomial and for non-negativity.
pub fn zeta_coefficients(reciprocal: &IntegerPolynomial, terms: usize) -> Result<Vec<BigInt>> {
    if !reciprocal.coeff(0).is_one() {
        return Err(Error::Precondition(
            "reciprocal polynomial must have constant term 1".into(),
        ));
    }
    let z = series_inverse(reciprocal, terms);
    let check = exp_log_coefficients(&power_sums_from_reciprocal(reciprocal, terms), terms)?;
    if check != z {
        return Err(Error::consistency("ζ series inverse disagrees with exp-log expansion"));
    }
    if let Some(m) = z.iter().position(Signed::is_negative) {
        return Err(Error::consistency(format!("ζ coefficient of t^{m} is negative")));
    }
    Ok(z)
}

/// `∏ (1 − t^{|b|})^{-1}` over the given bands, through `t^terms`.
pub fn euler_product_coefficients(bands: &[BandClass], terms: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); terms + 1];
    c[0] = BigInt::one();
    for b in bands {
        let l = b.len();
        // multiply by the geometric series in t^l
        for m in l..=terms {
            let prev = c[m - l].clone();
            c[m] += prev;
        }
    }
    c
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZetaReport {
    pub reciprocal: IntegerPolynomial,
    pub series: Vec<BigInt>,
    /// `1/R`; `None` (infinite) when `R = 0`.
    pub radius_of_convergence: Option<f64>,
}

impl ZetaReport {
    pub fn compute(reciprocal: IntegerPolynomial, terms: usize, spectral_radius: f64) -> Result<Self> {
        let series = zeta_coefficients(&reciprocal, terms)?;
        Ok(ZetaReport {
            reciprocal,
            series,
            radius_of_convergence: (spectral_radius > 0.0).then(|| 1.0 / spectral_radius),
        })
    }
}

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polynomial::{IntegerPolynomial, QPoly};

/// `R = 1/t*` for the least positive root `t*` of `det(I − tA)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralRadius {
    pub value: f64,
    /// Width of the certified interval around `value`.
    pub error_bound: f64,
}

const CERTIFICATE: f64 = 1e-9;
const BISECTION_STEPS: u32 = 64;

fn sturm_sequence(q: &QPoly) -> Vec<QPoly> {
    let mut seq = vec![q.clone(), q.derivative()];
    while !seq.last().unwrap().is_zero() && seq.last().unwrap().degree() > 0 {
        let k = seq.len();
        let (_, r) = seq[k - 2].div_rem(&seq[k - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(r.neg());
    }
    seq.retain(|p| !p.is_zero());
    seq
}

fn sign_changes(seq: &[QPoly], x: &BigRational) -> usize {
    let signs: Vec<bool> = seq
        .iter()
        .map(|p| p.eval(x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

/// Exact Sturm isolation of the least positive root, then sign bisection on
/// dyadic rationals. `R = 0` when there is no positive root.
pub fn spectral_radius(reciprocal: &IntegerPolynomial) -> Result<SpectralRadius> {
    if reciprocal.degree().unwrap_or(0) == 0 {
        return Ok(SpectralRadius {
            value: 0.0,
            error_bound: 0.0,
        });
    }
    let q = reciprocal.to_rational().squarefree();
    let sturm = sturm_sequence(&q);
    let lead = q.coeffs.last().unwrap().abs();
    let bound = BigRational::one()
        + q.coeffs[..q.degree()]
            .iter()
            .map(|c| c.abs() / &lead)
            .max()
            .unwrap_or_else(BigRational::zero);
    let zero = BigRational::zero();
    let base = sign_changes(&sturm, &zero);
    let roots_up_to = |x: &BigRational| base - sign_changes(&sturm, x);
    if roots_up_to(&bound) == 0 {
        return Ok(SpectralRadius {
            value: 0.0,
            error_bound: 0.0,
        });
    }

    let two = BigRational::from_integer(BigInt::from(2));
    let (mut lo, mut hi) = (zero, bound);
    while roots_up_to(&hi) > 1 {
        let mid = (&lo + &hi) / &two;
        if roots_up_to(&mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let lo_positive = q.eval(&lo).is_positive();
    for _ in 0..BISECTION_STEPS {
        let mid = (&lo + &hi) / &two;
        let v = q.eval(&mid);
        if v.is_zero() {
            lo = mid.clone();
            hi = mid;
            break;
        }
        if v.is_positive() == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if lo.is_zero() {
        return Err(Error::Convergence(
            "least positive root not separated from zero".into(),
        ));
    }
    let upper = to_f64(&lo.recip());
    let lower = to_f64(&hi.recip());
    let error_bound = upper - lower;
    if !(error_bound <= CERTIFICATE) {
        return Err(Error::Convergence(format!(
            "spectral radius interval width {error_bound:e} exceeds {CERTIFICATE:e}"
        )));
    }
    Ok(SpectralRadius {
        value: to_f64(&((&lo + &hi) / &two).recip()),
        error_bound,
    })
}

fn horner(p: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::zero();
    let mut d = Complex64::zero();
    for &c in p.iter().rev() {
        d = d * z + v;
        v = v * z + c;
    }
    (v, d)
}

/// Distinct non-zero eigenvalues: the reciprocals of the roots of
/// `det(I − tA)`, found by Aberth iteration on the square-free part and
/// certified by relative residual.
pub fn eigenvalues(reciprocal: &IntegerPolynomial) -> Result<Vec<Complex64>> {
    if reciprocal.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let q = reciprocal.to_rational().squarefree();
    // Reversing turns roots t into eigenvalues 1/t; make it monic.
    let mut p: Vec<f64> = q.coeffs.iter().rev().map(to_f64).collect();
    let lead = *p.last().unwrap();
    p.iter_mut().for_each(|c| *c /= lead);
    let d = p.len() - 1;
    let radius = 1.0 + p[..d].iter().map(|c| c.abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(radius, 0.4 + std::f64::consts::TAU * k as f64 / d as f64))
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for k in 0..d {
            let (v, dv) = horner(&p, z[k]);
            if v == Complex64::zero() {
                continue;
            }
            let ratio = v / dv;
            let repulsion: Complex64 = (0..d).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (Complex64::one() - ratio * repulsion);
            z[k] -= step;
            moved = moved.max(step.norm() / (1.0 + z[k].norm()));
        }
        if moved < 1e-15 {
            break;
        }
    }
    for &root in &z {
        let (v, _) = horner(&p, root);
        let scale: f64 = p.iter().rev().fold(0.0, |acc, c| acc * root.norm() + c.abs());
        if !(v.norm() / scale <= CERTIFICATE) || !root.is_finite() {
            return Err(Error::Convergence(format!(
                "eigenvalue residual {:e} above {CERTIFICATE:e}",
                v.norm() / scale
            )));
        }
    }
    z.sort_by(|a, b| {
        b.norm()
            .total_cmp(&a.norm())
            .then(a.arg().total_cmp(&b.arg()))
    });
    Ok(z)
}

/// Eigenvalues whose modulus matches `radius` to a relative `1e-7`.
pub fn peripheral_count(reciprocal: &IntegerPolynomial, radius: f64) -> Result<usize> {
    if radius == 0.0 {
        return Ok(0);
    }
    Ok(eigenvalues(reciprocal)?
        .iter()
        .filter(|z| (z.norm() - radius).abs() <= 1e-7 * radius.max(1.0))
        .count())
}

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state_graph::SCCDecomposition;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PntConstants {
    pub r: f64,
    /// Sum of periods over components attaining `r`; 0 without cycles.
    pub c: u64,
    /// lcm of the periods of non-trivial components.
    pub l: u64,
    /// Only `r > 1` gives a meaningful asymptotic.
    pub applicable: bool,
}

const RADIUS_TOLERANCE: f64 = 1e-9;

pub fn pnt_constants(scc: &SCCDecomposition) -> PntConstants {
    let r = scc.spectral_radius();
    let mut c = 0;
    let mut l = 1u64;
    for (_, comp) in scc.nontrivial() {
        l = l.lcm(&comp.period);
        if r > 0.0 && (comp.spectral_radius - r).abs() <= RADIUS_TOLERANCE {
            c += comp.period;
        }
    }
    PntConstants {
        r,
        c,
        l,
        applicable: r > 1.0,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PntRow {
    pub m: usize,
    /// `m·L`.
    pub n: usize,
    #[serde(with = "crate::decimal")]
    pub pi: BigInt,
    /// `π(n)·n / (C·R^n)`.
    pub ratio: f64,
}

/// Natural log of a positive big integer, safe beyond the `f64` range.
fn ln_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits < 1000 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 60;
    (x >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// Rows for `m` in `from..=to`; `pi[i]` holds `π(i + 1)`.
pub fn pnt_ratio_table(
    pi: &[BigInt],
    constants: &PntConstants,
    from: usize,
    to: usize,
) -> Result<Vec<PntRow>> {
    if !constants.applicable {
        return Err(Error::Precondition(format!(
            "prime-counting asymptotic needs spectral radius above 1, have {}",
            constants.r
        )));
    }
    if from == 0 || from > to {
        return Err(Error::Precondition(format!("empty or invalid range {from}..={to}")));
    }
    let last = to * constants.l as usize;
    if pi.len() < last {
        return Err(Error::Precondition(format!(
            "band counts needed up to {last}, have {}",
            pi.len()
        )));
    }
    Ok((from..=to)
        .map(|m| {
            let n = m * constants.l as usize;
            let p = pi[n - 1].clone();
            let ratio = if p.is_positive() {
                (ln_big(&p) + (n as f64).ln()
                    - (constants.c as f64).ln()
                    - n as f64 * constants.r.ln())
                .exp()
            } else {
                0.0
            };
            PntRow { m, n, pi: p, ratio }
        })
        .collect())
}

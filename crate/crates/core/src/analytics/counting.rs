use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::arithmetic::{divisors, mobius, totient, ArithmeticTables};
use crate::error::{Error, Result};
use crate::state_graph::BigIntSequence;

fn covers(len: usize, m: usize, what: &str) -> Result<()> {
    if m == 0 || m > len {
        return Err(Error::Precondition(format!(
            "{what} needs terms up to {m}, have {len}"
        )));
    }
    Ok(())
}

fn exact_div(sum: BigInt, by: u64, what: &str, m: usize) -> Result<BigInt> {
    let (q, r) = sum.div_rem(&BigInt::from(by));
    if !r.is_zero() {
        return Err(Error::consistency(format!(
            "{what} at m = {m}: sum {sum} not divisible by {by}"
        )));
    }
    if q.is_negative() {
        return Err(Error::consistency(format!("{what} at m = {m} is negative")));
    }
    Ok(q)
}

/// `π(m) = (1/m) Σ_{d|m} μ(m/d) N_d`.
pub fn band_count_pi(n: &BigIntSequence, m: usize) -> Result<BigInt> {
    covers(n.len(), m, "band count")?;
    let sum: BigInt = divisors(m as u64)
        .into_iter()
        .map(|d| n.get(d as usize) * mobius(m as u64 / d))
        .sum();
    exact_div(sum, m as u64, "band count", m)
}

/// `μ(m) = ½ Σ_{d|m} π(d)`, `pi[i]` holding `π(i + 1)`.
pub fn mu_from_pi(pi: &[BigInt], m: usize) -> Result<BigInt> {
    covers(pi.len(), m, "μ from band counts")?;
    let sum: BigInt = divisors(m as u64).into_iter().map(|d| &pi[d as usize - 1]).sum();
    exact_div(sum, 2, "μ from band counts", m)
}

/// `μ(m) = (1/2m) Σ_{d|m} φ(m/d) N_d`.
pub fn mu_from_n(n: &BigIntSequence, m: usize) -> Result<BigInt> {
    covers(n.len(), m, "μ from closed walks")?;
    let sum: BigInt = divisors(m as u64)
        .into_iter()
        .map(|d| n.get(d as usize) * totient(m as u64 / d))
        .sum();
    exact_div(sum, 2 * m as u64, "μ from closed walks", m)
}

/// `N`, `π` and `μ` on `1..=M`, with both μ formulas compared term by term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountingReport {
    pub n: BigIntSequence,
    pub pi: Vec<BigInt>,
    pub mu: Vec<BigInt>,
}

impl CountingReport {
    pub fn compute(n: BigIntSequence) -> Result<Self> {
        let tables = ArithmeticTables::new(n.len());
        let len = n.len();
        let mut pi = Vec::with_capacity(len);
        for m in 1..=len {
            let sum: BigInt = tables
                .divisors(m)
                .iter()
                .map(|&d| n.get(d as usize) * tables.mobius(m / d as usize))
                .sum();
            pi.push(exact_div(sum, m as u64, "band count", m)?);
        }
        let mut mu = Vec::with_capacity(len);
        for m in 1..=len {
            let via_pi = mu_from_pi(&pi, m)?;
            let sum: BigInt = tables
                .divisors(m)
                .iter()
                .map(|&d| n.get(d as usize) * tables.totient(m / d as usize))
                .sum();
            let via_n = exact_div(sum, 2 * m as u64, "μ from closed walks", m)?;
            if via_pi != via_n {
                return Err(Error::consistency(format!(
                    "μ({m}) is {via_pi} from band counts but {via_n} from closed walks"
                )));
            }
            mu.push(via_pi);
        }
        Ok(CountingReport { n, pi, mu })
    }
}

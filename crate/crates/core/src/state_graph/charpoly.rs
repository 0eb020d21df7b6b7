use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::AdjacencyMatrix;
use super::scc::strongly_connected_components;
use crate::error::{Error, Result};
use crate::polynomial::IntegerPolynomial;

/// Closed-walk counts `N_1, …, N_M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigIntSequence {
    values: Vec<BigInt>,
    traced: usize,
}

impl BigIntSequence {
    pub fn new(values: Vec<BigInt>, traced: usize) -> Self {
        BigIntSequence {
            traced: traced.min(values.len()),
            values,
        }
    }

    /// `N_m`, 1-based. Panics past the computed range.
    pub fn get(&self, m: usize) -> &BigInt {
        &self.values[m - 1]
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// How many leading terms came from traces; the rest from the recurrence.
    pub fn traced_terms(&self) -> usize {
        self.traced
    }
}

/// `Tr(A^m)` for `m = 1..=count` by repeated sparse multiplication.
pub fn trace_powers_direct(a: &AdjacencyMatrix, count: usize) -> Vec<BigInt> {
    let n = a.order();
    let succ: Vec<Vec<(usize, u64)>> = (0..n).map(|i| a.successors(i).collect()).collect();
    let mut power: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row = vec![BigInt::zero(); n];
            row[i] = BigInt::one();
            row
        })
        .collect();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        for row in power.iter_mut() {
            let mut next = vec![BigInt::zero(); n];
            for (k, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for &(j, mult) in &succ[k] {
                    next[j] += x * mult;
                }
            }
            *row = next;
        }
        out.push((0..n).map(|i| &power[i][i]).sum());
    }
    out
}

/// Coefficients of `det(I − tA)` from power sums by Newton's identities.
fn newton(power_sums: &[BigInt]) -> Result<IntegerPolynomial> {
    let mut c = vec![BigInt::one()];
    for m in 1..=power_sums.len() {
        let mut s = power_sums[m - 1].clone();
        for i in 1..m {
            s += &c[i] * &power_sums[m - i - 1];
        }
        let (q, r) = (-s).div_rem(&BigInt::from(m));
        if !r.is_zero() {
            return Err(Error::consistency(format!(
                "Newton identity at degree {m} is not integral"
            )));
        }
        c.push(q);
    }
    Ok(IntegerPolynomial::new(c))
}

/// `det(I − tA)` by Newton's identities on the traces of `A` itself.
pub fn reciprocal_char_poly_newton(a: &AdjacencyMatrix) -> Result<IntegerPolynomial> {
    newton(&trace_powers_direct(a, a.order()))
}

/// `det(I − tA)` by Berkowitz's division-free algorithm.
pub fn reciprocal_char_poly_berkowitz(a: &AdjacencyMatrix) -> IntegerPolynomial {
    let n = a.order();
    if n == 0 {
        return IntegerPolynomial::one();
    }
    let m = a.to_bigint_rows();
    let mut vect = vec![BigInt::one(), -&m[n - 1][n - 1]];
    for r in (0..n - 1).rev() {
        let s = n - 1 - r;
        let mut col = vec![BigInt::one(), -&m[r][r]];
        let mut v: Vec<BigInt> = (r + 1..n).map(|i| m[i][r].clone()).collect();
        for k in 0..s {
            let rv: BigInt = (r + 1..n).zip(&v).map(|(j, x)| &m[r][j] * x).sum();
            col.push(-rv);
            if k + 1 < s {
                v = (r + 1..n)
                    .map(|i| (r + 1..n).zip(&v).map(|(j, x)| &m[i][j] * x).sum())
                    .collect();
            }
        }
        let next: Vec<BigInt> = (0..s + 2)
            .map(|i| {
                (0..=i.min(s))
                    .map(|j| &col[i - j] * &vect[j])
                    .sum()
            })
            .collect();
        vect = next;
    }
    IntegerPolynomial::new(vect)
}

/// Exact `det(I − tA)`: Newton's identities per strongly connected component,
/// multiplied, then checked against Berkowitz on the whole matrix.
pub fn reciprocal_char_poly(a: &AdjacencyMatrix) -> Result<IntegerPolynomial> {
    let mut product = IntegerPolynomial::one();
    for component in strongly_connected_components(a) {
        let sub = a.principal_submatrix(&component);
        product = &product * &reciprocal_char_poly_newton(&sub)?;
    }
    let check = reciprocal_char_poly_berkowitz(a);
    if check != product {
        return Err(Error::consistency(format!(
            "det(I − tA) disagrees: per-component {product}, whole-matrix {check}"
        )));
    }
    Ok(product)
}

/// `N_m = Tr(A^m)` for `m = 1..=count`: traces up to `2n`, the linear
/// recurrence from `det(I − tA)` beyond, with agreement checked on the overlap.
pub fn trace_powers(a: &AdjacencyMatrix, count: usize) -> Result<BigIntSequence> {
    let reciprocal = reciprocal_char_poly(a)?;
    let traced = count.min(2 * a.order());
    let direct = trace_powers_direct(a, traced);
    let c = reciprocal.coefficients();
    let d = c.len().saturating_sub(1);
    let recur = |values: &[BigInt], m: usize| -> BigInt {
        -(1..=d).map(|k| &c[k] * &values[m - k - 1]).sum::<BigInt>()
    };
    for m in d + 1..=traced {
        if recur(&direct, m) != direct[m - 1] {
            return Err(Error::consistency(format!(
                "recurrence disagrees with Tr(A^{m})"
            )));
        }
    }
    let mut values = direct;
    for m in traced + 1..=count {
        let next = recur(&values, m);
        values.push(next);
    }
    Ok(BigIntSequence::new(values, traced))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m3() -> AdjacencyMatrix {
        AdjacencyMatrix::from_rows(vec![vec![0, 1, 1], vec![0, 0, 1], vec![1, 0, 0]]).unwrap()
    }

    #[test]
    fn two_by_two_general() {
        let a = AdjacencyMatrix::from_rows(vec![vec![2, 3], vec![5, 7]]).unwrap();
        // det(I − tA) = 1 − 9t + (14 − 15)t²
        let p = IntegerPolynomial::from_i64s(&[1, -9, -1]);
        assert_eq!(reciprocal_char_poly_berkowitz(&a), p);
        assert_eq!(reciprocal_char_poly_newton(&a).unwrap(), p);
        assert_eq!(reciprocal_char_poly(&a).unwrap(), p);
    }

    #[test]
    fn block_of_the_example() {
        let p = reciprocal_char_poly(&m3()).unwrap();
        assert_eq!(p, IntegerPolynomial::from_i64s(&[1, 0, -1, -1]));
        assert_eq!(reciprocal_char_poly(&AdjacencyMatrix::zero(4)).unwrap(), IntegerPolynomial::one());
    }

    #[test]
    fn recurrence_extends_traces() {
        let a = m3();
        let seq = trace_powers(&a, 40).unwrap();
        assert_eq!(seq.traced_terms(), 6);
        assert_eq!(seq.values(), trace_powers_direct(&a, 40).as_slice());
        let zero = trace_powers(&AdjacencyMatrix::zero(3), 5).unwrap();
        assert!(zero.values().iter().all(Zero::is_zero));
        assert_eq!(trace_powers(&AdjacencyMatrix::zero(0), 3).unwrap().len(), 3);
    }
}

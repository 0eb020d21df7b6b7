use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// Square matrix of arrow multiplicities, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u64>>", into = "Vec<Vec<u64>>")]
pub struct AdjacencyMatrix {
    order: usize,
    entries: Vec<u64>,
}

impl TryFrom<Vec<Vec<u64>>> for AdjacencyMatrix {
    type Error = String;

    fn try_from(rows: Vec<Vec<u64>>) -> Result<Self, String> {
        AdjacencyMatrix::from_rows(rows).ok_or_else(|| "matrix is not square".to_string())
    }
}

impl From<AdjacencyMatrix> for Vec<Vec<u64>> {
    fn from(m: AdjacencyMatrix) -> Self {
        m.rows()
    }
}

impl AdjacencyMatrix {
    pub fn zero(order: usize) -> Self {
        AdjacencyMatrix {
            order,
            entries: vec![0; order * order],
        }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zero(order);
        for i in 0..order {
            m.set(i, i, 1);
        }
        m
    }

    /// `None` unless every row has as many entries as there are rows.
    pub fn from_rows(rows: Vec<Vec<u64>>) -> Option<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return None;
        }
        Some(AdjacencyMatrix {
            order,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.order + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: u64) {
        self.entries[i * self.order + j] = value;
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.entries.chunks(self.order.max(1)).take(self.order).map(<[u64]>::to_vec).collect()
    }

    pub fn trace(&self) -> u64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    /// Rows and columns restricted to `indices`, in that order.
    pub fn principal_submatrix(&self, indices: &[usize]) -> Self {
        let mut m = Self::zero(indices.len());
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                m.set(a, b, self.get(i, j));
            }
        }
        m
    }

    /// Reorders the vertices: row `k` of the result is row `order[k]` here.
    pub fn permuted(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.order, "permutation has the wrong length");
        self.principal_submatrix(order)
    }

    /// Panics if an entry overflows `u64`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order);
        let n = self.order;
        let mut m = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = a
                        .checked_mul(other.get(k, j))
                        .and_then(|p| p.checked_add(m.get(i, j)))
                        .expect("matrix entry overflow");
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order);
        AdjacencyMatrix {
            order: self.order,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.checked_add(*b).expect("matrix entry overflow"))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(self.order), |acc, _| acc.mul(self))
    }

    /// Non-zero entries of row `i` as `(column, multiplicity)`.
    pub fn successors(&self, i: usize) -> impl Iterator<Item = (usize, u64)> + '_ {
        (0..self.order).filter_map(move |j| {
            let v = self.get(i, j);
            (v != 0).then_some((j, v))
        })
    }

    pub(crate) fn to_bigint_rows(&self) -> Vec<Vec<BigInt>> {
        self.rows()
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Compact JSON dump, one row per line.
    pub fn to_json(&self) -> String {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| serde_json::to_string(r).expect("integers serialize"))
            .collect();
        if rows.is_empty() {
            "[]".to_string()
        } else {
            format!("[\n  {}\n]", rows.join(",\n  "))
        }
    }
}

impl fmt::Display for AdjacencyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .entries
            .iter()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        for r in self.rows() {
            let cells: Vec<String> = r.iter().map(|v| format!("{v:>width$}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

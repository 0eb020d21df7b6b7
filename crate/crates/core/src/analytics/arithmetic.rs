/// Möbius function, totient and divisor lists for `1..=max`, by sieve.
#[derive(Clone, Debug)]
pub struct ArithmeticTables {
    mobius: Vec<i8>,
    totient: Vec<u64>,
    divisors: Vec<Vec<u64>>,
}

impl ArithmeticTables {
    pub fn new(max: usize) -> Self {
        let mut mobius = vec![1i8; max + 1];
        let mut totient: Vec<u64> = (0..=max as u64).collect();
        let mut composite = vec![false; max + 1];
        for p in 2..=max {
            if composite[p] {
                continue;
            }
            for k in (p..=max).step_by(p) {
                if k > p {
                    composite[k] = true;
                }
                mobius[k] = -mobius[k];
                totient[k] = totient[k] / p as u64 * (p as u64 - 1);
            }
            if let Some(sq) = p.checked_mul(p) {
                for k in (sq..=max).step_by(sq) {
                    mobius[k] = 0;
                }
            }
        }
        let mut divisors = vec![Vec::new(); max + 1];
        for d in 1..=max {
            for k in (d..=max).step_by(d) {
                divisors[k].push(d as u64);
            }
        }
        ArithmeticTables {
            mobius,
            totient,
            divisors,
        }
    }

    pub fn max(&self) -> usize {
        self.mobius.len() - 1
    }

    pub fn mobius(&self, m: usize) -> i8 {
        assert!(m >= 1);
        self.mobius[m]
    }

    pub fn totient(&self, m: usize) -> u64 {
        assert!(m >= 1);
        self.totient[m]
    }

    pub fn divisors(&self, m: usize) -> &[u64] {
        assert!(m >= 1);
        &self.divisors[m]
    }
}

fn factor(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

pub fn mobius(m: u64) -> i8 {
    assert!(m >= 1);
    let f = factor(m);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn totient(m: u64) -> u64 {
    assert!(m >= 1);
    factor(m)
        .iter()
        .fold(m, |acc, &(p, _)| acc / p * (p - 1))
}

/// Ascending.
pub fn divisors(m: u64) -> Vec<u64> {
    assert!(m >= 1);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m.is_multiple_of(d) {
            small.push(d);
            if d * d != m {
                large.push(m / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn definition_cases() {
        assert_eq!((mobius(1), mobius(4), mobius(6), mobius(30)), (1, 0, 1, -1));
        assert_eq!((totient(1), totient(6), totient(12)), (1, 2, 4));
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(12).iter().map(|&d| totient(d)).sum::<u64>(), 12);
    }

    #[test]
    fn sieve_matches_factorization() {
        let t = ArithmeticTables::new(300);
        for m in 1..=300u64 {
            let i = m as usize;
            assert_eq!(t.mobius(i), mobius(m));
            assert_eq!(t.totient(i), totient(m));
            assert_eq!(t.divisors(i), divisors(m).as_slice());
        }
    }
}

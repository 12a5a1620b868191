use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::field::{is_prime_u64, Field, PrimeField};
use super::Matrix;
use crate::error::{Error, Result};

const PRIME_LOW: u64 = 1 << 30;
const PRIME_HIGH: u64 = 1 << 31;
const MAX_DRAWS: usize = 64;

/// Deterministic stream of distinct primes in (2^30, 2^31).
#[derive(Debug, Clone)]
pub struct PrimeSource {
    rng: ChaCha8Rng,
    used: HashSet<u64>,
}

impl PrimeSource {
    pub fn new(seed: u64) -> Self {
        PrimeSource {
            rng: ChaCha8Rng::seed_from_u64(seed),
            used: HashSet::new(),
        }
    }

    pub fn next_prime(&mut self) -> u64 {
        loop {
            let candidate = self.rng.gen_range(PRIME_LOW + 1..PRIME_HIGH) | 1;
            if is_prime_u64(candidate) && self.used.insert(candidate) {
                return candidate;
            }
        }
    }
}

/// Draws `count` primes from the seeded stream, re-drawing any prime rejected
/// by `usable` (typically: some input denominator vanishes modulo it).
pub fn select_primes(count: usize, seed: u64, usable: impl Fn(u64) -> bool) -> Result<Vec<u64>> {
    let mut source = PrimeSource::new(seed);
    let mut primes = Vec::with_capacity(count);
    let mut draws = 0;
    while primes.len() < count {
        if draws == MAX_DRAWS {
            return Err(Error::PrimeSearchExhausted { attempts: draws });
        }
        draws += 1;
        let p = source.next_prime();
        if usable(p) {
            primes.push(p);
        }
    }
    Ok(primes)
}

fn reduce_matrix(m: &Matrix, field: &PrimeField) -> Option<Vec<Vec<u64>>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|v| field.from_scalar(v)).collect())
        .collect()
}

/// Rank over F_p; `None` if some entry has a denominator divisible by p.
pub fn rank_mod_p(m: &Matrix, p: u64) -> Option<usize> {
    let field = PrimeField::new(p);
    let mut a = reduce_matrix(m, &field)?;
    let rows = m.rows();
    let mut r = 0;
    for col in 0..m.cols() {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = field.inv(&a[r][col]);
        let pivot_row: Vec<u64> = a[r].iter().map(|v| field.mul(v, &inv)).collect();
        for row in a.iter_mut().skip(r + 1) {
            let c = row[col];
            if c == 0 {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x = field.sub(x, &field.mul(&c, y));
            }
        }
        a[r] = pivot_row;
        r += 1;
    }
    Some(r)
}

/// Rank modulo `prime_count` seeded random primes; the common value is
/// returned only when every prime agrees.
pub fn rank_modular(m: &Matrix, prime_count: usize, seed: u64) -> Result<usize> {
    if prime_count < 2 {
        return Err(Error::BadParams("rank_modular needs at least 2 primes".into()));
    }
    let primes = select_primes(prime_count, seed, |p| {
        let f = PrimeField::new(p);
        m.entries().iter().all(|v| f.from_scalar(v).is_some())
    })?;
    let ranks: Vec<usize> = primes
        .par_iter()
        .map(|&p| rank_mod_p(m, p).expect("prime was screened for denominators"))
        .collect();
    agree(ranks)
}

pub(crate) fn agree(ranks: Vec<usize>) -> Result<usize> {
    match ranks.first() {
        Some(&r0) if ranks.iter().all(|&r| r == r0) => Ok(r0),
        Some(_) => Err(Error::PrimeDisagreement { ranks }),
        None => Err(Error::BadParams("no primes".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Scalar;

    #[test]
    fn identity_and_zero() {
        assert_eq!(rank_modular(&Matrix::identity(4), 2, 1).unwrap(), 4);
        assert_eq!(rank_modular(&Matrix::zero(3, 5), 2, 1).unwrap(), 0);
    }

    #[test]
    fn primes_are_deterministic_and_in_range() {
        let a = select_primes(3, 42, |_| true).unwrap();
        let b = select_primes(3, 42, |_| true).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|&p| p > PRIME_LOW && p < PRIME_HIGH && is_prime_u64(p)));
        let distinct: HashSet<_> = a.iter().collect();
        assert_eq!(distinct.len(), 3);
    }

    #[test]
    fn denominator_divisible_triggers_redraw() {
        let first = PrimeSource::new(7).next_prime();
        let m = Matrix::from_rows(vec![vec![Scalar::new(1.into(), first.into())]]);
        let primes = select_primes(2, 7, |p| {
            let f = PrimeField::new(p);
            m.entries().iter().all(|v| f.from_scalar(v).is_some())
        })
        .unwrap();
        assert!(!primes.contains(&first));
        assert_eq!(rank_modular(&m, 2, 7).unwrap(), 1);
    }

    #[test]
    fn too_few_primes_rejected() {
        assert!(rank_modular(&Matrix::identity(2), 1, 0).is_err());
    }
}

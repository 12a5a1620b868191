//! Exact rational and modular linear algebra.

mod coords;
mod echelon;
pub mod field;
mod matrix;
pub mod modular;
pub mod sparse;
mod subspace;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use coords::CoordBasis;
pub use echelon::{nullspace, rank, rref, solve, Echelon};
pub use matrix::Matrix;
pub use modular::{rank_mod_p, rank_modular, select_primes, PrimeSource};
pub use subspace::Subspace;

/// Exact rational in canonical form (positive denominator, reduced).
pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_scalar(s: &str) -> Option<Scalar> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(Scalar::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Scalar::from_integer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_scalar("3"), Some(int(3)));
        assert_eq!(parse_scalar("-2/4"), Some(frac(-1, 2)));
        assert_eq!(parse_scalar("1/0"), None);
        assert_eq!(parse_scalar("x"), None);
    }
}

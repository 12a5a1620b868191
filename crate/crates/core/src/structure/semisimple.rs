use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::radical::{find_unit, minimal_polynomial};
use crate::algebra::StructureAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{nullspace, Matrix, Scalar, Subspace};

/// A minimal two-sided ideal of a semisimple algebra together with its unit
/// (a primitive central idempotent).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleBlock {
    pub space: Subspace,
    pub unit: Vec<Scalar>,
}

/// Minimal two-sided ideals of a semisimple algebra, sorted by the pivot
/// signature of their echelon bases.
pub fn semisimple_blocks(alg: &StructureAlgebra) -> Result<Vec<Subspace>> {
    Ok(simple_blocks(alg)?.into_iter().map(|b| b.space).collect())
}

pub fn simple_blocks(alg: &StructureAlgebra) -> Result<Vec<SimpleBlock>> {
    let n = alg.dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    let one = find_unit(alg).ok_or_else(|| {
        Error::InternalVerificationFailed(format!("{} has no unit, so it is not semisimple", alg.label()))
    })?;
    let center = center(alg);
    let mut done = Vec::new();
    let mut pending = vec![one];
    while let Some(e) = pending.pop() {
        let local: Vec<Vec<Scalar>> = center.iter().map(|z| alg.mul(&e, z)).collect();
        let local = Subspace::span(n, local)?;
        if local.dim() <= 1 {
            done.push(e);
            continue;
        }
        let split = local
            .basis()
            .iter()
            .find_map(|y| {
                let poly = minimal_polynomial(alg, &e, y);
                (poly.len() > 2).then_some((y.clone(), poly))
            })
            .ok_or_else(|| Error::InternalVerificationFailed("center piece does not split".into()))?;
        let (y, poly) = split;
        let roots = rational_roots(&poly)?;
        if roots.len() + 1 != poly.len() {
            return Err(Error::NonSplitCenter {
                detail: format!(
                    "minimal polynomial {} of a central element has an irrational factor",
                    show_poly(&poly)
                ),
            });
        }
        for (r, lambda) in roots.iter().enumerate() {
            let mut idem = e.clone();
            for (s, mu) in roots.iter().enumerate() {
                if s == r {
                    continue;
                }
                let factor: Vec<Scalar> = y
                    .iter()
                    .zip(&e)
                    .map(|(yi, ei)| (yi - mu * ei) / (lambda - mu))
                    .collect();
                idem = alg.mul(&idem, &factor);
            }
            pending.push(idem);
        }
    }
    let mut blocks = Vec::with_capacity(done.len());
    for e in done {
        let space = Subspace::span(n, (0..n).map(|i| alg.mul(&e, &alg.basis_vector(i))))?;
        check_split_simple(alg, &space, &e)?;
        blocks.push(SimpleBlock { space, unit: e });
    }
    blocks.sort_by(|a, b| (a.space.pivots(), a.space.basis()).cmp(&(b.space.pivots(), b.space.basis())));
    Ok(blocks)
}

/// Center as the common kernel of all `ad_{e_i}`.
fn center(alg: &StructureAlgebra) -> Vec<Vec<Scalar>> {
    let n = alg.dim();
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        for k in 0..n {
            rows.push((0..n).map(|a| alg.constant(a, i, k) - alg.constant(i, a, k)).collect());
        }
    }
    nullspace(&Matrix::from_rows(rows))
}

/// A block with rational center could still be a matrix algebra over a
/// division algebra. A split block has square dimension and, when larger than
/// one, contains a zero divisor among its basis elements or their pairwise
/// sums; blocks failing this are reported as non-split.
fn check_split_simple(alg: &StructureAlgebra, block: &Subspace, unit: &[Scalar]) -> Result<()> {
    let d = block.dim();
    let root = (d as f64).sqrt().round() as usize;
    if root * root != d {
        return Err(Error::NonSplitCenter {
            detail: format!("simple block of dimension {d} is not a matrix algebra over the rationals"),
        });
    }
    if d == 1 {
        return Ok(());
    }
    let basis = block.basis();
    let mut candidates: Vec<Vec<Scalar>> = basis.to_vec();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            candidates.push(basis[i].iter().zip(&basis[j]).map(|(a, b)| a + b).collect());
        }
    }
    for y in &candidates {
        let poly = minimal_polynomial(alg, unit, y);
        if poly.len() > 2 && !rational_roots(&poly)?.is_empty() {
            return Ok(());
        }
    }
    Err(Error::NonSplitCenter {
        detail: format!("no zero divisor found in a simple block of dimension {d}"),
    })
}

fn show_poly(p: &[Scalar]) -> String {
    let terms: Vec<String> = p
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| match i {
            0 => format!("{c}"),
            1 => format!("{c}*t"),
            _ => format!("{c}*t^{i}"),
        })
        .collect();
    terms.join(" + ")
}

const DIVISOR_SEARCH_LIMIT: u64 = 1 << 40;

/// Distinct rational roots of a polynomial (coefficients low to high), found
/// with the rational root theorem.
pub(crate) fn rational_roots(poly: &[Scalar]) -> Result<Vec<Scalar>> {
    let lcm = poly.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = poly
        .iter()
        .map(|c| (c * Scalar::from_integer(lcm.clone())).to_integer())
        .collect();
    while ints.last().is_some_and(Zero::is_zero) {
        ints.pop();
    }
    let mut roots = Vec::new();
    let shift = ints.iter().take_while(|c| c.is_zero()).count();
    if shift > 0 {
        roots.push(Scalar::zero());
        ints.drain(..shift);
    }
    if ints.len() <= 1 {
        return Ok(roots);
    }
    let (Some(a0), Some(ad)) = (ints[0].abs().to_u64(), ints[ints.len() - 1].abs().to_u64()) else {
        return Err(Error::NonSplitCenter {
            detail: "polynomial coefficients too large for root search".into(),
        });
    };
    if a0 > DIVISOR_SEARCH_LIMIT || ad > DIVISOR_SEARCH_LIMIT {
        return Err(Error::NonSplitCenter {
            detail: "polynomial coefficients too large for root search".into(),
        });
    }
    let coeffs: Vec<Scalar> = ints.into_iter().map(Scalar::from_integer).collect();
    for p in divisors(a0) {
        for q in divisors(ad) {
            if p.gcd(&q) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let r = Scalar::new(BigInt::from(p) * sign, BigInt::from(q));
                if horner(&coeffs, &r).is_zero() && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

fn horner(coeffs: &[Scalar], x: &Scalar) -> Scalar {
    coeffs.iter().rev().fold(Scalar::zero(), |acc, c| acc * x + c)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
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
    use crate::algebra::{full_matrix, ut};
    use crate::linalg::{frac, int};
    use crate::structure::radical::{radical, Quotient};

    #[test]
    fn roots() {
        // (t - 1)(t + 2)(2t - 1) = 2t^3 + t^2 - 5t + 2
        let p = [int(2), int(-5), int(1), int(2)];
        assert_eq!(rational_roots(&p).unwrap(), vec![int(-2), frac(1, 2), int(1)]);
        assert!(rational_roots(&[int(1), int(0), int(1)]).unwrap().is_empty());
        assert_eq!(rational_roots(&[int(0), int(0), int(1)]).unwrap(), vec![int(0)]);
    }

    #[test]
    fn f_plus_f() {
        let a = StructureAlgebra::from_table("FF", 2, &[(0, 0, 0, int(1)), (1, 1, 1, int(1))], None).unwrap();
        let blocks = semisimple_blocks(&a).unwrap();
        assert_eq!(blocks.len(), 2);
        assert!(blocks.iter().all(|b| b.dim() == 1));
    }

    #[test]
    fn m2_is_simple() {
        let (a, _) = full_matrix(2).unwrap();
        let blocks = semisimple_blocks(&a).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].dim(), 4);
    }

    #[test]
    fn ut2_quotient() {
        let (a, _) = ut(2).unwrap();
        let q = Quotient::new(&a, &radical(&a).unwrap()).unwrap();
        let blocks = simple_blocks(&q.algebra).unwrap();
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[0].unit, vec![int(1), int(0)]);
        assert_eq!(blocks[1].unit, vec![int(0), int(1)]);
    }

    #[test]
    fn gaussian_rationals_do_not_split() {
        // Q(i) with i^2 = -1
        let a = StructureAlgebra::from_table(
            "Qi",
            2,
            &[
                (0, 0, 0, int(1)),
                (0, 1, 1, int(1)),
                (1, 0, 1, int(1)),
                (1, 1, 0, int(-1)),
            ],
            None,
        )
        .unwrap();
        assert!(matches!(semisimple_blocks(&a), Err(Error::NonSplitCenter { .. })));
    }
}

use num_traits::Zero;

use crate::algebra::StructureAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{nullspace, CoordBasis, Matrix, Scalar, Subspace};

/// Jacobson radical as the kernel of the trace form `T(x, y) = tr(L_{xy})` on
/// the unitalization, intersected with `A`. The candidate is re-checked to be
/// a nilpotent two-sided ideal.
pub fn radical(alg: &StructureAlgebra) -> Result<Subspace> {
    let n = alg.dim();
    if n == 0 {
        return Ok(Subspace::zero(0));
    }
    let plus = alg.adjoin_unit();
    let m = plus.dim();
    let left: Vec<Matrix> = (0..m).map(|i| plus.left_mult(&plus.basis_vector(i))).collect();
    let mut form = Matrix::zero(m, m);
    for i in 0..m {
        for j in i..m {
            let t = left[i].mul(&left[j]).trace();
            form[(i, j)] = t.clone();
            form[(j, i)] = t;
        }
    }
    let kernel = nullspace(&form);
    let mut vectors = Vec::with_capacity(kernel.len());
    for v in kernel {
        if !v[n].is_zero() {
            return Err(Error::InternalVerificationFailed(
                "trace-form kernel leaves the augmentation ideal".into(),
            ));
        }
        vectors.push(v[..n].to_vec());
    }
    let j = Subspace::span(n, vectors)?;
    if !alg.is_two_sided_ideal(&j)? {
        return Err(Error::InternalVerificationFailed(
            "radical candidate is not an ideal".into(),
        ));
    }
    if alg.nilpotency_index(&j)?.is_none() {
        return Err(Error::InternalVerificationFailed(
            "radical candidate is not nilpotent".into(),
        ));
    }
    Ok(j)
}

/// `A / I` for a two-sided ideal `I`, realized on the coordinates that are not
/// pivots of `I`'s echelon basis.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub algebra: StructureAlgebra,
    ideal: Subspace,
    complement: Vec<usize>,
}

impl Quotient {
    pub fn new(alg: &StructureAlgebra, ideal: &Subspace) -> Result<Quotient> {
        let n = alg.dim();
        let complement: Vec<usize> = (0..n).filter(|c| !ideal.pivots().contains(c)).collect();
        let q = complement.len();
        let mut constants = vec![Scalar::zero(); q * q * q];
        for (a, &ca) in complement.iter().enumerate() {
            for (b, &cb) in complement.iter().enumerate() {
                let prod = alg.mul(&alg.basis_vector(ca), &alg.basis_vector(cb));
                let r = ideal.residual(&prod)?;
                for (k, &ck) in complement.iter().enumerate() {
                    constants[(a * q + b) * q + k] = r[ck].clone();
                }
            }
        }
        let algebra = StructureAlgebra::new(format!("{}/J", alg.label()), q, constants, None)?;
        Ok(Quotient {
            algebra,
            ideal: ideal.clone(),
            complement,
        })
    }

    pub fn project(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        let r = self.ideal.residual(v)?;
        Ok(self.complement.iter().map(|&c| r[c].clone()).collect())
    }

    pub fn lift(&self, q: &[Scalar]) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.ideal.ambient_dim()];
        for (x, &c) in q.iter().zip(&self.complement) {
            v[c] = x.clone();
        }
        v
    }
}

/// Unit of a unital algebra, found by solving `u e_i = e_i = e_i u`.
pub(crate) fn find_unit(alg: &StructureAlgebra) -> Option<Vec<Scalar>> {
    if let Some(u) = alg.unit() {
        return Some(u.clone());
    }
    let n = alg.dim();
    // unknown u = sum u_a e_a; equations: sum_a u_a c_{a i}^k = delta_{ik}, same for c_{i a}^k
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..n {
        for k in 0..n {
            let target = if i == k {
                Scalar::from_integer(1.into())
            } else {
                Scalar::zero()
            };
            rows.push((0..n).map(|a| alg.constant(a, i, k).clone()).collect());
            rhs.push(target.clone());
            rows.push((0..n).map(|a| alg.constant(i, a, k).clone()).collect());
            rhs.push(target);
        }
    }
    if n == 0 {
        return Some(Vec::new());
    }
    crate::linalg::solve(&Matrix::from_rows(rows), &rhs)
}

/// Minimal polynomial of `y` inside the algebra, relative to the unit `e`
/// (coefficients low to high, monic).
pub(crate) fn minimal_polynomial(alg: &StructureAlgebra, e: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let mut powers = CoordBasis::new(alg.dim());
    let mut p = e.to_vec();
    loop {
        match powers.coords(&p) {
            Some(c) => {
                let mut poly: Vec<Scalar> = c.into_iter().map(|x| -x).collect();
                poly.push(Scalar::from_integer(1.into()));
                return poly;
            }
            None => {
                powers.push(&p);
                p = alg.mul(&p, y);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{full_matrix, truncated_grassmann, ut};

    #[test]
    fn radical_of_ut2() {
        let (a, _) = ut(2).unwrap();
        let j = radical(&a).unwrap();
        assert_eq!(j, Subspace::span(3, [a.basis_vector(1)]).unwrap());
    }

    #[test]
    fn radical_of_m2_is_zero() {
        let (a, _) = full_matrix(2).unwrap();
        assert!(radical(&a).unwrap().is_zero());
    }

    /// The ideal of non-units of the Grassmann algebra, checked nilpotent by
    /// brute-force products of basis elements.
    #[test]
    fn radical_of_grassmann2() {
        let (g, _) = truncated_grassmann(2).unwrap();
        let j = radical(&g).unwrap();
        let expected = Subspace::span(4, (1..4).map(|i| g.basis_vector(i))).unwrap();
        assert_eq!(j, expected);
        for a in 1..4 {
            for b in 1..4 {
                for c in 1..4 {
                    let abc = g.mul(&g.mul(&g.basis_vector(a), &g.basis_vector(b)), &g.basis_vector(c));
                    assert!(abc.iter().all(Zero::is_zero));
                }
            }
        }
    }

    #[test]
    fn nilpotent_algebra_is_its_own_radical() {
        let a = StructureAlgebra::from_table("nil", 2, &[(0, 0, 1, crate::linalg::int(1))], None).unwrap();
        assert_eq!(radical(&a).unwrap().dim(), 2);
    }

    #[test]
    fn quotient_of_ut2() {
        let (a, _) = ut(2).unwrap();
        let j = radical(&a).unwrap();
        let q = Quotient::new(&a, &j).unwrap();
        assert_eq!(q.algebra.dim(), 2);
        assert!(radical(&q.algebra).unwrap().is_zero());
        let u = find_unit(&q.algebra).unwrap();
        assert_eq!(u, vec![crate::linalg::int(1), crate::linalg::int(1)]);
    }
}

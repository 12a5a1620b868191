use super::structure_algebra::{AlgebraElement, StructureAlgebra};
use crate::linalg::{Matrix, Scalar};

/// A linear map of the algebra, stored in the row convention: row `i` holds
/// the coordinates of `e_i^d`. Composition is left to right, so the matrix of
/// "apply `d1`, then `d2`" is `d1 * d2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub name: String,
    pub matrix: Matrix,
}

impl Derivation {
    pub fn new(name: impl Into<String>, matrix: Matrix) -> Self {
        Derivation {
            name: name.into(),
            matrix,
        }
    }

    pub fn apply(&self, v: &[Scalar]) -> AlgebraElement {
        self.matrix.apply_row(v)
    }
}

/// `x -> x a - a x`.
pub fn inner_derivation(alg: &StructureAlgebra, a: &[Scalar]) -> Matrix {
    let rows = (0..alg.dim())
        .map(|i| {
            let e = alg.basis_vector(i);
            let xa = alg.mul(&e, a);
            let ax = alg.mul(a, &e);
            xa.iter().zip(&ax).map(|(p, q)| p - q).collect()
        })
        .collect();
    if alg.dim() == 0 {
        return Matrix::zero(0, 0);
    }
    Matrix::from_rows(rows)
}

/// First basis pair (0-based) where the Leibniz rule fails.
pub fn leibniz_failure(alg: &StructureAlgebra, d: &Matrix) -> Option<(usize, usize)> {
    let n = alg.dim();
    if d.rows() != n || d.cols() != n {
        return Some((0, 0));
    }
    let images: Vec<AlgebraElement> = (0..n).map(|i| d.row(i).to_vec()).collect();
    for i in 0..n {
        let ei = alg.basis_vector(i);
        for j in 0..n {
            let ej = alg.basis_vector(j);
            let lhs = d.apply_row(&alg.mul(&ei, &ej));
            let a = alg.mul(&images[i], &ej);
            let b = alg.mul(&ei, &images[j]);
            let rhs: Vec<Scalar> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            if lhs != rhs {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn check_derivation(alg: &StructureAlgebra, d: &Matrix) -> bool {
    leibniz_failure(alg, d).is_none()
}

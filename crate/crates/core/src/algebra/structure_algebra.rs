use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::sparse::SparseVec;
use crate::linalg::{Matrix, Scalar, Subspace};

/// Coordinate vector of an element of a structure-constant algebra.
pub type AlgebraElement = Vec<Scalar>;

/// Finite-dimensional associative algebra given by structure constants
/// `e_i e_j = sum_k c_{ij}^k e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureAlgebra {
    dim: usize,
    constants: Vec<Scalar>,
    products: Vec<SparseVec<Scalar>>,
    unit: Option<AlgebraElement>,
    label: String,
}

impl StructureAlgebra {
    /// Validates associativity (and the unit, when given) of a dense
    /// `dim x dim x dim` constant array indexed `[(i * dim + j) * dim + k]`.
    pub fn new(
        label: impl Into<String>,
        dim: usize,
        constants: Vec<Scalar>,
        unit: Option<AlgebraElement>,
    ) -> Result<Self> {
        if constants.len() != dim * dim * dim {
            return Err(Error::BadParams(format!(
                "expected {} structure constants, got {}",
                dim * dim * dim,
                constants.len()
            )));
        }
        let products = (0..dim * dim)
            .map(|ij| {
                (0..dim)
                    .filter(|&k| !constants[ij * dim + k].is_zero())
                    .map(|k| (k, constants[ij * dim + k].clone()))
                    .collect()
            })
            .collect();
        let alg = StructureAlgebra {
            dim,
            constants,
            products,
            unit: None,
            label: label.into(),
        };
        alg.check_associative()?;
        match unit {
            Some(u) => alg.with_unit(u),
            None => Ok(alg),
        }
    }

    /// Builds from sparse `(i, j, k, value)` entries (0-based); omitted entries are zero.
    pub fn from_table(
        label: impl Into<String>,
        dim: usize,
        table: &[(usize, usize, usize, Scalar)],
        unit: Option<AlgebraElement>,
    ) -> Result<Self> {
        let mut constants = vec![Scalar::zero(); dim * dim * dim];
        for (i, j, k, v) in table {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(Error::BadParams(format!(
                    "table entry ({}, {}, {}) out of range for dimension {dim}",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
            constants[(i * dim + j) * dim + k] += v;
        }
        Self::new(label, dim, constants, unit)
    }

    fn with_unit(mut self, u: AlgebraElement) -> Result<Self> {
        if u.len() != self.dim {
            return Err(Error::AmbientMismatch {
                left: self.dim,
                right: u.len(),
            });
        }
        for i in 0..self.dim {
            let e = self.basis_vector(i);
            if self.mul(&u, &e) != e || self.mul(&e, &u) != e {
                return Err(Error::NotAUnit { index: i + 1 });
            }
        }
        self.unit = Some(u);
        Ok(self)
    }

    fn check_associative(&self) -> Result<()> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.basis_product(i, j);
                for k in 0..self.dim {
                    let left = self.mul_sparse_basis(ij, k, true);
                    let jk = self.basis_product(j, k);
                    let right = self.mul_sparse_basis(jk, i, false);
                    if left != right {
                        return Err(Error::NotAssociative {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// `v e_b` (when `v_on_left`) or `e_b v`, dense result.
    fn mul_sparse_basis(&self, v: &[(usize, Scalar)], b: usize, v_on_left: bool) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (a, x) in v {
            let prod = if v_on_left {
                self.basis_product(*a, b)
            } else {
                self.basis_product(b, *a)
            };
            for (k, c) in prod {
                out[*k] += x * c;
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = label.into();
    }

    pub fn unit(&self) -> Option<&AlgebraElement> {
        self.unit.as_ref()
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    pub fn constants(&self) -> &[Scalar] {
        &self.constants
    }

    /// Sparse expansion of `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec<Scalar> {
        &self.products[i * self.dim + j]
    }

    pub fn basis_vector(&self, i: usize) -> AlgebraElement {
        let mut v = vec![Scalar::zero(); self.dim];
        v[i] = Scalar::one();
        v
    }

    pub fn zero_element(&self) -> AlgebraElement {
        vec![Scalar::zero(); self.dim]
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> AlgebraElement {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.basis_product(i, j) {
                    out[*k] += &ab * c;
                }
            }
        }
        out
    }

    /// Matrix of `y -> x y` in the row convention (row j holds `x e_j`).
    pub fn left_mult(&self, x: &[Scalar]) -> Matrix {
        let rows = (0..self.dim).map(|j| self.mul(x, &self.basis_vector(j))).collect();
        Matrix::from_rows(rows)
    }

    /// Matrix of `y -> y x` in the row convention.
    pub fn right_mult(&self, x: &[Scalar]) -> Matrix {
        let rows = (0..self.dim).map(|j| self.mul(&self.basis_vector(j), x)).collect();
        Matrix::from_rows(rows)
    }

    /// Span of all products `u v` with `u` in `left`, `v` in `right`.
    pub fn product(&self, left: &Subspace, right: &Subspace) -> Result<Subspace> {
        self.check_ambient(left)?;
        self.check_ambient(right)?;
        let mut prods = Vec::with_capacity(left.dim() * right.dim());
        for u in left.basis() {
            for v in right.basis() {
                prods.push(self.mul(u, v));
            }
        }
        Subspace::span(self.dim, prods)
    }

    pub fn whole(&self) -> Subspace {
        Subspace::full(self.dim)
    }

    /// `S^k` (products of k factors), with `S^1 = S`.
    pub fn power(&self, s: &Subspace, k: usize) -> Result<Subspace> {
        assert!(k >= 1);
        let mut p = s.clone();
        for _ in 1..k {
            if p.is_zero() {
                break;
            }
            p = self.product(&p, s)?;
        }
        Ok(p)
    }

    pub fn is_two_sided_ideal(&self, s: &Subspace) -> Result<bool> {
        let a = self.whole();
        Ok(s.contains(&self.product(&a, s)?)? && s.contains(&self.product(s, &a)?)?)
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> Result<bool> {
        s.contains(&self.product(s, s)?)
    }

    /// Smallest k with `S^k = 0`, if it is at most `dim + 1`.
    pub fn nilpotency_index(&self, s: &Subspace) -> Result<Option<usize>> {
        let mut p = s.clone();
        for k in 1..=self.dim + 1 {
            if p.is_zero() {
                return Ok(Some(k));
            }
            p = self.product(&p, s)?;
        }
        Ok(None)
    }

    fn check_ambient(&self, s: &Subspace) -> Result<()> {
        if s.ambient_dim() != self.dim {
            return Err(Error::AmbientMismatch {
                left: self.dim,
                right: s.ambient_dim(),
            });
        }
        Ok(())
    }

    /// `A+ = A + F 1`: the new unit is the last basis vector and `A` embeds as
    /// the ideal spanned by the first `dim` coordinates.
    pub fn adjoin_unit(&self) -> StructureAlgebra {
        let n = self.dim + 1;
        let mut constants = vec![Scalar::zero(); n * n * n];
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in self.basis_product(i, j) {
                    constants[(i * n + j) * n + k] = c.clone();
                }
            }
        }
        let one = self.dim;
        for i in 0..n {
            constants[(one * n + i) * n + i] = Scalar::one();
            constants[(i * n + one) * n + i] = Scalar::one();
        }
        let mut unit = vec![Scalar::zero(); n];
        unit[one] = Scalar::one();
        StructureAlgebra::new(format!("{}+", self.label), n, constants, Some(unit))
            .expect("unitalization of an associative algebra is associative")
    }

    /// Embeds a vector of `A` into `A+`.
    pub fn embed_in_unitalization(v: &[Scalar]) -> AlgebraElement {
        let mut out = v.to_vec();
        out.push(Scalar::zero());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn ut2() -> StructureAlgebra {
        let one = int(1);
        StructureAlgebra::from_table(
            "ut2",
            3,
            &[
                (0, 0, 0, one.clone()),
                (0, 1, 1, one.clone()),
                (1, 2, 1, one.clone()),
                (2, 2, 2, one),
            ],
            Some(vec![int(1), int(0), int(1)]),
        )
        .unwrap()
    }

    #[test]
    fn ut2_valid_with_unit() {
        let a = ut2();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.unit(), Some(&vec![int(1), int(0), int(1)]));
    }

    #[test]
    fn non_associative_reports_triple() {
        // e1 e1 = e2, e1 e2 = e1, e2 anything = 0
        let err = StructureAlgebra::from_table("bad", 2, &[(0, 0, 1, int(1)), (0, 1, 0, int(1))], None).unwrap_err();
        assert_eq!(err, Error::NotAssociative { i: 1, j: 1, k: 1 });
    }

    #[test]
    fn one_dimensional_field() {
        let f = StructureAlgebra::from_table("F", 1, &[(0, 0, 0, int(1))], Some(vec![int(1)])).unwrap();
        assert_eq!(f.dim(), 1);
    }

    #[test]
    fn wrong_unit_rejected() {
        let one = int(1);
        let err = StructureAlgebra::from_table(
            "ut2",
            3,
            &[
                (0, 0, 0, one.clone()),
                (0, 1, 1, one.clone()),
                (1, 2, 1, one.clone()),
                (2, 2, 2, one),
            ],
            Some(vec![int(1), int(0), int(0)]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotAUnit { .. }));
    }

    #[test]
    fn adjoin_unit_shapes() {
        let nil = StructureAlgebra::from_table("x", 1, &[], None).unwrap();
        assert_eq!(nil.adjoin_unit().dim(), 2);
        let a = ut2().adjoin_unit();
        assert_eq!(a.dim(), 4);
        // old unit e11 + e22 is an idempotent but not the unit
        let old = vec![int(1), int(0), int(1), int(0)];
        assert_eq!(a.mul(&old, &old), old);
        assert_ne!(Some(&old), a.unit());
        let zero = StructureAlgebra::from_table("0", 0, &[], None).unwrap();
        let f = zero.adjoin_unit();
        assert_eq!(f.dim(), 1);
        assert_eq!(f.mul(&[int(1)], &[int(1)]), vec![int(1)]);
    }

    #[test]
    fn ideal_and_nilpotency() {
        let a = ut2();
        let j = Subspace::span(3, [a.basis_vector(1)]).unwrap();
        assert!(a.is_two_sided_ideal(&j).unwrap());
        assert_eq!(a.nilpotency_index(&j).unwrap(), Some(2));
        let d = Subspace::span(3, [a.basis_vector(0)]).unwrap();
        assert!(!a.is_two_sided_ideal(&d).unwrap());
    }
}

use num_traits::Zero;

use super::field::Rationals;
use super::sparse::{RowReducer, SparseVec};
use super::Scalar;
use crate::error::{Error, Result};

/// A subspace of `F^ambient_dim`, stored as its unique reduced row-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

pub(crate) fn to_sparse(v: &[Scalar]) -> SparseVec<Scalar> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub(crate) fn to_dense(v: &[(usize, Scalar)], len: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![Scalar::zero(); ambient_dim];
                v[i] = Scalar::from_integer(1.into());
                v
            })
            .collect();
        Subspace {
            ambient_dim,
            basis,
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of the given vectors; every vector must have length `ambient_dim`.
    pub fn span<I, V>(ambient_dim: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[Scalar]>,
    {
        let mut reducer = RowReducer::new(Rationals);
        for v in vectors {
            let v = v.as_ref();
            if v.len() != ambient_dim {
                return Err(Error::AmbientMismatch {
                    left: ambient_dim,
                    right: v.len(),
                });
            }
            reducer.insert(to_sparse(v));
        }
        Ok(Self::from_reducer(ambient_dim, reducer))
    }

    /// Span of sparse vectors (columns must be `< ambient_dim`).
    pub fn span_sparse<I>(ambient_dim: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = SparseVec<Scalar>>,
    {
        let mut reducer = RowReducer::new(Rationals);
        for v in vectors {
            debug_assert!(v.iter().all(|(c, _)| *c < ambient_dim));
            reducer.insert(v);
        }
        Self::from_reducer(ambient_dim, reducer)
    }

    pub(crate) fn from_reducer(ambient_dim: usize, reducer: RowReducer<Rationals>) -> Self {
        let rows = reducer.into_echelon_rows();
        Subspace {
            ambient_dim,
            pivots: rows.iter().map(|(c, _)| *c).collect(),
            basis: rows.iter().map(|(_, r)| to_dense(r, ambient_dim)).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch {
                left: self.ambient_dim,
                right: other.ambient_dim,
            });
        }
        Ok(())
    }

    /// Residual of `v` after reduction by the echelon basis.
    pub fn residual(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.ambient_dim {
            return Err(Error::AmbientMismatch {
                left: self.ambient_dim,
                right: v.len(),
            });
        }
        let mut r = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = r[pc].clone();
            if c.is_zero() {
                continue;
            }
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &c * y;
                }
            }
        }
        Ok(r)
    }

    pub fn member(&self, v: &[Scalar]) -> Result<bool> {
        Ok(self.residual(v)?.iter().all(Zero::is_zero))
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check(other)?;
        for v in &other.basis {
            if !self.member(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        Subspace::span(self.ambient_dim, self.basis.iter().chain(&other.basis))
    }

    /// Intersection by the Zassenhaus construction: row-reduce `[u | u]` and
    /// `[v | 0]`; the rows whose left half vanishes span `U ∩ V` on the right.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let n = self.ambient_dim;
        let mut reducer = RowReducer::new(Rationals);
        for u in &self.basis {
            let mut row = to_sparse(u);
            row.extend(to_sparse(u).into_iter().map(|(i, x)| (i + n, x)));
            reducer.insert(row);
        }
        for v in &other.basis {
            reducer.insert(to_sparse(v));
        }
        let right: Vec<SparseVec<Scalar>> = reducer
            .into_echelon_rows()
            .into_iter()
            .filter(|(pc, _)| *pc >= n)
            .map(|(_, r)| r.into_iter().map(|(i, x)| (i - n, x)).collect())
            .collect();
        Ok(Subspace::span_sparse(n, right))
    }

    /// Coordinates of the basis vectors in sparse form.
    pub fn sparse_basis(&self) -> Vec<SparseVec<Scalar>> {
        self.basis.iter().map(|v| to_sparse(v)).collect()
    }
}

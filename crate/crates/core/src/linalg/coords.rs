use num_traits::Zero;

use super::field::Rationals;
use super::sparse::{sub_scaled, RowReducer, SparseVec};
use super::subspace::{to_dense, to_sparse};
use super::Scalar;

/// A growing list of linearly independent vectors that can express any vector
/// of its span in terms of the list.
#[derive(Debug, Clone)]
pub struct CoordBasis {
    len: usize,
    reducer: RowReducer<Rationals>,
    /// inserted-row id -> position in the basis, for accepted rows only
    position: Vec<Option<usize>>,
    count: usize,
}

impl CoordBasis {
    pub fn new(len: usize) -> Self {
        CoordBasis {
            len,
            reducer: RowReducer::with_tracking(Rationals),
            position: Vec::new(),
            count: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn vector_len(&self) -> usize {
        self.len
    }

    /// Appends `v` if it is independent of the current list; returns its index.
    pub fn push(&mut self, v: &[Scalar]) -> Option<usize> {
        assert_eq!(v.len(), self.len);
        if self.reducer.insert(to_sparse(v)) {
            self.position.push(Some(self.count));
            self.count += 1;
            Some(self.count - 1)
        } else {
            self.position.push(None);
            None
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reducer.is_member(&to_sparse(v))
    }

    /// Coefficients `c` with `v = sum c_i basis_i`, or `None` outside the span.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.len);
        let (residual, hits) = self.reducer.reduce(&to_sparse(v));
        if !residual.is_empty() {
            return None;
        }
        let stored: Vec<_> = self.reducer.rows_with_combos().collect();
        let mut acc: SparseVec<Scalar> = Vec::new();
        for (i, m) in hits {
            let combo = stored[i].1.expect("tracking enabled");
            acc = sub_scaled(&Rationals, &acc, &-m, combo);
        }
        let mut out = vec![Scalar::zero(); self.count];
        for (id, c) in acc {
            let pos = self.position[id].expect("combinations only reference accepted rows");
            out[pos] = c;
        }
        Some(out)
    }

    /// Like [`CoordBasis::coords`] but returns the residual when `v` is outside the span.
    pub fn coords_or_residual(&self, v: &[Scalar]) -> Result<Vec<Scalar>, Vec<Scalar>> {
        let (residual, _) = self.reducer.reduce(&to_sparse(v));
        if residual.is_empty() {
            Ok(self.coords(v).expect("in span"))
        } else {
            Err(to_dense(&residual, self.len))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Scalar::from_integer(x.into())).collect()
    }

    #[test]
    fn expresses_span_members() {
        let mut b = CoordBasis::new(3);
        assert_eq!(b.push(&v(&[1, 1, 0])), Some(0));
        assert_eq!(b.push(&v(&[2, 2, 0])), None);
        assert_eq!(b.push(&v(&[0, 1, 1])), Some(1));
        assert_eq!(b.coords(&v(&[2, 5, 3])), Some(v(&[2, 3])));
        assert_eq!(b.coords(&v(&[0, 0, 1])), None);
    }
}

use std::collections::HashMap;

use super::field::Field;

/// Sparse vector as `(column, value)` pairs, sorted by column, no explicit zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

/// `a - c * b` for sorted sparse vectors.
pub fn sub_scaled<F: Field>(
    field: &F,
    a: &[(usize, F::Elem)],
    c: &F::Elem,
    b: &[(usize, F::Elem)],
) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = field.neg(&field.mul(c, &b[j].1));
            if !field.is_zero(&v) {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = field.sub(&a[i].1, &field.mul(c, &b[j].1));
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale<F: Field>(field: &F, a: &[(usize, F::Elem)], c: &F::Elem) -> SparseVec<F::Elem> {
    if field.is_zero(c) {
        return Vec::new();
    }
    a.iter().map(|(i, v)| (*i, field.mul(c, v))).collect()
}

/// Collects unsorted `(column, value)` contributions into a sorted sparse vector.
pub fn from_unsorted<F: Field>(field: &F, mut entries: Vec<(usize, F::Elem)>) -> SparseVec<F::Elem> {
    entries.sort_by_key(|e| e.0);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(entries.len());
    for (c, v) in entries {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 = field.add(&last.1, &v),
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !field.is_zero(v));
    out
}

pub fn get<E>(a: &[(usize, E)], col: usize) -> Option<&E> {
    a.binary_search_by_key(&col, |e| e.0).ok().map(|i| &a[i].1)
}

/// Streaming reduced row-echelon form.
///
/// Rows are inserted one at a time and the stored rows are kept fully reduced
/// (leading entry 1, zero in every other pivot column), so reducing a new row
/// is a single pass over the pivot columns it touches. Optionally tracks, for
/// every stored row, its expression in terms of the inserted rows; rows that
/// reduce to zero then yield left-kernel vectors.
#[derive(Debug, Clone)]
pub struct RowReducer<F: Field> {
    field: F,
    rows: Vec<SparseVec<F::Elem>>,
    pivot_cols: Vec<usize>,
    pivot_of: HashMap<usize, usize>,
    track: bool,
    combos: Vec<SparseVec<F::Elem>>,
    kernel: Vec<SparseVec<F::Elem>>,
    inserted: usize,
}

impl<F: Field> RowReducer<F> {
    pub fn new(field: F) -> Self {
        RowReducer {
            field,
            rows: Vec::new(),
            pivot_cols: Vec::new(),
            pivot_of: HashMap::new(),
            track: false,
            combos: Vec::new(),
            kernel: Vec::new(),
            inserted: 0,
        }
    }

    pub fn with_tracking(field: F) -> Self {
        RowReducer {
            track: true,
            ..Self::new(field)
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Residual of `row` after elimination against the stored pivots, together
    /// with the multipliers used (`row = residual + sum mult_i * stored_i`).
    pub fn reduce(&self, row: &[(usize, F::Elem)]) -> (SparseVec<F::Elem>, Vec<(usize, F::Elem)>) {
        let hits: Vec<(usize, F::Elem)> = row
            .iter()
            .filter_map(|(c, v)| self.pivot_of.get(c).map(|&i| (i, v.clone())))
            .collect();
        let mut r: SparseVec<F::Elem> = row.to_vec();
        for (i, v) in &hits {
            r = sub_scaled(&self.field, &r, v, &self.rows[*i]);
        }
        (r, hits)
    }

    pub fn is_member(&self, row: &[(usize, F::Elem)]) -> bool {
        self.reduce(row).0.is_empty()
    }

    /// Inserts a row; returns true if the rank grew.
    pub fn insert(&mut self, row: SparseVec<F::Elem>) -> bool {
        let id = self.inserted;
        self.inserted += 1;
        let (mut r, hits) = self.reduce(&row);
        let mut combo: SparseVec<F::Elem> = Vec::new();
        if self.track {
            combo.push((id, self.field.one()));
            for (i, v) in &hits {
                combo = sub_scaled(&self.field, &combo, v, &self.combos[*i]);
            }
        }
        if r.is_empty() {
            if self.track {
                self.kernel.push(combo);
            }
            return false;
        }
        let (lead_col, lead) = r[0].clone();
        let inv = self.field.inv(&lead);
        r = scale(&self.field, &r, &inv);
        if self.track {
            combo = scale(&self.field, &combo, &inv);
        }
        for j in 0..self.rows.len() {
            if let Some(v) = get(&self.rows[j], lead_col).cloned() {
                self.rows[j] = sub_scaled(&self.field, &self.rows[j], &v, &r);
                if self.track {
                    self.combos[j] = sub_scaled(&self.field, &self.combos[j], &v, &combo);
                }
            }
        }
        self.pivot_of.insert(lead_col, self.rows.len());
        self.pivot_cols.push(lead_col);
        self.rows.push(r);
        if self.track {
            self.combos.push(combo);
        }
        true
    }

    /// Stored rows sorted by pivot column (the reduced row-echelon form).
    pub fn echelon_rows(&self) -> Vec<(usize, &SparseVec<F::Elem>)> {
        let mut out: Vec<(usize, &SparseVec<F::Elem>)> = self
            .pivot_cols
            .iter()
            .zip(self.rows.iter())
            .map(|(c, r)| (*c, r))
            .collect();
        out.sort_by_key(|e| e.0);
        out
    }

    pub fn into_echelon_rows(self) -> Vec<(usize, SparseVec<F::Elem>)> {
        let mut out: Vec<(usize, SparseVec<F::Elem>)> = self.pivot_cols.into_iter().zip(self.rows).collect();
        out.sort_by_key(|e| e.0);
        out
    }

    /// Stored rows in insertion order, each with the combination of inserted
    /// rows that produced it (empty when tracking is off).
    pub fn rows_with_combos(&self) -> impl Iterator<Item = (&SparseVec<F::Elem>, Option<&SparseVec<F::Elem>>)> {
        self.rows.iter().enumerate().map(move |(i, r)| (r, self.combos.get(i)))
    }

    /// Left-kernel vectors collected so far (one per dependent inserted row).
    pub fn kernel(&self) -> &[SparseVec<F::Elem>] {
        &self.kernel
    }

    pub fn into_kernel(self) -> Vec<SparseVec<F::Elem>> {
        self.kernel
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::{PrimeField, Rationals};
    use crate::linalg::Scalar;

    fn q(v: i64) -> Scalar {
        Scalar::from_integer(v.into())
    }

    #[test]
    fn kernel_from_dependent_rows() {
        let mut r = RowReducer::with_tracking(Rationals);
        assert!(r.insert(vec![(0, q(1)), (1, q(2))]));
        assert!(r.insert(vec![(1, q(1)), (2, q(1))]));
        assert!(!r.insert(vec![(0, q(1)), (1, q(3)), (2, q(1))]));
        assert_eq!(r.rank(), 2);
        let k = &r.kernel()[0];
        assert_eq!(k, &vec![(0, q(-1)), (1, q(-1)), (2, q(1))]);
    }

    #[test]
    fn modular_rank_matches() {
        let f = PrimeField::new(101);
        let mut r = RowReducer::new(f);
        r.insert(vec![(0, 1), (3, 5)]);
        r.insert(vec![(0, 2), (3, 10)]);
        r.insert(vec![(2, 7)]);
        assert_eq!(r.rank(), 2);
    }
}

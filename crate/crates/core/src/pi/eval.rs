use rayon::prelude::*;

use crate::algebra::StructureAlgebra;
use crate::error::{Error, Result};
use crate::linalg::field::Field;
use crate::linalg::sparse::SparseVec;
use crate::linalg::Matrix;

pub(crate) fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Rows of the evaluation matrix are indexed by `(σ, u_1..u_n)`: the
/// lexicographic rank of `σ` (one-line notation) times `e^n`, plus the
/// exponent indices read as a base-`e` number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonomialIndexing {
    pub degree: usize,
    pub exponents: usize,
}

impl MonomialIndexing {
    pub fn new(degree: usize, exponents: usize) -> Self {
        MonomialIndexing { degree, exponents }
    }

    pub fn count(&self) -> u128 {
        factorial(self.degree) * (self.exponents as u128).pow(self.degree as u32)
    }

    pub fn index(&self, vars: &[usize], ops: &[usize]) -> usize {
        let n = self.degree;
        let mut rank = 0usize;
        for (p, &v) in vars.iter().enumerate() {
            let smaller = vars[p + 1..].iter().filter(|&&w| w < v).count();
            rank = rank * (n - p) + smaller;
        }
        let tail = ops.iter().fold(0usize, |acc, &u| acc * self.exponents + u);
        rank * self.exponents.pow(n as u32) + tail
    }

    pub fn decode(&self, index: usize) -> (Vec<usize>, Vec<usize>) {
        let n = self.degree;
        let block = self.exponents.pow(n as u32);
        let (mut rank, mut tail) = (index / block, index % block);
        let mut ops = vec![0; n];
        for p in (0..n).rev() {
            ops[p] = tail % self.exponents;
            tail /= self.exponents;
        }
        // Lehmer digits, most significant first
        let mut digits = vec![0; n];
        for p in (0..n).rev() {
            let radix = n - p;
            digits[p] = rank % radix;
            rank /= radix;
        }
        let mut pool: Vec<usize> = (0..n).collect();
        let vars = digits.into_iter().map(|d| pool.remove(d)).collect();
        (vars, ops)
    }
}

/// Evaluates multilinear monomials with exponents drawn from a fixed list of
/// operators on basis tuples of `A`.
///
/// The column of an evaluation is `Σ_v b_v N^{n-v} + k`: the basis index
/// assigned to each variable (variable 1 most significant) followed by the
/// output coordinate `k`.
pub struct Evaluator<F: Field> {
    field: F,
    dim: usize,
    ops: usize,
    /// `images[u][b]` = `e_b` acted on by operator `u`, dense.
    images: Vec<Vec<Vec<F::Elem>>>,
    nonzero_images: Vec<Vec<usize>>,
    /// `products[i][j]` = `e_i e_j`, sparse.
    products: Vec<Vec<SparseVec<F::Elem>>>,
}

type State<E> = Vec<(usize, Vec<E>)>;

impl<F: Field> Evaluator<F> {
    /// `None` when some constant has a denominator that vanishes in `field`.
    pub fn new(field: F, alg: &StructureAlgebra, ops: &[Matrix]) -> Option<Self> {
        let n = alg.dim();
        let mut images = Vec::with_capacity(ops.len());
        for m in ops {
            let mut per_b = Vec::with_capacity(n);
            for b in 0..n {
                let row: Option<Vec<F::Elem>> = m.row(b).iter().map(|s| field.from_scalar(s)).collect();
                per_b.push(row?);
            }
            images.push(per_b);
        }
        let nonzero_images = images
            .iter()
            .map(|per_b| (0..n).filter(|&b| per_b[b].iter().any(|x| !field.is_zero(x))).collect())
            .collect();
        let mut products = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let mut entries = Vec::new();
                for (k, c) in alg.basis_product(i, j) {
                    let c = field.from_scalar(c)?;
                    if !field.is_zero(&c) {
                        entries.push((*k, c));
                    }
                }
                row.push(entries);
            }
            products.push(row);
        }
        Some(Evaluator {
            field,
            dim: n,
            ops: ops.len(),
            images,
            nonzero_images,
            products,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn algebra_dim(&self) -> usize {
        self.dim
    }

    pub fn op_count(&self) -> usize {
        self.ops
    }

    pub fn column_count(&self, degree: usize) -> u128 {
        (self.dim as u128).pow(degree as u32 + 1)
    }

    fn mul_vec(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim];
        for (i, ai) in a.iter().enumerate() {
            if f.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if f.is_zero(bj) {
                    continue;
                }
                let ab = f.mul(ai, bj);
                for (k, c) in &self.products[i][j] {
                    out[*k] = f.add(&out[*k], &f.mul(&ab, c));
                }
            }
        }
        out
    }

    /// Multiplies every partial product on the right by variable `var`
    /// carrying operator `op`, over all basis choices; zero products are dropped.
    fn extend(&self, state: Option<&State<F::Elem>>, var: usize, op: usize, degree: usize) -> State<F::Elem> {
        let weight = self.dim.pow((degree - var) as u32);
        let mut next = Vec::new();
        match state {
            None => {
                for &b in &self.nonzero_images[op] {
                    next.push((b * weight, self.images[op][b].clone()));
                }
            }
            Some(state) => {
                for (offset, partial) in state {
                    for &b in &self.nonzero_images[op] {
                        let v = self.mul_vec(partial, &self.images[op][b]);
                        if v.iter().any(|x| !self.field.is_zero(x)) {
                            next.push((offset + b * weight, v));
                        }
                    }
                }
            }
        }
        next
    }

    fn finish(&self, state: &State<F::Elem>) -> SparseVec<F::Elem> {
        let mut row: SparseVec<F::Elem> = state
            .iter()
            .flat_map(|(offset, v)| {
                v.iter()
                    .enumerate()
                    .filter(|(_, x)| !self.field.is_zero(x))
                    .map(move |(k, x)| (offset + k, x.clone()))
            })
            .collect();
        row.sort_by_key(|e| e.0);
        row
    }

    /// Evaluation row of one monomial.
    pub fn monomial_row(&self, vars: &[usize], ops: &[usize]) -> SparseVec<F::Elem> {
        let n = vars.len();
        let mut state: Option<State<F::Elem>> = None;
        for (&v, &u) in vars.iter().zip(ops) {
            let next = self.extend(state.as_ref(), v, u, n);
            if next.is_empty() {
                return Vec::new();
            }
            state = Some(next);
        }
        state.map(|s| self.finish(&s)).unwrap_or_default()
    }

    /// All rows of the degree-`n` evaluation matrix as `(row index, row)`,
    /// sorted by row index. Partial products are shared between monomials with
    /// a common prefix; the first position's branches run in parallel.
    pub fn rows(&self, n: usize) -> Vec<(usize, SparseVec<F::Elem>)> {
        let indexing = MonomialIndexing::new(n, self.ops);
        let starts: Vec<(usize, usize)> = (0..n).flat_map(|v| (0..self.ops).map(move |u| (v, u))).collect();
        let mut rows: Vec<(usize, SparseVec<F::Elem>)> = starts
            .par_iter()
            .flat_map_iter(|&(v, u)| {
                let mut out = Vec::new();
                let mut vars = vec![v];
                let mut ops = vec![u];
                let state = self.extend(None, v, u, n);
                self.descend(n, &indexing, &mut vars, &mut ops, &state, &mut out);
                out
            })
            .collect();
        rows.sort_by_key(|r| r.0);
        rows
    }

    fn descend(
        &self,
        n: usize,
        indexing: &MonomialIndexing,
        vars: &mut Vec<usize>,
        ops: &mut Vec<usize>,
        state: &State<F::Elem>,
        out: &mut Vec<(usize, SparseVec<F::Elem>)>,
    ) {
        if vars.len() == n {
            let row = if state.is_empty() {
                Vec::new()
            } else {
                self.finish(state)
            };
            out.push((indexing.index(vars, ops), row));
            return;
        }
        for v in 0..n {
            if vars.contains(&v) {
                continue;
            }
            for u in 0..self.ops {
                let next = if state.is_empty() {
                    Vec::new()
                } else {
                    self.extend(Some(state), v, u, n)
                };
                vars.push(v);
                ops.push(u);
                self.descend(n, indexing, vars, ops, &next, out);
                vars.pop();
                ops.pop();
            }
        }
    }
}

/// Checks a streamed computation against the configured budget.
pub(crate) fn within_budget(what: &'static str, needed: u128, budget: u64) -> Result<()> {
    if needed > budget as u128 {
        return Err(Error::SizeCap {
            what,
            needed,
            budget: budget as u128,
        });
    }
    Ok(())
}

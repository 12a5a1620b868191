use itertools::Itertools;

use super::codim::evaluation_vector;
use super::poly::{ExponentWord, LPolynomial};
use crate::algebra::{LieAction, StructureAlgebra};
use crate::error::Result;
use crate::linalg::field::Rationals;
use crate::linalg::sparse::RowReducer;

fn x(i: usize) -> LPolynomial {
    LPolynomial::var(i)
}

fn x_eps(i: usize, letter: usize) -> LPolynomial {
    LPolynomial::var_pow(i, ExponentWord(vec![letter]))
}

/// Splits `0..n` into an increasing prefix set and the remaining variables.
fn splits(n: usize, min_rest: usize) -> impl Iterator<Item = (Vec<usize>, Vec<usize>)> {
    (0..=n.saturating_sub(min_rest)).flat_map(move |m| {
        (0..n).combinations(m).map(move |outer| {
            let rest = (0..n).filter(|v| !outer.contains(v)).collect();
            (outer, rest)
        })
    })
}

fn prefixed(outer: &[usize], tail: LPolynomial) -> LPolynomial {
    let mut parts: Vec<LPolynomial> = outer.iter().map(|&i| x(i)).collect();
    parts.push(tail);
    LPolynomial::product(&parts)
}

/// `x_{i_1}⋯x_{i_m}[x_k, x_{j_1}, …, x_{j_{n-m-1}}]` with `i` increasing,
/// `j` increasing and `k > j_1`, together with `x_1⋯x_n`.
/// There are `2^{n-1}(n-2) + 2` of them for `n ≥ 2`.
pub fn ut2_spanning_set(n: usize) -> Vec<LPolynomial> {
    let mut out = Vec::new();
    for (outer, rest) in splits(n, 2) {
        for &k in &rest[1..] {
            let mut parts = vec![x(k)];
            parts.extend(rest.iter().filter(|&&j| j != k).map(|&j| x(j)));
            out.push(prefixed(&outer, LPolynomial::left_normed(&parts)));
        }
    }
    out.push(LPolynomial::product(&(0..n).map(x).collect::<Vec<_>>()));
    out
}

/// The UT₂ family plus `x_{h_1}⋯x_{h_{n-1}} x_r^ε` and
/// `x_{i_1}⋯x_{i_m}[x_{l_1}^ε, x_{l_2}, …]` with `l` increasing, `|l| ≥ 2`.
/// `eps` is the closure letter of ε. There are `2^{n-1}n + 1` of them.
pub fn ut2_eps_spanning_set(n: usize, eps: usize) -> Vec<LPolynomial> {
    let mut out = ut2_spanning_set(n);
    for r in 0..n {
        let mut parts: Vec<LPolynomial> = (0..n).filter(|&h| h != r).map(x).collect();
        parts.push(x_eps(r, eps));
        out.push(LPolynomial::product(&parts));
    }
    for (outer, rest) in splits(n, 2) {
        let mut parts = vec![x_eps(rest[0], eps)];
        parts.extend(rest[1..].iter().map(|&l| x(l)));
        out.push(prefixed(&outer, LPolynomial::left_normed(&parts)));
    }
    out
}

/// Rank of the evaluation vectors of `set` on `alg`; equal to `set.len()`
/// exactly when the polynomials are independent modulo identities of `alg`.
pub fn spanning_rank(alg: &StructureAlgebra, act: &LieAction, set: &[LPolynomial]) -> Result<usize> {
    let mut reducer = RowReducer::new(Rationals);
    for f in set {
        reducer.insert(evaluation_vector(alg, act, f)?.1);
    }
    Ok(reducer.rank())
}

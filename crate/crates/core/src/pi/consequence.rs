use std::collections::HashMap;

use itertools::Itertools;
use num_traits::{One, Zero};

use super::eval::{within_budget, MonomialIndexing};
use super::poly::LPolynomial;
use crate::algebra::LieAction;
use crate::config::EngineConfig;
use crate::error::{Error, Result};
use crate::linalg::field::Rationals;
use crate::linalg::sparse::{RowReducer, SparseVec};
use crate::linalg::{Scalar, Subspace};

/// A variable carrying an element of the envelope, in envelope coordinates.
type Factor = (usize, SparseVec<Scalar>);

/// Right multiplication by each closure letter on envelope coordinates:
/// `letter_action[l][u]` = coordinates of `op_u · d_l`.
fn letter_actions(act: &LieAction) -> Vec<Vec<SparseVec<Scalar>>> {
    let env = act.envelope();
    let table = env.mult_table();
    act.closure_basis()
        .iter()
        .map(|d| {
            let coords = env.coords_of(d).expect("closure letters lie in the envelope");
            (0..env.dim())
                .map(|u| {
                    let mut acc = vec![Scalar::zero(); env.dim()];
                    for (v, c) in coords.iter().enumerate() {
                        if !c.is_zero() {
                            for (t, x) in table[u][v].iter().enumerate() {
                                acc[t] += c * x;
                            }
                        }
                    }
                    acc.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
                })
                .collect()
        })
        .collect()
}

fn act_on_coords(coords: &[(usize, Scalar)], letter: &[SparseVec<Scalar>]) -> SparseVec<Scalar> {
    let mut acc: HashMap<usize, Scalar> = HashMap::new();
    for (u, c) in coords {
        for (t, x) in &letter[*u] {
            *acc.entry(*t).or_insert_with(Scalar::zero) += c * x;
        }
    }
    let mut out: SparseVec<Scalar> = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
    out.sort_by_key(|e| e.0);
    out
}

/// `(m)^w` for a product `m` of factors: every letter of `w` goes to one
/// factor, in order (the coproduct of a word of primitive elements).
fn act_on_block(block: &[Factor], word: &[usize], letters: &[Vec<SparseVec<Scalar>>]) -> Vec<Vec<Factor>> {
    if word.is_empty() {
        return vec![block.to_vec()];
    }
    let mut out = Vec::new();
    for assignment in (0..word.len()).map(|_| 0..block.len()).multi_cartesian_product() {
        let mut factors = block.to_vec();
        for (l, &target) in word.iter().zip(&assignment) {
            factors[target].1 = act_on_coords(&factors[target].1, &letters[*l]);
        }
        if factors.iter().all(|f| !f.1.is_empty()) {
            out.push(factors);
        }
    }
    out
}

fn accumulate(acc: &mut HashMap<usize, Scalar>, ix: &MonomialIndexing, coef: &Scalar, factors: &[Factor]) {
    let vars: Vec<usize> = factors.iter().map(|f| f.0).collect();
    let mut partial: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), coef.clone())];
    for (_, coords) in factors {
        let mut next = Vec::with_capacity(partial.len() * coords.len());
        for (ops, k) in &partial {
            for (u, c) in coords {
                let mut o = ops.clone();
                o.push(*u);
                next.push((o, k * c));
            }
        }
        partial = next;
    }
    for (ops, k) in partial {
        *acc.entry(ix.index(&vars, &ops)).or_insert_with(Scalar::zero) += k;
    }
}

/// Compositions of `n` into `k + 2` parts, the first and last possibly empty.
fn cuts(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let min = usize::from(!cur.is_empty() && parts > 1);
        for s in min..=left {
            cur.push(s);
            rec(left - s, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k + 2, &mut Vec::new(), &mut out);
    out
}

/// Degree-`n` part of the T_L-ideal generated by `generators`, in monomial
/// coordinates (exponents collapsed to the envelope basis).
///
/// Spans `u_0 · ψ(g^w) · u_1` over generators `g`, PBW words `w` with
/// `|w| <= cap`, substitutions `ψ` of variables by products of fresh variables,
/// and outer products `u_0`, `u_1`; every variable carries an envelope basis
/// element as exponent. The span is then closed under the action of the closure
/// letters until it stops growing.
pub fn consequences_space(
    generators: &[LPolynomial],
    act: &LieAction,
    n: usize,
    cap: usize,
    cfg: &EngineConfig,
) -> Result<Subspace> {
    let env = act.envelope();
    let e = env.dim();
    let ix = MonomialIndexing::new(n, e);
    within_budget("consequence rows", ix.count(), cfg.budget)?;
    let count = ix.count() as usize;
    let letters = letter_actions(act);
    let mut reducer = RowReducer::new(Rationals);

    let mut derived: Vec<(usize, LPolynomial)> = Vec::new();
    for g in generators {
        let k = g.multilinear_degree()?;
        if g.is_zero() || k > n {
            continue;
        }
        let mut frontier = vec![g.clone()];
        derived.push((k, g.clone()));
        for _ in 0..cap {
            frontier = frontier
                .iter()
                .flat_map(|h| (0..act.closure_dim()).map(move |l| h.derive(l, act)))
                .filter(|h| !h.is_zero())
                .collect();
            derived.extend(frontier.iter().map(|h| (k, h.clone())));
        }
    }

    for (k, h) in &derived {
        let terms: Vec<_> = h.terms().collect();
        for perm in (0..n).permutations(n) {
            for cut in cuts(n, *k) {
                for exps in (0..n).map(|_| 0..e).multi_cartesian_product() {
                    let factor = |p: usize| -> Factor { (perm[p], vec![(exps[p], Scalar::one())]) };
                    let mut pos = 0;
                    let mut blocks: Vec<Vec<Factor>> = Vec::with_capacity(cut.len());
                    for &size in &cut {
                        blocks.push((pos..pos + size).map(factor).collect());
                        pos += size;
                    }
                    let (prefix, rest) = blocks.split_first().expect("k + 2 blocks");
                    let (suffix, images) = rest.split_last().expect("k + 2 blocks");
                    let mut acc: HashMap<usize, Scalar> = HashMap::new();
                    for (m, c) in &terms {
                        let mut products: Vec<Vec<Factor>> = vec![prefix.clone()];
                        for (var, word) in &m.factors {
                            let expansions = act_on_block(&images[*var], word.letters(), &letters);
                            products = products
                                .iter()
                                .flat_map(|p| {
                                    expansions.iter().map(move |x| {
                                        let mut q = p.clone();
                                        q.extend(x.iter().cloned());
                                        q
                                    })
                                })
                                .collect();
                        }
                        for mut p in products {
                            p.extend(suffix.iter().cloned());
                            accumulate(&mut acc, &ix, c, &p);
                        }
                    }
                    let mut row: SparseVec<Scalar> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                    if !row.is_empty() {
                        row.sort_by_key(|x| x.0);
                        reducer.insert(row);
                    }
                }
            }
        }
    }

    close_under_letters(&mut reducer, &ix, &letters)?;
    Ok(Subspace::from_reducer(count, reducer))
}

/// Inserts `v^{d_l}` for every stored row and letter until nothing new appears.
fn close_under_letters(
    reducer: &mut RowReducer<Rationals>,
    ix: &MonomialIndexing,
    letters: &[Vec<SparseVec<Scalar>>],
) -> Result<()> {
    let n = ix.degree;
    for _ in 0..=ix.count() {
        let basis: Vec<SparseVec<Scalar>> = reducer.echelon_rows().into_iter().map(|(_, r)| r.clone()).collect();
        let mut grew = false;
        for letter in letters {
            for v in &basis {
                let mut acc: HashMap<usize, Scalar> = HashMap::new();
                for (idx, c) in v {
                    let (vars, ops) = ix.decode(*idx);
                    for p in 0..n {
                        for (t, x) in &letter[ops[p]] {
                            let mut o = ops.clone();
                            o[p] = *t;
                            *acc.entry(ix.index(&vars, &o)).or_insert_with(Scalar::zero) += c * x;
                        }
                    }
                }
                let mut row: SparseVec<Scalar> = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
                row.sort_by_key(|x| x.0);
                if !row.is_empty() && reducer.insert(row) {
                    grew = true;
                }
            }
        }
        if !grew {
            return Ok(());
        }
    }
    Err(Error::InternalVerificationFailed(
        "derivation closure did not stabilize".into(),
    ))
}

use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;

use super::eval::{within_budget, Evaluator, MonomialIndexing};
use super::poly::{ExponentWord, LMonomial, LPolynomial};
use crate::algebra::{Envelope, LieAction, StructureAlgebra};
use crate::config::EngineConfig;
use crate::error::{Error, Result};
use crate::linalg::field::{Field, PrimeField, Rationals};
use crate::linalg::modular::{agree, select_primes};
use crate::linalg::sparse::{RowReducer, SparseVec};
use crate::linalg::{Matrix, Scalar, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankMode {
    Exact,
    Modular,
}

/// All `n!·e^n` monomials `x_σ(1)^{u_1} ... x_σ(n)^{u_n}`, exponents drawn
/// from the envelope basis (each written as its representative word), in
/// row order.
pub fn monomial_basis(n: usize, envelope: &Envelope, cfg: &EngineConfig) -> Result<Vec<LMonomial>> {
    if n == 0 {
        return Err(Error::BadParams("degree must be at least 1".into()));
    }
    let ix = MonomialIndexing::new(n, envelope.dim());
    within_budget("monomial basis", ix.count(), cfg.budget)?;
    let words = envelope.word_reps();
    Ok((0..ix.count() as usize)
        .map(|i| {
            let (vars, ops) = ix.decode(i);
            LMonomial::new(
                vars.into_iter()
                    .zip(ops)
                    .map(|(v, u)| (v, ExponentWord(words[u].clone())))
                    .collect(),
            )
        })
        .collect())
}

fn check_streaming_budget(
    alg: &StructureAlgebra,
    ops: usize,
    n: usize,
    cfg: &EngineConfig,
) -> Result<MonomialIndexing> {
    if n == 0 {
        return Err(Error::BadParams("degree must be at least 1".into()));
    }
    let ix = MonomialIndexing::new(n, ops);
    within_budget("evaluation rows", ix.count(), cfg.budget)?;
    within_budget("evaluation columns", (alg.dim() as u128).pow(n as u32 + 1), cfg.budget)?;
    Ok(ix)
}

pub(crate) fn exact_evaluator(alg: &StructureAlgebra, ops: &[Matrix]) -> Evaluator<Rationals> {
    Evaluator::new(Rationals, alg, ops).expect("rationals represent every constant")
}

/// The full evaluation matrix as a dense matrix; rows in monomial order.
pub fn evaluation_matrix(alg: &StructureAlgebra, act: &LieAction, n: usize, cfg: &EngineConfig) -> Result<Matrix> {
    let ops = act.envelope().op_basis();
    let ix = check_streaming_budget(alg, ops.len(), n, cfg)?;
    let cols = alg.dim().pow(n as u32 + 1);
    within_budget("dense evaluation matrix", ix.count() * cols as u128, cfg.budget)?;
    let ev = exact_evaluator(alg, ops);
    let mut m = Matrix::zero(ix.count() as usize, cols);
    for (r, row) in ev.rows(n) {
        for (c, v) in row {
            m[(r, c)] = v;
        }
    }
    Ok(m)
}

fn rank_over<F: Field>(ev: &Evaluator<F>, n: usize) -> usize {
    let mut reducer = RowReducer::new(ev.field().clone());
    for (_, row) in ev.rows(n) {
        reducer.insert(row);
    }
    reducer.rank()
}

fn usable_prime<'a>(ops: &'a [Matrix], alg: &'a StructureAlgebra) -> impl Fn(u64) -> bool + 'a {
    move |p| {
        let f = PrimeField::new(p);
        ops.iter()
            .all(|m| m.entries().iter().all(|s| f.from_scalar(s).is_some()))
            && alg.constants().iter().all(|s| f.from_scalar(s).is_some())
    }
}

/// Rank of the streamed rows for an arbitrary operator list.
fn rank_with_ops(
    alg: &StructureAlgebra,
    ops: &[Matrix],
    n: usize,
    mode: RankMode,
    cfg: &EngineConfig,
) -> Result<usize> {
    check_streaming_budget(alg, ops.len(), n, cfg)?;
    match mode {
        RankMode::Exact => Ok(rank_over(&exact_evaluator(alg, ops), n)),
        RankMode::Modular => {
            let primes = select_primes(cfg.primes, cfg.seed, usable_prime(ops, alg))?;
            let ranks: Vec<usize> = primes
                .par_iter()
                .map(|&p| {
                    let ev = Evaluator::new(PrimeField::new(p), alg, ops).expect("prime was screened");
                    rank_over(&ev, n)
                })
                .collect();
            match agree(ranks) {
                Ok(r) => Ok(r),
                Err(Error::PrimeDisagreement { .. }) => Ok(rank_over(&exact_evaluator(alg, ops), n)),
                Err(e) => Err(e),
            }
        }
    }
}

/// `c_n^L(A)`: rank of the degree-`n` evaluation matrix. With the trivial
/// action this is the ordinary codimension.
pub fn codim(alg: &StructureAlgebra, act: &LieAction, n: usize, mode: RankMode, cfg: &EngineConfig) -> Result<usize> {
    rank_with_ops(alg, act.envelope().op_basis(), n, mode, cfg)
}

/// The multilinear identities of degree `n` in monomial coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub degree: usize,
    pub codim: usize,
    pub identity_dim: usize,
    pub monomial_count: usize,
    pub envelope_dim: usize,
    pub kernel: Subspace,
}

impl IdentityReport {
    /// The monomial behind a coordinate of `kernel`.
    pub fn monomial(&self, index: usize) -> (Vec<usize>, Vec<usize>) {
        MonomialIndexing::new(self.degree, self.envelope_dim).decode(index)
    }
}

pub fn identity_space(alg: &StructureAlgebra, act: &LieAction, n: usize, cfg: &EngineConfig) -> Result<IdentityReport> {
    let ops = act.envelope().op_basis();
    let ix = check_streaming_budget(alg, ops.len(), n, cfg)?;
    let count = ix.count();
    within_budget("identity kernel (rows squared)", count * count, cfg.budget)?;
    let ev = exact_evaluator(alg, ops);
    let mut reducer = RowReducer::with_tracking(Rationals);
    for (_, row) in ev.rows(n) {
        reducer.insert(row);
    }
    let codim = reducer.rank();
    let kernel = Subspace::span_sparse(count as usize, reducer.into_kernel());
    if kernel.dim() + codim != count as usize {
        return Err(Error::InternalVerificationFailed(
            "rank-nullity fails for the evaluation matrix".into(),
        ));
    }
    Ok(IdentityReport {
        degree: n,
        codim,
        identity_dim: kernel.dim(),
        monomial_count: count as usize,
        envelope_dim: ops.len(),
        kernel,
    })
}

/// Coordinates of closure-basis words in the envelope basis, memoized.
pub(crate) struct WordCollapser<'a> {
    act: &'a LieAction,
    memo: HashMap<Vec<usize>, Vec<Scalar>>,
}

impl<'a> WordCollapser<'a> {
    pub fn new(act: &'a LieAction) -> Self {
        WordCollapser {
            act,
            memo: HashMap::new(),
        }
    }

    pub fn coords(&mut self, word: &[usize]) -> &[Scalar] {
        let act = self.act;
        self.memo.entry(word.to_vec()).or_insert_with(|| {
            act.envelope()
                .coords_of(&act.word_matrix(word))
                .expect("words act inside the envelope")
        })
    }

    /// Monomial coordinates of a multilinear polynomial of degree `n`.
    pub fn collapse(&mut self, f: &LPolynomial) -> Result<(usize, HashMap<usize, Scalar>)> {
        let n = f.multilinear_degree()?;
        let e = self.act.envelope().dim();
        let ix = MonomialIndexing::new(n, e);
        let mut out: HashMap<usize, Scalar> = HashMap::new();
        for (m, c) in f.terms() {
            let vars = m.perm();
            let mut partial: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), c.clone())];
            for (_, w) in &m.factors {
                let coords = self.coords(w.letters()).to_vec();
                let mut next = Vec::new();
                for (ops, k) in &partial {
                    for (u, cu) in coords.iter().enumerate() {
                        if !cu.is_zero() {
                            let mut o = ops.clone();
                            o.push(u);
                            next.push((o, k * cu));
                        }
                    }
                }
                partial = next;
            }
            for (ops, k) in partial {
                *out.entry(ix.index(&vars, &ops)).or_insert_with(Scalar::zero) += k;
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok((n, out))
    }
}

/// Outcome of evaluating a polynomial on all basis tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub holds: bool,
    /// Basis index (0-based) assigned to each variable where `f` is nonzero.
    pub witness: Option<Vec<usize>>,
}

fn check_word_cap(f: &LPolynomial, cap: Option<usize>) -> Result<()> {
    if let Some(cap) = cap {
        let length = f.max_word_len();
        if length > cap {
            return Err(Error::WordCapExceeded { length, cap });
        }
    }
    Ok(())
}

/// Evaluation vector of `f` in the column coordinates of the evaluation matrix.
pub(crate) fn evaluation_vector(
    alg: &StructureAlgebra,
    act: &LieAction,
    f: &LPolynomial,
) -> Result<(usize, SparseVec<Scalar>)> {
    let mut collapser = WordCollapser::new(act);
    let (n, coords) = collapser.collapse(f)?;
    let e = act.envelope().dim();
    let ix = MonomialIndexing::new(n, e);
    let ev = exact_evaluator(alg, act.envelope().op_basis());
    let mut acc: HashMap<usize, Scalar> = HashMap::new();
    let mut keys: Vec<&usize> = coords.keys().collect();
    keys.sort();
    for idx in keys {
        let (vars, ops) = ix.decode(*idx);
        let c = &coords[idx];
        for (col, v) in ev.monomial_row(&vars, &ops) {
            *acc.entry(col).or_insert_with(Scalar::zero) += c * v;
        }
    }
    let mut row: SparseVec<Scalar> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    row.sort_by_key(|e| e.0);
    Ok((n, row))
}

/// `f ≡ 0` on `A`: by multilinearity it suffices to evaluate on basis tuples.
/// Exponent words use closure-basis letters.
pub fn is_identity(
    f: &LPolynomial,
    alg: &StructureAlgebra,
    act: &LieAction,
    cap: Option<usize>,
) -> Result<IdentityCheck> {
    check_word_cap(f, cap)?;
    if f.is_zero() {
        return Ok(IdentityCheck {
            holds: true,
            witness: None,
        });
    }
    let (n, row) = evaluation_vector(alg, act, f)?;
    Ok(match row.first() {
        None => IdentityCheck {
            holds: true,
            witness: None,
        },
        Some((col, _)) => {
            let dim = alg.dim();
            let mut tuple = col / dim;
            let mut witness = vec![0; n];
            for v in (0..n).rev() {
                witness[v] = tuple % dim;
                tuple /= dim;
            }
            IdentityCheck {
                holds: false,
                witness: Some(witness),
            }
        }
    })
}

/// Leibniz derivative of `f` by a closure-basis letter, PBW-normalized.
pub fn derive_polynomial(f: &LPolynomial, letter: usize, act: &LieAction, cap: Option<usize>) -> Result<LPolynomial> {
    if letter >= act.closure_dim() {
        return Err(Error::BadParams(format!("no closure-basis letter {letter}")));
    }
    let d = f.derive(letter, act);
    check_word_cap(&d, cap)?;
    Ok(d)
}

/// Identity polynomial `Σ_r v_r · monomial_r` from monomial coordinates.
pub fn polynomial_from_coords(coords: &[(usize, Scalar)], degree: usize, words: &[Vec<usize>]) -> LPolynomial {
    let ix = MonomialIndexing::new(degree, words.len());
    LPolynomial::from_terms(coords.iter().map(|(idx, c)| {
        let (vars, ops) = ix.decode(*idx);
        (
            LMonomial::new(
                vars.into_iter()
                    .zip(ops)
                    .map(|(v, u)| (v, ExponentWord(words[u].clone())))
                    .collect(),
            ),
            c.clone(),
        )
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{lie_closure, ut};
    use crate::linalg::int;

    fn x(i: usize) -> LPolynomial {
        LPolynomial::var(i)
    }

    fn xe(i: usize) -> LPolynomial {
        LPolynomial::var_pow(i, ExponentWord(vec![0]))
    }

    fn ut2_eps() -> (StructureAlgebra, LieAction) {
        let (a, d) = ut(2).unwrap();
        let act = lie_closure(&a, vec![d[2].clone()]).unwrap();
        (a, act)
    }

    #[test]
    fn monomial_bases() {
        let cfg = EngineConfig::default();
        let (a, eps) = ut2_eps();
        let trivial = LieAction::trivial(&a);
        assert_eq!(monomial_basis(1, trivial.envelope(), &cfg).unwrap().len(), 1);
        let b = monomial_basis(1, eps.envelope(), &cfg).unwrap();
        assert_eq!(
            b,
            vec![
                LMonomial::new(vec![(0, ExponentWord::empty())]),
                LMonomial::new(vec![(0, ExponentWord(vec![0]))])
            ]
        );
        assert_eq!(monomial_basis(2, eps.envelope(), &cfg).unwrap().len(), 8);
        let tiny = EngineConfig { budget: 7, ..cfg };
        assert!(matches!(
            monomial_basis(2, eps.envelope(), &tiny),
            Err(Error::SizeCap { .. })
        ));
    }

    #[test]
    fn small_matrices() {
        let cfg = EngineConfig::default();
        let f = StructureAlgebra::from_table("F", 1, &[(0, 0, 0, int(1))], None).unwrap();
        let m = evaluation_matrix(&f, &LieAction::trivial(&f), 1, &cfg).unwrap();
        assert_eq!(m, Matrix::from_i64(1, 1, &[1]));
        let (a, eps) = ut2_eps();
        let trivial = LieAction::trivial(&a);
        assert_eq!(
            crate::linalg::rank(&evaluation_matrix(&a, &trivial, 2, &cfg).unwrap()),
            2
        );
        let r = crate::linalg::rank(&evaluation_matrix(&a, &eps, 2, &cfg).unwrap());
        assert_eq!(r, codim(&a, &eps, 2, RankMode::Exact, &cfg).unwrap());
    }

    #[test]
    fn ordinary_ut2_codims() {
        let cfg = EngineConfig::default();
        let (a, _) = ut(2).unwrap();
        let t = LieAction::trivial(&a);
        assert_eq!(codim(&a, &t, 1, RankMode::Exact, &cfg).unwrap(), 1);
        assert_eq!(codim(&a, &t, 4, RankMode::Exact, &cfg).unwrap(), 18);
        assert_eq!(codim(&a, &t, 4, RankMode::Modular, &cfg).unwrap(), 18);
        let (_, eps) = ut2_eps();
        assert_eq!(codim(&a, &eps, 1, RankMode::Exact, &cfg).unwrap(), 2);
    }

    #[test]
    fn identity_spaces() {
        let cfg = EngineConfig::default();
        let (a, eps) = ut2_eps();
        let t = LieAction::trivial(&a);
        let r2 = identity_space(&a, &t, 2, &cfg).unwrap();
        assert_eq!((r2.codim, r2.identity_dim), (2, 0));
        let r4 = identity_space(&a, &t, 4, &cfg).unwrap();
        let g = LPolynomial::commutator(&x(0), &x(1)).mul(&LPolynomial::commutator(&x(2), &x(3)));
        let (_, coords) = WordCollapser::new(&t).collapse(&g).unwrap();
        let mut v = vec![Scalar::zero(); r4.monomial_count];
        for (i, c) in coords {
            v[i] = c;
        }
        assert!(r4.kernel.member(&v).unwrap());
        // x^{eps^2} - x^eps collapses to zero
        let h = LPolynomial::var_pow(0, ExponentWord(vec![0, 0])).sub(&xe(0));
        let (_, coords) = WordCollapser::new(&eps).collapse(&h).unwrap();
        assert!(coords.is_empty());
    }

    #[test]
    fn identities() {
        let (a, eps) = ut2_eps();
        let t = LieAction::trivial(&a);
        let g = LPolynomial::commutator(&x(0), &x(1)).mul(&LPolynomial::commutator(&x(2), &x(3)));
        assert!(is_identity(&g, &a, &t, None).unwrap().holds);
        assert!(is_identity(&xe(0).mul(&xe(1)), &a, &eps, None).unwrap().holds);
        let c = is_identity(&LPolynomial::commutator(&x(0), &x(1)), &a, &t, None).unwrap();
        assert!(!c.holds);
        // basis order e11, e12, e22: the first nonzero tuple in column order
        let w = c.witness.unwrap();
        let (p, q) = (a.basis_vector(w[0]), a.basis_vector(w[1]));
        assert_ne!(a.mul(&p, &q), a.mul(&q, &p));
        let long = LPolynomial::var_pow(0, ExponentWord(vec![0, 0, 0]));
        assert!(matches!(
            is_identity(&long, &a, &eps, Some(2)),
            Err(Error::WordCapExceeded { .. })
        ));
    }

    #[test]
    fn derivative_of_commutator_on_eps() {
        let (a, eps) = ut2_eps();
        let c = LPolynomial::commutator(&x(0), &x(1));
        let d = derive_polynomial(&c, 0, &eps, None).unwrap();
        assert!(is_identity(&d.sub(&c), &a, &eps, None).unwrap().holds);
    }
}

use num_traits::Zero;

use super::eval::{factorial, within_budget, Evaluator, MonomialIndexing};
use super::poly::{ExponentWord, LMonomial, LPolynomial};
use crate::algebra::{LieAction, StructureAlgebra};
use crate::config::EngineConfig;
use crate::error::{Error, Result};
use crate::linalg::field::Rationals;
use crate::linalg::sparse::{RowReducer, SparseVec};
use crate::linalg::{Matrix, Scalar};

/// Outcome of comparing degree-`n` identities of two algebras.
#[derive(Debug, Clone)]
pub struct ContainmentResult {
    pub degree: usize,
    pub word_cap: usize,
    pub contained: bool,
    /// An identity of the first algebra that fails in the second. Exponent
    /// letters index the shared generator alphabet, not a closure basis.
    pub certificate: Option<LPolynomial>,
    /// Rank of the first evaluation matrix, i.e. the codimension over the
    /// formal-word basis.
    pub rank_left: usize,
    pub rank_joint: usize,
}

impl ContainmentResult {
    /// The certificate rewritten over `act`'s closure letters, ready for
    /// [`is_identity`](super::is_identity).
    pub fn certificate_for(&self, act: &LieAction) -> Option<LPolynomial> {
        let images: Vec<Vec<Scalar>> = (0..act.generators().len())
            .map(|g| act.generator_in_closure(g).to_vec())
            .collect();
        self.certificate.as_ref().map(|c| c.map_letters(&images))
    }
}

/// All words over `letters` symbols of length at most `cap`, shortlex.
pub fn generator_words(letters: usize, cap: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..cap {
        if letters == 0 {
            break;
        }
        layer = layer
            .iter()
            .flat_map(|w: &Vec<usize>| {
                (0..letters).map(move |l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn word_matrices(act: &LieAction, dim: usize, words: &[Vec<usize>]) -> Vec<Matrix> {
    let gens = act.generators();
    words
        .iter()
        .map(|w| w.iter().fold(Matrix::identity(dim), |acc, &g| acc.mul(&gens[g].matrix)))
        .collect()
}

/// Decides `Id_n(A) ⊆ Id_n(B)` over monomials whose exponents are formal words
/// in the generators (shared by both actions), so the comparison does not
/// depend on either envelope.
///
/// Containment holds iff appending `B`'s evaluation columns to `A`'s does not
/// raise the rank. Otherwise some combination of rows vanishes on `A` but not
/// on `B`, and that combination is returned as the certificate.
pub fn containment_check(
    alg_a: &StructureAlgebra,
    act_a: &LieAction,
    alg_b: &StructureAlgebra,
    act_b: &LieAction,
    n: usize,
    cfg: &EngineConfig,
) -> Result<ContainmentResult> {
    let letters = act_a.generators().len();
    if letters != act_b.generators().len() {
        return Err(Error::AlphabetMismatch {
            left: letters,
            right: act_b.generators().len(),
        });
    }
    if n == 0 {
        return Err(Error::BadParams("degree must be at least 1".into()));
    }
    let cap = cfg
        .word_cap
        .unwrap_or_else(|| act_a.default_word_cap().max(act_b.default_word_cap()));
    let words = generator_words(letters, cap);
    let ix = MonomialIndexing::new(n, words.len());
    within_budget("containment rows", ix.count(), cfg.budget)?;
    debug_assert_eq!(ix.count(), factorial(n) * (words.len() as u128).pow(n as u32));

    let ev_a =
        Evaluator::new(Rationals, alg_a, &word_matrices(act_a, alg_a.dim(), &words)).expect("rational constants");
    let ev_b =
        Evaluator::new(Rationals, alg_b, &word_matrices(act_b, alg_b.dim(), &words)).expect("rational constants");
    let cols_a = ev_a.column_count(n);
    within_budget("containment columns", cols_a + ev_b.column_count(n), cfg.budget)?;
    let offset = cols_a as usize;

    let rows_a = ev_a.rows(n);
    let rows_b = ev_b.rows(n);
    let mut left = RowReducer::new(Rationals);
    let mut joint = RowReducer::with_tracking(Rationals);
    let mut certificate: Option<SparseVec<Scalar>> = None;
    for ((ia, ra), (ib, rb)) in rows_a.into_iter().zip(rows_b) {
        debug_assert_eq!(ia, ib);
        let mut row = ra.clone();
        row.extend(rb.into_iter().map(|(c, v)| (c + offset, v)));
        left.insert(ra);
        if joint.insert(row) && certificate.is_none() {
            let (lead, combo) = joint
                .rows_with_combos()
                .last()
                .map(|(r, c)| (r[0].0, c.cloned()))
                .expect("row just stored");
            if lead >= offset {
                certificate = combo;
            }
        }
    }

    let certificate = certificate.map(|combo| {
        LPolynomial::from_terms(combo.into_iter().filter(|(_, c)| !c.is_zero()).map(|(idx, c)| {
            let (vars, ops) = ix.decode(idx);
            let factors = vars
                .into_iter()
                .zip(ops)
                .map(|(v, u)| (v, ExponentWord(words[u].clone())))
                .collect();
            (LMonomial::new(factors), c)
        }))
    });
    Ok(ContainmentResult {
        degree: n,
        word_cap: cap,
        contained: left.rank() == joint.rank(),
        certificate,
        rank_left: left.rank(),
        rank_joint: joint.rank(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{lie_closure, ut, Derivation};
    use crate::pi::codim::is_identity;

    fn ut2_eps() -> (StructureAlgebra, LieAction) {
        let (a, d) = ut(2).unwrap();
        let act = lie_closure(&a, vec![d[2].clone()]).unwrap();
        (a, act)
    }

    fn ut2_zero_gen() -> (StructureAlgebra, LieAction) {
        let (a, _) = ut(2).unwrap();
        let z = Derivation::new("eps", Matrix::zero(3, 3));
        let act = lie_closure(&a, vec![z]).unwrap();
        (a, act)
    }

    #[test]
    fn words_shortlex() {
        assert_eq!(
            generator_words(2, 2),
            vec![vec![], vec![0], vec![1], vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
        assert_eq!(generator_words(0, 3), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn alphabet_mismatch() {
        let (a, act) = ut2_eps();
        let t = LieAction::trivial(&a);
        let err = containment_check(&a, &act, &a, &t, 2, &EngineConfig::default()).unwrap_err();
        assert!(matches!(err, Error::AlphabetMismatch { left: 1, right: 0 }));
    }

    #[test]
    fn self_containment() {
        let (a, act) = ut2_eps();
        let r = containment_check(&a, &act, &a, &act, 3, &EngineConfig::default()).unwrap();
        assert!(r.contained);
        assert!(r.certificate.is_none());
    }

    #[test]
    fn ut2_and_ut2_eps_are_distinct() {
        let (a, eps) = ut2_eps();
        let (_, zero) = ut2_zero_gen();
        let cfg = EngineConfig::default();
        let forward = containment_check(&a, &zero, &a, &eps, 2, &cfg).unwrap();
        assert!(!forward.contained);
        let cert = forward.certificate_for(&zero).unwrap();
        assert!(is_identity(&cert, &a, &zero, None).unwrap().holds);
        assert!(
            !is_identity(&forward.certificate_for(&eps).unwrap(), &a, &eps, None)
                .unwrap()
                .holds
        );

        let backward = (2..=4)
            .map(|n| containment_check(&a, &eps, &a, &zero, n, &cfg).unwrap())
            .find(|r| !r.contained)
            .expect("a certificate by degree 4");
        assert!(
            is_identity(&backward.certificate_for(&eps).unwrap(), &a, &eps, None)
                .unwrap()
                .holds
        );
        assert!(
            !is_identity(&backward.certificate_for(&zero).unwrap(), &a, &zero, None)
                .unwrap()
                .holds
        );
    }

    #[test]
    fn ut3_identities_hold_in_ut2() {
        let (a3, _) = ut(3).unwrap();
        let (a2, _) = ut(2).unwrap();
        let cfg = EngineConfig::default();
        for n in 1..=3 {
            let r = containment_check(&a3, &LieAction::trivial(&a3), &a2, &LieAction::trivial(&a2), n, &cfg).unwrap();
            assert!(r.contained, "degree {n}");
        }
        let r = containment_check(&a2, &LieAction::trivial(&a2), &a3, &LieAction::trivial(&a3), 4, &cfg).unwrap();
        assert!(!r.contained);
    }
}

use super::derivation::{leibniz_failure, Derivation};
use super::structure_algebra::StructureAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{CoordBasis, Matrix, Scalar, Subspace};

/// The image of `U(L)` in the endomorphism algebra of `A`.
#[derive(Debug, Clone)]
pub struct Envelope {
    algebra_dim: usize,
    op_basis: Vec<Matrix>,
    word_reps: Vec<Vec<usize>>,
    mult_table: Vec<Vec<Vec<Scalar>>>,
    nonunital: Vec<Matrix>,
    nonunital_words: Vec<Vec<usize>>,
    stable_length: usize,
    coords: CoordBasis,
}

impl Envelope {
    /// Multiplicative closure of `{id} ∪ letters`, breadth first by word length.
    pub fn new(algebra_dim: usize, letters: &[Matrix]) -> Envelope {
        let n2 = algebra_dim * algebra_dim;
        let mut nonunital_span = CoordBasis::new(n2);
        let mut nonunital: Vec<Matrix> = Vec::new();
        let mut nonunital_words: Vec<Vec<usize>> = Vec::new();
        let mut frontier: Vec<usize> = Vec::new();
        for (i, m) in letters.iter().enumerate() {
            if nonunital_span.push(&m.flatten()).is_some() {
                nonunital.push(m.clone());
                nonunital_words.push(vec![i]);
                frontier.push(nonunital.len() - 1);
            }
        }
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &f in &frontier {
                for (i, m) in letters.iter().enumerate() {
                    let prod = nonunital[f].mul(m);
                    if nonunital_span.push(&prod.flatten()).is_some() {
                        let mut w = nonunital_words[f].clone();
                        w.push(i);
                        nonunital.push(prod);
                        nonunital_words.push(w);
                        next.push(nonunital.len() - 1);
                    }
                }
            }
            frontier = next;
        }
        let stable_length = nonunital_words.iter().map(Vec::len).max().unwrap_or(0);

        let mut coords = CoordBasis::new(n2);
        let mut op_basis = Vec::new();
        let mut word_reps = Vec::new();
        let id = Matrix::identity(algebra_dim);
        if coords.push(&id.flatten()).is_some() {
            op_basis.push(id);
            word_reps.push(Vec::new());
        }
        for (m, w) in nonunital.iter().zip(&nonunital_words) {
            if coords.push(&m.flatten()).is_some() {
                op_basis.push(m.clone());
                word_reps.push(w.clone());
            }
        }
        let mult_table = op_basis
            .iter()
            .map(|u| {
                op_basis
                    .iter()
                    .map(|v| {
                        coords
                            .coords(&u.mul(v).flatten())
                            .expect("envelope is closed under products")
                    })
                    .collect()
            })
            .collect();
        Envelope {
            algebra_dim,
            op_basis,
            word_reps,
            mult_table,
            nonunital,
            nonunital_words,
            stable_length,
            coords,
        }
    }

    pub fn dim(&self) -> usize {
        self.op_basis.len()
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    /// Basis of the envelope; element 0 is the identity (when `A != 0`).
    pub fn op_basis(&self) -> &[Matrix] {
        &self.op_basis
    }

    pub fn word_reps(&self) -> &[Vec<usize>] {
        &self.word_reps
    }

    /// Coordinates of `op_u * op_v` ("apply u, then v") in `op_basis`.
    pub fn mult_table(&self) -> &[Vec<Vec<Scalar>>] {
        &self.mult_table
    }

    /// Basis of the image of the non-unital enveloping algebra (nonempty words).
    pub fn nonunital_basis(&self) -> &[Matrix] {
        &self.nonunital
    }

    pub fn nonunital_words(&self) -> &[Vec<usize>] {
        &self.nonunital_words
    }

    /// Longest word needed to reach a new basis element.
    pub fn stable_length(&self) -> usize {
        self.stable_length
    }

    /// Coordinates of an endomorphism in `op_basis`, if it lies in the envelope.
    pub fn coords_of(&self, m: &Matrix) -> Option<Vec<Scalar>> {
        self.coords.coords(&m.flatten())
    }

    /// `{ b^u : b in s, u in basis }`, with the identity excluded when
    /// `include_identity` is false (then `basis` is the non-unital image).
    pub fn act_on(&self, s: &Subspace, include_identity: bool) -> Result<Subspace> {
        if s.ambient_dim() != self.algebra_dim {
            return Err(Error::AmbientMismatch {
                left: self.algebra_dim,
                right: s.ambient_dim(),
            });
        }
        let ops = if include_identity {
            &self.op_basis
        } else {
            &self.nonunital
        };
        let images = s.basis().iter().flat_map(|b| ops.iter().map(move |u| u.apply_row(b)));
        Subspace::span(self.algebra_dim, images)
    }
}

/// The Lie closure of a set of derivations together with its envelope.
#[derive(Debug, Clone)]
pub struct LieAction {
    generators: Vec<Derivation>,
    closure_basis: Vec<Matrix>,
    closure_names: Vec<String>,
    generator_coords: Vec<Vec<Scalar>>,
    bracket_constants: Vec<Vec<Vec<Scalar>>>,
    envelope: Envelope,
}

/// Closes the generators under the matrix commutator.
///
/// The closure basis lists the independent generators first, in the order
/// given, followed by new brackets in the order they are found.
pub fn lie_closure(alg: &StructureAlgebra, generators: Vec<Derivation>) -> Result<LieAction> {
    let n = alg.dim();
    for g in &generators {
        if g.matrix.rows() != n || g.matrix.cols() != n {
            return Err(Error::NotADerivation {
                name: g.name.clone(),
                i: 0,
                j: 0,
            });
        }
        if let Some((i, j)) = leibniz_failure(alg, &g.matrix) {
            return Err(Error::NotADerivation {
                name: g.name.clone(),
                i: i + 1,
                j: j + 1,
            });
        }
    }
    let mut span = CoordBasis::new(n * n);
    let mut basis: Vec<Matrix> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    for g in &generators {
        if span.push(&g.matrix.flatten()).is_some() {
            basis.push(g.matrix.clone());
            names.push(g.name.clone());
        }
    }
    let mut j = 0;
    while j < basis.len() {
        for i in 0..j {
            let c = basis[i].commutator(&basis[j]);
            if span.push(&c.flatten()).is_some() {
                basis.push(c);
                names.push(format!("[{},{}]", names[i], names[j]));
            }
        }
        j += 1;
    }
    let generator_coords = generators
        .iter()
        .map(|g| span.coords(&g.matrix.flatten()).expect("generator lies in its closure"))
        .collect();
    let bracket_constants = (0..basis.len())
        .map(|i| {
            (0..basis.len())
                .map(|j| {
                    span.coords(&basis[i].commutator(&basis[j]).flatten())
                        .expect("closure is closed under brackets")
                })
                .collect()
        })
        .collect();
    let envelope = Envelope::new(n, &basis);
    Ok(LieAction {
        generators,
        closure_basis: basis,
        closure_names: names,
        generator_coords,
        bracket_constants,
        envelope,
    })
}

impl LieAction {
    /// The action of the zero Lie algebra.
    pub fn trivial(alg: &StructureAlgebra) -> LieAction {
        lie_closure(alg, Vec::new()).expect("empty generator list is valid")
    }

    pub fn generators(&self) -> &[Derivation] {
        &self.generators
    }

    pub fn closure_basis(&self) -> &[Matrix] {
        &self.closure_basis
    }

    /// Generator names for generator letters, `[a,b]` for brackets.
    pub fn closure_names(&self) -> &[String] {
        &self.closure_names
    }

    pub fn closure_dim(&self) -> usize {
        self.closure_basis.len()
    }

    /// Coordinates of generator `g` in the closure basis.
    pub fn generator_in_closure(&self, g: usize) -> &[Scalar] {
        &self.generator_coords[g]
    }

    /// Longest envelope word plus one: the default cap on exponent words.
    pub fn default_word_cap(&self) -> usize {
        self.envelope.stable_length + 1
    }

    /// Coordinates of `[d_i, d_j]` in the closure basis.
    pub fn bracket(&self, i: usize, j: usize) -> &[Scalar] {
        &self.bracket_constants[i][j]
    }

    pub fn envelope(&self) -> &Envelope {
        &self.envelope
    }

    pub fn is_trivial(&self) -> bool {
        self.closure_basis.iter().all(Matrix::is_zero)
    }

    /// Matrix of a word of closure-basis letters, applied left to right.
    pub fn word_matrix(&self, word: &[usize]) -> Matrix {
        let n = self.envelope.algebra_dim;
        word.iter()
            .fold(Matrix::identity(n), |acc, &l| acc.mul(&self.closure_basis[l]))
    }

    /// Derived series `L, [L, L], ...` reaches zero.
    pub fn is_solvable(&self) -> bool {
        let dim2 = self.envelope.algebra_dim * self.envelope.algebra_dim;
        let mut current: Vec<Matrix> = self.closure_basis.clone();
        loop {
            if current.iter().all(Matrix::is_zero) {
                return true;
            }
            let mut span = CoordBasis::new(dim2);
            let mut next = Vec::new();
            for i in 0..current.len() {
                for j in i + 1..current.len() {
                    let c = current[i].commutator(&current[j]);
                    if span.push(&c.flatten()).is_some() {
                        next.push(c);
                    }
                }
            }
            if next.len() == current.len() {
                return false;
            }
            current = next;
        }
    }
}

/// Checks `e_i^{w}` computed letter by letter against the envelope matrix.
#[cfg(test)]
fn word_consistent(action: &LieAction, alg: &StructureAlgebra, u: usize) -> bool {
    let env = action.envelope();
    let word = &env.word_reps()[u];
    (0..alg.dim()).all(|b| {
        let mut v = alg.basis_vector(b);
        for &l in word {
            v = action.closure_basis()[l].apply_row(&v);
        }
        v == env.op_basis()[u].apply_row(&alg.basis_vector(b))
    })
}

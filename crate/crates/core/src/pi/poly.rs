use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};

use crate::algebra::LieAction;
use crate::error::{Error, Result};
use crate::linalg::Scalar;

/// A word in the enveloping algebra. Letters are applied left to right, so
/// `x^{ab}` means `(x^a)^b`. The alphabet is the closure basis unless stated
/// otherwise (containment certificates use the generator alphabet).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentWord(pub Vec<usize>);

impl ExponentWord {
    pub fn empty() -> Self {
        ExponentWord(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// PBW normal form: letters non-decreasing.
    pub fn is_normal(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    fn appended(&self, letter: usize) -> ExponentWord {
        let mut w = self.0.clone();
        w.push(letter);
        ExponentWord(w)
    }
}

/// Rewrites a word into PBW normal form using `ba = ab - [a, b]` for `a < b`,
/// i.e. every descent `ba` becomes `ab + [b, a]`.
pub fn normalize_word(word: &ExponentWord, act: &LieAction) -> Vec<(ExponentWord, Scalar)> {
    let mut out: BTreeMap<ExponentWord, Scalar> = BTreeMap::new();
    let mut stack = vec![(word.clone(), Scalar::one())];
    while let Some((w, c)) = stack.pop() {
        match w.0.windows(2).position(|p| p[0] > p[1]) {
            None => {
                let slot = out.entry(w).or_insert_with(Scalar::zero);
                *slot += c;
            }
            Some(i) => {
                let (b, a) = (w.0[i], w.0[i + 1]);
                let mut swapped = w.0.clone();
                swapped.swap(i, i + 1);
                stack.push((ExponentWord(swapped), c.clone()));
                for (k, coef) in act.bracket(b, a).iter().enumerate() {
                    if !coef.is_zero() {
                        let mut shorter = w.0[..i].to_vec();
                        shorter.push(k);
                        shorter.extend_from_slice(&w.0[i + 2..]);
                        stack.push((ExponentWord(shorter), &c * coef));
                    }
                }
            }
        }
    }
    out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// A product of variables with exponents; the sequence of variables is the
/// permutation `σ` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LMonomial {
    pub factors: Vec<(usize, ExponentWord)>,
}

impl LMonomial {
    pub fn new(factors: Vec<(usize, ExponentWord)>) -> Self {
        LMonomial { factors }
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    pub fn perm(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.0).collect()
    }
}

/// Linear combination of monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LPolynomial {
    terms: BTreeMap<LMonomial, Scalar>,
}

impl LPolynomial {
    pub fn zero() -> Self {
        LPolynomial::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (LMonomial, Scalar)>) -> Self {
        let mut p = LPolynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// The variable `x_i` (0-based).
    pub fn var(i: usize) -> Self {
        Self::var_pow(i, ExponentWord::empty())
    }

    pub fn var_pow(i: usize, word: ExponentWord) -> Self {
        Self::from_terms([(LMonomial::new(vec![(i, word)]), Scalar::one())])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: LMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &LPolynomial) -> LPolynomial {
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &LPolynomial) -> LPolynomial {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> LPolynomial {
        Self::from_terms(self.terms.iter().map(|(m, v)| (m.clone(), v * c)))
    }

    /// Concatenation product.
    pub fn mul(&self, other: &LPolynomial) -> LPolynomial {
        let mut p = LPolynomial::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut f = a.factors.clone();
                f.extend(b.factors.iter().cloned());
                p.add_term(LMonomial::new(f), ca * cb);
            }
        }
        p
    }

    pub fn commutator(a: &LPolynomial, b: &LPolynomial) -> LPolynomial {
        a.mul(b).sub(&b.mul(a))
    }

    /// `[a_1, a_2, ..., a_k] = [[a_1, a_2], ..., a_k]`.
    pub fn left_normed(parts: &[LPolynomial]) -> LPolynomial {
        let mut it = parts.iter();
        let first = it.next().cloned().unwrap_or_default();
        it.fold(first, |acc, p| Self::commutator(&acc, p))
    }

    pub fn product(parts: &[LPolynomial]) -> LPolynomial {
        let mut it = parts.iter();
        let first = it.next().cloned().unwrap_or_default();
        it.fold(first, |acc, p| acc.mul(p))
    }

    pub fn max_word_len(&self) -> usize {
        self.terms
            .keys()
            .flat_map(|m| m.factors.iter().map(|f| f.1.len()))
            .max()
            .unwrap_or(0)
    }

    /// Degree `n` when every term uses each of `x_0..x_{n-1}` exactly once.
    pub fn multilinear_degree(&self) -> Result<usize> {
        let mut degree = None;
        for m in self.terms.keys() {
            let n = m.degree();
            let mut seen = vec![false; n];
            for (v, _) in &m.factors {
                if *v >= n || seen[*v] {
                    return Err(Error::NotMultilinear(format!(
                        "term {} does not use x1..x{n} once each",
                        show_monomial(m, None)
                    )));
                }
                seen[*v] = true;
            }
            match degree {
                None => degree = Some(n),
                Some(d) if d != n => {
                    return Err(Error::NotMultilinear(format!("terms of degrees {d} and {n}")));
                }
                _ => {}
            }
        }
        Ok(degree.unwrap_or(0))
    }

    /// Leibniz rule: the letter is appended to one factor's word per summand,
    /// then each word is brought to PBW normal form.
    pub fn derive(&self, letter: usize, act: &LieAction) -> LPolynomial {
        let mut p = LPolynomial::zero();
        for (m, c) in &self.terms {
            for pos in 0..m.factors.len() {
                let (var, word) = &m.factors[pos];
                for (w, k) in normalize_word(&word.appended(letter), act) {
                    let mut f = m.factors.clone();
                    f[pos] = (*var, w);
                    p.add_term(LMonomial::new(f), c * k);
                }
            }
        }
        p
    }

    pub fn derive_word(&self, word: &ExponentWord, act: &LieAction) -> LPolynomial {
        word.0.iter().fold(self.clone(), |p, &l| p.derive(l, act))
    }

    /// Replaces each `x_i^w` by `images[i]` acted on by `w`. The result must
    /// be multilinear.
    pub fn substitute(&self, images: &[LPolynomial], act: &LieAction) -> Result<LPolynomial> {
        let mut used = std::collections::BTreeSet::new();
        for image in images {
            let vars: std::collections::BTreeSet<usize> =
                image.terms.keys().flat_map(|m| m.factors.iter().map(|f| f.0)).collect();
            if let Some(v) = vars.iter().find(|v| used.contains(*v)) {
                return Err(Error::NotMultilinear(format!("x{} occurs in two images", v + 1)));
            }
            used.extend(vars);
        }
        let mut p = LPolynomial::zero();
        for (m, c) in &self.terms {
            let mut acc = LPolynomial::from_terms([(LMonomial::new(Vec::new()), c.clone())]);
            for (var, word) in &m.factors {
                let image = images
                    .get(*var)
                    .ok_or_else(|| Error::NotMultilinear(format!("no image for x{}", var + 1)))?;
                acc = acc.mul(&image.derive_word(word, act));
            }
            p = p.add(&acc);
        }
        p.multilinear_degree()?;
        Ok(p)
    }

    /// Replaces every letter by a linear combination of letters, expanding
    /// words multilinearly (e.g. generator names to closure-basis letters).
    pub fn map_letters(&self, images: &[Vec<Scalar>]) -> LPolynomial {
        let mut p = LPolynomial::zero();
        for (m, c) in &self.terms {
            let mut partial: Vec<(Vec<(usize, ExponentWord)>, Scalar)> = vec![(Vec::new(), c.clone())];
            for (var, word) in &m.factors {
                let mut words: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), Scalar::one())];
                for &l in &word.0 {
                    let mut next = Vec::new();
                    for (w, k) in &words {
                        for (t, coef) in images[l].iter().enumerate() {
                            if !coef.is_zero() {
                                let mut w2 = w.clone();
                                w2.push(t);
                                next.push((w2, k * coef));
                            }
                        }
                    }
                    words = next;
                }
                let mut next = Vec::new();
                for (f, k) in &partial {
                    for (w, kw) in &words {
                        let mut f2 = f.clone();
                        f2.push((*var, ExponentWord(w.clone())));
                        next.push((f2, k * kw));
                    }
                }
                partial = next;
            }
            for (f, k) in partial {
                p.add_term(LMonomial::new(f), k);
            }
        }
        p
    }

    /// Renames variables: `x_i -> x_{map[i]}`.
    pub fn relabel(&self, map: &[usize]) -> LPolynomial {
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            (
                LMonomial::new(m.factors.iter().map(|(v, w)| (map[*v], w.clone())).collect()),
                c.clone(),
            )
        }))
    }

    /// Text form accepted by the polynomial parser, e.g. `x1^[eps] x2 - 1/2 x2 x1`.
    /// Without names, letters print as their indices.
    pub fn display(&self, names: Option<&[String]>) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c < &Scalar::zero();
            let abs = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !abs.is_one() {
                let _ = write!(out, "{abs} ");
            }
            out.push_str(&show_monomial(m, names));
        }
        out
    }
}

fn show_monomial(m: &LMonomial, names: Option<&[String]>) -> String {
    let parts: Vec<String> = m
        .factors
        .iter()
        .map(|(v, w)| {
            if w.is_empty() {
                format!("x{}", v + 1)
            } else {
                let letters: Vec<String> =
                    w.0.iter()
                        .map(|&l| match names {
                            Some(n) => n[l].clone(),
                            None => l.to_string(),
                        })
                        .collect();
                format!("x{}^[{}]", v + 1, letters.join(","))
            }
        })
        .collect();
    parts.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{lie_closure, ut};
    use crate::linalg::int;

    fn x(i: usize) -> LPolynomial {
        LPolynomial::var(i)
    }

    fn xw(i: usize, w: &[usize]) -> LPolynomial {
        LPolynomial::var_pow(i, ExponentWord(w.to_vec()))
    }

    fn der_ut2() -> LieAction {
        let (a, d) = ut(2).unwrap();
        // closure basis (eps, delta)
        lie_closure(&a, vec![d[2].clone(), d[1].clone()]).unwrap()
    }

    #[test]
    fn leibniz_on_product() {
        let act = der_ut2();
        let p = x(0).mul(&x(1)).derive(1, &act);
        assert_eq!(p, xw(0, &[1]).mul(&x(1)).add(&x(0).mul(&xw(1, &[1]))));
    }

    #[test]
    fn repeated_letter() {
        let act = der_ut2();
        assert_eq!(xw(0, &[1]).derive(1, &act), xw(0, &[1, 1]));
    }

    #[test]
    fn pbw_rewrites_descents() {
        // [eps, delta] = -delta, so delta eps = eps delta - [eps, delta] = eps delta + delta
        let act = der_ut2();
        let got = normalize_word(&ExponentWord(vec![1, 0]), &act);
        assert_eq!(
            got,
            vec![(ExponentWord(vec![0, 1]), int(1)), (ExponentWord(vec![1]), int(1))]
        );
        assert!(got.iter().all(|(w, _)| w.is_normal()));
    }

    #[test]
    fn commutators_are_left_normed() {
        let c = LPolynomial::left_normed(&[x(0), x(1), x(2)]);
        let inner = LPolynomial::commutator(&x(0), &x(1));
        assert_eq!(c, inner.mul(&x(2)).sub(&x(2).mul(&inner)));
        assert_eq!(c.term_count(), 4);
    }

    #[test]
    fn substitution() {
        let act = der_ut2();
        let f = LPolynomial::commutator(&x(0), &x(1));
        assert_eq!(f.substitute(&[x(0), x(1)], &act).unwrap(), f);
        let g = LPolynomial::commutator(&xw(0, &[0]), &x(1));
        assert_eq!(f.substitute(&[xw(0, &[0]), x(1)], &act).unwrap(), g);
        // x^delta with x -> y z
        let h = xw(0, &[1]).substitute(&[x(0).mul(&x(1))], &act).unwrap();
        assert_eq!(h, xw(0, &[1]).mul(&x(1)).add(&x(0).mul(&xw(1, &[1]))));
        assert!(matches!(
            f.substitute(&[x(0), x(0)], &act),
            Err(Error::NotMultilinear(_))
        ));
    }

    #[test]
    fn multilinearity() {
        assert_eq!(x(0).mul(&x(1)).multilinear_degree().unwrap(), 2);
        assert!(x(0).mul(&x(0)).multilinear_degree().is_err());
        assert!(x(1).multilinear_degree().is_err());
        assert!(x(0).add(&x(0).mul(&x(1))).multilinear_degree().is_err());
    }

    #[test]
    fn display_form() {
        let names = vec!["eps".to_string()];
        let p = xw(0, &[0])
            .mul(&x(1))
            .sub(&x(1).mul(&x(0)).scale(&crate::linalg::frac(1, 2)));
        assert_eq!(p.display(Some(&names)), "x1^[eps] x2 - 1/2 x2 x1");
    }
}

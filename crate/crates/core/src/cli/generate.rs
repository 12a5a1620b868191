use sha2::{Digest, Sha256};

use super::file::AlgebraFile;
use crate::algebra::{direct_sum, direct_sum_derivation, full_matrix, truncated_grassmann, ut, Derivation};
use crate::error::{Error, Result};
use crate::linalg::{parse_scalar, Matrix, Scalar};

pub const GENERATORS: &[&str] = &["ut2", "ut2-eps", "ut2-eta", "utn", "matn", "grassmann-k", "dsum"];

fn named(ders: &[Derivation], name: &str) -> Matrix {
    ders.iter()
        .find(|d| d.name == name)
        .map(|d| d.matrix.clone())
        .expect("matrix-unit algebras ship every inner derivation")
}

fn count(name: &str, params: &[String]) -> Result<usize> {
    match params {
        [p] => p
            .parse()
            .map_err(|_| Error::BadParams(format!("{name}: `{p}` is not a size"))),
        _ => Err(Error::BadParams(format!("{name} takes one size parameter"))),
    }
}

fn rational(name: &str, p: &str) -> Result<Scalar> {
    parse_scalar(p).ok_or_else(|| Error::BadParams(format!("{name}: `{p}` is not a rational number")))
}

/// Builds a shipped algebra. `ut2` carries `eps = ad_e22` and
/// `delta = ad_e12`; `ut2-eps` only `eps`; `ut2-eta a b` the single derivation
/// `eta = a·ad_e22 + b·ad_e12`; `utn` and `matn` every `ad_eij`; `dsum` joins
/// two generator calls separated by `+`, prefixing derivations `l.`/`r.`.
pub fn generate(name: &str, params: &[String]) -> Result<AlgebraFile> {
    let label = std::iter::once(name.to_string())
        .chain(params.iter().cloned())
        .collect::<Vec<_>>()
        .join(" ");
    let no_params = || {
        if params.is_empty() {
            Ok(())
        } else {
            Err(Error::BadParams(format!("{name} takes no parameters")))
        }
    };
    let (alg, ders) = match name {
        "ut2" => {
            no_params()?;
            let (a, d) = ut(2)?;
            let ders = vec![
                Derivation::new("eps", named(&d, "ad_e22")),
                Derivation::new("delta", named(&d, "ad_e12")),
            ];
            (a, ders)
        }
        "ut2-eps" => {
            no_params()?;
            let (a, d) = ut(2)?;
            (a, vec![Derivation::new("eps", named(&d, "ad_e22"))])
        }
        "ut2-eta" => {
            let [alpha, beta] = params else {
                return Err(Error::BadParams("ut2-eta takes two rationals alpha beta".into()));
            };
            let (alpha, beta) = (rational(name, alpha)?, rational(name, beta)?);
            let (a, d) = ut(2)?;
            let eta = named(&d, "ad_e22").scale(&alpha).add(&named(&d, "ad_e12").scale(&beta));
            (a, vec![Derivation::new("eta", eta)])
        }
        "utn" => ut(count(name, params)?)?,
        "matn" => full_matrix(count(name, params)?)?,
        "grassmann-k" => truncated_grassmann(count(name, params)?)?,
        "dsum" => {
            let split = params
                .iter()
                .position(|p| p == "+")
                .ok_or_else(|| Error::BadParams("dsum expects `A [params] + B [params]`".into()))?;
            let (left, right) = (&params[..split], &params[split + 1..]);
            let (Some((ln, lp)), Some((rn, rp))) = (left.split_first(), right.split_first()) else {
                return Err(Error::BadParams("dsum expects `A [params] + B [params]`".into()));
            };
            let a = generate(ln, lp)?;
            let b = generate(rn, rp)?;
            let sum = direct_sum(&a.algebra, &b.algebra)?;
            let (n, m) = (a.algebra.dim(), b.algebra.dim());
            let mut ders: Vec<Derivation> = a
                .derivations
                .iter()
                .map(|d| direct_sum_derivation(format!("l.{}", d.name), &d.matrix, &Matrix::zero(m, m)))
                .collect();
            ders.extend(
                b.derivations
                    .iter()
                    .map(|d| direct_sum_derivation(format!("r.{}", d.name), &Matrix::zero(n, n), &d.matrix)),
            );
            (sum, ders)
        }
        other => {
            return Err(Error::BadParams(format!(
                "unknown generator `{other}` (known: {})",
                GENERATORS.join(", ")
            )))
        }
    };
    Ok(AlgebraFile::new(label, alg, ders))
}

pub fn checksum(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// The generator call a file claims to come from, if regenerating it yields
/// byte-identical text.
pub fn recognize(file: &AlgebraFile) -> Option<(String, Vec<String>)> {
    let mut words = file.name.split_whitespace().map(str::to_string);
    let name = words.next()?;
    let params: Vec<String> = words.collect();
    let shipped = generate(&name, &params).ok()?;
    (checksum(&shipped.serialize()) == checksum(&file.serialize())).then_some((name, params))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(name: &str, params: &[&str]) -> AlgebraFile {
        generate(name, &params.iter().map(|s| s.to_string()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn shipped_algebras() {
        let e = gen("ut2-eps", &[]);
        assert_eq!(e.algebra.dim(), 3);
        assert_eq!(e.derivations.len(), 1);
        assert_eq!(e.derivations[0].name, "eps");
        assert_eq!(gen("grassmann-k", &["2"]).algebra.dim(), 4);
        let eta = gen("ut2-eta", &["0", "1"]);
        assert_eq!(eta.derivations[0].matrix, named(&ut(2).unwrap().1, "ad_e12"));
        let s = gen("dsum", &["ut2", "+", "matn", "2"]);
        assert_eq!(s.algebra.dim(), 7);
        assert_eq!(s.derivations.len(), 6);
        assert!(generate("nope", &[]).is_err());
    }

    #[test]
    fn round_trip_is_byte_identical() {
        for (name, params) in [
            ("ut2", vec![]),
            ("ut2-eta", vec!["1/2", "-3"]),
            ("utn", vec!["3"]),
            ("dsum", vec!["ut2-eps", "+", "grassmann-k", "2"]),
        ] {
            let text = gen(name, &params).serialize();
            let back = AlgebraFile::parse(&text).unwrap();
            assert_eq!(back.serialize(), text);
            assert!(recognize(&back).is_some());
        }
    }

    #[test]
    fn edited_files_are_not_recognized() {
        let text = gen("ut2", &[]).serialize().replace("derivation delta", "derivation d");
        assert!(recognize(&AlgebraFile::parse(&text).unwrap()).is_none());
    }
}

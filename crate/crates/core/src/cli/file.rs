//! Line-oriented algebra files.
//!
//! ```text
//! name ut2-eps
//! dim 3
//! unit 1 0 1
//! product 1 1 1 1
//! product 1 2 2 1
//! derivation eps
//! 0 0 0
//! 0 0 1
//! 0 0 0
//! ```
//!
//! Indices are 1-based; omitted products are zero. A derivation header is
//! followed by `dim` matrix rows in the row convention (row `i` holds the
//! coordinates of `e_i^d`). Blank lines and `#` comments are ignored.

use std::fmt::Write as _;

use num_traits::Zero;

use crate::algebra::{leibniz_failure, Derivation, StructureAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{parse_scalar, Matrix, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraFile {
    pub name: String,
    pub algebra: StructureAlgebra,
    pub derivations: Vec<Derivation>,
}

fn line_err(line: usize, message: impl Into<String>) -> Error {
    Error::parse(format!("line {line}"), message)
}

fn scalar_at(line: usize, token: &str) -> Result<Scalar> {
    parse_scalar(token).ok_or_else(|| line_err(line, format!("`{token}` is not a rational number")))
}

fn index_at(line: usize, token: &str, dim: usize) -> Result<usize> {
    match token.parse::<usize>() {
        Ok(i) if (1..=dim).contains(&i) => Ok(i - 1),
        _ => Err(line_err(line, format!("index `{token}` must lie in 1..{dim}"))),
    }
}

impl AlgebraFile {
    pub fn new(name: impl Into<String>, mut algebra: StructureAlgebra, derivations: Vec<Derivation>) -> Self {
        let name = name.into();
        algebra.set_label(name.clone());
        AlgebraFile {
            name,
            algebra,
            derivations,
        }
    }

    pub fn parse(text: &str) -> Result<AlgebraFile> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .peekable();
        let mut name = None;
        let mut dim = None;
        let mut unit = None;
        let mut table = Vec::new();
        let mut derivations: Vec<(usize, Derivation)> = Vec::new();
        while let Some((ln, line)) = lines.next() {
            let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            let tokens: Vec<&str> = rest.split_whitespace().collect();
            let need_dim = || dim.ok_or_else(|| line_err(ln, "`dim` must come before this line"));
            match key {
                "name" => {
                    if rest.is_empty() {
                        return Err(line_err(ln, "empty name"));
                    }
                    name = Some(rest.to_string());
                }
                "dim" => {
                    if dim.is_some() {
                        return Err(line_err(ln, "duplicate `dim`"));
                    }
                    match tokens.as_slice() {
                        [d] => {
                            dim = Some(
                                d.parse::<usize>()
                                    .map_err(|_| line_err(ln, format!("`{d}` is not a dimension")))?,
                            )
                        }
                        _ => return Err(line_err(ln, "`dim` takes one value")),
                    }
                }
                "unit" => {
                    let d = need_dim()?;
                    if tokens.len() != d {
                        return Err(line_err(
                            ln,
                            format!("unit needs {d} coordinates, got {}", tokens.len()),
                        ));
                    }
                    unit = Some(tokens.iter().map(|t| scalar_at(ln, t)).collect::<Result<Vec<_>>>()?);
                }
                "product" => {
                    let d = need_dim()?;
                    if tokens.len() != 4 {
                        return Err(line_err(ln, "`product` takes i j k value"));
                    }
                    table.push((
                        index_at(ln, tokens[0], d)?,
                        index_at(ln, tokens[1], d)?,
                        index_at(ln, tokens[2], d)?,
                        scalar_at(ln, tokens[3])?,
                    ));
                }
                "derivation" => {
                    let d = need_dim()?;
                    if tokens.len() != 1 {
                        return Err(line_err(ln, "derivation names are single tokens"));
                    }
                    if derivations.iter().any(|(_, x)| x.name == tokens[0]) {
                        return Err(line_err(ln, format!("duplicate derivation `{}`", tokens[0])));
                    }
                    let mut rows = Vec::with_capacity(d);
                    for r in 0..d {
                        let (rl, row) = lines.next().ok_or_else(|| {
                            line_err(ln, format!("derivation `{}` is missing row {}", tokens[0], r + 1))
                        })?;
                        let entries: Vec<&str> = row.split_whitespace().collect();
                        if entries.len() != d {
                            return Err(line_err(
                                rl,
                                format!("matrix row needs {d} entries, got {}", entries.len()),
                            ));
                        }
                        rows.push(entries.iter().map(|t| scalar_at(rl, t)).collect::<Result<Vec<_>>>()?);
                    }
                    derivations.push((ln, Derivation::new(tokens[0], Matrix::from_rows(rows))));
                }
                other => return Err(line_err(ln, format!("unknown keyword `{other}`"))),
            }
        }
        let name = name.ok_or_else(|| Error::parse("header", "missing `name`"))?;
        let dim = dim.ok_or_else(|| Error::parse("header", "missing `dim`"))?;
        let algebra = StructureAlgebra::from_table(name.clone(), dim, &table, unit)?;
        for (ln, d) in &derivations {
            if let Some((i, j)) = leibniz_failure(&algebra, &d.matrix) {
                return Err(Error::parse(
                    format!("line {ln}"),
                    Error::NotADerivation {
                        name: d.name.clone(),
                        i: i + 1,
                        j: j + 1,
                    }
                    .to_string(),
                ));
            }
        }
        Ok(AlgebraFile {
            name,
            algebra,
            derivations: derivations.into_iter().map(|(_, d)| d).collect(),
        })
    }

    /// Canonical text: products in `(i, j, k)` order, zero entries omitted.
    pub fn serialize(&self) -> String {
        let a = &self.algebra;
        let n = a.dim();
        let mut out = String::new();
        let _ = writeln!(out, "name {}", self.name);
        let _ = writeln!(out, "dim {n}");
        if let Some(u) = a.unit() {
            let _ = writeln!(out, "unit {}", join(u));
        }
        for i in 0..n {
            for j in 0..n {
                for (k, c) in a.basis_product(i, j) {
                    if !c.is_zero() {
                        let _ = writeln!(out, "product {} {} {} {c}", i + 1, j + 1, k + 1);
                    }
                }
            }
        }
        for d in &self.derivations {
            let _ = writeln!(out, "derivation {}", d.name);
            for r in 0..n {
                let _ = writeln!(out, "{}", join(d.matrix.row(r)));
            }
        }
        out
    }

    pub fn derivation(&self, name: &str) -> Result<&Derivation> {
        self.derivations.iter().find(|d| d.name == name).ok_or_else(|| {
            let known: Vec<&str> = self.derivations.iter().map(|d| d.name.as_str()).collect();
            Error::BadParams(format!("no derivation named `{name}` (file has: {})", known.join(", ")))
        })
    }
}

fn join(v: &[Scalar]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    const UT2_EPS: &str = "name ut2-eps\ndim 3\nunit 1 0 1\nproduct 1 1 1 1\nproduct 1 2 2 1\nproduct 2 3 2 1\nproduct 3 3 3 1\nderivation eps\n0 0 0\n0 1 0\n0 0 0\n";

    #[test]
    fn round_trip() {
        let f = AlgebraFile::parse(UT2_EPS).unwrap();
        assert_eq!(f.algebra.dim(), 3);
        assert_eq!(f.serialize(), UT2_EPS);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = format!("# header\n\n{}", UT2_EPS.replace("dim 3", "dim 3   # three"));
        assert_eq!(AlgebraFile::parse(&text).unwrap().serialize(), UT2_EPS);
    }

    fn location(text: &str) -> String {
        match AlgebraFile::parse(text).unwrap_err() {
            Error::Parse { location, .. } => location,
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn errors_name_their_location() {
        assert_eq!(
            location(&UT2_EPS.replace("product 1 2 2 1", "product 1 2 9 1")),
            "line 5"
        );
        assert_eq!(location(&UT2_EPS.replace("0 1 0", "0 one 0")), "line 10");
        assert_eq!(location(&UT2_EPS.replace("0 1 0", "0 1")), "line 10");
        assert_eq!(location(&UT2_EPS.replace("0 1 0", "0 0 1")), "line 8");
        assert_eq!(location("dim 2\n"), "header");
        assert_eq!(location("name x\nproduct 1 1 1 1\n"), "line 2");
    }

    #[test]
    fn non_associative_table_is_rejected() {
        let text = "name bad\ndim 2\nproduct 1 1 2 1\nproduct 2 1 1 1\n";
        assert!(matches!(AlgebraFile::parse(text), Err(Error::NotAssociative { .. })));
    }
}

use num_traits::{One, Zero};

use super::derivation::{inner_derivation, Derivation};
use super::structure_algebra::StructureAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{int, Matrix, Scalar};

/// Upper-triangular `n x n` matrices on the matrix units `e_ij` (`i <= j`,
/// lexicographic), with every inner derivation `ad_eij` available by name.
pub fn ut(n: usize) -> Result<(StructureAlgebra, Vec<Derivation>)> {
    if n == 0 {
        return Err(Error::BadParams("ut(n) needs n >= 1".into()));
    }
    let units: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    matrix_units_algebra(format!("ut{n}"), n, units)
}

/// Full matrix algebra `M_n` on the matrix units in lexicographic order.
pub fn full_matrix(n: usize) -> Result<(StructureAlgebra, Vec<Derivation>)> {
    if n == 0 {
        return Err(Error::BadParams("full_matrix(n) needs n >= 1".into()));
    }
    let units: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    matrix_units_algebra(format!("mat{n}"), n, units)
}

fn matrix_units_algebra(
    label: String,
    n: usize,
    units: Vec<(usize, usize)>,
) -> Result<(StructureAlgebra, Vec<Derivation>)> {
    let index = |i: usize, j: usize| units.iter().position(|&u| u == (i, j));
    let mut table = Vec::new();
    for (a, &(i, j)) in units.iter().enumerate() {
        for (b, &(k, l)) in units.iter().enumerate() {
            if j == k {
                let c = index(i, l).expect("closed under products");
                table.push((a, b, c, Scalar::one()));
            }
        }
    }
    let mut unit = vec![Scalar::zero(); units.len()];
    for i in 0..n {
        unit[index(i, i).expect("diagonal unit present")] = Scalar::one();
    }
    let alg = StructureAlgebra::from_table(label, units.len(), &table, Some(unit))?;
    let ders = units
        .iter()
        .enumerate()
        .map(|(a, &(i, j))| {
            Derivation::new(
                format!("ad_e{}{}", i + 1, j + 1),
                inner_derivation(&alg, &alg.basis_vector(a)),
            )
        })
        .collect();
    Ok((alg, ders))
}

/// Exterior algebra on `k` anticommuting generators, basis all ordered
/// products `g_S` (subsets by size, then lexicographic), unit `g_∅`.
pub fn truncated_grassmann(k: usize) -> Result<(StructureAlgebra, Vec<Derivation>)> {
    if k > 6 {
        return Err(Error::BadParams("truncated_grassmann supports k <= 6".into()));
    }
    let mut subsets: Vec<u32> = (0..(1u32 << k)).collect();
    subsets.sort_by_key(|s| (s.count_ones(), (0..k).map(|i| (s >> i) & 1 == 0).collect::<Vec<_>>()));
    let pos = |s: u32| subsets.iter().position(|&t| t == s).expect("subset present");
    let mut table = Vec::new();
    for (a, &s) in subsets.iter().enumerate() {
        for (b, &t) in subsets.iter().enumerate() {
            if s & t != 0 {
                continue;
            }
            // sign of the shuffle bringing g_S g_T to increasing order
            let mut inversions = 0;
            for i in 0..k {
                if s >> i & 1 == 1 {
                    inversions += (0..i).filter(|&j| t >> j & 1 == 1).count();
                }
            }
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            table.push((a, b, pos(s | t), int(sign)));
        }
    }
    let mut unit = vec![Scalar::zero(); subsets.len()];
    unit[0] = Scalar::one();
    let alg = StructureAlgebra::from_table(format!("grassmann{k}"), subsets.len(), &table, Some(unit))?;
    Ok((alg, Vec::new()))
}

/// `A ⊕ B` with componentwise product; the unit exists when both units do.
pub fn direct_sum(a: &StructureAlgebra, b: &StructureAlgebra) -> Result<StructureAlgebra> {
    let (n, m) = (a.dim(), b.dim());
    let mut table = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for (k, c) in a.basis_product(i, j) {
                table.push((i, j, *k, c.clone()));
            }
        }
    }
    for i in 0..m {
        for j in 0..m {
            for (k, c) in b.basis_product(i, j) {
                table.push((n + i, n + j, n + k, c.clone()));
            }
        }
    }
    let unit = match (a.unit(), b.unit()) {
        (Some(u), Some(v)) => Some(u.iter().chain(v).cloned().collect()),
        _ => None,
    };
    StructureAlgebra::from_table(format!("{}+{}", a.label(), b.label()), n + m, &table, unit)
}

/// Block-diagonal derivation of `A ⊕ B`.
pub fn direct_sum_derivation(name: impl Into<String>, left: &Matrix, right: &Matrix) -> Derivation {
    let (n, m) = (left.rows(), right.rows());
    let mut d = Matrix::zero(n + m, n + m);
    for i in 0..n {
        for j in 0..n {
            d[(i, j)] = left[(i, j)].clone();
        }
    }
    for i in 0..m {
        for j in 0..m {
            d[(n + i, n + j)] = right[(i, j)].clone();
        }
    }
    Derivation::new(name, d)
}

/// Dispatches the named constructions `ut`, `full_matrix`, `truncated_grassmann`
/// (one integer parameter each) and `direct_sum` (two nested names, e.g.
/// `["ut", "2", "full_matrix", "2"]`). Derivations of a direct sum are the
/// summands' derivations extended by zero, prefixed `l.`/`r.`.
pub fn builtin(name: &str, params: &[&str]) -> Result<(StructureAlgebra, Vec<Derivation>)> {
    let one_param = |params: &[&str]| -> Result<usize> {
        match params {
            [p] => p.parse().map_err(|_| Error::BadParams(format!("`{p}` is not a count"))),
            _ => Err(Error::BadParams(format!("`{name}` takes exactly one parameter"))),
        }
    };
    match name {
        "ut" => ut(one_param(params)?),
        "full_matrix" => full_matrix(one_param(params)?),
        "truncated_grassmann" => truncated_grassmann(one_param(params)?),
        "direct_sum" => {
            if params.len() != 4 {
                return Err(Error::BadParams("direct_sum takes two (name, parameter) pairs".into()));
            }
            let (a, da) = builtin(params[0], &params[1..2])?;
            let (b, db) = builtin(params[2], &params[3..4])?;
            let sum = direct_sum(&a, &b)?;
            let zero_a = Matrix::zero(a.dim(), a.dim());
            let zero_b = Matrix::zero(b.dim(), b.dim());
            let mut ders: Vec<Derivation> = da
                .iter()
                .map(|d| direct_sum_derivation(format!("l.{}", d.name), &d.matrix, &zero_b))
                .collect();
            ders.extend(
                db.iter()
                    .map(|d| direct_sum_derivation(format!("r.{}", d.name), &zero_a, &d.matrix)),
            );
            Ok((sum, ders))
        }
        other => Err(Error::BadParams(format!("unknown construction `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::derivation::check_derivation;

    #[test]
    fn dimensions() {
        assert_eq!(ut(2).unwrap().0.dim(), 3);
        assert_eq!(ut(3).unwrap().0.dim(), 6);
        assert_eq!(full_matrix(2).unwrap().0.dim(), 4);
        assert_eq!(truncated_grassmann(2).unwrap().0.dim(), 4);
        assert_eq!(truncated_grassmann(3).unwrap().0.dim(), 8);
        let (s, ders) = builtin("direct_sum", &["ut", "2", "full_matrix", "2"]).unwrap();
        assert_eq!(s.dim(), 7);
        assert_eq!(ders.len(), 7);
        for d in &ders {
            assert!(check_derivation(&s, &d.matrix), "{}", d.name);
        }
    }

    #[test]
    fn grassmann_anticommutes() {
        let (g, _) = truncated_grassmann(2).unwrap();
        let g1 = g.basis_vector(1);
        let g2 = g.basis_vector(2);
        let a = g.mul(&g1, &g2);
        let b = g.mul(&g2, &g1);
        assert_eq!(a, g.basis_vector(3));
        assert_eq!(b, a.iter().map(|x| -x).collect::<Vec<_>>());
        assert!(g.mul(&g1, &g1).iter().all(Zero::is_zero));
    }

    #[test]
    fn bad_params() {
        assert!(matches!(builtin("nope", &["2"]), Err(Error::BadParams(_))));
        assert!(matches!(builtin("ut", &["x"]), Err(Error::BadParams(_))));
        assert!(matches!(builtin("ut", &["0"]), Err(Error::BadParams(_))));
    }

    #[test]
    fn named_inner_derivations() {
        let (_, ders) = ut(2).unwrap();
        let names: Vec<_> = ders.iter().map(|d| d.name.as_str()).collect();
        assert_eq!(names, ["ad_e11", "ad_e12", "ad_e22"]);
    }
}

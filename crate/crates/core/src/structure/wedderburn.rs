use num_traits::Zero;

use super::radical::{radical, Quotient};
use super::semisimple::{simple_blocks, SimpleBlock};
use crate::algebra::{LieAction, StructureAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{solve, CoordBasis, Matrix, Scalar, Subspace};

const MAX_NEWTON_STEPS: usize = 64;

/// `A = B_1 ⊕ ... ⊕ B_k ⊕ J` with `B_i` simple subalgebras carrying units `e_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedderburnData {
    pub radical: Subspace,
    pub blocks: Vec<Subspace>,
    pub block_units: Vec<Vec<Scalar>>,
    pub semisimple_part: Subspace,
    pub quotient_dims: Vec<usize>,
}

pub fn wedderburn_malcev(alg: &StructureAlgebra) -> Result<WedderburnData> {
    let j = radical(alg)?;
    let quotient = Quotient::new(alg, &j)?;
    let blocks = simple_blocks(&quotient.algebra)?;
    let order: Vec<usize> = (0..blocks.len()).collect();
    decompose(alg, &j, &quotient, &blocks, &order)
}

/// Same decomposition with the quotient blocks lifted in a caller-chosen
/// order (`order` is a permutation of the default block indices). The output
/// lists blocks in lifting order.
pub fn wedderburn_malcev_with_order(alg: &StructureAlgebra, order: &[usize]) -> Result<WedderburnData> {
    let j = radical(alg)?;
    let quotient = Quotient::new(alg, &j)?;
    let blocks = simple_blocks(&quotient.algebra)?;
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..blocks.len()).collect::<Vec<_>>() {
        return Err(Error::BadParams(format!(
            "lifting order must permute 0..{}",
            blocks.len()
        )));
    }
    decompose(alg, &j, &quotient, &blocks, order)
}

fn decompose(
    alg: &StructureAlgebra,
    j: &Subspace,
    quotient: &Quotient,
    blocks: &[SimpleBlock],
    order: &[usize],
) -> Result<WedderburnData> {
    let n = alg.dim();
    let mut powers = vec![j.clone()];
    while !powers.last().expect("nonempty").is_zero() {
        let next = alg.product(powers.last().expect("nonempty"), j)?;
        powers.push(next);
    }
    let mut accepted = alg.zero_element();
    let mut units = Vec::with_capacity(order.len());
    let mut lifted_blocks = Vec::with_capacity(order.len());
    for &b in order {
        let block = &blocks[b];
        let e = lift_idempotent(alg, &quotient.lift(&block.unit), &accepted)?;
        let space = lift_block(alg, quotient, block, &e, &powers)?;
        accepted = add(&accepted, &e);
        units.push(e);
        lifted_blocks.push(space);
    }
    let semisimple_part = lifted_blocks.iter().try_fold(Subspace::zero(n), |acc, b| acc.sum(b))?;
    let data = WedderburnData {
        radical: j.clone(),
        quotient_dims: order.iter().map(|&b| blocks[b].space.dim()).collect(),
        blocks: lifted_blocks,
        block_units: units,
        semisimple_part,
    };
    if let Some(failure) = decomposition_failures(alg, &data)?.into_iter().next() {
        return Err(Error::InternalVerificationFailed(failure));
    }
    Ok(data)
}

fn add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Lifts `a` (idempotent modulo the radical, orthogonal to `f` modulo the
/// radical) to an idempotent orthogonal to `f`: first `a <- (1-f) a (1-f)`,
/// then `e <- 3e^2 - 2e^3` until `e^2 = e`.
pub(crate) fn lift_idempotent(alg: &StructureAlgebra, a: &[Scalar], f: &[Scalar]) -> Result<Vec<Scalar>> {
    let fa = alg.mul(f, a);
    let af = alg.mul(a, f);
    let faf = alg.mul(&fa, f);
    let mut e = add(&sub(&sub(a, &fa), &af), &faf);
    for _ in 0..MAX_NEWTON_STEPS {
        let e2 = alg.mul(&e, &e);
        if e2 == e {
            return Ok(e);
        }
        let e3 = alg.mul(&e2, &e);
        e = e2
            .iter()
            .zip(&e3)
            .map(|(x, y)| Scalar::from_integer(3.into()) * x - Scalar::from_integer(2.into()) * y)
            .collect();
    }
    Err(Error::InternalVerificationFailed(
        "idempotent lifting did not converge".into(),
    ))
}

/// Rebuilds a quotient block inside `e A e`: start from the section
/// `b -> e lift(b) e` and correct it level by level through the radical
/// filtration until it is multiplicative.
fn lift_block(
    alg: &StructureAlgebra,
    quotient: &Quotient,
    block: &SimpleBlock,
    e: &[Scalar],
    powers: &[Subspace],
) -> Result<Subspace> {
    let n = alg.dim();
    let bar = block.space.basis();
    let d = bar.len();
    if d == 1 {
        return Subspace::span(n, [e.to_vec()]);
    }
    let mut coords = CoordBasis::new(bar[0].len());
    for b in bar {
        coords.push(b);
    }
    // gamma[p][q] = coordinates of b_p b_q in the block basis
    let qa = &quotient.algebra;
    let gamma: Vec<Vec<Vec<Scalar>>> = (0..d)
        .map(|p| {
            (0..d)
                .map(|q| coords.coords(&qa.mul(&bar[p], &bar[q])).expect("block is a subalgebra"))
                .collect()
        })
        .collect();
    let sandwich = |x: &[Scalar]| alg.mul(&alg.mul(e, x), e);
    let mut section: Vec<Vec<Scalar>> = bar.iter().map(|b| sandwich(&quotient.lift(b))).collect();
    let defect = |s: &[Vec<Scalar>], p: usize, q: usize| {
        let mut v = alg.mul(&s[p], &s[q]);
        for (r, g) in gamma[p][q].iter().enumerate() {
            if !g.is_zero() {
                for (x, y) in v.iter_mut().zip(&s[r]) {
                    *x -= g * y;
                }
            }
        }
        v
    };
    for _ in 0..powers.len() {
        let defects: Vec<Vec<Scalar>> = (0..d)
            .flat_map(|p| (0..d).map(move |q| (p, q)))
            .map(|(p, q)| defect(&section, p, q))
            .collect();
        if defects.iter().all(|v| v.iter().all(Zero::is_zero)) {
            return Subspace::span(n, section);
        }
        let mut level = 0;
        while level + 1 < powers.len() && defects.iter().all(|v| powers[level + 1].member(v).unwrap_or(false)) {
            level += 1;
        }
        // defects lie in J^(level+1); correct modulo J^(level+2)
        let target = &powers[level];
        let modulus = &powers[(level + 1).min(powers.len() - 1)];
        let wspan = Subspace::span(n, target.basis().iter().map(|x| sandwich(x)))?;
        let w = wspan.basis().to_vec();
        if w.is_empty() {
            return Err(Error::InternalVerificationFailed("block correction has no room".into()));
        }
        let cols = d * w.len();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        let mut rhs = Vec::new();
        for p in 0..d {
            for q in 0..d {
                let mut contributions = Vec::with_capacity(cols);
                for pp in 0..d {
                    for wt in &w {
                        let mut v = vec![Scalar::zero(); n];
                        if q == pp {
                            v = add(&v, &alg.mul(&section[p], wt));
                        }
                        if p == pp {
                            v = add(&v, &alg.mul(wt, &section[q]));
                        }
                        let g = &gamma[p][q][pp];
                        if !g.is_zero() {
                            v = sub(&v, &wt.iter().map(|x| g * x).collect::<Vec<_>>());
                        }
                        contributions.push(modulus.residual(&v)?);
                    }
                }
                let target_rhs = modulus.residual(&defects[p * d + q])?;
                for k in 0..n {
                    rows.push(contributions.iter().map(|c| c[k].clone()).collect());
                    rhs.push(-target_rhs[k].clone());
                }
            }
        }
        let c = solve(&Matrix::from_rows(rows), &rhs)
            .ok_or_else(|| Error::InternalVerificationFailed("block correction system is inconsistent".into()))?;
        for p in 0..d {
            for (t, wt) in w.iter().enumerate() {
                let coef = &c[p * w.len() + t];
                if !coef.is_zero() {
                    for (x, y) in section[p].iter_mut().zip(wt) {
                        *x += coef * y;
                    }
                }
            }
        }
    }
    Err(Error::InternalVerificationFailed(
        "block correction did not terminate".into(),
    ))
}

/// Human-readable list of violated decomposition invariants (empty when the
/// decomposition is valid).
pub fn decomposition_failures(alg: &StructureAlgebra, wd: &WedderburnData) -> Result<Vec<String>> {
    let n = alg.dim();
    let mut failures = Vec::new();
    let j = &wd.radical;
    if !alg.is_two_sided_ideal(j)? {
        failures.push("radical is not a two-sided ideal".into());
    }
    match alg.nilpotency_index(j)? {
        Some(q) if q <= n + 1 => {}
        _ => failures.push("radical is not nilpotent".into()),
    }
    if !wd.semisimple_part.intersect(j)?.is_zero() {
        failures.push("semisimple part meets the radical".into());
    }
    if wd.semisimple_part.dim() + j.dim() != n {
        failures.push("semisimple part and radical do not span A".into());
    }
    let block_total: usize = wd.blocks.iter().map(Subspace::dim).sum();
    if block_total != wd.semisimple_part.dim() {
        failures.push("blocks are not independent".into());
    }
    for (i, (b, e)) in wd.blocks.iter().zip(&wd.block_units).enumerate() {
        if !alg.is_subalgebra(b)? {
            failures.push(format!("block {} is not a subalgebra", i + 1));
        }
        if b.dim() != wd.quotient_dims[i] {
            failures.push(format!("block {} has the wrong dimension", i + 1));
        }
        if !b.member(e)? || alg.mul(e, e) != *e {
            failures.push(format!("unit of block {} is not an idempotent in the block", i + 1));
        }
        for x in b.basis() {
            if alg.mul(e, x) != *x || alg.mul(x, e) != *x {
                failures.push(format!("e_{} is not the unit of block {}", i + 1, i + 1));
                break;
            }
        }
        for (k, (c, f)) in wd.blocks.iter().zip(&wd.block_units).enumerate() {
            if k == i {
                continue;
            }
            if alg.mul(e, f).iter().any(|x| !x.is_zero()) {
                failures.push(format!("e_{} e_{} is not zero", i + 1, k + 1));
            }
            if !alg.product(b, c)?.is_zero() {
                failures.push(format!("B_{} B_{} is not zero", i + 1, k + 1));
            }
        }
    }
    Ok(failures)
}

/// Per-block outcome of the action check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockActionCheck {
    pub block: usize,
    pub dim: usize,
    /// The non-unital envelope maps the block into `B_i + J`.
    pub into_block_plus_radical: bool,
    /// For one-dimensional blocks: the envelope maps the block into `J`.
    pub into_radical: Option<bool>,
}

pub fn check_block_action(wd: &WedderburnData, act: &LieAction) -> Result<Vec<BlockActionCheck>> {
    let env = act.envelope();
    wd.blocks
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let image = env.act_on(b, false)?;
            let plus = b.sum(&wd.radical)?;
            Ok(BlockActionCheck {
                block: i,
                dim: b.dim(),
                into_block_plus_radical: plus.contains(&image)?,
                into_radical: (b.dim() == 1).then(|| wd.radical.contains(&image)).transpose()?,
            })
        })
        .collect()
}

/// Whether every element of the Lie closure maps the radical into itself.
pub fn radical_is_invariant(radical: &Subspace, act: &LieAction) -> Result<bool> {
    for d in act.closure_basis() {
        for v in radical.basis() {
            if !radical.member(&d.apply_row(v))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{full_matrix, lie_closure, truncated_grassmann, ut};
    use crate::linalg::int;

    #[test]
    fn ut2_decomposition() {
        let (a, _) = ut(2).unwrap();
        let wd = wedderburn_malcev(&a).unwrap();
        assert_eq!(wd.radical, Subspace::span(3, [a.basis_vector(1)]).unwrap());
        assert_eq!(wd.blocks.len(), 2);
        assert_eq!(wd.block_units, vec![a.basis_vector(0), a.basis_vector(2)]);
        assert_eq!(wd.blocks[0], Subspace::span(3, [a.basis_vector(0)]).unwrap());
        assert_eq!(wd.quotient_dims, vec![1, 1]);
    }

    #[test]
    fn grassmann_unit_lifts() {
        let (g, _) = truncated_grassmann(2).unwrap();
        let wd = wedderburn_malcev(&g).unwrap();
        assert_eq!(wd.radical.dim(), 3);
        assert_eq!(wd.blocks, vec![Subspace::span(4, [g.basis_vector(0)]).unwrap()]);
    }

    #[test]
    fn non_split_basis_lifts_to_a_minus_j() {
        // basis (a, j): a^2 = a + j, aj = ja = j, j^2 = 0
        let alg = StructureAlgebra::from_table(
            "aj",
            2,
            &[
                (0, 0, 0, int(1)),
                (0, 0, 1, int(1)),
                (0, 1, 1, int(1)),
                (1, 0, 1, int(1)),
            ],
            None,
        )
        .unwrap();
        let wd = wedderburn_malcev(&alg).unwrap();
        let e = &wd.block_units[0];
        assert_eq!(e, &vec![int(1), int(-1)]);
        assert_eq!(&alg.mul(e, e), e);
    }

    #[test]
    fn matrix_blocks_with_radical() {
        // M2 + UT2 and UT3 exercise multi-dimensional blocks and longer filtrations
        let (m, _) = full_matrix(2).unwrap();
        let (u, _) = ut(2).unwrap();
        let s = crate::algebra::direct_sum(&m, &u).unwrap();
        let wd = wedderburn_malcev(&s).unwrap();
        assert_eq!(wd.quotient_dims.iter().sum::<usize>() + wd.radical.dim(), 7);
        let (u3, _) = ut(3).unwrap();
        let wd = wedderburn_malcev(&u3).unwrap();
        assert_eq!(wd.blocks.len(), 3);
        assert_eq!(wd.radical.dim(), 3);
    }

    /// `M2` embedded in a 2x2 block of `UT` style algebra with a twisted basis:
    /// the naive section is not multiplicative and must be corrected.
    #[test]
    fn twisted_matrix_block_is_corrected() {
        let (m, _) = full_matrix(2).unwrap();
        let (g, _) = truncated_grassmann(1).unwrap();
        // M2 tensor F[x]/(x^2), basis e_ij, e_ij x
        let n = 8;
        let mut table = Vec::new();
        for a in 0..4 {
            for b in 0..4 {
                for (k, c) in m.basis_product(a, b) {
                    for s in 0..2 {
                        for t in 0..2 {
                            for (r, d) in g.basis_product(s, t) {
                                table.push((a + 4 * s, b + 4 * t, *k + 4 * r, c * d));
                            }
                        }
                    }
                }
            }
        }
        let plain = StructureAlgebra::from_table("m2x", n, &table, None).unwrap();
        // change basis: e12 -> e12 + e11 x, e21 -> e21 + e22 x
        let mut p = Matrix::identity(n);
        p[(1, 4)] = int(1);
        p[(2, 7)] = int(1);
        let twisted = change_basis(&plain, &p);
        let wd = wedderburn_malcev(&twisted).unwrap();
        assert_eq!(wd.blocks.len(), 1);
        assert_eq!(wd.blocks[0].dim(), 4);
        assert_eq!(wd.radical.dim(), 4);
    }

    fn change_basis(alg: &StructureAlgebra, p: &Matrix) -> StructureAlgebra {
        // new basis f_i = sum_k p[i][k] e_k
        let n = alg.dim();
        let pinv = inverse(p);
        let f: Vec<Vec<Scalar>> = (0..n).map(|i| p.row(i).to_vec()).collect();
        let mut constants = vec![Scalar::zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                let prod = pinv.apply_row(&alg.mul(&f[i], &f[j]));
                for k in 0..n {
                    constants[(i * n + j) * n + k] = prod[k].clone();
                }
            }
        }
        StructureAlgebra::new("twisted", n, constants, None).unwrap()
    }

    fn inverse(p: &Matrix) -> Matrix {
        let n = p.rows();
        let cols: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut e = vec![Scalar::zero(); n];
                e[i] = int(1);
                solve(&p.transpose(), &e).unwrap()
            })
            .collect();
        // cols[i] solves p^T x = e_i, i.e. x is row i of p^{-1}
        Matrix::from_rows(cols)
    }

    #[test]
    fn lift_order_changes_nothing_structural() {
        let (u3, _) = ut(3).unwrap();
        let a = wedderburn_malcev_with_order(&u3, &[2, 0, 1]).unwrap();
        assert_eq!(a.blocks.len(), 3);
        assert!(wedderburn_malcev_with_order(&u3, &[0, 0, 1]).is_err());
    }

    #[test]
    fn block_actions() {
        let (a, ders) = ut(2).unwrap();
        let wd = wedderburn_malcev(&a).unwrap();
        let eps = lie_closure(&a, vec![ders[2].clone()]).unwrap();
        let checks = check_block_action(&wd, &eps).unwrap();
        assert!(checks
            .iter()
            .all(|c| c.into_block_plus_radical && c.into_radical == Some(true)));
        let delta = lie_closure(&a, vec![ders[1].clone()]).unwrap();
        let checks = check_block_action(&wd, &delta).unwrap();
        assert!(checks.iter().all(|c| c.into_radical == Some(true)));
        assert!(radical_is_invariant(&wd.radical, &delta).unwrap());
        let trivial = LieAction::trivial(&a);
        assert!(check_block_action(&wd, &trivial)
            .unwrap()
            .iter()
            .all(|c| c.into_radical == Some(true)));
    }
}

use itertools::Itertools;
use num_traits::Zero;
use proptest::prelude::*;

use diffpi::algebra::{
    check_derivation, direct_sum, full_matrix, inner_derivation, lie_closure, subspace_under_action,
    truncated_grassmann, ut, Derivation, LieAction, StructureAlgebra,
};
use diffpi::cli::{generate, AlgebraFile};
use diffpi::config::EngineConfig;
use diffpi::exponent::{exp_differential, exp_differential_with, exp_ordinary, exp_ordinary_with, verify_gk};
use diffpi::linalg::{int, rank, rank_modular, rref, Matrix, Scalar, Subspace};
use diffpi::pi::{codim, derive_polynomial, identity_space, is_identity, polynomial_from_coords, RankMode};
use diffpi::structure::{radical, radical_is_invariant, wedderburn_malcev, wedderburn_malcev_with_order};
use diffpi::Error;

fn pool() -> Vec<StructureAlgebra> {
    let ut2 = ut(2).unwrap().0;
    let f = ut(1).unwrap().0;
    vec![
        ut2.clone(),
        ut(3).unwrap().0,
        full_matrix(2).unwrap().0,
        truncated_grassmann(2).unwrap().0,
        direct_sum(&ut2, &f).unwrap(),
        direct_sum(&f, &f).unwrap(),
    ]
}

/// An algebra from the pool together with up to two inner derivations with
/// small integer coordinates.
fn algebra_with_action() -> impl Strategy<Value = (StructureAlgebra, LieAction)> {
    let algs = pool();
    (
        0..algs.len(),
        prop::collection::vec(prop::collection::vec(-2i64..=2, 9), 0..=2),
    )
        .prop_map(move |(i, coords)| {
            let alg = algs[i].clone();
            let gens = coords
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    let a: Vec<Scalar> = c[..alg.dim()].iter().map(|&v| int(v)).collect();
                    Derivation::new(format!("d{k}"), inner_derivation(&alg, &a))
                })
                .collect();
            let act = lie_closure(&alg, gens).unwrap();
            (alg, act)
        })
}

fn small_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..=6, 1usize..=6)
        .prop_flat_map(|(r, c)| prop::collection::vec(-3i64..=3, r * c).prop_map(move |v| Matrix::from_i64(r, c, &v)))
}

fn subspace(ambient: usize) -> impl Strategy<Value = Subspace> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, ambient), 0..=4).prop_map(move |rows| {
        Subspace::span(
            ambient,
            rows.into_iter().map(|r| r.into_iter().map(int).collect::<Vec<_>>()),
        )
        .unwrap()
    })
}

fn basis_vector(n: usize, i: usize) -> Vec<Scalar> {
    (0..n).map(|j| if i == j { int(1) } else { Scalar::zero() }).collect()
}

/// Skips cases that exceed the configured size budget.
fn within_budget<T>(r: diffpi::Result<T>) -> Result<T, TestCaseError> {
    match r {
        Err(Error::SizeCap { .. }) => Err(TestCaseError::reject("over budget")),
        other => Ok(other.unwrap()),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn modular_rank_agrees_with_exact(m in small_matrix(), seed in any::<u64>()) {
        prop_assert_eq!(rank_modular(&m, 3, seed).unwrap(), rank(&m));
    }

    #[test]
    fn rref_is_idempotent(m in small_matrix()) {
        let once = rref(&m);
        prop_assert_eq!(rref(&once.matrix).matrix, once.matrix);
    }

    #[test]
    fn subspace_dimension_formula(u in subspace(5), w in subspace(5)) {
        let s = u.sum(&w).unwrap();
        let i = u.intersect(&w).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
        prop_assert!(s.contains(&u).unwrap() && u.contains(&i).unwrap() && w.contains(&i).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn closure_consists_of_derivations((alg, act) in algebra_with_action()) {
        for d in act.closure_basis() {
            prop_assert!(check_derivation(&alg, d));
        }
    }

    #[test]
    fn envelope_is_closed_and_words_match((alg, act) in algebra_with_action()) {
        let env = act.envelope();
        let ops = env.op_basis();
        prop_assert!(ops[0] == Matrix::identity(alg.dim()));
        for (u, v) in (0..ops.len()).cartesian_product(0..ops.len()) {
            let coords = &env.mult_table()[u][v];
            let mut sum = Matrix::zero(alg.dim(), alg.dim());
            for (c, op) in coords.iter().zip(ops) {
                sum = sum.add(&op.scale(c));
            }
            prop_assert!(sum == ops[u].mul(&ops[v]));
        }
        for (op, word) in ops.iter().zip(env.word_reps()) {
            for a in 0..alg.dim() {
                let mut stepwise = basis_vector(alg.dim(), a);
                for &l in word {
                    stepwise = act.closure_basis()[l].apply_row(&stepwise);
                }
                prop_assert_eq!(op.apply_row(&basis_vector(alg.dim(), a)), stepwise);
            }
        }
    }

    #[test]
    fn action_with_identity_contains_the_subspace((alg, act) in algebra_with_action(), seed in prop::collection::vec(-2i64..=2, 9)) {
        let s = Subspace::span(alg.dim(), [seed[..alg.dim()].iter().map(|&v| int(v)).collect::<Vec<_>>()]).unwrap();
        prop_assert!(subspace_under_action(&s, act.envelope(), true).unwrap().contains(&s).unwrap());
    }

    #[test]
    fn radical_and_blocks((alg, act) in algebra_with_action()) {
        let j = radical(&alg).unwrap();
        prop_assert!(radical_is_invariant(&j, &act).unwrap());
        let wd = wedderburn_malcev(&alg).unwrap();
        prop_assert_eq!(wd.semisimple_part.dim() + wd.radical.dim(), alg.dim());
        prop_assert_eq!(wd.blocks.iter().map(Subspace::dim).sum::<usize>(), alg.dim() - j.dim());
        prop_assert_eq!(wd.blocks.iter().map(Subspace::dim).collect::<Vec<_>>(), wd.quotient_dims.clone());
    }

    #[test]
    fn exponent_theorem_and_bounds((alg, act) in algebra_with_action()) {
        let g = verify_gk(&alg, &act).unwrap();
        prop_assert!(g.holds());
        prop_assert!(g.differential.value <= alg.dim());
        let wd = wedderburn_malcev(&alg).unwrap();
        let pruned = exp_differential_with(&alg, &act, &wd, true).unwrap();
        let full = exp_differential_with(&alg, &act, &wd, false).unwrap();
        prop_assert_eq!(&pruned.witness_sequence, &full.witness_sequence);
        prop_assert_eq!(pruned.value, full.value);
        let o = exp_ordinary_with(&alg, &wd, false).unwrap();
        prop_assert_eq!(o.value, exp_ordinary(&alg).unwrap().value);
    }

    #[test]
    fn exponent_does_not_depend_on_lift_order((alg, act) in algebra_with_action()) {
        let base = exp_differential(&alg, &act).unwrap().value;
        let blocks = wedderburn_malcev(&alg).unwrap().blocks.len();
        for order in (0..blocks).permutations(blocks) {
            let wd = wedderburn_malcev_with_order(&alg, &order).unwrap();
            prop_assert_eq!(exp_differential_with(&alg, &act, &wd, true).unwrap().value, base);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn codimension_bookkeeping((alg, act) in algebra_with_action(), n in 1usize..=3) {
        let cfg = EngineConfig::default();
        let e = act.envelope().dim();
        let report = within_budget(identity_space(&alg, &act, n, &cfg))?;
        let factorial: usize = (1..=n).product();
        prop_assert_eq!(report.codim + report.identity_dim, factorial * e.pow(n as u32));
        prop_assert_eq!(codim(&alg, &act, n, RankMode::Modular, &cfg).unwrap(), report.codim);
        let ordinary = codim(&alg, &LieAction::trivial(&alg), n, RankMode::Exact, &cfg).unwrap();
        prop_assert!(ordinary <= report.codim);
    }

    #[test]
    fn derivatives_of_identities_are_identities((alg, act) in algebra_with_action(), n in 2usize..=3) {
        let cfg = EngineConfig::default();
        let report = within_budget(identity_space(&alg, &act, n, &cfg))?;
        let words = act.envelope().word_reps();
        for v in report.kernel.basis().iter().take(4) {
            let coords: Vec<(usize, Scalar)> = v.iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).collect();
            let f = polynomial_from_coords(&coords, n, words);
            prop_assert!(is_identity(&f, &alg, &act, None).unwrap().holds);
            for letter in 0..act.closure_dim() {
                let d = derive_polynomial(&f, letter, &act, None).unwrap();
                prop_assert!(is_identity(&d, &alg, &act, None).unwrap().holds);
            }
        }
    }
}

#[test]
fn shipped_files_round_trip_byte_identically() {
    let cases: [(&str, &[&str]); 8] = [
        ("ut2", &[]),
        ("ut2-eps", &[]),
        ("ut2-eta", &["2/3", "-1"]),
        ("utn", &["3"]),
        ("matn", &["2"]),
        ("grassmann-k", &["3"]),
        ("dsum", &["ut2", "+", "matn", "2"]),
        ("dsum", &["ut2-eta", "1", "1", "+", "grassmann-k", "2"]),
    ];
    for (name, params) in cases {
        let params: Vec<String> = params.iter().map(|s| s.to_string()).collect();
        let text = generate(name, &params).unwrap().serialize();
        assert_eq!(AlgebraFile::parse(&text).unwrap().serialize(), text, "{name}");
    }
}

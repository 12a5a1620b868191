//! Published and hand-derived values checked against oracles that share no
//! code with the library: literal 2x2 matrix arithmetic, a naive rational
//! Gaussian elimination, and direct enumeration of index families.

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::{One, Zero};

use diffpi::algebra::{
    direct_sum, full_matrix, inner_derivation, lie_closure, truncated_grassmann, ut, Derivation, LieAction,
};
use diffpi::battery::ut2_with;
use diffpi::config::EngineConfig;
use diffpi::exponent::{classify_growth, exp_differential, exp_ordinary, Growth};
use diffpi::linalg::{int, Scalar};
use diffpi::pi::{codim, ut2_eps_spanning_set, ut2_spanning_set, RankMode};
use diffpi::structure::radical;

type Q = BigRational;
type M2 = [[i64; 2]; 2];

const E11: M2 = [[1, 0], [0, 0]];
const E12: M2 = [[0, 1], [0, 0]];
const E22: M2 = [[0, 0], [0, 1]];
const UT2: [M2; 3] = [E11, E12, E22];

fn mul(a: &M2, b: &M2) -> M2 {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = (0..2).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

fn lin(a: &M2, s: i64, b: &M2, t: i64) -> M2 {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = s * a[i][j] + t * b[i][j];
        }
    }
    c
}

/// ad_a(x) = xa - ax.
fn ad(a: &M2, x: &M2) -> M2 {
    lin(&mul(x, a), 1, &mul(a, x), -1)
}

/// eta = alpha*ad_e22 + beta*ad_e12.
fn eta(alpha: i64, beta: i64) -> impl Fn(&M2) -> M2 {
    move |x| lin(&ad(&E22, x), alpha, &ad(&E12, x), beta)
}

fn naive_rank(mut rows: Vec<Vec<Q>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        let lead: Vec<Q> = rows[r].iter().map(|v| v / &pivot).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, l) in row.iter_mut().zip(&lead) {
                    *x -= &f * l;
                }
            }
        }
        rows[r] = lead;
        r += 1;
    }
    r
}

/// Codimension of UT2 where each variable is decorated by one of `ops`
/// (an envelope basis given as maps on 2x2 matrices): rank of the matrix
/// whose rows are monomials and whose columns are (basis tuple, entry).
fn oracle_codim(n: usize, ops: &[&dyn Fn(&M2) -> M2]) -> usize {
    let tuples: Vec<Vec<usize>> = (0..n).map(|_| 0..3).multi_cartesian_product().collect();
    let mut rows = Vec::new();
    for perm in (0..n).permutations(n) {
        for deco in (0..n).map(|_| 0..ops.len()).multi_cartesian_product() {
            let mut row = Vec::with_capacity(tuples.len() * 4);
            for t in &tuples {
                let mut p: M2 = [[1, 0], [0, 1]];
                for &v in &perm {
                    p = mul(&p, &ops[deco[v]](&UT2[t[v]]));
                }
                row.extend(p.iter().flatten().map(|&x| Q::from_integer(x.into())));
            }
            rows.push(row);
        }
    }
    naive_rank(rows)
}

fn id(x: &M2) -> M2 {
    *x
}

fn ut2_formula(n: usize) -> usize {
    let n = n as i64;
    ((1 << (n - 1)) * (n - 2) + 2) as usize
}

fn ut2_eta_formula(n: usize) -> usize {
    (1 << (n - 1)) * n + 1
}

fn ut2_action(gens: &[(&str, i64, i64)]) -> LieAction {
    ut2_with(gens).unwrap().action
}

#[test]
fn ordinary_codimensions_of_ut2() {
    let cfg = EngineConfig::default();
    let (alg, _) = ut(2).unwrap();
    let act = LieAction::trivial(&alg);
    for n in 1..=5 {
        let lib = codim(&alg, &act, n, RankMode::Exact, &cfg).unwrap();
        assert_eq!(lib, oracle_codim(n, &[&id]), "n={n}");
        assert_eq!(lib, ut2_formula(n), "n={n}");
    }
}

#[test]
fn eps_and_eta_are_idempotent_up_to_alpha() {
    for (alpha, beta) in [(1, 0), (1, 1), (2, -3), (0, 1)] {
        let h = eta(alpha, beta);
        for x in &UT2 {
            let twice = h(&h(x));
            let scaled = lin(&h(x), alpha, &h(x), 0);
            assert_eq!(twice, scaled);
        }
    }
}

#[test]
fn differential_codimensions_of_ut2_eps_and_eta() {
    let cfg = EngineConfig::default();
    let (alg, _) = ut(2).unwrap();
    // eta^2 = alpha*eta on UT2, so {id, eta} spans each envelope.
    for (alpha, beta) in [(1, 0), (0, 1), (1, 1)] {
        let act = ut2_action(&[("eta", alpha, beta)]);
        assert_eq!(act.envelope().dim(), 2);
        let h = eta(alpha, beta);
        for n in 1..=4 {
            let lib = codim(&alg, &act, n, RankMode::Exact, &cfg).unwrap();
            assert_eq!(lib, oracle_codim(n, &[&id, &h]), "alpha={alpha} beta={beta} n={n}");
            assert_eq!(lib, ut2_eta_formula(n), "alpha={alpha} beta={beta} n={n}");
        }
    }
}

#[test]
fn ut2_eps_degree_one_and_two_by_hand() {
    // n = 1: x and x^eps are independent (x^eps kills e11).
    // n = 2: eight monomials; the identities x^eps y^eps, y^eps x^eps and
    // [x,y]^eps - [x,y] are independent, leaving 5.
    let h = eta(1, 0);
    assert_eq!(oracle_codim(1, &[&id, &h]), 2);
    assert_eq!(oracle_codim(2, &[&id, &h]), 8 - 3);
}

/// Sizes of the index families the published bases are built from.
fn ut2_family(n: usize) -> usize {
    let mut count = 0;
    for m in (0..=n).filter(|&m| m != n - 1) {
        for front in (1..=n).combinations(m) {
            let rest: Vec<usize> = (1..=n).filter(|v| !front.contains(v)).collect();
            if rest.is_empty() {
                count += 1;
                continue;
            }
            // [x_k, x_j1, ..., ] with k > j1 < j2 < ...: k is any non-minimal
            // element of `rest`, the j's are the others in increasing order.
            count += rest.len() - 1;
        }
    }
    count
}

fn ut2_eps_family(n: usize) -> usize {
    let second = n; // x_h1 ... x_h(n-1) x_r^eps: choose r
    let mut third = 0;
    for m in (0..=n).filter(|&m| m != n - 1 && m != n) {
        third += (1..=n).combinations(m).count();
    }
    ut2_family(n) + second + third
}

#[test]
fn spanning_families_match_codimensions() {
    let cfg = EngineConfig::default();
    let (alg, _) = ut(2).unwrap();
    let eps = ut2_action(&[("eps", 1, 0)]);
    for n in 2..=5 {
        assert_eq!(ut2_family(n), ut2_formula(n));
        assert_eq!(ut2_spanning_set(n).len(), ut2_family(n));
        assert_eq!(ut2_eps_family(n), ut2_eta_formula(n));
        assert_eq!(ut2_eps_spanning_set(n, 0).len(), ut2_eps_family(n));
        assert_eq!(
            codim(&alg, &eps, n, RankMode::Modular, &cfg).unwrap(),
            ut2_eps_family(n)
        );
    }
}

#[test]
fn exponents_by_hand() {
    // e11 * e12 * e22 = e12 links both diagonal blocks of UT2.
    assert_eq!(mul(&mul(&E11, &E12), &E22), E12);
    let (ut2, _) = ut(2).unwrap();
    let r = exp_ordinary(&ut2).unwrap();
    assert_eq!((r.value, r.witness_sequence), (2, vec![0, 1]));
    let eps = ut2_action(&[("eps", 1, 0)]);
    assert_eq!(exp_differential(&ut2, &eps).unwrap().value, 2);
    let full = ut2_action(&[("eps", 1, 0), ("delta", 0, 1)]);
    assert_eq!(exp_differential(&ut2, &full).unwrap().value, 2);
}

#[test]
fn full_derivation_envelope_by_brute_force() {
    let ops: [&dyn Fn(&M2) -> M2; 2] = [&eta(1, 0), &eta(0, 1)];
    // Span of all words of length <= 4 in the two derivations, as 3x3 maps.
    let mut rows = Vec::new();
    for len in 0..=4 {
        for word in (0..len).map(|_| 0..2).multi_cartesian_product() {
            let mut row = Vec::new();
            for x in &UT2 {
                let img = word.iter().fold(*x, |acc, &l| ops[l](&acc));
                row.extend(img.iter().flatten().map(|&v| Q::from_integer(v.into())));
            }
            rows.push(row);
        }
    }
    let act = ut2_action(&[("eps", 1, 0), ("delta", 0, 1)]);
    assert_eq!(act.envelope().dim(), naive_rank(rows));
    assert_eq!(act.closure_dim(), 2);
    assert!(act.is_solvable());
}

#[test]
fn grassmann_radical_is_nilpotent_of_index_three() {
    let (g, _) = truncated_grassmann(2).unwrap();
    let j = radical(&g).unwrap();
    assert_eq!(j.dim(), 3);
    let b = j.basis();
    let mut any_pair = false;
    for (x, y, z) in itertools::iproduct!(b, b, b) {
        assert!(g.mul(&g.mul(x, y), z).iter().all(Zero::is_zero));
        any_pair |= g.mul(x, y).iter().any(|v| !v.is_zero());
    }
    assert!(any_pair, "J^2 is nonzero");
}

#[test]
fn polynomial_growth_has_subexponential_ratios() {
    // Heuristic: for Polynomial classifications the ratio c_n / c_(n-1)
    // should drop towards 1; check it stays below 2 for n = 4..6.
    let cfg = EngineConfig::default();
    let f = ut(1).unwrap().0;
    let cases = [
        truncated_grassmann(2).unwrap().0,
        direct_sum(&f, &f).unwrap(),
        truncated_grassmann(3).unwrap().0,
    ];
    for alg in &cases {
        let act = LieAction::trivial(alg);
        assert_eq!(classify_growth(alg, &act, &cfg).unwrap().growth, Growth::Polynomial);
        let c: Vec<usize> = (3..=6)
            .map(|n| codim(alg, &act, n, RankMode::Modular, &cfg).unwrap())
            .collect();
        for w in c.windows(2) {
            assert!(w[1] < 2 * w[0], "{c:?}");
        }
    }
    // UT2 is exponential: the ratio stays at 2 or above.
    let (ut2, _) = ut(2).unwrap();
    let act = LieAction::trivial(&ut2);
    assert_eq!(classify_growth(&ut2, &act, &cfg).unwrap().growth, Growth::Exponential);
}

#[test]
fn inner_derivations_by_hand() {
    let (alg, _) = ut(2).unwrap();
    let unit = |i: usize| -> Vec<Scalar> {
        (0..3)
            .map(|j| if i == j { Scalar::one() } else { Scalar::zero() })
            .collect()
    };
    // coordinates: e11, e12, e22
    for (a, hand) in [(2, eta(1, 0)), (1, eta(0, 1))] {
        let d = inner_derivation(&alg, &unit(a));
        for (k, x) in UT2.iter().enumerate() {
            let img = hand(x);
            let expect = vec![int(img[0][0]), int(img[0][1]), int(img[1][1])];
            assert_eq!(d.apply_row(&unit(k)), expect);
        }
    }
    // The inner action of sl2 inside M2 is not solvable.
    let (m2, ders) = full_matrix(2).unwrap();
    let gens: Vec<Derivation> = ders
        .into_iter()
        .filter(|d| d.name == "ad_e12" || d.name == "ad_e21")
        .collect();
    assert_eq!(gens.len(), 2);
    assert!(!lie_closure(&m2, gens).unwrap().is_solvable());
}

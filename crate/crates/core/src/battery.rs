//! Reproducible checks of the codimension formulas, exponent theorems,
//! structural lemmas and engine invariants, grouped into named suites.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    direct_sum, full_matrix, inner_derivation, lie_closure, truncated_grassmann, ut, Derivation, LieAction,
    StructureAlgebra,
};
use crate::config::EngineConfig;
use crate::error::Result;
use crate::exponent::{all_bridge_checks, classify_growth, exp_differential, exp_ordinary, verify_gk, Growth};
use crate::linalg::{int, rank, rank_modular, rref, Matrix, Scalar, Subspace};
use crate::pi::{
    codim, consequences_space, containment_check, identity_space, spanning_rank, ut2_eps_spanning_set,
    ut2_spanning_set, ExponentWord, LPolynomial, RankMode,
};
use crate::structure::{check_block_action, decomposition_failures, wedderburn_malcev};

pub const CODIM_UT2_LIMIT: Duration = Duration::from_secs(120);
pub const GK_LIMIT: Duration = Duration::from_secs(300);
pub const RANDOM_ACTION_SEEDS: std::ops::RangeInclusive<u64> = 1..=10;
pub const RANDOM_MATRIX_COUNT: u64 = 100;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
}

pub const SUITES: &[(&str, &[u8])] = &[
    ("all", &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12]),
    ("codim-formulas", &[1, 2, 3]),
    ("gk-randomized", &[4]),
    ("exponents", &[5]),
    ("structure-lemmas", &[6, 7]),
    ("spanning", &[8]),
    ("consequences", &[9]),
    ("containment", &[10]),
    ("growth", &[11]),
    ("infrastructure", &[12]),
];

pub fn suite(name: &str) -> Option<&'static [u8]> {
    SUITES.iter().find(|(n, _)| *n == name).map(|(_, ids)| *ids)
}

/// Runs one criterion; internal errors count as failures with the error text.
pub fn run_criterion(id: u8, cfg: &EngineConfig) -> CriterionResult {
    let (title, outcome): (&'static str, Result<(bool, Vec<String>)>) = match id {
        1 => ("ordinary codimensions of UT2", codim_ut2(cfg)),
        2 => ("differential codimensions of UT2^eps", codim_ut2_eps(cfg)),
        3 => ("differential codimensions of UT2^eta", codim_ut2_eta(cfg)),
        4 => ("exp^L = exp on the action battery", gk_battery()),
        5 => ("ordinary exponents", ordinary_exponents()),
        6 => ("bridge lemma", bridge_lemma()),
        7 => ("block-action lemma", block_action_lemma()),
        8 => ("spanning sets modulo identities", spanning_sets(cfg)),
        9 => ("consequence closure of generating identities", consequence_closure(cfg)),
        10 => ("containment and distinctness of identity ideals", containment(cfg)),
        11 => ("growth classification", growth(cfg)),
        12 => ("infrastructure properties", infrastructure(cfg)),
        _ => ("unknown criterion", Ok((false, vec![format!("no criterion {id}")]))),
    };
    let (passed, details) = outcome.unwrap_or_else(|e| (false, vec![format!("error: {e}")]));
    CriterionResult {
        id,
        title,
        passed,
        details,
    }
}

/// A named algebra with a Lie action.
pub struct Fixture {
    pub name: String,
    pub algebra: StructureAlgebra,
    pub action: LieAction,
}

fn fixture(name: impl Into<String>, algebra: &StructureAlgebra, gens: Vec<Derivation>) -> Result<Fixture> {
    let action = lie_closure(algebra, gens)?;
    Ok(Fixture {
        name: name.into(),
        algebra: algebra.clone(),
        action,
    })
}

fn ad(alg: &StructureAlgebra, name: &str, coords: &[i64]) -> Derivation {
    let a: Vec<Scalar> = coords.iter().map(|&c| int(c)).collect();
    Derivation::new(name, inner_derivation(alg, &a))
}

fn unit_vec(n: usize, i: usize) -> Vec<i64> {
    (0..n).map(|j| i64::from(j == i)).collect()
}

fn ut2_action(eps: i64, delta: i64) -> Derivation {
    let (a, _) = ut(2).expect("ut2");
    // e11, e12, e22: ad_{e22} is unit_vec(3, 2), ad_{e12} is unit_vec(3, 1)
    ad(&a, "eta", &[0, delta, eps])
}

/// UT₂ with the given derivations of the form `α·ad_{e22} + β·ad_{e12}`.
pub fn ut2_with(actions: &[(&str, i64, i64)]) -> Result<Fixture> {
    let (a, _) = ut(2)?;
    let gens = actions
        .iter()
        .map(|(name, eps, delta)| {
            let d = ut2_action(*eps, *delta);
            Derivation::new(*name, d.matrix)
        })
        .collect();
    let label = if actions.is_empty() {
        "UT2".to_string()
    } else {
        format!("UT2^{}", actions.iter().map(|a| a.0).collect::<Vec<_>>().join(","))
    };
    fixture(label, &a, gens)
}

/// The fixtures of the exponent-theorem battery: UT₂ variants, UT₃ with five
/// inner actions, M₂, UT₂ ⊕ M₂, Grassmann algebras and seeded random inner
/// actions.
pub fn gk_fixtures() -> Result<Vec<Fixture>> {
    let mut out = vec![
        ut2_with(&[])?,
        ut2_with(&[("eps", 1, 0)])?,
        ut2_with(&[("delta", 0, 1)])?,
        ut2_with(&[("eps+delta", 1, 1)])?,
        ut2_with(&[("eps", 1, 0), ("delta", 0, 1)])?,
    ];
    let (u3, _) = ut(3)?;
    // basis e11 e12 e13 e22 e23 e33
    let u3_actions: [&[usize]; 5] = [&[0], &[1], &[3, 2], &[1, 4], &[0, 3, 5]];
    for (k, idx) in u3_actions.iter().enumerate() {
        let gens = idx
            .iter()
            .map(|&i| ad(&u3, &format!("ad{}", i + 1), &unit_vec(6, i)))
            .collect();
        out.push(fixture(format!("UT3 inner action {}", k + 1), &u3, gens)?);
    }
    let (m2, _) = full_matrix(2)?;
    out.push(fixture("M2", &m2, Vec::new())?);
    out.push(fixture("M2 with ad_e11", &m2, vec![ad(&m2, "ad_e11", &[1, 0, 0, 0])])?);
    let (u2, _) = ut(2)?;
    let s = direct_sum(&u2, &m2)?;
    out.push(fixture(
        "UT2+M2 with eps+ad_e12",
        &s,
        vec![ad(&s, "mix", &[0, 0, 1, 0, 1, 0, 0])],
    )?);
    out.push(fixture(
        "UT2+M2 with delta, ad_e11",
        &s,
        vec![
            ad(&s, "l.delta", &[0, 1, 0, 0, 0, 0, 0]),
            ad(&s, "r.ad_e11", &[0, 0, 0, 1, 0, 0, 0]),
        ],
    )?);
    for k in [2, 3] {
        let (g, _) = truncated_grassmann(k)?;
        out.push(fixture(format!("Grassmann {k}"), &g, Vec::new())?);
    }
    out.extend(random_inner_fixtures()?);
    Ok(out)
}

/// Random inner derivations (coefficients in -2..=2) on algebras of
/// dimension at most 8, one seed each.
pub fn random_inner_fixtures() -> Result<Vec<Fixture>> {
    let (u2, _) = ut(2)?;
    let (m2, _) = full_matrix(2)?;
    let bases = [
        ("UT2", u2.clone()),
        ("UT3", ut(3)?.0),
        ("M2", m2.clone()),
        ("UT2+M2", direct_sum(&u2, &m2)?),
        ("Grassmann 3", truncated_grassmann(3)?.0),
    ];
    RANDOM_ACTION_SEEDS
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (name, alg) = &bases[rng.gen_range(0..bases.len())];
            let count = rng.gen_range(1..=2);
            let gens = (0..count)
                .map(|g| {
                    let coords: Vec<i64> = (0..alg.dim()).map(|_| rng.gen_range(-2..=2)).collect();
                    ad(alg, &format!("r{g}"), &coords)
                })
                .collect();
            fixture(format!("{name} random inner action (seed {seed})"), alg, gens)
        })
        .collect()
}

fn zero_algebra(n: usize) -> Result<StructureAlgebra> {
    StructureAlgebra::from_table(format!("zero{n}"), n, &[], None)
}

fn strict_ut3() -> Result<StructureAlgebra> {
    // e12, e13, e23 with e12 e23 = e13
    StructureAlgebra::from_table("sut3", 3, &[(0, 2, 1, int(1))], None)
}

fn formula_ut2(n: usize) -> usize {
    (1 << (n - 1)) * (n - 2) + 2
}

fn codim_table(f: &Fixture, range: std::ops::RangeInclusive<usize>, cfg: &EngineConfig) -> Result<Vec<(usize, usize)>> {
    range
        .map(|n| codim(&f.algebra, &f.action, n, RankMode::Exact, cfg).map(|c| (n, c)))
        .collect()
}

fn codim_ut2(cfg: &EngineConfig) -> Result<(bool, Vec<String>)> {
    let start = Instant::now();
    let f = ut2_with(&[])?;
    let mut ok = true;
    let mut details = Vec::new();
    for (n, c) in codim_table(&f, 1..=6, cfg)? {
        let expected = if n == 1 { 1 } else { formula_ut2(n) };
        ok &= c == expected;
        details.push(format!("n={n}: c_n = {c}, formula 2^(n-1)(n-2)+2 = {expected}"));
    }
    let elapsed = start.elapsed();
    ok &= elapsed < CODIM_UT2_LIMIT;
    details.push(format!(
        "runtime within {}s: {}",
        CODIM_UT2_LIMIT.as_secs(),
        elapsed < CODIM_UT2_LIMIT
    ));
    Ok((ok, details))
}

fn stated_eps(n: usize) -> i64 {
    (1i64 << (n - 1)) * n as i64 - 1
}

fn plus_one(n: usize) -> i64 {
    (1i64 << (n - 1)) * n as i64 + 1
}

fn codim_ut2_eps(cfg: &EngineConfig) -> Result<(bool, Vec<String>)> {
    let f = ut2_with(&[("eps", 1, 0)])?;
    let mut ok = true;
    let mut details = Vec::new();
    for (n, c) in codim_table(&f, 1..=6, cfg)? {
        let c = c as i64;
        if n == 1 {
            details.push(format!(
                "n=1: c_n = {c}; formula 2^(n-1)n-1 gives {} (flagged, not scored)",
                stated_eps(1)
            ));
            continue;
        }
        ok &= c == stated_eps(n);
        details.push(format!(
            "n={n}: c_n = {c}, formula 2^(n-1)n-1 = {} [{}], 2^(n-1)n+1 = {} [{}]",
            stated_eps(n),
            verdict(c == stated_eps(n)),
            plus_one(n),
            verdict(c == plus_one(n)),
        ));
    }
    Ok((ok, details))
}

fn verdict(b: bool) -> &'static str {
    if b {
        "match"
    } else {
        "differs"
    }
}

fn codim_ut2_eta(cfg: &EngineConfig) -> Result<(bool, Vec<String>)> {
    let delta = ut2_with(&[("eta", 0, 1)])?;
    let mixed = ut2_with(&[("eta", 1, 1)])?;
    let eps = ut2_with(&[("eps", 1, 0)])?;
    let mut details = Vec::new();
    let mut alpha_zero_ok = true;
    for (n, c) in codim_table(&delta, 2..=6, cfg)? {
        alpha_zero_ok &= c as i64 == plus_one(n);
        details.push(format!(
            "alpha=0, n={n}: c_n = {c}, formula 2^(n-1)n+1 = {}",
            plus_one(n)
        ));
    }
    let mut same_as_eps = true;
    let mut mixed_matches_formula = true;
    for ((n, c), (_, e)) in codim_table(&mixed, 2..=5, cfg)?
        .into_iter()
        .zip(codim_table(&eps, 2..=5, cfg)?)
    {
        same_as_eps &= c == e;
        mixed_matches_formula &= c as i64 == plus_one(n);
        details.push(format!("alpha=1, beta=1, n={n}: c_n = {c}, UT2^eps gives {e}"));
    }
    let cases: Vec<&str> = [(alpha_zero_ok, "alpha = 0"), (mixed_matches_formula, "alpha != 0")]
        .iter()
        .filter(|(m, _)| *m)
        .map(|(_, c)| *c)
        .collect();
    details.push(format!(
        "single stated formula 2^(n-1)n+1 matches: {}",
        if cases.is_empty() {
            "neither case".to_string()
        } else {
            cases.join(" and ")
        }
    ));
    Ok((alpha_zero_ok && same_as_eps, details))
}

fn gk_battery() -> Result<(bool, Vec<String>)> {
    let start = Instant::now();
    let mut ok = true;
    let mut details = Vec::new();
    for f in gk_fixtures()? {
        let g = verify_gk(&f.algebra, &f.action)?;
        ok &= g.holds();
        details.push(format!(
            "{}: exp = {}, exp^L = {} [{}]",
            f.name,
            g.ordinary.value,
            g.differential.value,
            if g.holds() { "PASS" } else { "FAIL" }
        ));
    }
    let elapsed = start.elapsed();
    ok &= elapsed < GK_LIMIT;
    details.push(format!(
        "runtime within {}s: {}",
        GK_LIMIT.as_secs(),
        elapsed < GK_LIMIT
    ));
    Ok((ok, details))
}

fn ordinary_exponents() -> Result<(bool, Vec<String>)> {
    let cases = [
        ("UT2", ut(2)?.0, 2),
        ("M2", full_matrix(2)?.0, 4),
        ("zero algebra of dim 2", zero_algebra(2)?, 0),
        ("strictly upper triangular 3x3", strict_ut3()?, 0),
    ];
    let mut ok = true;
    let mut details = Vec::new();
    for (name, alg, expected) in cases {
        let r = exp_ordinary(&alg)?;
        ok &= r.value == expected;
        details.push(format!(
            "exp({name}) = {} (expected {expected}), witness {:?}",
            r.value,
            one_based(&r.witness_sequence)
        ));
    }
    Ok((ok, details))
}

pub fn one_based(seq: &[usize]) -> Vec<usize> {
    seq.iter().map(|b| b + 1).collect()
}

fn bridge_lemma() -> Result<(bool, Vec<String>)> {
    let mut counterexamples = Vec::new();
    let mut sequences = 0;
    let mut hypotheses = 0;
    for f in gk_fixtures()? {
        let wd = wedderburn_malcev(&f.algebra)?;
        for (seq, check) in all_bridge_checks(&f.algebra, &f.action, &wd)? {
            sequences += 1;
            hypotheses += usize::from(check.hypothesis);
            if !check.holds() {
                counterexamples.push(format!("{}: sequence {:?}", f.name, one_based(&seq)));
            }
        }
    }
    let mut details = vec![format!(
        "{sequences} block sequences, {hypotheses} with nonzero differential product, {} counterexamples",
        counterexamples.len()
    )];
    let ok = counterexamples.is_empty();
    details.extend(counterexamples);
    Ok((ok, details))
}

fn block_action_lemma() -> Result<(bool, Vec<String>)> {
    let mut ok = true;
    let mut details = Vec::new();
    for f in gk_fixtures()? {
        let wd = wedderburn_malcev(&f.algebra)?;
        for c in check_block_action(&wd, &f.action)? {
            let good = c.into_block_plus_radical && c.into_radical != Some(false);
            ok &= good;
            if !good {
                details.push(format!(
                    "{}: block {} (dim {}) violates the lemma",
                    f.name,
                    c.block + 1,
                    c.dim
                ));
            }
        }
    }
    details.insert(0, format!("checked every block of {} fixtures", gk_fixtures()?.len()));
    Ok((ok, details))
}

fn spanning_sets(cfg: &EngineConfig) -> Result<(bool, Vec<String>)> {
    let plain = ut2_with(&[])?;
    let eps = ut2_with(&[("eps", 1, 0)])?;
    let mut ok = true;
    let mut details = Vec::new();
    for n in 2..=5 {
        for (label, f, set) in [
            ("UT2", &plain, ut2_spanning_set(n)),
            ("UT2^eps", &eps, ut2_eps_spanning_set(n, 0)),
        ] {
            let r = spanning_rank(&f.algebra, &f.action, &set)?;
            let c = codim(&f.algebra, &f.action, n, RankMode::Exact, cfg)?;
            let good = r == set.len() && set.len() == c;
            ok &= good;
            details.push(format!("{label}, n={n}: |set| = {}, rank = {r}, c_n = {c}", set.len()));
        }
    }
    Ok((ok, details))
}

fn var(i: usize) -> LPolynomial {
    LPolynomial::var(i)
}

fn var_pow(i: usize, w: &[usize]) -> LPolynomial {
    LPolynomial::var_pow(i, ExponentWord(w.to_vec()))
}

/// `x^{ε²} − x^ε`, `x^ε y^ε` and `[x,y]^ε − [x,y]`, with ε the closure letter 0.
pub fn ut2_eps_generators(act: &LieAction) -> Vec<LPolynomial> {
    let c = LPolynomial::commutator(&var(0), &var(1));
    vec![
        var_pow(0, &[0, 0]).sub(&var_pow(0, &[0])),
        var_pow(0, &[0]).mul(&var_pow(1, &[0])),
        c.derive(0, act).sub(&c),
    ]
}

fn consequence_closure(cfg: &EngineConfig) -> Result<(bool, Vec<String>)> {
    let mut ok = true;
    let mut details = Vec::new();
    let plain = ut2_with(&[])?;
    let g = LPolynomial::commutator(&var(0), &var(1)).mul(&LPolynomial::commutator(&var(2), &var(3)));
    let mut cases = vec![("UT2", &plain, vec![g], 4)];
    let eps = ut2_with(&[("eps", 1, 0)])?;
    for n in 2..=4 {
        cases.push(("UT2^eps", &eps, ut2_eps_generators(&eps.action), n));
    }
    for (label, f, gens, n) in cases {
        let span = consequences_space(&gens, &f.action, n, f.action.default_word_cap(), cfg)?;
        let kernel = identity_space(&f.algebra, &f.action, n, cfg)?.kernel;
        let equal = span == kernel;
        ok &= equal;
        details.push(format!(
            "{label}, n={n}: consequences dim {}, identities dim {} [{}]",
            span.dim(),
            kernel.dim(),
            if equal { "equal" } else { "differ" }
        ));
    }
    Ok((ok, details))
}

fn containment(cfg: &EngineConfig) -> Result<(bool, Vec<String>)> {
    let mut ok = true;
    let mut details = Vec::new();
    let zero = ut2_with(&[("eps", 0, 0)])?;
    let eps = ut2_with(&[("eps", 1, 0)])?;
    let names = vec!["eps".to_string()];
    for (from_name, from, to_name, to) in [("UT2", &zero, "UT2^eps", &eps), ("UT2^eps", &eps, "UT2", &zero)] {
        let mut found = None;
        for n in 1..=4 {
            let r = containment_check(&from.algebra, &from.action, &to.algebra, &to.action, n, cfg)?;
            if let Some(c) = r.certificate {
                found = Some((n, c));
                break;
            }
        }
        match found {
            Some((n, c)) => details.push(format!(
                "identity of {from_name} failing in {to_name} at n={n}: {}",
                c.display(Some(&names))
            )),
            None => {
                ok = false;
                details.push(format!("no identity of {from_name} failing in {to_name} up to n=4"));
            }
        }
    }
    let full = ut2_with(&[("eps", 1, 0), ("delta", 0, 1)])?;
    let eps_pad = ut2_with(&[("eps", 1, 0), ("delta", 0, 0)])?;
    for n in 1..=3 {
        let r = containment_check(&full.algebra, &full.action, &eps_pad.algebra, &eps_pad.action, n, cfg)?;
        ok &= r.contained;
        details.push(format!("Id_{n}(UT2^D) in Id_{n}(UT2^eps): {}", r.contained));
    }
    let (u3, _) = ut(3)?;
    let (u2, _) = ut(2)?;
    for n in 1..=4 {
        let r = containment_check(&u3, &LieAction::trivial(&u3), &u2, &LieAction::trivial(&u2), n, cfg)?;
        ok &= r.contained;
        details.push(format!("Id_{n}(UT3) in Id_{n}(UT2): {}", r.contained));
    }
    Ok((ok, details))
}

fn growth(cfg: &EngineConfig) -> Result<(bool, Vec<String>)> {
    let (g2, _) = truncated_grassmann(2)?;
    let (g3, _) = truncated_grassmann(3)?;
    let ff = direct_sum(&ut(1)?.0, &ut(1)?.0)?;
    let mut cases: Vec<(Fixture, Growth)> = vec![
        (fixture("Grassmann 2", &g2, Vec::new())?, Growth::Polynomial),
        (fixture("Grassmann 3", &g3, Vec::new())?, Growth::Polynomial),
        (fixture("F+F", &ff, Vec::new())?, Growth::Polynomial),
        (
            fixture("zero algebra of dim 2", &zero_algebra(2)?, Vec::new())?,
            Growth::Polynomial,
        ),
        (
            fixture("strictly upper triangular 3x3", &strict_ut3()?, Vec::new())?,
            Growth::Polynomial,
        ),
    ];
    for f in gk_fixtures()?.into_iter().take(5) {
        cases.push((f, Growth::Exponential));
    }
    let mut ok = true;
    let mut details = Vec::new();
    for (f, expected) in cases {
        let r = classify_growth(&f.algebra, &f.action, cfg)?;
        let exp_l = exp_differential(&f.algebra, &f.action)?.value;
        let consistent = (r.growth == Growth::Polynomial) == (exp_l <= 1);
        ok &= r.growth == expected && consistent;
        let evidence: Vec<String> = r
            .evidence
            .iter()
            .map(|e| match &e.certificate {
                Some((n, _)) => format!("{} excluded at n={n}", e.target),
                None => format!(
                    "{} not excluded up to n={}",
                    e.target,
                    e.degrees_checked.last().copied().unwrap_or(0)
                ),
            })
            .collect();
        details.push(format!(
            "{}: {} (expected {expected}), exp^L = {exp_l}; evidence: {}",
            f.name,
            r.growth,
            if evidence.is_empty() {
                "none".to_string()
            } else {
                evidence.join("; ")
            }
        ));
    }
    Ok((ok, details))
}

fn random_matrix(rng: &mut ChaCha8Rng) -> Matrix {
    let rows = rng.gen_range(1..=7);
    let cols = rng.gen_range(1..=7);
    // low-rank products make rank deficiency common
    let inner = rng.gen_range(1..=rows.max(cols));
    let mut entry = |_: usize| -> Scalar {
        let num = rng.gen_range(-4i64..=4);
        let den = rng.gen_range(1i64..=3);
        crate::linalg::frac(num, den)
    };
    let a = Matrix::from_rows((0..rows).map(|_| (0..inner).map(&mut entry).collect()).collect());
    let b = Matrix::from_rows((0..inner).map(|_| (0..cols).map(&mut entry).collect()).collect());
    a.mul(&b)
}

fn infrastructure(cfg: &EngineConfig) -> Result<(bool, Vec<String>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rank_agree = 0;
    let mut idempotent = 0;
    let mut dim_formula = 0;
    for _ in 0..RANDOM_MATRIX_COUNT {
        let m = random_matrix(&mut rng);
        if rank_modular(&m, cfg.primes, cfg.seed)? == rank(&m) {
            rank_agree += 1;
        }
        let e = rref(&m);
        if rref(&e.matrix) == e {
            idempotent += 1;
        }
        let n = m.cols();
        let u = Subspace::span(n, m.row_vectors())?;
        let w = Subspace::span(n, random_matrix_cols(&mut rng, n).row_vectors())?;
        if u.sum(&w)?.dim() + u.intersect(&w)?.dim() == u.dim() + w.dim() {
            dim_formula += 1;
        }
    }
    let mut details = vec![
        format!("modular rank = exact rank on {rank_agree}/{RANDOM_MATRIX_COUNT} random matrices"),
        format!("rref idempotent on {idempotent}/{RANDOM_MATRIX_COUNT}"),
        format!("dim(U+W) + dim(U∩W) = dim U + dim W on {dim_formula}/{RANDOM_MATRIX_COUNT}"),
    ];
    let n = RANDOM_MATRIX_COUNT as usize;
    let mut ok = rank_agree == n && idempotent == n && dim_formula == n;
    let mut fixtures = gk_fixtures()?;
    fixtures.push(fixture("zero algebra of dim 2", &zero_algebra(2)?, Vec::new())?);
    fixtures.push(fixture("strictly upper triangular 3x3", &strict_ut3()?, Vec::new())?);
    let mut failures = 0;
    for f in &fixtures {
        let wd = wedderburn_malcev(&f.algebra)?;
        let problems = decomposition_failures(&f.algebra, &wd)?;
        if !problems.is_empty() {
            failures += 1;
            details.push(format!("{}: {}", f.name, problems.join("; ")));
        }
    }
    ok &= failures == 0;
    details.push(format!(
        "decomposition invariants (A = B + J, J nilpotent, orthogonal blocks) hold on {}/{} fixtures",
        fixtures.len() - failures,
        fixtures.len()
    ));
    Ok((ok, details))
}

fn random_matrix_cols(rng: &mut ChaCha8Rng, cols: usize) -> Matrix {
    let rows = rng.gen_range(1..=cols + 1);
    Matrix::from_rows(
        (0..rows)
            .map(|_| (0..cols).map(|_| int(rng.gen_range(-2i64..=2))).collect())
            .collect(),
    )
}

//! PI-exponents from block/radical products, the bridge between the
//! differential and ordinary conditions, and growth classification.

use crate::algebra::{ut, LieAction, StructureAlgebra};
use crate::config::EngineConfig;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::pi::{containment_check, LPolynomial};
use crate::structure::{wedderburn_malcev, WedderburnData};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentReport {
    pub value: usize,
    /// Block indices (0-based, in decomposition order) of a lexicographically
    /// least sequence attaining the maximum; empty for nilpotent algebras.
    pub witness_sequence: Vec<usize>,
    pub witness_dims: Vec<usize>,
    /// Sequences whose running product vanished and were not extended.
    pub pruned_count: usize,
    /// Sequences whose product was computed.
    pub visited_count: usize,
}

/// How a sequence of blocks is multiplied out: the starting subspace for one
/// block, and the extension of a running product by a further block.
trait Chain {
    fn start(&self, block: usize) -> Result<Subspace>;
    fn extend(&self, running: &Subspace, block: usize) -> Result<Subspace>;
}

/// `B_{i_1} J B_{i_2} J ⋯` inside `A`.
struct Ordinary<'a> {
    alg: &'a StructureAlgebra,
    wd: &'a WedderburnData,
}

impl Chain for Ordinary<'_> {
    fn start(&self, block: usize) -> Result<Subspace> {
        Ok(self.wd.blocks[block].clone())
    }

    fn extend(&self, running: &Subspace, block: usize) -> Result<Subspace> {
        let left = self.alg.product(running, &self.wd.radical)?;
        self.alg.product(&left, &self.wd.blocks[block])
    }
}

/// `A_{i_1}^L A⁺ A_{i_2}^L A⁺ ⋯` inside the unitalization `A⁺`.
struct Differential {
    plus: StructureAlgebra,
    factors: Vec<Subspace>,
}

impl Differential {
    fn new(alg: &StructureAlgebra, act: &LieAction, wd: &WedderburnData) -> Result<Self> {
        let plus = alg.adjoin_unit();
        let factors = wd
            .blocks
            .iter()
            .map(|b| {
                let moved = act.envelope().act_on(b, true)?;
                Subspace::span(
                    plus.dim(),
                    moved
                        .basis()
                        .iter()
                        .map(|v| StructureAlgebra::embed_in_unitalization(v)),
                )
            })
            .collect::<Result<_>>()?;
        Ok(Differential { plus, factors })
    }
}

impl Chain for Differential {
    fn start(&self, block: usize) -> Result<Subspace> {
        Ok(self.factors[block].clone())
    }

    fn extend(&self, running: &Subspace, block: usize) -> Result<Subspace> {
        let left = self.plus.product(running, &self.plus.whole())?;
        self.plus.product(&left, &self.factors[block])
    }
}

struct Search<'a, C: Chain> {
    chain: &'a C,
    dims: Vec<usize>,
    prune: bool,
    best: (usize, Vec<usize>),
    pruned: usize,
    visited: usize,
}

impl<C: Chain> Search<'_, C> {
    fn descend(&mut self, seq: &mut Vec<usize>, running: &Subspace, total: usize) -> Result<()> {
        for b in 0..self.dims.len() {
            if seq.contains(&b) {
                continue;
            }
            let next = self.chain.extend(running, b)?;
            self.visited += 1;
            seq.push(b);
            self.record(seq, &next, total + self.dims[b])?;
            seq.pop();
        }
        Ok(())
    }

    fn record(&mut self, seq: &mut Vec<usize>, product: &Subspace, total: usize) -> Result<()> {
        let nonzero = !product.is_zero();
        if nonzero && total > self.best.0 {
            self.best = (total, seq.clone());
        }
        if nonzero || !self.prune {
            self.descend(seq, product, total)
        } else {
            self.pruned += 1;
            Ok(())
        }
    }

    /// Depth-first in lexicographic order, so the first sequence reaching a
    /// new maximum is the least one.
    fn run(chain: &C, dims: Vec<usize>, prune: bool) -> Result<ExponentReport> {
        let mut s = Search {
            chain,
            dims,
            prune,
            best: (0, Vec::new()),
            pruned: 0,
            visited: 0,
        };
        for b in 0..s.dims.len() {
            let start = s.chain.start(b)?;
            s.visited += 1;
            let total = s.dims[b];
            s.record(&mut vec![b], &start, total)?;
        }
        let witness_dims = s.best.1.iter().map(|&b| s.dims[b]).collect();
        Ok(ExponentReport {
            value: s.best.0,
            witness_sequence: s.best.1,
            witness_dims,
            pruned_count: s.pruned,
            visited_count: s.visited,
        })
    }
}

fn block_dims(wd: &WedderburnData) -> Vec<usize> {
    wd.blocks.iter().map(Subspace::dim).collect()
}

/// Ordinary exponent over a given decomposition; `prune` off enumerates every
/// sequence of distinct blocks.
pub fn exp_ordinary_with(alg: &StructureAlgebra, wd: &WedderburnData, prune: bool) -> Result<ExponentReport> {
    Search::run(&Ordinary { alg, wd }, block_dims(wd), prune)
}

pub fn exp_differential_with(
    alg: &StructureAlgebra,
    act: &LieAction,
    wd: &WedderburnData,
    prune: bool,
) -> Result<ExponentReport> {
    Search::run(&Differential::new(alg, act, wd)?, block_dims(wd), prune)
}

/// Largest total block dimension over sequences of distinct blocks with
/// `B_{i_1} J B_{i_2} J ⋯ J B_{i_r} ≠ 0`.
pub fn exp_ordinary(alg: &StructureAlgebra) -> Result<ExponentReport> {
    exp_ordinary_with(alg, &wedderburn_malcev(alg)?, true)
}

/// As [`exp_ordinary`] with factors `B_i^L` (blocks moved by the unital
/// envelope) separated by `A⁺`.
pub fn exp_differential(alg: &StructureAlgebra, act: &LieAction) -> Result<ExponentReport> {
    exp_differential_with(alg, act, &wedderburn_malcev(alg)?, true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GkCheck {
    pub ordinary: ExponentReport,
    pub differential: ExponentReport,
}

impl GkCheck {
    pub fn holds(&self) -> bool {
        self.ordinary.value == self.differential.value
    }
}

/// Both exponents on one decomposition; they must coincide.
pub fn verify_gk(alg: &StructureAlgebra, act: &LieAction) -> Result<GkCheck> {
    let wd = wedderburn_malcev(alg)?;
    Ok(GkCheck {
        ordinary: exp_ordinary_with(alg, &wd, true)?,
        differential: exp_differential_with(alg, act, &wd, true)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BridgeCheck {
    /// `B_1^L A⁺ B_2^L ⋯ A⁺ B_k^L ≠ 0`.
    pub hypothesis: bool,
    /// `B_1 J B_2 ⋯ J B_k ≠ 0`.
    pub conclusion: bool,
}

impl BridgeCheck {
    pub fn holds(&self) -> bool {
        !self.hypothesis || self.conclusion
    }
}

fn chain_nonzero(chain: &impl Chain, sequence: &[usize]) -> Result<bool> {
    let mut running = chain.start(sequence[0])?;
    for &b in &sequence[1..] {
        if running.is_zero() {
            break;
        }
        running = chain.extend(&running, b)?;
    }
    Ok(!running.is_zero())
}

/// Evaluates both products for a sequence of distinct block indices of `wd`.
pub fn lemma_bridge_check(
    alg: &StructureAlgebra,
    act: &LieAction,
    wd: &WedderburnData,
    sequence: &[usize],
) -> Result<BridgeCheck> {
    let k = wd.blocks.len();
    let mut seen = vec![false; k];
    if sequence.is_empty() {
        return Err(Error::BadParams("empty block sequence".into()));
    }
    for &b in sequence {
        if b >= k || std::mem::replace(&mut seen[b], true) {
            return Err(Error::BadParams(format!(
                "block sequence {sequence:?} must use distinct indices below {k}"
            )));
        }
    }
    Ok(BridgeCheck {
        hypothesis: chain_nonzero(&Differential::new(alg, act, wd)?, sequence)?,
        conclusion: chain_nonzero(&Ordinary { alg, wd }, sequence)?,
    })
}

/// Every sequence of distinct blocks with its bridge check.
pub fn all_bridge_checks(
    alg: &StructureAlgebra,
    act: &LieAction,
    wd: &WedderburnData,
) -> Result<Vec<(Vec<usize>, BridgeCheck)>> {
    fn sequences(k: usize, seq: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for b in 0..k {
            if !seq.contains(&b) {
                seq.push(b);
                out.push(seq.clone());
                sequences(k, seq, out);
                seq.pop();
            }
        }
    }
    let mut seqs = Vec::new();
    sequences(wd.blocks.len(), &mut Vec::new(), &mut seqs);
    seqs.into_iter()
        .map(|s| lemma_bridge_check(alg, act, wd, &s).map(|c| (s, c)))
        .collect()
}

pub fn is_solvable(act: &LieAction) -> bool {
    act.is_solvable()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Growth {
    Polynomial,
    Exponential,
}

impl std::fmt::Display for Growth {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Growth::Polynomial => "Polynomial",
            Growth::Exponential => "Exponential",
        })
    }
}

/// Degree-capped search for identities of `A` failing in a target algebra.
#[derive(Debug, Clone)]
pub struct ExclusionEvidence {
    pub target: String,
    /// Degrees tested (in increasing order) before a certificate appeared or
    /// the cap or budget was reached.
    pub degrees_checked: Vec<usize>,
    /// First degree and polynomial (generator-alphabet exponents) that is an
    /// identity of `A` but not of the target.
    pub certificate: Option<(usize, LPolynomial)>,
    /// Set when a degree was skipped because it exceeded the budget.
    pub budget_stop: Option<usize>,
}

impl ExclusionEvidence {
    pub fn excluded(&self) -> bool {
        self.certificate.is_some()
    }
}

#[derive(Debug, Clone)]
pub struct GrowthReport {
    pub growth: Growth,
    pub exponent: ExponentReport,
    pub solvable: bool,
    /// Present only for solvable closures.
    pub evidence: Vec<ExclusionEvidence>,
}

impl GrowthReport {
    /// Polynomial growth should come with both targets excluded and
    /// exponential growth with at least one not excluded; `None` without
    /// evidence.
    pub fn evidence_agrees(&self) -> Option<bool> {
        if self.evidence.is_empty() {
            return None;
        }
        let all_excluded = self.evidence.iter().all(ExclusionEvidence::excluded);
        Some(all_excluded == (self.growth == Growth::Polynomial))
    }
}

fn search_certificate(
    alg: &StructureAlgebra,
    act: &LieAction,
    target: &StructureAlgebra,
    target_act: &LieAction,
    name: String,
    cfg: &EngineConfig,
) -> Result<ExclusionEvidence> {
    let mut ev = ExclusionEvidence {
        target: name,
        degrees_checked: Vec::new(),
        certificate: None,
        budget_stop: None,
    };
    for n in 1..=cfg.evidence_degree {
        match containment_check(alg, act, target, target_act, n, cfg) {
            Ok(r) => {
                ev.degrees_checked.push(n);
                if let Some(c) = r.certificate {
                    ev.certificate = Some((n, c));
                    break;
                }
            }
            Err(Error::SizeCap { .. }) => {
                ev.budget_stop = Some(n);
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(ev)
}

/// `UT₂` with every generator acting as zero, and `UT₂^ε` with generator `g`
/// acting as `ε = ad_{e22}` and the others as zero.
fn growth_targets(generators: usize) -> Result<Vec<(String, StructureAlgebra, LieAction)>> {
    let (a, ders) = ut(2)?;
    let zero = Matrix::zero(a.dim(), a.dim());
    let eps = ders
        .iter()
        .find(|d| d.name == "ad_e22")
        .map(|d| d.matrix.clone())
        .ok_or_else(|| Error::InternalVerificationFailed("ut(2) lacks ad_e22".into()))?;
    let named = |g: Option<usize>| -> Result<LieAction> {
        let gens = (0..generators)
            .map(|i| {
                let m: Matrix = if Some(i) == g { eps.clone() } else { zero.clone() };
                crate::algebra::Derivation::new(format!("g{}", i + 1), m)
            })
            .collect();
        crate::algebra::lie_closure(&a, gens)
    };
    let mut out = vec![("UT2".to_string(), a.clone(), named(None)?)];
    for g in 0..generators {
        out.push((
            format!("UT2^eps (generator {} as eps)", g + 1),
            a.clone(),
            named(Some(g))?,
        ));
    }
    Ok(out)
}

/// Polynomial iff `exp^L ≤ 1`. For solvable closures, also reports identities
/// of `A` up to `cfg.evidence_degree` that fail in `UT₂` and in `UT₂^ε`; this
/// is evidence only, since membership in a variety is decided degree by degree.
pub fn classify_growth(alg: &StructureAlgebra, act: &LieAction, cfg: &EngineConfig) -> Result<GrowthReport> {
    let exponent = exp_differential(alg, act)?;
    let growth = if exponent.value <= 1 {
        Growth::Polynomial
    } else {
        Growth::Exponential
    };
    let solvable = act.is_solvable();
    let mut evidence = Vec::new();
    if solvable {
        for (name, target, target_act) in growth_targets(act.generators().len())? {
            evidence.push(search_certificate(alg, act, &target, &target_act, name, cfg)?);
        }
    }
    Ok(GrowthReport {
        growth,
        exponent,
        solvable,
        evidence,
    })
}

//! Closed-form radio numbers for `S_n ⊠ C_m`, the explicit label rules that
//! accompany them, and valid labelings built from structured vertex orderings.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{all_pairs_distances, star_cycle_product, DistanceMatrix, Graph};
use crate::labeling::{greedy_from_ordering, verify, LabelingDocument, Method, RadioLabeling};

pub const DEFAULT_SEEDS: [u64; 4] = [0, 1, 2, 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(m: usize) -> Self {
        if m.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormulaResult {
    pub n: usize,
    pub m: usize,
    pub parity: Parity,
    pub value: u64,
}

/// Rejects `(n, m)` outside `n ≥ 2`, even `m ≥ 4`, odd `m ≥ 5`.
pub fn check_theorem_range(n: usize, m: usize) -> Result<Parity> {
    let range_err = |bound: &str| Error::TheoremRange {
        n,
        m,
        bound: bound.to_string(),
    };
    if n < 2 {
        return Err(range_err("n >= 2"));
    }
    match Parity::of(m) {
        Parity::Even if m < 4 => Err(range_err("m >= 4 for even m")),
        Parity::Odd if m < 5 => Err(range_err("m >= 5 for odd m")),
        parity => Ok(parity),
    }
}

/// Closed-form radio number:
///
/// * even `m`: `(m² + m(m−1) + (n−1)(m−2)) / 2`
/// * odd `m`: `(m² + 4mn + 5m − 8n + 18) / 2`
pub fn closed_form_rn(n: usize, m: usize) -> Result<FormulaResult> {
    let parity = check_theorem_range(n, m)?;
    let (n64, m64) = (n as u64, m as u64);
    let numerator = match parity {
        Parity::Even => m64 * m64 + m64 * (m64 - 1) + (n64 - 1) * (m64 - 2),
        // 5m + 18 ≥ 8n is not guaranteed, so subtract last.
        Parity::Odd => m64 * m64 + 4 * m64 * n64 + 5 * m64 + 18 - 8 * n64,
    };
    debug_assert!(numerator % 2 == 0);
    Ok(FormulaResult {
        n,
        m,
        parity,
        value: numerator / 2,
    })
}

/// Labels exactly as the theorem's explicit rules prescribe, with 1-based
/// substar `j` and leaf `k`:
///
/// * even `m`: `φ(c_j) = (j−1)·m/2`, `φ(v_j(k)) = φ(c_j) + m/2 + (k−1)(m−2)/2`
/// * odd `m`: `φ(c_j) = (j−1)(m−1)/2`, `φ(v_j(k)) = φ(c_j) + (m−1)/2 + (k−1)`
///
/// The result is not a radio labeling in general; run [`verify`] on it.
pub fn paper_literal_labeling(n: usize, m: usize) -> Result<RadioLabeling> {
    let parity = check_theorem_range(n, m)?;
    let (center_step, leaf_offset, leaf_step) = match parity {
        Parity::Even => (m / 2, m / 2, (m - 2) / 2),
        Parity::Odd => ((m - 1) / 2, (m - 1) / 2, 1),
    };
    let mut labels = Vec::with_capacity((n + 1) * m);
    for j in 0..m {
        let center = (j * center_step) as u64;
        labels.push(center);
        for k in 0..n {
            labels.push(center + (leaf_offset + k * leaf_step) as u64);
        }
    }
    RadioLabeling::new(labels, Method::PaperLiteral)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Antipodal,
    CriticalPath,
    Identity,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Antipodal, Variant::CriticalPath, Variant::Identity];

    pub fn as_str(&self) -> &'static str {
        match self {
            Variant::Antipodal => "antipodal",
            Variant::CriticalPath => "critical-path",
            Variant::Identity => "identity",
        }
    }

    pub fn applies_to(&self, m: usize) -> bool {
        *self != Variant::CriticalPath || m % 2 == 1
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "antipodal" => Ok(Variant::Antipodal),
            "critical-path" => Ok(Variant::CriticalPath),
            "identity" => Ok(Variant::Identity),
            other => Err(Error::Usage(format!(
                "unknown variant '{other}' (expected antipodal, critical-path or identity)"
            ))),
        }
    }
}

/// 0-based substar visit order for `variant`.
pub fn substar_order(m: usize, variant: Variant) -> Result<Vec<usize>> {
    if m < 3 {
        return Err(Error::InvalidParameter(format!("cycle needs m >= 3, got {m}")));
    }
    let order = match variant {
        Variant::Identity => (0..m).collect(),
        Variant::Antipodal => {
            let half = m / 2;
            let mut seen = vec![false; m];
            let mut order = Vec::with_capacity(m);
            for j in 0..m {
                for s in [j, (j + half) % m] {
                    if !seen[s] {
                        seen[s] = true;
                        order.push(s);
                    }
                }
            }
            order
        }
        Variant::CriticalPath => {
            if m.is_multiple_of(2) || m < 5 {
                return Err(Error::InvalidParameter(format!(
                    "critical-path ordering needs odd m >= 5, got {m}"
                )));
            }
            // Layers 1, (m+1)/2, m first, then the pairs (t, t + (m−1)/2)
            // for t = 2..=(m−1)/2 (1-based).
            let half = (m - 1) / 2;
            let mut order = vec![0, half, m - 1];
            for t in 1..half {
                order.push(t);
                order.push(t + half);
            }
            order
        }
    };
    Ok(order)
}

/// Vertex ordering for `S_n ⊠ C_m`: substars in [`substar_order`] order, each
/// emitting its center and then its leaves.
///
/// Seed 0 keeps the canonical leaf order; any other seed shuffles leaves
/// within each substar. In the critical-path variant the middle layer lists
/// leaves 2 and 3 first, then leaf 1, matching the per-vertex weights of the
/// critical path analysis.
pub fn heuristic_ordering(n: usize, m: usize, variant: Variant, seed: u64) -> Result<Vec<usize>> {
    if n == 0 {
        return Err(Error::InvalidParameter("star needs at least one leaf (n >= 1)".into()));
    }
    let layers = substar_order(m, variant)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let middle = (m - 1) / 2;
    let mut ordering = Vec::with_capacity((n + 1) * m);
    for j in layers {
        let base = j * (n + 1);
        let mut leaves: Vec<usize> = (1..=n).collect();
        if variant == Variant::CriticalPath && j == middle {
            leaves.sort_by_key(|&k| match k {
                2 | 3 => 0,
                1 => 1,
                _ => 2,
            });
        }
        if seed != 0 {
            leaves.shuffle(&mut rng);
        }
        ordering.push(base);
        ordering.extend(leaves.into_iter().map(|k| base + k));
    }
    Ok(ordering)
}

/// Which candidate a tournament picked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "method")]
pub enum Candidate {
    Exact,
    Heuristic { variant: Variant, seed: u64 },
    PaperLiteral,
}

impl Candidate {
    fn rank(&self) -> (u8, u64) {
        match *self {
            Candidate::Exact => (0, 0),
            Candidate::Heuristic { variant, seed } => {
                let r = match variant {
                    Variant::Antipodal => 1,
                    Variant::CriticalPath => 2,
                    Variant::Identity => 3,
                };
                (r, seed)
            }
            Candidate::PaperLiteral => (4, 0),
        }
    }

    /// Total order used to break span ties.
    pub fn tie_break(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Candidate::Exact => f.write_str("exact"),
            Candidate::Heuristic { variant, seed } => write!(f, "{variant}:seed={seed}"),
            Candidate::PaperLiteral => f.write_str("paper-literal"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionReport {
    pub n: usize,
    pub m: usize,
    pub labeling: RadioLabeling,
    pub formula_value: u64,
    pub achieved_span: u64,
    pub paper_literal_violations: usize,
    pub method_chosen: Candidate,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstructionDocument {
    #[serde(flatten)]
    pub labeling: LabelingDocument,
    pub formula_value: u64,
    pub paper_literal_violations: usize,
    pub method_chosen: String,
}

impl ConstructionReport {
    pub fn document(&self, g: &Graph, dm: &DistanceMatrix) -> Result<ConstructionDocument> {
        Ok(ConstructionDocument {
            labeling: LabelingDocument::new(g, dm, &self.labeling)?,
            formula_value: self.formula_value,
            paper_literal_violations: self.paper_literal_violations,
            method_chosen: self.method_chosen.to_string(),
        })
    }
}

/// Best valid labeling among every ordering variant × seed, plus the
/// paper-literal labeling if it happens to verify.
pub fn construct_best(n: usize, m: usize, seeds: &[u64]) -> Result<ConstructionReport> {
    let graph = star_cycle_product(n, m)?;
    let dm = all_pairs_distances(&graph)?;
    construct_best_on(&dm, n, m, seeds)
}

/// [`construct_best`] with a precomputed distance matrix of `S_n ⊠ C_m`.
pub fn construct_best_on(dm: &DistanceMatrix, n: usize, m: usize, seeds: &[u64]) -> Result<ConstructionReport> {
    let formula = closed_form_rn(n, m)?;
    let seeds: &[u64] = if seeds.is_empty() { &DEFAULT_SEEDS } else { seeds };

    let literal = paper_literal_labeling(n, m)?;
    let literal_violations = verify(dm, &literal)?.len();

    let jobs: Vec<Candidate> = Variant::ALL
        .iter()
        .filter(|v| v.applies_to(m))
        .flat_map(|&variant| seeds.iter().map(move |&seed| Candidate::Heuristic { variant, seed }))
        .collect();

    let mut candidates: Vec<(Candidate, RadioLabeling)> = jobs
        .into_par_iter()
        .map(|cand| {
            let Candidate::Heuristic { variant, seed } = cand else { unreachable!() };
            let ordering = heuristic_ordering(n, m, variant, seed)?;
            Ok((cand, greedy_from_ordering(dm, &ordering)?))
        })
        .collect::<Result<_>>()?;
    if literal_violations == 0 {
        candidates.push((Candidate::PaperLiteral, literal));
    }

    let (method_chosen, labeling) = candidates
        .into_iter()
        .min_by(|(ca, la), (cb, lb)| la.span().cmp(&lb.span()).then_with(|| ca.tie_break(cb)))
        .expect("at least one ordering variant applies");

    Ok(ConstructionReport {
        n,
        m,
        achieved_span: labeling.span(),
        labeling,
        formula_value: formula.value,
        paper_literal_violations: literal_violations,
        method_chosen,
    })
}

/// Best valid labeling using a single ordering variant over `seeds`.
pub fn construct_with_variant(n: usize, m: usize, variant: Variant, seeds: &[u64]) -> Result<ConstructionReport> {
    let formula = closed_form_rn(n, m)?;
    let graph = star_cycle_product(n, m)?;
    let dm = all_pairs_distances(&graph)?;
    let seeds: &[u64] = if seeds.is_empty() { &DEFAULT_SEEDS } else { seeds };
    let literal_violations = verify(&dm, &paper_literal_labeling(n, m)?)?.len();

    let mut best: Option<(u64, RadioLabeling)> = None;
    for &seed in seeds {
        let labeling = greedy_from_ordering(&dm, &heuristic_ordering(n, m, variant, seed)?)?;
        if best.as_ref().is_none_or(|(_, b)| labeling.span() < b.span()) {
            best = Some((seed, labeling));
        }
    }
    let (seed, labeling) = best.expect("seed list is non-empty");
    Ok(ConstructionReport {
        n,
        m,
        achieved_span: labeling.span(),
        labeling,
        formula_value: formula.value,
        paper_literal_violations: literal_violations,
        method_chosen: Candidate::Heuristic { variant, seed },
    })
}

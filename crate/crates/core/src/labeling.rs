//! Radio labelings: the pairwise gap condition, verification, spans and the
//! minimal labeling induced by a vertex ordering.
//!
//! A labeling `φ` of a graph with diameter `D` is a radio labeling when every
//! pair of distinct vertices satisfies `|φ(u) − φ(v)| ≥ D + 1 − d(u, v)`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{build_cycle, build_star, star_cycle_product, Graph, GraphKind, VertexKey};
use crate::graphs::DistanceMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    PaperLiteral,
    OrderingGreedy,
    Exact,
    External,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::PaperLiteral => "paper-literal",
            Method::OrderingGreedy => "ordering-greedy",
            Method::Exact => "exact",
            Method::External => "external",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper-literal" => Ok(Method::PaperLiteral),
            "ordering-greedy" => Ok(Method::OrderingGreedy),
            "exact" => Ok(Method::Exact),
            "external" => Ok(Method::External),
            other => Err(Error::Parse(format!("unknown labeling method '{other}'"))),
        }
    }
}

/// Labels indexed by vertex id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadioLabeling {
    labels: Vec<u64>,
    method: Method,
}

impl RadioLabeling {
    pub fn new(labels: Vec<u64>, method: Method) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidParameter("labeling has no vertices".into()));
        }
        Ok(Self { labels, method })
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> u64 {
        self.labels[v]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn min_label(&self) -> u64 {
        self.labels.iter().copied().min().unwrap_or(0)
    }

    pub fn max_label(&self) -> u64 {
        self.labels.iter().copied().max().unwrap_or(0)
    }

    pub fn span(&self) -> u64 {
        self.max_label() - self.min_label()
    }

    pub fn is_normalized(&self) -> bool {
        self.min_label() == 0
    }

    /// Shifts every label so that the minimum is 0.
    pub fn normalized(&self) -> Self {
        let min = self.min_label();
        Self {
            labels: self.labels.iter().map(|&l| l - min).collect(),
            method: self.method,
        }
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }
}

/// A pair whose label gap is smaller than the radio condition requires.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub u: usize,
    pub v: usize,
    pub distance: u32,
    pub required_gap: u64,
    pub actual_gap: u64,
}

/// `diam + 1 − distance`, defined for `1 ≤ distance ≤ diam`.
pub fn required_gap(diam: u32, distance: u32) -> Result<u64> {
    if distance == 0 || distance > diam {
        return Err(Error::InvalidParameter(format!(
            "distance {distance} is outside 1..={diam}"
        )));
    }
    Ok(u64::from(diam + 1 - distance))
}

/// Max label minus min label.
pub fn span(labels: &[u64]) -> Result<u64> {
    let (min, max) = labels
        .iter()
        .fold(None, |acc: Option<(u64, u64)>, &l| match acc {
            None => Some((l, l)),
            Some((lo, hi)) => Some((lo.min(l), hi.max(l))),
        })
        .ok_or_else(|| Error::InvalidParameter("span of an empty labeling".into()))?;
    Ok(max - min)
}

/// Every pair `(u, v)`, `u < v`, violating the radio condition, in `(u, v)` order.
pub fn verify(dm: &DistanceMatrix, phi: &RadioLabeling) -> Result<Vec<Violation>> {
    let size = dm.size();
    if phi.len() != size {
        return Err(Error::MalformedLabeling(format!(
            "labeling covers {} vertices, graph has {size}",
            phi.len()
        )));
    }
    let reach = u64::from(dm.diameter()) + 1;
    let labels = phi.labels();
    let per_row: Vec<Vec<Violation>> = (0..size)
        .into_par_iter()
        .map(|u| {
            let row = dm.row(u);
            (u + 1..size)
                .filter_map(|v| {
                    let distance = row[v];
                    let required = reach - u64::from(distance);
                    let actual = labels[u].abs_diff(labels[v]);
                    (actual < required).then_some(Violation {
                        u,
                        v,
                        distance,
                        required_gap: required,
                        actual_gap: actual,
                    })
                })
                .collect()
        })
        .collect();
    Ok(per_row.into_iter().flatten().collect())
}

/// Checks that `ordering` is a permutation of `0..size`.
pub fn check_permutation(ordering: &[usize], size: usize) -> Result<()> {
    if ordering.len() != size {
        return Err(Error::InvalidParameter(format!(
            "ordering has {} entries, expected {size}",
            ordering.len()
        )));
    }
    let mut seen = vec![false; size];
    for &v in ordering {
        if v >= size || std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidParameter(format!(
                "ordering is not a permutation (vertex {v})"
            )));
        }
    }
    Ok(())
}

/// Smallest labels that keep `ordering` label-increasing:
/// `φ(x_1) = 0`, `φ(x_i) = max_{j<i} φ(x_j) + diam + 1 − d(x_i, x_j)`.
pub fn greedy_from_ordering(dm: &DistanceMatrix, ordering: &[usize]) -> Result<RadioLabeling> {
    check_permutation(ordering, dm.size())?;
    let reach = u64::from(dm.diameter()) + 1;
    let mut labels = vec![0u64; dm.size()];
    for (i, &x) in ordering.iter().enumerate() {
        let row = dm.row(x);
        labels[x] = ordering[..i]
            .iter()
            .map(|&y| labels[y] + reach - u64::from(row[y]))
            .max()
            .unwrap_or(0);
    }
    RadioLabeling::new(labels, Method::OrderingGreedy)
}

/// Row of the odd-cycle pair taxonomy, keyed by distance.
///
/// For small `m` the distance ranges of the rows overlap (for `m = 5`, C2 and
/// C4 both describe adjacent pairs); the first matching row in the order
/// C1, C2, C4, C3 wins. The rows agree on the required gap wherever they
/// overlap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairClass {
    /// `d = (m−1)/2`, required gap 1.
    C1,
    /// `d = (m−3)/2`, required gap 2.
    C2,
    /// `1 ≤ d < (m−3)/2`, required gap `(m+1)/2 − d`.
    C3,
    /// Adjacent, required gap `(m−1)/2`.
    C4,
}

impl PairClass {
    pub fn classify(m: usize, distance: u32) -> Option<Self> {
        if m < 5 || m.is_multiple_of(2) || distance == 0 {
            return None;
        }
        let d = distance as usize;
        let half = (m - 1) / 2;
        if d == half {
            Some(PairClass::C1)
        } else if d == half - 1 {
            Some(PairClass::C2)
        } else if d == 1 {
            Some(PairClass::C4)
        } else if d < half - 1 {
            Some(PairClass::C3)
        } else {
            None
        }
    }

    /// The table's required-difference column.
    pub fn tabulated_gap(&self, m: usize, distance: u32) -> u64 {
        match self {
            PairClass::C1 => 1,
            PairClass::C2 => 2,
            PairClass::C3 => (m.div_ceil(2) - distance as usize) as u64,
            PairClass::C4 => ((m - 1) / 2) as u64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelEntry {
    pub vertex: Vec<usize>,
    /// Signed so that negative input is reported as a labeling error rather
    /// than a JSON type error.
    pub label: i64,
}

/// Serialized form of a labeling.
///
/// Product vertices render as `[star_index, cycle_index]` with the cycle
/// index 1-based; vertices of other graphs render as `[id]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelingDocument {
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub diameter: u32,
    pub method: Method,
    pub span: u64,
    pub valid: bool,
    pub labels: Vec<LabelEntry>,
}

impl LabelingDocument {
    /// Normalizes `phi` and records whether it verifies.
    pub fn new(g: &Graph, dm: &DistanceMatrix, phi: &RadioLabeling) -> Result<Self> {
        let valid = verify(dm, phi)?.is_empty();
        let phi = phi.normalized();
        let labels = (0..g.vertex_count())
            .map(|v| LabelEntry {
                vertex: vertex_coordinates(g, v),
                label: phi.label(v) as i64,
            })
            .collect();
        Ok(Self {
            n: g.kind().n(),
            m: g.kind().m(),
            diameter: dm.diameter(),
            method: phi.method(),
            span: phi.span(),
            valid,
            labels,
        })
    }

    /// Rebuilds the graph named by `n`/`m` and the labeling over it.
    ///
    /// Entries may appear in any order but must cover every vertex once.
    pub fn into_labeling(self) -> Result<(Graph, RadioLabeling)> {
        let graph = match (self.n, self.m) {
            (Some(n), Some(m)) => star_cycle_product(n, m)?,
            (Some(n), None) => build_star(n)?,
            (None, Some(m)) => build_cycle(m)?,
            (None, None) => {
                return Err(Error::MalformedLabeling(
                    "labeling document names neither n nor m".into(),
                ))
            }
        };
        let mut labels: Vec<Option<u64>> = vec![None; graph.vertex_count()];
        for entry in &self.labels {
            let v = vertex_from_coordinates(&graph, &entry.vertex)?;
            let label = u64::try_from(entry.label).map_err(|_| {
                Error::MalformedLabeling(format!("vertex {:?} has negative label {}", entry.vertex, entry.label))
            })?;
            if labels[v].replace(label).is_some() {
                return Err(Error::MalformedLabeling(format!(
                    "vertex {:?} is labeled twice",
                    entry.vertex
                )));
            }
        }
        let labels = labels
            .into_iter()
            .enumerate()
            .map(|(v, l)| {
                l.ok_or_else(|| {
                    Error::MalformedLabeling(format!("vertex {} has no label", graph.vertex_label(v)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let phi = RadioLabeling::new(labels, self.method)?;
        Ok((graph, phi))
    }
}

fn vertex_coordinates(g: &Graph, v: usize) -> Vec<usize> {
    match (g.kind(), g.key(v)) {
        (GraphKind::StrongProduct { .. }, Some(key)) => vec![key.star_index, key.cycle_index + 1],
        _ => vec![v],
    }
}

fn vertex_from_coordinates(g: &Graph, coords: &[usize]) -> Result<usize> {
    let bad = || Error::MalformedLabeling(format!("vertex {coords:?} does not exist in this graph"));
    match (g.kind(), coords) {
        (GraphKind::StrongProduct { .. }, &[i, j]) if j >= 1 => {
            g.vertex_id(VertexKey::new(i, j - 1)).ok_or_else(bad)
        }
        (GraphKind::StrongProduct { .. }, _) => Err(bad()),
        (_, &[v]) if v < g.vertex_count() => Ok(v),
        _ => Err(bad()),
    }
}

/// Parses labeling JSON.
///
/// Syntax and schema problems are [`Error::Parse`]; labels that do not form
/// a labeling of the named graph (negative, missing, duplicated, unknown
/// vertex) are [`Error::MalformedLabeling`].
pub fn parse_labeling_json(bytes: &[u8]) -> Result<(Graph, RadioLabeling)> {
    let doc: LabelingDocument =
        serde_json::from_slice(bytes).map_err(|e| Error::Parse(format!("labeling JSON: {e}")))?;
    doc.into_labeling()
}

/// Violations as CSV (`u,v,distance,required_gap,actual_gap`) with vertex
/// labels in `s<i>c<j>` form.
pub fn violations_csv(g: &Graph, violations: &[Violation]) -> String {
    let mut out = String::from("u,v,distance,required_gap,actual_gap\n");
    for x in violations {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            g.vertex_label(x.u),
            g.vertex_label(x.v),
            x.distance,
            x.required_gap,
            x.actual_gap
        ));
    }
    out
}

//! Exact radio numbers on small graphs.
//!
//! Both solvers search over vertex orderings: every radio labeling sorts its
//! vertices into an order, and the greedy completion of that order never has
//! a larger span. The brute-force oracle enumerates all orderings; the
//! branch-and-bound solver grows ordering prefixes and prunes on a simple
//! span bound and on dominated prefixes.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::construction::{check_theorem_range, construct_best_on, heuristic_ordering, Variant};
use crate::error::{Error, Result};
use crate::graphs::{all_pairs_distances, DistanceMatrix, Graph, GraphKind};
use crate::labeling::{greedy_from_ordering, LabelingDocument, Method, RadioLabeling};

/// Largest graph the brute-force oracle accepts.
pub const BRUTE_FORCE_CAP: usize = 10;

const BUDGET_CHECK_INTERVAL: u64 = 1 << 10;
const MEMO_VERTEX_LIMIT: usize = 128;
const MEMO_ENTRY_LIMIT: usize = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExactStatus {
    Proven,
    BudgetExceededUpperBound,
}

impl ExactStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            ExactStatus::Proven => "proven",
            ExactStatus::BudgetExceededUpperBound => "budget-exceeded-upper-bound",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    pub optimum: u64,
    pub labeling: RadioLabeling,
    pub status: ExactStatus,
    pub nodes_explored: u64,
    pub elapsed: Duration,
    /// Incumbent spans in the order they were found, starting with the
    /// initial one.
    pub incumbent_trace: Vec<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExactDocument {
    pub optimum: u64,
    pub status: ExactStatus,
    pub nodes_explored: u64,
    pub elapsed_ms: u64,
    pub lower_bound: u64,
    pub formula_value: Option<u64>,
    pub labeling: LabelingDocument,
}

impl ExactResult {
    pub fn document(&self, g: &Graph, dm: &DistanceMatrix) -> Result<ExactDocument> {
        let formula_value = match g.kind() {
            GraphKind::StrongProduct { n, m } => crate::construction::closed_form_rn(n, m).ok().map(|f| f.value),
            _ => None,
        };
        Ok(ExactDocument {
            optimum: self.optimum,
            status: self.status,
            nodes_explored: self.nodes_explored,
            elapsed_ms: self.elapsed.as_millis() as u64,
            lower_bound: trivial_lower_bound(dm),
            formula_value,
            labeling: LabelingDocument::new(g, dm, &self.labeling)?,
        })
    }
}

/// `max(|V| − 1, diam)`: sorted labels are distinct, and an adjacent pair
/// needs a gap of `diam`.
pub fn trivial_lower_bound(dm: &DistanceMatrix) -> u64 {
    let size = dm.size() as u64;
    if size <= 1 {
        return 0;
    }
    (size - 1).max(u64::from(dm.diameter()))
}

/// Minimum span over the greedy completions of every vertex ordering.
pub fn brute_force_rn(dm: &DistanceMatrix) -> Result<ExactResult> {
    let size = dm.size();
    if size > BRUTE_FORCE_CAP {
        return Err(Error::OracleSize {
            vertices: size,
            cap: BRUTE_FORCE_CAP,
        });
    }
    let start = Instant::now();
    let mut ordering: Vec<usize> = (0..size).collect();
    let mut best = greedy_from_ordering(dm, &ordering)?;
    let mut trace = vec![best.span()];
    let mut visited = 1u64;
    while next_permutation(&mut ordering) {
        visited += 1;
        let phi = greedy_from_ordering(dm, &ordering)?;
        if phi.span() < best.span() {
            best = phi;
            trace.push(best.span());
        }
    }
    Ok(ExactResult {
        optimum: best.span(),
        labeling: best.with_method(Method::Exact),
        status: ExactStatus::Proven,
        nodes_explored: visited,
        elapsed: start.elapsed(),
        incumbent_trace: trace,
    })
}

/// Advances to the next permutation in lexicographic order.
fn next_permutation(xs: &mut [usize]) -> bool {
    let Some(i) = xs.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = xs.iter().rposition(|&x| x > xs[i]).expect("pivot has a successor");
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}

/// Starting labeling for the search: the construction tournament for
/// `S_n ⊠ C_m` inside the theorem range, the identity ordering otherwise.
pub fn initial_incumbent(g: &Graph, dm: &DistanceMatrix, seeds: &[u64]) -> Result<RadioLabeling> {
    if let GraphKind::StrongProduct { n, m } = g.kind() {
        if check_theorem_range(n, m).is_ok() {
            return Ok(construct_best_on(dm, n, m, seeds)?.labeling);
        }
        let ordering = heuristic_ordering(n, m, Variant::Identity, 0)?;
        return greedy_from_ordering(dm, &ordering);
    }
    let identity: Vec<usize> = (0..dm.size()).collect();
    greedy_from_ordering(dm, &identity)
}

/// Exact radio number of `g` within `budget`.
pub fn exact_rn(g: &Graph, budget: Duration, seeds: &[u64]) -> Result<ExactResult> {
    let dm = all_pairs_distances(g)?;
    let incumbent = initial_incumbent(g, &dm, seeds)?;
    Ok(branch_and_bound(&dm, incumbent, budget))
}

/// Depth-first search over label-increasing orderings, seeded with a valid
/// `incumbent`.
///
/// A prefix whose last label plus the number of unplaced vertices reaches the
/// incumbent is cut. Two prefixes over the same vertex set whose recent
/// labels (those still able to constrain a future vertex) agree relative to
/// their maxima have identical completions, so the one with the larger
/// maximum is cut as well.
pub fn branch_and_bound(dm: &DistanceMatrix, incumbent: RadioLabeling, budget: Duration) -> ExactResult {
    let start = Instant::now();
    let mut search = Search::new(dm, incumbent, start, budget);
    let proven = if budget.is_zero() {
        false
    } else if search.best_span <= trivial_lower_bound(dm) {
        true
    } else {
        search.run()
    };
    let labeling = RadioLabeling::new(search.best_labels, Method::Exact).expect("non-empty graph");
    ExactResult {
        optimum: search.best_span,
        labeling,
        status: if proven {
            ExactStatus::Proven
        } else {
            ExactStatus::BudgetExceededUpperBound
        },
        nodes_explored: search.nodes,
        elapsed: start.elapsed(),
        incumbent_trace: search.trace,
    }
}

struct Search<'a> {
    dm: &'a DistanceMatrix,
    reach: u64,
    size: usize,
    best_span: u64,
    best_labels: Vec<u64>,
    trace: Vec<u64>,
    labels: Vec<u64>,
    placed: Vec<bool>,
    order: Vec<usize>,
    /// `lower[depth][x]`: least label `x` could take after the first `depth`
    /// placements.
    lower: Vec<Vec<u64>>,
    memo: HashMap<(u128, Vec<u32>), u64>,
    nodes: u64,
    start: Instant,
    budget: Duration,
    out_of_time: bool,
}

impl<'a> Search<'a> {
    fn new(dm: &'a DistanceMatrix, incumbent: RadioLabeling, start: Instant, budget: Duration) -> Self {
        let size = dm.size();
        let incumbent = incumbent.normalized();
        Self {
            dm,
            reach: u64::from(dm.diameter()) + 1,
            size,
            best_span: incumbent.span(),
            best_labels: incumbent.labels().to_vec(),
            trace: vec![incumbent.span()],
            labels: vec![0; size],
            placed: vec![false; size],
            order: Vec::with_capacity(size),
            lower: vec![vec![0; size]; size + 1],
            memo: HashMap::new(),
            nodes: 0,
            start,
            budget,
            out_of_time: false,
        }
    }

    /// Returns true when the search space was exhausted.
    fn run(&mut self) -> bool {
        self.expand(0);
        !self.out_of_time
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes.is_multiple_of(BUDGET_CHECK_INTERVAL) && self.start.elapsed() >= self.budget {
            self.out_of_time = true;
        }
        !self.out_of_time
    }

    fn expand(&mut self, depth: usize) {
        if !self.tick() {
            return;
        }
        let remaining = self.size - depth;
        if remaining == 0 {
            let span = self.order.last().map_or(0, |&v| self.labels[v]);
            if span < self.best_span {
                self.best_span = span;
                self.best_labels.clone_from(&self.labels);
                self.trace.push(span);
            }
            return;
        }
        if depth > 0 && !self.record_state(depth) {
            return;
        }

        let mut children: Vec<(u64, usize)> = (0..self.size)
            .filter(|&x| !self.placed[x])
            .map(|x| (self.lower[depth][x], x))
            .collect();
        children.sort_unstable();

        for (label, x) in children {
            // Every later vertex needs at least one more unit.
            if label + (remaining as u64 - 1) >= self.best_span {
                break;
            }
            self.place(depth, x, label);
            self.expand(depth + 1);
            self.unplace(x);
            if self.out_of_time {
                return;
            }
        }
    }

    fn place(&mut self, depth: usize, x: usize, label: u64) {
        self.labels[x] = label;
        self.placed[x] = true;
        self.order.push(x);
        let row = self.dm.row(x);
        let (head, tail) = self.lower.split_at_mut(depth + 1);
        let (prev, next) = (&head[depth], &mut tail[0]);
        for y in 0..self.size {
            next[y] = prev[y].max(label + self.reach - u64::from(row[y]));
        }
    }

    fn unplace(&mut self, x: usize) {
        self.placed[x] = false;
        self.order.pop();
    }

    /// Dominance check. Returns false when an equivalent prefix with a
    /// smaller or equal maximum label has already been expanded.
    fn record_state(&mut self, depth: usize) -> bool {
        if self.size > MEMO_VERTEX_LIMIT {
            return true;
        }
        let max = self.labels[self.order[depth - 1]];
        let diam = self.reach - 1;
        let mut mask = 0u128;
        let mut signature = Vec::new();
        for &y in &self.order {
            mask |= 1u128 << y;
            let offset = max - self.labels[y];
            if offset < diam {
                signature.push(((y as u32) << 16) | offset as u32);
            }
        }
        signature.sort_unstable();
        match self.memo.get_mut(&(mask, signature.clone())) {
            Some(seen) if *seen <= max => false,
            Some(seen) => {
                *seen = max;
                true
            }
            None => {
                if self.memo.len() < MEMO_ENTRY_LIMIT {
                    self.memo.insert((mask, signature), max);
                }
                true
            }
        }
    }
}

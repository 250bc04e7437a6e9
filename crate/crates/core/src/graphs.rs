//! Stars, cycles and their strong product, plus hop-distance matrices and
//! graph serialization.
//!
//! Vertices are dense `usize` ids. In a strong product `G1 ⊠ G2` the vertex
//! `(a, b)` gets id `b * |V1| + a`, so ids enumerate the product layer by
//! layer: for `S_n ⊠ C_m` that is substar 0 (center first, then leaves
//! `1..=n`), then substar 1, and so on.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coordinates of a product vertex.
///
/// For `S_n ⊠ C_m`, `star_index` 0 is the star center and `1..=n` are the
/// leaves; `cycle_index` is the 0-based position on the cycle. For other
/// products the fields are simply the first and second factor ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexKey {
    pub star_index: usize,
    pub cycle_index: usize,
}

impl VertexKey {
    pub fn new(star_index: usize, cycle_index: usize) -> Self {
        Self {
            star_index,
            cycle_index,
        }
    }
}

impl fmt::Display for VertexKey {
    /// Renders the 1-based substar index used in reports: `s<i>c<j>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}c{}", self.star_index, self.cycle_index + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphKind {
    Star { n: usize },
    Cycle { m: usize },
    /// `S_n ⊠ C_m`.
    StrongProduct { n: usize, m: usize },
    Generic,
}

impl GraphKind {
    pub fn tag(&self) -> &'static str {
        match self {
            GraphKind::Star { .. } => "star",
            GraphKind::Cycle { .. } => "cycle",
            GraphKind::StrongProduct { .. } => "strong_product",
            GraphKind::Generic => "generic",
        }
    }

    pub fn n(&self) -> Option<usize> {
        match *self {
            GraphKind::Star { n } | GraphKind::StrongProduct { n, .. } => Some(n),
            _ => None,
        }
    }

    pub fn m(&self) -> Option<usize> {
        match *self {
            GraphKind::Cycle { m } | GraphKind::StrongProduct { m, .. } => Some(m),
            _ => None,
        }
    }
}

/// Undirected simple graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    kind: GraphKind,
    keys: Option<Vec<VertexKey>>,
    /// Sorted, each pair stored as `(low, high)`.
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a generic graph from an edge list. Self-loops, duplicate edges
    /// and out-of-range endpoints are rejected.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::assemble(GraphKind::Generic, None, vertex_count, edges.to_vec())
    }

    fn assemble(
        kind: GraphKind,
        keys: Option<Vec<VertexKey>>,
        vertex_count: usize,
        raw_edges: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let mut edges = Vec::with_capacity(raw_edges.len());
        for (a, b) in raw_edges {
            if a >= vertex_count || b >= vertex_count {
                return Err(Error::InvalidParameter(format!(
                    "edge ({a}, {b}) references a vertex outside 0..{vertex_count}"
                )));
            }
            if a == b {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {a}")));
            }
            edges.push((a.min(b), a.max(b)));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(a, b) in &edges {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self {
            kind,
            keys,
            edges,
            adjacency,
        })
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Product coordinates of `v`, if this graph came from a strong product.
    pub fn key(&self, v: usize) -> Option<VertexKey> {
        self.keys.as_ref().map(|k| k[v])
    }

    pub fn keys(&self) -> Option<&[VertexKey]> {
        self.keys.as_deref()
    }

    /// Inverse of [`Graph::key`] for `S_n ⊠ C_m`.
    pub fn vertex_id(&self, key: VertexKey) -> Option<usize> {
        match self.kind {
            GraphKind::StrongProduct { n, m } if key.star_index <= n && key.cycle_index < m => {
                Some(key.cycle_index * (n + 1) + key.star_index)
            }
            _ => None,
        }
    }

    /// Vertex ids of substar `j` (0-based), center first.
    pub fn substar(&self, j: usize) -> Option<std::ops::Range<usize>> {
        match self.kind {
            GraphKind::StrongProduct { n, m } if j < m => Some(j * (n + 1)..(j + 1) * (n + 1)),
            _ => None,
        }
    }

    /// True for `S_1`, `C_3`, and products built from them. These are
    /// constructible, but the closed forms do not cover them.
    pub fn outside_paper_range(&self) -> bool {
        match self.kind {
            GraphKind::Star { n } => n < 2,
            GraphKind::Cycle { m } => m < 4,
            GraphKind::StrongProduct { n, m } => n < 2 || m < 4,
            GraphKind::Generic => false,
        }
    }

    /// Human-readable vertex label used by DOT export and violation reports.
    pub fn vertex_label(&self, v: usize) -> String {
        match (self.kind, self.key(v)) {
            (_, Some(key)) => key.to_string(),
            (GraphKind::Star { .. }, None) => format!("s{v}"),
            (GraphKind::Cycle { .. }, None) => format!("c{}", v + 1),
            _ => format!("v{v}"),
        }
    }
}

/// Star `S_n`: center 0 joined to leaves `1..=n`.
pub fn build_star(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("star needs at least one leaf (n >= 1)".into()));
    }
    let edges = (1..=n).map(|leaf| (0, leaf)).collect();
    Graph::assemble(GraphKind::Star { n }, None, n + 1, edges)
}

/// Cycle `C_m` on vertices `0..m`.
pub fn build_cycle(m: usize) -> Result<Graph> {
    if m < 3 {
        return Err(Error::InvalidParameter(format!("cycle needs m >= 3, got {m}")));
    }
    let edges = (0..m).map(|j| (j, (j + 1) % m)).collect();
    Graph::assemble(GraphKind::Cycle { m }, None, m, edges)
}

/// Strong product `g1 ⊠ g2`.
///
/// `(a1, a2) ~ (b1, b2)` iff the pair differs and each coordinate is either
/// equal or adjacent in its factor.
pub fn strong_product(g1: &Graph, g2: &Graph) -> Result<Graph> {
    let (n1, n2) = (g1.vertex_count(), g2.vertex_count());
    if n1 == 0 || n2 == 0 {
        return Err(Error::InvalidParameter("strong product of an empty graph".into()));
    }
    let id = |a: usize, b: usize| b * n1 + a;

    let mut edges = Vec::with_capacity(n1 * g2.edge_count() + n2 * g1.edge_count() + 2 * g1.edge_count() * g2.edge_count());
    // a1 = b1, a2 ~ b2
    for &(x, y) in g2.edges() {
        for a in 0..n1 {
            edges.push((id(a, x), id(a, y)));
        }
    }
    // a2 = b2, a1 ~ b1
    for &(x, y) in g1.edges() {
        for b in 0..n2 {
            edges.push((id(x, b), id(y, b)));
        }
    }
    // a1 ~ b1, a2 ~ b2: both diagonals of each edge square
    for &(x1, y1) in g1.edges() {
        for &(x2, y2) in g2.edges() {
            edges.push((id(x1, x2), id(y1, y2)));
            edges.push((id(x1, y2), id(y1, x2)));
        }
    }

    let keys = (0..n2)
        .flat_map(|b| (0..n1).map(move |a| VertexKey::new(a, b)))
        .collect();
    let kind = match (g1.kind(), g2.kind()) {
        (GraphKind::Star { n }, GraphKind::Cycle { m }) => GraphKind::StrongProduct { n, m },
        _ => GraphKind::Generic,
    };
    Graph::assemble(kind, Some(keys), n1 * n2, edges)
}

/// `S_n ⊠ C_m`.
pub fn star_cycle_product(n: usize, m: usize) -> Result<Graph> {
    strong_product(&build_star(n)?, &build_cycle(m)?)
}

/// Dense all-pairs hop distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    size: usize,
    dist: Vec<u32>,
    diameter: u32,
}

impl DistanceMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn diameter(&self) -> u32 {
        self.diameter
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.size + v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.dist[u * self.size..(u + 1) * self.size]
    }
}

/// Breadth-first search from every vertex.
pub fn all_pairs_distances(g: &Graph) -> Result<DistanceMatrix> {
    let size = g.vertex_count();
    let rows: Vec<Vec<u32>> = (0..size)
        .into_par_iter()
        .map(|source| bfs(g, source))
        .collect();

    let mut dist = Vec::with_capacity(size * size);
    for (u, row) in rows.into_iter().enumerate() {
        if let Some(v) = row.iter().position(|&d| d == u32::MAX) {
            return Err(Error::Disconnected { u, v });
        }
        dist.extend(row);
    }
    let diameter = dist.iter().copied().max().unwrap_or(0);
    Ok(DistanceMatrix {
        size,
        dist,
        diameter,
    })
}

fn bfs(g: &Graph, source: usize) -> Vec<u32> {
    let mut dist = vec![u32::MAX; g.vertex_count()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let next = dist[u] + 1;
        for &w in g.neighbors(u) {
            if dist[w] == u32::MAX {
                dist[w] = next;
                queue.push_back(w);
            }
        }
    }
    dist
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    AdjacencyJson,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "json" | "adjacency-json" => Ok(ExportFormat::AdjacencyJson),
            other => Err(Error::Usage(format!(
                "unknown graph format '{other}' (expected dot or json)"
            ))),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct AdjacencyDoc {
    kind: String,
    n: Option<usize>,
    m: Option<usize>,
    vertex_count: usize,
    edges: Vec<[usize; 2]>,
}

pub fn export_graph(g: &Graph, format: ExportFormat) -> Vec<u8> {
    match format {
        ExportFormat::Dot => to_dot(g).into_bytes(),
        ExportFormat::AdjacencyJson => {
            let doc = AdjacencyDoc {
                kind: g.kind().tag().to_string(),
                n: g.kind().n(),
                m: g.kind().m(),
                vertex_count: g.vertex_count(),
                edges: g.edges().iter().map(|&(a, b)| [a, b]).collect(),
            };
            let mut out = serde_json::to_vec(&doc).expect("adjacency document serializes");
            out.push(b'\n');
            out
        }
    }
}

fn to_dot(g: &Graph) -> String {
    use std::fmt::Write;

    let name = match g.kind() {
        GraphKind::Star { n } => format!("S{n}"),
        GraphKind::Cycle { m } => format!("C{m}"),
        GraphKind::StrongProduct { n, m } => format!("S{n}xC{m}"),
        GraphKind::Generic => "G".to_string(),
    };
    let mut out = String::new();
    writeln!(out, "graph \"{name}\" {{").unwrap();
    for v in 0..g.vertex_count() {
        writeln!(out, "  {};", g.vertex_label(v)).unwrap();
    }
    for &(a, b) in g.edges() {
        writeln!(out, "  {} -- {};", g.vertex_label(a), g.vertex_label(b)).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Reads the adjacency JSON written by [`export_graph`].
///
/// Star, cycle and strong-product documents are rebuilt from `n`/`m` and
/// must list exactly the canonical edge set.
pub fn parse_adjacency_json(bytes: &[u8]) -> Result<Graph> {
    let doc: AdjacencyDoc =
        serde_json::from_slice(bytes).map_err(|e| Error::Parse(format!("graph JSON: {e}")))?;
    let need = |field: &str, value: Option<usize>| {
        value.ok_or_else(|| Error::Parse(format!("graph JSON: kind '{}' requires field '{field}'", doc.kind)))
    };
    let edges: Vec<(usize, usize)> = doc.edges.iter().map(|e| (e[0], e[1])).collect();

    let graph = match doc.kind.as_str() {
        "star" => build_star(need("n", doc.n)?)?,
        "cycle" => build_cycle(need("m", doc.m)?)?,
        "strong_product" => star_cycle_product(need("n", doc.n)?, need("m", doc.m)?)?,
        "generic" => return Graph::from_edges(doc.vertex_count, &edges),
        other => return Err(Error::Parse(format!("graph JSON: unknown kind '{other}'"))),
    };
    if graph.vertex_count() != doc.vertex_count {
        return Err(Error::Parse(format!(
            "graph JSON: vertex_count {} does not match {} for kind '{}'",
            doc.vertex_count,
            graph.vertex_count(),
            doc.kind
        )));
    }
    let mut normalized: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    normalized.sort_unstable();
    if normalized != graph.edges() {
        return Err(Error::Parse(format!(
            "graph JSON: edges do not match the '{}' construction",
            doc.kind
        )));
    }
    Ok(graph)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(k: usize) -> Graph {
        let edges: Vec<_> = (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect();
        Graph::from_edges(k, &edges).unwrap()
    }

    #[test]
    fn star_shapes() {
        let s4 = build_star(4).unwrap();
        assert_eq!(s4.vertex_count(), 5);
        assert_eq!(s4.edge_count(), 4);
        assert_eq!(s4.degree(0), 4);
        assert!(!s4.is_adjacent(1, 2));

        let s1 = build_star(1).unwrap();
        assert_eq!((s1.vertex_count(), s1.edge_count()), (2, 1));
        assert_eq!(all_pairs_distances(&s1).unwrap().diameter(), 1);
        assert!(s1.outside_paper_range());

        let s2 = build_star(2).unwrap();
        let dm = all_pairs_distances(&s2).unwrap();
        assert_eq!(dm.diameter(), 2);
        assert_eq!(dm.get(1, 2), 2);

        assert!(matches!(build_star(0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn cycle_shapes() {
        let c6 = build_cycle(6).unwrap();
        assert_eq!((c6.vertex_count(), c6.edge_count()), (6, 6));
        assert!((0..6).all(|v| c6.degree(v) == 2));
        assert_eq!(all_pairs_distances(&c6).unwrap().diameter(), 3);
        assert_eq!(all_pairs_distances(&build_cycle(5).unwrap()).unwrap().diameter(), 2);
        assert!(build_cycle(3).unwrap().outside_paper_range());
        assert!(matches!(build_cycle(2), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn product_of_two_edges_is_k4() {
        let k2 = complete(2);
        let p = strong_product(&k2, &k2).unwrap();
        assert_eq!(p.vertex_count(), 4);
        assert_eq!(p.edge_count(), 6);
        assert_eq!(p.kind(), GraphKind::Generic);
    }

    #[test]
    fn s4_c6_counts() {
        let g = star_cycle_product(4, 6).unwrap();
        assert_eq!(g.vertex_count(), 30);
        // |V1||E2| + |V2||E1| + 2|E1||E2| = 5*6 + 6*4 + 2*4*6
        assert_eq!(g.edge_count(), 102);

        let mut brute = 0;
        for u in 0..30 {
            for v in u + 1..30 {
                let (a, b) = (g.key(u).unwrap(), g.key(v).unwrap());
                let star_ok = a.star_index == b.star_index
                    || a.star_index == 0
                    || b.star_index == 0;
                let dc = a.cycle_index.abs_diff(b.cycle_index);
                let cycle_ok = dc <= 1 || dc == 5;
                if star_ok && cycle_ok {
                    brute += 1;
                }
            }
        }
        assert_eq!(brute, 102);
    }

    #[test]
    fn s4_c6_distances() {
        let g = star_cycle_product(4, 6).unwrap();
        let dm = all_pairs_distances(&g).unwrap();
        let a = g.vertex_id(VertexKey::new(1, 0)).unwrap();
        let b = g.vertex_id(VertexKey::new(2, 0)).unwrap();
        assert_eq!(dm.get(a, b), 2);
        assert_eq!(dm.diameter(), 3);
    }

    #[test]
    fn substars_partition_the_product() {
        let g = star_cycle_product(3, 5).unwrap();
        let mut seen = vec![false; g.vertex_count()];
        for j in 0..5 {
            let layer = g.substar(j).unwrap();
            assert_eq!(layer.len(), 4);
            let center = layer.start;
            for v in layer.clone() {
                assert!(!seen[v]);
                seen[v] = true;
                assert_eq!(g.key(v).unwrap().cycle_index, j);
            }
            // induced subgraph is a star centered at `center`
            for u in layer.clone() {
                for v in layer.clone().filter(|&v| v > u) {
                    assert_eq!(g.is_adjacent(u, v), u == center);
                }
            }
        }
        assert!(seen.into_iter().all(|s| s));
    }

    #[test]
    fn disconnected_graph_is_reported() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(all_pairs_distances(&g), Err(Error::Disconnected { u: 0, v: 2 }));
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
    }

    #[test]
    fn dot_export() {
        let dot = String::from_utf8(export_graph(&build_cycle(3).unwrap(), ExportFormat::Dot)).unwrap();
        assert_eq!(dot.matches(" -- ").count(), 3);
        assert_eq!(dot.lines().filter(|l| l.trim_start().starts_with('c') && !l.contains("--")).count(), 3);

        let dot = String::from_utf8(export_graph(&star_cycle_product(2, 4).unwrap(), ExportFormat::Dot)).unwrap();
        assert!(dot.contains("  s0c1;\n"));
        assert!(dot.contains("s2c4"));
    }

    #[test]
    fn json_export_and_round_trip() {
        let text = export_graph(&build_star(2).unwrap(), ExportFormat::AdjacencyJson);
        let value: serde_json::Value = serde_json::from_slice(&text).unwrap();
        assert_eq!(value["vertex_count"], 3);
        assert_eq!(value["kind"], "star");

        let g = star_cycle_product(3, 4).unwrap();
        let back = parse_adjacency_json(&export_graph(&g, ExportFormat::AdjacencyJson)).unwrap();
        assert_eq!(back, g);

        let generic = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let back = parse_adjacency_json(&export_graph(&generic, ExportFormat::AdjacencyJson)).unwrap();
        assert_eq!(back, generic);
    }

    #[test]
    fn json_edges_must_match_kind() {
        let bad = br#"{"kind":"cycle","n":null,"m":3,"vertex_count":3,"edges":[[0,1],[1,2]]}"#;
        assert!(matches!(parse_adjacency_json(bad), Err(Error::Parse(_))));
    }

    #[test]
    fn unknown_format_tag() {
        assert!(matches!("png".parse::<ExportFormat>(), Err(Error::Usage(_))));
    }
}

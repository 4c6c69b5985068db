//! Simple undirected graphs over dense integer vertex ids, the edge-list
//! text format, and the standard interconnect generators.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest vertex-id range accepted from text or generators.
pub const MAX_VERTICES: usize = 1 << 24;

/// Ascending, duplicate-free set of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Wraps a vector that is already strictly ascending.
    pub(crate) fn from_sorted(v: Vec<usize>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        VertexSet(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> std::iter::Copied<std::slice::Iter<'_, usize>> {
        self.0.iter().copied()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(v: [usize; N]) -> Self {
        v.into_iter().collect()
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, usize>>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// Simple undirected unweighted graph.
///
/// Vertices are the ids `0..id_bound()`. A graph produced by
/// [`Graph::remove_vertices`] keeps the original ids of the survivors; the
/// removed ids stay inside the id range but are no longer vertices of the
/// graph (see [`Graph::contains`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    /// `None` when every id in range is a vertex.
    present: Option<Vec<bool>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            present: None,
        }
    }

    /// Builds a graph on vertices `0..n` from undirected pairs. Duplicate
    /// pairs collapse to one edge.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > MAX_VERTICES {
            return Err(Error::resource("vertex count", MAX_VERTICES as u64));
        }
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            if u == v {
                return Err(Error::validation(format!("self-loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::validation(format!(
                    "edge {u}-{v} references a vertex outside 0..{n}"
                )));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph {
            adjacency,
            present: None,
        })
    }

    /// Parses the edge-list text format.
    ///
    /// `#` starts a comment. The first content line may be `n=<count>`,
    /// which declares vertices beyond the largest id mentioned by an edge.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut declared: Option<usize> = None;
        let mut edges = Vec::new();
        let mut max_id: Option<usize> = None;
        let mut seen_content = false;

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let first_content = !seen_content;
            seen_content = true;

            if let Some(rest) = line.strip_prefix("n") {
                if let Some(value) = rest.trim_start().strip_prefix('=') {
                    if !first_content {
                        return Err(parse_err(line_no, "header `n=<count>` must be the first line"));
                    }
                    let n: usize = value
                        .trim()
                        .parse()
                        .map_err(|_| parse_err(line_no, "invalid vertex count in header"))?;
                    declared = Some(n);
                    continue;
                }
            }

            let mut tokens = line.split_whitespace();
            let (Some(a), Some(b), None) = (tokens.next(), tokens.next(), tokens.next()) else {
                return Err(parse_err(line_no, "expected two vertex ids"));
            };
            let u = parse_id(a, line_no)?;
            let v = parse_id(b, line_no)?;
            if u == v {
                return Err(Error::validation(format!("line {line_no}: self-loop at vertex {u}")));
            }
            max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
            edges.push((u, v));
        }

        let implied = max_id.map_or(0, |m| m + 1);
        let n = match declared {
            Some(d) if d < implied => {
                return Err(Error::validation(format!(
                    "header declares n={d} but vertex {} is used",
                    implied - 1
                )))
            }
            Some(d) => d,
            None => implied,
        };
        Graph::from_edges(n, edges)
    }

    /// Canonical edge-list text: one `u v` line per edge with `u < v`,
    /// sorted. A `n=<count>` header is emitted only when edges alone would
    /// not reproduce the vertex count.
    pub fn to_edge_list(&self) -> String {
        let mut lines = Vec::new();
        let implied = self.edges().map(|(_, v)| v + 1).max().unwrap_or(0);
        if implied != self.id_bound() {
            lines.push(format!("n={}", self.id_bound()));
        }
        lines.extend(self.edges().map(|(u, v)| format!("{u} {v}")));
        lines.join("\n")
    }

    /// Size of the id range `0..id_bound()`.
    pub fn id_bound(&self) -> usize {
        self.adjacency.len()
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        match &self.present {
            None => self.adjacency.len(),
            Some(p) => p.iter().filter(|&&x| x).count(),
        }
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.adjacency.len() && self.present.as_ref().is_none_or(|p| p[v])
    }

    /// Vertices in ascending order.
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.adjacency.len()).filter(move |&v| self.contains(v))
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::from_sorted(self.vertices().collect())
    }

    /// Ascending neighbor ids of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adjacency.len() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// `(min, max)` vertex degree, `None` for a graph without vertices.
    pub fn degree_range(&self) -> Option<(usize, usize)> {
        let mut degrees = self.vertices().map(|v| self.degree(v));
        let first = degrees.next()?;
        Some(degrees.fold((first, first), |(lo, hi), d| (lo.min(d), hi.max(d))))
    }

    /// Induced subgraph on the vertices outside `faults`. Survivors keep
    /// their ids.
    pub fn remove_vertices(&self, faults: &VertexSet) -> Result<Graph> {
        if let Some(bad) = faults.iter().find(|&v| !self.contains(v)) {
            return Err(Error::validation(format!("vertex {bad} is not in the graph")));
        }
        if faults.is_empty() {
            return Ok(self.clone());
        }
        let mut present = self.present.clone().unwrap_or_else(|| vec![true; self.adjacency.len()]);
        for v in faults {
            present[v] = false;
        }
        let adjacency = self
            .adjacency
            .iter()
            .enumerate()
            .map(|(v, list)| {
                if present[v] {
                    list.iter().copied().filter(|&u| present[u]).collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        Ok(Graph {
            adjacency,
            present: Some(present),
        })
    }

    /// Same vertex set, new adjacency. Used by derived graphs (compression).
    pub(crate) fn with_adjacency(&self, adjacency: Vec<Vec<usize>>) -> Graph {
        debug_assert_eq!(adjacency.len(), self.adjacency.len());
        Graph {
            adjacency,
            present: self.present.clone(),
        }
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::validation(format!("vertex {v} is not in the graph")))
        }
    }
}

fn parse_err(line: usize, message: &str) -> Error {
    Error::ParseLine {
        line,
        message: message.to_string(),
    }
}

fn parse_id(token: &str, line: usize) -> Result<usize> {
    let id: usize = token
        .parse()
        .map_err(|_| parse_err(line, &format!("`{token}` is not a non-negative integer")))?;
    if id >= MAX_VERTICES {
        return Err(Error::resource("vertex id", MAX_VERTICES as u64));
    }
    Ok(id)
}

/// Standard interconnect families.
///
/// Numbering: ring and complete use `0..n` (ring edges `i ~ i+1 mod n`);
/// hypercube vertex ids are the binary coordinates, adjacent iff they differ
/// in one bit; torus and mesh ids are row-major over `dims` (the last
/// coordinate varies fastest).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "params")]
pub enum Topology {
    Ring(usize),
    Complete(usize),
    Hypercube(usize),
    Torus(Vec<usize>),
    Mesh(Vec<usize>),
}

impl Topology {
    pub fn generate(&self) -> Result<Graph> {
        match self {
            Topology::Ring(n) => {
                if *n < 3 {
                    return Err(Error::validation("ring needs at least 3 vertices"));
                }
                Graph::from_edges(*n, (0..*n).map(|i| (i, (i + 1) % n)))
            }
            Topology::Complete(n) => {
                if *n < 1 {
                    return Err(Error::validation("complete graph needs at least 1 vertex"));
                }
                let n = *n;
                if n > MAX_VERTICES {
                    return Err(Error::resource("vertex count", MAX_VERTICES as u64));
                }
                Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            }
            Topology::Hypercube(d) => {
                if *d < 1 {
                    return Err(Error::validation("hypercube dimension must be at least 1"));
                }
                if *d > 24 {
                    return Err(Error::resource("vertex count", MAX_VERTICES as u64));
                }
                let n = 1usize << d;
                Graph::from_edges(
                    n,
                    (0..n).flat_map(|v| (0..*d).map(move |b| (v, v ^ (1 << b))).filter(|(u, w)| u < w)),
                )
            }
            Topology::Torus(dims) => grid(dims, true),
            Topology::Mesh(dims) => grid(dims, false),
        }
    }
}

/// Convenience wrapper over [`Topology::generate`].
pub fn generate_topology(kind: &Topology) -> Result<Graph> {
    kind.generate()
}

fn grid(dims: &[usize], wrap: bool) -> Result<Graph> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::validation("grid dimensions must be positive"));
    }
    let n = dims
        .iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d).filter(|&x| x <= MAX_VERTICES))
        .ok_or_else(|| Error::resource("vertex count", MAX_VERTICES as u64))?;

    // stride of each coordinate in the row-major numbering
    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }

    let mut edges = Vec::new();
    for v in 0..n {
        for (&size, &stride) in dims.iter().zip(&strides) {
            let coord = (v / stride) % size;
            if coord + 1 < size {
                edges.push((v, v + stride));
            } else if wrap && size > 2 {
                edges.push((v, v - coord * stride));
            }
        }
    }
    Graph::from_edges(n, edges)
}

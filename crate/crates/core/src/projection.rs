//! Projective (bracket) description of a graph.
//!
//! A projection `P_k(v0)` is a rooted multilevel structure: level 0 holds
//! the angle vertex `v0`, and every node `x` at level `i` generates the
//! subset `N(vertex(x)) \ W(x)` at level `i + 1`, where `W(x)` is the chain
//! of vertices from the root down to `x`. Every node therefore stands for a
//! simple chain from the root, and a vertex occurs at level `i` once per
//! simple chain of length `i` reaching it.
//!
//! Nodes are stored in level order (canonical: siblings ascending by vertex
//! id, parents in the order of their own level), so the children of a node
//! are a contiguous run.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Default cap on the number of projection nodes.
pub const DEFAULT_NODE_CAP: usize = 10_000_000;

const NO_PARENT: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProjectionMode {
    /// Every simple chain from the root up to the depth.
    FullChains,
    /// A breadth-first tree: each reachable vertex once, at its distance
    /// from the root, under the first node of the previous level adjacent
    /// to it.
    ShortestOnly,
}

/// Index of a node inside a [`Projection`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

#[derive(Clone, Copy, Debug)]
struct Node {
    vertex: u32,
    parent: u32,
    level: u32,
    first_child: u32,
    child_count: u32,
}

#[derive(Clone, Debug)]
pub struct Projection {
    root: usize,
    depth: usize,
    /// `None` for projections read from bracket text.
    mode: Option<ProjectionMode>,
    nodes: Vec<Node>,
    /// `level_start[i]..level_start[i + 1]` are the nodes of level `i`.
    level_start: Vec<usize>,
}

impl PartialEq for Projection {
    /// Structural equality: same root and same parent/child structure.
    fn eq(&self, other: &Self) -> bool {
        let shape = |n: &Node| (n.vertex, n.parent, n.level, n.child_count);
        self.root == other.root
            && self.nodes.len() == other.nodes.len()
            && self.nodes.iter().map(shape).eq(other.nodes.iter().map(shape))
    }
}

impl Eq for Projection {}

/// Options for [`Projection`] construction.
pub struct ProjectionBuilder<'g> {
    graph: &'g Graph,
    mode: ProjectionMode,
    node_cap: usize,
    filter: Option<Box<dyn Fn(usize) -> bool + 'g>>,
}

impl<'g> ProjectionBuilder<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        ProjectionBuilder {
            graph,
            mode: ProjectionMode::FullChains,
            node_cap: DEFAULT_NODE_CAP,
            filter: None,
        }
    }

    pub fn mode(mut self, mode: ProjectionMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn node_cap(mut self, cap: usize) -> Self {
        self.node_cap = cap.min(NO_PARENT as usize - 1);
        self
    }

    /// Only vertices accepted by `keep` may appear above level 0.
    pub fn restrict(mut self, keep: impl Fn(usize) -> bool + 'g) -> Self {
        self.filter = Some(Box::new(keep));
        self
    }

    pub fn build(&self, root: usize, depth: usize) -> Result<Projection> {
        let mut proj = Projection {
            root,
            depth,
            mode: Some(self.mode),
            nodes: Vec::new(),
            level_start: Vec::new(),
        };
        self.rebuild(&mut proj, root, depth)?;
        Ok(proj)
    }

    /// Rebuilds `proj` in place from `root`, reusing its buffers.
    pub(crate) fn rebuild(&self, proj: &mut Projection, root: usize, depth: usize) -> Result<()> {
        self.graph.check_vertex(root)?;
        proj.root = root;
        proj.depth = depth;
        proj.mode = Some(self.mode);
        proj.nodes.clear();
        proj.nodes.push(Node {
            vertex: root as u32,
            parent: NO_PARENT,
            level: 0,
            first_child: 0,
            child_count: 0,
        });
        proj.level_start.clear();
        proj.level_start.extend([0, 1]);
        match self.mode {
            ProjectionMode::FullChains => self.grow_full(proj),
            ProjectionMode::ShortestOnly => self.grow_shortest(proj),
        }
    }

    fn allowed(&self, v: usize) -> bool {
        self.filter.as_ref().is_none_or(|keep| keep(v))
    }

    fn push_child(&self, proj: &mut Projection, parent: usize, vertex: usize, level: usize) -> Result<()> {
        if proj.nodes.len() >= self.node_cap {
            return Err(Error::Resource {
                what: "projection node count",
                cap: self.node_cap as u64,
                hint: "; lower the depth or use shortest-only mode".into(),
            });
        }
        proj.nodes.push(Node {
            vertex: vertex as u32,
            parent: parent as u32,
            level: level as u32,
            first_child: 0,
            child_count: 0,
        });
        Ok(())
    }

    fn grow_full(&self, proj: &mut Projection) -> Result<()> {
        let g = self.graph;
        let mut on_chain = vec![false; g.id_bound()];
        for level in 1..=proj.depth {
            let parents = proj.level_start[level - 1]..proj.level_start[level];
            for x in parents {
                let mut y = x as u32;
                while y != NO_PARENT {
                    let n = proj.nodes[y as usize];
                    on_chain[n.vertex as usize] = true;
                    y = n.parent;
                }
                let first = proj.nodes.len();
                let vx = proj.nodes[x].vertex as usize;
                for &u in g.neighbors(vx) {
                    if !on_chain[u] && self.allowed(u) {
                        self.push_child(proj, x, u, level)?;
                    }
                }
                proj.nodes[x].first_child = first as u32;
                proj.nodes[x].child_count = (proj.nodes.len() - first) as u32;
                let mut y = x as u32;
                while y != NO_PARENT {
                    let n = proj.nodes[y as usize];
                    on_chain[n.vertex as usize] = false;
                    y = n.parent;
                }
            }
            if proj.nodes.len() == proj.level_start[level] {
                break;
            }
            proj.level_start.push(proj.nodes.len());
        }
        Ok(())
    }

    fn grow_shortest(&self, proj: &mut Projection) -> Result<()> {
        let g = self.graph;
        proj.nodes.reserve(g.order());
        let mut seen = vec![false; g.id_bound()];
        seen[proj.root] = true;
        for level in 1..=proj.depth {
            let parents = proj.level_start[level - 1]..proj.level_start[level];
            for x in parents {
                let first = proj.nodes.len();
                let vx = proj.nodes[x].vertex as usize;
                for &u in g.neighbors(vx) {
                    if !seen[u] && self.allowed(u) {
                        seen[u] = true;
                        self.push_child(proj, x, u, level)?;
                    }
                }
                proj.nodes[x].first_child = first as u32;
                proj.nodes[x].child_count = (proj.nodes.len() - first) as u32;
            }
            if proj.nodes.len() == proj.level_start[level] {
                break;
            }
            proj.level_start.push(proj.nodes.len());
        }
        Ok(())
    }
}

/// Builds `P_depth(root)` with the default node cap.
pub fn build_projection(g: &Graph, root: usize, depth: usize, mode: ProjectionMode) -> Result<Projection> {
    ProjectionBuilder::new(g).mode(mode).build(root, depth)
}

impl Projection {
    pub fn root(&self) -> usize {
        self.root
    }

    /// Requested depth (for parsed projections, the deepest level present).
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn mode(&self) -> Option<ProjectionMode> {
        self.mode
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Number of non-empty levels, root level included.
    pub fn level_count(&self) -> usize {
        self.level_start.len() - 1
    }

    pub fn root_node(&self) -> NodeId {
        NodeId(0)
    }

    pub fn vertex(&self, x: NodeId) -> usize {
        self.nodes[x.0].vertex as usize
    }

    pub fn level(&self, x: NodeId) -> usize {
        self.nodes[x.0].level as usize
    }

    pub fn parent(&self, x: NodeId) -> Option<NodeId> {
        let p = self.nodes[x.0].parent;
        (p != NO_PARENT).then_some(NodeId(p as usize))
    }

    pub fn children(&self, x: NodeId) -> impl ExactSizeIterator<Item = NodeId> {
        let n = self.nodes[x.0];
        (n.first_child as usize..(n.first_child + n.child_count) as usize).map(NodeId)
    }

    /// Vertices of the generated subset of `x`, ascending.
    pub fn generated(&self, x: NodeId) -> Vec<usize> {
        self.children(x).map(|c| self.vertex(c)).collect()
    }

    pub fn nodes_at_level(&self, level: usize) -> impl ExactSizeIterator<Item = NodeId> {
        let range = self.level_range(level);
        range.map(NodeId)
    }

    fn level_range(&self, level: usize) -> Range<usize> {
        if level + 1 < self.level_start.len() {
            self.level_start[level]..self.level_start[level + 1]
        } else {
            0..0
        }
    }

    /// Chain `W(x)`: vertices from the root down to `x`.
    pub fn chain(&self, x: NodeId) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.level(x) + 1);
        let mut y = Some(x);
        while let Some(n) = y {
            out.push(self.vertex(n));
            y = self.parent(n);
        }
        out.reverse();
        out
    }

    /// `C_i`: number of nodes on each level.
    pub fn level_counts(&self) -> Vec<usize> {
        self.level_start.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// `V_i`: distinct vertices on each level.
    pub fn level_sets(&self) -> Vec<VertexSet> {
        (0..self.level_count())
            .map(|i| self.nodes_at_level(i).map(|x| self.vertex(x)).collect())
            .collect()
    }

    /// Level at which `v` first occurs.
    pub fn first_level(&self, v: usize) -> Option<usize> {
        self.nodes
            .iter()
            .find(|n| n.vertex as usize == v)
            .map(|n| n.level as usize)
    }

    /// First-occurrence level of every id in `0..id_bound`.
    pub fn first_levels(&self, id_bound: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; id_bound];
        for n in &self.nodes {
            let slot = &mut out[n.vertex as usize];
            if slot.is_none() {
                *slot = Some(n.level as usize);
            }
        }
        out
    }

    /// Occurrences of `v` on each level `0..level_count()`. In a full-chains
    /// projection the count at level `i` is the number of simple chains of
    /// length `i` from the root to `v`.
    pub fn multiplicity(&self, v: usize) -> Result<Vec<usize>> {
        if self.mode == Some(ProjectionMode::ShortestOnly) {
            return Err(Error::UnsupportedMode);
        }
        let mut counts = vec![0; self.level_count()];
        for n in self.nodes.iter().filter(|n| n.vertex as usize == v) {
            counts[n.level as usize] += 1;
        }
        Ok(counts)
    }

    /// `sum_i C_i - sum_i |V_i|`, the upper bound on any vertex multiplicity.
    pub fn multiplicity_bound(&self) -> usize {
        let total: usize = self.level_counts().iter().sum();
        let distinct: usize = self.level_sets().iter().map(VertexSet::len).sum();
        total - distinct
    }

    /// Smallest level `k_e` whose cumulative vertex set covers every vertex
    /// of `g`; `None` when the projection is not vertex-complete. Equals the
    /// eccentricity of the root.
    pub fn vertex_complete_level(&self, g: &Graph) -> Option<usize> {
        let mut covered = vec![false; g.id_bound()];
        let mut count = 0;
        for level in 0..self.level_count() {
            for x in self.nodes_at_level(level) {
                let v = self.vertex(x);
                if v < covered.len() && !covered[v] && g.contains(v) {
                    covered[v] = true;
                    count += 1;
                }
            }
            if count == g.order() {
                return Some(level);
            }
        }
        None
    }

    /// Whether every edge of `g` occurs as a parent/child incidence.
    pub fn is_edge_complete(&self, g: &Graph) -> bool {
        let mut pairs: Vec<(usize, usize)> = (1..self.nodes.len())
            .map(|i| {
                let a = self.nodes[i].vertex as usize;
                let b = self.nodes[self.nodes[i].parent as usize].vertex as usize;
                (a.min(b), a.max(b))
            })
            .filter(|&(a, b)| g.has_edge(a, b))
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        pairs.len() == g.size()
    }

    /// Canonical bracket text, e.g. `0(1(4),3(4),4(1,3))`.
    pub fn to_bracket(&self) -> String {
        let mut out = String::new();
        // explicit stack: (node, next child offset)
        let mut stack: Vec<(usize, u32)> = vec![(0, 0)];
        write!(out, "{}", self.nodes[0].vertex).unwrap();
        while let Some(top) = stack.last_mut() {
            let node = self.nodes[top.0];
            if top.1 < node.child_count {
                out.push(if top.1 == 0 { '(' } else { ',' });
                let child = (node.first_child + top.1) as usize;
                top.1 += 1;
                write!(out, "{}", self.nodes[child].vertex).unwrap();
                stack.push((child, 0));
            } else {
                if node.child_count > 0 {
                    out.push(')');
                }
                stack.pop();
            }
        }
        out
    }
}

pub fn to_bracket(p: &Projection) -> String {
    p.to_bracket()
}

/// Parses bracket text:
/// `projection := vertex [ "(" projection { "," projection } ")" ]`.
///
/// Whitespace is ignored. Sibling order in the input is free; the result is
/// stored canonically. A vertex may not repeat among siblings or along its
/// own chain.
pub fn parse_bracket(text: &str) -> Result<Projection> {
    struct Raw {
        vertex: usize,
        parent: Option<usize>,
        children: Vec<usize>,
    }

    let bytes = text.as_bytes();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let err = |offset: usize, message: &str| Error::ParseBracket {
        offset,
        message: message.to_string(),
    };

    let mut raw: Vec<Raw> = Vec::new();
    // open nodes whose subset is being read
    let mut open: Vec<usize> = Vec::new();

    loop {
        // expect a vertex
        skip_ws(&mut pos);
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if start == pos {
            let msg = match bytes.get(pos) {
                None => "unexpected end of input, expected a vertex",
                Some(b')') => "empty subset",
                Some(_) => "expected a vertex id",
            };
            return Err(err(pos, msg));
        }
        let vertex: usize = text[start..pos]
            .parse()
            .ok()
            .filter(|&v| v < crate::graph::MAX_VERTICES)
            .ok_or_else(|| err(start, "vertex id out of range"))?;
        let parent = open.last().copied();
        if let Some(p) = parent {
            if raw[p].children.iter().any(|&c| raw[c].vertex == vertex) {
                return Err(err(start, "duplicate vertex in subset"));
            }
            if open.iter().any(|&a| raw[a].vertex == vertex) {
                return Err(err(start, "vertex repeats on its own chain"));
            }
            let idx = raw.len();
            raw[p].children.push(idx);
        } else if !raw.is_empty() {
            return Err(err(start, "trailing input after projection"));
        }
        raw.push(Raw {
            vertex,
            parent,
            children: Vec::new(),
        });
        let current = raw.len() - 1;

        // after a vertex: '(' opens its subset; otherwise close or continue
        skip_ws(&mut pos);
        if bytes.get(pos) == Some(&b'(') {
            pos += 1;
            open.push(current);
            continue;
        }
        loop {
            skip_ws(&mut pos);
            match bytes.get(pos) {
                Some(b',') if !open.is_empty() => {
                    pos += 1;
                    break;
                }
                Some(b')') if !open.is_empty() => {
                    pos += 1;
                    open.pop();
                }
                None if open.is_empty() => {
                    return Ok(flatten(raw.iter().map(|r| (r.vertex, r.parent, &r.children[..]))));
                }
                None => return Err(err(pos, "unbalanced parentheses: missing ')'")),
                Some(b')') => return Err(err(pos, "unbalanced parentheses: unexpected ')'")),
                Some(_) => return Err(err(pos, "unexpected character")),
            }
        }
    }

    /// Converts a preorder arena (vertex, parent, children) to level order.
    fn flatten<'a>(raw: impl Iterator<Item = (usize, Option<usize>, &'a [usize])>) -> Projection {
        let raw: Vec<_> = raw.collect();
        let mut nodes = Vec::with_capacity(raw.len());
        let mut level_start = vec![0];
        // queue of (raw index, new parent index, level)
        let mut queue = VecDeque::from([(0usize, NO_PARENT, 0u32)]);
        while let Some((r, parent, level)) = queue.pop_front() {
            if level as usize == level_start.len() {
                level_start.push(nodes.len());
            }
            let me = nodes.len() as u32;
            nodes.push(Node {
                vertex: raw[r].0 as u32,
                parent,
                level,
                first_child: 0,
                child_count: raw[r].2.len() as u32,
            });
            let mut kids = raw[r].2.to_vec();
            kids.sort_by_key(|&c| raw[c].0);
            for c in kids {
                queue.push_back((c, me, level + 1));
            }
        }
        level_start.push(nodes.len());
        // children are contiguous in BFS order; fix up first_child
        let mut next = 1u32;
        for n in nodes.iter_mut() {
            n.first_child = next;
            next += n.child_count;
        }
        let depth = nodes.last().map_or(0, |n| n.level as usize);
        Projection {
            root: nodes[0].vertex as usize,
            depth,
            mode: None,
            nodes,
            level_start,
        }
    }
}

fn bfs_levels(g: &Graph, root: usize) -> Result<Projection> {
    ProjectionBuilder::new(g)
        .mode(ProjectionMode::ShortestOnly)
        .build(root, g.id_bound())
}

/// Hop distances from `root` (first-occurrence levels of its shortest-only
/// projection); `None` for unreachable ids and ids that are not vertices.
pub fn distances_from(g: &Graph, root: usize) -> Result<Vec<Option<usize>>> {
    Ok(bfs_levels(g, root)?.first_levels(g.id_bound()))
}

pub fn distance(g: &Graph, u: usize, v: usize) -> Result<usize> {
    g.check_vertex(v)?;
    distances_from(g, u)?[v].ok_or(Error::Disconnected {
        from: u,
        unreachable: v,
    })
}

/// Vertex-complete level of the shortest-only projection grown from `v`.
pub fn eccentricity(g: &Graph, v: usize) -> Result<usize> {
    let p = bfs_levels(g, v)?;
    p.vertex_complete_level(g).ok_or_else(|| {
        let levels = p.first_levels(g.id_bound());
        let unreachable = g.vertices().find(|&u| levels[u].is_none()).unwrap_or(v);
        Error::Disconnected { from: v, unreachable }
    })
}

pub fn diameter(g: &Graph) -> Result<usize> {
    if g.order() == 0 {
        return Err(Error::validation("graph has no vertices"));
    }
    g.vertices().try_fold(0, |acc, v| Ok(acc.max(eccentricity(g, v)?)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use proptest::prelude::*;

    fn full(g: &Graph, root: usize, depth: usize) -> Projection {
        build_projection(g, root, depth, ProjectionMode::FullChains).unwrap()
    }

    #[test]
    fn g6_two_level_projection() {
        assert_eq!(full(&g6(), 0, 2).to_bracket(), "0(1(2,4,5),3(2,4),4(1,2,3,5))");
    }

    #[test]
    fn k3_single_level() {
        assert_eq!(full(&complete(3), 0, 1).to_bracket(), "0(1,2)");
    }

    #[test]
    fn c6_shortest_levels() {
        let p = build_projection(&ring(6), 0, 3, ProjectionMode::ShortestOnly).unwrap();
        let sets = p.level_sets();
        assert_eq!(sets[1], VertexSet::from([1, 5]));
        assert_eq!(sets[2], VertexSet::from([2, 4]));
        assert_eq!(sets[3], VertexSet::from([3]));
    }

    #[test]
    fn depth_zero_is_root_only() {
        let p = full(&g6(), 3, 0);
        assert_eq!(p.to_bracket(), "3");
        assert_eq!(p.level_counts(), vec![1]);
    }

    #[test]
    fn node_cap_is_enforced() {
        let g = complete(8);
        let err = ProjectionBuilder::new(&g).node_cap(100).build(0, 7).unwrap_err();
        assert!(err.is_resource(), "{err}");
        assert!(err.to_string().contains("100"));
        assert!(build_projection(&g, 9, 1, ProjectionMode::FullChains).is_err());
    }

    #[test]
    fn parses_reference_listings() {
        let p = parse_bracket("5(1(2,4),2(1,4),4(1,2))").unwrap();
        assert_eq!(p.root(), 5);
        assert_eq!(p.nodes_at_level(1).len(), 3);
        assert_eq!(p.to_bracket(), "5(1(2,4),2(1,4),4(1,2))");

        let p = parse_bracket(" 0 ( 4 (3,1), 3(4), 1(4) )").unwrap();
        assert_eq!(p.to_bracket(), "0(1(4),3(4),4(1,3))");
        assert_eq!(p.mode(), None);
        assert_eq!(p.depth(), 2);
    }

    #[test]
    fn bracket_errors_carry_offsets() {
        let cases = [
            ("0(1,2", 5),
            ("0(1))", 4),
            ("0()", 2),
            ("0(a)", 2),
            ("0(1,1)", 4),
            ("0(1(0))", 4),
            ("", 0),
            ("0 1", 2),
        ];
        for (text, offset) in cases {
            match parse_bracket(text) {
                Err(Error::ParseBracket { offset: o, .. }) => assert_eq!(o, offset, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn vertex_completeness() {
        assert_eq!(full(&g6(), 0, 2).vertex_complete_level(&g6()), Some(2));
        assert_eq!(full(&g6(), 4, 1).vertex_complete_level(&g6()), Some(1));
        assert_eq!(full(&ring(6), 0, 1).vertex_complete_level(&ring(6)), None);
    }

    #[test]
    fn edge_completeness() {
        let k3 = complete(3);
        let p1 = full(&k3, 0, 1);
        assert_eq!(p1.vertex_complete_level(&k3), Some(1));
        assert!(!p1.is_edge_complete(&k3));
        let p2 = full(&k3, 0, 2);
        assert_eq!(p2.to_bracket(), "0(1(2),2(1))");
        assert!(p2.is_edge_complete(&k3));
        // {2,5} joins two level-2 vertices and first shows up at depth 3
        assert!(!full(&g6(), 0, 2).is_edge_complete(&g6()));
        assert!(full(&g6(), 0, 3).is_edge_complete(&g6()));
    }

    #[test]
    fn metrics() {
        assert_eq!(eccentricity(&g6(), 4).unwrap(), 1);
        assert_eq!(diameter(&g6()).unwrap(), 2);
        assert_eq!(distance(&ring(6), 0, 3).unwrap(), 3);
        assert_eq!(diameter(&hypercube(3)).unwrap(), 3);

        let split = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            eccentricity(&split, 0).unwrap_err(),
            Error::Disconnected {
                from: 0,
                unreachable: 2
            }
        );
        assert!(diameter(&split).is_err());
        assert!(distance(&split, 1, 3).is_err());
        assert_eq!(distance(&split, 3, 2).unwrap(), 1);
        assert!(diameter(&Graph::empty(0)).is_err());
        assert_eq!(diameter(&Graph::empty(1)).unwrap(), 0);
    }

    #[test]
    fn multiplicities() {
        let p = full(&g6(), 0, 2);
        assert_eq!(p.multiplicity(4).unwrap(), vec![0, 1, 2]);
        assert_eq!(p.multiplicity(0).unwrap(), vec![1, 0, 0]);
        assert_eq!(p.multiplicity(2).unwrap(), vec![0, 0, 3]);
        let s = build_projection(&g6(), 0, 2, ProjectionMode::ShortestOnly).unwrap();
        assert_eq!(s.multiplicity(4), Err(Error::UnsupportedMode));
    }

    #[test]
    fn repeated_occurrence_can_exceed_literal_bound() {
        // 2 is reached twice at level 2 of a 4-cycle while the bound is 1;
        // only the repeated occurrences (m - 1) stay within it.
        let p = full(&ring(4), 0, 2);
        assert_eq!(p.multiplicity_bound(), 1);
        assert_eq!(p.multiplicity(2).unwrap(), vec![0, 0, 2]);
    }

    #[test]
    fn chains_and_restriction() {
        let g = g6();
        let p = ProjectionBuilder::new(&g).restrict(|v| v > 1).build(1, 3).unwrap();
        for x in p.nodes_at_level(3) {
            let chain = p.chain(x);
            assert_eq!(chain[0], 1);
            assert!(chain[1..].iter().all(|&v| v > 1));
        }
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..8).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..20)
                .prop_map(move |pairs| Graph::from_edges(n, pairs.into_iter().filter(|(u, v)| u != v)).unwrap())
        })
    }

    proptest! {
        #[test]
        fn full_projection_invariants(g in arb_graph(), depth in 0usize..5, pick in any::<usize>()) {
            let root = pick % g.order();
            let p = full(&g, root, depth);
            prop_assert_eq!(p.nodes_at_level(0).len(), 1);
            let bound = p.multiplicity_bound();
            let counts = p.level_counts();
            for level in 0..p.level_count() {
                for x in p.nodes_at_level(level) {
                    let chain = p.chain(x);
                    prop_assert_eq!(chain.len(), level + 1);
                    let mut sorted = chain.clone();
                    sorted.sort_unstable();
                    sorted.dedup();
                    prop_assert_eq!(sorted.len(), chain.len());
                    for w in chain.windows(2) {
                        prop_assert!(g.has_edge(w[0], w[1]));
                    }
                    if level < depth {
                        let expected: Vec<usize> = g
                            .neighbors(p.vertex(x))
                            .iter()
                            .copied()
                            .filter(|u| !chain.contains(u))
                            .collect();
                        prop_assert_eq!(p.generated(x), expected);
                    }
                }
            }
            let mut total_excess = 0;
            for v in g.vertices() {
                let m = p.multiplicity(v).unwrap();
                // repeated occurrences, per level and per vertex
                let excess: usize = m.iter().map(|&c| c.saturating_sub(1)).sum();
                prop_assert!(m.iter().all(|&c| c.saturating_sub(1) <= bound));
                prop_assert!(excess <= bound);
                total_excess += excess;
            }
            prop_assert_eq!(total_excess, bound);
            prop_assert_eq!(counts.iter().sum::<usize>(), p.node_count());
        }

        #[test]
        fn modes_agree_on_first_levels(g in arb_graph(), pick in any::<usize>()) {
            let root = pick % g.order();
            let depth = g.order();
            let f = full(&g, root, depth);
            let s = build_projection(&g, root, depth, ProjectionMode::ShortestOnly).unwrap();
            prop_assert_eq!(f.first_levels(g.id_bound()), s.first_levels(g.id_bound()));
        }

        #[test]
        fn bracket_round_trip(g in arb_graph(), depth in 0usize..4, pick in any::<usize>(), shortest in any::<bool>()) {
            let root = pick % g.order();
            let mode = if shortest { ProjectionMode::ShortestOnly } else { ProjectionMode::FullChains };
            let p = build_projection(&g, root, depth, mode).unwrap();
            let text = p.to_bracket();
            let q = parse_bracket(&text).unwrap();
            prop_assert_eq!(&q, &p);
            prop_assert_eq!(q.to_bracket(), text);
        }

        #[test]
        fn edge_completeness_implies_vertex_completeness(g in arb_graph(), depth in 0usize..5, pick in any::<usize>()) {
            let root = pick % g.order();
            let p = full(&g, root, depth);
            if diameter(&g).is_ok() && p.is_edge_complete(&g) {
                prop_assert!(p.vertex_complete_level(&g).is_some());
            }
        }
    }
}

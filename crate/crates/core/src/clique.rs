//! Maximum cliques by restricted projections, and ∂-density.
//!
//! The restricted projection of `v` within a candidate set `C` keeps only
//! two levels: `V1(v) = N(v) ∩ C`, and for each `u` in `V1(v)` the subset
//! `gen(u) = N(u) ∩ V1(v)`. It is the subgraph induced on the candidate
//! neighborhood of `v`, written as a projection.
//!
//! The search:
//! 1. a greedy seed clique becomes the incumbent;
//! 2. every candidate whose counting bound cannot beat the incumbent is
//!    dropped, in passes, until nothing changes;
//! 3. the survivors are branched in ascending order, recursing into
//!    `V1(v)`. When every `{u} ∪ gen(u)` equals `V1(v)`, the first level is
//!    itself a clique and `{v} ∪ V1(v)` is taken without further search.
//!
//! The size found this way is then resolved to the lexicographically
//! smallest clique of that size, so results do not depend on which maximum
//! clique the search met first.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::reachability::reach_graph;

/// Default cap on the number of reported ∂-components.
pub const DEFAULT_COMPONENT_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedProjection {
    angle: usize,
    first_level: Vec<usize>,
    generated: Vec<Vec<usize>>,
}

impl RestrictedProjection {
    pub fn angle(&self) -> usize {
        self.angle
    }

    /// `V1(v)`, ascending.
    pub fn first_level(&self) -> &[usize] {
        &self.first_level
    }

    /// `gen(u)` for the `i`-th first-level vertex.
    pub fn generated(&self, i: usize) -> &[usize] {
        &self.generated[i]
    }

    /// `(u, gen(u))` pairs in ascending `u`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &[usize])> {
        self.first_level
            .iter()
            .copied()
            .zip(self.generated.iter().map(Vec::as_slice))
    }

    /// Largest `s` such that at least `s - 1` first-level vertices generate
    /// subsets of at least `s - 2` vertices. No clique through the angle
    /// vertex (within the candidates) is larger.
    pub fn clique_bound(&self) -> usize {
        bound_from_sizes(self.generated.iter().map(Vec::len).collect())
    }

    /// Every first-level vertex together with its subset reproduces the
    /// whole first level, i.e. `V1(v)` is a clique.
    pub fn subsets_coincide(&self) -> bool {
        let width = self.first_level.len();
        self.generated.iter().all(|g| g.len() + 1 == width)
    }

    pub fn to_bracket(&self) -> String {
        let mut out = self.angle.to_string();
        if self.first_level.is_empty() {
            return out;
        }
        out.push('(');
        for (i, (u, gen)) in self.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            write!(out, "{u}").unwrap();
            if !gen.is_empty() {
                out.push('(');
                for (j, w) in gen.iter().enumerate() {
                    if j > 0 {
                        out.push(',');
                    }
                    write!(out, "{w}").unwrap();
                }
                out.push(')');
            }
        }
        out.push(')');
        out
    }
}

/// Restricted projection of `v` within `candidates`.
pub fn restricted_projection(g: &Graph, v: usize, candidates: &VertexSet) -> Result<RestrictedProjection> {
    if !candidates.contains(v) || !g.contains(v) {
        return Err(Error::validation(format!("vertex {v} is not a candidate")));
    }
    Ok(restricted_in(g, v, candidates.as_slice()))
}

/// Free-function form of [`RestrictedProjection::clique_bound`].
pub fn clique_bound(rp: &RestrictedProjection) -> usize {
    rp.clique_bound()
}

fn bound_from_sizes(mut sizes: Vec<usize>) -> usize {
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    // s = k + 1 needs sizes[k - 1] >= k - 1
    let mut bound = 1;
    for (k, &size) in sizes.iter().enumerate().map(|(i, s)| (i + 1, s)) {
        if size + 1 >= k {
            bound = k + 1;
        }
    }
    bound
}

/// `clique_bound` of the restricted projection of `v` within `candidates`,
/// without materializing the generated subsets.
fn bound_in(g: &Graph, v: usize, candidates: &[usize]) -> usize {
    let first_level = intersect(g.neighbors(v), candidates);
    bound_from_sizes(
        first_level
            .iter()
            .map(|&u| intersect_len(g.neighbors(u), &first_level))
            .collect(),
    )
}

fn intersect_len(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn restricted_in(g: &Graph, v: usize, candidates: &[usize]) -> RestrictedProjection {
    let first_level = intersect(g.neighbors(v), candidates);
    let generated = first_level
        .iter()
        .map(|&u| intersect(g.neighbors(u), &first_level))
        .collect();
    RestrictedProjection {
        angle: v,
        first_level,
        generated,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueResult {
    pub vertices: VertexSet,
    /// Reachability of the graph the clique was found in (1 for the graph
    /// itself).
    pub delta: usize,
}

impl CliqueResult {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

/// One pass of bound-driven elimination.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EliminationPass {
    pub incumbent: usize,
    /// `(vertex, clique_bound)` for every candidate at the start of the pass.
    pub bounds: Vec<(usize, usize)>,
    pub eliminated: VertexSet,
}

/// Top-level record of a [`max_clique_traced`] run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchTrace {
    pub seed: VertexSet,
    pub passes: Vec<EliminationPass>,
}

pub fn is_clique(g: &Graph, vertices: &[usize]) -> bool {
    vertices
        .iter()
        .enumerate()
        .all(|(i, &u)| g.contains(u) && vertices[i + 1..].iter().all(|&w| g.has_edge(u, w)))
}

/// Maximum clique; the lexicographically smallest among those of maximum
/// size.
pub fn max_clique(g: &Graph) -> Result<CliqueResult> {
    search(g, None)
}

pub fn max_clique_traced(g: &Graph) -> Result<(CliqueResult, SearchTrace)> {
    let mut passes = Vec::new();
    let result = search(g, Some(&mut passes))?;
    let seed = VertexSet::from_sorted(greedy_seed(g));
    Ok((result, SearchTrace { seed, passes }))
}

fn search(g: &Graph, trace: Option<&mut Vec<EliminationPass>>) -> Result<CliqueResult> {
    if g.order() == 0 {
        return Err(Error::validation("graph has no vertices"));
    }
    let mut search = Search {
        g,
        best: greedy_seed(g),
    };
    search.expand(g.vertices().collect(), &mut Vec::new(), trace);
    let vertices = smallest_clique_of_size(g, search.best.len());
    Ok(CliqueResult {
        vertices: VertexSet::from_sorted(vertices),
        delta: 1,
    })
}

/// Starts at the smallest vertex and keeps adding the smallest vertex
/// adjacent to everything chosen so far.
fn greedy_seed(g: &Graph) -> Vec<usize> {
    let Some(first) = g.vertices().next() else {
        return Vec::new();
    };
    let mut clique = vec![first];
    let mut common = g.neighbors(first).to_vec();
    while let Some(&next) = common.first() {
        clique.push(next);
        common = intersect(&common, g.neighbors(next));
    }
    clique
}

struct Search<'g> {
    g: &'g Graph,
    best: Vec<usize>,
}

impl Search<'_> {
    /// Drops candidates that cannot extend `current` beyond the incumbent,
    /// pass by pass, until a pass removes nothing.
    fn eliminate(&self, cands: &mut Vec<usize>, current: usize, mut trace: Option<&mut Vec<EliminationPass>>) {
        loop {
            let bounds: Vec<(usize, usize)> = cands.iter().map(|&v| (v, bound_in(self.g, v, cands))).collect();
            let eliminated: Vec<usize> = bounds
                .iter()
                .filter(|&&(_, b)| current + b <= self.best.len())
                .map(|&(v, _)| v)
                .collect();
            if let Some(t) = trace.as_deref_mut() {
                t.push(EliminationPass {
                    incumbent: self.best.len(),
                    bounds,
                    eliminated: VertexSet::from_sorted(eliminated.clone()),
                });
            }
            if eliminated.is_empty() {
                return;
            }
            cands.retain(|v| eliminated.binary_search(v).is_err());
        }
    }

    fn expand(&mut self, mut cands: Vec<usize>, current: &mut Vec<usize>, trace: Option<&mut Vec<EliminationPass>>) {
        self.eliminate(&mut cands, current.len(), trace);
        for i in 0..cands.len() {
            if current.len() + cands.len() - i <= self.best.len() {
                return;
            }
            let v = cands[i];
            let first_level = intersect(self.g.neighbors(v), &cands[i..]);
            // subsets coincide: the first level is itself a clique
            let coincide = first_level
                .iter()
                .all(|&u| intersect_len(self.g.neighbors(u), &first_level) + 1 == first_level.len());
            current.push(v);
            if coincide {
                if current.len() + first_level.len() > self.best.len() {
                    let mut found = current.clone();
                    found.extend_from_slice(&first_level);
                    found.sort_unstable();
                    self.best = found;
                }
            } else {
                self.expand(first_level, current, None);
            }
            current.pop();
        }
    }
}

/// Lexicographically first clique of `size` vertices (one exists).
fn smallest_clique_of_size(g: &Graph, size: usize) -> Vec<usize> {
    fn descend(g: &Graph, cands: &[usize], current: &mut Vec<usize>, size: usize) -> bool {
        if current.len() == size {
            return true;
        }
        for (i, &v) in cands.iter().enumerate() {
            if current.len() + cands.len() - i < size {
                return false;
            }
            let next = intersect(&cands[i + 1..], g.neighbors(v));
            if current.len() + 1 + next.len() < size {
                continue;
            }
            current.push(v);
            if descend(g, &next, current, size) {
                return true;
            }
            current.pop();
        }
        false
    }

    let all: Vec<usize> = g.vertices().collect();
    // strict elimination: keeps every vertex of every clique of this size
    let cands: Vec<usize> = all.iter().copied().filter(|&v| bound_in(g, v, &all) >= size).collect();
    let mut current = Vec::with_capacity(size);
    let found = descend(g, &cands, &mut current, size);
    debug_assert!(found);
    current
}

/// `φ_∂(G)`: maximum clique of the ∂-reachability graph.
pub fn delta_density(g: &Graph, delta: usize) -> Result<CliqueResult> {
    let mut result = max_clique(&*reach_graph(g, delta)?)?;
    result.delta = delta;
    Ok(result)
}

/// All maximal cliques of the ∂-reachability graph with at least
/// `min_size` vertices, sorted.
pub fn enumerate_delta_components(g: &Graph, delta: usize, min_size: usize) -> Result<Vec<VertexSet>> {
    enumerate_delta_components_capped(g, delta, min_size, DEFAULT_COMPONENT_CAP)
}

pub fn enumerate_delta_components_capped(
    g: &Graph,
    delta: usize,
    min_size: usize,
    cap: usize,
) -> Result<Vec<VertexSet>> {
    if min_size < 1 {
        return Err(Error::validation("min_size must be at least 1"));
    }
    let h = &*reach_graph(g, delta)?;
    let mut out = Vec::new();
    bron_kerbosch(
        h,
        &mut Vec::new(),
        h.vertices().collect(),
        Vec::new(),
        min_size,
        cap,
        &mut out,
    )?;
    let mut sets: Vec<VertexSet> = out.into_iter().map(VertexSet::from).collect();
    sets.sort();
    Ok(sets)
}

/// Maximal cliques with Tomita pivoting.
fn bron_kerbosch(
    g: &Graph,
    r: &mut Vec<usize>,
    p: Vec<usize>,
    mut x: Vec<usize>,
    min_size: usize,
    cap: usize,
    out: &mut Vec<Vec<usize>>,
) -> Result<()> {
    if p.is_empty() {
        if x.is_empty() && r.len() >= min_size {
            if out.len() >= cap {
                return Err(Error::resource("delta-component count", cap as u64));
            }
            out.push(r.clone());
        }
        return Ok(());
    }
    if r.len() + p.len() < min_size {
        return Ok(());
    }
    let pivot = p
        .iter()
        .chain(&x)
        .copied()
        .max_by_key(|&u| (intersect(&p, g.neighbors(u)).len(), std::cmp::Reverse(u)))
        .expect("p is non-empty");
    let branch: Vec<usize> = p.iter().copied().filter(|&v| !g.has_edge(pivot, v)).collect();
    let mut p = p;
    for v in branch {
        r.push(v);
        bron_kerbosch(
            g,
            r,
            intersect(&p, g.neighbors(v)),
            intersect(&x, g.neighbors(v)),
            min_size,
            cap,
            out,
        )?;
        r.pop();
        p.retain(|&u| u != v);
        let at = x.binary_search(&v).unwrap_err();
        x.insert(at, v);
    }
    Ok(())
}

//! ∂-reachability graphs: vertices joined iff their hop distance in the
//! base graph lies in `1..=delta`.

use std::borrow::Cow;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::projection::{Projection, ProjectionBuilder, ProjectionMode};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachGraph {
    base: Graph,
    delta: usize,
    derived: Graph,
}

impl ReachGraph {
    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn derived(&self) -> &Graph {
        &self.derived
    }

    pub fn into_derived(self) -> Graph {
        self.derived
    }
}

/// Compresses `g` to its ∂-reachability graph.
///
/// Each vertex's shortest-only projection is cut at level `delta`, and the
/// root is joined to every vertex on levels `1..=delta`.
pub fn compress(g: &Graph, delta: usize) -> Result<ReachGraph> {
    let derived = reach_graph(g, delta)?.into_owned();
    Ok(ReachGraph {
        base: g.clone(),
        delta,
        derived,
    })
}

/// The ∂-reachability graph alone, borrowing `g` when `delta` is 1.
pub(crate) fn reach_graph(g: &Graph, delta: usize) -> Result<Cow<'_, Graph>> {
    if delta < 1 {
        return Err(Error::validation("reachability delta must be at least 1"));
    }
    if delta == 1 {
        return Ok(Cow::Borrowed(g));
    }
    let builder = ProjectionBuilder::new(g).mode(ProjectionMode::ShortestOnly);
    let depth = delta.min(g.id_bound());
    let mut adjacency = vec![Vec::new(); g.id_bound()];
    let mut scratch: Option<Projection> = None;
    for v in g.vertices() {
        let p = match scratch.as_mut() {
            Some(p) => {
                builder.rebuild(p, v, depth)?;
                p
            }
            None => scratch.insert(builder.build(v, depth)?),
        };
        let mut reach: Vec<usize> = (1..p.level_count())
            .flat_map(|level| p.nodes_at_level(level))
            .map(|x| p.vertex(x))
            .collect();
        reach.sort_unstable();
        adjacency[v] = reach;
    }
    Ok(Cow::Owned(g.with_adjacency(adjacency)))
}

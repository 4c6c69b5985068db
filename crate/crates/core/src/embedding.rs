//! Placing task information graphs onto a system graph so that every pair
//! of information-adjacent branches sits within `delta` hops.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::projection::{ProjectionBuilder, ProjectionMode, DEFAULT_NODE_CAP};
use crate::reachability::reach_graph;

/// Default cap on the number of enumerated cycles.
pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Embedding {
    /// `(task vertex, system vertex)` pairs, ascending by task vertex.
    pub mapping: Vec<(usize, usize)>,
    pub delta: usize,
}

impl Embedding {
    pub fn image(&self, task_vertex: usize) -> Option<usize> {
        self.mapping
            .binary_search_by_key(&task_vertex, |&(t, _)| t)
            .ok()
            .map(|i| self.mapping[i].1)
    }
}

/// Injective placement of `task` into `system` with every task edge mapped
/// to a pair at distance `1..=delta`, or `None` if there is none.
///
/// Backtracking over task vertices in descending degree (ties by id), trying
/// system vertices in ascending id; the first placement found is returned.
pub fn embed(task: &Graph, system: &Graph, delta: usize) -> Result<Option<Embedding>> {
    let host = &*reach_graph(system, delta)?;
    if task.order() > host.order() {
        return Ok(None);
    }

    let mut order: Vec<usize> = task.vertices().collect();
    order.sort_by_key(|&a| (std::cmp::Reverse(task.degree(a)), a));
    let hosts: Vec<usize> = host.vertices().collect();

    let mut image = vec![usize::MAX; task.id_bound()];
    let mut used = vec![false; host.id_bound()];
    if place(task, host, &order, &hosts, 0, &mut image, &mut used) {
        let mapping = task.vertices().map(|a| (a, image[a])).collect();
        Ok(Some(Embedding { mapping, delta }))
    } else {
        Ok(None)
    }
}

fn place(
    task: &Graph,
    host: &Graph,
    order: &[usize],
    hosts: &[usize],
    depth: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&a) = order.get(depth) else {
        return true;
    };
    for &x in hosts {
        if used[x] || host.degree(x) < task.degree(a) {
            continue;
        }
        let consistent = task
            .neighbors(a)
            .iter()
            .all(|&b| image[b] == usize::MAX || host.has_edge(image[b], x));
        if !consistent {
            continue;
        }
        image[a] = x;
        used[x] = true;
        if place(task, host, order, hosts, depth + 1, image, used) {
            return true;
        }
        image[a] = usize::MAX;
        used[x] = false;
    }
    false
}

/// Cycles of `length` through `root` using only vertices above `root`, in
/// canonical form (second vertex smaller than the last).
///
/// Every chain of `length - 1` hops in the root's projection restricted to
/// larger vertices that ends next to the root closes a cycle.
fn cycles_through(g: &Graph, root: usize, length: usize) -> Result<Vec<Vec<usize>>> {
    let p = ProjectionBuilder::new(g)
        .mode(ProjectionMode::FullChains)
        .node_cap(DEFAULT_NODE_CAP)
        .restrict(|v| v > root)
        .build(root, length - 1)?;
    let mut out: Vec<Vec<usize>> = p
        .nodes_at_level(length - 1)
        .filter(|&x| g.has_edge(p.vertex(x), root))
        .map(|x| p.chain(x))
        .filter(|c| c[1] < c[length - 1])
        .collect();
    out.sort();
    Ok(out)
}

/// All simple cycles with `length` vertices, canonical and sorted.
pub fn enumerate_cycles(g: &Graph, length: usize) -> Result<Vec<Vec<usize>>> {
    enumerate_cycles_capped(g, length, DEFAULT_CYCLE_CAP)
}

pub fn enumerate_cycles_capped(g: &Graph, length: usize, cap: usize) -> Result<Vec<Vec<usize>>> {
    if length < 3 {
        return Err(Error::validation("cycle length must be at least 3"));
    }
    let mut out = Vec::new();
    if length > g.order() {
        return Ok(out);
    }
    for root in g.vertices() {
        let found = cycles_through(g, root, length)?;
        if out.len() + found.len() > cap {
            return Err(Error::resource("cycle count", cap as u64));
        }
        out.extend(found);
    }
    Ok(out)
}

/// Length of the shortest cycle, `None` for forests.
///
/// From each root's breadth-first projection, every edge that is not a tree
/// edge closes a walk of `d(u) + d(w) + 1`; the minimum over all roots is
/// the girth.
pub fn girth(g: &Graph) -> Result<Option<usize>> {
    let builder = ProjectionBuilder::new(g).mode(ProjectionMode::ShortestOnly);
    let mut best: Option<usize> = None;
    for root in g.vertices() {
        let p = builder.build(root, g.id_bound())?;
        let mut dist = vec![usize::MAX; g.id_bound()];
        let mut tree_parent = vec![usize::MAX; g.id_bound()];
        for level in 0..p.level_count() {
            for x in p.nodes_at_level(level) {
                let v = p.vertex(x);
                dist[v] = level;
                if let Some(up) = p.parent(x) {
                    tree_parent[v] = p.vertex(up);
                }
            }
        }
        for (u, w) in g.edges() {
            if dist[u] == usize::MAX || tree_parent[u] == w || tree_parent[w] == u {
                continue;
            }
            let len = dist[u] + dist[w] + 1;
            best = Some(best.map_or(len, |b| b.min(len)));
        }
    }
    Ok(best)
}

/// Ring task of `length` branches, placed on the first canonical cycle of
/// the ∂-reachability graph: task vertex `i` goes to the `i`-th cycle vertex.
pub fn embed_ring(g: &Graph, length: usize, delta: usize) -> Result<Option<Embedding>> {
    if length < 3 {
        return Err(Error::validation("cycle length must be at least 3"));
    }
    let h = &*reach_graph(g, delta)?;
    if length > h.order() {
        return Ok(None);
    }
    for root in h.vertices() {
        if let Some(cycle) = cycles_through(h, root, length)?.into_iter().next() {
            return Ok(Some(Embedding {
                mapping: cycle.into_iter().enumerate().collect(),
                delta,
            }));
        }
    }
    Ok(None)
}

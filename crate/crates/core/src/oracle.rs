//! Brute-force reference implementations for auditing the projection-based
//! algorithms on small graphs.
//!
//! Nothing here uses projections, compression or the clique search; only
//! [`Graph`] adjacency is shared.

use std::collections::VecDeque;

use serde::Serialize;

use crate::embedding::Embedding;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub const MAX_CLIQUE_ORDER: usize = 20;
pub const MAX_EMBED_TASK_ORDER: usize = 6;
pub const MAX_EMBED_SYSTEM_ORDER: usize = 8;
pub const MAX_CYCLE_ORDER: usize = 12;

/// All-pairs hop distances; `None` marks unreachable pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceTable {
    n: usize,
    table: Vec<Option<usize>>,
}

impl DistanceTable {
    pub fn get(&self, u: usize, v: usize) -> Option<usize> {
        self.table[u * self.n + v]
    }

    pub fn id_bound(&self) -> usize {
        self.n
    }
}

pub fn oracle_distances(g: &Graph) -> DistanceTable {
    let n = g.id_bound();
    let mut table = vec![None; n * n];
    let mut queue = VecDeque::new();
    for s in g.vertices() {
        let row = &mut table[s * n..(s + 1) * n];
        row[s] = Some(0);
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let du = row[u].unwrap();
            for &w in g.neighbors(u) {
                if row[w].is_none() {
                    row[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
    }
    DistanceTable { n, table }
}

/// Pairs `u < v` with `1 <= d(u, v) <= delta`.
pub fn oracle_reach_edges(g: &Graph, delta: usize) -> Vec<(usize, usize)> {
    let d = oracle_distances(g);
    let vs: Vec<usize> = g.vertices().collect();
    let mut out = Vec::new();
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            if d.get(u, v).is_some_and(|x| x >= 1 && x <= delta) {
                out.push((u, v));
            }
        }
    }
    out
}

/// Exhaustive maximum clique over every vertex subset; ties go to the
/// lexicographically smallest set.
pub fn oracle_max_clique(g: &Graph) -> Result<VertexSet> {
    let vs: Vec<usize> = g.vertices().collect();
    if vs.is_empty() {
        return Err(Error::validation("graph has no vertices"));
    }
    if vs.len() > MAX_CLIQUE_ORDER {
        return Err(Error::resource("oracle clique order", MAX_CLIQUE_ORDER as u64));
    }
    let index = |v: usize| vs.binary_search(&v).unwrap();
    let adjacency: Vec<u32> = vs
        .iter()
        .map(|&u| g.neighbors(u).iter().fold(0, |m, &w| m | 1 << index(w)))
        .collect();
    let members = |mask: u32| -> Vec<usize> { (0..vs.len()).filter(|i| mask >> i & 1 == 1).map(|i| vs[i]).collect() };
    let mut best = 0u32;
    for mask in 1u32..(1u32 << vs.len()) {
        if mask.count_ones() < best.count_ones() {
            continue;
        }
        let clique = (0..vs.len()).all(|i| mask >> i & 1 == 0 || (adjacency[i] | 1 << i) & mask == mask);
        if clique && (mask.count_ones() > best.count_ones() || members(mask) < members(best)) {
            best = mask;
        }
    }
    Ok(members(best).into_iter().collect())
}

/// Exhaustive search over injective maps, task vertices in id order.
pub fn oracle_embed(task: &Graph, system: &Graph, delta: usize) -> Result<Option<Embedding>> {
    if delta < 1 {
        return Err(Error::validation("reachability delta must be at least 1"));
    }
    if task.order() > MAX_EMBED_TASK_ORDER {
        return Err(Error::resource("oracle task order", MAX_EMBED_TASK_ORDER as u64));
    }
    if system.order() > MAX_EMBED_SYSTEM_ORDER {
        return Err(Error::resource("oracle system order", MAX_EMBED_SYSTEM_ORDER as u64));
    }
    let d = oracle_distances(system);
    let tasks: Vec<usize> = task.vertices().collect();
    let hosts: Vec<usize> = system.vertices().collect();
    let n = system.id_bound();
    let close: Vec<bool> = (0..n * n)
        .map(|i| d.get(i / n, i % n).is_some_and(|k| k >= 1 && k <= delta))
        .collect();
    // task edges back to vertices placed earlier
    let earlier: Vec<Vec<usize>> = tasks
        .iter()
        .enumerate()
        .map(|(i, &a)| tasks[..i].iter().copied().filter(|&b| task.has_edge(a, b)).collect())
        .collect();

    struct Search<'a> {
        tasks: &'a [usize],
        hosts: &'a [usize],
        earlier: &'a [Vec<usize>],
        close: &'a [bool],
        n: usize,
        image: Vec<usize>,
        used: Vec<bool>,
    }

    impl Search<'_> {
        fn extend(&mut self, depth: usize) -> bool {
            let Some(&a) = self.tasks.get(depth) else {
                return true;
            };
            for &x in self.hosts {
                if self.used[x] {
                    continue;
                }
                if self.earlier[depth]
                    .iter()
                    .all(|&b| self.close[self.image[b] * self.n + x])
                {
                    self.image[a] = x;
                    self.used[x] = true;
                    if self.extend(depth + 1) {
                        return true;
                    }
                    self.used[x] = false;
                }
            }
            false
        }
    }

    let mut search = Search {
        tasks: &tasks,
        hosts: &hosts,
        earlier: &earlier,
        close: &close,
        n,
        image: vec![usize::MAX; task.id_bound()],
        used: vec![false; n],
    };
    if search.extend(0) {
        let mapping = tasks.iter().map(|&a| (a, search.image[a])).collect();
        Ok(Some(Embedding { mapping, delta }))
    } else {
        Ok(None)
    }
}

/// Every simple cycle with `length` vertices, as canonical vertex
/// sequences (smallest vertex first, then the smaller of its two cycle
/// neighbors), sorted. Found by testing every vertex subset of that size
/// and every ordering of it.
pub fn oracle_cycles(g: &Graph, length: usize) -> Result<Vec<Vec<usize>>> {
    if length < 3 {
        return Err(Error::validation("cycle length must be at least 3"));
    }
    let vs: Vec<usize> = g.vertices().collect();
    if vs.len() > MAX_CYCLE_ORDER {
        return Err(Error::resource("oracle cycle order", MAX_CYCLE_ORDER as u64));
    }
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << vs.len()) {
        if mask.count_ones() as usize != length {
            continue;
        }
        let subset: Vec<usize> = (0..vs.len()).filter(|i| mask >> i & 1 == 1).map(|i| vs[i]).collect();
        let mut rest = subset[1..].to_vec();
        for_each_permutation(&mut rest, 0, &mut |perm| {
            if perm[0] < perm[perm.len() - 1] {
                let mut cycle = vec![subset[0]];
                cycle.extend_from_slice(perm);
                if (0..length).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % length])) {
                    out.push(cycle);
                }
            }
        });
    }
    out.sort();
    Ok(out)
}

fn for_each_permutation(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        for_each_permutation(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Shortest cycle length by trying every length with [`oracle_cycles`].
pub fn oracle_girth(g: &Graph) -> Result<Option<usize>> {
    for length in 3..=g.order() {
        if !oracle_cycles(g, length)?.is_empty() {
            return Ok(Some(length));
        }
    }
    Ok(None)
}

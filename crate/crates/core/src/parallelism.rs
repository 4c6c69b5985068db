//! Modified Amdahl model with communication delay.
//!
//! A `(W, Q)` task split into `p` branches gives each branch `w = W/p` of
//! computation and `q = Q/p` of exchange. An exchange between processors
//! `L` hops apart costs `T = L * t(q)`, and computation overlaps
//! communication, so a branch takes `max(w, T)`. Hence
//!
//! ```text
//! S_p = min(p, W / (L * t(Q/p)))        E_p = S_p / p
//! L_S(p) = W / (S_p * t(Q/p))           L_E(p) = W / (p * E_p * t(Q/p))
//! ```
//!
//! The integer part of the admissible distance is the reachability budget
//! `∂(p)`. A topology supports `p` branches of a fully connected task iff
//! its ∂(p)-density is at least `p`.

use std::collections::btree_map::{BTreeMap, Entry};

use serde::Serialize;

use crate::clique::delta_density;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TaskVolumes {
    /// `W`, total computation time on one processor.
    pub work: f64,
    /// `Q`, total exchange volume in bytes.
    pub exchange: f64,
}

impl TaskVolumes {
    pub fn new(work: f64, exchange: f64) -> Result<Self> {
        if !(work.is_finite() && work > 0.0) {
            return Err(Error::validation("computation volume W must be positive"));
        }
        if !(exchange.is_finite() && exchange >= 0.0) {
            return Err(Error::validation("exchange volume Q must be non-negative"));
        }
        Ok(TaskVolumes { work, exchange })
    }

    /// Data scaling: both volumes grow by `m`.
    pub fn scaled(&self, m: f64) -> Result<Self> {
        TaskVolumes::new(self.work * m, self.exchange * m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BranchLoad {
    pub branches: usize,
    pub work: f64,
    pub exchange: f64,
}

pub fn per_branch(tv: &TaskVolumes, p: usize) -> Result<BranchLoad> {
    if p < 1 {
        return Err(Error::validation("branch count must be at least 1"));
    }
    Ok(BranchLoad {
        branches: p,
        work: tv.work / p as f64,
        exchange: tv.exchange / p as f64,
    })
}

/// Affine one-hop delay `t(q) = latency + per_byte * q`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DelayModel {
    pub latency: f64,
    pub per_byte: f64,
}

impl DelayModel {
    pub fn new(latency: f64, per_byte: f64) -> Result<Self> {
        let ok = |x: f64| x.is_finite() && x >= 0.0;
        if !ok(latency) || !ok(per_byte) {
            return Err(Error::validation("delay coefficients must be finite and non-negative"));
        }
        if latency + per_byte <= 0.0 {
            return Err(Error::validation("delay model is degenerate (latency = per_byte = 0)"));
        }
        Ok(DelayModel { latency, per_byte })
    }

    pub fn delay(&self, q: f64) -> f64 {
        self.latency + self.per_byte * q
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "directive", content = "target", rename_all = "lowercase")]
pub enum Directive {
    Speedup(f64),
    Efficiency(f64),
}

impl Directive {
    pub fn name(&self) -> &'static str {
        match self {
            Directive::Speedup(_) => "speedup",
            Directive::Efficiency(_) => "efficiency",
        }
    }

    pub fn target(&self) -> f64 {
        match *self {
            Directive::Speedup(s) | Directive::Efficiency(s) => s,
        }
    }
}

fn check_distance(distance: f64) -> Result<()> {
    if distance.is_nan() || distance < 1.0 {
        return Err(Error::validation("distance must be at least 1"));
    }
    Ok(())
}

/// `S_p` at distance `distance`; 1 for a single branch.
pub fn achieved_speedup(tv: &TaskVolumes, p: usize, distance: f64, dm: &DelayModel) -> Result<f64> {
    let load = per_branch(tv, p)?;
    check_distance(distance)?;
    if p == 1 {
        return Ok(1.0);
    }
    let exchange_time = distance * dm.delay(load.exchange);
    Ok((tv.work / exchange_time).min(p as f64))
}

pub fn achieved_efficiency(tv: &TaskVolumes, p: usize, distance: f64, dm: &DelayModel) -> Result<f64> {
    Ok(achieved_speedup(tv, p, distance, dm)? / p as f64)
}

fn check_directive(p: usize, directive: Directive) -> Result<()> {
    if p < 2 {
        return Err(Error::validation("a distance constraint needs at least 2 branches"));
    }
    match directive {
        Directive::Speedup(s) if !(s.is_finite() && s >= 1.0) => {
            Err(Error::validation("speedup target must be at least 1"))
        }
        Directive::Speedup(s) if s > p as f64 => {
            Err(Error::Infeasible(format!("speedup {s} exceeds the branch count {p}")))
        }
        Directive::Efficiency(e) if !(e.is_finite() && e > 0.0 && e <= 1.0) => {
            Err(Error::validation("efficiency target must be in (0, 1]"))
        }
        _ => Ok(()),
    }
}

/// `L(p)` without the `L >= 1` admissibility check.
fn raw_distance(tv: &TaskVolumes, p: usize, directive: Directive, dm: &DelayModel) -> f64 {
    let t = dm.delay(tv.exchange / p as f64);
    match directive {
        Directive::Speedup(s) => tv.work / (s * t),
        Directive::Efficiency(e) => tv.work / (p as f64 * e * t),
    }
}

fn admissible(distance: f64) -> Result<f64> {
    if distance >= 1.0 {
        Ok(distance)
    } else {
        Err(Error::Infeasible(format!(
            "admissible distance {distance} is below one hop"
        )))
    }
}

/// `L_S(p)`: the largest distance at which `p` branches still reach the
/// speedup `target`.
pub fn required_distance_for_speedup(tv: &TaskVolumes, p: usize, target: f64, dm: &DelayModel) -> Result<f64> {
    let directive = Directive::Speedup(target);
    check_directive(p, directive)?;
    admissible(raw_distance(tv, p, directive, dm))
}

/// `L_E(p)` for an efficiency `target` in `(0, 1]`.
pub fn required_distance_for_efficiency(tv: &TaskVolumes, p: usize, target: f64, dm: &DelayModel) -> Result<f64> {
    let directive = Directive::Efficiency(target);
    check_directive(p, directive)?;
    admissible(raw_distance(tv, p, directive, dm))
}

pub fn required_distance(tv: &TaskVolumes, p: usize, directive: Directive, dm: &DelayModel) -> Result<f64> {
    match directive {
        Directive::Speedup(s) => required_distance_for_speedup(tv, p, s, dm),
        Directive::Efficiency(e) => required_distance_for_efficiency(tv, p, e, dm),
    }
}

/// `∂ = ⌊L⌋`, defined for `L >= 1`. Infinite distances saturate.
pub fn reachability_budget(distance: f64) -> Result<usize> {
    admissible(distance).map(|l| l.floor() as usize)
}

/// `k_NT = t(q) / (k_p * t(q / k_p))`: the share of a `k_p`-fold processor
/// increase that the network converts into shorter one-hop delays.
pub fn tech_coefficient(dm: &DelayModel, q: f64, k_p: f64) -> Result<f64> {
    if !(k_p.is_finite() && k_p > 0.0) {
        return Err(Error::validation("scaling factor k_p must be positive"));
    }
    if !(q.is_finite() && q >= 0.0) {
        return Err(Error::validation("exchange volume q must be non-negative"));
    }
    if dm.delay(q / k_p) <= 0.0 {
        return Err(Error::validation("delay vanishes at the scaled volume"));
    }
    // (a + bq) / (k a + bq), normalized so both pure-latency and
    // pure-bandwidth delays come out exactly
    if dm.latency == 0.0 {
        return Ok(1.0);
    }
    let r = dm.per_byte / dm.latency * q;
    Ok((1.0 + r) / (k_p + r))
}

/// One row of the planner scan.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlanStep {
    pub p: usize,
    #[serde(rename = "L")]
    pub distance: f64,
    /// `None` when `L < 1`.
    pub delta: Option<usize>,
    /// ∂-density at `delta`.
    pub density: Option<usize>,
    pub feasible: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParallelPlan {
    pub directive: &'static str,
    pub target: f64,
    /// Largest feasible branch count.
    pub p: Option<usize>,
    #[serde(rename = "L")]
    pub distance: Option<f64>,
    pub delta: Option<usize>,
    pub feasible: bool,
    /// `p` pairwise ∂-reachable processors: the first `p` vertices of the
    /// canonical maximum ∂-clique.
    pub witness_clique: Option<VertexSet>,
    pub scan: Vec<PlanStep>,
}

/// Scans `p = 2..=n` and returns the largest `p` whose distance budget
/// admits a ∂-clique of `p` processors.
///
/// Feasibility is not monotone in `p` (a larger `p` shrinks `q` and can
/// raise `L`), so every `p` is evaluated.
pub fn max_feasible_parallelism(
    g: &Graph,
    tv: &TaskVolumes,
    dm: &DelayModel,
    directive: Directive,
) -> Result<ParallelPlan> {
    if let Directive::Efficiency(_) = directive {
        check_directive(2, directive)?;
    } else if !(directive.target().is_finite() && directive.target() >= 1.0) {
        return Err(Error::validation("speedup target must be at least 1"));
    }

    let n = g.order();
    let mut densities: BTreeMap<usize, crate::clique::CliqueResult> = BTreeMap::new();
    let mut scan = Vec::new();
    let mut best: Option<(usize, f64, usize)> = None;

    for p in 2..=n {
        if let Directive::Speedup(s) = directive {
            if s > p as f64 {
                continue;
            }
        }
        let distance = raw_distance(tv, p, directive, dm);
        let Ok(delta) = reachability_budget(distance) else {
            scan.push(PlanStep {
                p,
                distance,
                delta: None,
                density: None,
                feasible: false,
            });
            continue;
        };
        // budgets beyond the id range all give the complete closure
        let key = delta.min(g.id_bound().max(1));
        let density = match densities.entry(key) {
            Entry::Occupied(e) => e.get().size(),
            Entry::Vacant(e) => e.insert(delta_density(g, key)?).size(),
        };
        let feasible = density >= p;
        scan.push(PlanStep {
            p,
            distance,
            delta: Some(delta),
            density: Some(density),
            feasible,
        });
        if feasible {
            best = Some((p, distance, delta));
        }
    }

    let witness = best.map(|(p, _, delta)| {
        let key = delta.min(g.id_bound().max(1));
        densities[&key].vertices.iter().take(p).collect::<VertexSet>()
    });
    Ok(ParallelPlan {
        directive: directive.name(),
        target: directive.target(),
        p: best.map(|b| b.0),
        distance: best.map(|b| b.1),
        delta: best.map(|b| b.2),
        feasible: best.is_some(),
        witness_clique: witness,
        scan,
    })
}

//! Acceptance checks, one line per criterion. Run with
//! `cargo test -p paratopo-core --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use paratopo_core::clique::max_clique_traced;
use paratopo_core::oracle::{
    oracle_distances, oracle_embed, oracle_girth, oracle_max_clique, oracle_reach_edges, MAX_EMBED_SYSTEM_ORDER,
};
use paratopo_core::parallelism::{required_distance_for_efficiency, required_distance_for_speedup};
use paratopo_core::projection::distances_from;
use paratopo_core::{
    achieved_efficiency, achieved_speedup, compress, delta_density, diameter, eccentricity, embed, girth,
    is_fault_tolerant, max_clique, max_feasible_parallelism, restricted_projection, tech_coefficient,
    worst_case_density, DelayModel, Directive, Error, Graph, TaskVolumes, Topology, VertexSet,
};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Check = std::result::Result<String, String>;

/// Name, check, time limit in seconds.
type Criterion = (&'static str, fn() -> Check, u64);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        match $cond {
            true => {}
            false => return Err(format!($($fmt)+)),
        }
    };
}

fn g6() -> Graph {
    Graph::from_edges(
        6,
        [
            (0, 1),
            (0, 3),
            (0, 4),
            (1, 2),
            (1, 4),
            (1, 5),
            (2, 3),
            (2, 4),
            (2, 5),
            (3, 4),
            (4, 5),
        ],
    )
    .unwrap()
}

fn topo(t: Topology) -> Graph {
    t.generate().unwrap()
}

fn reach_oracle_graph(g: &Graph, delta: usize) -> Graph {
    Graph::from_edges(g.id_bound(), oracle_reach_edges(g, delta)).unwrap()
}

fn fixture_clique() -> Check {
    let g = g6();
    let expected = VertexSet::from([1, 2, 4, 5]);
    let mc = max_clique(&g).map_err(|e| e.to_string())?;
    let dd = delta_density(&g, 1).map_err(|e| e.to_string())?;
    ensure!(mc.vertices == expected, "max_clique gave {}", mc.vertices);
    ensure!(
        dd.vertices == expected && dd.size() == 4,
        "delta_density gave {}",
        dd.vertices
    );
    Ok(format!("clique {} phi=4", mc.vertices))
}

fn fixture_brackets() -> Check {
    let g = g6();
    let all = g.vertex_set();
    let zero = restricted_projection(&g, 0, &all)
        .map_err(|e| e.to_string())?
        .to_bracket();
    let five = restricted_projection(&g, 5, &all)
        .map_err(|e| e.to_string())?
        .to_bracket();
    ensure!(zero == "0(1(4),3(4),4(1,3))", "vertex 0 gave {zero}");
    ensure!(five == "5(1(2,4),2(1,4),4(1,2))", "vertex 5 gave {five}");
    Ok(format!("{zero} {five}"))
}

fn elimination_trace() -> Check {
    let (_, trace) = max_clique_traced(&g6()).map_err(|e| e.to_string())?;
    let first = trace.passes.first().ok_or("no elimination pass recorded")?;
    ensure!(
        first.eliminated == VertexSet::from([0, 3]),
        "eliminated {}",
        first.eliminated
    );
    for &(v, bound) in &first.bounds {
        let want = if v == 0 || v == 3 { 3 } else { 4 };
        ensure!(bound == want, "vertex {v} bound {bound}, expected {want}");
    }
    ensure!(first.bounds.len() == 6, "{} bounds recorded", first.bounds.len());
    Ok(format!("first pass eliminated {}", first.eliminated))
}

fn graph_from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> Graph {
    let edges = pairs
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &e)| e);
    Graph::from_edges(n, edges).unwrap()
}

fn is_connected(n: usize, pairs: &[(usize, usize)], mask: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut seen = 1u32;
    loop {
        let mut grown = seen;
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 && (seen >> u & 1 == 1 || seen >> v & 1 == 1) {
                grown |= 1 << u | 1 << v;
            }
        }
        if grown == seen {
            return seen.count_ones() as usize == n;
        }
        seen = grown;
    }
}

fn task_graphs() -> Vec<(&'static str, Graph)> {
    vec![
        ("P3", Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap()),
        ("K3", topo(Topology::Complete(3))),
        ("C4", topo(Topology::Ring(4))),
        ("K1,3", Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap()),
        ("K4", topo(Topology::Complete(4))),
    ]
}

/// Every mismatch between the fast path and the oracles on `g`.
fn audit(g: &Graph, tasks: &[(&'static str, Graph)]) -> Vec<String> {
    let mut bad = Vec::new();
    let n = g.id_bound();
    let table = oracle_distances(g);

    let mut connected = true;
    let mut widest = 0;
    for u in g.vertices() {
        let row = distances_from(g, u).unwrap();
        let oracle_row: Vec<Option<usize>> = (0..n).map(|v| table.get(u, v)).collect();
        if row != oracle_row {
            bad.push(format!("distances from {u}"));
        }
        let oracle_ecc = oracle_row.iter().try_fold(0, |m, d| d.map(|d| m.max(d)));
        match (eccentricity(g, u), oracle_ecc) {
            (Ok(e), Some(o)) if e == o => widest = widest.max(e),
            (Err(Error::Disconnected { .. }), None) => connected = false,
            _ => bad.push(format!("eccentricity of {u}")),
        }
    }
    match diameter(g) {
        Ok(d) if connected && d == widest => {}
        Err(_) if !connected => {}
        other => bad.push(format!("diameter {other:?}")),
    }

    let fast = max_clique(g).unwrap().size();
    let slow = oracle_max_clique(g).unwrap().len();
    if fast != slow {
        bad.push(format!("clique size {fast} vs {slow}"));
    }

    let max_delta = if connected {
        widest.max(1)
    } else {
        n.saturating_sub(1).max(1)
    };
    for delta in 1..=max_delta {
        let ours: Vec<(usize, usize)> = compress(g, delta).unwrap().derived().edges().collect();
        if ours != oracle_reach_edges(g, delta) {
            bad.push(format!("compress at {delta}"));
        }
    }

    if g.order() <= MAX_EMBED_SYSTEM_ORDER {
        for (name, task) in tasks {
            for delta in 1..=2 {
                let fast = embed(task, g, delta).unwrap().is_some();
                let slow = oracle_embed(task, g, delta).unwrap().is_some();
                if fast != slow {
                    bad.push(format!("embed {name} at {delta}: {fast} vs {slow}"));
                }
            }
        }
    }
    bad
}

fn oracle_equivalence() -> Check {
    let tasks = task_graphs();
    let mut graphs_checked = 0usize;
    let mut mismatches: Vec<String> = Vec::new();

    for n in 1..=7usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let masks: Vec<u64> = (0..1u64 << pairs.len())
            .filter(|&m| is_connected(n, &pairs, m))
            .collect();
        graphs_checked += masks.len();
        let found: Vec<String> = masks
            .par_iter()
            .flat_map_iter(|&m| {
                let g = graph_from_mask(n, &pairs, m);
                audit(&g, &tasks)
                    .into_iter()
                    .map(move |e| format!("n={n} mask={m:#x}: {e}"))
            })
            .collect();
        mismatches.extend(found);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0f7e);
    let random: Vec<Graph> = (0..200)
        .map(|_| {
            let n = rng.random_range(8..=10usize);
            let density = rng.random_range(0.2..0.7);
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.random_bool(density))
                .collect();
            Graph::from_edges(n, edges).unwrap()
        })
        .collect();
    graphs_checked += random.len();
    let found: Vec<String> = random
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, g)| audit(g, &tasks).into_iter().map(move |e| format!("random #{i}: {e}")))
        .collect();
    mismatches.extend(found);

    ensure!(
        mismatches.is_empty(),
        "{} mismatches, first: {}",
        mismatches.len(),
        mismatches[0]
    );
    Ok(format!("{graphs_checked} graphs, 0 mismatches"))
}

fn amdahl_identities() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xa11_da41);
    let mut points = 0;
    let mut attempts = 0;
    let mut worst: f64 = 0.0;
    while points < 1000 {
        attempts += 1;
        ensure!(attempts < 1_000_000, "could not find 1000 admissible points");
        let work = 10f64.powf(rng.random_range(0.0..7.0));
        let latency = if rng.random_bool(0.1) {
            0.0
        } else {
            rng.random_range(1e-3..100.0)
        };
        let per_byte = if latency == 0.0 || rng.random_bool(0.9) {
            rng.random_range(1e-3..10.0)
        } else {
            0.0
        };
        // zero delay leaves the distance unconstrained, so keep t(q) > 0
        let exchange = if latency > 0.0 && rng.random_bool(0.1) {
            0.0
        } else {
            10f64.powf(rng.random_range(-2.0..6.0))
        };
        let p = rng.random_range(2..=1024usize);
        let target = rng.random_range(1.0..=p as f64);
        let tv = TaskVolumes::new(work, exchange).map_err(|e| e.to_string())?;
        let dm = DelayModel::new(latency, per_byte).map_err(|e| e.to_string())?;

        let l = match required_distance_for_speedup(&tv, p, target, &dm) {
            Ok(l) => l,
            Err(Error::Infeasible(_)) => continue,
            Err(e) => return Err(e.to_string()),
        };
        let s = achieved_speedup(&tv, p, l, &dm).map_err(|e| e.to_string())?;
        let rel = ((s - target) / target).abs();
        worst = worst.max(rel);
        ensure!(rel <= 1e-9, "speedup round trip {target} -> {s} (p={p}, L={l})");

        let e = achieved_efficiency(&tv, p, l, &dm).map_err(|e| e.to_string())?;
        ensure!(e == s / p as f64, "E != S/p at p={p}: {e} vs {}", s / p as f64);

        let eff = target / p as f64;
        if let Ok(le) = required_distance_for_efficiency(&tv, p, eff, &dm) {
            let back = achieved_efficiency(&tv, p, le, &dm).map_err(|e| e.to_string())?;
            let rel = ((back - eff) / eff).abs();
            worst = worst.max(rel);
            ensure!(rel <= 1e-9, "efficiency round trip {eff} -> {back} (p={p})");
        }

        let k = rng.random_range(1.0..64.0);
        let q = rng.random_range(1e-3..1e6);
        let pure_latency = DelayModel::new(latency.max(1e-3), 0.0).unwrap();
        let pure_bandwidth = DelayModel::new(0.0, per_byte.max(1e-3)).unwrap();
        let low = tech_coefficient(&pure_latency, q, k).map_err(|e| e.to_string())?;
        let high = tech_coefficient(&pure_bandwidth, q, k).map_err(|e| e.to_string())?;
        ensure!(low == 1.0 / k, "k_NT with beta=0 is {low}, expected {}", 1.0 / k);
        ensure!(high == 1.0, "k_NT with alpha=0 is {high}");
        points += 1;
    }
    Ok(format!("1000 points, worst relative error {worst:.1e}"))
}

fn planner_discrimination() -> Check {
    let tv = TaskVolumes::new(240.0, 24.0).unwrap();
    let dm = DelayModel::new(40.0, 1.0).unwrap();
    let directive = Directive::Efficiency(0.5);
    let cases = [("C6", topo(Topology::Ring(6)), 3, 3), ("G6", g6(), 5, 2)];
    let mut summary = Vec::new();
    for (name, g, want_p, want_delta) in cases {
        let plan = max_feasible_parallelism(&g, &tv, &dm, directive).map_err(|e| e.to_string())?;

        // independent scan: L = W / (p E (alpha + beta Q / p)), density from oracle cliques
        let mut brute = None;
        for p in 2..=g.order() {
            let l = 240.0 / (p as f64 * 0.5 * (40.0 + 24.0 / p as f64));
            if l < 1.0 {
                continue;
            }
            let delta = l.floor() as usize;
            let phi = oracle_max_clique(&reach_oracle_graph(&g, delta)).unwrap().len();
            if phi >= p {
                brute = Some((p, delta));
            }
        }
        ensure!(
            brute == Some((want_p, want_delta)),
            "{name}: brute-force scan gave {brute:?}"
        );
        ensure!(
            (plan.p, plan.delta) == (Some(want_p), Some(want_delta)),
            "{name}: planner gave p={:?} delta={:?}",
            plan.p,
            plan.delta
        );
        let witness = plan.witness_clique.ok_or(format!("{name}: no witness"))?;
        let table = oracle_distances(&g);
        let pairwise = witness.iter().all(|u| {
            witness
                .iter()
                .all(|v| u == v || table.get(u, v).is_some_and(|d| d <= want_delta))
        });
        ensure!(witness.len() == want_p && pairwise, "{name}: bad witness {witness}");
        summary.push(format!("{name} p*={want_p} delta={want_delta}"));
    }
    Ok(summary.join(", "))
}

fn fault_tolerance() -> Check {
    let g = g6();
    let report = worst_case_density(&g, 1, 1).map_err(|e| e.to_string())?;
    let brute: Vec<usize> = (0..6)
        .map(|v| {
            let damaged = g.remove_vertices(&VertexSet::from([v])).unwrap();
            oracle_max_clique(&damaged).unwrap().len()
        })
        .collect();
    let min = *brute.iter().min().unwrap();
    let first = brute.iter().position(|&d| d == min).unwrap();
    ensure!(min == 3 && first == 1, "exhaustive recomputation gave {min} at {first}");
    ensure!(
        report.min_density == 3 && report.witness == VertexSet::from([1]),
        "worst case {} with witness {}",
        report.min_density,
        report.witness
    );
    let ok = is_fault_tolerant(&g, 1, 3, 1).map_err(|e| e.to_string())?;
    let bad = is_fault_tolerant(&g, 1, 4, 1).map_err(|e| e.to_string())?;
    ensure!(ok.tolerant == brute.iter().all(|&d| d >= 3), "p=3 verdict disagrees");
    ensure!(!bad.tolerant && brute.iter().any(|&d| d < 4), "p=4 verdict disagrees");
    ensure!(ok.tolerant, "p=3 should be tolerated");
    Ok(format!(
        "min density 3 at {{1}}, p=3 tolerant, p=4 fails at {}",
        bad.counterexample.map_or_else(|| "-".to_string(), |c| c.to_string())
    ))
}

fn topology_values() -> Check {
    let c6 = topo(Topology::Ring(6));
    let q3 = topo(Topology::Hypercube(3));
    let densities = [("C6", &c6, 2, 3), ("Q3", &q3, 2, 4), ("Q3", &q3, 3, 8)];
    for (name, g, delta, want) in densities {
        let fast = delta_density(g, delta).map_err(|e| e.to_string())?.size();
        let slow = oracle_max_clique(&reach_oracle_graph(g, delta)).unwrap().len();
        ensure!(
            fast == want && slow == want,
            "phi_{delta}({name}) = {fast}, oracle {slow}"
        );
    }
    let g6 = g6();
    for (name, g, want) in [("G6", &g6, 3), ("Q3", &q3, 4)] {
        let fast = girth(g).map_err(|e| e.to_string())?;
        let slow = oracle_girth(g).unwrap();
        ensure!(
            fast == Some(want) && slow == Some(want),
            "girth({name}) = {fast:?}, oracle {slow:?}"
        );
    }
    Ok("phi_2(C6)=3 phi_2(Q3)=4 phi_3(Q3)=8 girth(G6)=3 girth(Q3)=4".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("fixture maximum clique", fixture_clique, 1),
        ("restricted projection brackets", fixture_brackets, 1),
        ("first elimination pass", elimination_trace, 1),
        ("oracle equivalence", oracle_equivalence, 300),
        ("Amdahl identities", amdahl_identities, 10),
        ("planner discrimination", planner_discrimination, 5),
        ("fault tolerance", fault_tolerance, 1),
        ("topology values", topology_values, 5),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.into_iter().enumerate() {
        let id = i + 1;
        if only.is_some_and(|o| o != id) {
            continue;
        }
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(limit) => {
                Err(format!("{detail}; took {elapsed:.2?}, limit {limit}s"))
            }
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {id} PASS  {name} ({elapsed:.2?}): {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {id} FAIL  {name} ({elapsed:.2?}): {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}

use std::fmt::Write as _;
use std::path::Path;

use paratopo_core::clique::{enumerate_delta_components, max_clique_traced};
use paratopo_core::oracle::{
    oracle_cycles, oracle_distances, oracle_embed, oracle_girth, oracle_max_clique, oracle_reach_edges,
    MAX_CLIQUE_ORDER, MAX_CYCLE_ORDER, MAX_EMBED_SYSTEM_ORDER, MAX_EMBED_TASK_ORDER,
};
use paratopo_core::projection::distances_from;
use paratopo_core::{
    build_projection, compress, delta_density, eccentricity, embed, embed_ring, enumerate_cycles, girth,
    is_fault_tolerant, max_clique, max_feasible_parallelism, worst_case_density, DelayModel, Directive, Embedding,
    Error, Graph, ParallelPlan, ProjectionMode, TaskVolumes, Topology,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::*;

/// Why a command failed; decides the exit code.
#[derive(Debug)]
pub enum Failure {
    Core(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(e) if e.is_resource() => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => e.fmt(f),
            Failure::Input(msg) => f.write_str(msg),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

#[derive(Serialize)]
pub struct InputInfo {
    pub path: String,
    pub order: usize,
    pub size: usize,
}

/// What a command produced, before rendering.
pub struct Output {
    pub text: String,
    pub result: Value,
    pub inputs: Vec<InputInfo>,
    /// False only when an audit found a disagreement.
    pub agreed: bool,
}

impl Output {
    fn new(text: String, result: Value) -> Self {
        Output {
            text,
            result,
            inputs: Vec::new(),
            agreed: true,
        }
    }

    fn with_input(mut self, path: &Path, g: &Graph) -> Self {
        self.inputs.push(info(path, g));
        self
    }
}

fn info(path: &Path, g: &Graph) -> InputInfo {
    InputInfo {
        path: path.display().to_string(),
        order: g.order(),
        size: g.size(),
    }
}

pub fn load(path: &Path) -> Outcome<Graph> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    Graph::from_edge_list(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn edges_json(g: &Graph) -> Value {
    json!(g.edges().map(|(u, v)| [u, v]).collect::<Vec<_>>())
}

fn edge_text(g: &Graph) -> String {
    let mut text = g.to_edge_list();
    if !text.is_empty() {
        text.push('\n');
    }
    text
}

fn mapping_lines(e: &Embedding) -> Vec<String> {
    e.mapping.iter().map(|(a, x)| format!("{a} -> {x}")).collect()
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn run(command: &Command) -> Outcome<Output> {
    match command {
        Command::Gen(a) => gen(a),
        Command::Project(a) => project(a),
        Command::Metrics(a) => metrics(a),
        Command::Reach(a) => reach(a),
        Command::Clique(a) => clique(a),
        Command::Density(a) => density(a),
        Command::Components(a) => components(a),
        Command::Plan(a) => plan(a),
        Command::Embed(a) => embedding(a),
        Command::Cycles(a) => cycles(a),
        Command::Girth(a) => girth_cmd(a),
        Command::Faults(a) => faults(a),
        Command::Compare(a) => compare(a),
        Command::Audit(a) => audit(a),
    }
}

fn gen(a: &GenArgs) -> Outcome<Output> {
    let single = || match a.sizes.as_slice() {
        [n] => Ok(*n),
        _ => Err(Failure::Input(format!("{:?} takes exactly one size", a.kind))),
    };
    let topology = match a.kind {
        Kind::Ring => Topology::Ring(single()?),
        Kind::Complete => Topology::Complete(single()?),
        Kind::Hypercube => Topology::Hypercube(single()?),
        Kind::Torus => Topology::Torus(a.sizes.clone()),
        Kind::Mesh => Topology::Mesh(a.sizes.clone()),
    };
    let g = topology.generate()?;
    let result = json!({
        "topology": topology,
        "order": g.order(),
        "size": g.size(),
        "edges": edges_json(&g),
    });
    Ok(Output::new(edge_text(&g), result))
}

fn project(a: &ProjectArgs) -> Outcome<Output> {
    let g = load(&a.graph.graph)?;
    let mode = match a.mode {
        Mode::Full => ProjectionMode::FullChains,
        Mode::Shortest => ProjectionMode::ShortestOnly,
    };
    let p = build_projection(&g, a.root, a.depth, mode)?;
    let bracket = p.to_bracket();
    let result = json!({
        "root": a.root,
        "depth": a.depth,
        "mode": mode,
        "bracket": bracket,
        "node_count": p.node_count(),
        "level_counts": p.level_counts(),
    });
    Ok(Output::new(format!("{bracket}\n"), result).with_input(&a.graph.graph, &g))
}

fn eccentricities(g: &Graph) -> Outcome<Option<Vec<usize>>> {
    let mut out = Vec::new();
    for v in g.vertices() {
        match eccentricity(g, v) {
            Ok(e) => out.push(e),
            Err(Error::Disconnected { .. }) => return Ok(None),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Some(out))
}

/// Largest finite hop distance; the diameter of a connected graph.
fn widest_distance(g: &Graph) -> Outcome<usize> {
    let mut widest = 0;
    for v in g.vertices() {
        let row = distances_from(g, v)?;
        widest = widest.max(row.into_iter().flatten().max().unwrap_or(0));
    }
    Ok(widest)
}

fn metrics(a: &GraphArg) -> Outcome<Output> {
    let g = load(&a.graph)?;
    let ecc = eccentricities(&g)?;
    let diameter = ecc.as_ref().and_then(|e| e.iter().copied().max());
    let range = g.degree_range();

    let mut text = String::new();
    writeln!(text, "order: {}", g.order()).unwrap();
    writeln!(text, "size: {}", g.size()).unwrap();
    match range {
        Some((lo, hi)) => writeln!(text, "degree range: {lo}..{hi}").unwrap(),
        None => writeln!(text, "degree range: -").unwrap(),
    }
    match (&ecc, diameter) {
        (Some(e), Some(d)) => {
            let pairs: Vec<String> = g.vertices().zip(e).map(|(v, x)| format!("{v}:{x}")).collect();
            writeln!(text, "eccentricities: {}", pairs.join(" ")).unwrap();
            writeln!(text, "diameter: {d}").unwrap();
        }
        _ => writeln!(text, "diameter: disconnected").unwrap(),
    }
    let result = json!({
        "order": g.order(),
        "size": g.size(),
        "degree_min": range.map(|r| r.0),
        "degree_max": range.map(|r| r.1),
        "connected": ecc.is_some(),
        "eccentricities": ecc.map(|e| g.vertices().zip(e).collect::<Vec<_>>()),
        "diameter": diameter,
    });
    Ok(Output::new(text, result).with_input(&a.graph, &g))
}

fn reach(a: &DeltaArgs) -> Outcome<Output> {
    let g = load(&a.graph.graph)?;
    let r = compress(&g, a.delta)?;
    let h = r.derived();
    let result = json!({
        "delta": a.delta,
        "order": h.order(),
        "size": h.size(),
        "edges": edges_json(h),
    });
    Ok(Output::new(edge_text(h), result).with_input(&a.graph.graph, &g))
}

fn clique(a: &CliqueArgs) -> Outcome<Output> {
    let g = load(&a.graph.graph)?;
    let (found, trace) = max_clique_traced(&g)?;
    let mut text = format!("size: {}\nclique: {}\n", found.size(), found.vertices);
    if a.trace {
        writeln!(text, "seed: {}", trace.seed).unwrap();
        for (i, pass) in trace.passes.iter().enumerate() {
            let bounds: Vec<String> = pass.bounds.iter().map(|(v, b)| format!("{v}:{b}")).collect();
            writeln!(
                text,
                "pass {}: incumbent {} bounds {} eliminated {}",
                i + 1,
                pass.incumbent,
                bounds.join(" "),
                pass.eliminated
            )
            .unwrap();
        }
    }
    let mut result = json!({ "size": found.size(), "clique": found.vertices });
    if a.trace {
        result["trace"] = json!(trace);
    }
    Ok(Output::new(text, result).with_input(&a.graph.graph, &g))
}

fn density(a: &DeltaArgs) -> Outcome<Output> {
    let g = load(&a.graph.graph)?;
    let d = delta_density(&g, a.delta)?;
    let text = format!("delta: {}\ndensity: {}\nclique: {}\n", a.delta, d.size(), d.vertices);
    let result = json!({ "delta": a.delta, "density": d.size(), "clique": d.vertices });
    Ok(Output::new(text, result).with_input(&a.graph.graph, &g))
}

fn components(a: &ComponentArgs) -> Outcome<Output> {
    let g = load(&a.graph.graph)?;
    let sets = enumerate_delta_components(&g, a.delta, a.min_size)?;
    let text: String = sets.iter().map(|s| format!("{s}\n")).collect();
    let result = json!({
        "delta": a.delta,
        "min_size": a.min_size,
        "count": sets.len(),
        "components": sets,
    });
    Ok(Output::new(text, result).with_input(&a.graph.graph, &g))
}

struct Scenario {
    volumes: TaskVolumes,
    delay: DelayModel,
    directive: Directive,
}

/// `None` when no workload flag is given; an error when only some are.
fn scenario(w: &Workload) -> Outcome<Option<Scenario>> {
    let given = [w.work, w.exchange, w.alpha, w.beta, w.speedup.or(w.efficiency)];
    if given.iter().all(Option::is_none) {
        return Ok(None);
    }
    let [Some(work), Some(exchange), Some(alpha), Some(beta), _] = given else {
        return Err(Failure::Input("--W, --Q, --alpha and --beta are all required".into()));
    };
    let directive = match (w.speedup, w.efficiency) {
        (Some(s), None) => Directive::Speedup(s),
        (None, Some(e)) => Directive::Efficiency(e),
        _ => {
            return Err(Failure::Input(
                "exactly one of --speedup or --efficiency is required".into(),
            ))
        }
    };
    Ok(Some(Scenario {
        volumes: TaskVolumes::new(work, exchange)?,
        delay: DelayModel::new(alpha, beta)?,
        directive,
    }))
}

fn verdict(plan: &ParallelPlan) -> String {
    match (plan.p, plan.delta) {
        (Some(p), Some(d)) => format!("p*={p} delta={d}"),
        _ => "infeasible".into(),
    }
}

fn plan(a: &PlanArgs) -> Outcome<Output> {
    let g = load(&a.graph.graph)?;
    let s = scenario(&a.workload)?
        .ok_or_else(|| Failure::Input("plan needs --W, --Q, --alpha, --beta and a directive".into()))?;
    let plan = max_feasible_parallelism(&g, &s.volumes, &s.delay, s.directive)?;

    let mut text = String::new();
    writeln!(text, "directive: {} {}", plan.directive, plan.target).unwrap();
    writeln!(text, "feasible: {}", yes_no(plan.feasible)).unwrap();
    if let (Some(p), Some(l), Some(d), Some(w)) = (plan.p, plan.distance, plan.delta, &plan.witness_clique) {
        writeln!(text, "p*: {p}").unwrap();
        writeln!(text, "L: {l}").unwrap();
        writeln!(text, "delta: {d}").unwrap();
        writeln!(text, "witness: {w}").unwrap();
    }
    writeln!(text, "scan:").unwrap();
    let dash = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
    let rows: Vec<Vec<String>> = plan
        .scan
        .iter()
        .map(|s| {
            vec![
                s.p.to_string(),
                format!("{}", s.distance),
                dash(s.delta),
                dash(s.density),
                yes_no(s.feasible).to_string(),
            ]
        })
        .collect();
    let header = ["p", "L", "delta", "density", "feasible"].map(String::from);
    text.push_str(&table(&header, &rows));
    let result = serde_json::to_value(&plan).expect("plan serializes");
    Ok(Output::new(text, result).with_input(&a.graph.graph, &g))
}

fn embedding(a: &EmbedArgs) -> Outcome<Output> {
    let g = load(&a.graph.graph)?;
    let mut inputs = vec![info(&a.graph.graph, &g)];
    let (found, task) = match (&a.task, a.ring) {
        (Some(path), _) => {
            let t = load(path)?;
            inputs.push(info(path, &t));
            (embed(&t, &g, a.delta)?, json!({ "file": path.display().to_string() }))
        }
        (None, Some(length)) => (embed_ring(&g, length, a.delta)?, json!({ "ring": length })),
        (None, None) => unreachable!("clap requires --task or --ring"),
    };
    let text = match &found {
        Some(e) => mapping_lines(e).iter().map(|l| format!("{l}\n")).collect(),
        None => "none\n".to_string(),
    };
    let result = json!({
        "task": task,
        "delta": a.delta,
        "found": found.is_some(),
        "mapping": found.as_ref().map(mapping_lines),
    });
    let mut out = Output::new(text, result);
    out.inputs = inputs;
    Ok(out)
}

fn cycle_text(c: &[usize]) -> String {
    let parts: Vec<String> = c.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

fn cycles(a: &CycleArgs) -> Outcome<Output> {
    let g = load(&a.graph.graph)?;
    let found = enumerate_cycles(&g, a.length)?;
    let text: String = found.iter().map(|c| format!("{}\n", cycle_text(c))).collect();
    let result = json!({ "length": a.length, "count": found.len(), "cycles": found });
    Ok(Output::new(text, result).with_input(&a.graph.graph, &g))
}

fn girth_cmd(a: &GraphArg) -> Outcome<Output> {
    let g = load(&a.graph)?;
    let value = girth(&g)?;
    let text = value.map_or("acyclic\n".to_string(), |v| format!("{v}\n"));
    Ok(Output::new(text, json!({ "girth": value })).with_input(&a.graph, &g))
}

fn faults(a: &FaultArgs) -> Outcome<Output> {
    let g = load(&a.graph.graph)?;
    let report = worst_case_density(&g, a.delta, a.f)?;
    let mut text = String::new();
    writeln!(text, "delta: {}", report.delta).unwrap();
    writeln!(text, "f: {}", report.f).unwrap();
    writeln!(text, "min density: {}", report.min_density).unwrap();
    writeln!(text, "witness: {}", report.witness).unwrap();
    writeln!(text, "examined: {}", report.examined).unwrap();
    writeln!(text, "distances: recomputed on G - F").unwrap();
    let mut result = serde_json::to_value(&report).expect("report serializes");
    result["distances"] = json!("G-F");
    if let Some(p) = a.p {
        let check = is_fault_tolerant(&g, a.delta, p, a.f)?;
        write!(text, "tolerant at p={p}: {}", yes_no(check.tolerant)).unwrap();
        match &check.counterexample {
            Some(c) => writeln!(text, " (counterexample {c})").unwrap(),
            None => text.push('\n'),
        }
        result["tolerance"] = json!({
            "p": p,
            "tolerant": check.tolerant,
            "counterexample": check.counterexample,
            "examined": check.examined,
        });
    }
    Ok(Output::new(text, result).with_input(&a.graph.graph, &g))
}

/// Left-aligned columns separated by two spaces.
fn table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in std::iter::once(header).chain(rows.iter().map(Vec::as_slice)) {
        let cells: Vec<String> = row.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn compare(a: &CompareArgs) -> Outcome<Output> {
    let s = scenario(&a.workload)?;
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    let mut inputs = Vec::new();
    for path in &a.graphs {
        let g = load(path)?;
        inputs.push(info(path, &g));
        let range = g.degree_range();
        let diameter = eccentricities(&g)?.and_then(|e| e.into_iter().max());
        let reach = widest_distance(&g)?.max(1);
        let girth = girth(&g)?;
        let mut densities = Vec::new();
        if g.order() > 0 {
            for delta in 1..=reach {
                densities.push((delta, delta_density(&g, delta)?.size()));
            }
        }
        let plan = match &s {
            Some(s) => Some(max_feasible_parallelism(&g, &s.volumes, &s.delay, s.directive)?),
            None => None,
        };

        let phi: Vec<String> = densities.iter().map(|(d, p)| format!("{d}:{p}")).collect();
        rows.push(vec![
            path.display().to_string(),
            g.order().to_string(),
            range.map_or("-".into(), |(lo, hi)| format!("{lo}..{hi}")),
            diameter.map_or("disconnected".into(), |d| d.to_string()),
            girth.map_or("acyclic".into(), |v| v.to_string()),
            phi.join(" "),
            plan.as_ref().map_or("-".into(), verdict),
        ]);
        entries.push(json!({
            "path": path.display().to_string(),
            "n": g.order(),
            "degree_min": range.map(|r| r.0),
            "degree_max": range.map(|r| r.1),
            "diameter": diameter,
            "girth": girth,
            "densities": densities.iter().map(|&(delta, phi)| json!({ "delta": delta, "phi": phi })).collect::<Vec<_>>(),
            "plan": plan.as_ref().map(|p| json!({
                "p": p.p,
                "L": p.distance,
                "delta": p.delta,
                "feasible": p.feasible,
                "witness_clique": p.witness_clique,
            })),
        }));
    }
    let header = ["graph", "n", "degree", "diameter", "girth", "phi", "plan"].map(String::from);
    let mut text = table(&header, &rows);
    if let Some(s) = &s {
        writeln!(text, "directive: {} {}", s.directive.name(), s.directive.target()).unwrap();
    }
    let mut out = Output::new(text, json!({ "graphs": entries }));
    out.inputs = inputs;
    Ok(out)
}

#[derive(Serialize)]
struct Check {
    name: String,
    status: &'static str,
    detail: String,
}

fn audit(a: &AuditArgs) -> Outcome<Output> {
    let g = load(&a.graph.graph)?;
    let mut checks = Vec::new();
    let mut record = |name: String, agree: Option<bool>, detail: String| {
        let status = match agree {
            Some(true) => "agree",
            Some(false) => "DISAGREE",
            None => "skipped",
        };
        checks.push(Check { name, status, detail });
    };

    let reference = oracle_distances(&g);
    let mut distance_ok = true;
    for v in g.vertices() {
        let row = distances_from(&g, v)?;
        distance_ok &= (0..g.id_bound()).all(|u| row[u] == reference.get(v, u));
    }
    record("distances".into(), Some(distance_ok), format!("{} sources", g.order()));

    let ecc = eccentricities(&g)?;
    let oracle_ecc: Option<Vec<usize>> = g
        .vertices()
        .map(|v| g.vertices().try_fold(0, |m, u| reference.get(v, u).map(|d| m.max(d))))
        .collect();
    record(
        "eccentricities".into(),
        Some(ecc == oracle_ecc),
        ecc.as_ref()
            .and_then(|e| e.iter().max())
            .map_or("disconnected".into(), |d| format!("diameter {d}")),
    );

    let deltas: Vec<usize> = match a.delta {
        Some(d) => vec![d],
        None => (1..=widest_distance(&g)?.max(1)).collect(),
    };
    for &delta in &deltas {
        let fast: Vec<(usize, usize)> = compress(&g, delta)?.derived().edges().collect();
        let slow = oracle_reach_edges(&g, delta);
        record(
            format!("compress delta={delta}"),
            Some(fast == slow),
            format!("{} edges", fast.len()),
        );
    }

    if g.order() == 0 {
        record("cliques".into(), None, "graph has no vertices".into());
    } else if g.order() > MAX_CLIQUE_ORDER {
        record(
            "cliques".into(),
            None,
            format!("order {} above {MAX_CLIQUE_ORDER}", g.order()),
        );
    } else {
        let fast = max_clique(&g)?.vertices;
        let slow = oracle_max_clique(&g)?;
        record("max clique".into(), Some(fast == slow), format!("{fast}"));
        for &delta in &deltas {
            let fast = delta_density(&g, delta)?.vertices;
            let h = Graph::from_edges(g.id_bound(), oracle_reach_edges(&g, delta))?;
            let slow = oracle_max_clique(&h)?;
            record(
                format!("density delta={delta}"),
                Some(fast == slow),
                format!("{} {fast}", fast.len()),
            );
        }
    }

    if g.order() > MAX_CYCLE_ORDER {
        record(
            "cycles".into(),
            None,
            format!("order {} above {MAX_CYCLE_ORDER}", g.order()),
        );
    } else {
        let fast = girth(&g)?;
        let slow = oracle_girth(&g)?;
        record(
            "girth".into(),
            Some(fast == slow),
            fast.map_or("acyclic".into(), |v| v.to_string()),
        );
        let limit = g.order().min(8);
        let mut all_agree = true;
        let mut total = 0;
        for length in 3..=limit {
            let fast = enumerate_cycles(&g, length)?;
            total += fast.len();
            all_agree &= fast == oracle_cycles(&g, length)?;
        }
        record(
            format!("cycles length 3..={limit}"),
            Some(all_agree),
            format!("{total} cycles"),
        );
    }

    if g.order() > MAX_EMBED_SYSTEM_ORDER {
        record(
            "embeddings".into(),
            None,
            format!("order {} above {MAX_EMBED_SYSTEM_ORDER}", g.order()),
        );
    } else {
        let largest = g.order().min(MAX_EMBED_TASK_ORDER);
        for &delta in &deltas {
            let mut agree = true;
            let mut fits = 0;
            for p in 1..=largest {
                let task = Topology::Complete(p).generate()?;
                let fast = embed(&task, &g, delta)?.is_some();
                agree &= fast == oracle_embed(&task, &g, delta)?.is_some();
                if fast {
                    fits = p;
                }
            }
            record(
                format!("embed K_1..K_{largest} delta={delta}"),
                Some(agree),
                format!("largest complete task {fits}"),
            );
        }
    }

    let agreed = checks.iter().all(|c| c.status != "DISAGREE");
    let rows: Vec<Vec<String>> = checks
        .iter()
        .map(|c| vec![c.name.clone(), c.status.to_string(), c.detail.clone()])
        .collect();
    let header = ["check", "status", "detail"].map(String::from);
    let mut text = table(&header, &rows);
    writeln!(
        text,
        "verdict: {}",
        if agreed {
            "all checks agree"
        } else {
            "disagreement found"
        }
    )
    .unwrap();
    let result = json!({ "agreed": agreed, "checks": checks });
    let mut out = Output::new(text, result).with_input(&a.graph.graph, &g);
    out.agreed = agreed;
    Ok(out)
}

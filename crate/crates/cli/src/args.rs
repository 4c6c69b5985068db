use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "paratopo",
    version,
    about = "Topological analysis of parallel-system interconnects"
)]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Write the report to a file instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a standard topology as an edge list.
    Gen(GenArgs),
    /// Build a projection and print it in bracket form.
    Project(ProjectArgs),
    /// Order, size, degree range, eccentricities and diameter.
    Metrics(GraphArg),
    /// The ∂-reachability graph as an edge list.
    Reach(DeltaArgs),
    /// Maximum clique of the graph itself.
    Clique(CliqueArgs),
    /// ∂-density: maximum clique of the ∂-reachability graph.
    Density(DeltaArgs),
    /// Maximal ∂-cliques above a minimum size.
    Components(ComponentArgs),
    /// Largest branch count meeting a speedup or efficiency directive.
    Plan(PlanArgs),
    /// Embed a task graph under a distance budget.
    Embed(EmbedArgs),
    /// Enumerate simple cycles of one length.
    Cycles(CycleArgs),
    /// Length of the shortest cycle.
    Girth(GraphArg),
    /// Worst-case ∂-density under processor faults.
    Faults(FaultArgs),
    /// Side-by-side summary of several graphs.
    Compare(CompareArgs),
    /// Check the fast algorithms against brute-force references.
    Audit(AuditArgs),
}

#[derive(Args, Debug)]
pub struct GraphArg {
    /// Edge-list file.
    #[arg(long, value_name = "FILE")]
    pub graph: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Kind {
    Ring,
    Complete,
    Hypercube,
    Torus,
    Mesh,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    pub kind: Kind,
    /// Vertex count (ring, complete), dimension (hypercube) or side lengths
    /// (torus, mesh).
    #[arg(required = true)]
    pub sizes: Vec<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Mode {
    Full,
    Shortest,
}

#[derive(Args, Debug)]
pub struct ProjectArgs {
    #[command(flatten)]
    pub graph: GraphArg,
    #[arg(long)]
    pub root: usize,
    #[arg(long)]
    pub depth: usize,
    #[arg(long, value_enum, default_value = "full")]
    pub mode: Mode,
}

#[derive(Args, Debug)]
pub struct DeltaArgs {
    #[command(flatten)]
    pub graph: GraphArg,
    #[arg(long, default_value_t = 1)]
    pub delta: usize,
}

#[derive(Args, Debug)]
pub struct CliqueArgs {
    #[command(flatten)]
    pub graph: GraphArg,
    /// Include the elimination passes of the search.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Args, Debug)]
pub struct ComponentArgs {
    #[command(flatten)]
    pub graph: GraphArg,
    #[arg(long, default_value_t = 1)]
    pub delta: usize,
    #[arg(long, default_value_t = 2)]
    pub min_size: usize,
}

#[derive(Args, Debug, Clone)]
pub struct Workload {
    /// Total computational work W.
    #[arg(long = "W", value_name = "W")]
    pub work: Option<f64>,
    /// Total exchange volume Q.
    #[arg(long = "Q", value_name = "Q")]
    pub exchange: Option<f64>,
    /// One-hop latency.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Per-unit transfer time.
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long, conflicts_with = "efficiency")]
    pub speedup: Option<f64>,
    #[arg(long)]
    pub efficiency: Option<f64>,
}

#[derive(Args, Debug)]
pub struct PlanArgs {
    #[command(flatten)]
    pub graph: GraphArg,
    #[command(flatten)]
    pub workload: Workload,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("shape").required(true))]
pub struct EmbedArgs {
    #[command(flatten)]
    pub graph: GraphArg,
    /// Task graph edge-list file.
    #[arg(long, value_name = "FILE", group = "shape")]
    pub task: Option<PathBuf>,
    /// Ring task with this many branches.
    #[arg(long, value_name = "LENGTH", group = "shape")]
    pub ring: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub delta: usize,
}

#[derive(Args, Debug)]
pub struct CycleArgs {
    #[command(flatten)]
    pub graph: GraphArg,
    #[arg(long)]
    pub length: usize,
}

#[derive(Args, Debug)]
pub struct FaultArgs {
    #[command(flatten)]
    pub graph: GraphArg,
    #[arg(long, default_value_t = 1)]
    pub delta: usize,
    /// Number of failed processors.
    #[arg(long)]
    pub f: usize,
    /// Also check that every fault set leaves at least this density.
    #[arg(long)]
    pub p: Option<usize>,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[arg(long = "graph", value_name = "FILE", required = true)]
    pub graphs: Vec<PathBuf>,
    #[command(flatten)]
    pub workload: Workload,
}

#[derive(Args, Debug)]
pub struct AuditArgs {
    #[command(flatten)]
    pub graph: GraphArg,
    /// Check only this reachability instead of every one up to the
    /// diameter.
    #[arg(long)]
    pub delta: Option<usize>,
}

//! Command-line front end. [`run`] parses arguments, executes one
//! subcommand and returns the process exit code.
//!
//! Exit codes: 0 ok, 2 parse error, 3 I/O, 4 verification defect,
//! 5 input precondition.

use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::bounds::{self, BoundParams, RegimeQuery};
use crate::dataset::{self, CacheConfig, Report, ReportFormat};
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::extraction::{self, all_bit_vectors};
use crate::fnn::{self, dag_inputs, fnn_eval};
use crate::generators::{self, default_scale};
use crate::gnn::{self, GnnSpec, SPEC_VERSION};
use crate::graph::Graph;
use crate::quotient;
use crate::random;
use crate::shatter;
use crate::wl::{self, Iterations};

#[derive(Parser, Debug)]
#[command(name = "wlvc", version, about = "Weisfeiler-Leman and exact GNN analysis toolkit")]
pub struct Cli {
    /// Worker threads for per-graph work (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Omit timestamps and wall times from reports.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Distinct 1-WL color histograms per iteration.
    Wl(WlArgs),
    /// Build and verify the bit-extraction GNNs.
    ShatterBits(ShatterBitsArgs),
    /// Build the histogram-readout shattering network.
    ShatterHist(ShatterHistArgs),
    /// VC-dimension upper bounds.
    Bounds(BoundsArgs),
    /// Which VC-dimension regime applies.
    Regime(RegimeArgs),
    /// Quotient graph of the stable coloring.
    Reduce(ReduceArgs),
    /// Unroll a GNN into a feedforward DAG.
    Unroll(UnrollArgs),
    /// Evaluate a GNN spec on graphs.
    Eval(EvalArgs),
    /// Generate graph families and specs.
    Gen(GenArgs),
    /// Download a TU dataset into the cache.
    Fetch(FetchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Tud,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Json,
    Csv,
}

impl From<OutFormat> for ReportFormat {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Json => ReportFormat::Json,
            OutFormat::Csv => ReportFormat::Csv,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LabelMode {
    /// Initial colors from vertex labels.
    Node,
    /// Ignore vertex labels.
    None,
}

#[derive(Args, Debug)]
pub struct Output {
    /// Report path.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Report format; defaults to the extension of --out, else JSON.
    #[arg(long, value_enum)]
    pub out_format: Option<OutFormat>,
}

impl Output {
    fn format(&self) -> ReportFormat {
        match (self.out_format, &self.out) {
            (Some(f), _) => f.into(),
            (None, Some(p)) if p.extension().is_some_and(|e| e == "csv") => ReportFormat::Csv,
            _ => ReportFormat::Json,
        }
    }
}

#[derive(Args, Debug)]
pub struct CacheArgs {
    /// Cache root (default: $WLVC_CACHE, else ~/.cache/wlvc).
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long)]
    pub base_url: Option<String>,
    /// Forbid network access.
    #[arg(long)]
    pub offline: bool,
    #[arg(long, default_value_t = 120)]
    pub timeout: u64,
}

impl CacheArgs {
    fn config(&self) -> CacheConfig {
        let mut cfg = CacheConfig::default();
        if let Some(root) = &self.cache_dir {
            cfg.root = root.clone();
        }
        if let Some(url) = &self.base_url {
            cfg.base_url = url.clone();
        }
        cfg.offline = self.offline;
        cfg.timeout_secs = self.timeout;
        cfg
    }
}

#[derive(Args, Debug)]
pub struct WlArgs {
    /// Graph set (JSON) or TU dataset directory.
    #[arg(long, required_unless_present = "dataset")]
    pub input: Option<PathBuf>,
    /// TU dataset name, fetched through the cache.
    #[arg(long, conflicts_with = "input")]
    pub dataset: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: InputFormat,
    #[arg(long, default_value_t = 6)]
    pub iters: usize,
    #[arg(long)]
    pub edge_labels: bool,
    #[arg(long, value_enum, default_value = "node")]
    pub labels: LabelMode,
    #[command(flatten)]
    pub cache: CacheArgs,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct ShatterBitsArgs {
    #[arg(long)]
    pub n: usize,
    /// Forest scale: `auto` (4^n) or a power of two.
    #[arg(long, default_value = "auto")]
    pub scale: String,
    /// Run the exhaustive output checks.
    #[arg(long)]
    pub verify: bool,
    /// Largest n accepted.
    #[arg(long, default_value_t = 4)]
    pub budget: usize,
    /// Evaluate on the full forests instead of their quotients.
    #[arg(long)]
    pub direct: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("mode").required(true).args(["subset", "verify_all"]))]
pub struct ShatterHistArgs {
    /// Graph set (JSON).
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 3)]
    pub iters: usize,
    /// Target subset as binary digits, leftmost digit for the first graph.
    #[arg(long)]
    pub subset: Option<String>,
    /// Check every subset.
    #[arg(long)]
    pub verify_all: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    /// Width; a comma list sweeps.
    #[arg(long, value_delimiter = ',', required = true)]
    pub d: Vec<u64>,
    /// Layers.
    #[arg(long = "layers", visible_alias = "L", value_delimiter = ',', required = true)]
    pub layers: Vec<u64>,
    /// Activation pieces.
    #[arg(long, value_delimiter = ',', required = true)]
    pub p: Vec<u64>,
    /// Activation degree.
    #[arg(long, value_delimiter = ',', required = true)]
    pub delta: Vec<u64>,
    /// Color bound.
    #[arg(long, value_delimiter = ',', required = true)]
    pub u: Vec<u64>,
    /// Also report the sample size for this accuracy.
    #[arg(long, requires = "confidence")]
    pub epsilon: Option<f64>,
    #[arg(long, requires = "epsilon")]
    pub confidence: Option<f64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct RegimeArgs {
    /// Widths are fixed independently of graph order.
    #[arg(long)]
    pub uniform: bool,
    #[arg(long, conflicts_with = "no_bitlength")]
    pub bitlength: Option<u64>,
    #[arg(long)]
    pub no_bitlength: bool,
    #[arg(long, conflicts_with = "no_color_bound")]
    pub color_bound: Option<u64>,
    #[arg(long)]
    pub no_color_bound: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct UnrollArgs {
    /// GNN spec (JSON).
    #[arg(long, requires = "input")]
    pub spec: Option<PathBuf>,
    /// Graph set (JSON).
    #[arg(long, requires = "spec")]
    pub input: Option<PathBuf>,
    /// Compare DAG outputs with direct evaluation; without --spec, on random cases.
    #[arg(long)]
    pub check: bool,
    /// Also collapse the DAG by stable colors.
    #[arg(long)]
    pub collapse: bool,
    #[arg(long, default_value_t = 20)]
    pub cases: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long)]
    pub input: PathBuf,
    /// Evaluate on the quotient graphs.
    #[arg(long)]
    pub quotient: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(subcommand)]
    pub family: GenFamily,
    /// Output path (JSON).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum GenFamily {
    /// Two-branch trees on k vertices.
    Tree {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        directed: bool,
    },
    /// Extraction forest for bit k of n.
    Forest {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        scale: Option<u64>,
    },
    /// Extraction GNN storing the bit string x, e.g. `101`.
    ExtractionSpec {
        #[arg(long)]
        x: String,
        #[arg(long)]
        scale: Option<u64>,
    },
    /// The cycle C_n.
    Cycle {
        #[arg(long)]
        n: usize,
    },
    /// The path on n vertices.
    Path {
        #[arg(long)]
        n: usize,
    },
    /// The complete graph K_n.
    Complete {
        #[arg(long)]
        n: usize,
    },
    /// A star with the given number of leaves.
    Star {
        #[arg(long)]
        leaves: usize,
    },
    /// Random graphs with random edge density.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
pub struct FetchArgs {
    #[arg(long)]
    pub name: String,
    /// Parse after download and report the graph count.
    #[arg(long)]
    pub parse: bool,
    #[command(flatten)]
    pub cache: CacheArgs,
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Errors are printed to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Runs a parsed command inside a thread pool of the requested size.
pub fn execute(cli: &Cli) -> Result<i32> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        pool = pool.num_threads(t.max(1));
    }
    let pool = pool.build().map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let ctx = Ctx { timestamp: !cli.no_timestamp };
    pool.install(|| match &cli.command {
        Command::Wl(a) => cmd_wl(&ctx, a),
        Command::ShatterBits(a) => cmd_shatter_bits(&ctx, a),
        Command::ShatterHist(a) => cmd_shatter_hist(&ctx, a),
        Command::Bounds(a) => cmd_bounds(&ctx, a),
        Command::Regime(a) => cmd_regime(&ctx, a),
        Command::Reduce(a) => cmd_reduce(&ctx, a),
        Command::Unroll(a) => cmd_unroll(&ctx, a),
        Command::Eval(a) => cmd_eval(&ctx, a),
        Command::Gen(a) => cmd_gen(a),
        Command::Fetch(a) => cmd_fetch(a),
    })
}

struct Ctx {
    timestamp: bool,
}

impl Ctx {
    fn finish(&self, mut report: Report, output: &Output) -> Result<()> {
        if self.timestamp {
            let secs = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
            report.meta.insert("generated_at".into(), secs.into());
        }
        if let Some(path) = &output.out {
            dataset::write_report(&report, path, output.format())?;
        }
        Ok(())
    }
}

pub fn read_spec(path: &Path) -> Result<GnnSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let found = value.get("version").and_then(Value::as_u64).unwrap_or(0) as u32;
    if found != SPEC_VERSION {
        return Err(Error::SchemaMismatch { expected: SPEC_VERSION, found });
    }
    let spec: GnnSpec = serde_json::from_value(value).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    spec.validate()?;
    Ok(spec)
}

fn load_graphs(a: &WlArgs) -> Result<(String, Vec<Graph>)> {
    let (name, graphs) = match (&a.dataset, &a.input, a.format) {
        (Some(name), _, _) => {
            let dir = dataset::fetch_dataset(name, &a.cache.config())?;
            let ds = dataset::parse_tud(&dir)?;
            (ds.name.clone(), if a.labels == LabelMode::Node { ds.graphs } else { ds.unlabeled_graphs() })
        }
        (None, Some(dir), InputFormat::Tud) => {
            let ds = dataset::parse_tud(dir)?;
            (ds.name.clone(), if a.labels == LabelMode::Node { ds.graphs } else { ds.unlabeled_graphs() })
        }
        (None, Some(path), InputFormat::Json) => {
            let graphs = dataset::read_graphs_json(path)?;
            let graphs = match a.labels {
                LabelMode::Node => graphs,
                LabelMode::None => graphs
                    .iter()
                    .map(|g| Graph::builder(g.order()).edges(g.edges().map(|(u, v, _)| (u, v))).build())
                    .collect::<Result<_>>()?,
            };
            (path.display().to_string(), graphs)
        }
        (None, None, _) => return Err(Error::InvalidArgument("--input or --dataset is required".into())),
    };
    Ok((name, graphs))
}

/// Distinct-histogram counts for iterations `0..=iters`, as printed by
/// `wlvc wl`.
pub fn histogram_counts(graphs: &[Graph], iters: usize, edge_labels: bool) -> (Vec<usize>, Vec<Vec<usize>>) {
    let run = wl::wl1_refine(graphs, Iterations::Fixed(iters), edge_labels);
    (0..=iters)
        .map(|t| {
            let (ids, count) = run.histogram_ids(t);
            (count, ids)
        })
        .unzip()
}

fn cmd_wl(ctx: &Ctx, a: &WlArgs) -> Result<i32> {
    let (name, graphs) = load_graphs(a)?;
    let (counts, ids) = histogram_counts(&graphs, a.iters, a.edge_labels);
    let mut report = Report::new("wl_histograms", &["iteration", "count"])
        .meta("input", name)
        .meta("graphs", graphs.len())
        .meta("labels", format!("{:?}", a.labels).to_lowercase())
        .meta("edge_labels", a.edge_labels)
        .meta("histogram_ids", json!(ids));
    println!("iteration\tcount");
    for (t, c) in counts.iter().enumerate() {
        println!("{t}\t{c}");
        report.push(vec![t.into(), (*c).into()]);
    }
    ctx.finish(report, &a.output)?;
    Ok(0)
}

fn bit_string(x: &[bool]) -> String {
    x.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn parse_bits(s: &str) -> Result<Vec<bool>> {
    let s = s.trim().trim_start_matches("0b");
    if s.is_empty() || !s.chars().all(|c| c == '0' || c == '1') {
        return Err(Error::Parse(format!("{s:?} is not a bit string")));
    }
    Ok(s.chars().map(|c| c == '1').collect())
}

fn cmd_shatter_bits(ctx: &Ctx, a: &ShatterBitsArgs) -> Result<i32> {
    let scale = match a.scale.as_str() {
        "auto" => default_scale(a.n),
        s => s.parse().map_err(|_| Error::Parse(format!("scale {s:?} is neither auto nor an integer")))?,
    };
    if a.n == 0 || a.n > a.budget {
        return Err(Error::Budget(format!("n = {} outside 1..={}", a.n, a.budget)));
    }
    let ledgers = all_bit_vectors(a.n).iter().map(|x| extraction::ledger(x)).collect::<Result<Vec<_>>>()?;
    let mut report = Report::new("shatter_bits", &["x", "k", "output", "pass"])
        .meta("n", a.n)
        .meta("scale", scale)
        .meta("ledger", serde_json::to_value(&ledgers).expect("ledger serializes"));
    if !a.verify {
        let orders = (1..=a.n)
            .map(|k| generators::gen_extraction_forest(k, a.n, scale).map(|f| f.graph.order()))
            .collect::<Result<Vec<_>>>()?;
        println!("n = {}, scale = {scale}, forest orders {orders:?}; ledger identities hold", a.n);
        report = report.meta("forest_orders", json!(orders));
        ctx.finish(report, &a.output)?;
        return Ok(0);
    }
    let start = Instant::now();
    let r = extraction::verify_bit_extraction_scaled(a.n, scale, a.budget, !a.direct)?;
    let wall = start.elapsed();
    for c in &r.checks {
        report.push(vec![bit_string(&c.x).into(), c.k.into(), c.output.to_string().into(), c.pass.into()]);
        if let Some(f) = &c.failure {
            eprintln!("x = {} k = {}: {f}", bit_string(&c.x), c.k);
        }
    }
    report = report
        .meta("accelerated", r.accelerated)
        .meta("forest_orders", json!(r.forest_orders))
        .meta("quotient_classes", json!(r.quotient_classes))
        .meta("spec_bitlength", json!(r.spec_bitlength))
        .meta("passed", r.passed)
        .meta("total", r.total);
    if ctx.timestamp {
        report = report.meta("wall_ms", wall.as_millis() as u64);
    }
    println!("{}/{} checks pass ({:.3} s)", r.passed, r.total, wall.as_secs_f64());
    ctx.finish(report, &a.output)?;
    Ok(if r.all_passed() { 0 } else { 4 })
}

fn cmd_shatter_hist(ctx: &Ctx, a: &ShatterHistArgs) -> Result<i32> {
    let graphs = dataset::read_graphs_json(&a.input)?;
    if let Some(mask) = &a.subset {
        let subset = shatter::parse_subset(mask, graphs.len())?;
        let r = shatter::build_histogram_shatter(&graphs, a.iters)?;
        let outputs = graphs.iter().map(|g| shatter::shatter_eval(&r, &subset, g)).collect::<Result<Vec<_>>>()?;
        let mut report = Report::new("shatter_hist", &["graph", "target", "output"]).meta("subset", mask.as_str());
        for (i, (&t, &o)) in subset.iter().zip(&outputs).enumerate() {
            report.push(vec![i.into(), (t as u8).into(), o.into()]);
        }
        let shown: Vec<String> = outputs.iter().map(u8::to_string).collect();
        println!("outputs ({})", shown.join(","));
        ctx.finish(report, &a.output)?;
        let ok = subset.iter().zip(&outputs).all(|(&t, &o)| o == t as u8);
        return Ok(if ok { 0 } else { 4 });
    }
    let r = shatter::verify_shatter(&graphs, a.iters)?;
    let mut report = Report::new("shatter_hist", &["graphs", "subsets_checked", "one_hot", "shattered"])
        .meta("iterations", a.iters)
        .meta("counterexample", json!(r.counterexample.as_deref().map(bit_string)));
    report.push(vec![r.graphs.into(), r.subsets_checked.into(), r.one_hot.into(), r.shattered.into()]);
    println!("one_hot={} shattered={} ({} subsets)", r.one_hot, r.shattered, r.subsets_checked);
    ctx.finish(report, &a.output)?;
    Ok(if r.shattered { 0 } else { 4 })
}

fn cmd_bounds(ctx: &Ctx, a: &BoundsArgs) -> Result<i32> {
    let mut cols = vec!["d", "L", "p", "delta", "u", "P", "floor", "case", "m_star", "satisfied", "log2_K_at_m_star"];
    if a.epsilon.is_some() {
        cols.push("sample_size");
    }
    let mut report = Report::new("bounds", &cols);
    println!("{}", cols.join("\t"));
    for &d in &a.d {
        for &l in &a.layers {
            for &p in &a.p {
                for &delta in &a.delta {
                    for &u in &a.u {
                        let params = BoundParams::new(d, l, p, delta, u)?;
                        let vc = bounds::vc_upper(&params);
                        let (log2k, _) = bounds::k_bound(vc.m, &params);
                        let mut row: Vec<Value> = vec![
                            d.into(),
                            l.into(),
                            p.into(),
                            delta.into(),
                            u.into(),
                            params.param_count().to_string().into(),
                            params.floor().into(),
                            params.case().into(),
                            vc.m.into(),
                            vc.satisfied.into(),
                            json!((log2k * 1e6).round() / 1e6),
                        ];
                        if let (Some(eps), Some(conf)) = (a.epsilon, a.confidence) {
                            row.push(bounds::sample_complexity(eps, conf, vc.m)?.into());
                        }
                        println!("{}", row.iter().map(cell_text).collect::<Vec<_>>().join("\t"));
                        report.push(row);
                    }
                }
            }
        }
    }
    ctx.finish(report, &a.output)?;
    Ok(0)
}

fn cell_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn cmd_regime(ctx: &Ctx, a: &RegimeArgs) -> Result<i32> {
    let q = RegimeQuery {
        uniform: a.uniform,
        bitlength: a.bitlength.filter(|_| !a.no_bitlength),
        color_bound: a.color_bound.filter(|_| !a.no_color_bound),
    };
    let r = bounds::regime(&q);
    println!("{}", r.describe());
    let mut report = Report::new("regime", &["uniform", "bitlength", "color_bound", "vc_dimension"])
        .meta("regime", serde_json::to_value(&r).expect("regime serializes"));
    report.push(vec![q.uniform.into(), json!(q.bitlength), json!(q.color_bound), r.describe().into()]);
    ctx.finish(report, &a.output)?;
    Ok(0)
}

fn cmd_reduce(ctx: &Ctx, a: &ReduceArgs) -> Result<i32> {
    let graphs = dataset::read_graphs_json(&a.input)?;
    let mut report = Report::new("reduce", &["graph", "order", "classes", "class_size", "weights"]);
    for (i, g) in graphs.iter().enumerate() {
        let q = quotient::reduce_stable(g)?;
        let weights: Vec<Vec<(usize, u64)>> = q.weights.clone();
        println!("graph {i}: {} vertices -> {} classes, sizes {:?}, weights {:?}", g.order(), q.classes(), q.class_size, weights);
        report.push(vec![i.into(), g.order().into(), q.classes().into(), json!(q.class_size), json!(weights)]);
    }
    ctx.finish(report, &a.output)?;
    Ok(0)
}

fn cmd_unroll(ctx: &Ctx, a: &UnrollArgs) -> Result<i32> {
    let cases: Vec<(GnnSpec, Vec<Graph>)> = match (&a.spec, &a.input) {
        (Some(s), Some(i)) => vec![(read_spec(s)?, dataset::read_graphs_json(i)?)],
        _ if a.check => {
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            (0..a.cases)
                .map(|_| {
                    let kind = random::input_kind(&mut rng);
                    let d = rng.gen_range(1..=4);
                    let l = rng.gen_range(1..=3);
                    let spec = random::slp_spec(&mut rng, d, l, 16, kind);
                    let n = rng.gen_range(1..=12);
                    (spec, vec![random::graph(&mut rng, n, d, kind)])
                })
                .collect()
        }
        _ => return Err(Error::InvalidArgument("give --spec and --input, or --check for random cases".into())),
    };
    let mut cols = vec!["case", "graphs", "nodes", "edges", "formula_edges", "layer_sizes"];
    if a.collapse {
        cols.extend(["collapsed_nodes", "collapsed_layer_sizes"]);
    }
    if a.check {
        cols.push("equal");
    }
    let mut report = Report::new("unroll", &cols).meta("seed", a.seed);
    let mut mismatches = 0;
    for (i, (spec, graphs)) in cases.iter().enumerate() {
        let dag = fnn::unroll_multi(spec, graphs)?;
        let formula: usize = match spec.uniform_width() {
            Some(d) => graphs.iter().map(|g| fnn::formula_edge_count(d, spec.layers.len(), g.order(), g.edge_count())).sum(),
            None => 0,
        };
        let mut row: Vec<Value> = vec![
            i.into(),
            graphs.len().into(),
            dag.node_count().into(),
            dag.edge_count().into(),
            formula.into(),
            json!(dag.layer_sizes()),
        ];
        let mut dags = vec![dag];
        if a.collapse {
            let colorings: Vec<_> = graphs.iter().map(|g| wl::stable_coloring(g).0).collect();
            let collapsed = fnn::collapse_fnn(&dags[0], graphs, &colorings)?;
            row.push(collapsed.node_count().into());
            row.push(json!(collapsed.layer_sizes()));
            dags.push(collapsed);
        }
        if a.check {
            let expected = graphs.iter().map(|g| gnn::gnn_eval(spec, g)).collect::<Result<Vec<Dyadic>>>()?;
            let equal = dags.iter().all(|dag| {
                dag_inputs(dag, spec, graphs).and_then(|x| fnn_eval(dag, &x)).is_ok_and(|out| out == expected)
            });
            if !equal {
                mismatches += 1;
                eprintln!("case {i}: DAG output differs from direct evaluation");
            }
            row.push(equal.into());
        }
        report.push(row);
    }
    if a.check {
        println!("{}/{} cases equal", cases.len() - mismatches, cases.len());
    } else {
        for r in &report.rows {
            println!("nodes {} edges {} layer sizes {}", r[2], r[3], r[5]);
        }
    }
    ctx.finish(report, &a.output)?;
    Ok(if mismatches == 0 { 0 } else { 4 })
}

fn cmd_eval(ctx: &Ctx, a: &EvalArgs) -> Result<i32> {
    let spec = read_spec(&a.spec)?;
    let graphs = dataset::read_graphs_json(&a.input)?;
    let outputs: Vec<Dyadic> = graphs
        .iter()
        .map(|g| if a.quotient { quotient::eval_on_quotient(&spec, &quotient::reduce_stable(g)?) } else { gnn::gnn_eval(&spec, g) })
        .collect::<Result<_>>()?;
    let mut report = Report::new("eval", &["graph", "output"]).meta("quotient", a.quotient);
    for (i, o) in outputs.iter().enumerate() {
        println!("{i}\t{o}");
        report.push(vec![i.into(), o.to_string().into()]);
    }
    ctx.finish(report, &a.output)?;
    Ok(0)
}

fn cmd_gen(a: &GenArgs) -> Result<i32> {
    let graphs = match &a.family {
        GenFamily::Tree { k, directed } => generators::gen_tree_family(*k, *directed)?,
        GenFamily::Forest { k, n, scale } => {
            vec![generators::gen_extraction_forest(*k, *n, scale.unwrap_or_else(|| default_scale(*n)))?.graph]
        }
        GenFamily::ExtractionSpec { x, scale } => {
            let x = parse_bits(x)?;
            let spec = extraction::build_extraction_gnn(&extraction::rho(&x), scale.unwrap_or_else(|| default_scale(x.len())))?;
            let value = serde_json::to_value(&spec).expect("spec serializes");
            match &a.out {
                Some(p) => dataset::write_json_value(&value, p)?,
                None => println!("{}", serde_json::to_string_pretty(&value).expect("JSON")),
            }
            return Ok(0);
        }
        GenFamily::Cycle { n } => vec![Graph::cycle(*n)],
        GenFamily::Path { n } => vec![Graph::path(*n)],
        GenFamily::Complete { n } => vec![Graph::complete(*n)],
        GenFamily::Star { leaves } => vec![Graph::star(*leaves)],
        GenFamily::Random { n, count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            (0..*count).map(|_| random::graph(&mut rng, *n, 1, random::InputKind::Constant)).collect()
        }
    };
    match &a.out {
        Some(p) => dataset::write_graphs_json(&graphs, p)?,
        None => {
            let set = json!({
                "version": dataset::SCHEMA_VERSION,
                "graphs": graphs.iter().map(dataset::graph_to_json).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&set).expect("JSON"));
        }
    }
    Ok(0)
}

fn cmd_fetch(a: &FetchArgs) -> Result<i32> {
    let path = dataset::fetch_dataset(&a.name, &a.cache.config())?;
    println!("{}", path.display());
    if a.parse {
        let ds = dataset::parse_tud(&path)?;
        println!("graphs: {}", ds.graphs.len());
    }
    Ok(0)
}

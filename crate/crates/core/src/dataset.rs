//! TU benchmark ingestion, the cached dataset fetcher, the JSON graph format
//! and report writers.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::{Cursor, Read, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::{Features, Graph};

/// Version shared by the graph schema and every JSON report.
pub const SCHEMA_VERSION: u32 = 1;

pub const DEFAULT_BASE_URL: &str = "https://www.chrsmrrs.com/graphkerneldatasets";
pub const CACHE_ENV: &str = "WLVC_CACHE";

#[derive(Clone, Debug)]
pub struct TuDataset {
    pub name: String,
    pub graphs: Vec<Graph>,
    pub graph_labels: Vec<i64>,
    pub has_node_labels: bool,
    pub has_edge_labels: bool,
    /// Raw node label for each normalized label id.
    pub node_alphabet: Vec<i64>,
    pub self_loops_dropped: usize,
    pub duplicate_edges_merged: usize,
}

impl TuDataset {
    pub fn vertex_count(&self) -> usize {
        self.graphs.iter().map(Graph::order).sum()
    }

    /// The graphs with vertex and edge labels removed.
    pub fn unlabeled_graphs(&self) -> Vec<Graph> {
        self.graphs.iter().map(strip_labels).collect()
    }
}

fn strip_labels(g: &Graph) -> Graph {
    Graph::builder(g.order())
        .edges(g.edges().map(|(u, v, _)| (u, v)))
        .build()
        .expect("edges of a valid graph")
}

fn read_lines(path: &Path) -> Result<Vec<(usize, String)>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, l.trim().to_owned()))
        .collect())
}

fn parse_field<T: std::str::FromStr>(path: &Path, line: usize, field: &str) -> Result<T> {
    field
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{}:{line}: malformed number {field:?}", path.display())))
}

/// First comma-separated field of each non-blank line.
fn read_column(path: &Path) -> Result<Vec<i64>> {
    read_lines(path)?
        .iter()
        .map(|(i, l)| parse_field(path, *i, l.split(',').next().unwrap_or("")))
        .collect()
}

fn normalize(raw: &[i64]) -> (Vec<u32>, Vec<i64>) {
    let alphabet: Vec<i64> = raw.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let ids = raw.iter().map(|x| alphabet.binary_search(x).unwrap() as u32).collect();
    (ids, alphabet)
}

fn dataset_name(dir: &Path) -> Result<String> {
    if let Some(name) = dir.file_name().and_then(|n| n.to_str()) {
        if dir.join(format!("{name}_graph_indicator.txt")).is_file() {
            return Ok(name.to_owned());
        }
    }
    let entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut found: Vec<String> = entries
        .filter_map(|e| e.ok()?.file_name().into_string().ok())
        .filter_map(|f| f.strip_suffix("_graph_indicator.txt").map(str::to_owned))
        .collect();
    found.sort();
    found.into_iter().next().ok_or_else(|| {
        let name = dir.file_name().and_then(|n| n.to_str()).unwrap_or("DS");
        Error::MissingFile(dir.join(format!("{name}_graph_indicator.txt")))
    })
}

/// Parses a TU-format dataset directory.
///
/// Indices are 1-based in the files and 0-based in the result. Both
/// orientations of an undirected edge collapse into one edge (the first
/// listed label wins), self-loops are dropped and counted, and node and edge
/// label alphabets are renumbered to `0..alphabet` in increasing raw order.
pub fn parse_tud(dir: &Path) -> Result<TuDataset> {
    let name = dataset_name(dir)?;
    let file = |suffix: &str| dir.join(format!("{name}_{suffix}.txt"));
    let (a_path, ind_path) = (file("A"), file("graph_indicator"));
    for p in [&a_path, &ind_path] {
        if !p.is_file() {
            return Err(Error::MissingFile(p.clone()));
        }
    }

    let indicator = read_column(&ind_path)?;
    let total = indicator.len();
    let mut starts = Vec::new();
    let mut prev = 0i64;
    for (v, &g) in indicator.iter().enumerate() {
        if g == prev + 1 {
            starts.push(v);
            prev = g;
        } else if g != prev {
            return Err(Error::Parse(format!(
                "{}: indicator not monotone at vertex {} (graph id {g} after {prev})",
                ind_path.display(),
                v + 1
            )));
        }
    }
    let graph_count = starts.len();
    starts.push(total);

    let mut edge_lines = Vec::new();
    for (line, text) in read_lines(&a_path)? {
        let mut parts = text.split(',');
        let (Some(a), Some(b)) = (parts.next(), parts.next()) else {
            return Err(Error::Parse(format!("{}:{line}: expected \"u, v\"", a_path.display())));
        };
        let u: usize = parse_field(&a_path, line, a)?;
        let v: usize = parse_field(&a_path, line, b)?;
        for x in [u, v] {
            if x == 0 || x > total {
                return Err(Error::Parse(format!(
                    "{}:{line}: dangling vertex index {x} (vertices are 1..={total})",
                    a_path.display()
                )));
            }
        }
        edge_lines.push((u - 1, v - 1));
    }

    let el_path = file("edge_labels");
    let edge_raw = if el_path.is_file() {
        let raw = read_column(&el_path)?;
        if raw.len() != edge_lines.len() {
            return Err(Error::Parse(format!(
                "{}: {} edge labels for {} edges",
                el_path.display(),
                raw.len(),
                edge_lines.len()
            )));
        }
        Some(normalize(&raw).0)
    } else {
        None
    };

    let nl_path = file("node_labels");
    let (node_ids, node_alphabet) = if nl_path.is_file() {
        let raw = read_column(&nl_path)?;
        if raw.len() != total {
            return Err(Error::Parse(format!(
                "{}: {} node labels for {total} vertices",
                nl_path.display(),
                raw.len()
            )));
        }
        let (ids, alphabet) = normalize(&raw);
        (Some(ids), alphabet)
    } else {
        (None, Vec::new())
    };

    let gl_path = file("graph_labels");
    let graph_labels = if gl_path.is_file() {
        let raw = read_column(&gl_path)?;
        if raw.len() != graph_count {
            return Err(Error::Parse(format!(
                "{}: {} graph labels for {graph_count} graphs",
                gl_path.display(),
                raw.len()
            )));
        }
        raw
    } else {
        vec![0; graph_count]
    };

    let mut per_graph: Vec<BTreeMap<(usize, usize), u32>> = vec![BTreeMap::new(); graph_count];
    let mut self_loops = 0;
    let mut merged = 0;
    for (i, &(u, v)) in edge_lines.iter().enumerate() {
        let g = (indicator[u] - 1) as usize;
        if indicator[v] != indicator[u] {
            return Err(Error::Parse(format!(
                "{}: edge ({}, {}) joins graphs {} and {}",
                a_path.display(),
                u + 1,
                v + 1,
                indicator[u],
                indicator[v]
            )));
        }
        if u == v {
            self_loops += 1;
            continue;
        }
        let key = (u.min(v) - starts[g], u.max(v) - starts[g]);
        let label = edge_raw.as_ref().map_or(0, |l| l[i]);
        match per_graph[g].entry(key) {
            Entry::Vacant(e) => {
                e.insert(label);
            }
            Entry::Occupied(_) => merged += 1,
        }
    }

    let graphs = per_graph
        .into_iter()
        .enumerate()
        .map(|(g, edges)| {
            let (lo, hi) = (starts[g], starts[g + 1]);
            let mut b = Graph::builder(hi - lo).edges(edges.keys().copied());
            if edge_raw.is_some() {
                b = b.edge_labels(edges.values().copied().collect());
            }
            if let Some(ids) = &node_ids {
                b = b.vertex_labels(ids[lo..hi].to_vec());
            }
            b.build()
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(TuDataset {
        name,
        graphs,
        graph_labels,
        has_node_labels: node_ids.is_some(),
        has_edge_labels: edge_raw.is_some(),
        node_alphabet,
        self_loops_dropped: self_loops,
        duplicate_edges_merged: merged,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheConfig {
    pub root: PathBuf,
    pub base_url: String,
    pub timeout_secs: u64,
    pub offline: bool,
    pub retries: u32,
}

impl Default for CacheConfig {
    /// Cache root from `WLVC_CACHE`, else `$HOME/.cache/wlvc`, else
    /// `./.wlvc-cache`.
    fn default() -> Self {
        let root = std::env::var_os(CACHE_ENV)
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("wlvc")))
            .unwrap_or_else(|| PathBuf::from(".wlvc-cache"));
        Self { root, base_url: DEFAULT_BASE_URL.into(), timeout_secs: 120, offline: false, retries: 3 }
    }
}

static FETCH_LOCK: Mutex<()> = Mutex::new(());
static NETWORK_REQUESTS: AtomicUsize = AtomicUsize::new(0);

/// HTTP requests issued by [`fetch_dataset`] in this process.
pub fn network_requests() -> usize {
    NETWORK_REQUESTS.load(Ordering::SeqCst)
}

pub const CHECKSUM_FILE: &str = "archive.sha256";

fn is_complete(dir: &Path, name: &str) -> bool {
    dir.join(format!("{name}_A.txt")).is_file() && dir.join(format!("{name}_graph_indicator.txt")).is_file()
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || "-_".contains(c))
}

/// Returns the cached dataset directory `root/NAME`, downloading and
/// unpacking `base_url/NAME.zip` on a cache miss. The SHA-256 of the archive
/// is stored next to the files.
pub fn fetch_dataset(name: &str, cfg: &CacheConfig) -> Result<PathBuf> {
    if !valid_name(name) {
        return Err(Error::InvalidArgument(format!("bad dataset name {name:?}")));
    }
    let target = cfg.root.join(name);
    let _guard = FETCH_LOCK.lock().unwrap_or_else(|e| e.into_inner());
    if is_complete(&target, name) {
        return Ok(target);
    }
    if cfg.offline {
        return Err(Error::Offline(name.into()));
    }
    let url = format!("{}/{name}.zip", cfg.base_url.trim_end_matches('/'));
    let bytes = download(&url, name, cfg)?;
    let digest = hex::encode(Sha256::digest(&bytes));

    fs::create_dir_all(&cfg.root).map_err(|e| Error::io(&cfg.root, e))?;
    let tmp = cfg.root.join(format!(".{name}.partial-{}", std::process::id()));
    if tmp.exists() {
        fs::remove_dir_all(&tmp).map_err(|e| Error::io(&tmp, e))?;
    }
    let staged = unpack(&bytes, &tmp, name).and_then(|()| {
        let sum = tmp.join(CHECKSUM_FILE);
        fs::write(&sum, format!("{digest}  {name}.zip\n")).map_err(|e| Error::io(sum, e))
    });
    if let Err(e) = staged {
        let _ = fs::remove_dir_all(&tmp);
        return Err(e);
    }
    if target.exists() {
        fs::remove_dir_all(&target).map_err(|e| Error::io(&target, e))?;
    }
    if let Err(e) = fs::rename(&tmp, &target) {
        let _ = fs::remove_dir_all(&tmp);
        if !is_complete(&target, name) {
            return Err(Error::io(&target, e));
        }
    }
    Ok(target)
}

fn download(url: &str, name: &str, cfg: &CacheConfig) -> Result<Vec<u8>> {
    let client = reqwest::blocking::Client::builder()
        .timeout(Duration::from_secs(cfg.timeout_secs))
        .build()
        .map_err(|e| Error::Http { url: url.into(), message: e.to_string() })?;
    let attempts = cfg.retries.max(1);
    let mut last = String::new();
    for attempt in 0..attempts {
        if attempt > 0 {
            std::thread::sleep(Duration::from_millis(250 << attempt));
        }
        NETWORK_REQUESTS.fetch_add(1, Ordering::SeqCst);
        match client.get(url).send() {
            Ok(resp) if resp.status() == reqwest::StatusCode::NOT_FOUND => {
                return Err(Error::UnknownDataset(name.into()));
            }
            Ok(resp) if resp.status().is_success() => match resp.bytes() {
                Ok(b) => return Ok(b.to_vec()),
                Err(e) => last = chain(&e),
            },
            Ok(resp) if resp.status().is_server_error() || resp.status().as_u16() == 429 => {
                last = format!("status {}", resp.status());
            }
            Ok(resp) => {
                return Err(Error::Http { url: url.into(), message: format!("status {}", resp.status()) });
            }
            Err(e) => last = chain(&e),
        }
    }
    Err(Error::Http { url: url.into(), message: format!("{last} (after {attempts} attempts)") })
}

fn chain(e: &dyn std::error::Error) -> String {
    let mut out = e.to_string();
    let mut src = e.source();
    while let Some(s) = src {
        out.push_str(": ");
        out.push_str(&s.to_string());
        src = s.source();
    }
    out
}

/// Extracts the regular files of a zip archive flat into `dir`.
fn unpack(bytes: &[u8], dir: &Path, name: &str) -> Result<()> {
    let corrupt = |e: zip::result::ZipError| Error::CorruptArchive(format!("{name}.zip: {e}"));
    let mut archive = zip::ZipArchive::new(Cursor::new(bytes)).map_err(corrupt)?;
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    for i in 0..archive.len() {
        let mut entry = archive.by_index(i).map_err(corrupt)?;
        if entry.is_dir() {
            continue;
        }
        let Some(file_name) = entry.enclosed_name().and_then(|p| p.file_name().map(PathBuf::from)) else {
            continue;
        };
        let mut data = Vec::new();
        entry.read_to_end(&mut data).map_err(|e| Error::CorruptArchive(format!("{name}.zip: {e}")))?;
        let out = dir.join(file_name);
        fs::write(&out, data).map_err(|e| Error::io(out, e))?;
    }
    if !is_complete(dir, name) {
        return Err(Error::CorruptArchive(format!("{name}.zip lacks {name}_A.txt or {name}_graph_indicator.txt")));
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    version: u32,
    n: usize,
    directed: bool,
    edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertex_labels: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    features: Option<Vec<Vec<u8>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edge_labels: Option<Vec<u32>>,
}

fn edge_label(g: &Graph, u: usize, v: usize) -> Option<u32> {
    let labels = g.neighbor_edge_labels(u)?;
    let i = g.neighbors(u).binary_search(&(v as u32)).ok()?;
    Some(labels[i])
}

impl GraphJson {
    fn from_graph(g: &Graph) -> Self {
        let edges: Vec<(usize, usize)> = match g.arcs() {
            Some(arcs) => arcs.iter().map(|&(u, v)| (u as usize, v as usize)).collect(),
            None => g.edges().map(|(u, v, _)| (u, v)).collect(),
        };
        let edge_labels = g
            .has_edge_labels()
            .then(|| edges.iter().map(|&(u, v)| edge_label(g, u, v).unwrap_or(0)).collect());
        let features = g.features().map(|f| {
            (0..g.order()).map(|v| if f.width() == 0 { vec![] } else { f.row(v).iter().map(|&b| b as u8).collect() }).collect()
        });
        Self {
            version: SCHEMA_VERSION,
            n: g.order(),
            directed: g.is_directed(),
            edges,
            vertex_labels: g.vertex_labels().map(<[u32]>::to_vec),
            features,
            edge_labels,
        }
    }

    fn into_graph(self) -> Result<Graph> {
        if self.version != SCHEMA_VERSION {
            return Err(Error::SchemaMismatch { expected: SCHEMA_VERSION, found: self.version });
        }
        let mut b = Graph::builder(self.n).edges(self.edges).directed(self.directed);
        if let Some(l) = self.vertex_labels {
            b = b.vertex_labels(l);
        }
        if let Some(l) = self.edge_labels {
            b = b.edge_labels(l);
        }
        if let Some(rows) = self.features {
            let width = rows.first().map_or(0, Vec::len);
            let rows = rows
                .into_iter()
                .map(|r| {
                    r.into_iter()
                        .map(|x| match x {
                            0 => Ok(false),
                            1 => Ok(true),
                            _ => Err(Error::Parse(format!("feature entry {x} is not 0 or 1"))),
                        })
                        .collect()
                })
                .collect::<Result<Vec<Vec<bool>>>>()?;
            b = b.features(Features::new(width, rows)?);
        }
        b.build()
    }
}

#[derive(Serialize, Deserialize)]
struct GraphSetJson {
    version: u32,
    graphs: Vec<GraphJson>,
}

pub fn graph_to_json(g: &Graph) -> Value {
    serde_json::to_value(GraphJson::from_graph(g)).expect("graph serializes")
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, origin: &Path) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{}: {e}", origin.display())))
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn read_graph_json(path: &Path) -> Result<Graph> {
    parse_json::<GraphJson>(&read_text(path)?, path)?.into_graph()
}

pub fn write_graph_json(g: &Graph, path: &Path) -> Result<()> {
    write_json_value(&graph_to_json(g), path)
}

/// Reads either a single graph object or `{"version", "graphs": [...]}`.
pub fn read_graphs_json(path: &Path) -> Result<Vec<Graph>> {
    let text = read_text(path)?;
    let value: Value = parse_json(&text, path)?;
    if value.get("graphs").is_some() {
        let set: GraphSetJson = parse_json(&text, path)?;
        if set.version != SCHEMA_VERSION {
            return Err(Error::SchemaMismatch { expected: SCHEMA_VERSION, found: set.version });
        }
        set.graphs.into_iter().map(GraphJson::into_graph).collect()
    } else {
        Ok(vec![parse_json::<GraphJson>(&text, path)?.into_graph()?])
    }
}

pub fn write_graphs_json(graphs: &[Graph], path: &Path) -> Result<()> {
    let set = GraphSetJson { version: SCHEMA_VERSION, graphs: graphs.iter().map(GraphJson::from_graph).collect() };
    write_json_value(&serde_json::to_value(set).expect("graph set serializes"), path)
}

/// Pretty-printed JSON with a trailing newline.
pub fn write_json_value(value: &Value, path: &Path) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            _ => Err(Error::InvalidArgument(format!("unknown report format {s:?}"))),
        }
    }
}

/// A named table with ordered columns plus free-form metadata.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub name: String,
    pub meta: Map<String, Value>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Report {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), ..Default::default() }
    }

    pub fn meta(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.meta.insert(key.into(), value.into());
        self
    }

    pub fn push(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the columns");
        self.rows.push(row);
    }

    /// `{"version", "report", "meta", "rows": [{column: value}]}` with keys in
    /// insertion order.
    pub fn to_json(&self) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|r| Value::Object(self.columns.iter().cloned().zip(r.iter().cloned()).collect()))
            .collect();
        let mut out = Map::new();
        out.insert("version".into(), SCHEMA_VERSION.into());
        out.insert("report".into(), self.name.clone().into());
        out.insert("meta".into(), Value::Object(self.meta.clone()));
        out.insert("rows".into(), Value::Array(rows));
        Value::Object(out)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::InvalidArgument(format!("csv: {e}"));
        w.write_record(&self.columns).map_err(io)?;
        for row in &self.rows {
            w.write_record(row.iter().map(cell)).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn write_report(report: &Report, path: &Path, format: ReportFormat) -> Result<()> {
    match format {
        ReportFormat::Json => write_json_value(&report.to_json(), path),
        ReportFormat::Csv => {
            let text = report.to_csv()?;
            let mut f = fs::File::create(path).map_err(|e| Error::io(path, e))?;
            f.write_all(text.as_bytes()).map_err(|e| Error::io(path, e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_tud(dir: &Path, name: &str, files: &[(&str, &str)]) {
        for (suffix, body) in files {
            fs::write(dir.join(format!("{name}_{suffix}.txt")), body).unwrap();
        }
    }

    #[test]
    fn split_by_indicator() {
        let t = tempfile::tempdir().unwrap();
        write_tud(t.path(), "DS", &[("A", "1, 2\n2, 3\n4, 5\n"), ("graph_indicator", "1\n1\n1\n2\n2\n")]);
        let ds = parse_tud(t.path()).unwrap();
        assert_eq!(ds.graphs.iter().map(Graph::order).collect::<Vec<_>>(), vec![3, 2]);
        assert_eq!(ds.graphs[0].edge_count(), 2);
        assert_eq!(ds.graphs[1].edge_count(), 1);
        assert_eq!(ds.graph_labels, vec![0, 0]);
        assert!(!ds.has_node_labels);
    }

    #[test]
    fn degenerate_and_dedup() {
        let t = tempfile::tempdir().unwrap();
        write_tud(t.path(), "X", &[("A", ""), ("graph_indicator", "1\n")]);
        let ds = parse_tud(t.path()).unwrap();
        assert_eq!(ds.graphs.len(), 1);
        assert_eq!(ds.graphs[0].order(), 1);

        let t = tempfile::tempdir().unwrap();
        write_tud(
            t.path(),
            "X",
            &[
                ("A", "1, 2\n2, 1\n2, 2\n"),
                ("graph_indicator", "1\n1\n"),
                ("edge_labels", "7\n9\n1\n"),
                ("node_labels", "-3\n10\n"),
                ("graph_labels", "-1\n"),
            ],
        );
        let ds = parse_tud(t.path()).unwrap();
        assert_eq!(ds.graphs[0].degrees(), vec![1, 1]);
        assert_eq!(ds.self_loops_dropped, 1);
        assert_eq!(ds.duplicate_edges_merged, 1);
        assert_eq!(ds.graphs[0].vertex_labels(), Some(&[0, 1][..]));
        assert_eq!(ds.node_alphabet, vec![-3, 10]);
        assert_eq!(ds.graph_labels, vec![-1]);
        // labels renumbered over {1, 7, 9}; the first orientation's 7 wins
        assert_eq!(edge_label(&ds.graphs[0], 0, 1), Some(1));
    }

    #[test]
    fn tud_errors() {
        let t = tempfile::tempdir().unwrap();
        write_tud(t.path(), "X", &[("graph_indicator", "1\n")]);
        assert!(matches!(parse_tud(t.path()), Err(Error::MissingFile(_))));
        write_tud(t.path(), "X", &[("A", "1, 3\n"), ("graph_indicator", "1\n1\n")]);
        assert!(matches!(parse_tud(t.path()), Err(Error::Parse(m)) if m.contains("dangling")));
        write_tud(t.path(), "X", &[("A", ""), ("graph_indicator", "1\n2\n1\n")]);
        assert!(matches!(parse_tud(t.path()), Err(Error::Parse(m)) if m.contains("monotone")));
        write_tud(t.path(), "X", &[("A", "1, x\n"), ("graph_indicator", "1\n1\n")]);
        assert!(matches!(parse_tud(t.path()), Err(Error::Parse(m)) if m.contains("malformed")));
    }

    #[test]
    fn json_round_trips() {
        let t = tempfile::tempdir().unwrap();
        let p = t.path().join("g.json");
        let k3 = Graph::complete(3);
        write_graph_json(&k3, &p).unwrap();
        assert_eq!(read_graph_json(&p).unwrap(), k3);

        let f = Features::new(3, vec![vec![true, false, true], vec![false, false, true]]).unwrap();
        let g = Graph::builder(2)
            .edges([(1, 0)])
            .edge_labels(vec![4])
            .vertex_labels(vec![2, 0])
            .features(f)
            .directed(true)
            .build()
            .unwrap();
        write_graph_json(&g, &p).unwrap();
        let back = read_graph_json(&p).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.features().unwrap().width(), 3);

        fs::write(&p, r#"{"version":1,"n":2,"directed":false,"edges":[[0,5]]}"#).unwrap();
        let err = read_graph_json(&p).unwrap_err();
        assert!(err.to_string().contains("endpoint out of range"));
        fs::write(&p, r#"{"version":9,"n":1,"directed":false,"edges":[]}"#).unwrap();
        assert!(matches!(read_graph_json(&p), Err(Error::SchemaMismatch { found: 9, .. })));
        fs::write(&p, r#"{"version":1,"n":"two","directed":false,"edges":[]}"#).unwrap();
        assert!(matches!(read_graph_json(&p), Err(Error::Parse(_))));
    }

    #[test]
    fn graph_sets() {
        let t = tempfile::tempdir().unwrap();
        let p = t.path().join("s.json");
        let set = vec![Graph::complete(3), Graph::path(3), Graph::cycle(6)];
        write_graphs_json(&set, &p).unwrap();
        assert_eq!(read_graphs_json(&p).unwrap(), set);
        write_graph_json(&set[0], &p).unwrap();
        assert_eq!(read_graphs_json(&p).unwrap(), vec![set[0].clone()]);
    }

    #[test]
    fn reports() {
        let mut r = Report::new("histograms", &["iteration", "count"]).meta("dataset", "toy");
        r.push(vec![0.into(), 2.into()]);
        r.push(vec![1.into(), 3.into()]);
        assert_eq!(r.to_csv().unwrap(), "iteration,count\n0,2\n1,3\n");
        let j = serde_json::to_string(&r.to_json()).unwrap();
        assert_eq!(
            j,
            r#"{"version":1,"report":"histograms","meta":{"dataset":"toy"},"rows":[{"iteration":0,"count":2},{"iteration":1,"count":3}]}"#
        );
        let mut q = Report::new("q", &["text"]);
        q.push(vec!["a,\"b\"\nc".into()]);
        assert_eq!(q.to_csv().unwrap(), "text\n\"a,\"\"b\"\"\nc\"\n");
    }

    #[test]
    fn offline_cold_cache_fails_without_network() {
        let t = tempfile::tempdir().unwrap();
        let cfg = CacheConfig { root: t.path().into(), offline: true, ..CacheConfig::default() };
        assert!(matches!(fetch_dataset("ENZYMES", &cfg), Err(Error::Offline(_))));
        assert!(fetch_dataset("../x", &cfg).is_err());
    }

    #[test]
    fn warm_cache_is_a_hit() {
        let t = tempfile::tempdir().unwrap();
        let dir = t.path().join("TOY");
        fs::create_dir_all(&dir).unwrap();
        write_tud(&dir, "TOY", &[("A", ""), ("graph_indicator", "1\n")]);
        let cfg = CacheConfig { root: t.path().into(), offline: true, ..CacheConfig::default() };
        assert_eq!(fetch_dataset("TOY", &cfg).unwrap(), dir);
    }
}

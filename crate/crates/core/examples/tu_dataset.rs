//! Parses a TU-format dataset and counts distinct WL histograms.
//!
//! With a dataset name argument (e.g. `ENZYMES`) the dataset is fetched
//! into the cache first; otherwise a small synthetic dataset is written to
//! a temporary directory.

use std::fs;

use wlvc::dataset::{fetch_dataset, parse_tud, CacheConfig};
use wlvc::wl::{wl1_refine, Iterations};

pub fn run(arg: Option<String>) -> wlvc::Result<()> {
    let tmp = tempfile::tempdir().expect("temp dir");
    let dir = match arg {
        Some(name) => fetch_dataset(&name, &CacheConfig::default())?,
        None => {
            let dir = tmp.path().join("TOY");
            fs::create_dir_all(&dir).unwrap();
            let files = [
                ("A", "1, 2\n2, 1\n2, 3\n3, 1\n4, 5\n5, 6\n7, 8\n"),
                ("graph_indicator", "1\n1\n1\n2\n2\n2\n3\n3\n"),
                ("node_labels", "5\n5\n5\n5\n7\n5\n7\n7\n"),
                ("graph_labels", "1\n-1\n1\n"),
            ];
            for (suffix, body) in files {
                fs::write(dir.join(format!("TOY_{suffix}.txt")), body).unwrap();
            }
            dir
        }
    };
    let ds = parse_tud(&dir)?;
    println!(
        "{}: {} graphs, {} vertices, node labels {} (alphabet {:?}), {} duplicate edges merged",
        ds.name,
        ds.graphs.len(),
        ds.vertex_count(),
        ds.has_node_labels,
        ds.node_alphabet,
        ds.duplicate_edges_merged
    );
    let run = wl1_refine(&ds.graphs, Iterations::Fixed(6), false);
    let counts: Vec<usize> = (0..=6).map(|t| run.distinct_histograms(t)).collect();
    println!("distinct histograms per iteration: {counts:?}");
    Ok(())
}

fn main() {
    if let Err(e) = run(std::env::args().nth(1)) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

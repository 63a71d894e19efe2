//! JSON graph round trip and report output in JSON and CSV.

use wlvc::dataset::{read_graphs_json, write_graphs_json, Report};
use wlvc::generators::gen_tree_family;
use wlvc::wl::count_distinguishable;

pub fn run() -> wlvc::Result<()> {
    let tmp = tempfile::tempdir().expect("temp dir");
    let path = tmp.path().join("trees.json");
    let trees = gen_tree_family(9, false)?;
    write_graphs_json(&trees, &path)?;
    let back = read_graphs_json(&path)?;
    println!("{} trees written and read back, identical: {}", back.len(), back == trees);

    let mut report = Report::new("tree_family", &["k", "members", "distinguishable"]);
    for k in 4..=10 {
        let family = gen_tree_family(k, false)?;
        report.push(vec![k.into(), family.len().into(), count_distinguishable(&family, k).into()]);
    }
    print!("{}", report.to_csv()?);
    println!("{}", serde_json::to_string(&report.to_json()).unwrap());
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

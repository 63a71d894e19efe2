//! 1-WL refinement over a small graph set with one shared dictionary.
//!
//! Run with `cargo run --example wl_histograms`.

use wlvc::wl::{self, Iterations};
use wlvc::Graph;

pub fn run() -> wlvc::Result<()> {
    let two_k3 = wlvc::disjoint_union(&[Graph::complete(3), Graph::complete(3)])?.0;
    let graphs = vec![Graph::complete(3), Graph::path(3), Graph::cycle(6), two_k3, Graph::star(4)];
    let names = ["K3", "P3", "C6", "2K3", "K1,4"];

    let run = wl::wl1_refine(&graphs, Iterations::Fixed(3), false);
    for t in 0..=3 {
        let (ids, count) = run.histogram_ids(t);
        println!("iteration {t}: {count} distinct histograms, ids {ids:?}");
    }
    println!("stable at iteration {:?}", run.stable_at);

    for (g, name) in graphs.iter().zip(names) {
        let (coloring, rounds) = wl::stable_coloring(g);
        println!(
            "{name}: color complexity {}, stable after {rounds} rounds, stable check {}",
            wl::color_complexity(g),
            wl::is_stable(g, &coloring)
        );
    }
    println!("distinguishable after 3 rounds: {}", wl::count_distinguishable(&graphs, 3));
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

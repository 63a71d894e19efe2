//! Oblivious k-WL on the regular pair C6 and two disjoint triangles.

use wlvc::kwl::{wlk_refine, DEFAULT_TUPLE_LIMIT};
use wlvc::wl::{count_distinguishable, Iterations};
use wlvc::Graph;

pub fn run() -> wlvc::Result<()> {
    let two_k3 = wlvc::disjoint_union(&[Graph::complete(3), Graph::complete(3)])?.0;
    let pair = [Graph::cycle(6), two_k3];
    println!("1-WL classes of the pair: {}", count_distinguishable(&pair, 6));
    for k in 2..=3 {
        let run = wlk_refine(&pair, k, Iterations::UntilStable, DEFAULT_TUPLE_LIMIT)?;
        println!("oblivious {k}-WL distinguishes: {}", run.distinguishes(0, 1));
    }
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

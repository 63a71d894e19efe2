//! Unrolls a GNN on two graphs into one feedforward DAG, then collapses it
//! by stable colors.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wlvc::fnn::{collapse_fnn, dag_inputs, fnn_eval, formula_edge_count, unroll_multi};
use wlvc::gnn::gnn_eval;
use wlvc::random::{slp_spec, InputKind};
use wlvc::wl::stable_coloring;
use wlvc::Graph;

pub fn run() -> wlvc::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let spec = slp_spec(&mut rng, 2, 2, 8, InputKind::Constant);
    let graphs = vec![Graph::cycle(5), Graph::star(4)];

    let dag = unroll_multi(&spec, &graphs)?;
    let out = fnn_eval(&dag, &dag_inputs(&dag, &spec, &graphs)?)?;
    println!("DAG: {} nodes, {} edges, layer sizes {:?}", dag.node_count(), dag.edge_count(), dag.layer_sizes());
    for (g, o) in graphs.iter().zip(&out) {
        println!(
            "  DAG output {o}, direct output {}, formula edge count {}",
            gnn_eval(&spec, g)?,
            formula_edge_count(2, 2, g.order(), g.edge_count())
        );
    }

    let colorings: Vec<_> = graphs.iter().map(|g| stable_coloring(g).0).collect();
    let small = collapse_fnn(&dag, &graphs, &colorings)?;
    let out2 = fnn_eval(&small, &dag_inputs(&small, &spec, &graphs)?)?;
    println!("collapsed: {} nodes, layer sizes {:?}, outputs equal: {}", small.node_count(), small.layer_sizes(), out == out2);
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

//! Exact GNN evaluation, directly and on the quotient graph.

use wlvc::gnn::{gnn_eval, gnn_forward, param_count, GnnSpec, InputEncoding, Layer, Matrix, Readout};
use wlvc::quotient::{eval_on_quotient, reduce_stable};
use wlvc::{Dyadic, Graph, PiecewisePoly};

pub fn run() -> wlvc::Result<()> {
    let half = Dyadic::pow2(-1);
    let layer = Layer::slp(
        Matrix::from_ints(&[&[1, 0], &[0, 1]]),
        Matrix::from_rows(vec![vec![half.clone(), Dyadic::zero()], vec![Dyadic::one(), -&half]])?,
        vec![Dyadic::zero(), Dyadic::from_int(-1)],
        PiecewisePoly::relu(),
    );
    let spec = GnnSpec::new(
        InputEncoding::Constant { row: vec![Dyadic::one(), Dyadic::one()] },
        vec![layer.clone(), layer],
        Readout::sum(2),
    )?;
    println!("spec JSON:\n{}", serde_json::to_string_pretty(&spec).unwrap());
    println!("P for d = 2, L = 2: {}", param_count(2, 2));

    for (name, g) in [("C6", Graph::cycle(6)), ("P4", Graph::path(4)), ("K1,3", Graph::star(3))] {
        let fw = gnn_forward(&spec, &g)?;
        let q = reduce_stable(&g)?;
        println!(
            "{name}: output {} (quotient with {} classes gives {}), vertex 0 after layer 2: {:?}",
            gnn_eval(&spec, &g)?,
            q.classes(),
            eval_on_quotient(&spec, &q)?,
            fw.layers[2][0].iter().map(ToString::to_string).collect::<Vec<_>>()
        );
    }
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

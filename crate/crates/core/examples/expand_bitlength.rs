//! Splits neighbor weights into shorter summands without changing outputs.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wlvc::gnn::{expand_bitlength, gnn_eval, NeighborWeight};
use wlvc::random::{graph, slp_spec, InputKind};

pub fn run() -> wlvc::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let spec = slp_spec(&mut rng, 3, 2, 12, InputKind::Constant);
    let g = graph(&mut rng, 8, 3, InputKind::Constant);
    for k in [1, 2, 3] {
        let t = expand_bitlength(&spec, k)?;
        let parts: Vec<String> = t
            .layers
            .iter()
            .map(|layer| match &layer.w2 {
                NeighborWeight::Dense(m) => format!("dense {}b", m.bitlength()),
                NeighborWeight::Split { parts, .. } => {
                    parts.iter().map(|p| format!("{}b", p.bitlength())).collect::<Vec<_>>().join("+")
                }
            })
            .collect();
        println!("k = {k}: W2 summands {parts:?}, output {} (original {})", gnn_eval(&t, &g)?, gnn_eval(&spec, &g)?);
    }
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

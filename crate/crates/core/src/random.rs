//! Seeded random graphs and single-layer-perceptron GNN specs for
//! equivalence checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::activation::PiecewisePoly;
use crate::dyadic::Dyadic;
use crate::gnn::{GnnSpec, InputEncoding, Layer, Matrix, Readout};
use crate::graph::{Features, Graph};

/// Dyadic with a mantissa of at most `bits` bits and magnitude below 8.
pub fn dyadic<R: Rng>(rng: &mut R, bits: u32) -> Dyadic {
    let bound = (1i64 << bits) - 1;
    let top = -(bits as i64);
    Dyadic::new(rng.gen_range(-bound..=bound), rng.gen_range(top - 2..=top + 3))
}

fn matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bits: u32) -> Matrix {
    Matrix::from_rows((0..rows).map(|_| (0..cols).map(|_| dyadic(rng, bits)).collect()).collect())
        .expect("rectangular rows")
}

fn activation<R: Rng>(rng: &mut R) -> PiecewisePoly {
    let name = *["identity", "relu", "sign", "lsig", "A", "A_scaled(4)"].choose(rng).unwrap();
    PiecewisePoly::by_name(name).expect("known activation")
}

/// Input encodings a random spec may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputKind {
    Constant,
    Features,
    Labels,
}

/// Uniform-width `GNN_slp(d, L)` spec with `bits`-bit weights and random
/// activations. The input kind decides what [`graph`] must attach.
pub fn slp_spec<R: Rng>(rng: &mut R, d: usize, l: usize, bits: u32, kind: InputKind) -> GnnSpec {
    let input = match kind {
        InputKind::Constant => InputEncoding::Constant { row: (0..d).map(|_| dyadic(rng, bits)).collect() },
        InputKind::Features => InputEncoding::Features { width: d },
        InputKind::Labels => InputEncoding::OneHotLabels { alphabet: d },
    };
    let layers = (0..l)
        .map(|_| {
            Layer::slp(
                matrix(rng, d, d, bits),
                matrix(rng, d, d, bits),
                (0..d).map(|_| dyadic(rng, bits)).collect(),
                activation(rng),
            )
        })
        .collect();
    let mut readout = Readout::sum(d);
    readout.weight = matrix(rng, d, 1, bits);
    readout.bias = vec![dyadic(rng, bits)];
    readout.activation = activation(rng);
    GnnSpec::new(input, layers, readout).expect("widths agree by construction")
}

pub fn input_kind<R: Rng>(rng: &mut R) -> InputKind {
    *[InputKind::Constant, InputKind::Features, InputKind::Labels].choose(rng).unwrap()
}

/// Erdos-Renyi style graph on `n` vertices with a random edge density,
/// carrying `d`-wide features or labels in `0..d` as `kind` requires.
pub fn graph<R: Rng>(rng: &mut R, n: usize, d: usize, kind: InputKind) -> Graph {
    let p: f64 = rng.gen_range(0.1..0.7);
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
    let mut b = Graph::builder(n).edges(edges);
    match kind {
        InputKind::Constant => {}
        InputKind::Features => {
            // few distinct rows keep some vertices WL-equivalent
            let palette: Vec<Vec<bool>> = (0..2).map(|_| (0..d).map(|_| rng.gen_bool(0.5)).collect()).collect();
            let rows = (0..n).map(|_| palette.choose(rng).unwrap().clone()).collect();
            b = b.features(Features::new(d, rows).expect("uniform width"));
        }
        InputKind::Labels => {
            let top = d.min(2) as u32;
            b = b.vertex_labels((0..n).map(|_| rng.gen_range(0..top)).collect());
        }
    }
    b.build().expect("simple graph")
}

/// Regular-ish structured graphs mixed into random batches so that
/// quotients are non-trivial.
pub fn structured<R: Rng>(rng: &mut R, n: usize) -> Graph {
    match rng.gen_range(0..4) {
        0 => Graph::cycle(n.max(3)),
        1 => Graph::complete(n.max(1)),
        2 => Graph::star(n.saturating_sub(1).max(1)),
        _ => Graph::path(n.max(1)),
    }
}

//! Simple GNNs with sum aggregation, evaluated exactly.
//!
//! Layer `t` computes
//! `h_v = sigma_t(h_v W1 + (sum over u in N(v) of h_u) W2 + b)`, optionally
//! followed by further dense stages (the multilayer-perceptron variant). The
//! readout computes `sigma(sum over v of h_v w + b)`, again optionally followed
//! by dense stages, and must end in a single output.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::activation::PiecewisePoly;
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const SPEC_VERSION: u32 = 1;

/// Dense row-major matrix; vectors multiply from the left (`x M`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Dyadic>>", into = "Vec<Vec<Dyadic>>")]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Dyadic>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Dyadic::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Dyadic>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::WidthMismatch("ragged matrix rows".into()));
        }
        Ok(Self { rows: rows.len(), cols, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Dyadic::from_int(x)).collect()).collect())
            .expect("rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Dyadic {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Dyadic) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = &Dyadic> {
        self.data.iter()
    }

    /// Largest mantissa bitlength over all entries.
    pub fn bitlength(&self) -> u64 {
        self.data.iter().map(Dyadic::mantissa_bits).max().unwrap_or(0)
    }

    pub fn vecmul(&self, x: &[Dyadic]) -> Vec<Dyadic> {
        debug_assert_eq!(x.len(), self.rows);
        let mut out = vec![Dyadic::zero(); self.cols];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let w = self.get(i, j);
                if !w.is_zero() {
                    *o += &(xi * w);
                }
            }
        }
        out
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::WidthMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let rows = (0..self.rows)
            .map(|i| other.vecmul(&self.data[i * self.cols..(i + 1) * self.cols]))
            .collect();
        Matrix::from_rows(rows)
    }
}

impl TryFrom<Vec<Vec<Dyadic>>> for Matrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<Dyadic>>) -> Result<Self> {
        Matrix::from_rows(rows)
    }
}

impl From<Matrix> for Vec<Vec<Dyadic>> {
    fn from(m: Matrix) -> Self {
        m.data.chunks(m.cols.max(1)).take(m.rows).map(<[Dyadic]>::to_vec).collect()
    }
}

/// `sigma(x W + b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dense {
    pub weight: Matrix,
    pub bias: Vec<Dyadic>,
    pub activation: PiecewisePoly,
}

impl Dense {
    pub fn apply(&self, x: &[Dyadic]) -> Vec<Dyadic> {
        let mut y = self.weight.vecmul(x);
        for (yi, bi) in y.iter_mut().zip(&self.bias) {
            *yi = self.activation.eval(&(&*yi + bi));
        }
        y
    }

    fn check(&self, input: usize, what: &str) -> Result<usize> {
        if self.weight.rows() != input || self.bias.len() != self.weight.cols() {
            return Err(Error::WidthMismatch(format!(
                "{what}: weight {}x{} with bias of length {} after width {input}",
                self.weight.rows(),
                self.weight.cols(),
                self.bias.len()
            )));
        }
        Ok(self.weight.cols())
    }
}

/// How iteration-0 features are obtained from a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InputEncoding {
    /// The same row for every vertex.
    Constant { row: Vec<Dyadic> },
    /// The graph's boolean feature rows as 0/1.
    Features { width: usize },
    /// One-hot vertex labels over `0..alphabet`.
    OneHotLabels { alphabet: usize },
}

impl InputEncoding {
    pub fn width(&self) -> usize {
        match self {
            InputEncoding::Constant { row } => row.len(),
            InputEncoding::Features { width } => *width,
            InputEncoding::OneHotLabels { alphabet } => *alphabet,
        }
    }

    /// Input row of a vertex with the given label and feature row.
    pub fn row(&self, label: Option<u32>, features: Option<&[bool]>) -> Result<Vec<Dyadic>> {
        match self {
            InputEncoding::Constant { row } => Ok(row.clone()),
            InputEncoding::Features { width } => {
                let f = features.ok_or_else(|| Error::MissingFeatures("graph has no feature rows".into()))?;
                if f.len() != *width {
                    return Err(Error::WidthMismatch(format!("feature width {} but spec expects {width}", f.len())));
                }
                Ok(f.iter().map(|&b| Dyadic::from_int(b as i64)).collect())
            }
            InputEncoding::OneHotLabels { alphabet } => {
                let l = label.ok_or_else(|| Error::MissingFeatures("graph has no vertex labels".into()))? as usize;
                if l >= *alphabet {
                    return Err(Error::WidthMismatch(format!("label {l} outside one-hot alphabet of {alphabet}")));
                }
                let mut row = vec![Dyadic::zero(); *alphabet];
                row[l] = Dyadic::one();
                Ok(row)
            }
        }
    }

    pub fn rows_for(&self, g: &Graph) -> Result<Vec<Vec<Dyadic>>> {
        (0..g.order()).map(|v| self.row(g.label(v), g.features().map(|f| f.row(v)))).collect()
    }
}

/// The neighbor weight of a layer: either one matrix, or the split form
/// produced by [`expand_bitlength`], `[P_1 | ... | P_k] S` with a 0/1 summing
/// matrix `S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NeighborWeight {
    Dense(Matrix),
    Split { parts: Vec<Matrix>, summing: Matrix },
}

impl NeighborWeight {
    pub fn apply(&self, x: &[Dyadic]) -> Vec<Dyadic> {
        match self {
            NeighborWeight::Dense(w) => w.vecmul(x),
            NeighborWeight::Split { parts, summing } => {
                let wide: Vec<Dyadic> = parts.iter().flat_map(|p| p.vecmul(x)).collect();
                summing.vecmul(&wide)
            }
        }
    }

    /// The equivalent single matrix.
    pub fn effective(&self) -> Result<Matrix> {
        match self {
            NeighborWeight::Dense(w) => Ok(w.clone()),
            NeighborWeight::Split { parts, summing } => {
                let rows = parts.first().map_or(0, Matrix::rows);
                let cat = Matrix::from_rows(
                    (0..rows)
                        .map(|i| parts.iter().flat_map(|p| (0..p.cols()).map(move |j| p.get(i, j).clone())).collect())
                        .collect(),
                )?;
                cat.matmul(summing)
            }
        }
    }

    fn shape(&self) -> Result<(usize, usize)> {
        match self {
            NeighborWeight::Dense(w) => Ok((w.rows(), w.cols())),
            NeighborWeight::Split { parts, summing } => {
                let (r, c) = parts.first().map_or((0, 0), |p| (p.rows(), p.cols()));
                if parts.iter().any(|p| p.rows() != r || p.cols() != c) || summing.rows() != c * parts.len() {
                    return Err(Error::WidthMismatch("split neighbor weight parts do not line up".into()));
                }
                Ok((r, summing.cols()))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layer {
    pub w1: Matrix,
    pub w2: NeighborWeight,
    pub bias: Vec<Dyadic>,
    pub activation: PiecewisePoly,
    /// Extra dense stages of the multilayer-perceptron variant.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mlp: Vec<Dense>,
}

impl Layer {
    pub fn slp(w1: Matrix, w2: Matrix, bias: Vec<Dyadic>, activation: PiecewisePoly) -> Self {
        Self { w1, w2: NeighborWeight::Dense(w2), bias, activation, mlp: Vec::new() }
    }

    /// Layer output from a vertex's own row and the sum of its neighbors' rows.
    pub fn update(&self, own: &[Dyadic], aggregated: &[Dyadic]) -> Vec<Dyadic> {
        let a = self.w1.vecmul(own);
        let b = self.w2.apply(aggregated);
        let mut h: Vec<Dyadic> = a
            .iter()
            .zip(&b)
            .zip(&self.bias)
            .map(|((x, y), z)| self.activation.eval(&(&(x + y) + z)))
            .collect();
        for stage in &self.mlp {
            h = stage.apply(&h);
        }
        h
    }

    pub fn output_width(&self) -> usize {
        self.mlp.last().map_or(self.w1.cols(), |s| s.weight.cols())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Readout {
    pub weight: Matrix,
    pub bias: Vec<Dyadic>,
    pub activation: PiecewisePoly,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mlp: Vec<Dense>,
}

impl Readout {
    /// Identity readout summing a width-`d` embedding into one scalar.
    pub fn sum(d: usize) -> Self {
        Self {
            weight: Matrix::from_rows(vec![vec![Dyadic::one()]; d]).expect("column"),
            bias: vec![Dyadic::zero()],
            activation: PiecewisePoly::identity(),
            mlp: Vec::new(),
        }
    }

    /// Readout from the pooled sum `sum over v of h_v`.
    pub fn apply(&self, pooled: &[Dyadic]) -> Dyadic {
        let first = Dense { weight: self.weight.clone(), bias: self.bias.clone(), activation: self.activation.clone() };
        let mut y = first.apply(pooled);
        for stage in &self.mlp {
            y = stage.apply(&y);
        }
        y.into_iter().next().expect("validated readout has one output")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GnnSpec {
    pub version: u32,
    pub input: InputEncoding,
    pub layers: Vec<Layer>,
    pub readout: Readout,
}

impl GnnSpec {
    pub fn new(input: InputEncoding, layers: Vec<Layer>, readout: Readout) -> Result<Self> {
        let spec = Self { version: SPEC_VERSION, input, layers, readout };
        spec.validate()?;
        Ok(spec)
    }

    /// Checks that all widths line up; returns the per-layer widths
    /// including the input width.
    pub fn validate(&self) -> Result<Vec<usize>> {
        if self.version != SPEC_VERSION {
            return Err(Error::SchemaMismatch { expected: SPEC_VERSION, found: self.version });
        }
        let mut widths = vec![self.input.width()];
        for (t, layer) in self.layers.iter().enumerate() {
            let d = *widths.last().unwrap();
            let (r2, c2) = layer.w2.shape()?;
            if layer.w1.rows() != d || r2 != d || c2 != layer.w1.cols() || layer.bias.len() != c2 {
                return Err(Error::WidthMismatch(format!(
                    "layer {}: W1 {}x{}, W2 {r2}x{c2}, bias {} after width {d}",
                    t + 1,
                    layer.w1.rows(),
                    layer.w1.cols(),
                    layer.bias.len()
                )));
            }
            let mut w = c2;
            for stage in &layer.mlp {
                w = stage.check(w, &format!("layer {} mlp", t + 1))?;
            }
            widths.push(w);
        }
        let first = Dense {
            weight: self.readout.weight.clone(),
            bias: self.readout.bias.clone(),
            activation: self.readout.activation.clone(),
        };
        let mut w = first.check(*widths.last().unwrap(), "readout")?;
        for stage in &self.readout.mlp {
            w = stage.check(w, "readout mlp")?;
        }
        if w != 1 {
            return Err(Error::WidthMismatch(format!("readout ends in width {w}, expected 1")));
        }
        Ok(widths)
    }

    /// Common width when every layer has the same width as the input.
    pub fn uniform_width(&self) -> Option<usize> {
        let widths = self.validate().ok()?;
        widths.iter().all(|&w| w == widths[0]).then_some(widths[0])
    }

    pub fn is_slp(&self) -> bool {
        self.layers.iter().all(|l| l.mlp.is_empty()) && self.readout.mlp.is_empty()
    }

    /// Largest mantissa bitlength over all weights and biases.
    pub fn bitlength(&self) -> u64 {
        let vec_bits = |v: &[Dyadic]| v.iter().map(Dyadic::mantissa_bits).max().unwrap_or(0);
        let dense_bits = |d: &Dense| d.weight.bitlength().max(vec_bits(&d.bias));
        let mut bits = 0;
        for l in &self.layers {
            bits = bits.max(l.w1.bitlength()).max(vec_bits(&l.bias));
            bits = bits.max(match &l.w2 {
                NeighborWeight::Dense(w) => w.bitlength(),
                NeighborWeight::Split { parts, summing } => {
                    parts.iter().map(Matrix::bitlength).max().unwrap_or(0).max(summing.bitlength())
                }
            });
            bits = l.mlp.iter().map(dense_bits).fold(bits, u64::max);
        }
        bits = bits.max(self.readout.weight.bitlength()).max(vec_bits(&self.readout.bias));
        self.readout.mlp.iter().map(dense_bits).fold(bits, u64::max)
    }
}

/// All intermediate vertex features of one evaluation.
#[derive(Clone, Debug)]
pub struct Forward {
    /// `layers[t][v]` is `h_v^(t)`; `layers[0]` holds the input rows.
    pub layers: Vec<Vec<Vec<Dyadic>>>,
    pub output: Dyadic,
}

/// Evaluates `spec` on `g` and keeps every intermediate feature.
pub fn gnn_forward(spec: &GnnSpec, g: &Graph) -> Result<Forward> {
    spec.validate()?;
    let mut layers = vec![spec.input.rows_for(g)?];
    for layer in &spec.layers {
        let h = layers.last().unwrap();
        let width = h.first().map_or(0, Vec::len);
        let next: Vec<Vec<Dyadic>> = (0..g.order())
            .into_par_iter()
            .map(|v| {
                let mut agg = vec![Dyadic::zero(); width];
                for &u in g.neighbors(v) {
                    for (a, x) in agg.iter_mut().zip(&h[u as usize]) {
                        *a += x;
                    }
                }
                layer.update(&h[v], &agg)
            })
            .collect();
        layers.push(next);
    }
    let last = layers.last().unwrap();
    let width = spec.validate()?.last().copied().unwrap_or(0);
    let mut pooled = vec![Dyadic::zero(); width];
    for row in last {
        for (p, x) in pooled.iter_mut().zip(row) {
            *p += x;
        }
    }
    let output = spec.readout.apply(&pooled);
    Ok(Forward { layers, output })
}

pub fn gnn_eval(spec: &GnnSpec, g: &Graph) -> Result<Dyadic> {
    Ok(gnn_forward(spec, g)?.output)
}

/// `P = d(2dL + L + 1) + 1`, the parameter count of a width-`d`, `L`-layer
/// single-layer-perceptron GNN with a scalar readout.
pub fn param_count(d: u64, l: u64) -> u128 {
    let (d, l) = (d as u128, l as u128);
    d * (2 * d * l + l + 1) + 1
}

/// Rewrites every neighbor weight `W2` as `[P_1 | ... | P_k] S`, where the
/// `P_j` hold consecutive chunks of each entry's mantissa and `S` sums the
/// `k` column blocks back together. `k = 1` returns the spec unchanged.
pub fn expand_bitlength(spec: &GnnSpec, k: usize) -> Result<GnnSpec> {
    if k == 0 {
        return Err(Error::InvalidArgument("split into at least one part".into()));
    }
    spec.validate()?;
    let mut out = spec.clone();
    if k == 1 {
        return Ok(out);
    }
    for layer in &mut out.layers {
        let w = match &layer.w2 {
            NeighborWeight::Dense(w) => w.clone(),
            NeighborWeight::Split { .. } => {
                return Err(Error::InvalidArgument("neighbor weight is already split".into()))
            }
        };
        let bits = w.bitlength();
        if k as u64 > bits {
            return Err(Error::SplitTooLarge { parts: k, bits });
        }
        let chunk = bits.div_ceil(k as u64);
        let mask: num_bigint::BigUint = (num_bigint::BigUint::from(1u8) << chunk as usize) - 1u8;
        let parts = (0..k)
            .map(|j| {
                let mut p = Matrix::zeros(w.rows(), w.cols());
                for r in 0..w.rows() {
                    for c in 0..w.cols() {
                        let x = w.get(r, c);
                        let shift = j as u64 * chunk;
                        let mag = (x.mantissa().magnitude().clone() >> shift as usize) & &mask;
                        let mut piece = Dyadic::new(num_bigint::BigInt::from(mag), x.exponent() + shift as i64);
                        if x.is_negative() {
                            piece = -piece;
                        }
                        p.set(r, c, piece);
                    }
                }
                p
            })
            .collect();
        let d = w.cols();
        let mut summing = Matrix::zeros(k * d, d);
        for j in 0..k {
            for i in 0..d {
                summing.set(j * d + i, i, Dyadic::one());
            }
        }
        layer.w2 = NeighborWeight::Split { parts, summing };
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    fn relu_spec(d: usize, l: usize, seed: i64) -> GnnSpec {
        let m = |off: i64| {
            Matrix::from_rows(
                (0..d)
                    .map(|i| (0..d).map(|j| Dyadic::new((i as i64 * 3 + j as i64 * 5 + off + seed) % 7 - 3, -1)).collect())
                    .collect(),
            )
            .unwrap()
        };
        let layers = (0..l)
            .map(|t| Layer::slp(m(t as i64), m(t as i64 + 2), vec![q("1/4"); d], PiecewisePoly::relu()))
            .collect();
        GnnSpec::new(InputEncoding::Constant { row: vec![Dyadic::one(); d] }, layers, Readout::sum(d)).unwrap()
    }

    #[test]
    fn param_counts() {
        assert_eq!(param_count(2, 2), 23);
        assert_eq!(param_count(1, 1), 5);
        assert_eq!(param_count(64, 5), 41345);
    }

    #[test]
    fn zero_spec_gives_zero() {
        let layer = Layer::slp(Matrix::zeros(2, 2), Matrix::zeros(2, 2), vec![Dyadic::zero(); 2], PiecewisePoly::relu());
        let spec =
            GnnSpec::new(InputEncoding::Constant { row: vec![Dyadic::one(); 2] }, vec![layer], Readout::sum(2)).unwrap();
        for g in [Graph::complete(3), Graph::path(5), Graph::empty(1)] {
            assert_eq!(gnn_eval(&spec, &g).unwrap(), Dyadic::zero());
        }
    }

    #[test]
    fn hand_computed_single_layer() {
        // h = relu(2h + sum_N h - 1) from h = 1; readout sums
        let layer = Layer::slp(Matrix::from_ints(&[&[2]]), Matrix::from_ints(&[&[1]]), vec![q("-1")], PiecewisePoly::relu());
        let spec = GnnSpec::new(InputEncoding::Constant { row: vec![Dyadic::one()] }, vec![layer], Readout::sum(1)).unwrap();
        // star with 3 leaves: center 2+3-1 = 4, leaves 2+1-1 = 2
        assert_eq!(gnn_eval(&spec, &Graph::star(3)).unwrap(), q("10"));
    }

    #[test]
    fn permutation_invariance() {
        let spec = relu_spec(3, 2, 1);
        let g = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (1, 4)], None).unwrap();
        let p = g.permute(&[4, 2, 0, 1, 3]).unwrap();
        assert_eq!(gnn_eval(&spec, &g).unwrap(), gnn_eval(&spec, &p).unwrap());
    }

    #[test]
    fn width_errors() {
        let layer = Layer::slp(Matrix::zeros(2, 2), Matrix::zeros(2, 2), vec![Dyadic::zero(); 2], PiecewisePoly::relu());
        let bad = GnnSpec::new(InputEncoding::Constant { row: vec![Dyadic::one(); 3] }, vec![layer], Readout::sum(2));
        assert!(matches!(bad, Err(Error::WidthMismatch(_))));
        let spec = GnnSpec::new(InputEncoding::OneHotLabels { alphabet: 2 }, vec![], Readout::sum(2)).unwrap();
        assert!(matches!(gnn_eval(&spec, &Graph::path(2)), Err(Error::MissingFeatures(_))));
    }

    #[test]
    fn one_hot_and_feature_inputs() {
        let spec = GnnSpec::new(InputEncoding::OneHotLabels { alphabet: 3 }, vec![], Readout {
            weight: Matrix::from_ints(&[&[1], &[10], &[100]]),
            bias: vec![Dyadic::zero()],
            activation: PiecewisePoly::identity(),
            mlp: vec![],
        })
        .unwrap();
        let g = Graph::new(3, &[(0, 1)], Some(vec![0, 2, 2])).unwrap();
        assert_eq!(gnn_eval(&spec, &g).unwrap(), q("201"));
    }

    #[test]
    fn split_example() {
        let layer = Layer::slp(Matrix::zeros(1, 1), Matrix::from_ints(&[&[3]]), vec![Dyadic::zero()], PiecewisePoly::identity());
        let spec = GnnSpec::new(InputEncoding::Constant { row: vec![Dyadic::one()] }, vec![layer], Readout::sum(1)).unwrap();
        let split = expand_bitlength(&spec, 2).unwrap();
        match &split.layers[0].w2 {
            NeighborWeight::Split { parts, summing } => {
                assert_eq!(parts[0], Matrix::from_ints(&[&[1]]));
                assert_eq!(parts[1], Matrix::from_ints(&[&[2]]));
                assert_eq!(summing, &Matrix::from_ints(&[&[1], &[1]]));
                // neighbor sum 2 -> [2, 4] -> 6
                assert_eq!(split.layers[0].w2.apply(&[q("2")]), vec![q("6")]);
            }
            other => panic!("expected split, got {other:?}"),
        }
        assert_eq!(expand_bitlength(&spec, 1).unwrap(), spec);
        assert!(matches!(expand_bitlength(&spec, 3), Err(Error::SplitTooLarge { parts: 3, bits: 2 })));
    }

    #[test]
    fn split_preserves_outputs() {
        let spec = relu_spec(2, 2, 4);
        let layers = spec
            .layers
            .iter()
            .map(|l| Layer { w2: NeighborWeight::Dense(Matrix::from_ints(&[&[-13, 7], &[5, 0]])), ..l.clone() })
            .collect();
        let spec = GnnSpec { layers, ..spec };
        let split = expand_bitlength(&spec, 3).unwrap();
        for g in [Graph::cycle(5), Graph::star(4), Graph::path(3)] {
            assert_eq!(gnn_eval(&spec, &g).unwrap(), gnn_eval(&split, &g).unwrap());
        }
    }

    #[test]
    fn json_round_trip() {
        let spec = relu_spec(2, 2, 0);
        let s = serde_json::to_string(&spec).unwrap();
        let back: GnnSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(back, spec);
        let layer = Layer::slp(Matrix::from_ints(&[&[1]]), Matrix::from_ints(&[&[5]]), vec![Dyadic::zero()], PiecewisePoly::relu());
        let small = GnnSpec::new(InputEncoding::Constant { row: vec![Dyadic::one()] }, vec![layer], Readout::sum(1)).unwrap();
        let split = expand_bitlength(&small, 2).unwrap();
        let s = serde_json::to_string(&split).unwrap();
        assert_eq!(serde_json::from_str::<GnnSpec>(&s).unwrap(), split);
    }
}

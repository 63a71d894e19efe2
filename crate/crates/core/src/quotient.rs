//! Quotients of graphs by stable colorings, and exact GNN evaluation on them.
//!
//! The quotient has one vertex per color class `X` and a directed weight
//! `w(X -> Y)`, the number of `Y`-neighbors of any member of `X`. Stability
//! makes that number independent of the member.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::gnn::GnnSpec;
use crate::graph::Graph;
use crate::wl::{self, Color, Coloring};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientGraph {
    /// Color of each class, increasing.
    pub class_color: Vec<Color>,
    pub class_size: Vec<usize>,
    /// Sparse rows: `weights[x]` lists `(y, w(x -> y))` with `y` increasing.
    pub weights: Vec<Vec<(usize, u64)>>,
    /// Lowest-numbered member of each class.
    pub representative: Vec<usize>,
    /// Vertex label of each class, when the source graph is labeled.
    pub class_label: Option<Vec<u32>>,
    /// Feature row of each class, when the source graph has features.
    pub class_features: Option<Vec<Vec<bool>>>,
}

impl QuotientGraph {
    pub fn classes(&self) -> usize {
        self.class_size.len()
    }

    pub fn order(&self) -> usize {
        self.class_size.iter().sum()
    }

    pub fn weight(&self, x: usize, y: usize) -> u64 {
        self.weights[x].binary_search_by_key(&y, |e| e.0).map_or(0, |i| self.weights[x][i].1)
    }
}

/// Builds the quotient of `g` by the stable coloring `c`, which must refine
/// the vertex labels and features.
pub fn reduce(g: &Graph, c: &Coloring) -> Result<QuotientGraph> {
    if c.len() != g.order() {
        return Err(Error::ColoringMismatch(format!("coloring covers {} of {} vertices", c.len(), g.order())));
    }
    if !wl::refines_initial(g, c) {
        return Err(Error::NonStableColoring("coloring does not refine the vertex labels".into()));
    }
    let mut index: BTreeMap<Color, usize> = BTreeMap::new();
    for &col in &c.colors {
        index.insert(col, 0);
    }
    for (i, slot) in index.values_mut().enumerate() {
        *slot = i;
    }
    let u = index.len();
    let class: Vec<usize> = c.colors.iter().map(|col| index[col]).collect();
    let mut class_size = vec![0; u];
    let mut representative = vec![usize::MAX; u];
    let mut weights: Vec<Option<Vec<(usize, u64)>>> = vec![None; u];
    for v in 0..g.order() {
        let x = class[v];
        class_size[x] += 1;
        let mut row: BTreeMap<usize, u64> = BTreeMap::new();
        for &w in g.neighbors(v) {
            *row.entry(class[w as usize]).or_default() += 1;
        }
        let row: Vec<(usize, u64)> = row.into_iter().collect();
        match &weights[x] {
            None => {
                representative[x] = v;
                weights[x] = Some(row);
            }
            Some(r) if *r != row => {
                return Err(Error::NonStableColoring(format!(
                    "vertices {} and {v} share color {} but see different neighbor classes",
                    representative[x],
                    c.colors[v]
                )));
            }
            Some(_) => {}
        }
    }
    let class_label = g.vertex_labels().map(|l| representative.iter().map(|&v| l[v]).collect());
    let class_features = g.features().map(|f| representative.iter().map(|&v| f.row(v).to_vec()).collect());
    Ok(QuotientGraph {
        class_color: index.into_keys().collect(),
        class_size,
        weights: weights.into_iter().map(Option::unwrap_or_default).collect(),
        representative,
        class_label,
        class_features,
    })
}

/// Quotient of `g` by its own stable coloring.
pub fn reduce_stable(g: &Graph) -> Result<QuotientGraph> {
    reduce(g, &wl::stable_coloring(g).0)
}

/// Per-class features of every layer, plus the output.
#[derive(Clone, Debug)]
pub struct QuotientForward {
    /// `layers[t][x]` is the common feature of class `x` after `t` layers.
    pub layers: Vec<Vec<Vec<Dyadic>>>,
    pub output: Dyadic,
}

pub fn quotient_forward(spec: &GnnSpec, q: &QuotientGraph) -> Result<QuotientForward> {
    let widths = spec.validate()?;
    let initial: Vec<Vec<Dyadic>> = (0..q.classes())
        .map(|x| {
            let label = q.class_label.as_ref().map(|l| l[x]);
            let features = q.class_features.as_ref().map(|f| f[x].as_slice());
            spec.input.row(label, features)
        })
        .collect::<Result<_>>()?;
    let mut layers = vec![initial];
    for (t, layer) in spec.layers.iter().enumerate() {
        let h = layers.last().unwrap();
        let next = (0..q.classes())
            .map(|x| {
                let mut agg = vec![Dyadic::zero(); widths[t]];
                for &(y, w) in &q.weights[x] {
                    for (a, v) in agg.iter_mut().zip(&h[y]) {
                        *a += &v.mul_u64(w);
                    }
                }
                layer.update(&h[x], &agg)
            })
            .collect();
        layers.push(next);
    }
    let mut pooled = vec![Dyadic::zero(); *widths.last().unwrap()];
    for (x, row) in layers.last().unwrap().iter().enumerate() {
        for (p, v) in pooled.iter_mut().zip(row) {
            *p += &v.mul_u64(q.class_size[x] as u64);
        }
    }
    let output = spec.readout.apply(&pooled);
    Ok(QuotientForward { layers, output })
}

pub fn eval_on_quotient(spec: &GnnSpec, q: &QuotientGraph) -> Result<Dyadic> {
    Ok(quotient_forward(spec, q)?.output)
}

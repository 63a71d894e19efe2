//! Feedforward computation DAGs, GNN unrolling and WL-based collapsing.
//!
//! Unrolling a single-layer-perceptron GNN on a fixed graph gives a DAG with
//! one input node `i_{v,j}` per vertex and input coordinate, one node
//! `n^(t)_{v,j}` per layer, vertex and coordinate, and one output node. The
//! weights are tied: every edge `u -> v` of layer `t` carries `W2^(t)` and the
//! self edge carries `W1^(t)`.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::activation::PiecewisePoly;
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::gnn::GnnSpec;
use crate::graph::Graph;
use crate::wl::{self, Coloring};

/// What a DAG node computes, in terms of the unrolled GNN.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NodeTag {
    Input { graph: usize, vertex: usize, j: usize },
    Hidden { graph: usize, layer: usize, vertex: usize, j: usize },
    Output { graph: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FnnNode {
    pub tag: NodeTag,
    pub bias: Dyadic,
    /// Index into [`FnnDag::activations`]; `None` for input nodes.
    pub activation: Option<usize>,
    /// Incoming `(source, weight)` pairs.
    pub incoming: Vec<(usize, Dyadic)>,
}

#[derive(Clone, Debug)]
pub struct FnnDag {
    pub nodes: Vec<FnnNode>,
    pub activations: Vec<PiecewisePoly>,
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
    order: Vec<usize>,
}

impl FnnDag {
    /// Validates degrees and acyclicity and computes a topological order.
    pub fn new(nodes: Vec<FnnNode>, activations: Vec<PiecewisePoly>, inputs: Vec<usize>, outputs: Vec<usize>) -> Result<Self> {
        let n = nodes.len();
        let mut outdeg = vec![0usize; n];
        let mut indeg = vec![0usize; n];
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (v, node) in nodes.iter().enumerate() {
            if node.activation.is_some_and(|a| a >= activations.len()) {
                return Err(Error::InvalidArgument(format!("node {v} references a missing activation")));
            }
            for &(u, _) in &node.incoming {
                if u >= n {
                    return Err(Error::InvalidArgument(format!("edge from missing node {u}")));
                }
                outdeg[u] += 1;
                indeg[v] += 1;
                children[u].push(v);
            }
        }
        let mut is_input = vec![false; n];
        for &i in &inputs {
            if indeg[i] != 0 || nodes[i].activation.is_some() {
                return Err(Error::InvalidArgument(format!("input node {i} has incoming edges or an activation")));
            }
            is_input[i] = true;
        }
        let mut is_output = vec![false; n];
        for &o in &outputs {
            if outdeg[o] != 0 {
                return Err(Error::InvalidArgument(format!("output node {o} has outgoing edges")));
            }
            is_output[o] = true;
        }
        for v in 0..n {
            if (indeg[v] == 0 && !is_input[v]) || (outdeg[v] == 0 && !is_output[v]) {
                return Err(Error::InvalidArgument(format!("node {v} is dangling")));
            }
            if !is_input[v] && nodes[v].activation.is_none() {
                return Err(Error::InvalidArgument(format!("computation node {v} has no activation")));
            }
        }
        let mut order = Vec::with_capacity(n);
        let mut remaining = indeg.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        while let Some(v) = stack.pop() {
            order.push(v);
            for &c in &children[v] {
                remaining[c] -= 1;
                if remaining[c] == 0 {
                    stack.push(c);
                }
            }
        }
        if order.len() != n {
            return Err(Error::InvalidArgument("computation graph has a cycle".into()));
        }
        Ok(Self { nodes, activations, inputs, outputs, order })
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.nodes.iter().map(|n| n.incoming.len()).sum()
    }

    /// Number of biases and weights.
    pub fn size(&self) -> usize {
        self.edge_count() + self.nodes.len() - self.inputs.len()
    }

    pub fn topological_order(&self) -> &[usize] {
        &self.order
    }

    /// Number of hidden nodes of each GNN layer (index 0 counts inputs).
    pub fn layer_sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = Vec::new();
        for node in &self.nodes {
            let t = match node.tag {
                NodeTag::Input { .. } => 0,
                NodeTag::Hidden { layer, .. } => layer,
                NodeTag::Output { .. } => continue,
            };
            if sizes.len() <= t {
                sizes.resize(t + 1, 0);
            }
            sizes[t] += 1;
        }
        sizes
    }
}

/// Evaluates the DAG; `inputs[i]` feeds `dag.inputs[i]`. Returns the output
/// values in the order of `dag.outputs`.
pub fn fnn_eval(dag: &FnnDag, inputs: &[Dyadic]) -> Result<Vec<Dyadic>> {
    if inputs.len() != dag.inputs.len() {
        return Err(Error::WidthMismatch(format!("{} input values for {} input nodes", inputs.len(), dag.inputs.len())));
    }
    let mut value = vec![Dyadic::zero(); dag.nodes.len()];
    for (&i, x) in dag.inputs.iter().zip(inputs) {
        value[i] = x.clone();
    }
    for &v in &dag.order {
        let node = &dag.nodes[v];
        let Some(a) = node.activation else { continue };
        let mut z = node.bias.clone();
        for (u, w) in &node.incoming {
            if !w.is_zero() {
                z += &(&value[*u] * w);
            }
        }
        value[v] = dag.activations[a].eval(&z);
    }
    Ok(dag.outputs.iter().map(|&o| value[o].clone()).collect())
}

/// Input values for a DAG built by [`unroll`], [`unroll_multi`] or
/// [`collapse_fnn`], read from the vertices named in the input tags.
pub fn dag_inputs(dag: &FnnDag, spec: &GnnSpec, graphs: &[Graph]) -> Result<Vec<Dyadic>> {
    let mut cache: HashMap<(usize, usize), Vec<Dyadic>> = HashMap::new();
    dag.inputs
        .iter()
        .map(|&i| match dag.nodes[i].tag {
            NodeTag::Input { graph, vertex, j } => {
                let g = graphs
                    .get(graph)
                    .ok_or_else(|| Error::InvalidArgument(format!("input refers to missing graph {graph}")))?;
                let row = match cache.entry((graph, vertex)) {
                    Entry::Occupied(e) => e.into_mut(),
                    Entry::Vacant(e) => e.insert(spec.input.row(g.label(vertex), g.features().map(|f| f.row(vertex)))?),
                };
                Ok(row[j].clone())
            }
            _ => Err(Error::InvalidArgument(format!("node {i} is not an input"))),
        })
        .collect()
}

/// Closed-form edge count
/// `d|V| + d^2((L-1)(|E|+|V|) + (|E|+|V|))`. It counts each undirected edge
/// once, while the constructed DAG has one edge block per ordered neighbor
/// pair, so it is reported next to [`FnnDag::edge_count`] only.
pub fn formula_edge_count(d: usize, l: usize, vertices: usize, edges: usize) -> usize {
    d * vertices + d * d * (l.saturating_sub(1) * (edges + vertices) + (edges + vertices))
}

/// Unrolls `spec` on a single graph.
pub fn unroll(spec: &GnnSpec, g: &Graph) -> Result<FnnDag> {
    unroll_multi(spec, std::slice::from_ref(g))
}

/// Unrolls `spec` on the disjoint union of `graphs`, with one output node
/// per graph.
pub fn unroll_multi(spec: &GnnSpec, graphs: &[Graph]) -> Result<FnnDag> {
    if graphs.is_empty() {
        return Err(Error::InvalidArgument("unroll needs at least one graph".into()));
    }
    let widths = spec.validate()?;
    if !spec.is_slp() {
        return Err(Error::MlpNotSupported);
    }
    let w2: Vec<_> = spec.layers.iter().map(|l| l.w2.effective()).collect::<Result<_>>()?;
    let mut activations: Vec<PiecewisePoly> = Vec::new();
    let mut act_index = |a: &PiecewisePoly| match activations.iter().position(|x| x == a) {
        Some(i) => i,
        None => {
            activations.push(a.clone());
            activations.len() - 1
        }
    };
    let layer_acts: Vec<usize> = spec.layers.iter().map(|l| act_index(&l.activation)).collect();
    let out_act = act_index(&spec.readout.activation);

    let mut nodes = Vec::new();
    let mut inputs = Vec::new();
    let mut outputs = Vec::new();
    for (gi, g) in graphs.iter().enumerate() {
        let n = g.order();
        // ids[t][v * width + j]
        let mut ids: Vec<Vec<usize>> = Vec::with_capacity(widths.len());
        let mut first = Vec::with_capacity(n * widths[0]);
        for v in 0..n {
            for j in 0..widths[0] {
                inputs.push(nodes.len());
                first.push(nodes.len());
                nodes.push(FnnNode {
                    tag: NodeTag::Input { graph: gi, vertex: v, j },
                    bias: Dyadic::zero(),
                    activation: None,
                    incoming: Vec::new(),
                });
            }
        }
        ids.push(first);
        for (t, layer) in spec.layers.iter().enumerate() {
            let (din, dout) = (widths[t], widths[t + 1]);
            let prev = &ids[t];
            let mut cur = Vec::with_capacity(n * dout);
            for v in 0..n {
                for j in 0..dout {
                    let mut incoming = Vec::with_capacity((g.degree(v) + 1) * din);
                    for i in 0..din {
                        incoming.push((prev[v * din + i], layer.w1.get(i, j).clone()));
                    }
                    for &u in g.neighbors(v) {
                        for i in 0..din {
                            incoming.push((prev[u as usize * din + i], w2[t].get(i, j).clone()));
                        }
                    }
                    cur.push(nodes.len());
                    nodes.push(FnnNode {
                        tag: NodeTag::Hidden { graph: gi, layer: t + 1, vertex: v, j },
                        bias: layer.bias[j].clone(),
                        activation: Some(layer_acts[t]),
                        incoming,
                    });
                }
            }
            ids.push(cur);
        }
        let dl = *widths.last().unwrap();
        let last = ids.last().unwrap();
        let incoming = (0..n)
            .flat_map(|v| (0..dl).map(move |j| (v, j)))
            .map(|(v, j)| (last[v * dl + j], spec.readout.weight.get(j, 0).clone()))
            .collect();
        outputs.push(nodes.len());
        nodes.push(FnnNode {
            tag: NodeTag::Output { graph: gi },
            bias: spec.readout.bias[0].clone(),
            activation: Some(out_act),
            incoming,
        });
    }
    FnnDag::new(nodes, activations, inputs, outputs)
}

/// Merges the nodes of 1-WL-equivalent vertices layer by layer. Incoming
/// weights of a merged node are the representative's weights accumulated per
/// source class, so `u` neighbors in one class contribute `u` times the tied
/// weight. Every member of a class must produce the same accumulated weights;
/// otherwise the coloring is rejected.
pub fn collapse_fnn(dag: &FnnDag, graphs: &[Graph], colorings: &[Coloring]) -> Result<FnnDag> {
    if graphs.len() != colorings.len() {
        return Err(Error::InconsistentColoring(format!("{} graphs but {} colorings", graphs.len(), colorings.len())));
    }
    for (i, (g, c)) in graphs.iter().zip(colorings).enumerate() {
        if c.len() != g.order() {
            return Err(Error::ColoringMismatch(format!("coloring {i} covers {} of {} vertices", c.len(), g.order())));
        }
        if !wl::is_stable(g, c) || !wl::refines_initial(g, c) {
            return Err(Error::InconsistentColoring(format!("coloring {i} is not a stable refinement of the labels")));
        }
    }
    let class_of = |node: &FnnNode| -> Result<(NodeTag, u32)> {
        let key = |graph: usize, vertex: usize| -> Result<u32> {
            colorings
                .get(graph)
                .and_then(|c| c.colors.get(vertex).copied())
                .ok_or_else(|| Error::InconsistentColoring(format!("no color for vertex {vertex} of graph {graph}")))
        };
        Ok(match node.tag {
            NodeTag::Input { graph, vertex, j } => (NodeTag::Input { graph, vertex: 0, j }, key(graph, vertex)?),
            NodeTag::Hidden { graph, layer, vertex, j } => {
                (NodeTag::Hidden { graph, layer, vertex: 0, j }, key(graph, vertex)?)
            }
            t @ NodeTag::Output { .. } => (t, 0),
        })
    };

    // Group nodes into merged nodes; the first member (in node order) is the
    // representative.
    let mut group: HashMap<(NodeTag, u32), usize> = HashMap::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut group_of = vec![0usize; dag.nodes.len()];
    for (v, node) in dag.nodes.iter().enumerate() {
        let key = class_of(node)?;
        let id = *group.entry(key).or_insert_with(|| {
            members.push(Vec::new());
            members.len() - 1
        });
        members[id].push(v);
        group_of[v] = id;
    }

    let accumulate = |v: usize| -> BTreeMap<usize, Dyadic> {
        let mut acc: BTreeMap<usize, Dyadic> = BTreeMap::new();
        for (u, w) in &dag.nodes[v].incoming {
            *acc.entry(group_of[*u]).or_default() += w;
        }
        acc
    };

    let mut nodes = Vec::with_capacity(members.len());
    for m in &members {
        let rep = m[0];
        let acc = accumulate(rep);
        for &other in &m[1..] {
            let node = &dag.nodes[other];
            if node.bias != dag.nodes[rep].bias || node.activation != dag.nodes[rep].activation || accumulate(other) != acc
            {
                return Err(Error::InconsistentColoring(format!(
                    "nodes {rep} and {other} share a class but not their incoming weights"
                )));
            }
        }
        nodes.push(FnnNode { tag: dag.nodes[rep].tag, incoming: acc.into_iter().collect(), ..dag.nodes[rep].clone() });
    }
    let remap = |list: &[usize]| -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for &v in list {
            let g = group_of[v];
            if !out.contains(&g) {
                out.push(g);
            }
        }
        out
    };
    let inputs = remap(&dag.inputs);
    let outputs: Vec<usize> = dag.outputs.iter().map(|&o| group_of[o]).collect();
    FnnDag::new(nodes, dag.activations.clone(), inputs, outputs)
}

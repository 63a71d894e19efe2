//! Immutable finite graphs with optional vertex labels, boolean feature rows
//! and edge labels.
//!
//! Adjacency is stored in compressed sparse row form with sorted neighbor
//! lists. Directed graphs keep their arc orientation for reporting, but every
//! algorithm in this crate reads the undirected neighborhood `N(v)`.

use crate::error::{Error, Result};

pub type VertexId = u32;

/// Row-major boolean feature matrix with a uniform row width.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Features {
    width: usize,
    bits: Vec<bool>,
}

impl Features {
    pub fn new(width: usize, rows: Vec<Vec<bool>>) -> Result<Self> {
        let mut bits = Vec::with_capacity(width * rows.len());
        for (i, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(Error::FeatureWidth(format!(
                    "row {i} has width {} but expected {width}",
                    row.len()
                )));
            }
            bits.extend_from_slice(row);
        }
        Ok(Self { width, bits })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> usize {
        self.bits.len().checked_div(self.width).unwrap_or(0)
    }

    pub fn row(&self, v: usize) -> &[bool] {
        &self.bits[v * self.width..(v + 1) * self.width]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    offsets: Vec<usize>,
    adjacency: Vec<VertexId>,
    /// Edge label per adjacency slot, parallel to `adjacency`.
    adjacency_labels: Option<Vec<u32>>,
    vertex_labels: Option<Vec<u32>>,
    features: Option<Features>,
    /// Original arc orientation; present only for directed graphs.
    arcs: Option<Vec<(VertexId, VertexId)>>,
}

/// Builder for graphs carrying more than plain labels.
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    n: usize,
    edges: Vec<(usize, usize)>,
    edge_labels: Option<Vec<u32>>,
    vertex_labels: Option<Vec<u32>>,
    features: Option<Features>,
    directed: bool,
}

impl GraphBuilder {
    pub fn edges(mut self, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        self.edges = edges.into_iter().collect();
        self
    }

    pub fn edge_labels(mut self, labels: Vec<u32>) -> Self {
        self.edge_labels = Some(labels);
        self
    }

    pub fn vertex_labels(mut self, labels: Vec<u32>) -> Self {
        self.vertex_labels = Some(labels);
        self
    }

    pub fn features(mut self, features: Features) -> Self {
        self.features = Some(features);
        self
    }

    pub fn directed(mut self, directed: bool) -> Self {
        self.directed = directed;
        self
    }

    pub fn build(self) -> Result<Graph> {
        let n = self.n;
        if n > VertexId::MAX as usize {
            return Err(Error::InvalidArgument(format!("graph order {n} exceeds u32 range")));
        }
        if let Some(l) = &self.vertex_labels {
            if l.len() != n {
                return Err(Error::InvalidArgument(format!(
                    "{} vertex labels for {n} vertices",
                    l.len()
                )));
            }
        }
        if let Some(f) = &self.features {
            if f.rows() != n && !(f.width() == 0 && n > 0) {
                return Err(Error::FeatureWidth(format!("{} feature rows for {n} vertices", f.rows())));
            }
        }
        if let Some(l) = &self.edge_labels {
            if l.len() != self.edges.len() {
                return Err(Error::InvalidArgument(format!(
                    "{} edge labels for {} edges",
                    l.len(),
                    self.edges.len()
                )));
            }
        }

        let mut degree = vec![0usize; n];
        for &(u, v) in &self.edges {
            if u >= n || v >= n {
                return Err(Error::EndpointOutOfRange { u, v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets.clone();
        let total = *offsets.last().unwrap();
        let mut slots: Vec<(VertexId, u32)> = vec![(0, 0); total];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            let label = self.edge_labels.as_ref().map_or(0, |l| l[i]);
            slots[fill[u]] = (v as VertexId, label);
            fill[u] += 1;
            slots[fill[v]] = (u as VertexId, label);
            fill[v] += 1;
        }
        for v in 0..n {
            let row = &mut slots[offsets[v]..offsets[v + 1]];
            row.sort_unstable();
            if let Some(w) = row.windows(2).find(|w| w[0].0 == w[1].0) {
                let (a, b) = (v.min(w[0].0 as usize), v.max(w[0].0 as usize));
                return Err(Error::DuplicateEdge(a, b));
            }
        }
        let adjacency = slots.iter().map(|s| s.0).collect();
        let adjacency_labels = self.edge_labels.as_ref().map(|_| slots.iter().map(|s| s.1).collect());
        let arcs = self.directed.then(|| {
            let mut arcs: Vec<_> =
                self.edges.iter().map(|&(u, v)| (u as VertexId, v as VertexId)).collect();
            arcs.sort_unstable();
            arcs
        });
        Ok(Graph {
            n,
            offsets,
            adjacency,
            adjacency_labels,
            vertex_labels: self.vertex_labels,
            features: self.features,
            arcs,
        })
    }
}

impl Graph {
    /// Undirected graph on `0..n` with the given edges and optional labels.
    pub fn new(n: usize, edges: &[(usize, usize)], labels: Option<Vec<u32>>) -> Result<Self> {
        let mut b = Self::builder(n).edges(edges.iter().copied());
        if let Some(l) = labels {
            b = b.vertex_labels(l);
        }
        b.build()
    }

    pub fn builder(n: usize) -> GraphBuilder {
        GraphBuilder { n, ..Default::default() }
    }

    pub fn empty(n: usize) -> Self {
        Self::new(n, &[], None).expect("edgeless graph is valid")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &edges, None).expect("path is valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least three vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::new(n, &edges, None).expect("cycle is valid")
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::new(n, &edges, None).expect("complete graph is valid")
    }

    /// `K_{1,leaves}` with the center at vertex 0.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Self::new(leaves + 1, &edges, None).expect("star is valid")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.len() / 2
    }

    pub fn is_directed(&self) -> bool {
        self.arcs.is_some()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn neighbors(&self, v: usize) -> &[VertexId] {
        &self.adjacency[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Edge labels parallel to [`Graph::neighbors`].
    pub fn neighbor_edge_labels(&self, v: usize) -> Option<&[u32]> {
        self.adjacency_labels.as_ref().map(|l| &l[self.offsets[v]..self.offsets[v + 1]])
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&(v as VertexId)).is_ok()
    }

    pub fn vertex_labels(&self) -> Option<&[u32]> {
        self.vertex_labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<u32> {
        self.vertex_labels.as_ref().map(|l| l[v])
    }

    pub fn features(&self) -> Option<&Features> {
        self.features.as_ref()
    }

    pub fn has_edge_labels(&self) -> bool {
        self.adjacency_labels.is_some()
    }

    /// Arc list of a directed graph, in sorted order.
    pub fn arcs(&self) -> Option<&[(VertexId, VertexId)]> {
        self.arcs.as_deref()
    }

    /// Undirected edges `(u, v, label)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Option<u32>)> + '_ {
        (0..self.n).flat_map(move |u| {
            let labels = self.neighbor_edge_labels(u);
            self.neighbors(u)
                .iter()
                .enumerate()
                .filter(move |(_, &v)| (v as usize) > u)
                .map(move |(i, &v)| (u, v as usize, labels.map(|l| l[i])))
        })
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Relabels vertex `v` as `perm[v]`, carrying labels, features and edge
    /// labels along.
    pub fn permute(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.n;
        if perm.len() != n {
            return Err(Error::InvalidPermutation(n));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidPermutation(n));
            }
        }
        let mut inverse = vec![0; n];
        for (v, &p) in perm.iter().enumerate() {
            inverse[p] = v;
        }
        let (edges, labels) = self.oriented_edges();
        let mut b = Graph::builder(n)
            .edges(edges.into_iter().map(|(u, v)| (perm[u], perm[v])))
            .directed(self.is_directed());
        if let Some(l) = labels {
            b = b.edge_labels(l);
        }
        if let Some(l) = &self.vertex_labels {
            b = b.vertex_labels(inverse.iter().map(|&v| l[v]).collect());
        }
        if let Some(f) = &self.features {
            let rows = inverse.iter().map(|&v| f.row(v).to_vec()).collect();
            b = b.features(Features::new(f.width(), rows)?);
        }
        b.build()
    }

    /// Edge list in construction orientation (arcs for directed graphs).
    fn oriented_edges(&self) -> (Vec<(usize, usize)>, Option<Vec<u32>>) {
        match &self.arcs {
            Some(arcs) => {
                let labels = self.adjacency_labels.as_ref().map(|_| {
                    arcs.iter()
                        .map(|&(u, v)| {
                            let i = self.neighbors(u as usize).binary_search(&v).unwrap();
                            self.neighbor_edge_labels(u as usize).unwrap()[i]
                        })
                        .collect()
                });
                (arcs.iter().map(|&(u, v)| (u as usize, v as usize)).collect(), labels)
            }
            None => {
                let mut edges = Vec::with_capacity(self.edge_count());
                let mut labels = self.adjacency_labels.as_ref().map(|_| Vec::new());
                for (u, v, l) in self.edges() {
                    edges.push((u, v));
                    if let (Some(ls), Some(l)) = (labels.as_mut(), l) {
                        ls.push(l);
                    }
                }
                (edges, labels)
            }
        }
    }
}

/// Disjoint union; `offsets[i]` is the index of graph `i`'s vertex 0.
pub fn disjoint_union(graphs: &[Graph]) -> Result<(Graph, Vec<usize>)> {
    let Some(first) = graphs.first() else {
        return Ok((Graph::empty(0), Vec::new()));
    };
    let labeled = first.vertex_labels.is_some();
    let featured = first.features.as_ref().map(|f| f.width());
    let edge_labeled = first.has_edge_labels();
    let directed = first.is_directed();
    for g in graphs {
        if g.vertex_labels.is_some() != labeled || g.has_edge_labels() != edge_labeled {
            return Err(Error::MixedLabeling);
        }
        if g.features.as_ref().map(|f| f.width()) != featured {
            return Err(Error::FeatureWidth("components carry different feature widths".into()));
        }
        if g.is_directed() != directed {
            return Err(Error::MixedLabeling);
        }
    }
    let mut offsets = Vec::with_capacity(graphs.len());
    let mut n = 0;
    let mut edges = Vec::new();
    let mut edge_labels = Vec::new();
    let mut vertex_labels = Vec::new();
    let mut rows = Vec::new();
    for g in graphs {
        offsets.push(n);
        let (es, ls) = g.oriented_edges();
        edges.extend(es.into_iter().map(|(u, v)| (u + n, v + n)));
        if let Some(ls) = ls {
            edge_labels.extend(ls);
        }
        if let Some(l) = &g.vertex_labels {
            vertex_labels.extend_from_slice(l);
        }
        if let Some(f) = &g.features {
            rows.extend((0..g.n).map(|v| f.row(v).to_vec()));
        }
        n += g.n;
    }
    let mut b = Graph::builder(n).edges(edges).directed(directed);
    if edge_labeled {
        b = b.edge_labels(edge_labels);
    }
    if labeled {
        b = b.vertex_labels(vertex_labels);
    }
    if let Some(w) = featured {
        b = b.features(Features::new(w, rows)?);
    }
    Ok((b.build()?, offsets))
}

//! 1-WL color refinement with a dictionary shared across a set of graphs.
//!
//! Iteration 0 colors vertices by their label (and boolean feature row, when
//! present). Iteration `t` maps the pair (own color, sorted multiset of
//! neighbor colors) through an injective dictionary to a fresh color. Since
//! the key contains the previous color, colors injectively encode their whole
//! history, so two graphs with equal iteration-`t` histograms also have equal
//! histograms at every earlier iteration.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub type Color = u32;

/// How many refinement rounds to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Iterations {
    /// Exactly this many rounds (fewer if the partition stabilizes first;
    /// later iterations then repeat the stable coloring).
    Fixed(usize),
    UntilStable,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct InitialKey {
    label: Option<u32>,
    features: Option<Vec<bool>>,
}

/// Injective relabeling table, shared by every graph of one run.
#[derive(Clone, Debug, Default)]
pub struct ColorDictionary {
    initial: HashMap<InitialKey, Color>,
    refined: HashMap<(Color, Vec<u64>), Color>,
    next: Color,
    use_edge_labels: bool,
}

impl ColorDictionary {
    pub fn new(use_edge_labels: bool) -> Self {
        Self { use_edge_labels, ..Default::default() }
    }

    pub fn len(&self) -> usize {
        self.next as usize
    }

    pub fn is_empty(&self) -> bool {
        self.next == 0
    }

    pub fn uses_edge_labels(&self) -> bool {
        self.use_edge_labels
    }

    fn fresh(&mut self) -> Color {
        let c = self.next;
        self.next = self.next.checked_add(1).expect("color space exhausted");
        c
    }

    fn initial_color(&mut self, key: InitialKey) -> Color {
        if let Some(&c) = self.initial.get(&key) {
            return c;
        }
        let c = self.fresh();
        self.initial.insert(key, c);
        c
    }

    fn refined_color(&mut self, key: (Color, Vec<u64>)) -> Color {
        if let Some(&c) = self.refined.get(&key) {
            return c;
        }
        let c = self.fresh();
        self.refined.insert(key, c);
        c
    }

    /// Iteration-0 coloring of `g` under this dictionary.
    pub fn initial_coloring(&mut self, g: &Graph) -> Coloring {
        let colors = (0..g.order()).map(|v| self.initial_color(initial_key(g, v))).collect();
        Coloring { colors, iteration: 0 }
    }

    /// One refinement round over several graphs. Signatures are built in
    /// parallel; colors are then assigned sequentially in graph order and
    /// vertex order so ids do not depend on scheduling.
    pub fn refine_round(&mut self, graphs: &[Graph], current: &[Coloring]) -> Vec<Coloring> {
        let use_edge_labels = self.use_edge_labels;
        let signatures: Vec<Vec<(Color, Vec<u64>)>> = graphs
            .par_iter()
            .zip(current.par_iter())
            .map(|(g, c)| {
                (0..g.order())
                    .into_par_iter()
                    .map(|v| signature(g, &c.colors, v, use_edge_labels))
                    .collect()
            })
            .collect();
        signatures
            .into_iter()
            .zip(current)
            .map(|(sigs, c)| Coloring {
                colors: sigs.into_iter().map(|s| self.refined_color(s)).collect(),
                iteration: c.iteration + 1,
            })
            .collect()
    }
}

fn initial_key(g: &Graph, v: usize) -> InitialKey {
    InitialKey { label: g.label(v), features: g.features().map(|f| f.row(v).to_vec()) }
}

fn signature(g: &Graph, colors: &[Color], v: usize, use_edge_labels: bool) -> (Color, Vec<u64>) {
    let labels = if use_edge_labels { g.neighbor_edge_labels(v) } else { None };
    let mut multiset: Vec<u64> = g
        .neighbors(v)
        .iter()
        .enumerate()
        .map(|(i, &w)| {
            let l = labels.map_or(0, |l| l[i] as u64);
            (l << 32) | colors[w as usize] as u64
        })
        .collect();
    multiset.sort_unstable();
    (colors[v], multiset)
}

/// Per-vertex colors of one graph at one iteration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub colors: Vec<Color>,
    pub iteration: usize,
}

impl Coloring {
    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn class_count(&self) -> usize {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    /// Partition equality, ignoring the actual color ids.
    pub fn same_partition(&self, other: &Coloring) -> bool {
        if self.colors.len() != other.colors.len() {
            return false;
        }
        let mut fwd = HashMap::new();
        let mut bwd = HashMap::new();
        self.colors.iter().zip(&other.colors).all(|(&a, &b)| {
            *fwd.entry(a).or_insert(b) == b && *bwd.entry(b).or_insert(a) == a
        })
    }

    /// True if equal colors here imply equal colors in `coarser`.
    pub fn refines(&self, coarser: &Coloring) -> bool {
        let mut map = HashMap::new();
        self.colors.len() == coarser.colors.len()
            && self.colors.iter().zip(&coarser.colors).all(|(&a, &b)| *map.entry(a).or_insert(b) == b)
    }
}

/// Canonical color histogram: sorted `(color, count)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Histogram {
    pub entries: Vec<(Color, usize)>,
    pub iteration: usize,
}

impl Histogram {
    pub fn total(&self) -> usize {
        self.entries.iter().map(|e| e.1).sum()
    }

    pub fn count(&self, color: Color) -> usize {
        self.entries
            .binary_search_by_key(&color, |e| e.0)
            .map_or(0, |i| self.entries[i].1)
    }
}

/// Histogram of `coloring` on `g`.
pub fn histogram(coloring: &Coloring, g: &Graph) -> Result<Histogram> {
    if coloring.len() != g.order() {
        return Err(Error::ColoringMismatch(format!(
            "coloring covers {} vertices, graph has {}",
            coloring.len(),
            g.order()
        )));
    }
    Ok(histogram_of(coloring))
}

fn histogram_of(coloring: &Coloring) -> Histogram {
    let mut colors = coloring.colors.clone();
    colors.sort_unstable();
    let mut entries: Vec<(Color, usize)> = Vec::new();
    for c in colors {
        match entries.last_mut() {
            Some((last, n)) if *last == c => *n += 1,
            _ => entries.push((c, 1)),
        }
    }
    Histogram { entries, iteration: coloring.iteration }
}

/// Result of a shared-dictionary refinement over a list of graphs.
#[derive(Clone, Debug)]
pub struct WlRun {
    pub dictionary: ColorDictionary,
    /// `rounds[t][i]` is the coloring of graph `i` after `t` rounds.
    rounds: Vec<Vec<Coloring>>,
    /// First iteration `t` whose partition equals that of `t + 1` on the
    /// disjoint union of all graphs, if reached.
    pub stable_at: Option<usize>,
}

impl WlRun {
    /// Number of computed iterations (including iteration 0).
    pub fn computed(&self) -> usize {
        self.rounds.len()
    }

    pub fn graph_count(&self) -> usize {
        self.rounds.first().map_or(0, |r| r.len())
    }

    fn clamp(&self, t: usize) -> usize {
        t.min(self.rounds.len() - 1)
    }

    /// Coloring of graph `i` at iteration `t`; past stabilization this is
    /// the stable coloring.
    pub fn coloring(&self, t: usize, i: usize) -> &Coloring {
        &self.rounds[self.clamp(t)][i]
    }

    pub fn colorings(&self, t: usize) -> &[Coloring] {
        &self.rounds[self.clamp(t)]
    }

    pub fn histograms(&self, t: usize) -> Vec<Histogram> {
        self.colorings(t).iter().map(histogram_of).collect()
    }

    /// Per-graph histogram ids at iteration `t`, numbered by first
    /// occurrence, and the number of distinct histograms.
    pub fn histogram_ids(&self, t: usize) -> (Vec<usize>, usize) {
        let mut ids = HashMap::new();
        let per_graph = self
            .histograms(t)
            .into_iter()
            .map(|h| {
                let next = ids.len();
                *ids.entry(h.entries).or_insert(next)
            })
            .collect();
        (per_graph, ids.len())
    }

    pub fn distinct_histograms(&self, t: usize) -> usize {
        self.histogram_ids(t).1
    }
}

/// Runs 1-WL on all `graphs` in parallel under one dictionary.
pub fn wl1_refine(graphs: &[Graph], iterations: Iterations, use_edge_labels: bool) -> WlRun {
    let mut dictionary = ColorDictionary::new(use_edge_labels);
    let initial: Vec<Coloring> = graphs.iter().map(|g| dictionary.initial_coloring(g)).collect();
    let mut colors_in_round = dictionary.len();
    let mut rounds = vec![initial];
    let mut stable_at = None;
    let limit = match iterations {
        Iterations::Fixed(l) => l,
        Iterations::UntilStable => usize::MAX,
    };
    while rounds.len() - 1 < limit {
        let before = dictionary.len();
        let next = dictionary.refine_round(graphs, rounds.last().unwrap());
        let fresh = dictionary.len() - before;
        // every key of a round is new, so `fresh` counts that round's classes
        if fresh == colors_in_round {
            stable_at = Some(rounds.len() - 1);
            break;
        }
        colors_in_round = fresh;
        rounds.push(next);
    }
    WlRun { dictionary, rounds, stable_at }
}

/// Stable coloring of one graph and the number of refinement rounds run to
/// confirm it (at most `|V(g)|`, and at least 1).
pub fn stable_coloring(g: &Graph) -> (Coloring, usize) {
    let run = wl1_refine(std::slice::from_ref(g), Iterations::UntilStable, false);
    let t = run.stable_at.expect("refinement always stabilizes");
    (run.coloring(t, 0).clone(), t + 1)
}

/// Number of distinct iteration-`l` histograms over a shared-dictionary run.
pub fn count_distinguishable(graphs: &[Graph], l: usize) -> usize {
    wl1_refine(graphs, Iterations::Fixed(l), false).distinct_histograms(l)
}

/// Number of colors of `g` after `|V(g)|` rounds.
pub fn color_complexity(g: &Graph) -> usize {
    stable_coloring(g).0.class_count()
}

/// Checks that `coloring` is stable on `g`: all members of a color class
/// see the same multiset of neighbor colors.
pub fn is_stable(g: &Graph, coloring: &Coloring) -> bool {
    if coloring.len() != g.order() {
        return false;
    }
    let mut seen: HashMap<Color, Vec<u64>> = HashMap::new();
    (0..g.order()).all(|v| {
        let (c, sig) = signature(g, &coloring.colors, v, false);
        match seen.get(&c) {
            Some(s) => *s == sig,
            None => {
                seen.insert(c, sig);
                true
            }
        }
    })
}

/// Checks that `coloring` refines the label/feature partition of `g`.
pub fn refines_initial(g: &Graph, coloring: &Coloring) -> bool {
    let mut d = ColorDictionary::new(false);
    coloring.len() == g.order() && coloring.refines(&d.initial_coloring(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::disjoint_union;

    fn two_triangles() -> Graph {
        disjoint_union(&[Graph::complete(3), Graph::complete(3)]).unwrap().0
    }

    #[test]
    fn path_splits_endpoints_from_middle() {
        let run = wl1_refine(&[Graph::path(3)], Iterations::Fixed(1), false);
        let c = run.coloring(1, 0);
        assert_eq!(c.class_count(), 2);
        assert_eq!(c.colors[0], c.colors[2]);
        assert_ne!(c.colors[0], c.colors[1]);
    }

    #[test]
    fn cycle_and_two_triangles_agree_at_every_iteration() {
        let run = wl1_refine(&[Graph::cycle(6), two_triangles()], Iterations::UntilStable, false);
        for t in 0..=run.computed() + 1 {
            let h = run.histograms(t);
            assert_eq!(h[0], h[1]);
        }
    }

    #[test]
    fn single_vertex_is_stable_immediately() {
        let run = wl1_refine(&[Graph::empty(1)], Iterations::UntilStable, false);
        assert_eq!(run.stable_at, Some(0));
        assert_eq!(run.coloring(0, 0).class_count(), 1);
    }

    #[test]
    fn stable_colorings_of_small_graphs() {
        let (c, used) = stable_coloring(&Graph::complete(3));
        assert_eq!((c.class_count(), used), (1, 1));
        assert_eq!(stable_coloring(&Graph::star(3)).0.class_count(), 2);
        let (c, used) = stable_coloring(&Graph::path(4));
        assert_eq!(c.class_count(), 2);
        assert!(used <= 4);
    }

    #[test]
    fn shared_dictionary_histograms() {
        let graphs = [Graph::complete(3), Graph::path(3)];
        let run = wl1_refine(&graphs, Iterations::Fixed(1), false);
        let h = run.histograms(1);
        assert_eq!(h[0].entries.len(), 1);
        assert_eq!(h[0].entries[0].1, 3);
        // the path's middle vertex shares the triangle's color
        let shared = h[0].entries[0].0;
        assert_eq!(h[1].count(shared), 1);
        assert_eq!(h[1].entries.len(), 2);
        assert!(h[1].entries.iter().any(|&(c, n)| c != shared && n == 2));
    }

    #[test]
    fn histogram_rejects_mismatched_coloring() {
        let c = Coloring { colors: vec![0, 0], iteration: 0 };
        assert!(matches!(histogram(&c, &Graph::path(3)), Err(Error::ColoringMismatch(_))));
    }

    #[test]
    fn union_doubles_counts() {
        let g = Graph::path(4);
        let (gg, _) = disjoint_union(&[g.clone(), g.clone()]).unwrap();
        let run = wl1_refine(&[g, gg], Iterations::Fixed(2), false);
        let h = run.histograms(2);
        let doubled: Vec<_> = h[0].entries.iter().map(|&(c, n)| (c, 2 * n)).collect();
        assert_eq!(h[1].entries, doubled);
    }

    #[test]
    fn distinguishable_counts_small_set() {
        let graphs = [Graph::complete(3), Graph::path(3), Graph::cycle(6)];
        assert_eq!(count_distinguishable(&graphs, 0), 2);
        assert_eq!(count_distinguishable(&graphs, 1), 3);
    }

    #[test]
    fn per_graph_stability_is_not_enough_across_graphs() {
        // C4 and 2xK2 each keep one class, yet iteration 1 separates them
        let graphs = [Graph::cycle(4), disjoint_union(&[Graph::complete(2), Graph::complete(2)]).unwrap().0];
        assert_eq!(count_distinguishable(&graphs, 0), 1);
        assert_eq!(count_distinguishable(&graphs, 1), 2);
    }

    #[test]
    fn edge_labels_are_opt_in() {
        let a = Graph::builder(3).edges([(0, 1), (1, 2)]).edge_labels(vec![1, 1]).build().unwrap();
        let b = Graph::builder(3).edges([(0, 1), (1, 2)]).edge_labels(vec![1, 2]).build().unwrap();
        let graphs = [a, b];
        let plain = wl1_refine(&graphs, Iterations::Fixed(1), false);
        assert_eq!(plain.distinct_histograms(1), 1);
        let labeled = wl1_refine(&graphs, Iterations::Fixed(1), true);
        assert_eq!(labeled.distinct_histograms(1), 2);
    }

    #[test]
    fn color_complexity_examples() {
        assert_eq!(color_complexity(&Graph::cycle(7)), 1);
        assert_eq!(color_complexity(&Graph::star(3)), 2);
        assert_eq!(color_complexity(&Graph::path(4)), 2);
        assert_eq!(color_complexity(&Graph::path(5)), 3);
    }

    #[test]
    fn stability_checks() {
        let g = Graph::path(4);
        let (stable, _) = stable_coloring(&g);
        assert!(is_stable(&g, &stable));
        let flat = Coloring { colors: vec![0; 4], iteration: 0 };
        assert!(!is_stable(&g, &flat));
        assert!(refines_initial(&g, &stable));
    }
}

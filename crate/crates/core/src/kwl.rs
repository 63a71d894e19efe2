//! Oblivious k-WL over `V(G)^k`.
//!
//! Tuples start with their atomic type (equality pattern, adjacency pattern
//! and vertex labels). Each round replaces a tuple's color by the pair of its
//! old color and the k multisets of colors of its j-neighbors, where the
//! j-neighbors of `(v_1, ..., v_k)` are all tuples obtained by replacing
//! `v_j` with an arbitrary vertex.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::wl::{Color, Histogram, Iterations};

/// Default cap on materialized tuples per graph.
pub const DEFAULT_TUPLE_LIMIT: usize = 1 << 22;

/// Colors of all k-tuples of one graph; tuple `(v_1, ..., v_k)` sits at
/// index `v_1 * n^(k-1) + ... + v_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleColoring {
    pub k: usize,
    pub n: usize,
    pub colors: Vec<Color>,
    pub iteration: usize,
}

impl TupleColoring {
    pub fn color_of(&self, tuple: &[usize]) -> Color {
        self.colors[tuple.iter().fold(0, |acc, &v| acc * self.n + v)]
    }

    /// Color of `(v, ..., v)`.
    pub fn vertex_color(&self, v: usize) -> Color {
        self.color_of(&vec![v; self.k])
    }

    pub fn histogram(&self) -> Histogram {
        let mut counts: HashMap<Color, usize> = HashMap::new();
        for &c in &self.colors {
            *counts.entry(c).or_default() += 1;
        }
        let mut entries: Vec<_> = counts.into_iter().collect();
        entries.sort_unstable();
        Histogram { entries, iteration: self.iteration }
    }

    pub fn class_count(&self) -> usize {
        self.histogram().entries.len()
    }
}

#[derive(Clone, Debug)]
pub struct KwlRun {
    pub k: usize,
    pub colorings: Vec<TupleColoring>,
    pub rounds: usize,
    pub stable: bool,
}

impl KwlRun {
    /// Whether the run tells graphs `i` and `j` apart.
    pub fn distinguishes(&self, i: usize, j: usize) -> bool {
        self.colorings[i].histogram().entries != self.colorings[j].histogram().entries
    }
}

fn decode(mut index: usize, n: usize, k: usize, out: &mut [usize]) {
    for slot in out.iter_mut().take(k).rev() {
        *slot = index % n;
        index /= n;
    }
}

fn atomic_type(g: &Graph, tuple: &[usize]) -> Vec<u32> {
    let k = tuple.len();
    let mut key = Vec::with_capacity(k + k * k);
    key.extend(tuple.iter().map(|&v| g.label(v).map_or(0, |l| l + 1)));
    for i in 0..k {
        for j in i + 1..k {
            let eq = tuple[i] == tuple[j];
            let adj = !eq && g.has_edge(tuple[i], tuple[j]);
            key.push(eq as u32 | (adj as u32) << 1);
        }
    }
    key
}

/// Runs oblivious k-WL on all `graphs` under one shared dictionary.
pub fn wlk_refine(graphs: &[Graph], k: usize, iterations: Iterations, tuple_limit: usize) -> Result<KwlRun> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("k-WL needs k >= 2, got {k}")));
    }
    for g in graphs {
        let n = g.order();
        let tuples = n.checked_pow(k as u32).filter(|&t| t <= tuple_limit);
        if tuples.is_none() {
            return Err(Error::TupleLimit { n, k, limit: tuple_limit });
        }
    }

    let mut atp: HashMap<Vec<u32>, Color> = HashMap::new();
    let mut next: Color = 0;
    let mut colorings: Vec<TupleColoring> = graphs
        .iter()
        .map(|g| {
            let n = g.order();
            let mut tuple = vec![0; k];
            let colors = (0..n.pow(k as u32))
                .map(|idx| {
                    decode(idx, n, k, &mut tuple);
                    let key = atomic_type(g, &tuple);
                    *atp.entry(key).or_insert_with(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect();
            TupleColoring { k, n, colors, iteration: 0 }
        })
        .collect();

    let limit = match iterations {
        Iterations::Fixed(l) => l,
        Iterations::UntilStable => usize::MAX,
    };
    let mut classes = next as usize;
    let mut dictionary: HashMap<Vec<Color>, Color> = HashMap::new();
    let mut rounds = 0;
    let mut stable = false;
    while rounds < limit {
        let signatures: Vec<Vec<Vec<Color>>> = colorings
            .par_iter()
            .map(|tc| {
                let n = tc.n;
                (0..tc.colors.len())
                    .into_par_iter()
                    .map(|idx| {
                        let mut tuple = vec![0; k];
                        decode(idx, n, k, &mut tuple);
                        let mut key = Vec::with_capacity(1 + k * n);
                        key.push(tc.colors[idx]);
                        for (j, &tj) in tuple.iter().enumerate() {
                            let stride = n.pow((k - 1 - j) as u32);
                            let base = idx - tj * stride;
                            let start = key.len();
                            key.extend((0..n).map(|w| tc.colors[base + w * stride]));
                            key[start..].sort_unstable();
                        }
                        key
                    })
                    .collect()
            })
            .collect();
        let before = next;
        let refined: Vec<TupleColoring> = signatures
            .into_iter()
            .zip(&colorings)
            .map(|(sigs, tc)| {
                let colors = sigs
                    .into_iter()
                    .map(|s| {
                        *dictionary.entry(s).or_insert_with(|| {
                            next += 1;
                            next - 1
                        })
                    })
                    .collect();
                TupleColoring { colors, iteration: tc.iteration + 1, ..*tc }
            })
            .collect();
        let fresh = (next - before) as usize;
        if fresh == classes {
            stable = true;
            break;
        }
        classes = fresh;
        colorings = refined;
        rounds += 1;
    }
    Ok(KwlRun { k, colorings, rounds, stable })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::disjoint_union;

    #[test]
    fn triangle_atomic_types() {
        let run = wlk_refine(&[Graph::complete(3)], 2, Iterations::Fixed(0), DEFAULT_TUPLE_LIMIT).unwrap();
        let h = run.colorings[0].histogram();
        let mut counts: Vec<_> = h.entries.iter().map(|e| e.1).collect();
        counts.sort();
        assert_eq!(counts, vec![3, 6]);
    }

    #[test]
    fn single_vertex_has_one_tuple() {
        let run = wlk_refine(&[Graph::empty(1)], 2, Iterations::UntilStable, DEFAULT_TUPLE_LIMIT).unwrap();
        assert_eq!(run.colorings[0].colors.len(), 1);
        assert_eq!(run.colorings[0].class_count(), 1);
    }

    #[test]
    fn tuple_limit_is_enforced() {
        let g = Graph::path(100);
        assert!(matches!(
            wlk_refine(&[g], 3, Iterations::Fixed(1), 1000),
            Err(Error::TupleLimit { n: 100, k: 3, limit: 1000 })
        ));
    }

    #[test]
    fn three_wl_sees_triangles() {
        let two_k3 = disjoint_union(&[Graph::complete(3), Graph::complete(3)]).unwrap().0;
        let run = wlk_refine(&[Graph::cycle(6), two_k3], 3, Iterations::UntilStable, DEFAULT_TUPLE_LIMIT).unwrap();
        assert!(run.distinguishes(0, 1));
    }

    #[test]
    fn two_wl_matches_one_wl_on_regular_pair() {
        // oblivious 2-WL has exactly the power of 1-WL; both 2-regular
        // graphs on six vertices keep identical tuple histograms
        let two_k3 = disjoint_union(&[Graph::complete(3), Graph::complete(3)]).unwrap().0;
        let run = wlk_refine(&[Graph::cycle(6), two_k3], 2, Iterations::UntilStable, DEFAULT_TUPLE_LIMIT).unwrap();
        assert!(run.stable);
        assert!(!run.distinguishes(0, 1));
    }

    #[test]
    fn two_wl_separates_paths_of_different_length() {
        let run = wlk_refine(&[Graph::path(4), Graph::star(3)], 2, Iterations::UntilStable, DEFAULT_TUPLE_LIMIT)
            .unwrap();
        assert!(run.distinguishes(0, 1));
    }
}

//! Synthetic graph families: the two-branch trees `T_{m,n}` and the scaled
//! bit-extraction forests.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::extraction::code_set;
use crate::graph::Graph;

/// The trees `T_{m, k-3-m}` for `m = 0..=(k-3)/2`, each on `k` vertices.
///
/// Vertex 0 is the root with children 1 and 2; vertex 1 has `m` leaf
/// children and vertex 2 has `k - 3 - m`. With `directed`, arcs point from
/// child to parent.
pub fn gen_tree_family(k: usize, directed: bool) -> Result<Vec<Graph>> {
    if k < 4 {
        return Err(Error::InvalidArgument(format!("tree family needs k >= 4, got {k}")));
    }
    (0..=(k - 3) / 2)
        .map(|m| {
            let n = k - 3 - m;
            let mut edges = vec![(1, 0), (2, 0)];
            edges.extend((3..3 + m).map(|v| (v, 1)));
            edges.extend((3 + m..3 + m + n).map(|v| (v, 2)));
            Graph::builder(k).edges(edges).directed(directed).build()
        })
        .collect()
}

/// One tree of an extraction forest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForestComponent {
    pub code: Dyadic,
    pub root: usize,
    pub s: usize,
    /// Leaf children of the root other than `s`.
    pub t_leaves: std::ops::Range<usize>,
    /// Leaf children of `s`.
    pub u_leaves: std::ops::Range<usize>,
}

#[derive(Clone, Debug)]
pub struct ExtractionForest {
    pub graph: Graph,
    pub k: usize,
    pub n: usize,
    pub scale: u64,
    pub components: Vec<ForestComponent>,
}

/// The forest read by the `k`-th bit of an `n`-bit extraction GNN. It has one
/// tree per code `c` in `C_k`: a root with `scale * 4^k` leaf children and one
/// more child `s`, and `s` has `scale * c` leaf children.
pub fn gen_extraction_forest(k: usize, n: usize, scale: u64) -> Result<ExtractionForest> {
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    if scale == 0 {
        return Err(Error::InvalidArgument("scale must be positive".into()));
    }
    let codes = code_set(k, n);
    let t_count = scale
        .checked_mul(1u64 << (2 * k))
        .ok_or_else(|| Error::Budget(format!("scale {scale} times 4^{k} overflows")))?;
    let mut u_counts = Vec::with_capacity(codes.len());
    for c in &codes {
        let scaled = c.mul_u64(scale);
        let count = scaled
            .to_bigint()
            .ok_or_else(|| Error::NonIntegralChildCount { code: c.to_string(), scale })?;
        u_counts.push(count.to_u64().ok_or_else(|| Error::Budget(format!("{count} children")))?);
    }
    let total: u64 = u_counts.iter().map(|u| u + t_count + 2).sum();
    let total = usize::try_from(total).map_err(|_| Error::Budget(format!("{total} vertices")))?;

    let mut edges = Vec::with_capacity(total);
    let mut components = Vec::with_capacity(codes.len());
    let mut next = 0usize;
    for (code, &u) in codes.into_iter().zip(&u_counts) {
        let root = next;
        let s = next + 1;
        let t_start = next + 2;
        let t_end = t_start + t_count as usize;
        let u_end = t_end + u as usize;
        edges.push((root, s));
        edges.extend((t_start..t_end).map(|t| (root, t)));
        edges.extend((t_end..u_end).map(|w| (s, w)));
        components.push(ForestComponent { code, root, s, t_leaves: t_start..t_end, u_leaves: t_end..u_end });
        next = u_end;
    }
    let graph = Graph::new(total, &edges, None)?;
    Ok(ExtractionForest { graph, k, n, scale, components })
}

/// `4^n`, the default forest scale for `n`-bit extraction.
pub fn default_scale(n: usize) -> u64 {
    1u64 << (2 * n)
}

pub(crate) fn bigint_pow4(k: usize) -> BigInt {
    BigInt::from(1) << (2 * k)
}

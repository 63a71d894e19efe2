//! Shattering 1-WL-distinguishable graphs with a one-hot histogram readout.
//!
//! Each graph's iteration-`L` color histogram is packed into one natural
//! number `col(G) = sum_c count_c K^slot(c)`. Three dense stages then turn
//! `col(G)` into a 0/1 answer:
//!
//! 1. `h' = lsig(col w'' + b)` with `w'' = (1, -1, 1, -1, ...)` and biases
//!    `(1 - c_i, c_i + 1)`, so entry `2i` is 1 iff `col >= c_i` and entry
//!    `2i + 1` is 1 iff `col <= c_i`;
//! 2. `h = lsig(h' P - 1)` where `P` sums consecutive pairs (an AND);
//! 3. `g = sign(h w - 1)` with `w` the indicator vector of the subset.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::Serialize;

use crate::activation::PiecewisePoly;
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::gnn::{Dense, Matrix};
use crate::graph::Graph;
use crate::wl::{histogram, wl1_refine, Color, ColorDictionary, Histogram, Iterations};

/// `sum_c count_c * K^slot(c)`; fails if a color has no slot or a count does
/// not fit below `K`.
pub fn encode_histogram(h: &Histogram, k: u64, slots: &BTreeMap<Color, usize>) -> Result<BigUint> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("base K = {k} must exceed 1")));
    }
    let base = BigUint::from(k);
    let mut code = BigUint::zero();
    for &(c, count) in &h.entries {
        let slot = *slots.get(&c).ok_or_else(|| Error::InvalidArgument(format!("color {c} has no slot")))?;
        if count as u64 >= k {
            return Err(Error::CodeCollision(format!("count {count} of color {c} does not fit base K = {k}")));
        }
        code += BigUint::from(count) * base.pow(slot as u32);
    }
    Ok(code)
}

#[derive(Clone, Debug, Serialize)]
pub struct ShatterReadout {
    pub iterations: usize,
    pub base: u64,
    /// `(color, slot)` pairs.
    pub slots: Vec<(Color, usize)>,
    #[serde(serialize_with = "codes_as_strings")]
    pub codes: Vec<BigUint>,
    pub threshold_pairs: Dense,
    pub and_stage: Dense,
    #[serde(skip)]
    dictionary: ColorDictionary,
    #[serde(skip)]
    rounds: usize,
}

fn codes_as_strings<S: serde::Serializer>(codes: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(codes.iter().map(ToString::to_string))
}

fn d(v: i64) -> Dyadic {
    Dyadic::from_int(v)
}

/// Builds the readout for `graphs`, which must be pairwise distinguishable
/// by 1-WL after `l` iterations.
pub fn build_histogram_shatter(graphs: &[Graph], l: usize) -> Result<ShatterReadout> {
    let run = wl1_refine(graphs, Iterations::Fixed(l), false);
    let hists = run.histograms(l);
    let mut first_seen: HashMap<&[(Color, usize)], usize> = HashMap::new();
    for (j, h) in hists.iter().enumerate() {
        if let Some(&i) = first_seen.get(h.entries.as_slice()) {
            return Err(Error::IndistinguishablePair(i, j));
        }
        first_seen.insert(&h.entries, j);
    }
    let colors: BTreeSet<Color> = hists.iter().flat_map(|h| h.entries.iter().map(|e| e.0)).collect();
    let slots: BTreeMap<Color, usize> = colors.into_iter().enumerate().map(|(i, c)| (c, i)).collect();
    let base = graphs.iter().map(Graph::order).max().unwrap_or(0) as u64 + 1;
    let base = base.max(2);
    let codes: Vec<BigUint> = hists.iter().map(|h| encode_histogram(h, base, &slots)).collect::<Result<_>>()?;
    let mut seen = HashSet::new();
    for (i, c) in codes.iter().enumerate() {
        if !seen.insert(c.clone()) {
            let j = codes.iter().position(|x| x == c).unwrap();
            return Err(Error::InsufficientSeparation(format!("graphs {j} and {i} share code {c}")));
        }
    }

    let m = codes.len();
    let mut w = Matrix::zeros(1, 2 * m);
    let mut bias = Vec::with_capacity(2 * m);
    for (i, c) in codes.iter().enumerate() {
        let c = Dyadic::from_bigint(BigInt::from(c.clone()));
        w.set(0, 2 * i, d(1));
        w.set(0, 2 * i + 1, d(-1));
        bias.push(&d(1) - &c);
        bias.push(&c + &d(1));
    }
    let threshold_pairs = Dense { weight: w, bias, activation: PiecewisePoly::lsig() };
    let mut pair = Matrix::zeros(2 * m, m);
    for i in 0..m {
        pair.set(2 * i, i, d(1));
        pair.set(2 * i + 1, i, d(1));
    }
    let and_stage = Dense { weight: pair, bias: vec![d(-1); m], activation: PiecewisePoly::lsig() };
    let rounds = run.computed() - 1;
    Ok(ShatterReadout {
        iterations: l,
        base,
        slots: slots.into_iter().collect(),
        codes,
        threshold_pairs,
        and_stage,
        dictionary: run.dictionary,
        rounds: rounds.min(l),
    })
}

impl ShatterReadout {
    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// Histogram code of an arbitrary graph under the construction's
    /// dictionary; `None` when the graph shows a color no member has.
    pub fn code_of(&self, g: &Graph) -> Result<Option<BigUint>> {
        let mut dict = self.dictionary.clone();
        let graphs = std::slice::from_ref(g);
        let mut coloring = vec![dict.initial_coloring(g)];
        for _ in 0..self.rounds {
            coloring = dict.refine_round(graphs, &coloring);
        }
        let h = histogram(&coloring[0], g)?;
        let slots: BTreeMap<Color, usize> = self.slots.iter().copied().collect();
        if h.entries.iter().any(|(c, _)| !slots.contains_key(c)) {
            return Ok(None);
        }
        match encode_histogram(&h, self.base, &slots) {
            Ok(c) => Ok(Some(c)),
            Err(Error::CodeCollision(_)) => Ok(None),
            Err(e) => Err(e),
        }
    }

    /// The one-hot vector `h_G` for code `col`.
    pub fn one_hot(&self, col: &BigUint) -> Vec<Dyadic> {
        let x = [Dyadic::from_bigint(BigInt::from(col.clone()))];
        self.and_stage.apply(&self.threshold_pairs.apply(&x))
    }

    fn indicator_stage(&self, subset: &[bool]) -> Result<Dense> {
        if subset.len() != self.len() {
            return Err(Error::InvalidArgument(format!("subset has {} entries for {} graphs", subset.len(), self.len())));
        }
        let w = Matrix::from_rows(subset.iter().map(|&b| vec![d(b as i64)]).collect())?;
        let w = if subset.is_empty() { Matrix::zeros(0, 1) } else { w };
        Ok(Dense { weight: w, bias: vec![d(-1)], activation: PiecewisePoly::sign() })
    }

    /// `sign(h_G w - 1)` for a histogram code; `None` codes give 0.
    pub fn eval_code(&self, subset: &[bool], col: Option<&BigUint>) -> Result<u8> {
        let stage = self.indicator_stage(subset)?;
        let h = match col {
            Some(c) => self.one_hot(c),
            None => vec![Dyadic::zero(); self.len()],
        };
        let out = stage.apply(&h).remove(0);
        if out.is_zero() {
            Ok(0)
        } else if out == Dyadic::one() {
            Ok(1)
        } else {
            Err(Error::VerificationFailed(format!("readout produced {out}")))
        }
    }
}

/// 1 iff `g`'s histogram class is in `subset` (`subset[i]` selects graph `i`).
pub fn shatter_eval(r: &ShatterReadout, subset: &[bool], g: &Graph) -> Result<u8> {
    let code = r.code_of(g)?;
    r.eval_code(subset, code.as_ref())
}

/// Parses a subset mask such as `0b10` or `10`; the leftmost digit selects
/// graph 0.
pub fn parse_subset(mask: &str, m: usize) -> Result<Vec<bool>> {
    let digits = mask.trim().trim_start_matches("0b");
    if digits.len() != m || !digits.chars().all(|c| c == '0' || c == '1') {
        return Err(Error::Parse(format!("subset mask {mask:?} must have {m} binary digits")));
    }
    Ok(digits.chars().map(|c| c == '1').collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct ShatterReport {
    pub graphs: usize,
    pub iterations: usize,
    pub subsets_checked: u64,
    pub one_hot: bool,
    pub shattered: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<bool>>,
}

pub const SHATTER_LIMIT: usize = 16;

/// Checks every subset of `graphs` against the readout.
pub fn verify_shatter(graphs: &[Graph], l: usize) -> Result<ShatterReport> {
    let m = graphs.len();
    if m > SHATTER_LIMIT {
        return Err(Error::Budget(format!("{m} graphs exceed the exhaustive limit of {SHATTER_LIMIT}")));
    }
    let r = build_histogram_shatter(graphs, l)?;
    let codes: Vec<Option<BigUint>> = graphs.iter().map(|g| r.code_of(g)).collect::<Result<_>>()?;
    let one_hot = codes.iter().enumerate().all(|(i, c)| {
        c.as_ref().is_some_and(|c| {
            let h = r.one_hot(c);
            h.iter().enumerate().all(|(j, v)| *v == d((i == j) as i64))
        })
    });
    let mut counterexample = None;
    let mut checked = 0u64;
    for mask in 0..1u64 << m {
        let subset: Vec<bool> = (0..m).map(|i| mask >> i & 1 == 1).collect();
        checked += 1;
        let ok = codes
            .iter()
            .enumerate()
            .map(|(i, c)| r.eval_code(&subset, c.as_ref()).map(|o| o == subset[i] as u8))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .all(|b| b);
        if !ok {
            counterexample = Some(subset);
            break;
        }
    }
    Ok(ShatterReport {
        graphs: m,
        iterations: l,
        subsets_checked: checked,
        one_hot,
        shattered: one_hot && counterexample.is_none(),
        counterexample,
    })
}

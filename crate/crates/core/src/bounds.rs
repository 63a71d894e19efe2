//! VC-dimension upper bounds for `GNN_slp(d, L)` on graphs with at most `u`
//! colors, evaluated in log2 space.
//!
//! `K(m)` bounds the number of sign patterns a network family realizes on
//! `m` graphs. Shattering `m` graphs needs `2^m <= K(m)`, so the largest such
//! `m` bounds the VC dimension.

use std::f64::consts::E;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gnn::param_count;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundParams {
    pub d: u64,
    pub l: u64,
    /// Pieces of the activation.
    pub p: u64,
    /// Maximal polynomial degree of the activation.
    pub delta: u64,
    /// Bound on the number of 1-WL colors per graph.
    pub u: u64,
}

impl BoundParams {
    pub fn new(d: u64, l: u64, p: u64, delta: u64, u: u64) -> Result<Self> {
        if d == 0 || l == 0 || p == 0 || u == 0 {
            return Err(Error::InvalidArgument("d, L, p and u must be positive".into()));
        }
        Ok(Self { d, l, p, delta, u })
    }

    pub fn param_count(&self) -> u128 {
        param_count(self.d, self.l)
    }

    /// Smallest `m` at which the sign-pattern lemma applies to every layer:
    /// `P` when `delta > 0`, `2d + 1` when `delta = 0`.
    pub fn floor(&self) -> u64 {
        if self.delta > 0 {
            self.param_count() as u64
        } else {
            2 * self.d + 1
        }
    }

    /// Degree bucket of the asymptotic bound.
    pub fn case(&self) -> &'static str {
        match self.delta {
            0 => "delta=0: O(P log(puP))",
            1 => "delta=1: O(LP log(puP))",
            _ => "delta>1: O(LP log(puP) + L^2 P log(delta))",
        }
    }
}

/// `log2` of `2 (2e r degree / vars)^vars`, the number of sign patterns of
/// `r` polynomials of the given degree in `vars` variables. Degree 0 yields
/// constant polynomials and the bound 2.
pub fn sign_pattern_bound(r: u64, degree: u64, vars: u64) -> Result<f64> {
    if vars > r {
        return Err(Error::InvalidArgument(format!("{vars} variables exceed {r} polynomials")));
    }
    if degree == 0 || vars == 0 {
        return Ok(1.0);
    }
    let v = vars as f64;
    Ok(1.0 + v * (2.0 * E * r as f64 * degree as f64 / v).log2())
}

/// `log2 K(m)` with the side-condition flag: `false` when `m` is below
/// [`BoundParams::floor`], where the value is computed anyway.
pub fn k_bound(m: u64, params: &BoundParams) -> (f64, bool) {
    let BoundParams { d, l, p, delta, u } = *params;
    let (df, lf, pf, uf, mf) = (d as f64, l as f64, p as f64, u as f64, m as f64);
    let base = 2.0 * E * df * mf * uf * pf;
    let value = if delta == 0 {
        let vars = (2.0 * df + 1.0) * df;
        lf + lf * vars * (base / vars).log2() + 1.0 + (df + 1.0) * (2.0 * E * mf / (df + 1.0)).log2()
    } else {
        let dl = delta as f64;
        let mut acc = 0.0;
        for t in 1..=l {
            let tf = t as f64;
            let vars = (2.0 * df + 1.0) * df * tf;
            let degree = 1.0 + (tf - 1.0) * dl.powi(t as i32 - 1);
            acc += 1.0 + vars * (base * degree / vars).log2();
        }
        let pc = params.param_count() as f64;
        let degree = 1.0 + lf * dl.powi(l as i32);
        acc + 1.0 + pc * (2.0 * E * mf * degree / pc).log2()
    };
    (value, m >= params.floor())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VcUpper {
    pub m: u64,
    pub satisfied: bool,
}

fn fits(m: u64, params: &BoundParams) -> bool {
    m as f64 <= k_bound(m, params).0
}

/// Largest `m >= floor` with `m <= log2 K(m)`. `log2 K(m) - m` is concave in
/// `m`, so the feasible set past the floor is an interval; it is bracketed by
/// doubling and then bisected. When the floor itself fails, the floor is
/// returned with `satisfied = false`.
pub fn vc_upper(params: &BoundParams) -> VcUpper {
    let lo = params.floor().max(1);
    if !fits(lo, params) {
        return VcUpper { m: lo, satisfied: false };
    }
    let mut good = lo;
    let mut bad = lo.saturating_mul(2);
    while fits(bad, params) {
        good = bad;
        bad = bad.saturating_mul(2);
    }
    while bad - good > 1 {
        let mid = good + (bad - good) / 2;
        if fits(mid, params) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    VcUpper { m: good, satisfied: true }
}

/// `ceil((1/eps^2)(d ln(d/eps) + ln(1/conf + 1)))`, the sample size bound
/// with its unspecified constant set to 1 (a heuristic).
pub fn sample_complexity(epsilon: f64, confidence: f64, vcdim: u64) -> Result<u64> {
    if epsilon.is_nan() || epsilon <= 0.0 || confidence.is_nan() || confidence <= 0.0 || confidence >= 1.0 || vcdim == 0 {
        return Err(Error::InvalidArgument(format!(
            "need epsilon > 0, 0 < delta < 1 and d >= 1; got {epsilon}, {confidence}, {vcdim}"
        )));
    }
    let d = vcdim as f64;
    let value = (d * (d / epsilon).ln() + (1.0 / confidence + 1.0).ln()) / (epsilon * epsilon);
    Ok(value.ceil().max(0.0) as u64)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RegimeQuery {
    pub uniform: bool,
    pub bitlength: Option<u64>,
    pub color_bound: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "regime", rename_all = "snake_case")]
pub enum Regime {
    /// Non-uniform widths: the VC dimension equals the number of
    /// 1-WL-distinguishable graphs.
    DistinguishableGraphs { bound: String },
    /// Bounded bitlength: equals the bitlength.
    Bitlength { bound: u64 },
    /// Bounded color complexity: polynomial in `d, L` times `log u`.
    ColorBounded { u: u64, bound: String },
    Infinite,
}

impl Regime {
    pub fn describe(&self) -> String {
        match self {
            Regime::DistinguishableGraphs { bound } => bound.clone(),
            Regime::Bitlength { bound } => format!("= {bound}"),
            Regime::ColorBounded { bound, .. } => bound.clone(),
            Regime::Infinite => "infinite".into(),
        }
    }
}

pub fn regime(q: &RegimeQuery) -> Regime {
    match (q.uniform, q.bitlength, q.color_bound) {
        (false, _, _) => Regime::DistinguishableGraphs { bound: "= m_{n,d,L}".into() },
        (true, Some(b), _) => Regime::Bitlength { bound: b },
        (true, None, Some(u)) => Regime::ColorBounded { u, bound: "~ poly(d,L) log(u)".into() },
        (true, None, None) => Regime::Infinite,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_pattern_examples() {
        assert!((sign_pattern_bound(1, 1, 1).unwrap() - (4.0 * E).log2()).abs() < 1e-12);
        assert!((sign_pattern_bound(1, 1, 1).unwrap() - 3.443).abs() < 1e-3);
        assert!((sign_pattern_bound(3, 2, 1).unwrap().exp2() - 24.0 * E).abs() < 1e-9);
        assert_eq!(sign_pattern_bound(5, 0, 3).unwrap(), 1.0);
        assert!(sign_pattern_bound(2, 1, 3).is_err());
        for r in 1..20 {
            let closed = 1.0 + r as f64 * (2.0 * E).log2();
            assert!((sign_pattern_bound(r, 1, r).unwrap() - closed).abs() < 1e-9);
        }
    }

    #[test]
    fn k_bound_is_finite_and_monotone_in_u() {
        let p = BoundParams::new(1, 1, 2, 0, 1).unwrap();
        let (v, ok) = k_bound(p.param_count() as u64, &p);
        assert!(v.is_finite() && v > 0.0);
        assert!(ok);
        let p2 = BoundParams { u: 2, ..p };
        let p4 = BoundParams { u: 4, ..p };
        assert!(k_bound(40, &p2).0 <= k_bound(40, &p4).0);
        assert!(!k_bound(2, &p).1);
    }

    #[test]
    fn solver_is_tight() {
        for (d, l, p, delta, u) in [(1, 1, 2, 0, 1), (2, 3, 3, 1, 5), (4, 2, 2, 2, 10), (3, 1, 5, 1, 1)] {
            let params = BoundParams::new(d, l, p, delta, u).unwrap();
            let r = vc_upper(&params);
            assert!(r.satisfied);
            assert!(fits(r.m, &params));
            assert!(!fits(r.m + 1, &params));
        }
    }

    #[test]
    fn sample_complexity_example() {
        assert_eq!(sample_complexity(0.1, 0.1, 10).unwrap(), 4845);
        assert!(sample_complexity(0.05, 0.1, 10).unwrap() >= 4 * 4845);
        assert!(sample_complexity(0.0, 0.1, 10).is_err());
        assert!(sample_complexity(0.1, 1.0, 10).is_err());
    }

    #[test]
    fn regimes() {
        assert_eq!(regime(&RegimeQuery::default()), Regime::DistinguishableGraphs { bound: "= m_{n,d,L}".into() });
        assert_eq!(regime(&RegimeQuery { uniform: true, bitlength: Some(32), color_bound: None }), Regime::Bitlength {
            bound: 32
        });
        assert_eq!(regime(&RegimeQuery { uniform: true, ..Default::default() }).describe(), "infinite");
    }
}

//! The bit-extraction construction: a width-2, two-layer GNN whose single
//! weight `rho(x)` stores `n` bits, and forests `F_k` on which it outputs
//! `x_k`.

use rayon::prelude::*;
use serde::Serialize;

use crate::activation::PiecewisePoly;
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::generators::{bigint_pow4, default_scale, gen_extraction_forest, ExtractionForest};
use crate::gnn::{gnn_forward, GnnSpec, InputEncoding, Layer, Matrix, Readout};
use crate::quotient::{quotient_forward, reduce_stable};

/// `rho(x) = sum_i (2^(1-2i) + x_i 2^(-2i))`, the binary fraction
/// `0.1 x_1 1 x_2 ... 1 x_n`.
pub fn rho(x: &[bool]) -> Dyadic {
    x.iter()
        .enumerate()
        .map(|(i, &b)| {
            let i = i as i64 + 1;
            let mut t = Dyadic::pow2(1 - 2 * i);
            if b {
                t += &Dyadic::pow2(-2 * i);
            }
            t
        })
        .sum()
}

/// `rho` of `(x_{k+1}, ..., x_{k+n})`, padded with zeros past `x_n`.
pub fn rho_shift(x: &[bool], k: usize) -> Result<Dyadic> {
    let n = x.len();
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("shift k = {k} outside 1..={n}")));
    }
    let shifted: Vec<bool> = (0..n).map(|i| x.get(k + i).copied().unwrap_or(false)).collect();
    Ok(rho(&shifted))
}

/// `a_k = sum_{i<=k} 2^(2(k-i)+1) - s` with tail `s = sum_{i<=k} 2^(2(k-n-i)+1)`.
pub fn a_k(k: usize, n: usize) -> Dyadic {
    let (k, n) = (k as i64, n as i64);
    let head: Dyadic = (1..=k).map(|i| Dyadic::pow2(2 * (k - i) + 1)).sum();
    let tail: Dyadic = (1..=k).map(|i| Dyadic::pow2(2 * (k - n - i) + 1)).sum();
    &head - &tail
}

/// `b_k(x) = sum_{i<k} 4^(k-i) x_i`.
pub fn b_k(x: &[bool], k: usize) -> Dyadic {
    (1..k).filter(|&i| x[i - 1]).map(|i| Dyadic::pow2(2 * (k - i) as i64)).sum()
}

/// `c_k(x) = b_k(x) + a_k + 1`.
pub fn c_k(x: &[bool], k: usize) -> Dyadic {
    &(&b_k(x, k) + &a_k(k, x.len())) + &Dyadic::one()
}

/// The codes `C_k = { c_k(y) : y in {0,1}^n }`, increasing. `c_k` only
/// reads `y_1..y_{k-1}`, so the prefixes are enumerated.
pub fn code_set(k: usize, n: usize) -> Vec<Dyadic> {
    let mut codes: Vec<Dyadic> = (0..1u64 << (k - 1))
        .map(|bits| {
            let y: Vec<bool> = (0..n).map(|i| i + 1 < k && bits >> i & 1 == 1).collect();
            c_k(&y, k)
        })
        .collect();
    codes.sort();
    codes.dedup();
    codes
}

#[derive(Clone, Debug, Serialize)]
pub struct LedgerRow {
    pub k: usize,
    pub rho_k: Dyadic,
    pub a: Dyadic,
    pub b: Dyadic,
    pub c: Dyadic,
    pub codes: Vec<Dyadic>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtractionLedger {
    pub n: usize,
    pub x: Vec<bool>,
    pub rho: Dyadic,
    pub scale: u64,
    pub rows: Vec<LedgerRow>,
}

/// Computes every ledger quantity for `x` and checks the construction's
/// identities and bounds exactly; any failure is a [`Error::LedgerViolation`].
pub fn ledger(x: &[bool]) -> Result<ExtractionLedger> {
    let n = x.len();
    if n == 0 {
        return Err(Error::InvalidArgument("bit vector must be non-empty".into()));
    }
    if n > 31 {
        return Err(Error::Budget(format!("n = {n} bits")));
    }
    let scale = default_scale(n);
    let half = Dyadic::pow2(-1);
    let one = Dyadic::one();
    let fail = |what: String| Err(Error::LedgerViolation(what));
    let r = rho(x);
    if r < half || r > one {
        return fail(format!("rho = {r} outside [1/2, 1]"));
    }
    let mut rows = Vec::with_capacity(n);
    for k in 1..=n {
        let rk = rho_shift(x, k)?;
        if rk < half || rk > one {
            return fail(format!("rho_{k} = {rk} outside [1/2, 1]"));
        }
        let (a, b, c) = (a_k(k, n), b_k(x, k), c_k(x, k));
        let xk = Dyadic::from_int(x[k - 1] as i64);
        let four_k = Dyadic::from_bigint(bigint_pow4(k));
        let lifted = &four_k * &r;
        if rk != &(&(&lifted - &a) - &b) - &xk {
            return fail(format!("rho_{k} != 4^k rho - a_k - b_k - x_k"));
        }
        let gap = &lifted - &c;
        if gap < &xk - &half || gap > xk {
            return fail(format!("4^k rho - c_k = {gap} outside [x_k - 1/2, x_k]"));
        }
        let codes = code_set(k, n);
        if codes.len() != 1 << (k - 1) {
            return fail(format!("|C_{k}| = {} != 2^{}", codes.len(), k - 1));
        }
        if !codes.contains(&c) {
            return fail(format!("c_{k}(x) = {c} missing from C_{k}"));
        }
        let four = Dyadic::from_int(4);
        if codes.windows(2).any(|w| &w[1] - &w[0] < four) {
            return fail(format!("codes of C_{k} closer than 4"));
        }
        // (2/3)(4^k - 1) <= c <= 4^k - 1, multiplied through by 3
        let top = &four_k - &one;
        for code in &codes {
            let three_c = code.mul_u64(3);
            if three_c < top.mul_u64(2) || three_c > top.mul_u64(3) {
                return fail(format!("code {code} outside [(2/3)(4^k - 1), 4^k - 1]"));
            }
            if !code.mul_u64(scale).is_integer() {
                return fail(format!("scale {scale} leaves {code} fractional"));
            }
        }
        rows.push(LedgerRow { k, rho_k: rk, a, b, c, codes });
    }
    Ok(ExtractionLedger { n, x: x.to_vec(), rho: r, scale, rows })
}

/// The two-layer extraction GNN for weight `rho` on forests of scale `scale`
/// (a power of two). With `scale = 1` the second activation is `A` itself.
pub fn build_extraction_gnn(rho: &Dyadic, scale: u64) -> Result<GnnSpec> {
    if !scale.is_power_of_two() {
        return Err(Error::InvalidArgument(format!("scale {scale} is not a power of two")));
    }
    let act = if scale == 1 { PiecewisePoly::a() } else { PiecewisePoly::a_scaled(&Dyadic::from(scale))? };
    let one = Dyadic::one();
    let zero = Dyadic::zero();
    let first = Layer::slp(
        Matrix::zeros(1, 2),
        Matrix::from_rows(vec![vec![rho.clone(), one.clone()]])?,
        vec![-rho, -&one],
        PiecewisePoly::identity(),
    );
    let second = Layer::slp(
        Matrix::from_rows(vec![vec![one.clone()], vec![zero.clone()]])?,
        Matrix::from_rows(vec![vec![zero.clone()], vec![-&one]])?,
        vec![zero],
        act,
    );
    GnnSpec::new(InputEncoding::Constant { row: vec![one] }, vec![first, second], Readout::sum(1))
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtractionCheck {
    pub x: Vec<bool>,
    pub k: usize,
    pub output: Dyadic,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtractionReport {
    pub n: usize,
    pub scale: u64,
    pub accelerated: bool,
    pub forest_orders: Vec<usize>,
    pub quotient_classes: Vec<usize>,
    pub spec_bitlength: Vec<u64>,
    pub checks: Vec<ExtractionCheck>,
    pub passed: usize,
    pub total: usize,
}

impl ExtractionReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }
}

/// All bit vectors of length `n`, `x_1` first, in counting order.
pub fn all_bit_vectors(n: usize) -> Vec<Vec<bool>> {
    (0..1u64 << n).map(|m| (0..n).map(|i| m >> (n - 1 - i) & 1 == 1).collect()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Role {
    Root,
    S,
    T,
    U,
}

fn role_of(forest: &ExtractionForest, v: usize) -> (usize, Role) {
    let c = forest.components.partition_point(|c| c.root <= v) - 1;
    let comp = &forest.components[c];
    let role = if v == comp.root {
        Role::Root
    } else if v == comp.s {
        Role::S
    } else if comp.t_leaves.contains(&v) {
        Role::T
    } else {
        Role::U
    };
    (c, role)
}

/// Checks the node values after layer 2: every non-root is 0, the root of
/// code `c_k(x)` carries `x_k` and every other root is 0.
fn check_nodes(
    forest: &ExtractionForest,
    x: &[bool],
    values: impl Iterator<Item = (usize, Dyadic)>,
) -> Option<String> {
    let target = c_k(x, forest.k);
    let xk = Dyadic::from_int(x[forest.k - 1] as i64);
    for (v, h) in values {
        let (c, role) = role_of(forest, v);
        let expected = if role == Role::Root && forest.components[c].code == target { xk.clone() } else { Dyadic::zero() };
        if h != expected {
            return Some(format!("node {v} ({role:?} of code {}) has {h}, expected {expected}", forest.components[c].code));
        }
    }
    None
}

/// Evaluates every extraction GNN of `n` bits on every forest `F_1..F_n`
/// and checks `output = x_k` exactly, together with the per-node values.
/// With `accelerated`, evaluation runs on the WL quotient of each forest.
pub fn verify_bit_extraction(n: usize, budget: usize, accelerated: bool) -> Result<ExtractionReport> {
    verify_bit_extraction_scaled(n, default_scale(n), budget, accelerated)
}

/// [`verify_bit_extraction`] with an explicit forest scale `M`, a power of
/// two that makes every `M * c` integral.
pub fn verify_bit_extraction_scaled(n: usize, scale: u64, budget: usize, accelerated: bool) -> Result<ExtractionReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if n > budget {
        return Err(Error::Budget(format!("n = {n} exceeds the verification budget {budget}")));
    }
    if !scale.is_power_of_two() {
        return Err(Error::InvalidArgument(format!("scale {scale} is not a power of two")));
    }
    let xs = all_bit_vectors(n);
    let specs: Vec<GnnSpec> =
        xs.iter().map(|x| build_extraction_gnn(&rho(x), scale)).collect::<Result<_>>()?;
    let mut checks = Vec::with_capacity(xs.len() * n);
    let mut forest_orders = Vec::new();
    let mut quotient_classes = Vec::new();
    for k in 1..=n {
        let forest = gen_extraction_forest(k, n, scale)?;
        forest_orders.push(forest.graph.order());
        let quotient = if accelerated { Some(reduce_stable(&forest.graph)?) } else { None };
        if let Some(q) = &quotient {
            quotient_classes.push(q.classes());
        }
        let results: Vec<ExtractionCheck> = xs
            .par_iter()
            .zip(&specs)
            .map(|(x, spec)| -> Result<ExtractionCheck> {
                let (output, failure) = match &quotient {
                    Some(q) => {
                        let fw = quotient_forward(spec, q)?;
                        let vals = fw.layers[2].iter().enumerate().map(|(c, h)| (q.representative[c], h[0].clone()));
                        (fw.output, check_nodes(&forest, x, vals))
                    }
                    None => {
                        let fw = gnn_forward(spec, &forest.graph)?;
                        let vals = fw.layers[2].iter().enumerate().map(|(v, h)| (v, h[0].clone()));
                        (fw.output, check_nodes(&forest, x, vals))
                    }
                };
                let expected = Dyadic::from_int(x[k - 1] as i64);
                let failure = failure.or_else(|| (output != expected).then(|| format!("output {output} != x_k")));
                Ok(ExtractionCheck { x: x.clone(), k, output, pass: failure.is_none(), failure })
            })
            .collect::<Result<_>>()?;
        checks.extend(results);
    }
    let passed = checks.iter().filter(|c| c.pass).count();
    let total = checks.len();
    Ok(ExtractionReport {
        n,
        scale,
        accelerated,
        forest_orders,
        quotient_classes,
        spec_bitlength: specs.iter().map(GnnSpec::bitlength).collect(),
        checks,
        passed,
        total,
    })
}

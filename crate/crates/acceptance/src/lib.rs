//! Independent oracles for the acceptance suite. Nothing here calls into
//! the algorithms under test; only plain graphs and numbers cross over.

use std::collections::BTreeMap;
use std::io::Write;

use wlvc::{Dyadic, Graph};

/// Prints one verdict line to the real stderr (not the test capture) and
/// returns `pass`.
pub fn criterion(id: u32, title: &str, pass: bool, detail: &str) -> bool {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "ACCEPTANCE {id:>2} {verdict} {title} | {detail}");
    pass
}

/// Dyadic times `2^shift` as an exact `i128`, or `None` if not integral.
pub fn scaled(x: &Dyadic, shift: i64) -> Option<i128> {
    x.scale_pow2(shift).to_bigint()?.to_string().parse().ok()
}

fn atomic(g: &Graph, t: &[usize]) -> Vec<u8> {
    let mut key = Vec::new();
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            key.push(if t[i] == t[j] { 1 } else if g.has_edge(t[i], t[j]) { 2 } else { 0 });
        }
    }
    key
}

fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out.into_iter().flat_map(|t| (0..n).map(move |v| [t.clone(), vec![v]].concat())).collect();
    }
    out
}

/// Naive oblivious k-WL on unlabeled graphs, refined jointly until the
/// number of classes stops growing. Returns whether the final tuple-color
/// histograms of `g` and `h` differ.
pub fn naive_kwl_distinguishes(g: &Graph, h: &Graph, k: usize) -> bool {
    let graphs = [g, h];
    let all: Vec<Vec<Vec<usize>>> = graphs.iter().map(|x| tuples(x.order(), k)).collect();
    let mut ids: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    let mut colors: Vec<BTreeMap<Vec<usize>, usize>> = graphs
        .iter()
        .zip(&all)
        .map(|(x, ts)| {
            ts.iter()
                .map(|t| {
                    let next = ids.len();
                    (t.clone(), *ids.entry(atomic(x, t)).or_insert(next))
                })
                .collect()
        })
        .collect();
    let mut classes = ids.len();
    loop {
        let mut sig_ids: BTreeMap<(usize, Vec<Vec<usize>>), usize> = BTreeMap::new();
        let next: Vec<BTreeMap<Vec<usize>, usize>> = graphs
            .iter()
            .zip(&all)
            .zip(&colors)
            .map(|((x, ts), col)| {
                ts.iter()
                    .map(|t| {
                        let neigh: Vec<Vec<usize>> = (0..k)
                            .map(|j| {
                                let mut m: Vec<usize> = (0..x.order())
                                    .map(|w| {
                                        let mut s = t.clone();
                                        s[j] = w;
                                        col[&s]
                                    })
                                    .collect();
                                m.sort_unstable();
                                m
                            })
                            .collect();
                        let fresh = sig_ids.len();
                        (t.clone(), *sig_ids.entry((col[t], neigh)).or_insert(fresh))
                    })
                    .collect()
            })
            .collect();
        colors = next;
        if sig_ids.len() == classes {
            break;
        }
        classes = sig_ids.len();
    }
    let hist = |c: &BTreeMap<Vec<usize>, usize>| {
        let mut v: Vec<usize> = c.values().copied().collect();
        v.sort_unstable();
        v
    };
    hist(&colors[0]) != hist(&colors[1])
}

/// The bit-extraction quantities in units of `2^-(2n)`, computed from the
/// binary digit string of `rho(x)`.
pub struct LedgerOracle {
    pub rho: i128,
    /// Per `k`: `(rho_k, a_k, b_k, c_k)`.
    pub rows: Vec<(i128, i128, i128, i128)>,
}

fn digits_value(x: &[bool]) -> i128 {
    // 0.1 x_1 1 x_2 ... 1 x_n, read as a 2n-bit integer
    x.iter().fold(0i128, |acc, &b| (acc << 2) | 2 | b as i128)
}

pub fn ledger_oracle(x: &[bool]) -> LedgerOracle {
    let n = x.len();
    let rho = digits_value(x);
    let rows = (1..=n)
        .map(|k| {
            let shifted: Vec<bool> = (0..n).map(|i| x.get(k + i).copied().unwrap_or(false)).collect();
            let rho_k = digits_value(&shifted);
            let a: i128 = (1..=k).map(|i| 1i128 << (2 * (k - i) + 1 + 2 * n)).sum::<i128>()
                - (1..=k).map(|i| 1i128 << (2 * (k - i) + 1)).sum::<i128>();
            let b: i128 = (1..k).filter(|&i| x[i - 1]).map(|i| 1i128 << (2 * (k - i) + 2 * n)).sum();
            let c = a + b + (1i128 << (2 * n));
            (rho_k, a, b, c)
        })
        .collect();
    LedgerOracle { rho, rows }
}

/// All codes `c_k(y)` over every `y` in `{0,1}^n`, deduplicated, in units of
/// `2^-(2n)`.
pub fn code_set_oracle(k: usize, n: usize) -> Vec<i128> {
    let mut codes: Vec<i128> = (0..1u32 << n)
        .map(|m| {
            let y: Vec<bool> = (0..n).map(|i| m >> i & 1 == 1).collect();
            ledger_oracle(&y).rows[k - 1].3
        })
        .collect();
    codes.sort_unstable();
    codes.dedup();
    codes
}

/// `log2` of the sign-pattern bound for activations of degree 0, written
/// out directly.
pub fn log2_k_degree0(m: f64, d: f64, l: f64, p: f64, u: f64) -> f64 {
    let e = std::f64::consts::E;
    let w = (2.0 * d + 1.0) * d;
    l + l * w * (2.0 * e * d * m * u * p / w).log2() + 1.0 + (d + 1.0) * (2.0 * e * m / (d + 1.0)).log2()
}

/// Largest `m` in `lo..=hi` with `m <= log2 K(m)`, by scanning every `m`.
pub fn scan_max(lo: u64, hi: u64, log2k: impl Fn(f64) -> f64) -> Option<u64> {
    (lo..=hi).filter(|&m| m as f64 <= log2k(m as f64)).max()
}

/// Least-squares slope of `ys` against `xs`.
pub fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let cov: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    cov / var
}

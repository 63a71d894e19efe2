use std::fmt::Write as _;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use wlvc::bounds::{vc_upper, BoundParams};
use wlvc::dataset::{parse_tud, read_graph_json, write_graph_json, Report};
use wlvc::gnn::gnn_eval;
use wlvc::quotient::{eval_on_quotient, reduce_stable};
use wlvc::wl::{stable_coloring, wl1_refine, Iterations};
use wlvc::{random, Dyadic, Features, Graph, PiecewisePoly};

const SHIFT: i64 = 16;

/// `m * 2^e` as an integer multiple of `2^-SHIFT`.
fn oracle(m: i64, e: i64) -> i128 {
    (m as i128) << (e + SHIFT)
}

fn scaled(x: &Dyadic, shift: i64) -> i128 {
    x.scale_pow2(shift).to_bigint().expect("integral after scaling").try_into().unwrap()
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..9).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let m = pairs.len();
        (
            Just(n),
            proptest::collection::vec(any::<bool>(), m),
            proptest::collection::vec(0u32..3, n),
            proptest::collection::vec(0u32..2, m),
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), 2), n),
            0u8..4,
        )
            .prop_map(move |(n, keep, labels, elabels, rows, extras)| {
                let edges: Vec<_> = pairs.iter().zip(&keep).filter(|(_, k)| **k).map(|(e, _)| *e).collect();
                let count = edges.len();
                let mut b = Graph::builder(n).edges(edges);
                if extras & 1 == 1 {
                    b = b.vertex_labels(labels);
                }
                if extras & 2 == 2 {
                    b = b.features(Features::new(2, rows).unwrap()).edge_labels(elabels[..count].to_vec());
                }
                b.build().unwrap()
            })
    })
}

fn arb_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

/// Minimal RFC 4180 reader, independent of the writer under test.
fn parse_csv(text: &str) -> Vec<Vec<String>> {
    let mut rows = vec![];
    let mut row = vec![];
    let mut field = String::new();
    let mut chars = text.chars().peekable();
    let mut quoted = false;
    while let Some(c) = chars.next() {
        match (quoted, c) {
            (true, '"') if chars.peek() == Some(&'"') => {
                chars.next();
                field.push('"');
            }
            (true, '"') => quoted = false,
            (true, c) => field.push(c),
            (false, '"') => quoted = true,
            (false, ',') => row.push(std::mem::take(&mut field)),
            (false, '\n') => {
                row.push(std::mem::take(&mut field));
                rows.push(std::mem::take(&mut row));
            }
            (false, '\r') => {}
            (false, c) => field.push(c),
        }
    }
    assert!(field.is_empty() && row.is_empty(), "missing final newline");
    rows
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dyadic_arithmetic_matches_integer_oracle(
        a in -100_000i64..100_000, e in -12i64..12,
        b in -100_000i64..100_000, f in -12i64..12,
    ) {
        let (x, y) = (Dyadic::new(a, e), Dyadic::new(b, f));
        let (ox, oy) = (oracle(a, e), oracle(b, f));
        prop_assert_eq!(scaled(&(&x + &y), SHIFT), ox + oy);
        prop_assert_eq!(scaled(&(&x - &y), SHIFT), ox - oy);
        prop_assert_eq!(scaled(&(&x * &y), 2 * SHIFT), ox * oy);
        prop_assert_eq!(x.cmp(&y), ox.cmp(&oy));
        prop_assert_eq!(x == y, ox == oy);
        let back: Dyadic = x.to_string().parse().unwrap();
        prop_assert_eq!(&back, &x);
        let via_json: Dyadic = serde_json::from_value(serde_json::to_value(&x).unwrap()).unwrap();
        prop_assert_eq!(via_json, x);
    }

    #[test]
    fn activations_match_closed_forms(m in -4000i64..4000) {
        // x = m / 1024
        let x = Dyadic::new(m, -10);
        let v = |f: PiecewisePoly| scaled(&f.eval(&x), 11);
        let xm = (m as i128) * 2;
        prop_assert_eq!(v(PiecewisePoly::identity()), xm);
        prop_assert_eq!(v(PiecewisePoly::relu()), xm.max(0));
        prop_assert_eq!(v(PiecewisePoly::sign()), if m >= 0 { 2048 } else { 0 });
        prop_assert_eq!(v(PiecewisePoly::lsig()), xm.clamp(0, 2048));
        let bump = match m {
            m if m < 0 => 0,
            m if m < 512 => 2 * xm,
            m if m < 1024 => 2048,
            m if m < 1536 => 3 * 2048 - 2 * xm,
            _ => 0,
        };
        prop_assert_eq!(v(PiecewisePoly::a()), bump);
        // A_scaled(4) at 4x equals A at x
        let s = PiecewisePoly::a_scaled(&Dyadic::from_int(4)).unwrap();
        prop_assert_eq!(scaled(&s.eval(&x.scale_pow2(2)), 11), bump);
    }

    #[test]
    fn graph_json_round_trips(g in arb_graph()) {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("g.json");
        write_graph_json(&g, &p).unwrap();
        prop_assert_eq!(read_graph_json(&p).unwrap(), g);
    }

    #[test]
    fn wl_is_permutation_invariant((g, perm) in arb_graph().prop_flat_map(|g| { let n = g.order(); (Just(g), arb_perm(n)) })) {
        let h = g.permute(&perm).unwrap();
        let run = wl1_refine(&[g.clone(), h.clone()], Iterations::Fixed(4), true);
        for t in 0..=4 {
            let (ids, _) = run.histogram_ids(t);
            prop_assert_eq!(ids[0], ids[1]);
        }
        let (c, _) = stable_coloring(&g);
        let (d, _) = stable_coloring(&h);
        prop_assert_eq!(c.class_count(), d.class_count());
    }

    #[test]
    fn quotient_evaluation_matches_full_graph(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let kind = random::input_kind(&mut rng);
        let d = 1 + (seed % 3) as usize;
        let spec = random::slp_spec(&mut rng, d, 2, 6, kind);
        let g = if seed % 4 == 0 && kind == random::InputKind::Constant {
            random::structured(&mut rng, 6)
        } else {
            random::graph(&mut rng, 7, d, kind)
        };
        let q = reduce_stable(&g).unwrap();
        prop_assert_eq!(q.order(), g.order());
        prop_assert_eq!(eval_on_quotient(&spec, &q).unwrap(), gnn_eval(&spec, &g).unwrap());
    }

    #[test]
    fn tud_vertex_count_matches_indicator(
        sizes in proptest::collection::vec(1usize..6, 1..5),
        density in 0.0f64..1.0,
        seed in any::<u64>(),
    ) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let root = tempfile::tempdir().unwrap();
        let dir = root.path().join("RND");
        std::fs::create_dir_all(&dir).unwrap();
        let (mut indicator, mut a) = (String::new(), String::new());
        let mut offset = 1;
        for (gi, &n) in sizes.iter().enumerate() {
            for _ in 0..n {
                writeln!(indicator, "{}", gi + 1).unwrap();
            }
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(density) {
                        writeln!(a, "{}, {}\n{}, {}", offset + u, offset + v, offset + v, offset + u).unwrap();
                    }
                }
            }
            offset += n;
        }
        std::fs::write(dir.join("RND_graph_indicator.txt"), &indicator).unwrap();
        std::fs::write(dir.join("RND_A.txt"), &a).unwrap();
        let ds = parse_tud(&dir).unwrap();
        prop_assert_eq!(ds.vertex_count(), indicator.lines().count());
        prop_assert_eq!(ds.graphs.len(), sizes.len());
        prop_assert_eq!(ds.graphs.iter().map(|g| g.edge_count()).sum::<usize>() * 2, a.lines().count());
    }

    #[test]
    fn vc_upper_grows_with_depth_and_colors(d in 1u64..6, l in 1u64..6, p in 1u64..4, delta in 0u64..3, u in 1u64..50) {
        let base = vc_upper(&BoundParams::new(d, l, p, delta, u).unwrap());
        prop_assume!(base.satisfied);
        for next in [BoundParams::new(d, l + 1, p, delta, u), BoundParams::new(d, l, p, delta, u * 2)] {
            let r = vc_upper(&next.unwrap());
            prop_assert!(r.satisfied && r.m >= base.m, "{:?} then {:?}", base, r);
        }
    }

    #[test]
    fn csv_reports_escape_per_rfc4180(cells in proptest::collection::vec("[a-z,\"\n ]{0,6}", 1..8)) {
        let mut r = Report::new("t", &["text", "n"]);
        for (i, c) in cells.iter().enumerate() {
            r.push(vec![json!(c), json!(i)]);
        }
        let parsed = parse_csv(&r.to_csv().unwrap());
        prop_assert_eq!(&parsed[0], &vec!["text".to_owned(), "n".to_owned()]);
        prop_assert_eq!(parsed.len(), cells.len() + 1);
        for (i, c) in cells.iter().enumerate() {
            prop_assert_eq!(&parsed[i + 1], &vec![c.clone(), i.to_string()]);
        }
    }
}

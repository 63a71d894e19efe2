//! VC-dimension upper bounds, sample sizes and the regime table.

use wlvc::bounds::{k_bound, regime, sample_complexity, vc_upper, BoundParams, RegimeQuery};

pub fn run() -> wlvc::Result<()> {
    println!("{:>3} {:>3} {:>3} {:>5} {:>5} {:>8} {:>10}", "d", "L", "p", "delta", "u", "P", "m*");
    for (d, l, p, delta, u) in [(1, 1, 2, 0, 1), (4, 2, 2, 0, 16), (4, 2, 2, 1, 16), (4, 4, 2, 1, 16), (8, 3, 5, 1, 100)] {
        let params = BoundParams::new(d, l, p, delta, u)?;
        let vc = vc_upper(&params);
        println!("{d:>3} {l:>3} {p:>3} {delta:>5} {u:>5} {:>8} {:>10}  {}", params.param_count(), vc.m, params.case());
    }
    let tiny = BoundParams::new(1, 1, 2, 0, 1)?;
    let m = vc_upper(&tiny).m;
    println!("tiny case: log2 K({m}) = {:.3}, log2 K({}) = {:.3}", k_bound(m, &tiny).0, m + 1, k_bound(m + 1, &tiny).0);
    println!("samples for eps = 0.1, delta = 0.1, VC = {m}: {}", sample_complexity(0.1, 0.1, m)?);

    for q in [
        RegimeQuery { uniform: false, ..Default::default() },
        RegimeQuery { uniform: true, bitlength: Some(32), color_bound: None },
        RegimeQuery { uniform: true, bitlength: None, color_bound: Some(10) },
        RegimeQuery { uniform: true, bitlength: None, color_bound: None },
    ] {
        println!("{q:?}: {}", regime(&q).describe());
    }
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

//! Bit-extraction lower bound: one weight stores n bits and forest F_k
//! reads bit k. Pass `n` as the first argument (default 3).

use wlvc::extraction::{c_k, code_set, ledger, rho, verify_bit_extraction};

pub fn run(arg: Option<String>) -> wlvc::Result<()> {
    let n: usize = arg.and_then(|a| a.parse().ok()).unwrap_or(3);
    let x = vec![true, false, true][..n.min(3)].to_vec();
    let l = ledger(&x)?;
    println!("x = {x:?}, rho = {}", rho(&x));
    for row in &l.rows {
        println!("  k = {}: c_k = {}, |C_k| = {}", row.k, c_k(&x, row.k), code_set(row.k, x.len()).len());
    }

    let start = std::time::Instant::now();
    let report = verify_bit_extraction(n, 4, true)?;
    println!(
        "n = {n}: {}/{} exact checks pass in {:.2?}; forest orders {:?}, quotient classes {:?}",
        report.passed,
        report.total,
        start.elapsed(),
        report.forest_orders,
        report.quotient_classes
    );
    Ok(())
}

fn main() {
    if let Err(e) = run(std::env::args().nth(1)) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

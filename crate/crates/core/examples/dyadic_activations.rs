//! Exact dyadic arithmetic and the piecewise-polynomial activations.

use wlvc::{Dyadic, PiecewisePoly};

pub fn run() -> wlvc::Result<()> {
    let a: Dyadic = "23/8".parse()?;
    let b: Dyadic = "3*2^-5".parse()?;
    println!("{a} + {b} = {}", &a + &b);
    println!("{a} * {b} = {}", &a * &b);
    println!("mantissa bits of {b}: {}", b.mantissa_bits());
    println!("serde form: {}", serde_json::to_string(&a).unwrap());

    let xs: Vec<Dyadic> = ["-1", "0", "1/4", "1/2", "3/4", "1", "3/2"].iter().map(|s| s.parse().unwrap()).collect();
    for name in ["relu", "sign", "lsig", "A", "A_scaled(16)"] {
        let f = PiecewisePoly::by_name(name)?;
        let ys: Vec<String> = xs.iter().map(|x| f.eval(x).to_string()).collect();
        println!("{name:>12} ({} pieces, degree {}): {}", f.piece_count(), f.degree(), ys.join(" "));
    }
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

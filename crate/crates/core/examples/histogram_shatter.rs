//! Shatters a set of 1-WL-distinguishable graphs with a histogram readout.

use wlvc::shatter::{build_histogram_shatter, shatter_eval, verify_shatter};
use wlvc::{Error, Graph};

pub fn run() -> wlvc::Result<()> {
    let graphs = vec![Graph::complete(3), Graph::path(3), Graph::cycle(4), Graph::star(3), Graph::path(5)];
    let r = build_histogram_shatter(&graphs, 3)?;
    println!("base K = {}, codes {:?}", r.base, r.codes.iter().map(ToString::to_string).collect::<Vec<_>>());
    let subset = [true, false, true, false, false];
    let outs: Vec<u8> = graphs.iter().map(|g| shatter_eval(&r, &subset, g)).collect::<Result<_, _>>()?;
    println!("subset {subset:?} -> outputs {outs:?}");

    let report = verify_shatter(&graphs, 3)?;
    println!("{} subsets checked, shattered = {}", report.subsets_checked, report.shattered);

    let two_k3 = wlvc::disjoint_union(&[Graph::complete(3), Graph::complete(3)])?.0;
    match build_histogram_shatter(&[Graph::cycle(6), two_k3], 3) {
        Err(Error::IndistinguishablePair(i, j)) => println!("C6 and 2K3 rejected: graphs {i} and {j} are indistinguishable"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

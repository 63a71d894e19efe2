//! Runs every example's `run` in-process.

#[allow(dead_code)]
#[path = "../examples/wl_histograms.rs"]
mod wl_histograms;

#[allow(dead_code)]
#[path = "../examples/kwl_separation.rs"]
mod kwl_separation;

#[allow(dead_code)]
#[path = "../examples/dyadic_activations.rs"]
mod dyadic_activations;

#[allow(dead_code)]
#[path = "../examples/gnn_forward.rs"]
mod gnn_forward;

#[allow(dead_code)]
#[path = "../examples/unroll_collapse.rs"]
mod unroll_collapse;

#[allow(dead_code)]
#[path = "../examples/bit_extraction.rs"]
mod bit_extraction;

#[allow(dead_code)]
#[path = "../examples/histogram_shatter.rs"]
mod histogram_shatter;

#[allow(dead_code)]
#[path = "../examples/vc_bounds.rs"]
mod vc_bounds;

#[allow(dead_code)]
#[path = "../examples/expand_bitlength.rs"]
mod expand_bitlength;

#[allow(dead_code)]
#[path = "../examples/tu_dataset.rs"]
mod tu_dataset;

#[allow(dead_code)]
#[path = "../examples/json_reports.rs"]
mod json_reports;

#[test]
fn wl_histograms_runs() {
    wl_histograms::run().unwrap();
}

#[test]
fn kwl_separation_runs() {
    kwl_separation::run().unwrap();
}

#[test]
fn dyadic_activations_runs() {
    dyadic_activations::run().unwrap();
}

#[test]
fn gnn_forward_runs() {
    gnn_forward::run().unwrap();
}

#[test]
fn unroll_collapse_runs() {
    unroll_collapse::run().unwrap();
}

#[test]
fn bit_extraction_runs() {
    bit_extraction::run(Some("2".to_owned())).unwrap();
}

#[test]
fn histogram_shatter_runs() {
    histogram_shatter::run().unwrap();
}

#[test]
fn vc_bounds_runs() {
    vc_bounds::run().unwrap();
}

#[test]
fn expand_bitlength_runs() {
    expand_bitlength::run().unwrap();
}

#[test]
fn tu_dataset_runs() {
    tu_dataset::run(None).unwrap();
}

#[test]
fn json_reports_runs() {
    json_reports::run().unwrap();
}

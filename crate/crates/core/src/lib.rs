pub mod activation;
pub mod bounds;
pub mod cli;
pub mod dataset;
pub mod dyadic;
pub mod error;
pub mod extraction;
pub mod fnn;
pub mod generators;
pub mod gnn;
pub mod graph;
pub mod kwl;
pub mod quotient;
pub mod random;
pub mod shatter;
pub mod wl;

pub use activation::PiecewisePoly;
pub use dyadic::Dyadic;
pub use error::{Error, Result};
pub use graph::{disjoint_union, Features, Graph, VertexId};

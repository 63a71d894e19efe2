use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("endpoint out of range: edge ({u}, {v}) in a graph of order {n}")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("not a bijection on 0..{0}")]
    InvalidPermutation(usize),
    #[error("mixed labeled and unlabeled inputs")]
    MixedLabeling,
    #[error("feature width mismatch: {0}")]
    FeatureWidth(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("scaled child count M*c is not integral for c = {code} (M = {scale})")]
    NonIntegralChildCount { code: String, scale: u64 },

    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema mismatch: expected version {expected}, found {found}")]
    SchemaMismatch { expected: u32, found: u32 },
    #[error("missing mandatory file {0}")]
    MissingFile(PathBuf),
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("HTTP failure fetching {url}: {message}")]
    Http { url: String, message: String },
    #[error("corrupt archive: {0}")]
    CorruptArchive(String),
    #[error("dataset {0:?} unknown upstream")]
    UnknownDataset(String),
    #[error("dataset {0:?} is not cached and network access is disabled")]
    Offline(String),

    #[error("coloring does not match graph: {0}")]
    ColoringMismatch(String),
    #[error("coloring is not stable: {0}")]
    NonStableColoring(String),
    #[error("inconsistent coloring: {0}")]
    InconsistentColoring(String),
    #[error("{n}^{k} tuples exceed the tuple budget of {limit}")]
    TupleLimit { n: usize, k: usize, limit: usize },

    #[error("width mismatch: {0}")]
    WidthMismatch(String),
    #[error("missing input features: {0}")]
    MissingFeatures(String),
    #[error("not a dyadic rational: {0}")]
    NonDyadic(String),
    #[error("multilayer-perceptron layers must be lowered to single-layer form before unrolling")]
    MlpNotSupported,
    #[error("cannot split a weight matrix of mantissa bitlength {bits} into {parts} strictly shorter parts")]
    SplitTooLarge { parts: usize, bits: u64 },

    #[error("graphs {0} and {1} are 1-WL indistinguishable")]
    IndistinguishablePair(usize, usize),
    #[error("histogram code collision: {0}")]
    CodeCollision(String),
    #[error("insufficient code separation: {0}")]
    InsufficientSeparation(String),
    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("ledger invariant violated: {0}")]
    LedgerViolation(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// Process exit code: 2 parse, 3 I/O, 4 internal verification defect,
    /// 5 precondition on inputs.
    pub fn exit_code(&self) -> i32 {
        use Error::*;
        match self {
            Parse(_) | SchemaMismatch { .. } | EndpointOutOfRange { .. } | SelfLoop(_)
            | DuplicateEdge(..) | NonDyadic(_) => 2,
            MissingFile(_) | Io { .. } | Http { .. } | CorruptArchive(_) | UnknownDataset(_)
            | Offline(_) => 3,
            LedgerViolation(_) | VerificationFailed(_) => 4,
            _ => 5,
        }
    }
}

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("invalid layout {layout:?}: {message}")]
    Validation { layout: String, message: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("empty layout {0:?}")]
    EmptyLayout(String),

    #[error("multiset mismatch between layouts {a:?} and {b:?}")]
    MultisetMismatch { a: String, b: String },

    #[error("no matching of cardinality {required} exists (best has {found})")]
    Infeasible { required: usize, found: usize },

    #[error("dimension mismatch: expected {expected:?}, got {found:?}")]
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("sigma must be positive and finite, got {0}")]
    InvalidSigma(f64),

    #[error("category {category} of layout {layout:?} captures no grid points at grid {grid}")]
    DegenerateSampling { layout: String, category: u32, grid: usize },

    #[error("no comparable pairs: the collections share no label multiset")]
    NoComparablePairs,

    #[error("need at least {required} layouts, got {found}")]
    TooFewLayouts { required: usize, found: usize },

    #[error("median pairwise EMD of the reference collection is zero")]
    DegenerateSigma,

    #[error("label noise needs at least two categories, vocabulary has {0}")]
    VocabularyTooSmall(usize),

    #[error("unknown measure {0:?}")]
    UnknownMeasure(String),

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("all scores tied; Kendall's tau is undefined")]
    AllTied,

    #[error("pairs {0:?} do not share a label multiset")]
    MultisetPrecheckFailed(Vec<usize>),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed pairwise matrix file: {0}")]
    MatrixFormat(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Errors that mean "the measure is undefined for these inputs" rather
    /// than bad input files or bad usage.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::EmptyLayout(_)
                | Error::MultisetMismatch { .. }
                | Error::Infeasible { .. }
                | Error::DegenerateSampling { .. }
                | Error::NoComparablePairs
                | Error::TooFewLayouts { .. }
                | Error::DegenerateSigma
                | Error::VocabularyTooSmall(_)
                | Error::AllTied
                | Error::MultisetPrecheckFailed(_)
        )
    }
}

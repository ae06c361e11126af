//! Error type shared by the estimation core.

use thiserror::Error;

/// Errors raised by data handling and estimation routines.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("missing required column `{0}` in CSV header")]
    MissingColumn(&'static str),

    #[error("row {row}: cannot parse {field} value `{value}`")]
    Parse {
        row: usize,
        field: &'static str,
        value: String,
    },

    #[error("duplicate observation for subject `{subject}` at time {time}")]
    DuplicateObservation { subject: String, time: f64 },

    #[error("invalid trajectory for subject `{subject}`: {reason}")]
    InvalidTrajectory { subject: String, reason: String },

    #[error("dataset must contain at least one trajectory")]
    EmptyDataset,

    #[error("duplicate subject id `{0}` in dataset")]
    DuplicateSubject(String),

    #[error("training size {n_train} must satisfy 0 < n_train < {n}")]
    SplitSize { n_train: usize, n: usize },

    #[error("parameter `{name}` out of range: {reason}")]
    Parameter { name: &'static str, reason: String },

    #[error("bandwidth too small: degenerate local fit at evaluation point {point}")]
    BandwidthTooSmall { point: f64 },

    #[error("no valid bandwidth among the candidates")]
    NoValidBandwidth,

    #[error("degenerate knots: {0}")]
    DegenerateKnots(String),

    #[error("invalid basis specification: {0}")]
    BasisSpec(String),

    #[error("time {time} outside basis boundary range [{lo}, {hi}]")]
    OutsideBasisRange { time: f64, lo: f64, hi: f64 },

    #[error("covariance unidentifiable: no subject has two or more observations")]
    CovarianceUnidentifiable,

    #[error("matrix not symmetric: max |G - G^T| = {max_asym}")]
    NotSymmetric { max_asym: f64 },

    #[error("time {time} outside window [{lo}, {hi}]")]
    Extrapolation { time: f64, lo: f64, hi: f64 },

    #[error("design matrix rank deficient: rank {rank} < {cols} columns")]
    RankDeficient { rank: usize, cols: usize },

    #[error("model file error: {0}")]
    ModelIo(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Result alias used throughout the crate.
pub type Result<T, E = CoreError> = std::result::Result<T, E>;

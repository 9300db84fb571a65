//! Error type shared by every spectral-core operation.

use thiserror::Error;

/// Failures raised by grid construction, field validation and the guarded
/// operators (inverse derivatives, x-weighted norms).
#[derive(Debug, Error)]
pub enum SpectralError {
    /// The number of grid points must be a power of two (at least 4).
    #[error("grid size {0} is not a power of two >= 4")]
    BadSize(usize),
    /// The domain length must be finite and positive.
    #[error("grid length must be finite and positive, got {0}")]
    BadLength(f64),
    /// A guard tolerance was negative or not finite.
    #[error("invalid guard setting `{name}` = {value}")]
    BadGuard { name: &'static str, value: f64 },
    /// A sample vector does not match the grid size.
    #[error("size mismatch: grid has {expected} points, data has {got}")]
    SizeMismatch { expected: usize, got: usize },
    /// Two operands live on different grids.
    #[error("operands live on different grids ({left_n} points / L = {left_len} vs {right_n} points / L = {right_len})")]
    GridMismatch {
        left_n: usize,
        left_len: f64,
        right_n: usize,
        right_len: f64,
    },
    /// A sample is NaN or infinite.
    #[error("non-finite sample at index {0}")]
    NonFinite(usize),
    /// Dyadic indices are non-negative.
    #[error("negative dyadic index {0}")]
    NegativeIndex(i64),
    /// The field carries a mean that an inverse derivative cannot absorb.
    #[error("field mean {mean:e} exceeds the mean tolerance {tol:e}")]
    NonZeroMean { mean: f64, tol: f64 },
    /// An x-weighted operation was requested on a field that does not decay
    /// towards the edges of the periodic box.
    #[error("field is not localized: boundary ratio {ratio:e} exceeds {tol:e} (weight order {order})")]
    NotLocalized { ratio: f64, tol: f64, order: u32 },
    /// A malformed binary snapshot.
    #[error("bad snapshot: {0}")]
    BadSnapshot(String),
    /// Underlying I/O failure while reading or writing a snapshot.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Convenience alias.
pub type Result<T> = std::result::Result<T, SpectralError>;

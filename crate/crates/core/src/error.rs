use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix dimension {0} is odd; Pfaffians need an even dimension")]
    OddDimension(usize),

    #[error("antisymmetry violated at ({i},{j}): |A_ij + A_ji| = {residual:e}")]
    AntisymmetryViolation { i: usize, j: usize, residual: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("series cutoff too small: estimated tail {tail:e} exceeds {tol:e}")]
    CutoffTooSmall { tail: f64, tol: f64 },

    #[error("Fredholm series diverging: |term {n}| = {magnitude:e} still growing")]
    SeriesDivergence { n: usize, magnitude: f64 },

    #[error("quadrature panel too short: kernel tail bound {tail:e} exceeds {tol:e}")]
    PanelTooShort { tail: f64, tol: f64 },

    #[error("discretized Fredholm determinant is not positive ({0:e}); refine the panel")]
    NegativeDeterminant(f64),

    #[error("matrix-route index window too small: boundary influence {0:e}")]
    WindowTooSmall(f64),

    #[error("query point ({x}, {t}) outside the configuration region")]
    OutOfRegion { x: f64, t: f64 },

    #[error("points not in general position: duplicate {coord} value {value}")]
    GeneralPosition { coord: &'static str, value: f64 },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

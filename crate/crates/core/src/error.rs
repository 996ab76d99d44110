use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension n = {0} is outside the supported range 2..=8")]
    UnsupportedDimension(usize),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("axis {axis} out of range 1..={n}")]
    AxisOutOfRange { axis: usize, n: usize },
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("vector is not on the upper hyperboloid sheet (defect {defect:e})")]
    NotOnSheet { defect: f64 },
    #[error("vector is not a unit de Sitter vector (defect {defect:e})")]
    NotDeSitter { defect: f64 },
    #[error("omega is not a unit vector (defect {defect:e})")]
    NotUnit { defect: f64 },
    #[error("matrix does not preserve the Minkowski form (defect {defect:e})")]
    NotLorentz { defect: f64 },
    #[error("matrix is not orthochronous")]
    NotOrthochronous,
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("|t| = {t} is in the double-precision overflow regime (|t| > 700)")]
    Overflow { t: f64 },
}

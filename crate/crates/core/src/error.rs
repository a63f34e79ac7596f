use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// Parameters or inputs outside the model's domain.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("matrix must be square, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// Two eigenvalues closer than the relative gap threshold; the biorthogonal
    /// normalization is ill-conditioned (exceptional point or repeated root).
    #[error("degenerate spectrum: relative eigenvalue gap {gap:e} below threshold {threshold:e}")]
    DegenerateSpectrum { gap: f64, threshold: f64 },

    #[error("eigenvalue iteration did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("norm factor {re:e}{im:+e}i is not positive")]
    NonPositiveNorm { re: f64, im: f64 },

    #[error("step {step} exceeds resolution limit {limit} (period/50)")]
    StepTooLarge { step: f64, limit: f64 },

    #[error("averaging window [{from}, {to}] shorter than {required} (five periods)")]
    WindowTooShort { from: f64, to: f64, required: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_)
            | Error::StepTooLarge { .. }
            | Error::WindowTooShort { .. }
            | Error::Config(_) => 2,
            Error::NonSquare { .. }
            | Error::Dimension(_)
            | Error::DegenerateSpectrum { .. }
            | Error::NoConvergence(_)
            | Error::NonPositiveNorm { .. } => 3,
            Error::Io(_) => 4,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

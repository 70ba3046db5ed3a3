use thiserror::Error;

#[derive(Debug, Error)]
pub enum NumError {
    #[error("matrix is not anti-Hermitian (|X + X*| = {residual:.3e})")]
    NotAntiHermitian { residual: f64 },

    #[error("matrix is not unitary (|U*U - I| = {residual:.3e})")]
    NotUnitary { residual: f64 },

    #[error("size mismatch: expected {expected}, got {got}")]
    Size { expected: usize, got: usize },

    #[error("point with pi*|z|^2 = {value:.6} lies outside the open disc")]
    OutsideDisc { value: f64 },

    #[error("the form lambda is undefined at z = 0")]
    AtOrigin,

    #[error("probe is not horizontal and tangent to the sphere (defect {defect:.3e})")]
    NotHorizontal { defect: f64 },

    #[error("logarithm undefined: eigenvalue within {gap:.1e} of the branch cut")]
    BranchCut { gap: f64 },

    #[error("finite differences did not settle after {attempts} resamples")]
    FiniteDifference { attempts: usize },

    #[error("unknown model `{0}` (expected disc, sphere, double, fused, exp_cotangent)")]
    UnknownModel(String),

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error(transparent)]
    Core(#[from] qhimpl_core::Error),
}

pub type Result<T> = std::result::Result<T, NumError>;

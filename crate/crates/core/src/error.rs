use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("binomial C({n}, k) is outside the exact range (n <= {max})")]
    BinomialCapacity { n: u32, max: u32 },

    #[error("bath of {n} spins exceeds the supported maximum of {max}")]
    BathCapacity { n: usize, max: usize },

    #[error("full product space of {sites} spins exceeds the dense cap of {max}")]
    FullSpaceCapacity { sites: usize, max: usize },

    #[error("state is not normalized: squared norm {norm_sq}")]
    NotNormalized { norm_sq: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("initial qubit state must be |up> for the closed-form observables")]
    NotSpinUp,

    #[error("reduced concurrence undefined: initial pair concurrence is zero")]
    ZeroInitialConcurrence,

    #[error("no revival prediction for anisotropy g1'/g1 = {ratio}")]
    NoRevivalPrediction { ratio: f64 },

    #[error("integrator step size underflow at t = {t}")]
    StepUnderflow { t: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, OptimError>;

#[derive(Debug, Error)]
pub enum OptimError {
    #[error("objective vectors differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("fitness evaluation failed for genome {genome:?}: {message}")]
    Fitness { genome: Vec<f64>, message: String },
}

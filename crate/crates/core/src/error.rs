use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("parameter `{0}` is not assigned")]
    MissingParameter(String),
    #[error("index {index} out of range for a {dim}-dimensional algebra")]
    IndexOutOfRange { index: String, dim: usize },
    #[error("operation needs a finite-dimensional algebra")]
    NotFinite,
    #[error("operation needs parameter-free data, found parameters {0:?}")]
    Parametric(Vec<String>),
    #[error("an integer-indexed algebra needs an explicit finite window")]
    UnboundedWindow,
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("elements belong to different calculi")]
    CalculusMismatch,
    #[error("calculus `{0}` has not passed the consistency conditions")]
    UnverifiedCalculus(String),
    #[error("expected an element of degree 0")]
    NotDegreeZero,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix determinant {0} is not an invertible constant")]
    NotInvertible(String),
    #[error("algebra is not semisimple")]
    NotSemisimple,
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

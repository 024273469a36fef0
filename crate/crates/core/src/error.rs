use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible roots of unity: order {0} and order {1}")]
    IncompatibleRootOrder(u32, u32),
    #[error("grades belong to different groups")]
    GroupMismatch,
    #[error("operands belong to different presentations")]
    PresentationMismatch,
    #[error("form spaces use different grading characters")]
    PhiMismatch,
    #[error("element is not homogeneous")]
    NonHomogeneous,
    #[error("the zero element has no grade")]
    ZeroElement,
    #[error("ill-defined data: {0}")]
    IllDefined(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("form degree would be negative")]
    DegreeUnderflow,
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable machine-readable name of the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::IncompatibleRootOrder(..) => "IncompatibleRootOrder",
            Error::GroupMismatch => "GroupMismatch",
            Error::PresentationMismatch => "PresentationMismatch",
            Error::PhiMismatch => "PhiMismatch",
            Error::NonHomogeneous => "NonHomogeneous",
            Error::ZeroElement => "ZeroElement",
            Error::IllDefined(_) => "IllDefined",
            Error::DegreeMismatch(_) => "DegreeMismatch",
            Error::DegreeUnderflow => "DegreeUnderflow",
            Error::InvalidPresentation(_) => "InvalidPresentation",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

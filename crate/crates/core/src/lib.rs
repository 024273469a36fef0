pub mod algebra;
pub mod calculus;
pub mod checks;
pub mod cohomology;
pub mod derivation;
pub mod error;
pub mod forms;
pub mod functoriality;
pub mod grading;
pub mod linalg;
pub mod sample;
pub mod scalar;

pub use algebra::{AlgebraElement, Monomial, Presentation};
pub use calculus::{decompose, FieldValuedForm, OmegaDerivation};
pub use cohomology::{betti, component_basis, ComplexSlice};
pub use derivation::Derivation;
pub use error::{Error, Result};
pub use forms::{Form, FormSpace, Tensor};
pub use functoriality::{naturality_report, AlgebraHom, NaturalityReport};
pub use grading::{BiGrade, Cocycle, ExtendedCocycle, Grade, GradeGroup, GradedUnitHom};
pub use scalar::Scalar;

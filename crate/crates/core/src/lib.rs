//! Exact computations with minimal Sullivan algebras: cohomology (bigraded by
//! word length when the differential allows it), the rational Toomer
//! invariant, the Wang and Gysin long exact sequences, and checkers for the
//! structural results relating them.
//!
//! ```
//! use sullivan::{library, CohomologyEngine, toomer};
//!
//! let model = library::lookup("example-5gen").unwrap();
//! let engine = CohomologyEngine::new(model);
//! assert_eq!(toomer::toomer_of_algebra(&engine).unwrap(), 3);
//! ```

pub mod algebra;
pub mod cohomology;
pub mod library;
pub mod linalg;
pub mod model;
pub mod parse;
pub mod random;
pub mod sequences;
pub mod toomer;
pub mod verify;

pub use algebra::{Derivation, FreeAlgebra, Generator, Monomial, Polynomial};
pub use cohomology::{CohomologyClass, CohomologyEngine, CohomologyError, CohomologyGroup, Slot};
pub use linalg::{RatMatrix, Rational};
pub use model::{LengthProfile, ModelError, SullivanModel, Violation, ViolationKind};
pub use parse::{parse_model, print_model, ParseError};

/// The guide's chapters, compiled as doc-tests so the snippets stay current.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/models.md")]
    mod models {}
    #[doc = include_str!("../../../book/src/cohomology.md")]
    mod cohomology {}
    #[doc = include_str!("../../../book/src/toomer.md")]
    mod toomer {}
    #[doc = include_str!("../../../book/src/sequences.md")]
    mod sequences {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}

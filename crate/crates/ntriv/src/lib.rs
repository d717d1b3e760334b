//! Finite commutative rings, finite modules, and the truncated graded
//! extension rings built from them (`R ⋉ M₁ ⋉ ⋯ ⋉ Mₙ`, the n-trivial
//! extension of `R` by a family of modules and bilinear product maps).
//!
//! The crate constructs these objects as explicit Cayley tables, classifies
//! their elements and ideals both by closed-form descriptions and by brute
//! force, and reports whether the two agree. Everything is desk-scale and
//! exhaustive: orders are small enough that every law can be checked on
//! every element.
//!
//! Layout:
//! - [`ring`]: finite commutative rings with identity as flat tables.
//! - [`module`]: finite unitary modules over such rings, submodules,
//!   associate/primitivity predicates.
//! - [`maps`]: families of bilinear product maps `Mᵢ × Mⱼ → Mᵢ₊ⱼ` and their
//!   symmetry/associativity validation.
//! - [`extension`]: the extension ring itself — arithmetic, matrix view,
//!   canonical homomorphisms, gradings, closed-form element classification,
//!   and structural isomorphisms.
//! - [`ideal`]: ideal lattices, homogeneity analysis, and ring-property
//!   verdicts (chained, arithmetical, PIR, ZPI, π-ring).
//! - [`localize`]: localization of rings, modules, and extensions at
//!   multiplicative sets, with the explicit normalization isomorphism.
//! - [`factor`]: associate relations, irreducibility profiles,
//!   U-factorizations, and the divisibility theorem suite.
//! - [`report`]: structured, deterministic check reports.
//! - [`specdoc`]: the line-oriented instance description format used by the
//!   CLI.

pub mod extension;
pub mod factor;
pub mod ideal;
pub mod localize;
pub mod maps;
pub mod module;
pub mod report;
pub mod ring;
pub mod specdoc;

pub use extension::{ExtElement, GradingMonoid, NTrivialExtension, Strictness, ToeplitzMatrix};
pub use ideal::{HomogeneousData, Ideal};
pub use localize::{LocalizedModule, LocalizedRing, MultiplicativeSet};
pub use maps::{MapOrigin, ProductMapFamily, ValidationReport};
pub use module::{FiniteModule, Submodule};
pub use report::{CheckRecord, ReportDocument, Verdict};
pub use ring::{Elem, FiniteRing, RingClassification, RingPredicates, ValidationPolicy};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A required algebraic law failed; carries the law name and a witness.
    #[error("axiom violation: {law} fails at {witness}")]
    AxiomViolation { law: String, witness: String },
    /// Malformed construction request (wrong arity, improper ideal, ...).
    #[error("invalid construction: {0}")]
    InvalidConstruction(String),
    /// An enumeration exceeded its configured cap.
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    /// A theorem check was requested on an instance that does not satisfy
    /// the theorem's hypotheses.
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    /// A closed form and a brute-force computation disagreed.
    #[error("disagreement in {check}: witness {witness}")]
    Disagreement { check: String, witness: String },
    /// Operands belong to different ambient structures.
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    /// Spec-file parse error with location.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

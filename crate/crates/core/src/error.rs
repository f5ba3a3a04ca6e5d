use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// What went wrong while assembling a category from its raw description.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CategoryFault {
    InvalidName,
    DuplicateName,
    ReservedName,
    Dangling,
    IllTypedComposite,
    ConflictingComposite,
    MissingComposite,
    Unit,
    Associativity,
}

impl CategoryFault {
    /// Faults that describe a broken file rather than a failed law.
    pub fn is_structural(self) -> bool {
        !matches!(self, Self::MissingComposite | Self::Unit | Self::Associativity)
    }
}

impl fmt::Display for CategoryFault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::InvalidName => "invalid identifier",
            Self::DuplicateName => "duplicate name",
            Self::ReservedName => "reserved name",
            Self::Dangling => "dangling reference",
            Self::IllTypedComposite => "ill-typed composite",
            Self::ConflictingComposite => "conflicting composite",
            Self::MissingComposite => "missing composite",
            Self::Unit => "unit law",
            Self::Associativity => "associativity",
        };
        f.write_str(s)
    }
}

/// The two triangle identities of the adjunction between lenses and cofunctors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Triangle {
    /// `counit(L l) . L(unit l) = 1` for a lens `l`.
    Lens,
    /// `R(counit phi) . unit(R phi) = 1` for a cofunctor `phi`.
    Cofunctor,
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Lens => f.write_str("counit . L(unit) = 1"),
            Self::Cofunctor => f.write_str("R(counit) . unit = 1"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed category ({fault}): {witness}")]
    MalformedCategory { fault: CategoryFault, witness: String },
    #[error("`{g}` and `{f}` are not composable")]
    NotComposable { g: String, f: String },
    #[error("not a functor: {0}")]
    NotAFunctor(String),
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("no lift chosen for {0}")]
    LiftMissing(String),
    #[error("chosen lift has the wrong source: {0}")]
    LiftSource(String),
    #[error("axiom ({axiom}) violated: {witness}")]
    LawViolation { axiom: u8, witness: String },
    #[error("lift not applicable: {0}")]
    NotApplicable(String),
    #[error("left leg is not bijective on objects: {0}")]
    NotBoo(String),
    #[error("right leg is not a discrete opfibration: {0}")]
    NotDopf(String),
    #[error("object maps do not commute: {0}")]
    ObjectMapMismatch(String),
    #[error("chosen lift not preserved: {0}")]
    LiftNotPreserved(String),
    #[error("get not preserved: {0}")]
    GetNotPreserved(String),
    #[error("triangle identity {which} fails: {witness}")]
    TriangleViolation { which: Triangle, witness: String },
    #[error("comonad law {law} fails: {witness}")]
    ComonadLawViolation { law: &'static str, witness: String },
    #[error("coalgebra counit law fails: {0}")]
    CounitLawViolation(String),
    #[error("coalgebra comultiplication law fails: {0}")]
    ComultLawViolation(String),
    #[error("enumeration bounds exceeded: {0}")]
    BoundsExceeded(String),
    #[error("malformed input: {0}")]
    MalformedInput(String),
}

impl Error {
    /// True when the error means the input could not be read as a structure
    /// at all, as opposed to a structure that fails one of its laws.
    pub fn is_malformed(&self) -> bool {
        match self {
            Self::MalformedCategory { fault, .. } => fault.is_structural(),
            Self::NotComposable { .. }
            | Self::BoundaryMismatch(_)
            | Self::UnknownObject(_)
            | Self::UnknownMorphism(_)
            | Self::NotApplicable(_)
            | Self::BoundsExceeded(_)
            | Self::MalformedInput(_) => true,
            _ => false,
        }
    }

    pub(crate) fn category(fault: CategoryFault, witness: impl Into<String>) -> Self {
        Self::MalformedCategory { fault, witness: witness.into() }
    }

    pub(crate) fn axiom(axiom: u8, witness: impl Into<String>) -> Self {
        Self::LawViolation { axiom, witness: witness.into() }
    }
}

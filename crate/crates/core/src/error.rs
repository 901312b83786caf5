use thiserror::Error;

/// Errors raised by the geometric kernel and the map implementations.
///
/// Degenerate configurations are never papered over with sentinel values;
/// every non-generic input surfaces as one of these variants. The `At*`
/// variants wrap an inner error with the position where it occurred.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("cannot join coincident points")]
    DegenerateJoin,
    #[error("cannot meet identical lines")]
    DegenerateMeet,
    #[error("diagonals are not coplanar")]
    NonCoplanarDiagonals,
    #[error("cross ratio is indeterminate (0/0)")]
    IndeterminateCrossRatio,
    #[error("harmonic solve is indeterminate")]
    ZeroDenominator,
    #[error("projection undefined at the vertical point at infinity")]
    UndefinedProjection,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("vertex at infinity where an affine point is required")]
    InfiniteVertex,
    #[error("polygon is not axis-aligned")]
    NotAxisAligned,
    #[error("random sampling exhausted its retry budget")]
    ExhaustedSampling,
    #[error("points coincide where distinct points are required")]
    Coincident,
    #[error("point lies on the mirror axis y = 0")]
    OnMirrorAxis,
    #[error("lifted sequence is affinely dependent")]
    NotAJoint,
    #[error("intersection is not transverse")]
    NonTransverse,
    #[error("span has unexpected dimension")]
    DegenerateSpan,
    #[error("connecting lines are not parallel")]
    NotAPrism,
    #[error("sequences span a {dim}-dimensional flat, more than n = {n}")]
    HullTooLarge { dim: usize, n: usize },
    #[error("instance does not match the requested variant")]
    VariantMismatch,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("at label {label}: {source}")]
    AtLabel {
        label: i64,
        #[source]
        source: Box<GeomError>,
    },
    #[error("at index {index}: {source}")]
    AtIndex {
        index: usize,
        #[source]
        source: Box<GeomError>,
    },
    #[error("at step {step}: {source}")]
    AtStep {
        step: usize,
        #[source]
        source: Box<GeomError>,
    },
}

impl GeomError {
    pub fn at_label(self, label: i64) -> Self {
        GeomError::AtLabel {
            label,
            source: Box::new(self),
        }
    }

    pub fn at_index(self, index: usize) -> Self {
        GeomError::AtIndex {
            index,
            source: Box::new(self),
        }
    }

    pub fn at_step(self, step: usize) -> Self {
        GeomError::AtStep {
            step,
            source: Box::new(self),
        }
    }

    /// The innermost error with all positional wrappers removed.
    pub fn root(&self) -> &GeomError {
        match self {
            GeomError::AtLabel { source, .. }
            | GeomError::AtIndex { source, .. }
            | GeomError::AtStep { source, .. } => source.root(),
            other => other,
        }
    }

    /// True for errors that mean "this input is non-generic", as opposed to
    /// malformed input.
    pub fn is_degeneracy(&self) -> bool {
        !matches!(
            self.root(),
            GeomError::DimensionMismatch { .. }
                | GeomError::InvalidInput(_)
                | GeomError::Parse(_)
                | GeomError::VariantMismatch
        )
    }
}

pub type Result<T> = std::result::Result<T, GeomError>;

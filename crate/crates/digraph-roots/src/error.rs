//! Crate-wide error type.

/// Why a digraph failed to qualify as a complete subdivision.
///
/// Each variant carries a witness vertex or arc so callers can point at the
/// offending spot instead of re-deriving it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubdivisionDefect {
    /// A loop cannot alternate between core and non-core endpoints.
    Loop { vertex: usize },
    /// Core/non-core alternation forces this vertex into both sides.
    AlternationConflict { vertex: usize },
    /// Alternation forces a vertex outside the core even though its degrees
    /// disqualify it from being a subdivision vertex.
    NonThinOutsideCore { vertex: usize },
    /// Two subdivision vertices contract to the same parent arc.
    DuplicatedArc { first: usize, second: usize },
}

impl std::fmt::Display for SubdivisionDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SubdivisionDefect::Loop { vertex } => {
                write!(f, "vertex {vertex} carries a loop")
            }
            SubdivisionDefect::AlternationConflict { vertex } => {
                write!(f, "core alternation assigns vertex {vertex} to both sides")
            }
            SubdivisionDefect::NonThinOutsideCore { vertex } => {
                write!(
                    f,
                    "vertex {vertex} is forced outside the core but does not have \
                     in-degree and out-degree exactly one"
                )
            }
            SubdivisionDefect::DuplicatedArc { first, second } => {
                write!(
                    f,
                    "vertices {first} and {second} share both their unique in-neighbor \
                     and unique out-neighbor"
                )
            }
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a digraph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("not a bijection: {reason}")]
    NotABijection { reason: String },

    #[error("disjoint union of an empty list has no vertex set")]
    EmptyUnion,

    #[error("{context} requires a nonempty digraph")]
    EmptyDigraph { context: &'static str },

    #[error("k = {k} is out of range here (minimum {min})")]
    KTooSmall { k: u32, min: u32 },

    #[error("vertex counts differ: {left} vs {right}")]
    VertexCountMismatch { left: usize, right: usize },

    #[error("exhaustive root enumeration is capped at {max} vertices, got {n}")]
    ExhaustiveGuard { n: usize, max: usize },

    #[error("permutation enumeration is capped at {max} vertices, got {n}")]
    PermutationGuard { n: usize, max: usize },

    #[error("{parts} parts paired with {isos} isomorphisms")]
    PartCountMismatch { parts: usize, isos: usize },

    #[error("map {index} is not an isomorphism onto part {index}: {reason}")]
    NotAnIsomorphism { index: usize, reason: String },

    #[error("not a complete subdivision: {0}")]
    NotASubdivision(SubdivisionDefect),

    #[error("expected exactly {expected} weakly connected components, found {found}")]
    ComponentCount { expected: usize, found: usize },

    #[error("the candidate digraph is not a {k}-th root of the target")]
    NotARoot { k: u32 },

    #[error("vertex {vertex} has no outgoing arcs")]
    ZeroOutDegree { vertex: usize },

    #[error("component {component} has {count} vertices of in-degree zero, expected exactly one")]
    SourceCountPerComponent { component: usize, count: usize },

    #[error("expected exactly {expected} vertices of in-degree zero, found {found}")]
    SourceSetSize { expected: usize, found: usize },

    #[error("root hypothesis fails: {check}{}", fmt_witness(.witness))]
    HypothesisViolation {
        check: &'static str,
        witness: Option<usize>,
    },

    #[error("root structure inconsistent: {claim}{}", fmt_witness(.witness))]
    RootInconsistency {
        claim: &'static str,
        witness: Option<usize>,
    },

    #[error("free-path cover is incomplete; uncovered vertices {residue:?}")]
    IncompleteCover { residue: Vec<usize> },

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("infeasible bounds: {reason}")]
    InfeasibleBounds { reason: String },

    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

fn fmt_witness(witness: &Option<usize>) -> String {
    match witness {
        Some(v) => format!(" (witness vertex {v})"),
        None => String::new(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;

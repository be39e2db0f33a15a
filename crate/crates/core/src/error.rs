use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Resource guards that can be exceeded by a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GuardKind {
    LcmLattice,
    TaylorGenerators,
    HomologyVertices,
    ForestFacets,
}

impl fmt::Display for GuardKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GuardKind::LcmLattice => "lcm-lattice size",
            GuardKind::TaylorGenerators => "Taylor generator count",
            GuardKind::HomologyVertices => "homology vertex count",
            GuardKind::ForestFacets => "forest facet count",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    InvalidContext(String),
    ContextMismatch,
    ExponentLength { expected: usize, found: usize },
    ExponentOverflow,
    InvalidPower(u32),
    ZeroIdeal,
    UnitIdeal,
    NotEquigenerated,
    NotSquarefree,
    NotMatroidal,
    GuardExceeded { guard: GuardKind, limit: usize, found: usize },
    /// A guard tripped while computing the `power`-th power of an ideal.
    AtPower { power: u32, source: Box<Error> },
    HeuristicSpread,
    IndexOutOfRange { index: usize, bound: usize },
    EmptyEdgeSet,
    IsolatedVertices,
    InvalidGraph(String),
    InvalidComplex(String),
    Precondition(String),
    InternalInconsistency(String),
}

impl Error {
    pub fn is_guard(&self) -> bool {
        match self {
            Error::GuardExceeded { .. } => true,
            Error::AtPower { source, .. } => source.is_guard(),
            _ => false,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidContext(msg) => write!(f, "invalid context: {msg}"),
            Error::ContextMismatch => f.write_str("operands live in different polynomial contexts"),
            Error::ExponentLength { expected, found } => {
                write!(f, "exponent vector has length {found}, context has {expected} variables")
            }
            Error::ExponentOverflow => f.write_str("exponent overflow"),
            Error::InvalidPower(k) => write!(f, "power must be at least 1, got {k}"),
            Error::ZeroIdeal => f.write_str("the zero ideal is not accepted here"),
            Error::UnitIdeal => f.write_str("the unit ideal is not accepted here"),
            Error::NotEquigenerated => f.write_str("ideal is not generated in a single degree"),
            Error::NotSquarefree => f.write_str("ideal is not squarefree"),
            Error::NotMatroidal => f.write_str("ideal does not satisfy the exchange property"),
            Error::GuardExceeded { guard, limit, found } => {
                write!(f, "resource guard exceeded: {guard} is {found}, limit {limit}")
            }
            Error::AtPower { power, source } => write!(f, "at power {power}: {source}"),
            Error::HeuristicSpread => {
                f.write_str("analytic spread is only a heuristic lower bound; an exact value is required")
            }
            Error::IndexOutOfRange { index, bound } => {
                write!(f, "index {index} out of range 1..={bound}")
            }
            Error::EmptyEdgeSet => f.write_str("graph has no edges"),
            Error::IsolatedVertices => f.write_str("graph has isolated vertices"),
            Error::InvalidGraph(msg) => write!(f, "invalid graph: {msg}"),
            Error::InvalidComplex(msg) => write!(f, "invalid simplicial complex: {msg}"),
            Error::Precondition(msg) => write!(f, "precondition failed: {msg}"),
            Error::InternalInconsistency(msg) => write!(f, "internal inconsistency: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

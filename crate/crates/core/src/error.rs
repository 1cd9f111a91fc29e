use alloc::string::String;

use crate::lattice::TorusCurve;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("({p},{q}) is not a primitive pair")]
    NotPrimitive { p: i64, q: i64 },
    #[error("integer overflow")]
    Overflow,
    #[error("matrix [[{a},{b}],[{c},{d}]] does not have determinant 1")]
    NotUnimodular { a: i64, b: i64, c: i64, d: i64 },
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("{0} is not in the open positive quadrant")]
    NotInPositiveQuadrant(TorusCurve),
    #[error("{0} is not in X1")]
    NotInX1(TorusCurve),
    #[error("the vertex (1,0) has no children")]
    SpecialVertex,

    #[error("colors must be non-empty strings")]
    EmptyColor,
    #[error("expected {expected} palette colors, got {actual}")]
    PaletteSize { expected: usize, actual: usize },
    #[error("palette color {0:?} appears more than once")]
    DuplicateColor(String),
    #[error("level {0} exceeds the supported maximum")]
    LevelTooLarge(u64),
    #[error("{0} is not a vertex below the anchor level")]
    NotShallow(TorusCurve),
    #[error("missing anchor color for word {0:?}")]
    MissingAnchor(String),
    #[error("anchor word {0:?} has the wrong length or alphabet")]
    BadAnchorWord(String),
    #[error("missing exception color for {0}")]
    MissingException(TorusCurve),
    #[error("duplicate key {0}")]
    DuplicateKey(String),
    #[error("color map does not cover {0:?}")]
    MissingColor(String),
    #[error("the split puts every anchor color on one side")]
    TrivialSplit,

    #[error("invalid surface: genus {genus}, boundary {boundary}")]
    InvalidSurface { genus: u32, boundary: u32 },
    #[error("expected {expected} coordinates, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("intersection numbers must be non-negative")]
    NegativeIntersection,
    #[error("index {index} is out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("index {0} is listed twice")]
    DuplicateIndex(usize),
    #[error("twist on curve {0} acts trivially")]
    NotInteresting(usize),
    #[error("empty range {start}..={end}")]
    InvalidRange { start: i64, end: i64 },
    #[error("lattice dimension {0} is not supported here")]
    BadDimension(usize),
    #[error("point has {actual} coordinates, lattice has dimension {expected}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("shift along axis {axis} changes infinitely many colors")]
    NotAlmostInvariant { axis: usize },
}

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("twin is not a fixed-point-free involution at half-edge {0}")]
    BrokenInvolution(usize),
    #[error("rotation around vertex {0} is not a single cycle")]
    BrokenRotation(usize),
    #[error("map is disconnected")]
    Disconnected,
    #[error("Euler characteristic mismatch: V - E + F = {0}")]
    NonPlanar(i64),
    #[error("malformed half-edge table: {0}")]
    MalformedTable(String),
    #[error("empty source set")]
    EmptySourceSet,
    #[error("invalid Dyck path: {0}")]
    InvalidDyckPath(String),
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("marked tree is not an admissible exploration outcome")]
    InadmissibleMarkedTree,
    #[error("inadmissible parameters: {0}")]
    InadmissibleParameters(String),
    #[error("core of the map is degenerate")]
    DegenerateCore,
    #[error("acceptance budget exhausted after {attempts} attempts")]
    AcceptanceTooLow { attempts: u64 },
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("arc of {0} boundary edges does not fit the boundary")]
    ArcTooLarge(usize),
    #[error("size mismatch: boundary half-perimeter {perimeter} vs tree size {tree}")]
    SizeMismatch { perimeter: usize, tree: usize },
    #[error("decoration is not a tree: {0}")]
    DecorationNotATree(String),
    #[error("window too short: half-perimeter {perimeter} < tree size {tree}")]
    WindowTooShort { perimeter: usize, tree: usize },
    #[error("spine too short: length {len}, need more than {need}")]
    SpineTooShort { len: usize, need: usize },
    #[error("exploration exhausted")]
    Exhausted,
    #[error("too few samples: {got} < {need}")]
    TooFewSamples { got: usize, need: usize },
    #[error("degenerate samples")]
    DegenerateSamples,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use std::fmt;

use thiserror::Error;

/// Location and cause of a malformed instance file.
#[derive(Debug)]
pub struct FormatError {
    pub line: usize,
    pub column: usize,
    pub field: Option<String>,
    pub message: String,
    pub cause: Option<Box<Error>>,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)?;
        if let Some(field) = &self.field {
            write!(f, ", field `{field}`")?;
        }
        write!(f, ": {}", self.message)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid triangle partition: {0}")]
    Partition(String),
    #[error("part {part} has even size {size}")]
    OddSize { part: usize, size: usize },
    #[error("edge ({0}, {1}) lies inside a single part")]
    Independence(usize, usize),
    #[error("vertex {vertex} has odd degree {degree} towards part {other_part}")]
    Eulerian {
        vertex: usize,
        other_part: usize,
        degree: usize,
    },
    #[error("invalid graph: {0}")]
    Graph(String),
    #[error("not a transversal: {0}")]
    Selection(String),
    #[error("invalid chord system: {0}")]
    ChordSystem(String),
    #[error("chords share endpoint {0}")]
    SharedEndpoint(usize),
    #[error("degenerate grid: {0}")]
    DegenerateGrid(String),
    #[error("coordinate {0} is zero")]
    ZeroCoordinate(usize),
    #[error("expected {expected} coordinates, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("value at vertex {0} is not on the grid")]
    NotOnGrid(usize),
    #[error("improper colouring: vertices {0} and {1} are adjacent and share a colour")]
    ImproperColoring(usize, usize),
    #[error("{what} needs {required}, budget is {budget}")]
    Size {
        what: &'static str,
        required: String,
        budget: String,
    },
    #[error("theorem violation (implementation bug): {0}")]
    TheoremViolation(String),
    #[error("format error: {0}")]
    Format(FormatError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn size(what: &'static str, required: impl fmt::Display, budget: impl fmt::Display) -> Self {
        Error::Size {
            what,
            required: required.to_string(),
            budget: budget.to_string(),
        }
    }

    pub(crate) fn violation(msg: impl Into<String>) -> Self {
        Error::TheoremViolation(msg.into())
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Size { .. })
    }

    pub fn is_violation(&self) -> bool {
        matches!(self, Error::TheoremViolation(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

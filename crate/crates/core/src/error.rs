use thiserror::Error;

use crate::diagram::ValidationReport;
use crate::format::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid diagram: {0}")]
    Invalid(ValidationReport),
    #[error("disconnected-graph: the curves do not form a connected graph")]
    DisconnectedGraph,
    #[error("non-surface: Euler characteristic {0} is not that of a closed orientable surface")]
    NonSurface(i64),
    #[error("genus-mismatch: declared genus {declared}, traced genus {traced}")]
    GenusMismatch { declared: u32, traced: u32 },
    #[error("not-realizable: opposite neighbouring sides share a G-class")]
    NotRealizable,
    #[error("not-two-classes: the G-class partition has {0} classes")]
    NotTwoClasses(usize),
    #[error("arc-inconsistent: singular arc {0} does not close at its endpoints")]
    ArcInconsistent(String),
    #[error("octant-inconsistent: {0}")]
    OctantInconsistent(String),
    #[error("site-stale: {0}")]
    SiteStale(String),
    #[error("bad-site: {0}")]
    BadSite(String),
    #[error("site-not-pipeable: {0}")]
    SiteNotPipeable(String),
    #[error("degenerate-result: {0}")]
    DegenerateResult(String),
    #[error("not-filling: {0}")]
    NotFilling(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("internal-inconsistency: {0}")]
    Internal(String),
}

impl Error {
    /// Stable short code, used by the CLI reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Invalid(_) => "invalid-diagram",
            Error::DisconnectedGraph => "disconnected-graph",
            Error::NonSurface(_) => "non-surface",
            Error::GenusMismatch { .. } => "genus-mismatch",
            Error::NotRealizable => "not-realizable",
            Error::NotTwoClasses(_) => "not-two-classes",
            Error::ArcInconsistent(_) => "arc-inconsistent",
            Error::OctantInconsistent(_) => "octant-inconsistent",
            Error::SiteStale(_) => "site-stale",
            Error::BadSite(_) => "bad-site",
            Error::SiteNotPipeable(_) => "site-not-pipeable",
            Error::DegenerateResult(_) => "degenerate-result",
            Error::NotFilling(_) => "not-filling",
            Error::Parse(e) => e.code.as_str(),
            Error::Internal(_) => "internal-inconsistency",
        }
    }

    /// Violations of equivalences that the theory guarantees.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::Internal(_) | Error::ArcInconsistent(_) | Error::OctantInconsistent(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use alloc::string::String;

/// Errors raised by group construction and the verifiers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("enumeration exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("element is not a member of the group")]
    ElementNotInGroup,
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup is not invariant under the acting element")]
    NotInvariant,
    #[error("the acting element does not permute the factors transitively")]
    NotTransitive,
    #[error("group is not abelian")]
    NotAbelian,
    #[error("degree {0} is excluded")]
    ExcludedDegree(usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("singular generator")]
    SingularGenerator,
    #[error("search failed: {0}")]
    SearchFailed(String),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = core::result::Result<T, Error>;

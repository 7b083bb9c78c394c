use thiserror::Error;

use crate::graph::{EdgeId, VertexId};
use crate::multipartite::AdmissibilityReport;

/// Errors produced by the decomposition machinery.
///
/// `Infeasible`, `StarNotFound` and `InternalInconsistency` are never raised on
/// valid inputs; seeing one means a theorem-level invariant failed to hold.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid part specification: {0}")]
    Parse(String),
    #[error("vertex {vertex} has odd degree {degree}")]
    OddDegreeVertex { vertex: VertexId, degree: usize },
    #[error("vertex set is not a symmetric orbit: {0}")]
    OrbitViolation(String),
    #[error("vertex {vertex} of the orbit carries a loop")]
    LoopOnOrbit { vertex: VertexId },
    #[error("no balancing exchange found for colour {colour} (implementation bug)")]
    Infeasible { colour: usize },
    #[error("factor {factor} separates the pair and neither vertex lies on a cycle")]
    PreconditionViolated { factor: usize },
    #[error("graph is not regular of even degree")]
    NotEvenRegular,
    #[error("degree {degree} of vertex {vertex} is not divisible by {divisor}")]
    DegreeNotDivisible {
        vertex: VertexId,
        degree: usize,
        divisor: usize,
    },
    #[error("no star of multiplicity {two_t} in the degree quotient")]
    StarNotFound { two_t: usize },
    #[error("edge {0} is not part of the graph")]
    UnknownEdge(EdgeId),
    #[error("graph is not admissible ({:?})", .0.reason)]
    NotAdmissible(AdmissibilityReport),
    #[error("order {order} exceeds the oracle bound {bound}")]
    OrderTooLarge { order: usize, bound: usize },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Returns `InternalInconsistency` with the formatted message unless `cond` holds.
macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err($crate::error::Error::InternalInconsistency(format!($($arg)+)));
        }
    };
}
pub(crate) use ensure;

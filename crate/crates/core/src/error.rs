use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cone is not a face of the given cone")]
    NotAFace,
    #[error("zero vector where a nonzero normal is required")]
    ZeroNormal,
    #[error("two normals define the same hyperplane")]
    ParallelNormals,
    #[error("hyperplane is not in the arrangement")]
    UnknownHyperplane,
    #[error("subspace is not a flat of the arrangement")]
    NotAFlat,
    #[error("operation requires a nonempty arrangement")]
    EmptyArrangement,
    #[error("operation requires an arrangement of at least two hyperplanes")]
    SingletonArrangement,
    #[error("cones {first} and {second} have different linear hulls")]
    LinearHullMismatch { first: usize, second: usize },
    #[error("the intersection of cones {first} and {second} is not a face of both")]
    FaceCondition { first: usize, second: usize },
    #[error("hyperplane does not cut the linear hull")]
    NotInLinearHull,
    #[error("recovery is ambiguous when 2k equals the dimension")]
    AmbiguousRecovery,
    #[error("no cone has these projection cones")]
    InconsistentRecovery,
    #[error("{0}")]
    InvalidArgument(&'static str),
}

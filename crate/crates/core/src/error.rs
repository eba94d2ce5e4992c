use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("gamma pole at {0}")]
    Pole(String),
    #[error("denominator Pochhammer vanishes: ({param})_{k}")]
    ZeroDenominator { param: String, k: u32 },
    #[error("series does not terminate: no numerator parameter is a non-positive integer")]
    NotTerminating,
    #[error("parameter singularity in {family} at n = {n}: {detail}")]
    ParameterSingularity { family: String, n: u32, detail: String },
    #[error("degenerate parameters for {family}: {detail}")]
    Degenerate { family: String, detail: String },
    #[error("parameters outside admissible region of {family}: {clause}")]
    Inadmissible { family: String, clause: String },
    #[error("{family} has no {what}")]
    Unsupported { family: String, what: String },
    #[error("reduction ambiguity: remainder ratio {ratio:.3e} sits between the zero and nonzero thresholds")]
    ReductionAmbiguity { ratio: f64 },
    #[error("not divisible: {0}")]
    NotDivisible(String),
    #[error("quadrature did not converge after {nodes} nodes (last {last}, previous {prev})")]
    NonConvergence { nodes: usize, last: String, prev: String },
    #[error("both composition conventions fail for {0}")]
    BothConventionsFail(String),
    #[error("unknown family id `{0}`")]
    UnknownFamily(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("precision: {0}")]
    Precision(String),
}

pub type Result<T> = std::result::Result<T, Error>;

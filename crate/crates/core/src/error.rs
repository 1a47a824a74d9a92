use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ZxError {
    #[error("invalid phase `{0}`")]
    InvalidPhase(String),
    #[error("arity violation: {0}")]
    Arity(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("phase {0} is not a dyadic multiple of π; use floating-point evaluation")]
    NonDyadicPhase(String),
    #[error("diagram has {wires} boundary wires, above the evaluation limit of {limit}")]
    SizeLimit { wires: usize, limit: usize },
    #[error("contraction needs a rank-{rank} intermediate tensor, above the limit of {limit}")]
    ContractionTooLarge { rank: usize, limit: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("not a scalar diagram ({inputs} inputs, {outputs} outputs)")]
    NotScalar { inputs: usize, outputs: usize },
    #[error("match is stale or does not apply to this diagram")]
    StaleMatch,
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("step {step}: {reason}")]
    Unreplayable { step: usize, reason: String },
    #[error("step {step}: semantics changed under rule {rule}")]
    SemanticDrift { step: usize, rule: String },
    #[error("merging these twins needs the supplementarity rule, which is disabled")]
    FragmentViolation,
    #[error("not an antiphase twin pair: {0}")]
    NotTwins(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T, E = ZxError> = std::result::Result<T, E>;

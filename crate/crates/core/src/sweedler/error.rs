use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("unknown module `{0}`")]
    UnknownModule(String),
    #[error("no coaction declared on module `{0}`")]
    MissingCoaction(String),
    #[error("inconsistent bracketing for `{source_text}`: paths {paths:?}")]
    Bracketing {
        source_text: String,
        paths: Vec<String>,
    },
    #[error("unpaired coaction leg: {0}")]
    UnpairedLeg(String),
    #[error("incomplete instance: {0}")]
    IncompleteInstance(String),
    #[error("type error: {0}")]
    Type(String),
}

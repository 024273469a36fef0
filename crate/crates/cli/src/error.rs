use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("syntax error at {line}:{col}: expected one of {expected:?}, found '{found}'")]
    Syntax { line: usize, col: usize, expected: Vec<String>, found: String },
    #[error("unknown generator '{name}' at {line}:{col}")]
    UnknownGenerator { name: String, line: usize, col: usize },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] rhoforms::Error),
}

impl CliError {
    pub fn domain(e: rhoforms::Error) -> Self {
        CliError::Domain(e)
    }

    /// 2 for malformed input text, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax { .. } | CliError::UnknownGenerator { .. } | CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Syntax { .. } => "SyntaxError",
            CliError::UnknownGenerator { .. } => "UnknownGenerator",
            CliError::Usage(_) => "UsageError",
            CliError::Domain(e) => e.kind(),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut err = json!({ "kind": self.kind(), "message": self.to_string() });
        match self {
            CliError::Syntax { line, col, expected, .. } => {
                err["line"] = json!(line);
                err["col"] = json!(col);
                err["expected"] = json!(expected);
            }
            CliError::UnknownGenerator { name, line, col } => {
                err["name"] = json!(name);
                err["line"] = json!(line);
                err["col"] = json!(col);
            }
            _ => {}
        }
        json!({ "error": err })
    }
}

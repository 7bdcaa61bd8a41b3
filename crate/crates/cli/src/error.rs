use std::fmt;

use llsem::relsem::{InterpError, InterpFormatError};
use llsem::space::{ConfigError, TableError, VerdictError};
use llsem::syntax::{CheckError, SyntaxError};
use llsem::verify::InteractError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Usage,
    Parse,
    Check,
    Bound,
}

impl Kind {
    pub fn code(self) -> &'static str {
        match self {
            Kind::Usage => "usage",
            Kind::Parse => "parse",
            Kind::Check => "check",
            Kind::Bound => "bound-exhausted",
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Kind::Check => 1,
            Kind::Usage | Kind::Parse => 2,
            Kind::Bound => 3,
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub kind: Kind,
    pub message: String,
}

impl CliError {
    pub fn new(kind: Kind, message: impl Into<String>) -> CliError {
        CliError { kind, message: message.into() }
    }

    pub fn usage(message: impl Into<String>) -> CliError {
        CliError::new(Kind::Usage, message)
    }

    pub fn parse(what: &str, e: impl fmt::Display) -> CliError {
        CliError::new(Kind::Parse, format!("{what}: {e}"))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind.code(), self.message)
    }
}

impl From<VerdictError> for CliError {
    fn from(e: VerdictError) -> Self {
        let kind = if matches!(e, VerdictError::Budget(_)) { Kind::Bound } else { Kind::Usage };
        CliError::new(kind, e.to_string())
    }
}

impl From<CheckError> for CliError {
    fn from(e: CheckError) -> Self {
        CliError::new(Kind::Check, e.to_string())
    }
}

impl From<SyntaxError> for CliError {
    fn from(e: SyntaxError) -> Self {
        CliError::new(Kind::Parse, e.to_string())
    }
}

impl From<InterpError> for CliError {
    fn from(e: InterpError) -> Self {
        match e {
            InterpError::Check(c) => c.into(),
            InterpError::Verdict(v) => v.into(),
            InterpError::Bound => CliError::usage(e.to_string()),
        }
    }
}

impl From<InterpFormatError> for CliError {
    fn from(e: InterpFormatError) -> Self {
        CliError::new(Kind::Parse, e.to_string())
    }
}

impl From<TableError> for CliError {
    fn from(e: TableError) -> Self {
        CliError::new(Kind::Parse, e.to_string())
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<InteractError> for CliError {
    fn from(e: InteractError) -> Self {
        match e {
            InteractError::Interp(i) => i.into(),
            InteractError::Verdict(v) => v.into(),
            other => CliError::new(Kind::Check, other.to_string()),
        }
    }
}

use serde_json::json;

/// Failures of a command, each with its own exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Math(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Parse(_) => 3,
            CliError::Budget(_) => 4,
            CliError::Math(_) => 5,
            CliError::Io(_) => 6,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Parse(_) => "parse",
            CliError::Budget(_) => "budget",
            CliError::Math(_) => "math",
            CliError::Io(_) => "io",
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({ "error": { "kind": self.kind(), "code": self.exit_code(), "message": self.to_string() } })
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<vdistal_core::FieldError> for CliError {
    fn from(e: vdistal_core::FieldError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<vdistal_core::QfError> for CliError {
    fn from(e: vdistal_core::QfError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<vdistal_core::bounds::BoundsError> for CliError {
    fn from(e: vdistal_core::bounds::BoundsError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<vdistal_core::distal::DistalError> for CliError {
    fn from(e: vdistal_core::distal::DistalError) -> Self {
        use vdistal_core::distal::DistalError;
        match e {
            DistalError::TooFewParams(_) => CliError::Usage(e.to_string()),
            DistalError::Qf(q) => q.into(),
        }
    }
}

impl From<vdistal_core::incidence::IncidenceError> for CliError {
    fn from(e: vdistal_core::incidence::IncidenceError) -> Self {
        use vdistal_core::incidence::IncidenceError as E;
        match e {
            E::Budget { .. } => CliError::Budget(e.to_string()),
            E::IdentityFailed { .. } => CliError::Math(e.to_string()),
            E::Arity { .. } | E::Qf(_) | E::Field(_) => CliError::Parse(e.to_string()),
        }
    }
}

use serde::Serialize;

/// Error reported on stderr as a JSON object.
#[derive(Debug, Serialize)]
pub struct CliError {
    pub kind: &'static str,
    pub message: String,
    /// Field of the config the error refers to, as a dotted path.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
}

impl CliError {
    pub fn parse(e: serde_json::Error) -> Self {
        Self { kind: "parse", message: e.to_string(), field: None, line: Some(e.line()), column: Some(e.column()) }
    }

    pub fn validation(field: &str, message: String) -> Self {
        Self { kind: "validation", message, field: Some(field.to_string()), line: None, column: None }
    }

    pub fn io(message: String) -> Self {
        Self { kind: "io", message, field: None, line: None, column: None }
    }

    pub fn resource(message: String) -> Self {
        Self { kind: "resource_limit", message, field: None, line: None, column: None }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            "parse" | "validation" => 2,
            "resource_limit" => 3,
            _ => 1,
        }
    }
}

impl From<corrset_core::Error> for CliError {
    fn from(e: corrset_core::Error) -> Self {
        use corrset_core::Error as E;
        let kind = match &e {
            E::ResourceLimit(_) | E::BeyondSchedule { .. } | E::Overflow(_) | E::ConstructionExhausted { .. } => {
                "resource_limit"
            }
            E::VerificationFailed { .. } | E::ScheduleViolation { .. } => "verification",
            E::PrefixTooShort { .. } | E::CylinderTooLong { .. } | E::EmptyWord => "input",
            _ => "validation",
        };
        Self { kind, message: e.to_string(), field: None, line: None, column: None }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        Self::io(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Self::io(e.to_string())
    }
}

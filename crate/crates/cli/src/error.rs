use arithcap::algebra::AlgebraError;
use arithcap::family::FamilyError;
use arithcap::integerization::IntegerizationError;
use arithcap::patching::PatchError;
use arithcap::potential::PotentialError;
use serde_json::json;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Integerization(#[from] IntegerizationError),
    #[error(transparent)]
    Patch(#[from] PatchError),
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

impl CliError {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Parse(_) => 4,
            CliError::Algebra(_) => 5,
            CliError::Integerization(_) | CliError::Patch(_) => 6,
            CliError::Potential(_) => 7,
            CliError::Family(_) => 8,
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
            CliError::Parse(_) => "parse",
            CliError::Algebra(_) => "algebra",
            CliError::Integerization(_) => "integerization",
            CliError::Patch(_) => "patching",
            CliError::Potential(_) => "potential",
            CliError::Family(_) => "family",
        }
    }

    /// Variant name of the underlying module error, for machine matching.
    pub fn kind(&self) -> String {
        let dbg = match self {
            CliError::Usage(_) => return "Usage".into(),
            CliError::Io { source, .. } => return format!("{:?}", source.kind()),
            CliError::Parse(_) => return "SyntaxError".into(),
            CliError::Algebra(e) => format!("{e:?}"),
            CliError::Integerization(e) => format!("{e:?}"),
            CliError::Patch(e) => format!("{e:?}"),
            CliError::Potential(e) => format!("{e:?}"),
            CliError::Family(e) => format!("{e:?}"),
        };
        dbg.split(|c: char| !c.is_alphanumeric())
            .next()
            .unwrap_or_default()
            .to_string()
    }

    pub fn record(&self) -> serde_json::Value {
        json!({
            "error": {
                "family": self.family(),
                "kind": self.kind(),
                "message": self.to_string(),
            },
            "exit_code": self.exit_code(),
        })
    }
}

impl From<arithcap::text::SyntaxError> for CliError {
    fn from(e: arithcap::text::SyntaxError) -> Self {
        CliError::Parse(e.to_string())
    }
}

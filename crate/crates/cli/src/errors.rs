use std::fmt;

/// Stable exit-code contract: 0 success, 2 parse error, 3 missing labels,
/// 4 shape mismatch, 1 everything else.
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_MISSING_LABELS: u8 = 3;
pub const EXIT_SHAPE_MISMATCH: u8 = 4;

#[derive(Debug)]
pub struct CodedError {
    pub code: u8,
    pub msg: String,
}

impl CodedError {
    pub fn parse(msg: impl Into<String>) -> anyhow::Error {
        anyhow::Error::new(Self {
            code: EXIT_PARSE,
            msg: msg.into(),
        })
    }

    pub fn missing_labels(msg: impl Into<String>) -> anyhow::Error {
        anyhow::Error::new(Self {
            code: EXIT_MISSING_LABELS,
            msg: msg.into(),
        })
    }

    pub fn shape_mismatch(msg: impl Into<String>) -> anyhow::Error {
        anyhow::Error::new(Self {
            code: EXIT_SHAPE_MISMATCH,
            msg: msg.into(),
        })
    }
}

impl fmt::Display for CodedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.msg)
    }
}

impl std::error::Error for CodedError {}

/// Walks the error chain to pick the process exit code.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(coded) = cause.downcast_ref::<CodedError>() {
            return coded.code;
        }
        if let Some(core_err) = cause.downcast_ref::<phsep_core::Error>() {
            return match core_err {
                phsep_core::Error::MissingLabels => EXIT_MISSING_LABELS,
                phsep_core::Error::DimensionMismatch { .. } => EXIT_SHAPE_MISMATCH,
                _ => 1,
            };
        }
    }
    1
}

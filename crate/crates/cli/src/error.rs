use std::fmt;

use hyperglauber::Error;

/// Process exit codes.
pub mod code {
    pub const USAGE: u8 = 1;
    pub const INFEASIBLE: u8 = 2;
    pub const NUMERIC: u8 = 3;
    pub const INTERNAL: u8 = 70;
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(msg: impl fmt::Display) -> Self {
        Self {
            code: code::USAGE,
            message: msg.to_string(),
        }
    }

    pub fn io(msg: impl fmt::Display) -> Self {
        Self {
            code: code::INFEASIBLE,
            message: msg.to_string(),
        }
    }

    pub fn internal(msg: impl fmt::Display) -> Self {
        Self {
            code: code::INTERNAL,
            message: msg.to_string(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidParameter(_) => code::USAGE,
            Error::Numerical(_) => code::NUMERIC,
            _ => code::INFEASIBLE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

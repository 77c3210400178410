use std::fmt;

use hyperturan::Error;

pub const OK: u8 = 0;
pub const REFUTED: u8 = 1;
pub const USAGE: u8 = 2;
pub const INFEASIBLE: u8 = 3;

/// A failure carrying the process exit code.
#[derive(Debug)]
pub struct Exit {
    pub code: u8,
    pub message: String,
}

impl Exit {
    pub fn usage(message: impl Into<String>) -> Exit {
        Exit { code: USAGE, message: message.into() }
    }

    pub fn refuted(message: impl Into<String>) -> Exit {
        Exit { code: REFUTED, message: message.into() }
    }

    pub fn infeasible(message: impl Into<String>) -> Exit {
        Exit { code: INFEASIBLE, message: message.into() }
    }
}

impl fmt::Display for Exit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for Exit {
    fn from(e: Error) -> Exit {
        let code = match e {
            Error::Infeasible(_) => INFEASIBLE,
            Error::Verification(_) | Error::Precondition(_) | Error::Integrity(_) => REFUTED,
            _ => USAGE,
        };
        Exit { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Exit {
    fn from(e: std::io::Error) -> Exit {
        Exit::usage(e.to_string())
    }
}

pub type CliResult<T> = Result<T, Exit>;

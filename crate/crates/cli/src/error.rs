use std::fmt;

use zeta_kernels::Error;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Eval(Error),
    SelftestFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Eval(Error::Domain(_) | Error::Pole(_)) => 2,
            CliError::Eval(Error::Convergence(_)) => 3,
            CliError::Eval(Error::Overflow(_)) => 4,
            CliError::SelftestFailed(_) => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Io(m) => write!(f, "i/o: {m}"),
            CliError::Eval(e) => write!(f, "{e}"),
            CliError::SelftestFailed(n) => write!(f, "selftest: {n} criteria failed"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Eval(e)
    }
}

pub fn usage(msg: impl fmt::Display) -> CliError {
    CliError::Usage(msg.to_string())
}

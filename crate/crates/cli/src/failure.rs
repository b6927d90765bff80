use std::fmt;

use affdet::Error;

/// Command outcome other than success, with its exit code.
#[derive(Debug)]
pub enum Failure {
    Check(String),
    Input(String),
    Unsupported(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Check(_) => 1,
            Failure::Input(_) => 2,
            Failure::Unsupported(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Check(m) => write!(f, "check failed: {m}"),
            Failure::Input(m) => write!(f, "input error: {m}"),
            Failure::Unsupported(m) => write!(f, "unsupported: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::NotPrime(_)
            | Error::NotIrreducible(_)
            | Error::NotPrimitive(_)
            | Error::InvalidField(_)
            | Error::PrimeMismatch(..)
            | Error::ShapeMismatch
            | Error::InvalidStart(_)
            | Error::Parse(_) => Failure::Input(msg),
            Error::UnsupportedQ(_)
            | Error::UnsupportedCase(_)
            | Error::CapExceeded { .. }
            | Error::NotCoprime(_)
            | Error::CongruenceViolation { .. } => Failure::Unsupported(msg),
            _ => Failure::Check(msg),
        }
    }
}

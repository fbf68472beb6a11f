use std::fmt;

/// A computation that could not produce a report, with the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

impl Failure {
    pub fn input(message: impl Into<String>) -> Failure {
        Failure { code: EXIT_INPUT, message: message.into() }
    }

    pub fn is_resource(&self) -> bool {
        self.code == EXIT_RESOURCE
    }
}

impl From<mackey::Error> for Failure {
    fn from(e: mackey::Error) -> Failure {
        let code = match e {
            mackey::Error::Input(_) | mackey::Error::Precondition(_) => EXIT_INPUT,
            mackey::Error::Resource(_) => EXIT_RESOURCE,
            mackey::Error::Consistency(_) => EXIT_CHECK_FAILED,
        };
        Failure { code, message: e.to_string() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

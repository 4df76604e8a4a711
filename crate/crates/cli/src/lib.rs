//! Tables, batch verification and sequence comparison on top of
//! [`zcl_core`]. The `zcl` binary is a thin clap front end over
//! [`commands`].

pub mod bfile;
pub mod commands;
pub mod golden;
pub mod verify;

/// Process exit status used by every subcommand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    Mismatch = 1,
    Usage = 2,
}

impl Status {
    pub fn code(self) -> u8 {
        self as u8
    }
}

/// Rendered output of a subcommand plus its exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub status: Status,
}

impl Outcome {
    pub fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            status: Status::Success,
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: msg.into(),
            status: Status::Usage,
        }
    }
}

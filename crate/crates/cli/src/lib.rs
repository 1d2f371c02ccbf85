//! Library surface of the `qlink` command-line tool: config schema, result
//! records, and the subcommand implementations. The binary in `main.rs` is a
//! thin argument-parsing wrapper over this.

use std::fmt;

pub mod commands;
pub mod config;
pub mod record;

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Config(String),
    Physics(qlink_core::Error),
    Infeasible(String),
    Verification(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(msg) => write!(f, "{msg}"),
            CliError::Config(msg) => write!(f, "{msg}"),
            CliError::Physics(err) => write!(f, "{err}"),
            CliError::Infeasible(msg) => write!(f, "infeasible design: {msg}"),
            CliError::Verification(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<qlink_core::Error> for CliError {
    fn from(err: qlink_core::Error) -> Self {
        match err {
            qlink_core::Error::InvalidSpec(msg) | qlink_core::Error::InvalidConfig(msg) => {
                CliError::Config(msg)
            }
            qlink_core::Error::Infeasible(msg) => CliError::Infeasible(msg),
            other => CliError::Physics(other),
        }
    }
}

impl CliError {
    /// 1 I/O, 2 config, 3 physics, 4 infeasible design, 5 failed verification.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Config(_) => 2,
            CliError::Physics(_) => 3,
            CliError::Infeasible(_) => 4,
            CliError::Verification(_) => 5,
        }
    }
}

use std::io::{self, Write};

use goodint::abelian::{DEFAULT_MAX_ENUM, MAX_ENUM_ENV};
use serde::Serialize;

pub const SCHEMA_VERSION: &str = "1";

/// Wrapper shared by every JSON response.
#[derive(Debug, Serialize)]
pub struct Envelope<'a, I: Serialize, R: Serialize> {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub inputs: &'a I,
    pub results: R,
    pub warnings: Vec<String>,
}

impl<'a, I: Serialize, R: Serialize> Envelope<'a, I, R> {
    pub fn new(command: &'static str, inputs: &'a I, results: R) -> Self {
        Envelope {
            schema_version: SCHEMA_VERSION,
            command,
            inputs,
            results,
            warnings: env_warnings(),
        }
    }

    pub fn print(&self) -> Result<(), Failure> {
        let mut out = io::stdout().lock();
        serde_json::to_writer_pretty(&mut out, self).map_err(io::Error::from)?;
        writeln!(out)?;
        Ok(())
    }
}

/// Notes about the enumeration cap when it is overridden from the environment.
fn env_warnings() -> Vec<String> {
    match std::env::var(MAX_ENUM_ENV) {
        Ok(v) => match v.trim().parse::<u64>() {
            Ok(n) => vec![format!("{MAX_ENUM_ENV}={n} overrides the enumeration cap")],
            Err(_) => vec![format!(
                "{MAX_ENUM_ENV}={v:?} is not an integer; using the default cap {DEFAULT_MAX_ENUM}"
            )],
        },
        Err(_) => Vec::new(),
    }
}

#[derive(Debug)]
pub enum Failure {
    /// Invalid input or an unmet precondition (exit 2).
    Domain(goodint::Error),
    /// Arguments that parse but do not make sense together (exit 2).
    Usage(String),
    /// Two computations that must agree did not (exit 3).
    Mismatch(String),
    Io(io::Error),
}

impl From<goodint::Error> for Failure {
    fn from(e: goodint::Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        if !e.is_io_error() {
            return Failure::Io(io::Error::other(e));
        }
        match e.into_kind() {
            csv::ErrorKind::Io(io) => Failure::Io(io),
            _ => unreachable!("checked is_io_error"),
        }
    }
}

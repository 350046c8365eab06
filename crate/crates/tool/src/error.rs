// Copyright 2026 The lifshitz authors
//
// Licensed under the Apache license, version 2.0 (the "license");
// you may not use this file except in compliance with the license.
// You may obtain a copy of the license at
//
//     http://www.apache.org/licenses/license-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the license is distributed on an "as is" basis,
// without warranties or conditions of any kind, either express or implied.
// See the license for the specific language governing permissions and
// limitations under the license.

use std::fmt;
use std::path::PathBuf;

/// Configuration problem, located by line and dotted field path where known.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub field: Option<String>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config")?;
        if let Some(line) = self.line {
            write!(f, " line {line}")?;
        }
        if let Some(field) = &self.field {
            write!(f, ", field `{field}`")?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, thiserror::Error)]
pub enum ToolError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}, line {line}: {message}")]
    Data {
        path: PathBuf,
        line: u64,
        message: String,
    },
    #[error("{context}: {source}")]
    Compute {
        context: String,
        #[source]
        source: lifshitz_core::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl ToolError {
    pub fn compute(context: impl Into<String>, source: lifshitz_core::Error) -> Self {
        ToolError::Compute {
            context: context.into(),
            source,
        }
    }

    /// Process exit status: 2 for numerical non-convergence, 1 for anything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            ToolError::Compute { source, .. } if source.is_numerical() => 2,
            _ => 1,
        }
    }
}

pub type Result<T, E = ToolError> = std::result::Result<T, E>;

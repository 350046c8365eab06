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

//! Configuration, dataset formats and sweep drivers behind the `lifshitz` command.

pub mod config;
pub mod error;
pub mod formats;
pub mod sweep;

pub use config::{load_config, parse_config, serialize_config, ModelChoice, RunConfig};
pub use error::{ConfigError, Result, ToolError};
pub use formats::CsvDocument;

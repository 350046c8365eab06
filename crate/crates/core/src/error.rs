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

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
    },
    #[error("response function evaluated at zero frequency; the l = 0 term is handled by the zero-frequency reflection coefficients")]
    ZeroFrequency,
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("quadrature did not converge: estimate {estimate:e}, error estimate {error:e}")]
    QuadratureNotConverged { estimate: f64, error: f64 },
    #[error("Matsubara series did not converge after {terms} terms: partial sum {partial:e}, tail bound {tail_bound:e}")]
    SeriesNotConverged {
        partial: f64,
        tail_bound: f64,
        terms: usize,
    },
    #[error("interband table too narrow: extrapolated tail is {tail_fraction:e} of the Kramers-Kronig integral")]
    KramersKronigTail { tail_fraction: f64 },
}

impl Error {
    /// True for failures of a numerical procedure, as opposed to invalid input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::QuadratureNotConverged { .. }
                | Error::SeriesNotConverged { .. }
                | Error::KramersKronigTail { .. }
        )
    }
}

// Copyright 2026 The triwit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left}x{left} vs {right}x{right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix data has {len} entries, not a square of dimension {dim}")]
    BadShape { dim: usize, len: usize },

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:e} > {tol:e})")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("qubit index {0} out of range (expected 1, 2 or 3)")]
    InvalidQubit(usize),

    #[error("not a density matrix: {0}")]
    NotADensityMatrix(String),

    #[error("expectation has imaginary residual {0:e}")]
    ImaginaryResidual(f64),

    #[error("unknown witness label '{0}'")]
    UnknownWitness(String),

    #[error("closed form mismatch at {param}: trace {trace} vs closed form {closed}")]
    ClosedFormMismatch { param: String, trace: f64, closed: f64 },
}

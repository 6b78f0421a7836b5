// Copyright 2026 The qfc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("qubit count {0} is outside the supported range {1}..={2}")]
    QubitCount(usize, usize, usize),
    #[error("index {index} out of range (expected 1..={max})")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("basis index {index} out of range for {n} qubits")]
    BasisIndexOutOfRange { index: u64, n: usize },
    #[error("control and target are both wire {0}")]
    SameControlTarget(usize),
    #[error("configuration is singular (rank {rank} < {n})")]
    Singular { rank: usize, n: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid functional `{0}`")]
    BadFunctional(String),
    #[error("invalid configuration: {0}")]
    BadConfiguration(String),
    #[error("u gate parameters are not normalized: u1^2 + u2^2 = {0}")]
    NotNormalized(f64),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("{what} is limited to n <= {max} (got {n})")]
    TooLarge { what: &'static str, n: usize, max: usize },
    #[error("exact search exceeded its budget of {0} states")]
    SearchBudget(usize),
    #[error("bad distance cache: {0}")]
    BadCache(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A circuit text error with its 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

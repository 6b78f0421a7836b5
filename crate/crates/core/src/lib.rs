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

//! Analysis of quantum circuits through qubit functional configurations.
//!
//! A CNOT block acting on `n` wires replaces the value held by each wire with a
//! GF(2) linear form (a *functional*) of the original qubit values. The tuple of
//! those forms is an invertible binary matrix, the *configuration*, and it fixes
//! how every following one-qubit gate pairs and mixes state-vector entries.
//!
//! The crate is organised bottom-up:
//!
//! * [`gf2`]: functionals, configurations and their linear algebra.
//! * [`circuit`]: gate lists, the text format, one-qubit fusion and generators.
//! * [`layering`]: segmentation of a circuit into configuration layers.
//! * [`typing`]: circuit types, canonical forms, digests and exact counting.
//! * [`synthesis`]: CNOT sequences realizing a configuration, including
//!   provably minimal ones.
//! * [`simulate`]: a dense statevector oracle used to check all of the above.

pub mod circuit;
pub mod error;
pub mod gf2;
pub mod layering;
pub mod random;
pub mod simulate;
pub mod synthesis;
pub mod typing;

pub use circuit::{Circuit, Cnot, Gate, GateKind, OneQubitGate};
pub use error::{Error, ParseError, Result};
pub use gf2::{Configuration, Functional, MAX_QUBITS};
pub use layering::{decompose, BoundsReport, Layer, LayerDecomposition};
pub use simulate::StateVector;
pub use typing::{CanonicalType, CircuitType};

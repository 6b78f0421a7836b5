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

//! Seeded generators for random configurations, gates and circuits.

use rand::Rng;

use crate::circuit::{Circuit, Cnot, Gate, GateKind, OneQubitGate};
use crate::error::Result;
use crate::gf2::{check_qubits, full_mask, Configuration};

/// Uniform CNOT on `n ≥ 2` wires.
pub fn random_cnot<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Cnot {
    assert!(n >= 2, "a CNOT needs two wires");
    let control = rng.random_range(1..=n);
    let mut target = rng.random_range(1..n);
    if target >= control {
        target += 1;
    }
    Cnot::new(control, target)
}

/// Uniform element of GL(n, 2) by rejection sampling.
pub fn random_configuration<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Configuration> {
    check_qubits(n)?;
    let mask = full_mask(n);
    loop {
        let rows: Vec<u64> = (0..n).map(|_| rng.random::<u64>() & mask).collect();
        let c = Configuration::from_bits_unchecked(n, rows);
        if c.is_valid() {
            return Ok(c);
        }
    }
}

/// Configuration reached by `steps` uniform CNOTs from the identity.
pub fn random_walk<R: Rng + ?Sized>(n: usize, steps: usize, rng: &mut R) -> Result<Configuration> {
    let mut c = Configuration::identity(n)?;
    if n >= 2 {
        for _ in 0..steps {
            let g = random_cnot(n, rng);
            c.rows_xor(g.target, g.control);
        }
    }
    Ok(c)
}

pub fn random_one_qubit_gate<R: Rng + ?Sized>(n: usize, rng: &mut R) -> OneQubitGate {
    let qubit = rng.random_range(1..=n);
    let kind = GateKind::ALL[rng.random_range(0..GateKind::ALL.len() - 1)];
    let angle = |rng: &mut R| rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
    let params = match kind {
        GateKind::U => {
            let t = angle(rng);
            vec![t.cos(), t.sin()]
        }
        _ => (0..kind.arity()).map(|_| angle(rng)).collect(),
    };
    OneQubitGate::new(kind, qubit, params).expect("generated parameters are valid")
}

/// `len` gates, each a CNOT with probability `cnot_prob` (when `n ≥ 2`).
pub fn random_circuit<R: Rng + ?Sized>(
    n: usize,
    len: usize,
    cnot_prob: f64,
    rng: &mut R,
) -> Result<Circuit> {
    let mut c = Circuit::new(n)?;
    for _ in 0..len {
        let g: Gate = if n >= 2 && rng.random_bool(cnot_prob) {
            random_cnot(n, rng).into()
        } else {
            random_one_qubit_gate(n, rng).into()
        };
        c.push(g)?;
    }
    Ok(c)
}

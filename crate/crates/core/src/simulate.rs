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

//! Dense statevector simulation and the pairing-rule predictions it checks.
//!
//! Index `i` has `q_1` as its most significant bit. A CNOT block realizing a
//! configuration `C` moves the amplitude of `|i⟩` to `|C·i⟩`; a one-qubit
//! gate on wire `k` then mixes the original entries `i` and `i ⊕ m`, where
//! `m = C⁻¹ e_k`, with `f_k(i) = 0` marking the "0" member of each pair.

use std::fmt::Write as _;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::circuit::{Circuit, Gate, Matrix2, NORM_TOL};
use crate::error::{Error, Result};
use crate::gf2::{check_wire, qubit_mask, Configuration, Functional};
use crate::layering::decompose;

/// Library-wide cap on simulated qubits.
pub const MAX_SIM_QUBITS: usize = 26;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

fn check_sim_qubits(n: usize) -> Result<()> {
    if (1..=MAX_SIM_QUBITS).contains(&n) {
        Ok(())
    } else {
        Err(Error::QubitCount(n, 1, MAX_SIM_QUBITS))
    }
}

impl StateVector {
    /// `|0…0⟩`.
    pub fn zero(n: usize) -> Result<Self> {
        StateVector::basis(n, 0)
    }

    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_sim_qubits(n)?;
        if index >> n != 0 {
            return Err(Error::BasisIndexOutOfRange {
                index: index as u64,
                n,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n, amps })
    }

    pub fn from_amps(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_sim_qubits(n)?;
        if amps.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: amps.len(),
            });
        }
        Ok(StateVector { n, amps })
    }

    /// Normalized state with i.i.d. complex Gaussian components.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        check_sim_qubits(n)?;
        let mut amps: Vec<Complex64> = (0..1usize << n)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let norm = amps.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        amps.iter_mut().for_each(|a| *a /= norm);
        Ok(StateVector { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of the difference.
    pub fn max_deviation(&self, other: &StateVector) -> f64 {
        assert_eq!(self.n, other.n);
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn apply_one_qubit(&mut self, qubit: usize, m: &Matrix2) -> Result<()> {
        check_wire(qubit, self.n)?;
        let mask = 1usize << (self.n - qubit);
        for i in 0..self.amps.len() {
            if i & mask == 0 {
                let (a, b) = (self.amps[i], self.amps[i | mask]);
                self.amps[i] = m[0][0] * a + m[0][1] * b;
                self.amps[i | mask] = m[1][0] * a + m[1][1] * b;
            }
        }
        Ok(())
    }

    pub fn apply_cnot(&mut self, control: usize, target: usize) -> Result<()> {
        check_wire(control, self.n)?;
        check_wire(target, self.n)?;
        if control == target {
            return Err(Error::SameControlTarget(control));
        }
        let cm = 1usize << (self.n - control);
        let tm = 1usize << (self.n - target);
        for i in 0..self.amps.len() {
            if i & cm != 0 && i & tm == 0 {
                self.amps.swap(i, i | tm);
            }
        }
        Ok(())
    }

    pub fn apply_gate(&mut self, g: &Gate) -> Result<()> {
        match g {
            Gate::OneQubit(u) => self.apply_one_qubit(u.qubit, &u.matrix()),
            Gate::Cnot(c) => self.apply_cnot(c.control, c.target),
        }
    }

    /// Moves the amplitude at `i` to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<StateVector> {
        if perm.len() != self.amps.len() {
            return Err(Error::DimensionMismatch {
                expected: self.amps.len(),
                found: perm.len(),
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (i, &p) in perm.iter().enumerate() {
            amps[p] = self.amps[i];
        }
        Ok(StateVector { n: self.n, amps })
    }

    /// One line per entry: index, real part, imaginary part, 17 significant digits.
    pub fn dump(&self) -> String {
        let mut out = String::with_capacity(self.amps.len() * 52);
        for (i, a) in self.amps.iter().enumerate() {
            let _ = writeln!(out, "{i} {:.16e} {:.16e}", a.re, a.im);
        }
        out
    }
}

/// Applies every gate of `c` to a copy of `initial`.
pub fn run(c: &Circuit, initial: &StateVector) -> Result<StateVector> {
    if c.n() != initial.n {
        return Err(Error::DimensionMismatch {
            expected: c.n(),
            found: initial.n,
        });
    }
    let mut s = initial.clone();
    for g in c.gates() {
        s.apply_gate(g)?;
    }
    Ok(s)
}

fn require_valid(c: &Configuration) -> Result<()> {
    if c.is_valid() {
        Ok(())
    } else {
        Err(Error::Singular {
            rank: c.rank(),
            n: c.n(),
        })
    }
}

/// Basis permutation `i ↦ C·i` induced by any CNOT block realizing `C`.
pub fn cnot_block_permutation(c: &Configuration) -> Result<Vec<usize>> {
    require_valid(c)?;
    check_sim_qubits(c.n())?;
    Ok((0..1u64 << c.n())
        .map(|i| c.basis_map_unchecked(i) as usize)
        .collect())
}

/// How a one-qubit gate on wire `k` pairs the original entries under `C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingRule {
    pub k: usize,
    /// `C⁻¹ e_k` as a basis-index mask.
    pub offset: u64,
    /// `f_k`: entries where it vanishes play the "0" role.
    pub zero_functional: Functional,
}

impl PairingRule {
    /// `("0" member, "1" member)` pairs in original indices, by "0" member.
    pub fn pairs(&self) -> Vec<(u64, u64)> {
        let n = self.zero_functional.n();
        (0..1u64 << n)
            .filter(|&i| !self.zero_functional.eval_unchecked(i))
            .map(|i| (i, i ^ self.offset))
            .collect()
    }

    pub fn zero_set(&self) -> Vec<u64> {
        self.pairs().into_iter().map(|(z, _)| z).collect()
    }
}

pub fn predict_pairing(c: &Configuration, k: usize) -> Result<PairingRule> {
    require_valid(c)?;
    check_wire(k, c.n())?;
    let inv = c.invert()?;
    Ok(PairingRule {
        k,
        offset: inv.column(k),
        zero_functional: c.row(k),
    })
}

/// Post-state of (CNOT block realizing `C`, then `m` on wire `k`) built from
/// the pairing rule alone, without simulating any gate.
pub fn predict_after_gate(
    c: &Configuration,
    k: usize,
    m: &Matrix2,
    a: &StateVector,
) -> Result<StateVector> {
    if c.n() != a.n {
        return Err(Error::DimensionMismatch {
            expected: c.n(),
            found: a.n,
        });
    }
    let rule = predict_pairing(c, k)?;
    let inv = c.invert()?;
    let ek = qubit_mask(c.n(), k);
    let amps = (0..1u64 << c.n())
        .map(|j| {
            let src = inv.basis_map_unchecked(j) as usize;
            let partner = src ^ rule.offset as usize;
            if j & ek == 0 {
                m[0][0] * a.amps[src] + m[0][1] * a.amps[partner]
            } else {
                m[1][0] * a.amps[partner] + m[1][1] * a.amps[src]
            }
        })
        .collect();
    Ok(StateVector { n: a.n, amps })
}

/// [`predict_after_gate`] for the real reflection `[[u1, u2], [u2, -u1]]`.
pub fn predict_after_u(
    c: &Configuration,
    k: usize,
    u1: f64,
    u2: f64,
    a: &StateVector,
) -> Result<StateVector> {
    let norm = u1 * u1 + u2 * u2;
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized(norm));
    }
    let m = [
        [Complex64::new(u1, 0.0), Complex64::new(u2, 0.0)],
        [Complex64::new(u2, 0.0), Complex64::new(-u1, 0.0)],
    ];
    predict_after_gate(c, k, &m, a)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConsistencyReport {
    pub trials: usize,
    pub comparisons: usize,
    pub max_deviation: f64,
    pub tol: f64,
    pub passed: bool,
}

pub const MAX_CHECK_QUBITS: usize = 8;

/// For every layer and every one-qubit gate in it, compares the pairing-rule
/// prediction with direct gate-by-gate simulation, on `trials` random states.
pub fn consistency_check<R: Rng + ?Sized>(
    c: &Circuit,
    trials: usize,
    tol: f64,
    rng: &mut R,
) -> Result<ConsistencyReport> {
    if c.n() > MAX_CHECK_QUBITS {
        return Err(Error::TooLarge {
            what: "consistency check",
            n: c.n(),
            max: MAX_CHECK_QUBITS,
        });
    }
    let d = decompose(c);
    let mut comparisons = 0;
    let mut max_deviation: f64 = 0.0;
    for _ in 0..trials {
        let mut state = StateVector::random(c.n(), rng)?;
        for layer in &d.layers {
            let mut block = state.clone();
            for g in &layer.cnot_gates {
                block.apply_cnot(g.control, g.target)?;
            }
            for g in &layer.oneq_gates {
                let mut direct = block.clone();
                let m = g.matrix();
                direct.apply_one_qubit(g.qubit, &m)?;
                let predicted = predict_after_gate(&layer.config, g.qubit, &m, &state)?;
                max_deviation = max_deviation.max(direct.max_deviation(&predicted));
                comparisons += 1;
            }
            for g in &layer.oneq_gates {
                block.apply_one_qubit(g.qubit, &g.matrix())?;
            }
            state = block;
        }
    }
    Ok(ConsistencyReport {
        trials,
        comparisons,
        max_deviation,
        tol,
        passed: max_deviation <= tol,
    })
}

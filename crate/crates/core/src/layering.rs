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

//! Segmentation of a circuit into functional configuration layers.
//!
//! The first layer is the identity when the circuit opens with a one-qubit
//! gate, otherwise the configuration accumulated by the opening CNOT run.
//! Every later CNOT run is accumulated from a fresh identity and opens a new
//! layer that owns the one-qubit gates following it.

use std::fmt::Write as _;

use crate::circuit::{Circuit, Cnot, Gate, OneQubitGate};
use crate::gf2::Configuration;

#[derive(Debug, Clone, PartialEq)]
pub struct Layer {
    pub config: Configuration,
    /// CNOTs that produced `config`, including any identity-composing runs
    /// merged into this layer.
    pub cnot_gates: Vec<Cnot>,
    pub oneq_gates: Vec<OneQubitGate>,
    /// Offsets into `oneq_gates` where a merged identity run sat in the
    /// original circuit. One-qubit gates on either side of such a point were
    /// not adjacent in the source.
    pub merge_points: Vec<usize>,
    /// No one-qubit gate acts under this layer.
    pub terminal: bool,
}

impl Layer {
    fn new(config: Configuration, cnot_gates: Vec<Cnot>) -> Self {
        Layer {
            config,
            cnot_gates,
            oneq_gates: Vec::new(),
            merge_points: Vec::new(),
            terminal: true,
        }
    }

    /// One-qubit gate count after fusing each CNOT-free span of the source:
    /// the number of distinct qubits touched, summed over spans.
    pub fn fused_unitary_count(&self) -> usize {
        let mut bounds = vec![0];
        bounds.extend(self.merge_points.iter().copied());
        bounds.push(self.oneq_gates.len());
        bounds
            .windows(2)
            .map(|w| {
                let mut qubits: Vec<usize> =
                    self.oneq_gates[w[0]..w[1]].iter().map(|g| g.qubit).collect();
                qubits.sort_unstable();
                qubits.dedup();
                qubits.len()
            })
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LayerDecomposition {
    pub n: usize,
    pub layers: Vec<Layer>,
    /// Notes about merged identity runs.
    pub warnings: Vec<String>,
}

impl LayerDecomposition {
    /// `N`.
    pub fn layer_count(&self) -> usize {
        self.layers.len()
    }

    /// `N_U`.
    pub fn unitary_count(&self) -> usize {
        self.layers.iter().map(|l| l.oneq_gates.len()).sum()
    }

    /// `N_CNOT`.
    pub fn cnot_count(&self) -> usize {
        self.layers.iter().map(|l| l.cnot_gates.len()).sum()
    }

    pub fn configs(&self) -> impl Iterator<Item = &Configuration> {
        self.layers.iter().map(|l| &l.config)
    }

    /// Layer-by-layer rendering: rows as bitstrings, then the gate lists.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "qubits {}", self.n);
        let _ = writeln!(
            out,
            "layers {}  unitaries {}  cnots {}",
            self.layer_count(),
            self.unitary_count(),
            self.cnot_count()
        );
        for (i, layer) in self.layers.iter().enumerate() {
            let _ = writeln!(
                out,
                "layer {}{}",
                i + 1,
                if layer.terminal { " (terminal)" } else { "" }
            );
            let _ = writeln!(out, "  rows  {}", layer.config.row_strings().join(" "));
            let cnots: Vec<String> = layer.cnot_gates.iter().map(Cnot::to_string).collect();
            let _ = writeln!(out, "  cnots {}", join_or_dash(&cnots, " "));
            let oneq: Vec<String> = layer.oneq_gates.iter().map(|g| g.to_string()).collect();
            let _ = writeln!(out, "  gates {}", join_or_dash(&oneq, "; "));
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }
}

fn join_or_dash(items: &[String], sep: &str) -> String {
    if items.is_empty() {
        "-".to_string()
    } else {
        items.join(sep)
    }
}

/// Splits `c` into configuration layers in one pass.
///
/// A CNOT run after the first layer that composes to the identity is folded
/// into the previous layer (with a warning) instead of opening a new one. A
/// trailing CNOT run becomes a terminal layer.
pub fn decompose(c: &Circuit) -> LayerDecomposition {
    let n = c.n();
    let mut layers: Vec<Layer> = Vec::new();
    let mut warnings = Vec::new();
    let mut run: Vec<Cnot> = Vec::new();
    let mut run_start = 0;
    let mut acc = Configuration::identity_unchecked(n);

    let mut close_run =
        |layers: &mut Vec<Layer>, run: &mut Vec<Cnot>, acc: &mut Configuration, end: usize| {
            let config = std::mem::replace(acc, Configuration::identity_unchecked(n));
            let gates = std::mem::take(run);
            let count = layers.len();
            match layers.last_mut() {
                Some(last) if config.is_identity() => {
                    warnings.push(format!(
                        "CNOT run at gates {}..{} composes to the identity; merged into layer {}",
                        end - gates.len() + 1,
                        end,
                        count
                    ));
                    last.merge_points.push(last.oneq_gates.len());
                    last.cnot_gates.extend(gates);
                }
                _ => layers.push(Layer::new(config, gates)),
            }
        };

    for (idx, gate) in c.gates().iter().enumerate() {
        match gate {
            Gate::Cnot(g) => {
                if run.is_empty() {
                    run_start = idx;
                }
                acc.rows_xor(g.target, g.control);
                run.push(*g);
            }
            Gate::OneQubit(u) => {
                if !run.is_empty() || layers.is_empty() {
                    close_run(&mut layers, &mut run, &mut acc, idx);
                }
                layers
                    .last_mut()
                    .expect("a layer exists after closing a run")
                    .oneq_gates
                    .push(u.clone());
            }
        }
    }
    if !run.is_empty() || layers.is_empty() {
        let end = if run.is_empty() { 0 } else { run_start + run.len() };
        close_run(&mut layers, &mut run, &mut acc, end);
    }
    for layer in &mut layers {
        layer.terminal = layer.oneq_gates.is_empty();
    }
    let d = LayerDecomposition {
        n,
        layers,
        warnings,
    };
    debug_assert!(d.cnot_count() + 1 >= d.layer_count());
    d
}

/// Length bounds relating the layer count to gate counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub n: usize,
    pub layers: usize,
    pub unitaries: usize,
    pub cnots: usize,
    /// `nN`.
    pub unitary_upper: u128,
    /// `(n² + n)N`.
    pub cnot_upper: u128,
    /// Some layer carries no one-qubit gate (a terminal layer).
    pub unitary_lower_violated: bool,
    /// Some layer holds more than `n` one-qubit gates even after fusion.
    pub unitary_upper_exceeded: bool,
    /// `N − 1 ≤ N_CNOT`.
    pub cnot_lower_holds: bool,
    pub cnot_upper_holds: bool,
}

pub fn bounds_report(d: &LayerDecomposition) -> BoundsReport {
    let n = d.n as u128;
    let big_n = d.layer_count() as u128;
    let cnots = d.cnot_count();
    let cnot_upper = (n * n + n) * big_n;
    let report = BoundsReport {
        n: d.n,
        layers: d.layer_count(),
        unitaries: d.unitary_count(),
        cnots,
        unitary_upper: n * big_n,
        cnot_upper,
        unitary_lower_violated: d.layers.iter().any(|l| l.oneq_gates.is_empty()),
        unitary_upper_exceeded: d.layers.iter().any(|l| l.fused_unitary_count() > d.n),
        cnot_lower_holds: cnots + 1 >= d.layer_count(),
        cnot_upper_holds: (cnots as u128) <= cnot_upper,
    };
    assert!(
        report.cnot_lower_holds,
        "decomposition violates N - 1 <= N_CNOT"
    );
    report
}

impl BoundsReport {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "N = {}\nN_U = {}  (N <= N_U <= nN = {})\nN_CNOT = {}  (N - 1 <= N_CNOT <= (n^2 + n)N = {})\n",
            self.layers, self.unitaries, self.unitary_upper, self.cnots, self.cnot_upper
        );
        if self.unitary_lower_violated {
            out.push_str("flag: unitary_lower_violated\n");
        }
        if self.unitary_upper_exceeded {
            out.push_str("flag: unitary_upper_exceeded\n");
        }
        out
    }
}

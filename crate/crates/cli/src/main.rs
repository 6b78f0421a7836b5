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

//! `qfc`: layer analysis, typing, counting, CNOT synthesis and verification
//! for quantum circuits in the qfc text format.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "qfc", version, about = "Qubit functional configuration toolkit")]
pub struct Cli {
    /// Emit a single JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Configuration layers and length bounds of a circuit.
    Analyze { file: PathBuf },
    /// Canonical type digest of a circuit.
    Type { file: PathBuf },
    /// Whether two circuits share a type (exit 0 either way).
    Equiv { a: PathBuf, b: PathBuf },
    /// Configuration and type counts.
    Count {
        /// Number of qubits.
        #[arg(short = 'n')]
        n: usize,
        /// Functional index for N_f(k).
        #[arg(short = 'k')]
        k: Option<usize>,
        /// Layer count for N_t.
        #[arg(short = 'N')]
        layers: Option<usize>,
    },
    /// CNOT sequence realizing a target configuration.
    Synth(SynthArgs),
    /// Rebuild a circuit with shortest CNOT blocks per layer.
    Minimize { file: PathBuf },
    /// Shortest-sequence dictionary for every configuration.
    Dict {
        /// Number of qubits (2 to 4, or 5 with --allow-large).
        #[arg(short = 'n')]
        n: usize,
        /// Write entries here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Permit n = 5 (about ten million entries).
        #[arg(long)]
        allow_large: bool,
        /// Distance table cache file, read if present and written otherwise.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Check pairing predictions against direct simulation.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Write the final state of one seeded run here.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Generate a circuit.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Args, Debug)]
pub struct SynthArgs {
    /// Rows as comma-separated bitstrings (q_1 first) or `q1^q2` terms.
    #[arg(long)]
    pub target: String,
    /// Shortest sequence by exhaustive search (default, n <= 6).
    #[arg(long, group = "method")]
    pub exact: bool,
    /// Gaussian elimination, any n.
    #[arg(long, group = "method")]
    pub gauss: bool,
    /// Copy-and-uncompute construction with n ancilla wires.
    #[arg(long, group = "method")]
    pub ancilla: bool,
    /// State cap for the six-qubit exact search.
    #[arg(long)]
    pub budget: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum GenCommand {
    /// Decomposed QFT without the final qubit reversal.
    Qft {
        /// Number of qubits.
        n: usize,
    },
    /// Named ansatz fixture (`ladder-wrap-6`, `kandala-6`).
    Fixture { name: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(commands::Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(commands::Failure::Report(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
    }
}

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

use std::fs;
use std::path::Path;

use qfc_core::circuit::{gen_fixture, gen_qft, Circuit};
use qfc_core::layering::{bounds_report, decompose, BoundsReport, LayerDecomposition};
use qfc_core::simulate::{self, consistency_check, StateVector};
use qfc_core::synthesis::{
    build_dictionary, minimize_circuit, synth_ancilla, synth_exact, synth_exact_with_budget,
    synth_gauss, DistanceTable, SynthesisResult, EXACT_MAX_QUBITS,
};
use qfc_core::typing::{canonicalize, circuit_type, count_report, CanonicalType};
use qfc_core::{Configuration, Error};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::{Cli, Command, GenCommand, SynthArgs};

/// Largest circuit the CLI will simulate.
const CLI_MAX_SIM_QUBITS: usize = 12;

pub enum Failure {
    /// Message for standard error.
    Domain(String),
    /// Complete report for standard output, exit status 1.
    Report(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Analyze { file } => analyze(cli, file),
        Command::Type { file } => type_of(cli, file),
        Command::Equiv { a, b } => equiv(cli, a, b),
        Command::Count { n, k, layers } => count(cli, *n, *k, *layers),
        Command::Synth(args) => synth(cli, args),
        Command::Minimize { file } => minimize(cli, file),
        Command::Dict {
            n,
            out,
            allow_large,
            cache,
        } => dict(cli, *n, out.as_deref(), *allow_large, cache.as_deref()),
        Command::Verify {
            file,
            trials,
            tol,
            dump,
        } => verify(cli, file, *trials, *tol, dump.as_deref()),
        Command::Gen(g) => generate(cli, g),
    }
}

fn load(path: &Path) -> Result<Circuit, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
    Circuit::parse(&text).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct LayerDoc {
    index: usize,
    terminal: bool,
    rows: Vec<String>,
    cnots: Vec<String>,
    gates: Vec<String>,
}

#[derive(Serialize)]
struct BoundsDoc {
    layers: usize,
    unitaries: usize,
    cnots: usize,
    unitary_upper: String,
    cnot_upper: String,
    unitary_lower_violated: bool,
    unitary_upper_exceeded: bool,
    cnot_lower_holds: bool,
    cnot_upper_holds: bool,
}

impl From<&BoundsReport> for BoundsDoc {
    fn from(b: &BoundsReport) -> Self {
        BoundsDoc {
            layers: b.layers,
            unitaries: b.unitaries,
            cnots: b.cnots,
            unitary_upper: b.unitary_upper.to_string(),
            cnot_upper: b.cnot_upper.to_string(),
            unitary_lower_violated: b.unitary_lower_violated,
            unitary_upper_exceeded: b.unitary_upper_exceeded,
            cnot_lower_holds: b.cnot_lower_holds,
            cnot_upper_holds: b.cnot_upper_holds,
        }
    }
}

#[derive(Serialize)]
struct AnalyzeDoc {
    n: usize,
    layers: Vec<LayerDoc>,
    warnings: Vec<String>,
    bounds: BoundsDoc,
}

fn layer_docs(d: &LayerDecomposition) -> Vec<LayerDoc> {
    d.layers
        .iter()
        .enumerate()
        .map(|(i, l)| LayerDoc {
            index: i + 1,
            terminal: l.terminal,
            rows: l.config.row_strings(),
            cnots: l.cnot_gates.iter().map(|g| g.to_string()).collect(),
            gates: l.oneq_gates.iter().map(|g| g.to_string()).collect(),
        })
        .collect()
}

fn analyze(cli: &Cli, file: &Path) -> Outcome {
    let d = decompose(&load(file)?);
    let bounds = bounds_report(&d);
    if cli.json {
        return Ok(to_json(&AnalyzeDoc {
            n: d.n,
            layers: layer_docs(&d),
            warnings: d.warnings.clone(),
            bounds: BoundsDoc::from(&bounds),
        }));
    }
    Ok(format!("{}{}", d.to_text(), bounds.to_text()))
}

#[derive(Serialize)]
struct TypeDoc {
    n: usize,
    layers: usize,
    digest: String,
    canonical: String,
    /// 1-based: canonical row i came from input row `perm[i - 1]`.
    perm: Vec<usize>,
}

fn canonical_of(file: &Path) -> Result<CanonicalType, Failure> {
    Ok(canonicalize(&circuit_type(&decompose(&load(file)?))))
}

fn type_doc(c: &CanonicalType) -> TypeDoc {
    TypeDoc {
        n: c.ty.n(),
        layers: c.ty.len(),
        digest: c.digest_hex(),
        canonical: c.serialize(),
        perm: c.perm.iter().map(|p| p + 1).collect(),
    }
}

fn type_of(cli: &Cli, file: &Path) -> Outcome {
    let doc = type_doc(&canonical_of(file)?);
    if cli.json {
        return Ok(to_json(&doc));
    }
    let perm: Vec<String> = doc.perm.iter().map(|p| p.to_string()).collect();
    Ok(format!(
        "digest {}\ncanonical {}\nperm {}\n",
        doc.digest,
        doc.canonical,
        perm.join(" ")
    ))
}

#[derive(Serialize)]
struct EquivDoc {
    equivalent: bool,
    a: TypeDoc,
    b: TypeDoc,
}

fn equiv(cli: &Cli, a: &Path, b: &Path) -> Outcome {
    let (ca, cb) = (canonical_of(a)?, canonical_of(b)?);
    let equivalent = ca.ty.n() == cb.ty.n() && ca.digest == cb.digest;
    if cli.json {
        return Ok(to_json(&EquivDoc {
            equivalent,
            a: type_doc(&ca),
            b: type_doc(&cb),
        }));
    }
    Ok(format!(
        "{}\na {}\nb {}\n",
        if equivalent { "equivalent" } else { "not equivalent" },
        ca.digest_hex(),
        cb.digest_hex()
    ))
}

#[derive(Serialize)]
struct CountDoc {
    n: usize,
    k: Option<usize>,
    layers: Option<usize>,
    n_f: Option<String>,
    n_c: String,
    n_t: Option<String>,
}

fn count(cli: &Cli, n: usize, k: Option<usize>, layers: Option<usize>) -> Outcome {
    let r = count_report(n, k, layers)?;
    if cli.json {
        return Ok(to_json(&CountDoc {
            n,
            k,
            layers,
            n_f: r.n_f.as_ref().map(|v| v.to_string()),
            n_c: r.n_c.to_string(),
            n_t: r.n_t.as_ref().map(|v| v.to_string()),
        }));
    }
    Ok(match (&r.n_f, &r.n_t) {
        (Some(f), None) => format!("{f}\n"),
        (None, Some(t)) => format!("{t}\n"),
        (None, None) => format!("{}\n", r.n_c),
        (Some(f), Some(t)) => format!("N_f = {f}\nN_c = {}\nN_t = {t}\n", r.n_c),
    })
}

#[derive(Serialize)]
struct SynthDoc {
    n: usize,
    target: Vec<String>,
    method: String,
    optimal: bool,
    length: usize,
    gates: Vec<String>,
}

fn synth_doc(target: &Configuration, r: &SynthesisResult) -> SynthDoc {
    SynthDoc {
        n: r.n,
        target: target.row_strings(),
        method: r.method.to_string(),
        optimal: r.optimal,
        length: r.len(),
        gates: r.gate_strings(),
    }
}

fn synth(cli: &Cli, args: &SynthArgs) -> Outcome {
    let target = Configuration::parse(&args.target)?;
    let n = target.n();
    let r = if args.ancilla {
        synth_ancilla(&target)?
    } else if args.gauss || (!args.exact && n > EXACT_MAX_QUBITS) {
        synth_gauss(&target)?
    } else {
        match args.budget {
            Some(b) => synth_exact_with_budget(&target, b)?,
            None => synth_exact(&target)?,
        }
    };
    let doc = synth_doc(&target, &r);
    if cli.json {
        return Ok(to_json(&doc));
    }
    let gates = if doc.gates.is_empty() {
        "-".to_string()
    } else {
        doc.gates.join(" ")
    };
    Ok(format!(
        "target {}\nmethod {}\noptimal {}\nlength {}\ngates {}\n",
        doc.target.join(","),
        doc.method,
        doc.optimal,
        doc.length,
        gates
    ))
}

#[derive(Serialize)]
struct MinimizeDoc {
    n: usize,
    optimal: bool,
    cnots_before: usize,
    cnots_after: usize,
    circuit: String,
}

fn minimize(cli: &Cli, file: &Path) -> Outcome {
    let m = minimize_circuit(&load(file)?)?;
    let text = m.circuit.to_text();
    if cli.json {
        return Ok(to_json(&MinimizeDoc {
            n: m.circuit.n(),
            optimal: m.optimal,
            cnots_before: m.cnots_before,
            cnots_after: m.cnots_after,
            circuit: text,
        }));
    }
    Ok(format!(
        "# cnots {} -> {}\n# optimal {}\n{text}",
        m.cnots_before, m.cnots_after, m.optimal
    ))
}

#[derive(Serialize)]
struct EntryDoc {
    digest: String,
    rows: Vec<String>,
    length: usize,
    gates: Vec<String>,
}

#[derive(Serialize)]
struct DictDoc {
    n: usize,
    entries: usize,
    out: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    table: Vec<EntryDoc>,
}

fn dict(cli: &Cli, n: usize, out: Option<&Path>, allow_large: bool, cache: Option<&Path>) -> Outcome {
    if let Some(path) = cache {
        DistanceTable::global_cached(n, path)?;
    }
    let entries = build_dictionary(n, allow_large)?;
    if let Some(path) = out {
        let mut text = String::new();
        for e in &entries {
            text.push_str(&e.to_line());
            text.push('\n');
        }
        fs::write(path, text).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
        let doc = DictDoc {
            n,
            entries: entries.len(),
            out: Some(path.display().to_string()),
            table: Vec::new(),
        };
        if cli.json {
            return Ok(to_json(&doc));
        }
        return Ok(format!("wrote {} entries to {}\n", doc.entries, path.display()));
    }
    if cli.json {
        let table = entries
            .iter()
            .map(|e| EntryDoc {
                digest: e.digest_hex(),
                rows: e.config.row_strings(),
                length: e.length,
                gates: e.gates.iter().map(|g| g.to_string()).collect(),
            })
            .collect();
        return Ok(to_json(&DictDoc {
            n,
            entries: entries.len(),
            out: None,
            table,
        }));
    }
    let mut text = String::new();
    for e in &entries {
        text.push_str(&e.to_line());
        text.push('\n');
    }
    Ok(text)
}

#[derive(Serialize)]
struct VerifyDoc {
    n: usize,
    seed: u64,
    trials: usize,
    comparisons: usize,
    max_deviation: f64,
    tol: f64,
    passed: bool,
}

fn verify(cli: &Cli, file: &Path, trials: usize, tol: f64, dump: Option<&Path>) -> Outcome {
    let c = load(file)?;
    if c.n() > CLI_MAX_SIM_QUBITS {
        return Err(Error::TooLarge {
            what: "simulation",
            n: c.n(),
            max: CLI_MAX_SIM_QUBITS,
        }
        .into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let report = consistency_check(&c, trials, tol, &mut rng)?;
    if let Some(path) = dump {
        let start = StateVector::random(c.n(), &mut rng)?;
        let end = simulate::run(&c, &start)?;
        fs::write(path, end.dump())
            .map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
    }
    let doc = VerifyDoc {
        n: c.n(),
        seed: cli.seed,
        trials: report.trials,
        comparisons: report.comparisons,
        max_deviation: report.max_deviation,
        tol: report.tol,
        passed: report.passed,
    };
    let out = if cli.json {
        to_json(&doc)
    } else {
        format!(
            "trials {}\ncomparisons {}\nmax_deviation {:e}\ntol {:e}\nresult {}\n",
            doc.trials,
            doc.comparisons,
            doc.max_deviation,
            doc.tol,
            if doc.passed { "pass" } else { "fail" }
        )
    };
    if doc.passed {
        Ok(out)
    } else {
        Err(Failure::Report(out))
    }
}

#[derive(Serialize)]
struct GenDoc {
    name: String,
    n: usize,
    gates: usize,
    circuit: String,
}

fn generate(cli: &Cli, g: &GenCommand) -> Outcome {
    let c = match g {
        GenCommand::Qft { n } => gen_qft(*n)?,
        GenCommand::Fixture { name } => gen_fixture(name)?,
    };
    let text = c.to_text();
    if cli.json {
        return Ok(to_json(&GenDoc {
            name: c.name.clone().unwrap_or_default(),
            n: c.n(),
            gates: c.len(),
            circuit: text,
        }));
    }
    Ok(text)
}

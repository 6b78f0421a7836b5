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

//! Circuit data model, the line-oriented text format, one-qubit fusion and the
//! circuit generators (decomposed QFT, ansatz fixtures).
//!
//! Text format:
//!
//! ```text
//! # comment
//! qubits 3
//! h 1
//! rz 2 0.5
//! cx 1 2
//! ```
//!
//! Indices are 1-based, angles are radians in plain decimal notation. Floats are
//! written with the shortest representation that parses back to the same bits.

use std::collections::HashMap;
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, ParseError, Result};
use crate::gf2::{check_qubits, check_wire};

/// Row-major 2×2 complex matrix.
pub type Matrix2 = [[Complex64; 2]; 2];

/// Tolerance on `u1² + u2² = 1` for the real `u` gate.
pub const NORM_TOL: f64 = 1e-9;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub fn matmul2(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    let mut out = [[ZERO; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    H,
    X,
    Y,
    Z,
    S,
    T,
    /// Phase `diag(1, e^{iθ})`.
    P,
    Rx,
    Ry,
    Rz,
    /// Real reflection `[[u1, u2], [u2, -u1]]`.
    U,
    U3,
    /// Explicit matrix: 8 reals, row-major, (re, im) per entry.
    M2,
}

impl GateKind {
    pub const ALL: [GateKind; 13] = [
        GateKind::H,
        GateKind::X,
        GateKind::Y,
        GateKind::Z,
        GateKind::S,
        GateKind::T,
        GateKind::P,
        GateKind::Rx,
        GateKind::Ry,
        GateKind::Rz,
        GateKind::U,
        GateKind::U3,
        GateKind::M2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "h",
            GateKind::X => "x",
            GateKind::Y => "y",
            GateKind::Z => "z",
            GateKind::S => "s",
            GateKind::T => "t",
            GateKind::P => "p",
            GateKind::Rx => "rx",
            GateKind::Ry => "ry",
            GateKind::Rz => "rz",
            GateKind::U => "u",
            GateKind::U3 => "u3",
            GateKind::M2 => "m2",
        }
    }

    pub fn from_name(name: &str) -> Option<GateKind> {
        GateKind::ALL.into_iter().find(|k| k.name() == name)
    }

    /// Number of real parameters.
    pub fn arity(self) -> usize {
        match self {
            GateKind::H | GateKind::X | GateKind::Y | GateKind::Z | GateKind::S | GateKind::T => 0,
            GateKind::P | GateKind::Rx | GateKind::Ry | GateKind::Rz => 1,
            GateKind::U => 2,
            GateKind::U3 => 3,
            GateKind::M2 => 8,
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OneQubitGate {
    pub kind: GateKind,
    pub qubit: usize,
    pub params: Vec<f64>,
}

impl OneQubitGate {
    /// Checks arity and, for `u`, normalization. Qubit range is checked when
    /// the gate joins a circuit.
    pub fn new(kind: GateKind, qubit: usize, params: Vec<f64>) -> Result<Self> {
        if params.len() != kind.arity() {
            return Err(Error::BadConfiguration(format!(
                "gate {kind} takes {} parameters, got {}",
                kind.arity(),
                params.len()
            )));
        }
        if kind == GateKind::U {
            let norm = params[0] * params[0] + params[1] * params[1];
            if (norm - 1.0).abs() > NORM_TOL {
                return Err(Error::NotNormalized(norm));
            }
        }
        Ok(OneQubitGate {
            kind,
            qubit,
            params,
        })
    }

    pub fn simple(kind: GateKind, qubit: usize) -> Self {
        debug_assert_eq!(kind.arity(), 0);
        OneQubitGate {
            kind,
            qubit,
            params: Vec::new(),
        }
    }

    pub fn rotation(kind: GateKind, qubit: usize, angle: f64) -> Self {
        debug_assert_eq!(kind.arity(), 1);
        OneQubitGate {
            kind,
            qubit,
            params: vec![angle],
        }
    }

    /// Packs an arbitrary 2×2 matrix as an `m2` gate.
    pub fn from_matrix(qubit: usize, m: &Matrix2) -> Self {
        let params = m
            .iter()
            .flat_map(|row| row.iter().flat_map(|z| [z.re, z.im]))
            .collect();
        OneQubitGate {
            kind: GateKind::M2,
            qubit,
            params,
        }
    }

    pub fn matrix(&self) -> Matrix2 {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let p = &self.params;
        match self.kind {
            GateKind::H => [
                [c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)],
                [c(FRAC_1_SQRT_2, 0.0), c(-FRAC_1_SQRT_2, 0.0)],
            ],
            GateKind::X => [[ZERO, ONE], [ONE, ZERO]],
            GateKind::Y => [[ZERO, c(0.0, -1.0)], [c(0.0, 1.0), ZERO]],
            GateKind::Z => [[ONE, ZERO], [ZERO, -ONE]],
            GateKind::S => [[ONE, ZERO], [ZERO, c(0.0, 1.0)]],
            GateKind::T => [[ONE, ZERO], [ZERO, Complex64::from_polar(1.0, FRAC_PI_4)]],
            GateKind::P => [[ONE, ZERO], [ZERO, Complex64::from_polar(1.0, p[0])]],
            GateKind::Rx => {
                let (s, co) = (p[0] / 2.0).sin_cos();
                [[c(co, 0.0), c(0.0, -s)], [c(0.0, -s), c(co, 0.0)]]
            }
            GateKind::Ry => {
                let (s, co) = (p[0] / 2.0).sin_cos();
                [[c(co, 0.0), c(-s, 0.0)], [c(s, 0.0), c(co, 0.0)]]
            }
            GateKind::Rz => [
                [Complex64::from_polar(1.0, -p[0] / 2.0), ZERO],
                [ZERO, Complex64::from_polar(1.0, p[0] / 2.0)],
            ],
            GateKind::U => [[c(p[0], 0.0), c(p[1], 0.0)], [c(p[1], 0.0), c(-p[0], 0.0)]],
            GateKind::U3 => {
                let (s, co) = (p[0] / 2.0).sin_cos();
                [
                    [c(co, 0.0), -Complex64::from_polar(s, p[2])],
                    [
                        Complex64::from_polar(s, p[1]),
                        Complex64::from_polar(co, p[1] + p[2]),
                    ],
                ]
            }
            GateKind::M2 => [[c(p[0], p[1]), c(p[2], p[3])], [c(p[4], p[5]), c(p[6], p[7])]],
        }
    }
}

/// `CNOT_{control→target}`, 1-based wires.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cnot {
    pub control: usize,
    pub target: usize,
}

impl Cnot {
    pub fn new(control: usize, target: usize) -> Self {
        Cnot { control, target }
    }
}

impl fmt::Display for Cnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}>{}", self.control, self.target)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    OneQubit(OneQubitGate),
    Cnot(Cnot),
}

impl Gate {
    pub fn cx(control: usize, target: usize) -> Gate {
        Gate::Cnot(Cnot::new(control, target))
    }

    pub fn is_cnot(&self) -> bool {
        matches!(self, Gate::Cnot(_))
    }
}

impl From<OneQubitGate> for Gate {
    fn from(g: OneQubitGate) -> Gate {
        Gate::OneQubit(g)
    }
}

impl From<Cnot> for Gate {
    fn from(g: Cnot) -> Gate {
        Gate::Cnot(g)
    }
}

impl fmt::Display for OneQubitGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind, self.qubit)?;
        for p in &self.params {
            write!(f, " {p}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::OneQubit(g) => g.fmt(f),
            Gate::Cnot(g) => write!(f, "cx {} {}", g.control, g.target),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n: usize,
    gates: Vec<Gate>,
    pub name: Option<String>,
}

impl Circuit {
    pub fn new(n: usize) -> Result<Self> {
        check_qubits(n)?;
        Ok(Circuit {
            n,
            gates: Vec::new(),
            name: None,
        })
    }

    pub fn with_gates<I: IntoIterator<Item = Gate>>(n: usize, gates: I) -> Result<Self> {
        let mut c = Circuit::new(n)?;
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: impl Into<Gate>) -> Result<()> {
        let gate = gate.into();
        match &gate {
            Gate::OneQubit(g) => check_wire(g.qubit, self.n)?,
            Gate::Cnot(g) => {
                check_wire(g.control, self.n)?;
                check_wire(g.target, self.n)?;
                if g.control == g.target {
                    return Err(Error::SameControlTarget(g.control));
                }
            }
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn cnot_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_cnot()).count()
    }

    pub fn one_qubit_count(&self) -> usize {
        self.gates.len() - self.cnot_count()
    }

    pub fn cnots(&self) -> impl Iterator<Item = &Cnot> {
        self.gates.iter().filter_map(|g| match g {
            Gate::Cnot(c) => Some(c),
            Gate::OneQubit(_) => None,
        })
    }

    /// Serializes to the text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("qubits {}\n", self.n);
        for g in &self.gates {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(parse_circuit(text)?)
    }
}

impl FromStr for Circuit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Circuit::parse(s)
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: line[..s].chars().count() + 1,
        });
    }
    out
}

/// Parses the circuit text format, reporting the position of the first error.
pub fn parse_circuit(text: &str) -> std::result::Result<Circuit, ParseError> {
    let mut circuit: Option<Circuit> = None;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.split('#').next().unwrap_or("");
        let tokens = tokenize(line);
        if tokens.is_empty() {
            continue;
        }
        let err = |column: usize, message: String| ParseError {
            line: line_no,
            column,
            message,
        };
        let head = &tokens[0];

        let Some(c) = circuit.as_mut() else {
            if head.text != "qubits" {
                return Err(err(head.column, "expected `qubits <n>` header".into()));
            }
            if tokens.len() != 2 {
                return Err(err(head.column, "header takes exactly one argument".into()));
            }
            let n = parse_index(&tokens[1]).map_err(|m| err(tokens[1].column, m))?;
            let made = Circuit::new(n).map_err(|e| err(tokens[1].column, e.to_string()))?;
            circuit = Some(made);
            continue;
        };

        if head.text == "qubits" {
            return Err(err(head.column, "duplicate `qubits` header".into()));
        }
        let n = c.n();
        let wire = |t: &Token| -> std::result::Result<usize, ParseError> {
            let i = parse_index(t).map_err(|m| err(t.column, m))?;
            if !(1..=n).contains(&i) {
                return Err(err(t.column, format!("index {i} out of range 1..={n}")));
            }
            Ok(i)
        };

        if head.text == "cx" {
            if tokens.len() != 3 {
                return Err(err(head.column, "cx takes a control and a target".into()));
            }
            let control = wire(&tokens[1])?;
            let target = wire(&tokens[2])?;
            if control == target {
                return Err(err(
                    tokens[2].column,
                    format!("control and target are both {control}"),
                ));
            }
            c.gates.push(Gate::cx(control, target));
            continue;
        }

        let kind = GateKind::from_name(head.text)
            .ok_or_else(|| err(head.column, format!("unknown gate `{}`", head.text)))?;
        if tokens.len() < 2 {
            return Err(err(head.column, format!("{kind} needs a qubit index")));
        }
        let qubit = wire(&tokens[1])?;
        let params = tokens[2..]
            .iter()
            .map(|t| parse_real(t.text).map_err(|m| err(t.column, m)))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if params.len() != kind.arity() {
            return Err(err(
                head.column,
                format!(
                    "{kind} takes {} parameters, got {}",
                    kind.arity(),
                    params.len()
                ),
            ));
        }
        let gate = OneQubitGate::new(kind, qubit, params)
            .map_err(|e| err(tokens.get(2).map_or(head.column, |t| t.column), e.to_string()))?;
        c.gates.push(Gate::OneQubit(gate));
    }
    circuit.ok_or(ParseError {
        line: last_line.max(1),
        column: 1,
        message: "missing `qubits <n>` header".into(),
    })
}

fn parse_index(t: &Token) -> std::result::Result<usize, String> {
    if t.text.is_empty() || !t.text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("malformed index `{}`", t.text));
    }
    t.text
        .parse()
        .map_err(|_| format!("malformed index `{}`", t.text))
}

fn parse_real(text: &str) -> std::result::Result<f64, String> {
    let ok_chars = text
        .bytes()
        .all(|b| b.is_ascii_digit() || matches!(b, b'+' | b'-' | b'.' | b'e' | b'E'));
    match text.parse::<f64>() {
        Ok(v) if ok_chars && v.is_finite() => Ok(v),
        _ => Err(format!("malformed number `{text}`")),
    }
}

/// Merges the one-qubit gates of each CNOT-free span so that every qubit
/// carries at most one gate there. Qubits hit more than once get a single
/// `m2` gate holding the product (later gate on the left); a lone gate is
/// kept as written. Within a span, output follows first appearance per qubit.
pub fn fuse_one_qubit_runs(c: &Circuit) -> Circuit {
    let mut out = Circuit {
        n: c.n,
        gates: Vec::with_capacity(c.gates.len()),
        name: c.name.clone(),
    };
    let mut span: Vec<&OneQubitGate> = Vec::new();
    let flush = |span: &mut Vec<&OneQubitGate>, out: &mut Vec<Gate>| {
        let mut order: Vec<usize> = Vec::new();
        let mut by_qubit: HashMap<usize, Vec<&OneQubitGate>> = HashMap::new();
        for g in span.drain(..) {
            by_qubit
                .entry(g.qubit)
                .or_insert_with(|| {
                    order.push(g.qubit);
                    Vec::new()
                })
                .push(g);
        }
        for q in order {
            let gates = &by_qubit[&q];
            if gates.len() == 1 {
                out.push(Gate::OneQubit(gates[0].clone()));
            } else {
                let m = gates
                    .iter()
                    .skip(1)
                    .fold(gates[0].matrix(), |acc, g| matmul2(&g.matrix(), &acc));
                out.push(Gate::OneQubit(OneQubitGate::from_matrix(q, &m)));
            }
        }
    };
    for g in &c.gates {
        match g {
            Gate::OneQubit(u) => span.push(u),
            Gate::Cnot(_) => {
                flush(&mut span, &mut out.gates);
                out.gates.push(g.clone());
            }
        }
    }
    flush(&mut span, &mut out.gates);
    out
}

/// The one-qubit gates used to decompose controlled-`R_h` in the QFT, where
/// `R_h = diag(1, e^{2πi/2^h})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QftGateSet {
    pub level: u32,
}

impl QftGateSet {
    pub fn new(level: u32) -> Self {
        QftGateSet { level }
    }

    /// `α_h = 2π / 2^{h+1}`, half the controlled phase.
    pub fn alpha(&self) -> f64 {
        2.0 * PI / 2f64.powi(self.level as i32 + 1)
    }

    /// `A_h = R_z(2π/2^h)`, on the target after the second CNOT.
    pub fn a(&self, qubit: usize) -> OneQubitGate {
        OneQubitGate::rotation(GateKind::Rz, qubit, 2.0 * self.alpha())
    }

    /// `B_h = R_z(-2π/2^{h+1})`, on the target between the CNOTs.
    pub fn b(&self, qubit: usize) -> OneQubitGate {
        OneQubitGate::rotation(GateKind::Rz, qubit, -self.alpha())
    }

    /// `C_h = B_h`, on the target before the first CNOT.
    pub fn c(&self, qubit: usize) -> OneQubitGate {
        self.b(qubit)
    }

    /// `P_h = diag(1, e^{iα_h})`, on the control.
    pub fn p(&self, qubit: usize) -> OneQubitGate {
        OneQubitGate::rotation(GateKind::P, qubit, self.alpha())
    }

    /// Controlled-`R_h` from `control` onto `target` as
    /// `C_h(t) · CNOT · B_h(t) · CNOT · A_h(t) · P_h(c)`.
    pub fn controlled_phase(&self, control: usize, target: usize) -> Vec<Gate> {
        vec![
            self.c(target).into(),
            Gate::cx(control, target),
            self.b(target).into(),
            Gate::cx(control, target),
            self.a(target).into(),
            self.p(control).into(),
        ]
    }
}

/// Decomposed QFT on `n` qubits without the final qubit reversal: output
/// qubit `k` holds the Fourier component that the textbook circuit routes to
/// qubit `n + 1 - k`.
pub fn gen_qft(n: usize) -> Result<Circuit> {
    if !(2..=16).contains(&n) {
        return Err(Error::QubitCount(n, 2, 16));
    }
    let mut c = Circuit::new(n)?.named(format!("qft-{n}"));
    for target in 1..=n {
        c.push(OneQubitGate::simple(GateKind::H, target))?;
        for control in target + 1..=n {
            let level = (control - target + 1) as u32;
            for g in QftGateSet::new(level).controlled_phase(control, target) {
                c.push(g)?;
            }
        }
    }
    Ok(c)
}

pub const FIXTURES: [&str; 2] = ["ladder-wrap-6", "kandala-6"];

/// CNOT entangler block of a named ansatz fixture.
pub fn fixture_entangler(name: &str) -> Result<Vec<Cnot>> {
    let pairs: &[(usize, usize)] = match name {
        "ladder-wrap-6" => &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)],
        "kandala-6" => &[(2, 1), (1, 3), (4, 5), (6, 5), (2, 4)],
        _ => return Err(Error::UnknownFixture(name.to_string())),
    };
    Ok(pairs.iter().map(|&(c, t)| Cnot::new(c, t)).collect())
}

/// One ansatz layer: `rz` on every qubit, the entangler, `rz` on every qubit.
pub fn gen_fixture(name: &str) -> Result<Circuit> {
    let block = fixture_entangler(name)?;
    let n = 6;
    let mut c = Circuit::new(n)?.named(name);
    for q in 1..=n {
        c.push(OneQubitGate::rotation(GateKind::Rz, q, 0.1 * q as f64))?;
    }
    for g in block {
        c.push(g)?;
    }
    for q in 1..=n {
        c.push(OneQubitGate::rotation(GateKind::Rz, q, -0.3 * q as f64))?;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::Configuration;

    fn close(a: &Matrix2, b: &Matrix2, tol: f64) -> bool {
        a.iter()
            .flatten()
            .zip(b.iter().flatten())
            .all(|(x, y)| (x - y).norm() <= tol)
    }

    #[test]
    fn parses_ladder_block() {
        let c = Circuit::parse("qubits 3\ncx 1 2\ncx 2 3\n").unwrap();
        assert_eq!(c.n(), 3);
        assert_eq!(c.gates(), &[Gate::cx(1, 2), Gate::cx(2, 3)]);
        let cfg = Configuration::identity(3)
            .unwrap()
            .apply_cnots(c.cnots())
            .unwrap();
        assert_eq!(cfg, Configuration::parse("q1,q1^q2,q1^q2^q3").unwrap());
    }

    #[test]
    fn parses_single_gate_and_comments() {
        let c = Circuit::parse("# a comment\n\nqubits 1  # trailing\nh 1\n").unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.gates()[0], OneQubitGate::simple(GateKind::H, 1).into());
    }

    fn parse_err(text: &str) -> ParseError {
        parse_circuit(text).unwrap_err()
    }

    #[test]
    fn parse_errors_carry_positions() {
        let e = parse_err("qubits 2\ncx 1 1\n");
        assert_eq!((e.line, e.column), (2, 6));
        assert!(e.message.contains("control and target"));

        let e = parse_err("qubits 2\nfoo 1\n");
        assert_eq!((e.line, e.column), (2, 1));
        assert!(e.message.contains("unknown gate"));

        let e = parse_err("qubits 2\n  h 3\n");
        assert_eq!((e.line, e.column), (2, 5));
        assert!(e.message.contains("out of range"));

        let e = parse_err("qubits 2\nrz 1 0.5x\n");
        assert_eq!((e.line, e.column), (2, 6));
        assert!(e.message.contains("malformed number"));

        let e = parse_err("qubits 2\nrz 1 inf\n");
        assert!(e.message.contains("malformed number"));

        let e = parse_err("qubits 2\nu 1 0.6 0.7\n");
        assert_eq!((e.line, e.column), (2, 5));
        assert!(e.message.contains("not normalized"));

        assert!(parse_err("h 1\n").message.contains("header"));
        assert!(parse_err("").message.contains("missing"));
        assert!(parse_err("qubits 0\n").message.contains("qubit count"));
        assert!(parse_err("qubits 2\nrz 1\n").message.contains("parameters"));
        assert!(parse_err("qubits 2\ncx 1 x\n").message.contains("malformed index"));
    }

    #[test]
    fn accepts_normalized_u() {
        let c = Circuit::parse("qubits 1\nu 1 0.6 0.8\n").unwrap();
        let m = match &c.gates()[0] {
            Gate::OneQubit(g) => g.matrix(),
            _ => unreachable!(),
        };
        assert_eq!(m[1][1].re, -0.6);
        assert_eq!(m[0][1].re, 0.8);
    }

    #[test]
    fn round_trips() {
        let ladder = Circuit::parse("qubits 3\ncx 1 2\ncx 2 3\n").unwrap();
        assert_eq!(Circuit::parse(&ladder.to_text()).unwrap().gates(), ladder.gates());
        let qft = gen_qft(3).unwrap();
        assert_eq!(Circuit::parse(&qft.to_text()).unwrap().gates(), qft.gates());
        assert_eq!(Circuit::new(4).unwrap().to_text(), "qubits 4\n");
    }

    #[test]
    fn fusion_examples() {
        let hh = Circuit::parse("qubits 1\nh 1\nh 1\n").unwrap();
        let fused = fuse_one_qubit_runs(&hh);
        assert_eq!(fused.len(), 1);
        let Gate::OneQubit(g) = &fused.gates()[0] else {
            panic!()
        };
        assert_eq!(g.kind, GateKind::M2);
        let id = [[ONE, ZERO], [ZERO, ONE]];
        assert!(close(&g.matrix(), &id, 1e-15));

        let split = Circuit::parse("qubits 2\nh 1\ncx 1 2\nh 1\n").unwrap();
        assert_eq!(fuse_one_qubit_runs(&split).gates(), split.gates());

        let (a, b) = (0.37, -1.91);
        let rz = Circuit::parse(&format!("qubits 1\nrz 1 {a}\nrz 1 {b}\n")).unwrap();
        let fused = fuse_one_qubit_runs(&rz);
        let Gate::OneQubit(g) = &fused.gates()[0] else {
            panic!()
        };
        let s = a + b;
        let expected = [
            [Complex64::from_polar(1.0, -s / 2.0), ZERO],
            [ZERO, Complex64::from_polar(1.0, s / 2.0)],
        ];
        assert!(close(&g.matrix(), &expected, 1e-15));
    }

    #[test]
    fn fusion_groups_by_qubit_within_span() {
        let c = Circuit::parse("qubits 2\nh 1\nx 2\ns 1\ncx 1 2\nz 2\n").unwrap();
        let f = fuse_one_qubit_runs(&c);
        assert_eq!(f.len(), 4);
        let Gate::OneQubit(g) = &f.gates()[0] else {
            panic!()
        };
        assert_eq!((g.kind, g.qubit), (GateKind::M2, 1));
        assert_eq!(f.gates()[1], OneQubitGate::simple(GateKind::X, 2).into());
    }

    #[test]
    fn qft_structure() {
        for n in 2..=8 {
            let c = gen_qft(n).unwrap();
            assert_eq!(c.cnot_count(), n * n - n);
        }
        assert!(gen_qft(1).is_err());
        assert!(gen_qft(17).is_err());
        let set = QftGateSet::new(2);
        assert_eq!(set.alpha(), PI / 4.0);
        assert_eq!(set.a(1).params, vec![PI / 2.0]);
        assert_eq!(set.b(1).params, vec![-PI / 4.0]);
    }

    #[test]
    fn fixture_entanglers_match_ansatz_configurations() {
        let ladder = Configuration::identity(6)
            .unwrap()
            .apply_cnots(&fixture_entangler("ladder-wrap-6").unwrap())
            .unwrap();
        let ladder_rows = Configuration::parse(
            "q2^q3^q4^q5^q6,q1^q2,q1^q2^q3,q1^q2^q3^q4,q1^q2^q3^q4^q5,q1^q2^q3^q4^q5^q6",
        )
        .unwrap();
        assert_eq!(ladder, ladder_rows);
        let kandala = Configuration::identity(6)
            .unwrap()
            .apply_cnots(&fixture_entangler("kandala-6").unwrap())
            .unwrap();
        let kandala_rows = Configuration::parse("q1^q2,q2,q1^q2^q3,q2^q4,q4^q5^q6,q6").unwrap();
        assert_eq!(kandala, kandala_rows);
        assert!(ladder.is_valid() && kandala.is_valid());
        assert!(gen_fixture("nope").is_err());
        assert_eq!(gen_fixture("kandala-6").unwrap().len(), 17);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn gate(n: usize) -> impl Strategy<Value = Gate> {
            let oneq = (0..GateKind::ALL.len(), 1..=n, prop::collection::vec(-1e3f64..1e3, 8))
                .prop_map(|(k, q, ps)| {
                    let kind = GateKind::ALL[k];
                    let params = if kind == GateKind::U {
                        let t = ps[0];
                        vec![t.cos(), t.sin()]
                    } else {
                        ps[..kind.arity()].to_vec()
                    };
                    Gate::OneQubit(OneQubitGate::new(kind, q, params).unwrap())
                });
            let cx = (1..=n, 1..n).prop_map(|(c, t)| Gate::cx(c, if t >= c { t + 1 } else { t }));
            prop_oneof![oneq, cx]
        }

        proptest! {
            #[test]
            fn text_round_trip_is_bit_exact(gates in prop::collection::vec(gate(4), 0..40)) {
                let c = Circuit::with_gates(4, gates).unwrap();
                let back = Circuit::parse(&c.to_text()).unwrap();
                prop_assert_eq!(back.gates().len(), c.gates().len());
                for (a, b) in back.gates().iter().zip(c.gates()) {
                    match (a, b) {
                        (Gate::OneQubit(x), Gate::OneQubit(y)) => {
                            prop_assert_eq!(x.kind, y.kind);
                            prop_assert_eq!(x.qubit, y.qubit);
                            let xb: Vec<u64> = x.params.iter().map(|p| p.to_bits()).collect();
                            let yb: Vec<u64> = y.params.iter().map(|p| p.to_bits()).collect();
                            prop_assert_eq!(xb, yb);
                        }
                        _ => prop_assert_eq!(a, b),
                    }
                }
            }
        }
    }
}

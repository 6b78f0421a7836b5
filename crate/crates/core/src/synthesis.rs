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

//! CNOT sequences that realize a target configuration from the identity.
//!
//! Three routes are provided:
//!
//! * [`synth_ancilla`] copies the inputs onto `n` ancilla wires and rebuilds
//!   each row from the copies (at most `n² + n` gates, `2n` wires);
//! * [`synth_gauss`] runs Gauss–Jordan elimination on the target and replays
//!   the row operations backwards (at most `n²` gates);
//! * [`synth_exact`] returns a shortest sequence, from a breadth-first
//!   distance table over all of GL(n, 2) for `n ≤ 5` and from a bidirectional
//!   search for `n = 6`.
//!
//! The Cayley graph searched by the exact route has one vertex per invertible
//! matrix and one edge per row addition `row h ← row h ⊕ row j`. Each
//! generator is an involution, so distances are symmetric and
//! `d(C) = d(C⁻¹)`.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;
use std::hash::{BuildHasherDefault, Hasher};
use std::io::{Read, Write};
use std::path::Path;
use std::sync::OnceLock;

use crate::circuit::{fuse_one_qubit_runs, Circuit, Cnot, Gate};
use crate::error::{Error, Result};
use crate::gf2::{full_mask, Configuration};
use crate::layering::decompose;
use crate::typing::{digest, CircuitType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Ancilla,
    Gauss,
    Exact,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Ancilla => "ancilla",
            Method::Gauss => "gauss",
            Method::Exact => "exact",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthesisResult {
    /// Computational qubit count; ancilla `a_k` is wire `n + k`.
    pub n: usize,
    pub gates: Vec<Cnot>,
    pub method: Method,
    /// The sequence is certified shortest. Only set by the exact route.
    pub optimal: bool,
}

impl SynthesisResult {
    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Total wire count the gates address.
    pub fn wires(&self) -> usize {
        match self.method {
            Method::Ancilla => 2 * self.n,
            _ => self.n,
        }
    }

    /// Rows held by the computational wires after running the gates from
    /// the identity (ancillas start as the zero functional).
    pub fn computational_rows(&self) -> Result<Configuration> {
        let rows = track_wires(self.n, self.wires(), &self.gates)?;
        Configuration::from_bits(self.n, &rows[..self.n])
    }

    pub fn realizes(&self, target: &Configuration) -> bool {
        self.computational_rows().is_ok_and(|c| &c == target)
    }

    /// Gates as `j>h`, ancillas written `a<k>`.
    pub fn gate_strings(&self) -> Vec<String> {
        let wire = |w: usize| {
            if w > self.n {
                format!("a{}", w - self.n)
            } else {
                w.to_string()
            }
        };
        self.gates
            .iter()
            .map(|g| format!("{}>{}", wire(g.control), wire(g.target)))
            .collect()
    }
}

/// Rectangular GF(2) tracking: `wires` rows over `n` variables, the first `n`
/// starting as `q_1..q_n` and the rest as the zero functional.
pub fn track_wires(n: usize, wires: usize, gates: &[Cnot]) -> Result<Vec<u64>> {
    let mut rows = Configuration::identity(n)?.rows().to_vec();
    rows.resize(wires, 0);
    for g in gates {
        for w in [g.control, g.target] {
            if !(1..=wires).contains(&w) {
                return Err(Error::IndexOutOfRange {
                    index: w,
                    max: wires,
                });
            }
        }
        if g.control == g.target {
            return Err(Error::SameControlTarget(g.control));
        }
        rows[g.target - 1] ^= rows[g.control - 1];
    }
    Ok(rows)
}

fn require_valid(target: &Configuration) -> Result<()> {
    if target.is_valid() {
        Ok(())
    } else {
        Err(Error::Singular {
            rank: target.rank(),
            n: target.n(),
        })
    }
}

/// Copy stage `CNOT_{k→a_k}`, then for each row `k` in order one
/// `CNOT_{a_j→k}` per `j` in `support(f_k) △ {k}`, ancillas ascending.
pub fn synth_ancilla(target: &Configuration) -> Result<SynthesisResult> {
    require_valid(target)?;
    let n = target.n();
    let mut gates = Vec::new();
    for k in 1..=n {
        let mut from = target.row(k).support();
        match from.binary_search(&k) {
            Ok(pos) => {
                from.remove(pos);
            }
            Err(pos) => from.insert(pos, k),
        }
        gates.extend(from.into_iter().map(|j| Cnot::new(n + j, k)));
    }
    if !gates.is_empty() {
        let copies = (1..=n).map(|k| Cnot::new(k, n + k));
        gates.splice(0..0, copies);
    }
    let result = SynthesisResult {
        n,
        gates,
        method: Method::Ancilla,
        optimal: false,
    };
    if !result.realizes(target) {
        return Err(Error::BadConfiguration(format!(
            "ancilla construction failed to reproduce {target}"
        )));
    }
    Ok(result)
}

/// Gauss–Jordan: columns left to right, the pivot brought up by a row
/// addition from the first row below with that bit, then eliminated below and
/// above. The recorded additions, reversed, build the target.
pub fn synth_gauss(target: &Configuration) -> Result<SynthesisResult> {
    require_valid(target)?;
    let n = target.n();
    let mut m = target.clone();
    let mut ops: Vec<Cnot> = Vec::new();
    let mut add = |m: &mut Configuration, control: usize, t: usize| {
        m.rows_xor(t, control);
        ops.push(Cnot::new(control, t));
    };
    for col in 1..=n {
        let bit = m.column_bit(col);
        if m.rows()[col - 1] & bit == 0 {
            let p = (col + 1..=n)
                .find(|&r| m.rows()[r - 1] & bit != 0)
                .expect("valid target has a pivot in every column");
            add(&mut m, p, col);
        }
        let below = (col + 1..=n).chain(1..col);
        for r in below {
            if m.rows()[r - 1] & bit != 0 {
                add(&mut m, col, r);
            }
        }
    }
    debug_assert!(m.is_identity());
    ops.reverse();
    Ok(SynthesisResult {
        n,
        gates: ops,
        method: Method::Gauss,
        optimal: false,
    })
}

/// Largest `n` served by the precomputed distance table.
pub const TABLE_MAX_QUBITS: usize = 5;
/// Largest `n` accepted by [`synth_exact`].
pub const EXACT_MAX_QUBITS: usize = 6;
/// Default cap on visited states for the bidirectional search.
pub const DEFAULT_SEARCH_BUDGET: usize = 40_000_000;
/// Distance byte for matrices that are not reachable (singular).
pub const UNREACHABLE: u8 = 255;
const CACHE_MAGIC: &[u8; 7] = b"QFCBFS1";

/// Row addition generators `(control, target)` in lexicographic order.
fn generators(n: usize) -> Vec<(usize, usize)> {
    let mut g = Vec::with_capacity(n * n.saturating_sub(1));
    for j in 1..=n {
        for h in 1..=n {
            if j != h {
                g.push((j, h));
            }
        }
    }
    g
}

/// Packs rows into `n²` bits, row 1 most significant.
pub fn pack(c: &Configuration) -> u64 {
    let n = c.n();
    c.rows().iter().fold(0u64, |acc, &r| (acc << n) | r)
}

pub fn unpack(n: usize, packed: u64) -> Configuration {
    let mask = full_mask(n);
    let rows = (0..n)
        .map(|k| (packed >> (n * (n - 1 - k))) & mask)
        .collect();
    Configuration::from_bits_unchecked(n, rows)
}

#[inline]
fn packed_shift(n: usize, row: usize) -> usize {
    n * (n - row)
}

/// `row h ← row h ⊕ row j` on a packed matrix.
#[inline]
fn packed_apply(n: usize, row_mask: u64, s: u64, j: usize, h: usize) -> u64 {
    let r = (s >> packed_shift(n, j)) & row_mask;
    s ^ (r << packed_shift(n, h))
}

/// Breadth-first distances from the identity over every `n × n` matrix,
/// indexed by [`pack`]. Singular matrices hold [`UNREACHABLE`].
#[derive(Clone, PartialEq, Eq)]
pub struct DistanceTable {
    n: usize,
    dist: Vec<u8>,
}

impl fmt::Debug for DistanceTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DistanceTable")
            .field("n", &self.n)
            .field("entries", &self.dist.len())
            .finish()
    }
}

static TABLES: [OnceLock<DistanceTable>; TABLE_MAX_QUBITS + 1] = [
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
];

fn check_table_n(n: usize) -> Result<()> {
    if (1..=TABLE_MAX_QUBITS).contains(&n) {
        Ok(())
    } else {
        Err(Error::TooLarge {
            what: "distance table",
            n,
            max: TABLE_MAX_QUBITS,
        })
    }
}

impl DistanceTable {
    pub fn build(n: usize) -> Result<Self> {
        check_table_n(n)?;
        let mut dist = vec![UNREACHABLE; 1usize << (n * n)];
        let row_mask = full_mask(n);
        let gens = generators(n);
        let start = pack(&Configuration::identity_unchecked(n));
        dist[start as usize] = 0;
        let mut frontier = vec![start];
        let mut depth = 0u8;
        while !frontier.is_empty() {
            let mut next = Vec::with_capacity(frontier.len() * 2);
            for &s in &frontier {
                for &(j, h) in &gens {
                    let t = packed_apply(n, row_mask, s, j, h);
                    let slot = &mut dist[t as usize];
                    if *slot == UNREACHABLE {
                        *slot = depth + 1;
                        next.push(t);
                    }
                }
            }
            frontier = next;
            depth += 1;
        }
        Ok(DistanceTable { n, dist })
    }

    /// Shared table for `n`, built on first use.
    pub fn global(n: usize) -> Result<&'static DistanceTable> {
        check_table_n(n)?;
        if let Some(t) = TABLES[n].get() {
            return Ok(t);
        }
        let built = DistanceTable::build(n)?;
        Ok(TABLES[n].get_or_init(|| built))
    }

    /// Shared table for `n`, read from `path` when present and written there
    /// after building otherwise.
    pub fn global_cached(n: usize, path: &Path) -> Result<&'static DistanceTable> {
        check_table_n(n)?;
        if let Some(t) = TABLES[n].get() {
            return Ok(t);
        }
        let table = if path.exists() {
            let mut f = std::fs::File::open(path).map_err(|e| Error::BadCache(e.to_string()))?;
            let t = DistanceTable::read_from(&mut f)?;
            if t.n != n {
                return Err(Error::BadCache(format!("cache holds n = {}, wanted {n}", t.n)));
            }
            t
        } else {
            let t = DistanceTable::build(n)?;
            let mut f =
                std::fs::File::create(path).map_err(|e| Error::BadCache(e.to_string()))?;
            t.write_to(&mut f)?;
            t
        };
        Ok(TABLES[n].get_or_init(|| table))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn distances(&self) -> &[u8] {
        &self.dist
    }

    /// Distance from the identity, `None` for singular input.
    pub fn distance(&self, c: &Configuration) -> Option<u8> {
        assert_eq!(c.n(), self.n);
        match self.dist[pack(c) as usize] {
            UNREACHABLE => None,
            d => Some(d),
        }
    }

    pub fn max_distance(&self) -> u8 {
        self.dist
            .iter()
            .copied()
            .filter(|&d| d != UNREACHABLE)
            .max()
            .unwrap_or(0)
    }

    /// A shortest sequence reaching `c`. Walking back from `c`, the last gate
    /// is always the lexicographically smallest `(j, h)` that steps one
    /// closer to the identity.
    pub fn witness(&self, c: &Configuration) -> Option<Vec<Cnot>> {
        let n = self.n;
        let row_mask = full_mask(n);
        let gens = generators(n);
        let mut s = pack(c);
        let mut d = self.dist[s as usize];
        if d == UNREACHABLE {
            return None;
        }
        let mut rev = Vec::with_capacity(d as usize);
        while d > 0 {
            let (j, h, prev) = gens
                .iter()
                .map(|&(j, h)| (j, h, packed_apply(n, row_mask, s, j, h)))
                .find(|&(_, _, p)| self.dist[p as usize] == d - 1)
                .expect("a BFS vertex at depth d has a neighbour at depth d - 1");
            rev.push(Cnot::new(j, h));
            s = prev;
            d -= 1;
        }
        rev.reverse();
        Some(rev)
    }

    /// `QFCBFS1`, one byte `n`, then `2^(n²)` distance bytes.
    pub fn write_to<W: Write>(&self, w: &mut W) -> Result<()> {
        let io = |e: std::io::Error| Error::BadCache(e.to_string());
        w.write_all(CACHE_MAGIC).map_err(io)?;
        w.write_all(&[self.n as u8]).map_err(io)?;
        w.write_all(&self.dist).map_err(io)?;
        Ok(())
    }

    pub fn read_from<R: Read>(r: &mut R) -> Result<Self> {
        let io = |e: std::io::Error| Error::BadCache(e.to_string());
        let mut header = [0u8; 8];
        r.read_exact(&mut header).map_err(io)?;
        if &header[..7] != CACHE_MAGIC {
            return Err(Error::BadCache("bad magic".into()));
        }
        let n = header[7] as usize;
        check_table_n(n).map_err(|e| Error::BadCache(e.to_string()))?;
        let mut dist = vec![0u8; 1usize << (n * n)];
        r.read_exact(&mut dist).map_err(io)?;
        let mut extra = [0u8; 1];
        if r.read(&mut extra).map_err(io)? != 0 {
            return Err(Error::BadCache("trailing bytes".into()));
        }
        if dist[pack(&Configuration::identity_unchecked(n)) as usize] != 0 {
            return Err(Error::BadCache("identity is not at distance 0".into()));
        }
        Ok(DistanceTable { n, dist })
    }
}

/// splitmix64 finalizer; packed matrices hash as a single `u64`.
#[derive(Default)]
struct PackedHasher(u64);

impl Hasher for PackedHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.write_u64((self.0 << 8) | u64::from(b));
        }
    }

    fn write_u64(&mut self, v: u64) {
        let mut z = v.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        self.0 = z ^ (z >> 31);
    }
}

const ROOT: u8 = u8::MAX;

/// Visited states of one search direction, each with the index of the
/// generator that reached it.
#[derive(Default)]
struct Visited(HashMap<u64, u8, BuildHasherDefault<PackedHasher>>);

impl Visited {
    fn len(&self) -> usize {
        self.0.len()
    }

    /// `None` if unseen, `Some(None)` at the root.
    fn get(&self, key: u64) -> Option<Option<usize>> {
        self.0
            .get(&key)
            .map(|&g| (g != ROOT).then_some(g as usize))
    }

    fn contains(&self, key: u64) -> bool {
        self.0.contains_key(&key)
    }

    /// Records `key` unless already seen; returns whether it was new.
    fn insert(&mut self, key: u64, gen: Option<usize>) -> bool {
        match self.0.entry(key) {
            Entry::Occupied(_) => false,
            Entry::Vacant(v) => {
                v.insert(gen.map_or(ROOT, |g| g as u8));
                true
            }
        }
    }
}

/// Shortest path between the identity and `target` by level-synchronous
/// search from both ends, always growing the smaller frontier. The first
/// level that produces a meeting yields an optimal path.
fn bidirectional(target: &Configuration, budget: usize) -> Result<Vec<Cnot>> {
    let n = target.n();
    let row_mask = full_mask(n);
    let gens = generators(n);
    let start = pack(&Configuration::identity_unchecked(n));
    let goal = pack(target);
    if start == goal {
        return Ok(Vec::new());
    }
    let mut seen = [Visited::default(), Visited::default()];
    seen[0].insert(start, None);
    seen[1].insert(goal, None);
    let mut frontiers = [vec![start], vec![goal]];

    let meet = 'search: loop {
        let side = usize::from(frontiers[1].len() < frontiers[0].len());
        let other = 1 - side;
        let mut next = Vec::new();
        let mut found: Option<u64> = None;
        for &s in &frontiers[side] {
            for (gi, &(j, h)) in gens.iter().enumerate() {
                let t = packed_apply(n, row_mask, s, j, h);
                if !seen[side].insert(t, Some(gi)) {
                    continue;
                }
                next.push(t);
                if found.is_none() && seen[other].contains(t) {
                    found = Some(t);
                }
            }
            if seen[0].len() + seen[1].len() > budget {
                return Err(Error::SearchBudget(budget));
            }
        }
        if let Some(m) = found {
            break 'search m;
        }
        if next.is_empty() {
            return Err(Error::Singular {
                rank: target.rank(),
                n,
            });
        }
        frontiers[side] = next;
    };

    // identity → meet
    let mut forward = Vec::new();
    let mut s = meet;
    while let Some(Some(gi)) = seen[0].get(s) {
        let (j, h) = gens[gi];
        forward.push(Cnot::new(j, h));
        s = packed_apply(n, row_mask, s, j, h);
    }
    forward.reverse();
    // meet → target
    let mut s = meet;
    while let Some(Some(gi)) = seen[1].get(s) {
        let (j, h) = gens[gi];
        forward.push(Cnot::new(j, h));
        s = packed_apply(n, row_mask, s, j, h);
    }
    Ok(forward)
}

/// Shortest CNOT sequence from the identity to `target` (`n ≤ 6`).
pub fn synth_exact(target: &Configuration) -> Result<SynthesisResult> {
    synth_exact_with_budget(target, DEFAULT_SEARCH_BUDGET)
}

/// As [`synth_exact`]; `budget` caps the states visited when `n = 6`.
pub fn synth_exact_with_budget(target: &Configuration, budget: usize) -> Result<SynthesisResult> {
    require_valid(target)?;
    let n = target.n();
    let gates = if n <= TABLE_MAX_QUBITS {
        DistanceTable::global(n)?
            .witness(target)
            .expect("valid configurations are reachable")
    } else if n <= EXACT_MAX_QUBITS {
        bidirectional(target, budget)?
    } else {
        return Err(Error::TooLarge {
            what: "exact synthesis",
            n,
            max: EXACT_MAX_QUBITS,
        });
    };
    Ok(SynthesisResult {
        n,
        gates,
        method: Method::Exact,
        optimal: true,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimized {
    pub circuit: Circuit,
    /// Every layer's CNOT block is certified shortest.
    pub optimal: bool,
    pub cnots_before: usize,
    pub cnots_after: usize,
}

/// Rebuilds `c` layer by layer: each layer's CNOTs are replaced by a shortest
/// sequence for its configuration, then its one-qubit gates are fused.
///
/// Beyond `n = 6`, or when the `n = 6` search runs out of budget, the layer
/// falls back to [`synth_gauss`] (or keeps its original block if that is
/// shorter) and the result is marked non-optimal.
pub fn minimize_circuit(c: &Circuit) -> Result<Minimized> {
    let d = decompose(c);
    let mut out = Circuit::new(c.n())?;
    out.name = c.name.clone();
    let mut optimal = true;
    for layer in &d.layers {
        let exact = if c.n() <= EXACT_MAX_QUBITS {
            match synth_exact(&layer.config) {
                Ok(r) => Some(r),
                Err(Error::SearchBudget(_)) => None,
                Err(e) => return Err(e),
            }
        } else {
            None
        };
        let cnots = match exact {
            Some(r) => r.gates,
            None => {
                optimal = false;
                let g = synth_gauss(&layer.config)?;
                if g.len() <= layer.cnot_gates.len() {
                    g.gates
                } else {
                    layer.cnot_gates.clone()
                }
            }
        };
        for g in cnots {
            out.push(g)?;
        }
        for g in &layer.oneq_gates {
            out.push(Gate::OneQubit(g.clone()))?;
        }
    }
    let circuit = fuse_one_qubit_runs(&out);
    Ok(Minimized {
        cnots_before: c.cnot_count(),
        cnots_after: circuit.cnot_count(),
        circuit,
        optimal,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DictionaryEntry {
    /// SHA-256 of the configuration's one-layer serialization.
    pub digest: [u8; 32],
    pub config: Configuration,
    pub length: usize,
    pub gates: Vec<Cnot>,
}

impl DictionaryEntry {
    pub fn digest_hex(&self) -> String {
        hex::encode(self.digest)
    }

    /// `<digest-hex> <rows,comma,separated> <length> <j>h …>`.
    pub fn to_line(&self) -> String {
        let mut line = format!(
            "{} {} {}",
            self.digest_hex(),
            self.config,
            self.length
        );
        for g in &self.gates {
            line.push(' ');
            line.push_str(&g.to_string());
        }
        line
    }
}

/// Largest `n` for which [`build_dictionary`] runs without acknowledgment.
pub const DICTIONARY_MAX_QUBITS: usize = 4;

/// One entry per element of GL(n, 2), in packed-index order. `n = 5`
/// (about ten million entries) requires `allow_large`.
pub fn build_dictionary(n: usize, allow_large: bool) -> Result<Vec<DictionaryEntry>> {
    let max = if allow_large {
        TABLE_MAX_QUBITS
    } else {
        DICTIONARY_MAX_QUBITS
    };
    if n == 0 || n > max {
        return Err(Error::TooLarge {
            what: "dictionary",
            n,
            max,
        });
    }
    let table = DistanceTable::global(n)?;
    let entries = table
        .distances()
        .iter()
        .enumerate()
        .filter(|(_, &d)| d != UNREACHABLE)
        .map(|(idx, &d)| {
            let config = unpack(n, idx as u64);
            let gates = table.witness(&config).expect("reachable entry");
            let ty = CircuitType::new(n, vec![config.clone()]).expect("valid entry");
            DictionaryEntry {
                digest: digest(&ty.serialize()),
                length: d as usize,
                gates,
                config,
            }
        })
        .collect();
    Ok(entries)
}

impl Configuration {
    #[inline]
    pub(crate) fn column_bit(&self, col: usize) -> u64 {
        crate::gf2::qubit_mask(self.n(), col)
    }
}

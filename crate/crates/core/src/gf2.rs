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

//! GF(2) linear forms over qubit variables and the square matrices built from them.
//!
//! Bit order follows the textual convention everywhere: for `n` qubits, `q_1` is
//! the most significant bit of a basis index and the first character of a row
//! bitstring. A functional is stored as a `u64` mask in that same order, so the
//! bitstring `110` (for `n = 3`) is the mask `0b110` and denotes `q_1 ⊕ q_2`.

use std::fmt;
use std::ops::BitXor;

use crate::error::{Error, Result};

/// Largest supported qubit count; one functional fits a machine word.
pub const MAX_QUBITS: usize = 64;

pub(crate) fn check_qubits(n: usize) -> Result<()> {
    if (1..=MAX_QUBITS).contains(&n) {
        Ok(())
    } else {
        Err(Error::QubitCount(n, 1, MAX_QUBITS))
    }
}

pub(crate) fn check_wire(index: usize, n: usize) -> Result<()> {
    if (1..=n).contains(&index) {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index, max: n })
    }
}

/// All-ones mask covering `n` bits.
#[inline]
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Mask of qubit `q_j` (1-based) in an `n`-bit index.
#[inline]
pub fn qubit_mask(n: usize, j: usize) -> u64 {
    debug_assert!((1..=n).contains(&j));
    1u64 << (n - j)
}

pub(crate) fn check_basis_index(index: u64, n: usize) -> Result<()> {
    if n < 64 && index >> n != 0 {
        Err(Error::BasisIndexOutOfRange { index, n })
    } else {
        Ok(())
    }
}

/// A linear form `g_1 q_1 ⊕ … ⊕ g_n q_n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Functional {
    n: usize,
    bits: u64,
}

impl Functional {
    pub fn new(n: usize, bits: u64) -> Result<Self> {
        check_qubits(n)?;
        if bits & !full_mask(n) != 0 {
            return Err(Error::BadFunctional(format!(
                "{bits:#b} has bits beyond {n} qubits"
            )));
        }
        Ok(Functional { n, bits })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Functional::new(n, 0)
    }

    /// The basis functional `q_j`.
    pub fn qubit(n: usize, j: usize) -> Result<Self> {
        check_qubits(n)?;
        check_wire(j, n)?;
        Ok(Functional {
            n,
            bits: qubit_mask(n, j),
        })
    }

    /// Builds the functional whose support is the given 1-based qubit list.
    /// Repeated indices cancel, as they would under ⊕.
    pub fn from_support(n: usize, support: &[usize]) -> Result<Self> {
        check_qubits(n)?;
        let mut bits = 0;
        for &j in support {
            check_wire(j, n)?;
            bits ^= qubit_mask(n, j);
        }
        Ok(Functional { n, bits })
    }

    /// Reads either the bitstring form (`110`) or the symbolic form (`q2^q1`).
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        check_qubits(n)?;
        let text = text.trim();
        let bad = || Error::BadFunctional(text.to_string());
        if text.starts_with('q') {
            let mut bits = 0u64;
            for term in text.split('^') {
                let index = term
                    .strip_prefix('q')
                    .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
                    .and_then(|d| d.parse::<usize>().ok())
                    .ok_or_else(bad)?;
                check_wire(index, n)?;
                bits ^= qubit_mask(n, index);
            }
            Ok(Functional { n, bits })
        } else {
            if text.len() != n || !text.bytes().all(|b| b == b'0' || b == b'1') {
                return Err(bad());
            }
            let bits = text
                .bytes()
                .fold(0u64, |acc, b| (acc << 1) | u64::from(b - b'0'));
            Ok(Functional { n, bits })
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Coefficient `g_j` of `q_j`.
    pub fn coeff(&self, j: usize) -> bool {
        self.bits & qubit_mask(self.n, j) != 0
    }

    /// Qubits with a nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.n).filter(|&j| self.coeff(j)).collect()
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Value of the functional on basis state `|x⟩`.
    pub fn eval(&self, x: u64) -> Result<bool> {
        check_basis_index(x, self.n)?;
        Ok(self.eval_unchecked(x))
    }

    #[inline]
    pub(crate) fn eval_unchecked(&self, x: u64) -> bool {
        (self.bits & x).count_ones() & 1 == 1
    }

    /// Symbolic rendering such as `q1^q2`; the zero functional renders as `0`.
    pub fn to_symbolic(&self) -> String {
        let support = self.support();
        if support.is_empty() {
            return "0".to_string();
        }
        support
            .iter()
            .map(|j| format!("q{j}"))
            .collect::<Vec<_>>()
            .join("^")
    }
}

impl BitXor for Functional {
    type Output = Functional;

    fn bitxor(self, rhs: Functional) -> Functional {
        assert_eq!(self.n, rhs.n, "functionals over different qubit counts");
        Functional {
            n: self.n,
            bits: self.bits ^ rhs.bits,
        }
    }
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 1..=self.n {
            f.write_str(if self.coeff(j) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_symbolic())
    }
}

/// An ordered tuple of `n` functionals, i.e. an `n × n` binary matrix whose row
/// `k` is the form held by wire `k`. Validity (invertibility) is not enforced
/// on construction; see [`Configuration::is_valid`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    n: usize,
    rows: Vec<u64>,
}

impl Configuration {
    pub fn identity(n: usize) -> Result<Self> {
        check_qubits(n)?;
        Ok(Configuration {
            n,
            rows: (1..=n).map(|k| qubit_mask(n, k)).collect(),
        })
    }

    pub(crate) fn identity_unchecked(n: usize) -> Self {
        Configuration {
            n,
            rows: (1..=n).map(|k| qubit_mask(n, k)).collect(),
        }
    }

    /// Builds a configuration from raw row masks (row 1 first).
    pub fn from_bits(n: usize, rows: &[u64]) -> Result<Self> {
        check_qubits(n)?;
        if rows.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: rows.len(),
            });
        }
        if let Some(r) = rows.iter().find(|r| **r & !full_mask(n) != 0) {
            return Err(Error::BadFunctional(format!(
                "{r:#b} has bits beyond {n} qubits"
            )));
        }
        Ok(Configuration {
            n,
            rows: rows.to_vec(),
        })
    }

    pub(crate) fn from_bits_unchecked(n: usize, rows: Vec<u64>) -> Self {
        Configuration { n, rows }
    }

    pub fn from_rows(rows: &[Functional]) -> Result<Self> {
        let n = rows.len();
        check_qubits(n)?;
        if let Some(bad) = rows.iter().find(|f| f.n() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.n(),
            });
        }
        Ok(Configuration {
            n,
            rows: rows.iter().map(Functional::bits).collect(),
        })
    }

    /// Parses comma-separated rows (`111,110,100` or `q1^q2^q3,q1^q2,q1`).
    /// The qubit count is the number of rows.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.trim().split(',').map(str::trim).collect();
        let n = parts.len();
        check_qubits(n)?;
        let rows = parts
            .iter()
            .map(|p| Functional::parse(p, n))
            .collect::<Result<Vec<_>>>()?;
        Configuration::from_rows(&rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Row masks, row 1 first.
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Functional `f_k` (1-based).
    pub fn row(&self, k: usize) -> Functional {
        Functional {
            n: self.n,
            bits: self.rows[k - 1],
        }
    }

    pub fn functionals(&self) -> impl Iterator<Item = Functional> + '_ {
        self.rows.iter().map(move |&bits| Functional { n: self.n, bits })
    }

    pub fn is_identity(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(k, &r)| r == qubit_mask(self.n, k + 1))
    }

    /// Effect of `CNOT_{control→target}` on the configuration: row `target`
    /// becomes `f_control ⊕ f_target`.
    pub fn apply_cnot(&self, control: usize, target: usize) -> Result<Self> {
        let mut out = self.clone();
        out.apply_cnot_in_place(control, target)?;
        Ok(out)
    }

    pub fn apply_cnot_in_place(&mut self, control: usize, target: usize) -> Result<()> {
        check_wire(control, self.n)?;
        check_wire(target, self.n)?;
        if control == target {
            return Err(Error::SameControlTarget(control));
        }
        self.rows[target - 1] ^= self.rows[control - 1];
        Ok(())
    }

    /// Unchecked row update `row[target] ^= row[control]` (1-based).
    #[inline]
    pub(crate) fn rows_xor(&mut self, target: usize, control: usize) {
        self.rows[target - 1] ^= self.rows[control - 1];
    }

    /// Applies a CNOT list in order.
    pub fn apply_cnots<'a, I>(&self, gates: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a crate::circuit::Cnot>,
    {
        let mut out = self.clone();
        for g in gates {
            out.apply_cnot_in_place(g.control, g.target)?;
        }
        Ok(out)
    }

    /// GF(2) rank.
    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 1..=self.n {
            let bit = qubit_mask(self.n, col);
            let Some(p) = (rank..self.n).find(|&r| rows[r] & bit != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && *row & bit != 0 {
                    *row ^= pivot;
                }
            }
            rank += 1;
        }
        rank
    }

    /// True iff the rows are linearly independent (hence none is zero).
    pub fn is_valid(&self) -> bool {
        self.rows.iter().all(|&r| r != 0) && self.rank() == self.n
    }

    /// Inverse by Gauss–Jordan elimination on `[C | I]`.
    pub fn invert(&self) -> Result<Self> {
        let n = self.n;
        let mut left = self.rows.clone();
        let mut right = Configuration::identity_unchecked(n).rows;
        for col in 1..=n {
            let r = col - 1;
            let bit = qubit_mask(n, col);
            let Some(p) = (r..n).find(|&i| left[i] & bit != 0) else {
                return Err(Error::Singular {
                    rank: self.rank(),
                    n,
                });
            };
            left.swap(r, p);
            right.swap(r, p);
            let (pl, pr) = (left[r], right[r]);
            for i in 0..n {
                if i != r && left[i] & bit != 0 {
                    left[i] ^= pl;
                    right[i] ^= pr;
                }
            }
        }
        Ok(Configuration { n, rows: right })
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Configuration) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let n = self.n;
        let rows = self
            .rows
            .iter()
            .map(|&r| {
                (1..=n)
                    .filter(|&j| r & qubit_mask(n, j) != 0)
                    .fold(0, |acc, j| acc ^ other.rows[j - 1])
            })
            .collect();
        Ok(Configuration { n, rows })
    }

    /// Column `k` read as an index mask: bit of `q_r` set iff entry `(r, k)` is 1.
    pub fn column(&self, k: usize) -> u64 {
        let bit = qubit_mask(self.n, k);
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, &r)| r & bit != 0)
            .fold(0, |acc, (r, _)| acc | qubit_mask(self.n, r + 1))
    }

    /// Image of basis index `i` under the CNOT block realizing this
    /// configuration: bit `k` of the result is `f_k(i)`.
    pub fn basis_map(&self, i: u64) -> Result<u64> {
        check_basis_index(i, self.n)?;
        Ok(self.basis_map_unchecked(i))
    }

    #[inline]
    pub(crate) fn basis_map_unchecked(&self, i: u64) -> u64 {
        self.rows
            .iter()
            .fold(0u64, |acc, &r| (acc << 1) | u64::from((r & i).count_ones() & 1))
    }

    /// Reorders rows: row `k` of the result is row `perm[k]` of `self` (0-based).
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        Configuration {
            n: self.n,
            rows: perm.iter().map(|&p| self.rows[p]).collect(),
        }
    }

    /// Rows as bitstrings.
    pub fn row_strings(&self) -> Vec<String> {
        self.functionals().map(|f| f.to_string()).collect()
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.row_strings().join(","))
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.functionals().map(|r| r.to_symbolic()).collect();
        write!(f, "({})", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cfg(text: &str) -> Configuration {
        Configuration::parse(text).unwrap()
    }

    #[test]
    fn eval_matches_written_examples() {
        let f = Functional::parse("q1^q2", 3).unwrap();
        assert!(!f.eval(0b110).unwrap());
        let f = Functional::parse("q1", 3).unwrap();
        assert!(!f.eval(0).unwrap());
        let f = Functional::parse("111", 3).unwrap();
        assert!(!f.eval(0b101).unwrap());
        assert!(f.eval(0b100).unwrap());
        assert!(matches!(
            f.eval(8),
            Err(Error::BasisIndexOutOfRange { index: 8, n: 3 })
        ));
    }

    #[test]
    fn zero_entries_of_sum_functionals() {
        let f = Functional::parse("q1^q2", 3).unwrap();
        let zeros: Vec<u64> = (0..8).filter(|&x| !f.eval(x).unwrap()).collect();
        assert_eq!(zeros, vec![0, 1, 6, 7]);
        let f = Functional::parse("q1^q2^q3", 3).unwrap();
        let zeros: Vec<u64> = (0..8).filter(|&x| !f.eval(x).unwrap()).collect();
        assert_eq!(zeros, vec![0, 3, 5, 6]);
    }

    #[test]
    fn parse_forms_agree() {
        let a = Functional::parse("q3^q1^q2", 3).unwrap();
        let b = Functional::parse("111", 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "111");
        assert_eq!(Functional::parse("q2", 4).unwrap().to_string(), "0100");
        assert_eq!(Functional::parse("q1^q1", 2).unwrap().to_string(), "00");
        assert!(Functional::parse("q4", 3).is_err());
        assert!(Functional::parse("q", 3).is_err());
        assert!(Functional::parse("11", 3).is_err());
        assert!(Functional::parse("1a1", 3).is_err());
        assert!(Functional::parse("q1 ^q2", 3).is_err());
    }

    #[test]
    fn cnot_rows_follow_the_ladder() {
        let id = Configuration::identity(3).unwrap();
        let a = id.apply_cnot(1, 2).unwrap();
        assert_eq!(a, cfg("q1,q1^q2,q3"));
        let b = a.apply_cnot(2, 3).unwrap();
        assert_eq!(b, cfg("q1,q1^q2,q1^q2^q3"));
        assert_eq!(b.apply_cnot(2, 3).unwrap(), a);
        assert_eq!(id, Configuration::identity(3).unwrap());
    }

    #[test]
    fn cnot_argument_errors() {
        let id = Configuration::identity(3).unwrap();
        assert_eq!(id.apply_cnot(2, 2), Err(Error::SameControlTarget(2)));
        assert!(matches!(
            id.apply_cnot(0, 2),
            Err(Error::IndexOutOfRange { index: 0, max: 3 })
        ));
        assert!(id.apply_cnot(1, 4).is_err());
    }

    #[test]
    fn validity() {
        assert!(cfg("q1,q1^q2,q1^q2^q3").is_valid());
        assert!(!cfg("q1,q1,q3").is_valid());
        assert!(!cfg("q1,q2,q1^q2").is_valid());
        assert!(!cfg("000,010,001").is_valid());
        assert_eq!(cfg("q1,q2,q1^q2").rank(), 2);
    }

    #[test]
    fn inverse_examples() {
        let id = Configuration::identity(3).unwrap();
        assert_eq!(id.invert().unwrap(), id);
        let c = cfg("q1,q1^q2,q1^q2^q3");
        let inv = c.invert().unwrap();
        assert_eq!(inv, cfg("q1,q1^q2,q2^q3"));
        // independent check: row-by-row GF(2) product
        let product: Vec<u64> = c
            .rows()
            .iter()
            .map(|&r| {
                (0..3)
                    .filter(|j| r >> (2 - j) & 1 == 1)
                    .fold(0, |acc, j| acc ^ inv.rows()[j])
            })
            .collect();
        assert_eq!(product, id.rows());
        assert_eq!(
            cfg("q1,q2,q1^q2").invert(),
            Err(Error::Singular { rank: 2, n: 3 })
        );
    }

    #[test]
    fn basis_map_examples() {
        let c = cfg("q1,q1^q2,q1^q2^q3");
        assert_eq!(c.basis_map(0b100).unwrap(), 0b111);
        assert_eq!(c.basis_map(0b010).unwrap(), 0b011);
        let id = Configuration::identity(3).unwrap();
        for i in 0..8 {
            assert_eq!(id.basis_map(i).unwrap(), i);
        }
        assert!(c.basis_map(8).is_err());
    }

    #[test]
    fn columns_and_products() {
        let c = cfg("100,110,011");
        assert_eq!(c.column(1), 0b110);
        assert_eq!(c.column(2), 0b011);
        assert_eq!(c.column(3), 0b001);
        let inv = c.invert().unwrap();
        assert!(c.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&c).unwrap().is_identity());
    }

    #[test]
    fn wide_configurations() {
        let n = 64;
        let mut c = Configuration::identity(n).unwrap();
        c.apply_cnot_in_place(1, 64).unwrap();
        c.apply_cnot_in_place(64, 2).unwrap();
        assert!(c.is_valid());
        assert!(c.mul(&c.invert().unwrap()).unwrap().is_identity());
        assert_eq!(c.basis_map(1 << 63).unwrap(), (1 << 63) | (1 << 62) | 1);
        assert!(Configuration::identity(65).is_err());
        assert!(Configuration::identity(0).is_err());
    }

    fn random_walk(rng: &mut ChaCha8Rng, n: usize, steps: usize) -> Configuration {
        let mut c = Configuration::identity(n).unwrap();
        if n == 1 {
            return c;
        }
        for _ in 0..steps {
            let j = rng.random_range(1..=n);
            let mut h = rng.random_range(1..n);
            if h >= j {
                h += 1;
            }
            c.apply_cnot_in_place(j, h).unwrap();
        }
        c
    }

    #[test]
    fn cnot_sequences_preserve_validity() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10_000 {
            let n = rng.random_range(2..=8);
            let steps = rng.random_range(0..40);
            assert!(random_walk(&mut rng, n, steps).is_valid());
        }
    }

    #[test]
    fn basis_map_is_a_bijection_and_inverts() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in 1..=10 {
            for _ in 0..5 {
                let c = random_walk(&mut rng, n, 3 * n);
                let inv = c.invert().unwrap();
                let mut seen = vec![false; 1 << n];
                for i in 0..(1u64 << n) {
                    let j = c.basis_map(i).unwrap();
                    assert!(!seen[j as usize]);
                    seen[j as usize] = true;
                    assert_eq!(inv.basis_map(j).unwrap(), i);
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn moves(n: usize) -> impl Strategy<Value = Vec<(usize, usize)>> {
            prop::collection::vec((1..=n, 1..n), 0..30).prop_map(move |v| {
                v.into_iter()
                    .map(|(j, h)| (j, if h >= j { h + 1 } else { h }))
                    .collect()
            })
        }

        proptest! {
            #[test]
            fn cnot_is_self_inverse(ms in moves(5), j in 1usize..=5, h in 1usize..5) {
                let h = if h >= j { h + 1 } else { h };
                let mut c = Configuration::identity(5).unwrap();
                for (a, b) in ms {
                    c.apply_cnot_in_place(a, b).unwrap();
                }
                let twice = c.apply_cnot(j, h).unwrap().apply_cnot(j, h).unwrap();
                prop_assert_eq!(twice, c);
            }

            #[test]
            fn textual_round_trip(bits in prop::collection::vec(0u64..64, 6)) {
                let c = Configuration::from_bits(6, &bits).unwrap();
                prop_assert_eq!(Configuration::parse(&c.to_string()).unwrap(), c.clone());
                let sym: Vec<String> = c.functionals().map(|f| f.to_symbolic()).collect();
                if c.functionals().all(|f| !f.is_zero()) {
                    prop_assert_eq!(Configuration::parse(&sym.join(",")).unwrap(), c);
                }
            }
        }
    }
}

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

//! Circuit types: the sequence of layer configurations, their canonical form
//! under one row permutation shared by all layers, content digests, and the
//! exact counts of configurations and types.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::gf2::Configuration;
use crate::layering::LayerDecomposition;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CircuitType {
    n: usize,
    configs: Vec<Configuration>,
}

impl CircuitType {
    pub fn new(n: usize, configs: Vec<Configuration>) -> Result<Self> {
        for c in &configs {
            if c.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: c.n(),
                });
            }
            if !c.is_valid() {
                return Err(Error::Singular { rank: c.rank(), n });
            }
        }
        Ok(CircuitType { n, configs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn configs(&self) -> &[Configuration] {
        &self.configs
    }

    pub fn len(&self) -> usize {
        self.configs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }

    /// Applies the same row permutation to every layer.
    pub fn permute(&self, perm: &[usize]) -> CircuitType {
        CircuitType {
            n: self.n,
            configs: self.configs.iter().map(|c| c.permute_rows(perm)).collect(),
        }
    }

    /// `n=<n>;L=<N>;` followed by `|` and the concatenated row bits of each layer.
    pub fn serialize(&self) -> String {
        let mut out = format!("n={};L={};", self.n, self.configs.len());
        for c in &self.configs {
            out.push('|');
            for row in c.row_strings() {
                out.push_str(&row);
            }
        }
        out
    }
}

impl fmt::Display for CircuitType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let layers: Vec<String> = self.configs.iter().map(|c| format!("({c})")).collect();
        f.write_str(&layers.join(" -> "))
    }
}

/// The layer configurations of a decomposition, in order.
pub fn circuit_type(d: &LayerDecomposition) -> CircuitType {
    CircuitType {
        n: d.n,
        configs: d.configs().cloned().collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalType {
    pub ty: CircuitType,
    /// Row `k` of every canonical layer is row `perm[k]` of the input (0-based).
    pub perm: Vec<usize>,
    pub digest: [u8; 32],
}

impl CanonicalType {
    pub fn digest_hex(&self) -> String {
        hex::encode(self.digest)
    }

    pub fn serialize(&self) -> String {
        self.ty.serialize()
    }
}

pub fn digest(serialized: &str) -> [u8; 32] {
    Sha256::digest(serialized.as_bytes()).into()
}

/// Chooses the row permutation, shared by all layers, that makes the
/// concatenated row bitstrings lexicographically smallest.
///
/// Rows of a valid first layer are distinct, so that layer alone has a unique
/// minimizing arrangement (its rows sorted ascending), and later layers never
/// get to break a tie. Sorting therefore yields the same result as trying all
/// `n!` permutations, for any `n`.
pub fn canonicalize(t: &CircuitType) -> CanonicalType {
    let mut perm: Vec<usize> = (0..t.n).collect();
    if let Some(first) = t.configs.first() {
        let rows = first.rows();
        perm.sort_by_key(|&k| rows[k]);
    }
    let ty = t.permute(&perm);
    let digest = digest(&ty.serialize());
    CanonicalType { ty, perm, digest }
}

/// Same type up to one row permutation applied to every layer.
pub fn equivalent(a: &CircuitType, b: &CircuitType) -> bool {
    a.n == b.n && a.len() == b.len() && canonicalize(a).digest == canonicalize(b).digest
}

fn check_count_n(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::QubitCount(0, 1, usize::MAX))
    } else {
        Ok(())
    }
}

/// Choices for row `k` given `k − 1` independent rows: `2^n − 2^(k−1)`.
pub fn count_nf(k: usize, n: usize) -> Result<BigUint> {
    check_count_n(n)?;
    if !(1..=n).contains(&k) {
        return Err(Error::IndexOutOfRange { index: k, max: n });
    }
    Ok((BigUint::one() << n) - (BigUint::one() << (k - 1)))
}

/// Number of valid configurations, `|GL(n, 2)|`.
pub fn count_nc(n: usize) -> Result<BigUint> {
    check_count_n(n)?;
    (1..=n).try_fold(BigUint::one(), |acc, k| Ok(acc * count_nf(k, n)?))
}

pub fn factorial(n: usize) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// Number of `layers`-layer types: `N_c (N_c − 1)^(layers−1) / n!`.
pub fn count_nt(n: usize, layers: usize) -> Result<BigUint> {
    check_count_n(n)?;
    if layers == 0 {
        return Err(Error::IndexOutOfRange {
            index: 0,
            max: usize::MAX,
        });
    }
    let nc = count_nc(n)?;
    let tail = num_traits::pow(&nc - BigUint::one(), layers - 1);
    let total = nc * tail;
    let fact = factorial(n);
    let quotient = &total / &fact;
    assert!(
        (&total - &quotient * &fact).is_zero(),
        "type count is not divisible by n!"
    );
    Ok(quotient)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub n: usize,
    pub k: Option<usize>,
    pub layers: Option<usize>,
    pub n_f: Option<BigUint>,
    pub n_c: BigUint,
    pub n_t: Option<BigUint>,
}

pub fn count_report(n: usize, k: Option<usize>, layers: Option<usize>) -> Result<CountReport> {
    Ok(CountReport {
        n,
        k,
        layers,
        n_f: k.map(|k| count_nf(k, n)).transpose()?,
        n_c: count_nc(n)?,
        n_t: layers.map(|l| count_nt(n, l)).transpose()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{gen_fixture, Circuit};
    use crate::layering::decompose;

    fn cfg(t: &str) -> Configuration {
        Configuration::parse(t).unwrap()
    }

    fn ty(layers: &[&str]) -> CircuitType {
        let configs: Vec<Configuration> = layers.iter().map(|l| cfg(l)).collect();
        CircuitType::new(configs[0].n(), configs).unwrap()
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    /// Minimum over all n! permutations of the concatenated row strings.
    fn brute_canonical(t: &CircuitType) -> String {
        permutations(t.n())
            .iter()
            .map(|p| t.permute(p).serialize())
            .min()
            .unwrap()
    }

    #[test]
    fn types_of_fixtures() {
        let t = circuit_type(&decompose(&gen_fixture("ladder-wrap-6").unwrap()));
        assert_eq!(t.len(), 2);
        assert!(t.configs()[0].is_identity());
        assert_eq!(
            t.configs()[1],
            cfg("q2^q3^q4^q5^q6,q1^q2,q1^q2^q3,q1^q2^q3^q4,q1^q2^q3^q4^q5,q1^q2^q3^q4^q5^q6")
        );
        let t = circuit_type(&decompose(&gen_fixture("kandala-6").unwrap()));
        assert!(t
            .configs()
            .contains(&cfg("q1^q2,q2,q1^q2^q3,q2^q4,q4^q5^q6,q6")));
        let t = circuit_type(&decompose(&Circuit::parse("qubits 2\nh 1\n").unwrap()));
        assert_eq!(t.configs(), &[Configuration::identity(2).unwrap()]);
    }

    #[test]
    fn swapped_rows_share_canonical_form() {
        let a = canonicalize(&ty(&["q1,q3,q2"]));
        let b = canonicalize(&ty(&["q1,q2,q3"]));
        assert_eq!(a.ty, b.ty);
        assert_eq!(a.digest, b.digest);
        // rows sorted ascending as bitstrings: 001, 010, 100
        assert_eq!(a.perm, vec![1, 2, 0]);
        assert_eq!(b.perm, vec![2, 1, 0]);
    }

    #[test]
    fn shared_versus_independent_permutations() {
        // (f1,f2,f3) -> (f4,f5,f6)
        let base = ty(&["q1,q1^q2,q3", "q1^q3,q2,q2^q3"]);
        // (f3,f1,f2) -> (f6,f4,f5)
        let shared = ty(&["q3,q1,q1^q2", "q2^q3,q1^q3,q2"]);
        // (f3,f1,f2) -> (f4,f6,f5)
        let mixed = ty(&["q3,q1,q1^q2", "q1^q3,q2^q3,q2"]);
        assert!(equivalent(&base, &shared));
        assert!(!equivalent(&base, &mixed));
        assert_ne!(canonicalize(&base).digest, canonicalize(&mixed).digest);
    }

    #[test]
    fn canonicalize_is_idempotent_and_matches_brute_force() {
        let t = ty(&["q2^q3,q1,q1^q2", "q1^q2,q2,q3", "q3,q1,q2"]);
        let c = canonicalize(&t);
        assert_eq!(canonicalize(&c.ty).ty, c.ty);
        assert_eq!(c.serialize(), brute_canonical(&t));
    }

    #[test]
    fn serialization_format() {
        let t = ty(&["q1,q2", "q1,q1^q2"]);
        assert_eq!(t.serialize(), "n=2;L=2;|1001|1011");
        let c = canonicalize(&t);
        assert_eq!(c.serialize(), "n=2;L=2;|0110|1110");
        assert_eq!(c.digest_hex(), hex::encode(Sha256::digest(b"n=2;L=2;|0110|1110")));
        assert_eq!(c.digest_hex().len(), 64);
    }

    #[test]
    fn equivalence_edge_cases() {
        let a = ty(&["q1,q2,q3"]);
        let b = ty(&["q1,q1^q2,q3"]);
        assert!(!equivalent(&a, &b));
        assert!(!equivalent(&a, &ty(&["q1,q2,q3", "q1,q1^q2,q3"])));
        assert!(!equivalent(&a, &ty(&["q1,q2"])));
        assert!(CircuitType::new(3, vec![cfg("q1,q1,q3")]).is_err());
    }

    #[test]
    fn nf_values() {
        assert_eq!(count_nf(1, 5).unwrap(), BigUint::from(31u32));
        assert_eq!(count_nf(5, 5).unwrap(), BigUint::from(16u32));
        assert_eq!(count_nf(1, 1).unwrap(), BigUint::from(1u32));
        assert!(count_nf(0, 5).is_err());
        assert!(count_nf(6, 5).is_err());
    }

    #[test]
    fn nc_values() {
        assert_eq!(count_nc(2).unwrap(), BigUint::from(6u32));
        assert_eq!(count_nc(3).unwrap(), BigUint::from(168u32));
        assert_eq!(count_nc(5).unwrap(), BigUint::from(9_999_360u64));
        assert_eq!(BigUint::from(83_328u64) * factorial(5), count_nc(5).unwrap());
    }

    #[test]
    fn nt_values() {
        assert_eq!(count_nt(5, 1).unwrap(), BigUint::from(83_328u64));
        assert_eq!(count_nt(3, 1).unwrap(), BigUint::from(28u32));
        for n in 1..=12 {
            assert_eq!(count_nt(n, 1).unwrap() * factorial(n), count_nc(n).unwrap());
        }
        assert!(count_nt(5, 0).is_err());
        // beyond the 64-qubit cap of the matrix types
        assert!(count_nt(100, 3).unwrap().bits() > 29_000);
    }

    #[test]
    fn report_collects_requested_counts() {
        let r = count_report(5, Some(2), Some(1)).unwrap();
        assert_eq!(r.n_f, Some(BigUint::from(30u32)));
        assert_eq!(r.n_t, Some(BigUint::from(83_328u64)));
        assert!(count_report(5, Some(9), None).is_err());
    }
}

//! Markov triples `m₀² + m₁² + m₂² = 3·m₀·m₁·m₂`: mutations, the tree
//! rooted at `(1,1,1)`, descent back to the root, and signed mutations.
//!
//! [`MarkovTriple`] is ordered; [`MarkovTriple::normalized`] gives the sorted
//! form used for set membership.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{HelixError, Result};
use crate::exact::{big, Vec3};
use crate::helix::parse_int_triple;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkovTriple([BigInt; 3]);

impl MarkovTriple {
    pub fn new(m0: impl Into<BigInt>, m1: impl Into<BigInt>, m2: impl Into<BigInt>) -> Result<Self> {
        let t = [m0.into(), m1.into(), m2.into()];
        if !is_markov(&t)? {
            return Err(HelixError::Domain(format!(
                "({}, {}, {}) is not a Markov triple",
                t[0], t[1], t[2]
            )));
        }
        Ok(MarkovTriple(t))
    }

    pub fn root() -> Self {
        MarkovTriple([big(1), big(1), big(1)])
    }

    pub fn get(&self, slot: usize) -> &BigInt {
        &self.0[slot]
    }

    pub fn as_array(&self) -> &[BigInt; 3] {
        &self.0
    }

    pub fn to_vec3(&self) -> Vec3 {
        Vec3(self.0.clone())
    }

    pub fn largest(&self) -> &BigInt {
        self.0.iter().max().expect("three entries")
    }

    pub fn is_root(&self) -> bool {
        self.0.iter().all(One::is_one)
    }

    /// The same triple sorted ascending.
    pub fn normalized(&self) -> MarkovTriple {
        let mut t = self.0.clone();
        t.sort();
        MarkovTriple(t)
    }
}

impl fmt::Display for MarkovTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

impl FromStr for MarkovTriple {
    type Err = HelixError;

    fn from_str(s: &str) -> Result<Self> {
        let [a, b, c] = parse_int_triple(s)?;
        MarkovTriple::new(a, b, c)
    }
}

/// Whether a triple of positive integers satisfies the Markov equation.
pub fn is_markov(t: &[BigInt; 3]) -> Result<bool> {
    if let Some(bad) = t.iter().find(|m| !m.is_positive()) {
        return Err(HelixError::Domain(format!(
            "Markov triples have positive entries, got {bad}"
        )));
    }
    let sum_sq: BigInt = t.iter().map(|m| m * m).sum();
    Ok(sum_sq == big(3) * &t[0] * &t[1] * &t[2])
}

/// Replaces slot `slot` by three times the product of the others minus itself.
pub fn markov_mutate(t: &MarkovTriple, slot: usize) -> MarkovTriple {
    let mut out = t.0.clone();
    let (a, b) = (&t.0[(slot + 1) % 3], &t.0[(slot + 2) % 3]);
    out[slot] = big(3) * a * b - &t.0[slot];
    MarkovTriple(out)
}

/// All Markov triples with entries `≤ bound`, sorted ascending within each
/// triple and listed in lexicographic order.
pub fn enumerate_markov(bound: &BigInt) -> Result<Vec<MarkovTriple>> {
    if bound < &BigInt::one() {
        return Err(HelixError::Domain(format!("bound must be ≥ 1, got {bound}")));
    }
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    let root = MarkovTriple::root();
    seen.insert(root.clone());
    queue.push_back(root);
    while let Some(t) = queue.pop_front() {
        for slot in 0..3 {
            let child = markov_mutate(&t, slot).normalized();
            if child.largest() <= bound && !seen.contains(&child) {
                seen.insert(child.clone());
                queue.push_back(child);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentStep {
    pub slot: usize,
    pub before: MarkovTriple,
    pub after: MarkovTriple,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentPath {
    pub steps: Vec<DescentStep>,
    pub terminal: MarkovTriple,
}

impl DescentPath {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// The slot holding the largest entry; ties go to the highest slot.
pub fn max_slot(t: &[BigInt; 3]) -> usize {
    (0..3).rev().max_by(|&i, &j| t[i].cmp(&t[j]).then(i.cmp(&j))).expect("three slots")
}

/// Mutates the largest entry until reaching `(1,1,1)`.
pub fn descent_path(t: &MarkovTriple) -> DescentPath {
    let mut steps = Vec::new();
    let mut cur = t.clone();
    while !cur.is_root() {
        let slot = max_slot(&cur.0);
        let next = markov_mutate(&cur, slot);
        debug_assert!(next.0[slot] < cur.0[slot]);
        steps.push(DescentStep {
            slot,
            before: cur,
            after: next.clone(),
        });
        cur = next;
    }
    DescentPath {
        steps,
        terminal: cur,
    }
}

/// `μ₀` adds `3v₁v₂` to `v₀`, `μ₁` subtracts `3v₀v₂` from `v₁`, `μ₂` adds
/// `3v₀v₁` to `v₂`.
pub fn signed_mutation(v: &Vec3, slot: usize) -> Vec3 {
    let mut out = v.clone();
    let three = big(3);
    match slot {
        0 => out[0] += three * &v[1] * &v[2],
        1 => out[1] -= three * &v[0] * &v[2],
        2 => out[2] += three * &v[0] * &v[1],
        _ => panic!("slot {slot} out of range"),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mt(a: i64, b: i64, c: i64) -> MarkovTriple {
        MarkovTriple::new(a, b, c).unwrap()
    }

    #[test]
    fn membership() {
        assert!(is_markov(&[big(1), big(1), big(1)]).unwrap());
        assert!(is_markov(&[big(1), big(2), big(5)]).unwrap());
        assert!(!is_markov(&[big(1), big(1), big(3)]).unwrap());
        assert!(is_markov(&[big(0), big(1), big(1)]).is_err());
        assert!(MarkovTriple::new(1, 1, 3).is_err());
    }

    #[test]
    fn mutation_examples() {
        assert_eq!(markov_mutate(&mt(1, 2, 5), 0), mt(29, 2, 5));
        assert_eq!(markov_mutate(&mt(1, 1, 1), 2), mt(1, 1, 2));
        assert_eq!(markov_mutate(&mt(2, 5, 29), 2), mt(2, 5, 1));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_markov(&big(2)).unwrap(), vec![mt(1, 1, 1), mt(1, 1, 2)]);
        assert_eq!(
            enumerate_markov(&big(5)).unwrap(),
            vec![mt(1, 1, 1), mt(1, 1, 2), mt(1, 2, 5)]
        );
        let comps: BTreeSet<BigInt> = enumerate_markov(&big(100))
            .unwrap()
            .iter()
            .flat_map(|t| t.0.clone())
            .collect();
        assert_eq!(comps, [1, 2, 5, 13, 29, 34, 89].map(big).into_iter().collect());
        assert!(enumerate_markov(&big(0)).is_err());
    }

    #[test]
    fn descent_examples() {
        assert!(descent_path(&mt(1, 1, 1)).is_empty());
        let p = descent_path(&mt(1, 1, 2));
        assert_eq!(p.len(), 1);
        assert_eq!(p.steps[0].slot, 2);
        let p = descent_path(&mt(2, 5, 29));
        let afters: Vec<MarkovTriple> = p.steps.iter().map(|s| s.after.clone()).collect();
        assert_eq!(afters, vec![mt(2, 5, 1), mt(2, 1, 1), mt(1, 1, 1)]);
        assert_eq!(p.terminal, MarkovTriple::root());
    }

    #[test]
    fn signed_mutation_examples() {
        let one = Vec3::from_i64([1, 1, 1]);
        assert_eq!(signed_mutation(&one, 1), Vec3::from_i64([1, -2, 1]));
        assert_eq!(signed_mutation(&Vec3::from_i64([1, -2, 1]), 2), Vec3::from_i64([1, -2, -5]));
        let rho = Vec3::from_i64([1, 1, 2]);
        assert_eq!(rho.dot(&signed_mutation(&rho, 1)), big(0));
    }

    #[test]
    fn max_slot_prefers_highest_index() {
        assert_eq!(max_slot(&[big(2), big(1), big(2)]), 2);
        assert_eq!(max_slot(&[big(5), big(1), big(2)]), 0);
        assert_eq!(max_slot(&[big(1), big(1), big(1)]), 2);
    }
}

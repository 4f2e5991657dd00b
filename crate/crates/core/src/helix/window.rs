//! Finite scan of the generation conditions around a seed.
//!
//! This is a falsifier: a violation proves the seed does not generate a
//! helix of bundles, but a clean window of any depth proves nothing on its
//! own. Use [`certify_generation`](super::certify_generation) or Markov
//! structure for proofs.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use super::{Helix, Seed};
use crate::exact::{slope_less, KClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViolationReason {
    NonpositiveDelta,
    NonpositiveRank,
    NonpositivePrimedRank,
    GcdFailure,
    SlopeOrderFailure,
}

impl fmt::Display for ViolationReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationReason::NonpositiveDelta => "nonpositive Δ",
            ViolationReason::NonpositiveRank => "nonpositive rank",
            ViolationReason::NonpositivePrimedRank => "nonpositive primed rank",
            ViolationReason::GcdFailure => "gcd failure",
            ViolationReason::SlopeOrderFailure => "slope order failure",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Helix index of the offending class, or the Δ subscript for
    /// [`ViolationReason::NonpositiveDelta`].
    pub index: i64,
    pub reason: ViolationReason,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowRow {
    pub index: i64,
    pub class: KClass,
    /// `r′_i`, the rank of `Δ_{i−1}[E_{i−1}] − [E_{i−2}]`.
    pub primed_rank: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowReport {
    pub depth: u32,
    pub rows: Vec<WindowRow>,
    pub violation: Option<Violation>,
}

impl WindowReport {
    pub fn is_clean(&self) -> bool {
        self.violation.is_none()
    }

    pub fn row(&self, index: i64) -> Option<&WindowRow> {
        self.rows.iter().find(|r| r.index == index)
    }
}

/// Computes classes and primed ranks for `|i| ≤ depth` and reports the
/// violation closest to the seed (indices visited as 0, 1, −1, 2, −2, ...).
pub fn scan_window(seed: &Seed, depth: u32) -> WindowReport {
    let helix = Helix::new(seed);
    let depth_i = i64::from(depth);
    let rows: Vec<WindowRow> = (-depth_i..=depth_i)
        .map(|i| WindowRow {
            index: i,
            class: helix.class_at(i),
            primed_rank: helix.intermediate_class(i).rank,
        })
        .collect();

    let violation = first_violation(&helix, &rows, depth_i);
    WindowReport {
        depth,
        rows,
        violation,
    }
}

fn first_violation(helix: &Helix, rows: &[WindowRow], depth: i64) -> Option<Violation> {
    for m in 1..=3 {
        let d = helix.delta(m);
        if !d.is_positive() {
            return Some(Violation {
                index: m,
                reason: ViolationReason::NonpositiveDelta,
                detail: format!("Δ{m} = {d}"),
            });
        }
    }
    let row = |i: i64| &rows[(i + depth) as usize];
    let order = std::iter::once(0).chain((1..=depth).flat_map(|k| [k, -k]));
    for i in order {
        let r = row(i);
        let c = &r.class;
        if !c.rank.is_positive() {
            return Some(Violation {
                index: i,
                reason: ViolationReason::NonpositiveRank,
                detail: format!("[E_{i}] = {c}"),
            });
        }
        if !r.primed_rank.is_positive() {
            return Some(Violation {
                index: i,
                reason: ViolationReason::NonpositivePrimedRank,
                detail: format!("r′_{i} = {}", r.primed_rank),
            });
        }
        if !c.is_coprime() {
            return Some(Violation {
                index: i,
                reason: ViolationReason::GcdFailure,
                detail: format!("gcd of [E_{i}] = {c} is {}", c.gcd()),
            });
        }
        let (lo, hi) = match i.signum() {
            1 => (i - 1, i),
            -1 => (i, i + 1),
            _ => continue,
        };
        let ordered = slope_less(&row(lo).class, &row(hi).class).unwrap_or(false);
        if !ordered {
            return Some(Violation {
                index: i,
                reason: ViolationReason::SlopeOrderFailure,
                detail: format!(
                    "slope of [E_{lo}] = {} is not below slope of [E_{hi}] = {}",
                    row(lo).class,
                    row(hi).class
                ),
            });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::big;

    #[test]
    fn equigen_window_is_clean() {
        let rep = scan_window(&Seed::from_i64([(-5, 2), (0, 1), (5, 2)]), 4);
        assert!(rep.is_clean());
        let ranks: Vec<BigInt> = (-1..=4).map(|i| rep.row(i).unwrap().class.rank.clone()).collect();
        assert_eq!(ranks, [7, 2, 1, 2, 7, 26].map(big).to_vec());
        assert_eq!(rep.rows.len(), 9);
    }

    #[test]
    fn zero_delta_is_reported() {
        let rep = scan_window(&Seed::from_i64([(-2, 1), (0, 1), (2, 1)]), 3);
        let v = rep.violation.unwrap();
        assert_eq!(v.reason, ViolationReason::NonpositiveDelta);
        assert_eq!(v.index, 3);
    }

    #[test]
    fn lines_window_has_unit_ranks() {
        let rep = scan_window(&Seed::from_i64([(-3, 1), (0, 1), (3, 1)]), 10);
        assert!(rep.is_clean());
        assert!(rep.rows.iter().all(|r| r.class.rank == big(1)));
        assert!(rep.rows.iter().all(|r| r.primed_rank == big(2)));
    }

    #[test]
    fn gcd_failure_is_found() {
        // Δ = (6, 3, 6), but [E₀] = (−6, 2) is not primitive
        let rep = scan_window(&Seed::from_i64([(-6, 2), (0, 1), (3, 1)]), 3);
        let v = rep.violation.unwrap();
        assert_eq!(v.reason, ViolationReason::GcdFailure, "{}", v.detail);
        assert_eq!(v.index, 0);
    }
}

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::DeltaTriple;
use crate::exact::big;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GrowthClass {
    /// `q = 0`: unipotent global matrix, polynomial growth.
    Markov,
    /// `q ∈ {1,2,3,4}`: eigenvalues are roots of unity, so Hom dimensions
    /// along the helix are periodic and cannot have the required signs.
    NotHelical,
    /// Real eigenvalues `λ± ≠ ±1`.
    Exponential,
}

impl fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GrowthClass::Markov => "Markov",
            GrowthClass::NotHelical => "NotHelical",
            GrowthClass::Exponential => "Exponential",
        })
    }
}

/// The two eigenvalues of the global matrix besides the fixed eigenvalue 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Eigenvalues {
    /// All three eigenvalues equal 1.
    AllOne,
    /// Roots of unity, labelled (b) through (e) by `q = 1..4`.
    RootsOfUnity { case: char, description: &'static str },
    /// `λ± = (p ± √disc)/2` with `disc = p² − 4 > 0`.
    Real { p: BigInt, disc: BigInt },
}

impl fmt::Display for Eigenvalues {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Eigenvalues::AllOne => f.write_str("all eigenvalues 1"),
            Eigenvalues::RootsOfUnity { case, description } => {
                write!(f, "case ({case}): {description}")
            }
            Eigenvalues::Real { p, disc } => write!(f, "({p} ± √{disc})/2"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthReport {
    pub q: BigInt,
    /// `p = 2 + Δ₁Δ₂Δ₃ − (Δ₁² + Δ₂² + Δ₃²)`, so `trace(A) = 1 + p`.
    pub p: BigInt,
    pub class: GrowthClass,
    pub eigenvalues: Eigenvalues,
}

impl GrowthReport {
    /// `λ₊` as a float, for display only.
    pub fn lambda_plus_approx(&self) -> Option<f64> {
        match &self.eigenvalues {
            Eigenvalues::Real { p, disc } => {
                let p = p.to_f64()?;
                let d = disc.to_f64()?;
                Some((p + d.sqrt()) / 2.0)
            }
            _ => None,
        }
    }
}

pub fn classify_growth(deltas: &DeltaTriple) -> GrowthReport {
    let q = deltas.q();
    let p = big(2) - &q;
    let (class, eigenvalues) = match q.to_i64() {
        Some(0) => (GrowthClass::Markov, Eigenvalues::AllOne),
        Some(k @ 1..=4) => {
            let (case, description) = match k {
                1 => ('b', "e^{±iπ/3}"),
                2 => ('c', "±i"),
                3 => ('d', "e^{±2iπ/3}"),
                _ => ('e', "-1, -1"),
            };
            (
                GrowthClass::NotHelical,
                Eigenvalues::RootsOfUnity { case, description },
            )
        }
        _ => {
            let disc = &p * &p - big(4);
            debug_assert!(disc.is_positive() && !q.is_zero());
            (
                GrowthClass::Exponential,
                Eigenvalues::Real {
                    p: p.clone(),
                    disc,
                },
            )
        }
    };
    GrowthReport {
        q,
        p,
        class,
        eigenvalues,
    }
}

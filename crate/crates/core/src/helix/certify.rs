//! Exact generation certificates.
//!
//! A seed with `r₀, r₂ ≥ r₁` and positive primed ranks `r′₁, r′₂` generates
//! a helix of bundles as soon as some `l` satisfies
//!
//! ```text
//! 1 < l < min(r₀/r₁, r₂/r₁),    l² − Δᵢ·l + Δⱼ < 0 for all i ≠ j.
//! ```
//!
//! The feasible set is an open interval whose ends are rationals or
//! quadratic surds. We locate it with exact comparisons and return the
//! simplest rational inside it as the witness. The criterion is only
//! sufficient, so an empty interval yields `Unknown`, not a refutation.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{deltas_from_seed, Helix, Seed};
use crate::error::Result;
use crate::surd::{simplest_rational_between, QuadSurd};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CertificateStatus {
    Certified,
    Unknown,
    Invalid,
}

impl fmt::Display for CertificateStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertificateStatus::Certified => "Certified",
            CertificateStatus::Unknown => "Unknown",
            CertificateStatus::Invalid => "Invalid",
        })
    }
}

/// One inequality of the criterion, written as `margin > 0` and evaluated
/// exactly at the witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckedInequality {
    pub description: String,
    pub margin: BigRational,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub status: CertificateStatus,
    pub witness: Option<BigRational>,
    /// Ends of the feasible interval for `l`, when the preconditions hold.
    pub lower: Option<QuadSurd>,
    pub upper: Option<QuadSurd>,
    pub inequalities: Vec<CheckedInequality>,
    pub notes: Vec<String>,
}

fn rat(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

pub fn certify_generation(seed: &Seed) -> Result<Certificate> {
    let deltas = deltas_from_seed(seed)?;
    let helix = Helix::new(seed);
    let r = seed.ranks();
    let (r0, r1, r2) = (&r[0], &r[1], &r[2]);
    let r1p = helix.intermediate_class(1).rank;
    let r2p = helix.intermediate_class(2).rank;

    let mut notes = Vec::new();
    if !r1.is_positive() {
        notes.push(format!("r₁ = {r1} is not positive"));
    }
    if r0 < r1 {
        notes.push(format!("r₀ = {r0} < r₁ = {r1}"));
    }
    if r2 < r1 {
        notes.push(format!("r₂ = {r2} < r₁ = {r1}"));
    }
    if !r1p.is_positive() {
        notes.push(format!("r′₁ = {r1p} is not positive"));
    }
    if !r2p.is_positive() {
        notes.push(format!("r′₂ = {r2p} is not positive"));
    }
    if !notes.is_empty() {
        return Ok(Certificate {
            status: CertificateStatus::Invalid,
            witness: None,
            lower: None,
            upper: None,
            inequalities: Vec::new(),
            notes,
        });
    }

    let d = deltas.as_array();
    let pairs: Vec<(usize, usize)> = (0..3)
        .flat_map(|i| (0..3).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();

    let mut lowers = vec![QuadSurd::integer(1)];
    let mut uppers = vec![
        QuadSurd::rational(BigRational::new(r0.clone(), r1.clone())),
        QuadSurd::rational(BigRational::new(r2.clone(), r1.clone())),
    ];
    for &(i, j) in &pairs {
        match QuadSurd::quadratic_roots(&d[i], &d[j]) {
            Some((lo, hi)) => {
                lowers.push(lo);
                uppers.push(hi);
            }
            None => notes.push(format!(
                "l² − {}·l + {} is never negative (Δ{}² ≤ 4Δ{})",
                d[i],
                d[j],
                i + 1,
                j + 1
            )),
        }
    }

    let lower = lowers.into_iter().max().expect("nonempty");
    let upper = uppers.into_iter().min().expect("nonempty");
    if !notes.is_empty() || lower >= upper {
        if notes.is_empty() {
            notes.push(format!("no l: lower end {lower} ≥ upper end {upper}"));
        }
        return Ok(Certificate {
            status: CertificateStatus::Unknown,
            witness: None,
            lower: Some(lower),
            upper: Some(upper),
            inequalities: Vec::new(),
            notes,
        });
    }

    let l = simplest_rational_between(&lower, &upper);
    let mut inequalities = vec![
        CheckedInequality {
            description: "l > 1".into(),
            margin: &l - BigRational::one(),
            holds: false,
        },
        CheckedInequality {
            description: format!("l < r₀/r₁ = {}", BigRational::new(r0.clone(), r1.clone())),
            margin: BigRational::new(r0.clone(), r1.clone()) - &l,
            holds: false,
        },
        CheckedInequality {
            description: format!("l < r₂/r₁ = {}", BigRational::new(r2.clone(), r1.clone())),
            margin: BigRational::new(r2.clone(), r1.clone()) - &l,
            holds: false,
        },
    ];
    for &(i, j) in &pairs {
        let value = &l * &l - rat(&d[i]) * &l + rat(&d[j]);
        inequalities.push(CheckedInequality {
            description: format!("Δ{} − Δ{}/l > l  (l² − {}·l + {} < 0)", i + 1, j + 1, d[i], d[j]),
            margin: -value,
            holds: false,
        });
    }
    for ineq in &mut inequalities {
        ineq.holds = ineq.margin > BigRational::zero();
    }
    let status = if inequalities.iter().all(|c| c.holds) {
        CertificateStatus::Certified
    } else {
        notes.push("witness failed an inequality; interval computation is inconsistent".into());
        CertificateStatus::Unknown
    };
    Ok(Certificate {
        status,
        witness: Some(l),
        lower: Some(lower),
        upper: Some(upper),
        inequalities,
        notes,
    })
}

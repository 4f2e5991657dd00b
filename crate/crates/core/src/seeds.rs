//! Seed constructors and transformers: Markov-type seeds from the cross
//! product equation, right mutation of every third bundle, reduction to a
//! helix of line bundles, two exponential families, and the check that
//! `r⃗ = 3ρ⃗` never yields a seed.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{HelixError, Result};
use crate::exact::{big, cross3, KClass, SolutionSet, Vec3};
use crate::helix::{deltas_from_seed, DeltaTriple, Helix, Seed};
use crate::markov::{max_slot, signed_mutation, MarkovTriple};

/// Which sign of the closed form `±(a·μ⃗₂ + b·μ⃗₀)` solves the degree equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosedFormSign {
    Positive,
    Negative,
    Neither,
}

impl fmt::Display for ClosedFormSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClosedFormSign::Positive => "positive",
            ClosedFormSign::Negative => "negative",
            ClosedFormSign::Neither => "neither",
        })
    }
}

/// The closed-form candidate `a·μ⃗₂ + b·μ⃗₀` built from a Bezout pair
/// `a·r₀² + b·r₂² = 1`, compared with the solver's degrees.
///
/// Since `μ⃗₀ × r⃗ = −3r₂²·μ⃗₁` but `μ⃗₂ × r⃗ = +3r₀²·μ⃗₁`, the candidate only
/// solves the equation up to sign in degenerate cases; `b·μ⃗₀ − a·μ⃗₂` always
/// does and is recorded alongside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub a: BigInt,
    pub b: BigInt,
    pub mu0: Vec3,
    pub mu1: Vec3,
    pub mu2: Vec3,
    pub degrees: Vec3,
    pub sign: ClosedFormSign,
    /// `k` with `d⃗ = ±closed form + k·r⃗`, for the matching sign.
    pub shift: Option<BigInt>,
    /// `b·μ⃗₀ − a·μ⃗₂`.
    pub corrected: Vec3,
    /// `k` with `d⃗ = corrected + k·r⃗`.
    pub corrected_shift: Option<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedConstruction {
    pub seed: Seed,
    pub deltas: DeltaTriple,
    /// All integral degree vectors are `seed degrees + k·generator`.
    pub generator: Vec3,
    pub closed_form: ClosedForm,
}

/// The Markov-type seed with rank triple `t` (in order) and
/// `(Δ₂, Δ₃, Δ₁) = 3·(r₀, r₁, r₂)`, normalized to the smallest nonnegative
/// middle degree.
pub fn construct_markov_seed(t: &MarkovTriple) -> Result<SeedConstruction> {
    let r = t.to_vec3();
    let three = big(3);
    let deltas = DeltaTriple::new(&three * &r[2], &three * &r[0], &three * &r[1])?;
    let w = -&deltas.nabla();
    let (particular, generator) = match crate::exact::solve_cross_equation(&r, &w)? {
        SolutionSet::Feasible {
            particular,
            generator,
        } => (particular, generator),
        SolutionSet::Infeasible(why) => {
            return Err(HelixError::Internal(format!(
                "degree equation for Markov triple {t} is infeasible ({why})"
            )))
        }
    };
    let classes: [KClass; 3] =
        std::array::from_fn(|i| KClass::new(particular[i].clone(), r[i].clone()));
    let [e0, e1, e2] = classes;
    let seed = Seed::new(e0, e1, e2).map_err(|e| {
        HelixError::Internal(format!("constructed seed for {t} is invalid: {e}"))
    })?;
    let got = deltas_from_seed(&seed)?;
    if got != deltas {
        return Err(HelixError::Internal(format!(
            "constructed seed for {t} has Δ = {got}, expected {deltas}"
        )));
    }
    let closed_form = closed_form(&r, &particular, &w);
    Ok(SeedConstruction {
        seed,
        deltas,
        generator,
        closed_form,
    })
}

fn closed_form(r: &Vec3, d: &Vec3, w: &Vec3) -> ClosedForm {
    let sq0 = &r[0] * &r[0];
    let sq2 = &r[2] * &r[2];
    let eg = sq0.extended_gcd(&sq2);
    debug_assert!(eg.gcd.is_one(), "Markov entries are coprime");
    let (a, b) = (eg.x, eg.y);
    let mu1 = signed_mutation(r, 1);
    let mu0 = signed_mutation(&mu1, 0);
    let mu2 = signed_mutation(&mu1, 2);
    let degrees = &mu2.scale(&a) + &mu0.scale(&b);
    let cross = cross3(&degrees, r);
    let sign = if &cross == w {
        ClosedFormSign::Positive
    } else if &cross == &-w {
        ClosedFormSign::Negative
    } else {
        ClosedFormSign::Neither
    };
    let signed = match sign {
        ClosedFormSign::Positive => Some(degrees.clone()),
        ClosedFormSign::Negative => Some(-&degrees),
        ClosedFormSign::Neither => None,
    };
    let shift = signed.and_then(|c| integer_multiple(&(d - &c), r));
    let corrected = &mu0.scale(&b) - &mu2.scale(&a);
    let corrected_shift = (&cross3(&corrected, r) == w)
        .then(|| integer_multiple(&(d - &corrected), r))
        .flatten();
    ClosedForm {
        a,
        b,
        mu0,
        mu1,
        mu2,
        degrees,
        sign,
        shift,
        corrected,
        corrected_shift,
    }
}

/// `k` with `v = k·r`, if there is one.
fn integer_multiple(v: &Vec3, r: &Vec3) -> Option<BigInt> {
    let i = (0..3).find(|&i| !r[i].is_zero())?;
    let (k, rem) = v[i].div_rem(&r[i]);
    (rem.is_zero() && &r.scale(&k) == v).then_some(k)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationStep {
    pub residue: usize,
    pub old_seed: Seed,
    pub new_seed: Seed,
    pub old_ranks: Vec3,
    pub new_ranks: Vec3,
}

/// Right mutation of every bundle with index `≡ j (mod 3)`.
///
/// The returned seed is the window at indices `j, j+1, j+2` of the mutated
/// helix: `([E_{j+1}], Δ_{j+1}[E_{j+1}] − [E_j], [E_{j+2}])`.
pub fn mutate_seed(seed: &Seed, residue: usize) -> Result<MutationStep> {
    if residue > 2 {
        return Err(HelixError::Domain(format!("residue must be 0, 1 or 2, got {residue}")));
    }
    seed.check_structure()?;
    deltas_from_seed(seed)?;
    let helix = Helix::new(seed);
    let j = residue as i64;
    let next = helix.class_at(j + 1);
    let moved = helix.intermediate_class(j + 2);
    let after = helix.class_at(j + 2);
    let new_seed = Seed::new(next, moved, after)
        .map_err(|e| HelixError::InvalidSeed(format!("mutation at residue {residue}: {e}")))?;

    let old_ranks = seed.ranks();
    let new_ranks = new_seed.ranks();
    if seed.is_markov_type() {
        let r = |k: usize| &old_ranks[k % 3];
        let expected = Vec3([
            r(residue + 1).clone(),
            big(3) * r(residue + 1) * r(residue + 2) - r(residue),
            r(residue + 2).clone(),
        ]);
        if expected != new_ranks {
            return Err(HelixError::Internal(format!(
                "rank law fails at residue {residue}: expected {expected}, got {new_ranks}"
            )));
        }
    }
    Ok(MutationStep {
        residue,
        old_seed: seed.clone(),
        new_seed,
        old_ranks,
        new_ranks,
    })
}

/// Mutates the residue with the largest rank until all ranks are 1.
pub fn reduce_to_lines(seed: &Seed) -> Result<(Vec<MutationStep>, Seed)> {
    if !seed.is_markov_type() {
        return Err(HelixError::Domain(format!(
            "{seed} is not of Markov type (needs q = 0 and (Δ₂, Δ₃, Δ₁) = 3·ranks)"
        )));
    }
    let mut steps = Vec::new();
    let mut cur = seed.clone();
    while !cur.ranks().iter().all(One::is_one) {
        let slot = max_slot(&cur.ranks().0);
        let step = mutate_seed(&cur, slot)?;
        cur = step.new_seed.clone();
        steps.push(step);
    }
    Ok((steps, cur))
}

fn require(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(HelixError::Parameter(what()))
    }
}

/// `((−r₀−r₂−a, r₀), (0, 1), (r₀+r₂+a, r₂))`, with `Δ₁ = Δ₂ = r₀+r₂+a`.
pub fn family_equigen(r0: &BigInt, r2: &BigInt, a: &BigInt) -> Result<Seed> {
    let one = BigInt::one();
    let s = r0 + r2 + a;
    require(a >= &one, || format!("need a ≥ 1, got a = {a}"))?;
    require(r0 > a, || format!("need r0 ≥ a + 1, got r0 = {r0}, a = {a}"))?;
    require(r2 > a, || format!("need r2 ≥ a + 1, got r2 = {r2}, a = {a}"))?;
    let bound = a * a + a + &one;
    require(r0 + r2 > bound, || {
        format!("need r0 + r2 > a² + a + 1 = {bound}, got {}", r0 + r2)
    })?;
    for (name, r) in [("r0", r0), ("r2", r2)] {
        let g = s.gcd(r);
        require(g.is_one(), || {
            format!("need gcd(r0 + r2 + a, {name}) = 1, got gcd({s}, {r}) = {g}")
        })?;
    }
    Ok(Seed([
        KClass::new(-&s, r0.clone()),
        KClass::new(0, 1),
        KClass::new(s.clone(), r2.clone()),
    ]))
}

/// `((−d−a−1, d+a−r), (0, 1), (d, r))`, with `Δ = (d+a+1, d, d−(a+1)r)`.
pub fn family_noneq(d: &BigInt, r: &BigInt, a: &BigInt) -> Result<Seed> {
    let one = BigInt::one();
    let two = big(2);
    require(!a.is_negative(), || format!("need a ≥ 0, got a = {a}"))?;
    let top = d + a + &one;
    let r0 = d + a - r;
    let bound = (a + &one) * (&two * r + &one) + big(4);
    require(d > &bound, || format!("need d > (a + 1)(2r + 1) + 4 = {bound}, got d = {d}"))?;
    require(r0 > two && r > &two, || {
        format!("need min(d + a − r, r) > 2, got min({r0}, {r}) = {}", (&r0).min(r))
    })?;
    let g = top.gcd(&r0);
    require(g.is_one(), || format!("need gcd(d + a + 1, d + a − r) = 1, got gcd({top}, {r0}) = {g}"))?;
    let g = d.gcd(r);
    require(g.is_one(), || format!("need gcd(d, r) = 1, got gcd({d}, {r}) = {g}"))?;
    Ok(Seed([
        KClass::new(-top, r0),
        KClass::new(0, 1),
        KClass::new(d.clone(), r.clone()),
    ]))
}

/// One translate `d⃗ = particular + k·ρ⃗` and the coordinate that breaks
/// `gcd(dᵢ, 3ρᵢ) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case2Witness {
    pub k: BigInt,
    pub degrees: Vec3,
    pub index: Option<usize>,
    pub gcd: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case2Report {
    pub rho: MarkovTriple,
    pub ranks: Vec3,
    pub solutions: SolutionSet,
    /// One witness per class of `k` modulo 3; `gcd(dᵢ + kρᵢ, 3ρᵢ)` has
    /// period 3 in `k`, so these cover every integral solution.
    pub witnesses: Vec<Case2Witness>,
    pub infeasible_as_seed: bool,
}

/// Solves `d⃗ × ρ⃗ = −μ₁(ρ⃗)` (the degree equation for ranks `3ρ⃗`) and shows
/// every solution fails coprimality somewhere.
pub fn case2_infeasible(rho: &MarkovTriple) -> Result<Case2Report> {
    let p = rho.to_vec3();
    let ranks = p.scale(&big(3));
    let w = -&signed_mutation(&p, 1);
    let solutions = crate::exact::solve_cross_equation(&p, &w)?;
    let mut witnesses = Vec::new();
    if solutions.is_feasible() {
        for k in 0..3 {
            let k = big(k);
            let d = solutions.member(&k).expect("feasible");
            let bad = (0..3)
                .map(|i| (i, d[i].gcd(&ranks[i])))
                .find(|(_, g)| !g.is_one());
            witnesses.push(Case2Witness {
                k,
                degrees: d,
                index: bad.as_ref().map(|(i, _)| *i),
                gcd: bad.map_or_else(BigInt::one, |(_, g)| g),
            });
        }
    }
    let infeasible_as_seed = witnesses.iter().all(|w| w.index.is_some());
    Ok(Case2Report {
        rho: rho.clone(),
        ranks,
        solutions,
        witnesses,
        infeasible_as_seed,
    })
}

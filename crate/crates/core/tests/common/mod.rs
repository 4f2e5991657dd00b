//! Independent oracles shared by the integration tests. Nothing here calls
//! the helix recurrence; classes come from repeated single mutations driven
//! by the Euler form alone.

#![allow(dead_code)]

use std::collections::BTreeMap;

use helixlab_core::{euler_chi, KClass, Mat3, MarkovTriple, Seed};
use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use rand::rngs::StdRng;
use rand::Rng;

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// `R_F E = χ(E, F)·F − E`.
fn right(e: &KClass, f: &KClass) -> KClass {
    &f.scale(&euler_chi(e, f)) - e
}

/// `L_F E = χ(F, E)·F − E`.
fn left(e: &KClass, f: &KClass) -> KClass {
    &f.scale(&euler_chi(f, e)) - e
}

/// Classes `[E_i]` for `lo ≤ i ≤ hi` (with `lo ≤ 0`, `hi ≥ 2`), using
/// `E_{i+3} = R_{E_{i+2}} R_{E_{i+1}} E_i` and its left inverse.
pub fn oracle_classes(seed: &Seed, lo: i64, hi: i64) -> BTreeMap<i64, KClass> {
    let mut m: BTreeMap<i64, KClass> = (0..3).map(|i| (i, seed.0[i as usize].clone())).collect();
    for i in 3..=hi {
        let moved = right(&m[&(i - 3)], &m[&(i - 2)]);
        let next = right(&moved, &m[&(i - 1)]);
        m.insert(i, next);
    }
    for i in (lo..0).rev() {
        let moved = left(&m[&(i + 3)], &m[&(i + 2)]);
        let prev = left(&moved, &m[&(i + 1)]);
        m.insert(i, prev);
    }
    m
}

/// The global matrix written out entrywise.
pub fn closed_form_a(d1: &BigInt, d2: &BigInt, d3: &BigInt) -> Mat3 {
    let one = big(1);
    Mat3([
        [one.clone(), -d1, d3.clone()],
        [d1.clone(), &one - d1 * d1, d1 * d3 - d2],
        [
            d1 * d2 - d3,
            d1 * d3 + d2 * (&one - d1 * d1),
            d2 * (d1 * d3 - d2) + &one - d3 * d3,
        ],
    ])
}

/// Every ordering of every Markov triple with entries `≤ bound`, found by
/// brute force over the Markov equation rather than the tree.
pub fn ordered_markov_triples(bound: i64) -> Vec<MarkovTriple> {
    let mut out = Vec::new();
    for a in 1..=bound {
        for b in a..=bound {
            // c² − 3ab·c + a² + b² = 0
            let p = 3 * a * b;
            let disc = p * p - 4 * (a * a + b * b);
            if disc < 0 {
                continue;
            }
            let s = disc.sqrt();
            if s * s != disc {
                continue;
            }
            for c in [(p - s) / 2, (p + s) / 2] {
                if c >= b && c <= bound && (p - s) % 2 == 0 {
                    let mut perms = vec![
                        [a, b, c],
                        [a, c, b],
                        [b, a, c],
                        [b, c, a],
                        [c, a, b],
                        [c, b, a],
                    ];
                    perms.sort();
                    perms.dedup();
                    for [x, y, z] in perms {
                        let t = MarkovTriple::new(x, y, z).expect("solves the equation");
                        if !out.contains(&t) {
                            out.push(t);
                        }
                    }
                }
            }
        }
    }
    out
}

/// A random seed with positive ranks, coprime entries, increasing slopes
/// and positive Δ's.
pub fn random_valid_seed(rng: &mut StdRng) -> Seed {
    loop {
        let classes: Vec<KClass> = (0..3)
            .map(|_| KClass::new(rng.gen_range(-40i64..=40), rng.gen_range(1i64..=12)))
            .collect();
        if let Ok(s) = Seed::new(classes[0].clone(), classes[1].clone(), classes[2].clone()) {
            return s;
        }
    }
}

pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

//! Truncated integer power series and the Hilbert series of the
//! endomorphism algebra of a helix and of its quadratic cover `S`.
//!
//! Both triples come from the same 3-periodic recurrence
//!
//! ```text
//! h_n[i] = Δ_{−n}·h_{n+1}[i−1] − Δ_{−n−2}·h_{n+2}[i−2] + h_n[i−3] + rhs[i]
//! ```
//!
//! with `rhs = 1` for `S` and `rhs = 1 − t³` for `End`. The matrix identity
//! `D(t)·H_S = (1,1,1)ᵀ` is used only as a check.

use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{HelixError, Result};
use crate::exact::Mat3;
use crate::helix::{deltas_from_seed, DeltaTriple, Helix, Seed};

/// A power series in `t` known modulo `t^order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntSeries {
    coeffs: Vec<BigInt>,
}

impl IntSeries {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        IntSeries { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntSeries::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(order: usize) -> Self {
        IntSeries::new(vec![BigInt::zero(); order])
    }

    pub fn one(order: usize) -> Self {
        let mut s = IntSeries::zero(order);
        if order > 0 {
            s.coeffs[0] = BigInt::one();
        }
        s
    }

    /// A polynomial, truncated or zero-padded to `order`.
    pub fn from_poly(poly: &[BigInt], order: usize) -> Self {
        let mut s = IntSeries::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(poly) {
            *slot = c.clone();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Product modulo `t^min(order)`.
    pub fn mul(&self, other: &IntSeries) -> IntSeries {
        let n = self.order().min(other.order());
        let mut out = IntSeries::zero(n);
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    /// Index of the first coefficient where the two series differ.
    pub fn first_difference(&self, other: &IntSeries) -> Option<usize> {
        let n = self.order().min(other.order());
        (0..n).find(|&i| self.coeffs[i] != other.coeffs[i])
    }
}

impl<'a> Add<&'a IntSeries> for &'a IntSeries {
    type Output = IntSeries;
    fn add(self, rhs: &IntSeries) -> IntSeries {
        let n = self.order().min(rhs.order());
        IntSeries::new((0..n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect())
    }
}

impl<'a> Sub<&'a IntSeries> for &'a IntSeries {
    type Output = IntSeries;
    fn sub(self, rhs: &IntSeries) -> IntSeries {
        let n = self.order().min(rhs.order());
        IntSeries::new((0..n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect())
    }
}

impl fmt::Display for IntSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", cs.join(", "))
    }
}

/// A 3×3 matrix of integer polynomials of degree ≤ 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMat3(pub [[[BigInt; 4]; 3]; 3]);

impl PolyMat3 {
    pub fn entry(&self, i: usize, j: usize) -> &[BigInt; 4] {
        &self.0[i][j]
    }

    pub fn eval(&self, t: &BigInt) -> Mat3 {
        Mat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                self.0[i][j]
                    .iter()
                    .rev()
                    .fold(BigInt::zero(), |acc, c| acc * t + c)
            })
        }))
    }

    /// `self · (h₀, h₁, h₂)ᵀ` modulo `t^order`.
    pub fn apply(&self, h: &[IntSeries; 3]) -> [IntSeries; 3] {
        let order = h.iter().map(IntSeries::order).min().unwrap_or(0);
        std::array::from_fn(|i| {
            (0..3).fold(IntSeries::zero(order), |acc, j| {
                &acc + &IntSeries::from_poly(&self.0[i][j], order).mul(&h[j])
            })
        })
    }
}

/// `D(t)` with rows `(1−t³, −Δ₃t, Δ₁t²)`, `(Δ₃t², 1−t³, −Δ₂t)`,
/// `(−Δ₁t, Δ₂t², 1−t³)`.
pub fn d_matrix(deltas: &DeltaTriple) -> PolyMat3 {
    let z = BigInt::zero;
    let diag = || [BigInt::one(), z(), z(), -BigInt::one()];
    let lin = |c: BigInt| [z(), c, z(), z()];
    let quad = |c: BigInt| [z(), z(), c, z()];
    let (d1, d2, d3) = (deltas.d1().clone(), deltas.d2().clone(), deltas.d3().clone());
    PolyMat3([
        [diag(), lin(-d3.clone()), quad(d1.clone())],
        [quad(d3), diag(), lin(-d2.clone())],
        [lin(-d1), quad(d2), diag()],
    ])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algebra {
    /// The quadratic cover.
    S,
    /// The endomorphism algebra of the helix.
    End,
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algebra::S => "S",
            Algebra::End => "End",
        })
    }
}

/// The three relative Hilbert series `H₀, H₁, H₂`; all others repeat with
/// period three.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertTriple {
    pub series: [IntSeries; 3],
    pub algebra: Algebra,
}

impl HilbertTriple {
    /// `H_n` for any integer `n`.
    pub fn get(&self, n: i64) -> &IntSeries {
        &self.series[n.rem_euclid(3) as usize]
    }
}

pub fn hilbert_series(deltas: &DeltaTriple, which: Algebra, order: usize) -> Result<HilbertTriple> {
    if order == 0 {
        return Err(HelixError::Domain("truncation order must be at least 1".into()));
    }
    let mut h: [Vec<BigInt>; 3] = Default::default();
    for i in 0..order {
        for n in 0..3usize {
            let ni = n as i64;
            let mut v = BigInt::zero();
            if i == 0 {
                v += 1;
            }
            if i == 3 && which == Algebra::End {
                v -= 1;
            }
            if i >= 1 {
                v += deltas.at(-ni) * &h[(n + 1) % 3][i - 1];
            }
            if i >= 2 {
                v -= deltas.at(-ni - 2) * &h[(n + 2) % 3][i - 2];
            }
            if i >= 3 {
                v += &h[n][i - 3];
            }
            h[n].push(v);
        }
    }
    Ok(HilbertTriple {
        series: h.map(IntSeries::new),
        algebra: which,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub series: usize,
    pub coefficient: usize,
    pub expected: BigInt,
    pub actual: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub status: CheckStatus,
    pub discrepancy: Option<Discrepancy>,
    pub note: Option<String>,
}

impl CheckOutcome {
    fn from_discrepancy(name: &'static str, d: Option<Discrepancy>) -> Self {
        CheckOutcome {
            name,
            status: if d.is_some() {
                CheckStatus::Fail
            } else {
                CheckStatus::Pass
            },
            discrepancy: d,
            note: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertVerification {
    pub order: usize,
    pub s: HilbertTriple,
    pub end: HilbertTriple,
    pub checks: Vec<CheckOutcome>,
}

impl HilbertVerification {
    /// No check failed; skipped checks do not count against it.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub const CHECK_MATRIX: &str = "matrix identity D(t)·H_S = (1,1,1)";
pub const CHECK_CUBIC: &str = "H_End = (1 - t^3)·H_S";
pub const CHECK_CHI: &str = "H_End coefficients = Hom dimensions";

/// Cross-checks the recurrence output against the matrix identity, the
/// cubic relation between the two triples, and (given a seed with these
/// Δ's) Hom dimensions computed from the helix itself.
pub fn verify_hilbert(deltas: &DeltaTriple, order: usize, seed: Option<&Seed>) -> Result<HilbertVerification> {
    if order < 4 {
        return Err(HelixError::Domain(format!(
            "verification needs order ≥ 4, got {order}"
        )));
    }
    let s = hilbert_series(deltas, Algebra::S, order)?;
    let end = hilbert_series(deltas, Algebra::End, order)?;

    let one = IntSeries::one(order);
    let lhs = d_matrix(deltas).apply(&s.series);
    let matrix = (0..3).find_map(|n| {
        lhs[n].first_difference(&one).map(|i| Discrepancy {
            series: n,
            coefficient: i,
            expected: one.coeff(i).clone(),
            actual: lhs[n].coeff(i).clone(),
        })
    });

    let cubic = IntSeries::from_poly(&[BigInt::one(), BigInt::zero(), BigInt::zero(), -BigInt::one()], order);
    let cubic_check = (0..3).find_map(|n| {
        let expected = cubic.mul(&s.series[n]);
        expected.first_difference(&end.series[n]).map(|i| Discrepancy {
            series: n,
            coefficient: i,
            expected: expected.coeff(i).clone(),
            actual: end.series[n].coeff(i).clone(),
        })
    });

    let mut checks = vec![
        CheckOutcome::from_discrepancy(CHECK_MATRIX, matrix),
        CheckOutcome::from_discrepancy(CHECK_CUBIC, cubic_check),
    ];

    checks.push(match seed {
        None => CheckOutcome {
            name: CHECK_CHI,
            status: CheckStatus::Skipped,
            discrepancy: None,
            note: Some("no seed supplied".into()),
        },
        Some(seed) => chi_check(deltas, &end, seed),
    });

    Ok(HilbertVerification {
        order,
        s,
        end,
        checks,
    })
}

/// Coefficient `i ≥ 1` of `H_End,n` must equal `χ(E_{−n−i}, E_{−n})`.
fn chi_check(deltas: &DeltaTriple, end: &HilbertTriple, seed: &Seed) -> CheckOutcome {
    let fail_note = |note: String| CheckOutcome {
        name: CHECK_CHI,
        status: CheckStatus::Fail,
        discrepancy: None,
        note: Some(note),
    };
    match deltas_from_seed(seed) {
        Ok(d) if &d == deltas => {}
        Ok(d) => return fail_note(format!("seed has Δ = {d}, not {deltas}")),
        Err(e) => return fail_note(e.to_string()),
    }
    let helix = Helix::new(seed);
    let order = end.series[0].order();
    for n in 0..3usize {
        for i in 1..order {
            let top = -(n as i64);
            let expected = helix
                .hom_dim(top - i as i64, top)
                .expect("indices are increasing");
            let actual = end.series[n].coeff(i);
            if &expected != actual {
                return CheckOutcome::from_discrepancy(
                    CHECK_CHI,
                    Some(Discrepancy {
                        series: n,
                        coefficient: i,
                        expected,
                        actual: actual.clone(),
                    }),
                );
            }
        }
    }
    CheckOutcome::from_discrepancy(CHECK_CHI, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::big;

    fn dt(a: i64, b: i64, c: i64) -> DeltaTriple {
        DeltaTriple::from_i64(a, b, c).unwrap()
    }

    #[test]
    fn d_matrix_examples() {
        let d = d_matrix(&dt(3, 3, 3));
        assert_eq!(d.entry(0, 0), &[1, 0, 0, -1].map(big));
        assert_eq!(d.entry(0, 1), &[0, -3, 0, 0].map(big));
        assert_eq!(d.entry(0, 2), &[0, 0, 3, 0].map(big));
        let d = d_matrix(&dt(6, 3, 3));
        assert_eq!(d.entry(0, 2), &[0, 0, 6, 0].map(big));
        assert_eq!(d.entry(2, 0), &[0, -6, 0, 0].map(big));
        assert_eq!(d.eval(&big(0)), Mat3::identity());
    }

    #[test]
    fn series_examples() {
        let s = hilbert_series(&dt(3, 3, 3), Algebra::S, 5).unwrap();
        for h in &s.series {
            assert_eq!(h, &IntSeries::from_i64(&[1, 3, 6, 10, 15]));
        }
        let e = hilbert_series(&dt(3, 3, 3), Algebra::End, 5).unwrap();
        for h in &e.series {
            assert_eq!(h, &IntSeries::from_i64(&[1, 3, 6, 9, 12]));
        }
        let e = hilbert_series(&dt(6, 3, 3), Algebra::End, 4).unwrap();
        assert_eq!(e.series[0], IntSeries::from_i64(&[1, 3, 3, 9]));
        assert_eq!(e.series[1].coeff(2), &big(15));
        assert_eq!(e.series[2].coeff(1), &big(6));
        let e = hilbert_series(&dt(5, 5, 5), Algebra::End, 5).unwrap();
        for h in &e.series {
            assert_eq!(h, &IntSeries::from_i64(&[1, 5, 20, 75, 280]));
        }
        assert!(hilbert_series(&dt(5, 5, 5), Algebra::End, 0).is_err());
    }

    #[test]
    fn verify_examples() {
        let lines = Seed::from_i64([(-3, 1), (0, 1), (3, 1)]);
        let v = verify_hilbert(&dt(3, 3, 3), 12, Some(&lines)).unwrap();
        assert!(v.passed());
        assert!(v.checks.iter().all(|c| c.status == CheckStatus::Pass));

        let equigen = Seed::from_i64([(-5, 2), (0, 1), (5, 2)]);
        let v = verify_hilbert(&dt(5, 5, 5), 12, Some(&equigen)).unwrap();
        assert!(v.passed());
        assert_eq!(v.end.series[0].coeff(3), &big(75));

        let markov = Seed::from_i64([(-6, 1), (0, 1), (3, 2)]);
        let v = verify_hilbert(&dt(6, 3, 3), 12, Some(&markov)).unwrap();
        assert!(v.passed());
        assert_eq!(v.end.series[0].coeff(3), &big(9));
    }

    #[test]
    fn verify_skips_without_seed_and_flags_mismatch() {
        let v = verify_hilbert(&dt(5, 5, 5), 8, None).unwrap();
        assert!(v.passed());
        assert_eq!(v.check(CHECK_CHI).unwrap().status, CheckStatus::Skipped);

        let lines = Seed::from_i64([(-3, 1), (0, 1), (3, 1)]);
        let v = verify_hilbert(&dt(5, 5, 5), 8, Some(&lines)).unwrap();
        assert!(!v.passed());
        assert!(verify_hilbert(&dt(5, 5, 5), 3, None).is_err());
    }
}

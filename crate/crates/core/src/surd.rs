//! Exact real quadratic surds `a + b·√d` with rational `a`, `b` and a
//! nonnegative integer radicand, compared by integer sign tests only.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug)]
pub struct QuadSurd {
    pub a: BigRational,
    pub b: BigRational,
    pub d: BigInt,
}

impl QuadSurd {
    pub fn rational(a: BigRational) -> Self {
        QuadSurd {
            a,
            b: BigRational::zero(),
            d: BigInt::zero(),
        }
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    /// `a + b√d`; panics on a negative radicand.
    pub fn new(a: BigRational, b: BigRational, d: BigInt) -> Self {
        assert!(!d.is_negative(), "negative radicand {d}");
        QuadSurd { a, b, d }
    }

    /// Real roots `(p ± √(p² − 4s))/2` of `x² − p·x + s`, smaller first.
    /// `None` when the discriminant is not positive.
    pub fn quadratic_roots(p: &BigInt, s: &BigInt) -> Option<(QuadSurd, QuadSurd)> {
        let disc = p * p - BigInt::from(4) * s;
        if !disc.is_positive() {
            return None;
        }
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let a = BigRational::from_integer(p.clone()) * &half;
        Some((
            QuadSurd::new(a.clone(), -half.clone(), disc.clone()),
            QuadSurd::new(a, half, disc),
        ))
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero() || self.d.is_zero()
    }

    pub fn sign(&self) -> Ordering {
        sign_one(&self.a, &self.b, &self.d)
    }

    pub fn approx(&self) -> f64 {
        use num_traits::ToPrimitive;
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        a + b * d.sqrt()
    }
}

fn rat_sign(x: &BigRational) -> Ordering {
    x.cmp(&BigRational::zero())
}

/// Sign of `u + p√m`.
fn sign_one(u: &BigRational, p: &BigRational, m: &BigInt) -> Ordering {
    if p.is_zero() || m.is_zero() {
        return rat_sign(u);
    }
    let su = rat_sign(u);
    let sp = rat_sign(p);
    if su == Ordering::Equal || su == sp {
        return sp;
    }
    // opposite signs: whichever has the larger square wins
    let lhs = u * u;
    let rhs = p * p * BigRational::from_integer(m.clone());
    match lhs.cmp(&rhs) {
        Ordering::Greater => su,
        Ordering::Less => sp,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Sign of `u + p√m − q√n`.
fn sign_two(u: &BigRational, p: &BigRational, m: &BigInt, q: &BigRational, n: &BigInt) -> Ordering {
    let left = sign_one(u, p, m);
    let right = if n.is_zero() { Ordering::Equal } else { rat_sign(q) };
    if left != right {
        return left.cmp(&right);
    }
    if left == Ordering::Equal {
        return Ordering::Equal;
    }
    // same strict sign: compare squares L² − R²
    let m_r = BigRational::from_integer(m.clone());
    let n_r = BigRational::from_integer(n.clone());
    let two = BigRational::from_integer(BigInt::from(2));
    let rest = u * u + p * p * &m_r - q * q * &n_r;
    let cross = two * u * p;
    let sq = sign_one(&rest, &cross, m);
    if left == Ordering::Greater {
        sq
    } else {
        sq.reverse()
    }
}

impl PartialEq for QuadSurd {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for QuadSurd {}

impl PartialOrd for QuadSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadSurd {
    fn cmp(&self, other: &Self) -> Ordering {
        let u = &self.a - &other.a;
        sign_two(&u, &self.b, &self.d, &other.b, &other.d)
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.a);
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        let b = self.b.abs();
        if b == BigRational::new(BigInt::from(1), BigInt::from(2)) {
            // (2a ± √d)/2 reads better for quadratic roots
            let twice_a = &self.a * BigRational::from_integer(BigInt::from(2));
            write!(f, "({twice_a} {sign} √{})/2", self.d)
        } else {
            write!(f, "{} {sign} {}·√{}", self.a, b, self.d)
        }
    }
}

/// The rational with the smallest denominator (then numerator) strictly
/// inside `(lo, hi)`, found by Stern–Brocot descent with galloping steps.
///
/// Requires `0 ≤ lo < hi`.
pub fn simplest_rational_between(lo: &QuadSurd, hi: &QuadSurd) -> BigRational {
    assert!(lo < hi, "empty interval");
    assert!(lo.sign() != Ordering::Less, "negative lower end");
    let one = BigInt::from(1);
    let zero = BigInt::zero();
    // left = a/b, right = c/d (c/d may be 1/0 = ∞)
    let (mut a, mut b) = (zero.clone(), one.clone());
    let (mut c, mut d) = (one.clone(), zero.clone());
    let as_surd = |n: &BigInt, m: &BigInt| QuadSurd::rational(BigRational::new(n.clone(), m.clone()));
    loop {
        let (mn, md) = (&a + &c, &b + &d);
        let mid = as_surd(&mn, &md);
        if mid <= *lo {
            // largest k with (a + k c)/(b + k d) ≤ lo
            let fits = |k: &BigInt| as_surd(&(&a + k * &c), &(&b + k * &d)) <= *lo;
            let k = gallop(fits);
            a = &a + &k * &c;
            b = &b + &k * &d;
        } else if mid >= *hi {
            // largest k with (k a + c)/(k b + d) ≥ hi
            let fits = |k: &BigInt| as_surd(&(k * &a + &c), &(k * &b + &d)) >= *hi;
            let k = gallop(fits);
            c = &k * &a + &c;
            d = &k * &b + &d;
        } else {
            return BigRational::new(mn, md);
        }
    }
}

/// Largest `k ≥ 1` with `fits(k)`, given `fits(1)` and monotone `fits`.
fn gallop(fits: impl Fn(&BigInt) -> bool) -> BigInt {
    let mut lo = BigInt::from(1);
    let mut hi = BigInt::from(2);
    while fits(&hi) {
        lo = hi.clone();
        hi = &hi * 2;
    }
    // fits(lo), !fits(hi)
    while &hi - &lo > BigInt::from(1) {
        let mid: BigInt = (&lo + &hi) / 2;
        if fits(&mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn s(a: BigRational, b: BigRational, d: i64) -> QuadSurd {
        QuadSurd::new(a, b, BigInt::from(d))
    }

    #[test]
    fn ordering_matches_floats() {
        let vals = [
            s(r(5, 2), r(-1, 2), 5),
            s(r(13, 2), r(-1, 2), 85),
            s(r(0, 1), r(1, 1), 2),
            s(r(3, 2), r(0, 1), 0),
            s(r(-1, 1), r(2, 1), 3),
            s(r(7, 3), r(-1, 5), 11),
            s(r(1, 1), r(1, 1), 4),
            QuadSurd::integer(3),
        ];
        for x in &vals {
            for y in &vals {
                let exact = x.cmp(y);
                let fx = x.approx();
                let fy = y.approx();
                if (fx - fy).abs() > 1e-9 {
                    assert_eq!(exact, fx.partial_cmp(&fy).unwrap(), "{x} vs {y}");
                }
            }
        }
        // 1 + √4 = 3 exactly
        assert_eq!(s(r(1, 1), r(1, 1), 4), QuadSurd::integer(3));
    }

    #[test]
    fn simplest_rational_examples() {
        let (lo, _) = QuadSurd::quadratic_roots(&BigInt::from(5), &BigInt::from(5)).unwrap();
        assert_eq!(simplest_rational_between(&lo, &QuadSurd::integer(2)), r(3, 2));
        let (lo, _) = QuadSurd::quadratic_roots(&BigInt::from(13), &BigInt::from(21)).unwrap();
        assert_eq!(simplest_rational_between(&lo, &QuadSurd::integer(3)), r(2, 1));
        assert_eq!(
            simplest_rational_between(&QuadSurd::integer(1000), &QuadSurd::integer(1002)),
            r(1001, 1)
        );
        assert_eq!(
            simplest_rational_between(&QuadSurd::rational(r(1, 1000)), &QuadSurd::rational(r(1, 999))),
            r(2, 1999)
        );
    }
}

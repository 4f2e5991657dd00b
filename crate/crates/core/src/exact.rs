//! Exact integer substrate: K-theory classes, the Euler pairing, and the
//! three-dimensional vector/matrix arithmetic the helix engine runs on.
//!
//! Everything here is arbitrary precision. Non-Markov helices grow
//! exponentially, so there is no fixed-width fast path.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{HelixError, Result};

/// Shorthand for building a `BigInt` from a machine integer.
pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// The class `(degree, rank)` of an object in the Grothendieck group of an
/// elliptic curve.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KClass {
    pub degree: BigInt,
    pub rank: BigInt,
}

impl KClass {
    pub fn new(degree: impl Into<BigInt>, rank: impl Into<BigInt>) -> Self {
        KClass {
            degree: degree.into(),
            rank: rank.into(),
        }
    }

    /// `gcd(|degree|, rank) == 1`, the stability condition for bundles.
    pub fn is_coprime(&self) -> bool {
        self.degree.gcd(&self.rank).is_one()
    }

    pub fn gcd(&self) -> BigInt {
        self.degree.gcd(&self.rank)
    }

    pub fn scale(&self, k: &BigInt) -> KClass {
        KClass {
            degree: &self.degree * k,
            rank: &self.rank * k,
        }
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.degree, self.rank)
    }
}

impl FromStr for KClass {
    type Err = HelixError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (d, r) = s
            .split_once('/')
            .ok_or_else(|| HelixError::Parameter(format!("expected `degree/rank`, got `{s}`")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| HelixError::Parameter(format!("not an integer: `{}`", t.trim())))
        };
        Ok(KClass {
            degree: parse(d)?,
            rank: parse(r)?,
        })
    }
}

impl<'a> Add<&'a KClass> for &'a KClass {
    type Output = KClass;
    fn add(self, rhs: &KClass) -> KClass {
        KClass {
            degree: &self.degree + &rhs.degree,
            rank: &self.rank + &rhs.rank,
        }
    }
}

impl<'a> Sub<&'a KClass> for &'a KClass {
    type Output = KClass;
    fn sub(self, rhs: &KClass) -> KClass {
        KClass {
            degree: &self.degree - &rhs.degree,
            rank: &self.rank - &rhs.rank,
        }
    }
}

impl Add for KClass {
    type Output = KClass;
    fn add(self, rhs: KClass) -> KClass {
        &self + &rhs
    }
}

impl Sub for KClass {
    type Output = KClass;
    fn sub(self, rhs: KClass) -> KClass {
        &self - &rhs
    }
}

impl Neg for KClass {
    type Output = KClass;
    fn neg(self) -> KClass {
        KClass {
            degree: -self.degree,
            rank: -self.rank,
        }
    }
}

/// Euler pairing `χ(a, b) = deg(b)·rk(a) − deg(a)·rk(b)`.
pub fn euler_chi(a: &KClass, b: &KClass) -> BigInt {
    &b.degree * &a.rank - &a.degree * &b.rank
}

/// Strict slope comparison `deg(a)/rk(a) < deg(b)/rk(b)` by cross-multiplication.
pub fn slope_less(a: &KClass, b: &KClass) -> Result<bool> {
    if !a.rank.is_positive() || !b.rank.is_positive() {
        return Err(HelixError::Domain(format!(
            "slope comparison needs positive ranks, got {a} and {b}"
        )));
    }
    Ok(&a.degree * &b.rank < &b.degree * &a.rank)
}

/// A column vector of three integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Vec3(pub [BigInt; 3]);

impl Vec3 {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        Vec3([a.into(), b.into(), c.into()])
    }

    pub fn from_i64(v: [i64; 3]) -> Self {
        Vec3(v.map(BigInt::from))
    }

    pub fn zero() -> Self {
        Vec3::default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &Vec3) -> BigInt {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn scale(&self, k: &BigInt) -> Vec3 {
        Vec3(self.0.clone().map(|x| x * k))
    }

    /// Gcd of the three coordinates (zero for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    pub fn iter(&self) -> impl Iterator<Item = &BigInt> {
        self.0.iter()
    }
}

impl Index<usize> for Vec3 {
    type Output = BigInt;
    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vec3 {
    fn index_mut(&mut self, i: usize) -> &mut BigInt {
        &mut self.0[i]
    }
}

impl<'a> Add<&'a Vec3> for &'a Vec3 {
    type Output = Vec3;
    fn add(self, rhs: &Vec3) -> Vec3 {
        Vec3([
            &self.0[0] + &rhs.0[0],
            &self.0[1] + &rhs.0[1],
            &self.0[2] + &rhs.0[2],
        ])
    }
}

impl<'a> Sub<&'a Vec3> for &'a Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: &Vec3) -> Vec3 {
        Vec3([
            &self.0[0] - &rhs.0[0],
            &self.0[1] - &rhs.0[1],
            &self.0[2] - &rhs.0[2],
        ])
    }
}

impl Neg for &Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3(self.0.clone().map(|x| -x))
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

/// Standard right-handed cross product `u × v`.
pub fn cross3(u: &Vec3, v: &Vec3) -> Vec3 {
    Vec3([
        &u[1] * &v[2] - &u[2] * &v[1],
        &u[2] * &v[0] - &u[0] * &v[2],
        &u[0] * &v[1] - &u[1] * &v[0],
    ])
}

/// A 3×3 integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Mat3(pub [[BigInt; 3]; 3]);

impl Mat3 {
    pub fn from_i64(rows: [[i64; 3]; 3]) -> Self {
        Mat3(rows.map(|r| r.map(BigInt::from)))
    }

    pub fn identity() -> Self {
        Mat3::from_i64([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    pub fn row(&self, i: usize) -> Vec3 {
        Vec3(self.0[i].clone())
    }

    pub fn transpose(&self) -> Mat3 {
        let m = &self.0;
        Mat3(std::array::from_fn(|i| std::array::from_fn(|j| m[j][i].clone())))
    }

    pub fn mul_vec(&self, v: &Vec3) -> Vec3 {
        Vec3(std::array::from_fn(|i| self.row(i).dot(v)))
    }

    pub fn trace(&self) -> BigInt {
        &self.0[0][0] + &self.0[1][1] + &self.0[2][2]
    }

    pub fn det(&self) -> BigInt {
        let m = &self.0;
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }

    /// Classical adjugate, so that `m · adj(m) = det(m) · I`.
    pub fn adjugate(&self) -> Mat3 {
        let m = &self.0;
        let cof = |r0: usize, r1: usize, c0: usize, c1: usize| {
            &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0]
        };
        // adj[i][j] = cofactor(j, i)
        Mat3([
            [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
            [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
            [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
        ])
    }

    /// Integer inverse of a unimodular matrix, `None` when `det ≠ ±1`.
    pub fn inverse_unimodular(&self) -> Option<Mat3> {
        let d = self.det();
        if d.is_one() {
            Some(self.adjugate())
        } else if (-&d).is_one() {
            let adj = self.adjugate();
            Some(Mat3(adj.0.map(|r| r.map(|x| -x))))
        } else {
            None
        }
    }

    /// `self^n`; negative powers need a unimodular matrix.
    pub fn pow(&self, n: i64) -> Option<Mat3> {
        let base = if n < 0 {
            self.inverse_unimodular()?
        } else {
            self.clone()
        };
        let mut out = Mat3::identity();
        for _ in 0..n.unsigned_abs() {
            out = &out * &base;
        }
        Some(out)
    }
}

impl<'a> Mul<&'a Mat3> for &'a Mat3 {
    type Output = Mat3;
    fn mul(self, rhs: &Mat3) -> Mat3 {
        Mat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                (0..3).map(|k| &self.0[i][k] * &rhs.0[k][j]).sum()
            })
        }))
    }
}

impl<'a> Sub<&'a Mat3> for &'a Mat3 {
    type Output = Mat3;
    fn sub(self, rhs: &Mat3) -> Mat3 {
        Mat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| &self.0[i][j] - &rhs.0[i][j])
        }))
    }
}

impl fmt::Display for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..3).map(|i| self.row(i).to_string()).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Why a cross-product equation has no integral solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Obstruction {
    NotOrthogonal,
    NoIntegralSolution,
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Obstruction::NotOrthogonal => "not orthogonal",
            Obstruction::NoIntegralSolution => "no integral solution",
        })
    }
}

/// Integer solutions of `d × r = w`.
///
/// When feasible the full solution set is `particular + k·generator` for
/// integer `k`, where `generator` is the primitive vector along `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolutionSet {
    Feasible { particular: Vec3, generator: Vec3 },
    Infeasible(Obstruction),
}

impl SolutionSet {
    pub fn is_feasible(&self) -> bool {
        matches!(self, SolutionSet::Feasible { .. })
    }

    /// The solution `particular + k·generator`.
    pub fn member(&self, k: &BigInt) -> Option<Vec3> {
        match self {
            SolutionSet::Feasible {
                particular,
                generator,
            } => Some(particular + &generator.scale(k)),
            SolutionSet::Infeasible(_) => None,
        }
    }
}

/// Solves `d × r = w` over the integers.
///
/// The returned particular solution is canonical: along the solution line it
/// has the smallest nonnegative coordinate 1 (or the first coordinate where
/// the generator is nonzero, if `r₁ = 0`).
pub fn solve_cross_equation(r: &Vec3, w: &Vec3) -> Result<SolutionSet> {
    if r.is_zero() {
        return Err(HelixError::Domain("cross equation with r = 0".into()));
    }
    if !w.dot(r).is_zero() {
        return Ok(SolutionSet::Infeasible(Obstruction::NotOrthogonal));
    }
    // d ↦ d × r as a matrix acting on d
    let m = Mat3([
        [BigInt::zero(), r[2].clone(), -&r[1]],
        [-&r[2], BigInt::zero(), r[0].clone()],
        [r[1].clone(), -&r[0], BigInt::zero()],
    ]);
    let Some(particular) = solve_integer_system(&m, w) else {
        return Ok(SolutionSet::Infeasible(Obstruction::NoIntegralSolution));
    };
    let generator = {
        let g = r.content();
        Vec3(r.0.clone().map(|x| x / &g))
    };
    let idx = if !generator[1].is_zero() {
        1
    } else {
        (0..3).find(|&i| !generator[i].is_zero()).expect("r is nonzero")
    };
    let target = particular[idx].mod_floor(&generator[idx].abs());
    let k = (&target - &particular[idx]) / &generator[idx];
    let particular = &particular + &generator.scale(&k);
    Ok(SolutionSet::Feasible {
        particular,
        generator,
    })
}

/// Finds one integer solution of `m·x = b`, or `None` if there is none.
///
/// Column operations reduce `m` to lower echelon form `L = m·U` with `U`
/// unimodular; `L·y = b` is then solved by forward substitution with free
/// coordinates set to zero, and `x = U·y`.
fn solve_integer_system(m: &Mat3, b: &Vec3) -> Option<Vec3> {
    let mut l = m.0.clone();
    let mut u = Mat3::identity().0;
    let swap_cols = |a: &mut [[BigInt; 3]; 3], i: usize, j: usize| {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    };
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut p = 0;
    for i in 0..3 {
        if p == 3 {
            break;
        }
        loop {
            let nonzero: Vec<usize> = (p..3).filter(|&c| !l[i][c].is_zero()).collect();
            if nonzero.len() <= 1 {
                if let Some(&c) = nonzero.first() {
                    swap_cols(&mut l, p, c);
                    swap_cols(&mut u, p, c);
                }
                break;
            }
            let &min_c = nonzero
                .iter()
                .min_by(|&&a, &&b| l[i][a].abs().cmp(&l[i][b].abs()))
                .unwrap();
            swap_cols(&mut l, p, min_c);
            swap_cols(&mut u, p, min_c);
            for c in p + 1..3 {
                let q = l[i][c].div_floor(&l[i][p]);
                if q.is_zero() {
                    continue;
                }
                for row in 0..3 {
                    let lp = l[row][p].clone();
                    l[row][c] -= &q * lp;
                    let up = u[row][p].clone();
                    u[row][c] -= &q * up;
                }
            }
        }
        if !l[i][p].is_zero() {
            pivots.push((i, p));
            p += 1;
        }
    }

    let mut y = Vec3::zero();
    let mut solved = 0;
    for i in 0..3 {
        let acc: BigInt = (0..solved).map(|c| &l[i][c] * &y[c]).sum();
        match pivots.iter().find(|&&(row, _)| row == i) {
            Some(&(_, col)) => {
                let rest = &b[i] - acc;
                let (q, rem) = rest.div_rem(&l[i][col]);
                if !rem.is_zero() {
                    return None;
                }
                y[col] = q;
                solved = col + 1;
            }
            None => {
                if acc != b[i] {
                    return None;
                }
            }
        }
    }
    Some(Mat3(u).mul_vec(&y))
}

//! The helix engine: Δ-invariants of a seed, the bidirectional mutation
//! recurrence in K-theory, mutation matrices, and Hom dimensions.
//!
//! A helix is determined numerically by three consecutive classes
//! `[E₀], [E₁], [E₂]`. Further classes follow from
//!
//! ```text
//! [E_{i+3}] = [E_i] − Δ_{i+1}[E_{i+1}] + Δ_i[E_{i+2}]
//! ```
//!
//! with the Δ's 3-periodic. Indices of Δ are read modulo 3 with
//! representatives 1, 2, 3, so `Δ₀ = Δ₃`, `Δ₋₁ = Δ₂` and so on.

mod certify;
mod growth;
mod window;

pub use certify::{certify_generation, Certificate, CertificateStatus, CheckedInequality};
pub use growth::{classify_growth, Eigenvalues, GrowthClass, GrowthReport};
pub use window::{scan_window, Violation, ViolationReason, WindowReport, WindowRow};

use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{HelixError, Result};
use crate::exact::{big, euler_chi, slope_less, KClass, Mat3, Vec3};

/// Maps any integer index onto the Δ slot 0, 1 or 2 (for Δ₁, Δ₂, Δ₃).
fn delta_slot(m: i64) -> usize {
    (m - 1).rem_euclid(3) as usize
}

/// Three consecutive K-classes `([E₀], [E₁], [E₂])` generating a helix.
///
/// [`Seed::new`] enforces the bundle-level invariants; [`Seed::from_classes`]
/// accepts anything, since the K-theory recurrence makes sense regardless.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Seed(pub [KClass; 3]);

impl Seed {
    /// Builds a seed and checks positive ranks, coprimality, increasing
    /// slopes and positive Δ's.
    pub fn new(e0: KClass, e1: KClass, e2: KClass) -> Result<Self> {
        let seed = Seed([e0, e1, e2]);
        seed.check_structure()?;
        deltas_from_seed(&seed)?;
        Ok(seed)
    }

    pub fn from_classes(e0: KClass, e1: KClass, e2: KClass) -> Self {
        Seed([e0, e1, e2])
    }

    pub fn from_i64(pairs: [(i64, i64); 3]) -> Self {
        Seed(pairs.map(|(d, r)| KClass::new(d, r)))
    }

    pub fn class(&self, i: usize) -> &KClass {
        &self.0[i]
    }

    pub fn degrees(&self) -> Vec3 {
        Vec3(self.0.clone().map(|c| c.degree))
    }

    pub fn ranks(&self) -> Vec3 {
        Vec3(self.0.clone().map(|c| c.rank))
    }

    /// Rank positivity, `gcd(|dᵢ|, rᵢ) = 1` and strictly increasing slopes.
    /// Δ positivity is left to [`deltas_from_seed`].
    pub fn check_structure(&self) -> Result<()> {
        for (i, c) in self.0.iter().enumerate() {
            if !c.rank.is_positive() {
                return Err(HelixError::InvalidSeed(format!(
                    "member {i} has nonpositive rank ({c})"
                )));
            }
            if !c.is_coprime() {
                return Err(HelixError::InvalidSeed(format!(
                    "member {i} has gcd(degree, rank) = {} ({c})",
                    c.gcd()
                )));
            }
        }
        for i in 0..2 {
            if !slope_less(&self.0[i], &self.0[i + 1])? {
                return Err(HelixError::InvalidSeed(format!(
                    "slopes of members {i} and {} are not increasing",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    /// Markov type: `q = 0` and `(Δ₂, Δ₃, Δ₁) = 3·(r₀, r₁, r₂)`.
    pub fn is_markov_type(&self) -> bool {
        match deltas_from_seed(self) {
            Ok(d) => d.q().is_zero() && d.delta_vec() == self.ranks().scale(&big(3)),
            Err(_) => false,
        }
    }
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

impl FromStr for Seed {
    type Err = HelixError;

    /// Accepts `d/r,d/r,d/r`, optionally wrapped in parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(s);
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 3 {
            return Err(HelixError::Parameter(format!(
                "a seed needs three `d/r` classes, got `{s}`"
            )));
        }
        Ok(Seed([parts[0].parse()?, parts[1].parse()?, parts[2].parse()?]))
    }
}

/// The invariants `(Δ₁, Δ₂, Δ₃)` of a helix, all positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DeltaTriple([BigInt; 3]);

impl DeltaTriple {
    pub fn new(d1: impl Into<BigInt>, d2: impl Into<BigInt>, d3: impl Into<BigInt>) -> Result<Self> {
        let d = [d1.into(), d2.into(), d3.into()];
        for (i, v) in d.iter().enumerate() {
            if !v.is_positive() {
                return Err(HelixError::NotHelixSeed {
                    index: i + 1,
                    value: v.to_string(),
                });
            }
        }
        Ok(DeltaTriple(d))
    }

    pub fn from_i64(d1: i64, d2: i64, d3: i64) -> Result<Self> {
        Self::new(d1, d2, d3)
    }

    /// `Δ_m` for any integer `m`, read 3-periodically.
    pub fn at(&self, m: i64) -> &BigInt {
        &self.0[delta_slot(m)]
    }

    pub fn d1(&self) -> &BigInt {
        &self.0[0]
    }

    pub fn d2(&self) -> &BigInt {
        &self.0[1]
    }

    pub fn d3(&self) -> &BigInt {
        &self.0[2]
    }

    pub fn as_array(&self) -> &[BigInt; 3] {
        &self.0
    }

    /// `Δ₀₂ = Δ₁Δ₂ − Δ₃ = χ(E₀, E₂)`.
    pub fn delta02(&self) -> BigInt {
        self.d1() * self.d2() - self.d3()
    }

    /// `q = Δ₁² + Δ₂² + Δ₃² − Δ₁Δ₂Δ₃`.
    pub fn q(&self) -> BigInt {
        let [a, b, c] = &self.0;
        a * a + b * b + c * c - a * b * c
    }

    /// The fixed vector `(Δ₂, Δ₃, Δ₁)` of the global mutation matrix.
    pub fn delta_vec(&self) -> Vec3 {
        Vec3([self.d2().clone(), self.d3().clone(), self.d1().clone()])
    }

    /// `∇ = (Δ₂, Δ₃ − Δ₁Δ₂, Δ₁)`, the left null vector of `A − I`.
    pub fn nabla(&self) -> Vec3 {
        Vec3([
            self.d2().clone(),
            self.d3() - self.d1() * self.d2(),
            self.d1().clone(),
        ])
    }

    pub fn is_equigenerated(&self) -> bool {
        self.0[0] == self.0[1] && self.0[1] == self.0[2]
    }
}

impl fmt::Display for DeltaTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.0[0], self.0[1], self.0[2])
    }
}

impl FromStr for DeltaTriple {
    type Err = HelixError;

    fn from_str(s: &str) -> Result<Self> {
        let v = parse_int_triple(s)?;
        let [a, b, c] = v;
        DeltaTriple::new(a, b, c)
    }
}

/// Parses `a,b,c` (optionally parenthesised) into three integers.
pub fn parse_int_triple(s: &str) -> Result<[BigInt; 3]> {
    let s = s.trim();
    let inner = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or(s);
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(HelixError::Parameter(format!(
            "expected three comma-separated integers, got `{s}`"
        )));
    }
    let mut out: [BigInt; 3] = Default::default();
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = p
            .parse()
            .map_err(|_| HelixError::Parameter(format!("not an integer: `{p}`")))?;
    }
    Ok(out)
}

/// The raw `(χ(E₀,E₁), χ(E₁,E₂), Δ₁Δ₂ − χ(E₀,E₂))`, without sign checks.
fn raw_deltas(seed: &Seed) -> [BigInt; 3] {
    let [e0, e1, e2] = &seed.0;
    let d1 = euler_chi(e0, e1);
    let d2 = euler_chi(e1, e2);
    let d3 = &d1 * &d2 - euler_chi(e0, e2);
    [d1, d2, d3]
}

/// Computes `(Δ₁, Δ₂, Δ₃)` of a seed, failing on the first nonpositive one.
pub fn deltas_from_seed(seed: &Seed) -> Result<DeltaTriple> {
    let [d1, d2, d3] = raw_deltas(seed);
    DeltaTriple::new(d1, d2, d3)
}

/// Companion-type matrix `A_j` with rows `(0,1,0), (0,0,1), (1, −Δ_j, Δ_{j+2})`.
///
/// It maps `([E_{j−1}], [E_j], [E_{j+1}])` to `([E_j], [E_{j+1}], [E_{j+2}])`.
pub fn mutation_matrix(deltas: &DeltaTriple, j: i64) -> Mat3 {
    let z = BigInt::zero;
    let o = BigInt::one;
    Mat3([
        [z(), o(), z()],
        [z(), z(), o()],
        [o(), -deltas.at(j), deltas.at(j + 2).clone()],
    ])
}

/// `A = A₃A₂A₁`, advancing a helix by one full period.
pub fn global_matrix(deltas: &DeltaTriple) -> Mat3 {
    let a1 = mutation_matrix(deltas, 1);
    let a2 = mutation_matrix(deltas, 2);
    let a3 = mutation_matrix(deltas, 3);
    &(&a3 * &a2) * &a1
}

#[derive(Debug)]
struct Memo {
    /// classes at indices 0, 1, 2, ...
    forward: Vec<KClass>,
    /// classes at indices -1, -2, ...
    backward: Vec<KClass>,
}

impl Memo {
    fn get(&self, i: i64) -> Option<&KClass> {
        if i >= 0 {
            self.forward.get(i as usize)
        } else {
            self.backward.get((-i - 1) as usize)
        }
    }
}

/// A helix generated by a seed, with memoised class computation in both
/// directions.
///
/// The memo sits behind a lock, so a `Helix` can be shared between threads;
/// readers never observe a partially extended table.
#[derive(Debug)]
pub struct Helix {
    seed: Seed,
    deltas: [BigInt; 3],
    memo: RwLock<Memo>,
}

impl Clone for Helix {
    fn clone(&self) -> Self {
        let memo = self.memo.read().expect("helix memo poisoned");
        Helix {
            seed: self.seed.clone(),
            deltas: self.deltas.clone(),
            memo: RwLock::new(Memo {
                forward: memo.forward.clone(),
                backward: memo.backward.clone(),
            }),
        }
    }
}

impl Helix {
    /// Works for any seed; Δ's are taken as computed even if nonpositive.
    pub fn new(seed: &Seed) -> Self {
        Helix {
            deltas: raw_deltas(seed),
            memo: RwLock::new(Memo {
                forward: seed.0.to_vec(),
                backward: Vec::new(),
            }),
            seed: seed.clone(),
        }
    }

    pub fn seed(&self) -> &Seed {
        &self.seed
    }

    /// `Δ_m`, 3-periodic, possibly nonpositive for non-helix seeds.
    pub fn delta(&self, m: i64) -> &BigInt {
        &self.deltas[delta_slot(m)]
    }

    pub fn deltas(&self) -> Result<DeltaTriple> {
        let [a, b, c] = self.deltas.clone();
        DeltaTriple::new(a, b, c)
    }

    /// `[E_i]` for any integer `i`.
    pub fn class_at(&self, i: i64) -> KClass {
        {
            let memo = self.memo.read().expect("helix memo poisoned");
            if let Some(c) = memo.get(i) {
                return c.clone();
            }
        }
        let mut memo = self.memo.write().expect("helix memo poisoned");
        if i >= 0 {
            while memo.forward.len() as i64 <= i {
                let n = memo.forward.len() as i64;
                // E_n = E_{n−3} − Δ_{n−2} E_{n−2} + Δ_{n−3} E_{n−1}
                let f = &memo.forward;
                let k = n as usize;
                let next = &(&f[k - 3] - &f[k - 2].scale(self.delta(n - 2)))
                    + &f[k - 1].scale(self.delta(n - 3));
                memo.forward.push(next);
            }
        } else {
            while -(memo.backward.len() as i64) - 1 >= i {
                let n = -(memo.backward.len() as i64) - 1;
                // E_n = E_{n+3} + Δ_{n+1} E_{n+1} − Δ_n E_{n+2}
                let at = |m: i64| memo.get(m).expect("neighbours are memoised").clone();
                let next = &(&at(n + 3) + &at(n + 1).scale(self.delta(n + 1)))
                    - &at(n + 2).scale(self.delta(n));
                memo.backward.push(next);
            }
        }
        memo.get(i).expect("just extended").clone()
    }

    /// The class `Δ_{k−1}[E_{k−1}] − [E_{k−2}]` of `R_{E_{k−1}} E_{k−2}`,
    /// whose rank is the primed rank `r′_k`.
    pub fn intermediate_class(&self, k: i64) -> KClass {
        &self.class_at(k - 1).scale(self.delta(k - 1)) - &self.class_at(k - 2)
    }

    /// `dim Hom(E_i, E_j) = χ(E_i, E_j)` for `i < j`.
    pub fn hom_dim(&self, i: i64, j: i64) -> Result<BigInt> {
        if i >= j {
            return Err(HelixError::Domain(format!(
                "hom_dim needs i < j, got i = {i}, j = {j}"
            )));
        }
        Ok(euler_chi(&self.class_at(i), &self.class_at(j)))
    }

    /// Closed form `χ(E_{j′}, E_{i′}) + m·Δ_{i′−1}·Δ_{j′−1}` for
    /// `dim Hom(E_{j′}, E_{i′+3m})` on a Markov-type helix.
    pub fn hom_dim_markov(&self, jp: i64, ip: i64, m: i64) -> Result<BigInt> {
        if !(0..3).contains(&jp) || !(0..3).contains(&ip) {
            return Err(HelixError::Domain(format!(
                "residues must lie in 0..3, got j′ = {jp}, i′ = {ip}"
            )));
        }
        if m < 1 {
            return Err(HelixError::Domain(format!("m must be positive, got {m}")));
        }
        if jp >= ip + 3 * m {
            return Err(HelixError::Domain(format!(
                "need j′ < i′ + 3m, got j′ = {jp}, i′ = {ip}, m = {m}"
            )));
        }
        if !self.seed.is_markov_type() {
            return Err(HelixError::Domain(
                "closed-form Hom dimension needs a Markov-type seed".into(),
            ));
        }
        let base = euler_chi(self.seed.class(jp as usize), self.seed.class(ip as usize));
        Ok(base + big(m) * self.delta(ip - 1) * self.delta(jp - 1))
    }

    /// The three classes starting at index `i`, as degree and rank vectors.
    pub fn window(&self, i: i64) -> (Vec3, Vec3) {
        let cs = [self.class_at(i), self.class_at(i + 1), self.class_at(i + 2)];
        (
            Vec3(cs.clone().map(|c| c.degree)),
            Vec3(cs.map(|c| c.rank)),
        )
    }
}

/// `[E_i]` of the helix generated by `seed`.
pub fn class_at(seed: &Seed, i: i64) -> KClass {
    Helix::new(seed).class_at(i)
}

/// The primed class at index `k`; see [`Helix::intermediate_class`].
pub fn intermediate_class(seed: &Seed, k: i64) -> KClass {
    Helix::new(seed).intermediate_class(k)
}

pub fn hom_dim(seed: &Seed, i: i64, j: i64) -> Result<BigInt> {
    Helix::new(seed).hom_dim(i, j)
}

pub fn hom_dim_markov(seed: &Seed, jp: i64, ip: i64, m: i64) -> Result<BigInt> {
    Helix::new(seed).hom_dim_markov(jp, ip, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn equigen() -> Seed {
        Seed::from_i64([(-5, 2), (0, 1), (5, 2)])
    }

    fn lines() -> Seed {
        Seed::from_i64([(-3, 1), (0, 1), (3, 1)])
    }

    fn kc(d: i64, r: i64) -> KClass {
        KClass::new(d, r)
    }

    #[test]
    fn deltas_examples() {
        let d = deltas_from_seed(&equigen()).unwrap();
        assert_eq!(d, DeltaTriple::from_i64(5, 5, 5).unwrap());
        assert_eq!(d.delta02(), big(20));
        let d = deltas_from_seed(&lines()).unwrap();
        assert_eq!(d, DeltaTriple::from_i64(3, 3, 3).unwrap());
        assert_eq!(d.delta02(), big(6));
        let err = deltas_from_seed(&Seed::from_i64([(-1, 1), (0, 1), (1, 1)])).unwrap_err();
        assert_eq!(
            err,
            HelixError::NotHelixSeed {
                index: 3,
                value: "-1".into()
            }
        );
    }

    #[test]
    fn delta_indexing_is_three_periodic() {
        let d = DeltaTriple::from_i64(6, 3, 4).unwrap();
        assert_eq!(d.at(0), d.d3());
        assert_eq!(d.at(-1), d.d2());
        assert_eq!(d.at(-2), d.d1());
        assert_eq!(d.at(4), d.d1());
        assert_eq!(d.at(-300), d.d3());
    }

    #[test]
    fn mutation_matrix_examples() {
        let d = DeltaTriple::from_i64(3, 3, 3).unwrap();
        assert_eq!(
            mutation_matrix(&d, 1),
            Mat3::from_i64([[0, 1, 0], [0, 0, 1], [1, -3, 3]])
        );
        let d = DeltaTriple::from_i64(6, 3, 3).unwrap();
        assert_eq!(
            mutation_matrix(&d, 2),
            Mat3::from_i64([[0, 1, 0], [0, 0, 1], [1, -3, 6]])
        );
        for j in -4..5 {
            assert_eq!(mutation_matrix(&d, j).det(), big(1));
        }
    }

    #[test]
    fn global_matrix_example() {
        let d = DeltaTriple::from_i64(3, 3, 3).unwrap();
        let a = global_matrix(&d);
        assert_eq!(
            a,
            Mat3::from_i64([[1, -3, 3], [3, -8, 6], [6, -15, 10]])
        );
        assert_eq!(a.mul_vec(&d.delta_vec()), d.delta_vec());
    }

    #[test]
    fn class_at_examples() {
        let h = Helix::new(&equigen());
        assert_eq!(h.class_at(3), kc(20, 7));
        assert_eq!(h.class_at(4), kc(75, 26));
        assert_eq!(h.class_at(-1), kc(-20, 7));
        for i in 0..3 {
            assert_eq!(&h.class_at(i), equigen().class(i as usize));
        }
        assert_eq!(class_at(&lines(), 3), kc(6, 1));
        // lines: E_i = O(3i − 3)
        let h = Helix::new(&lines());
        for i in -20..20 {
            assert_eq!(h.class_at(i), kc(3 * i - 3, 1));
        }
    }

    #[test]
    fn backward_first_then_forward() {
        let h = Helix::new(&equigen());
        let far_back = h.class_at(-7);
        let fresh = Helix::new(&equigen());
        assert_eq!(fresh.class_at(-7), far_back);
        assert_eq!(h.class_at(9), fresh.class_at(9));
    }

    #[test]
    fn intermediate_examples() {
        assert_eq!(intermediate_class(&equigen(), 2), kc(5, 3));
        assert_eq!(intermediate_class(&equigen(), 1), kc(-5, 3));
        assert_eq!(intermediate_class(&lines(), 2), kc(3, 2));
    }

    #[test]
    fn hom_dim_examples() {
        assert_eq!(hom_dim(&equigen(), 1, 2).unwrap(), big(5));
        assert_eq!(hom_dim(&equigen(), 1, 3).unwrap(), big(20));
        assert_eq!(hom_dim(&equigen(), 1, 4).unwrap(), big(75));
        assert!(matches!(hom_dim(&equigen(), 2, 2), Err(HelixError::Domain(_))));
    }

    #[test]
    fn hom_dim_markov_examples() {
        assert_eq!(hom_dim_markov(&lines(), 0, 0, 1).unwrap(), big(9));
        assert_eq!(hom_dim_markov(&lines(), 0, 1, 1).unwrap(), big(12));
        let s = Seed::from_i64([(-6, 1), (0, 1), (3, 2)]);
        assert_eq!(hom_dim_markov(&s, 0, 0, 1).unwrap(), big(9));
        assert_eq!(hom_dim(&s, 0, 3).unwrap(), big(9));
        assert!(matches!(
            hom_dim_markov(&equigen(), 0, 0, 1),
            Err(HelixError::Domain(_))
        ));
    }

    #[test]
    fn seed_parsing_round_trip() {
        let s: Seed = "-5/2,0/1,5/2".parse().unwrap();
        assert_eq!(s, equigen());
        assert_eq!(s.to_string(), "(-5/2, 0/1, 5/2)");
        assert_eq!(s.to_string().parse::<Seed>().unwrap(), s);
        assert!("1/1,2/1".parse::<Seed>().is_err());
    }

    #[test]
    fn seed_validation() {
        assert!(Seed::new(kc(-5, 2), kc(0, 1), kc(5, 2)).is_ok());
        assert!(Seed::new(kc(-4, 2), kc(0, 1), kc(5, 2)).is_err());
        assert!(Seed::new(kc(0, 1), kc(-5, 2), kc(5, 2)).is_err());
        assert!(Seed::new(kc(-1, 1), kc(0, 1), kc(1, 1)).is_err());
        assert!(lines().is_markov_type());
        assert!(!equigen().is_markov_type());
    }
}

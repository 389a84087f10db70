//! Exact scalars: rationals, equivariant weights (linear forms in `w`, `z`)
//! and rational specializations of the torus parameters.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `p/q`, or `p` when `q = 1`.
pub fn fmt_rational(r: &Rational) -> String {
    r.to_string()
}

/// Integer power with negative exponents allowed (`r` must be nonzero then).
pub fn pow(r: &Rational, exp: i64) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp.unsigned_abs() {
        acc *= r;
    }
    if exp < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// The additive avatar of a torus character: `coeff_w * w + coeff_z * z`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    pub coeff_w: Rational,
    pub coeff_z: Rational,
}

impl Weight {
    pub fn new(coeff_w: Rational, coeff_z: Rational) -> Self {
        Weight { coeff_w, coeff_z }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        Weight::new(int(a), int(b))
    }

    pub fn zero() -> Self {
        Weight::from_ints(0, 0)
    }

    pub fn w() -> Self {
        Weight::from_ints(1, 0)
    }

    pub fn z() -> Self {
        Weight::from_ints(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeff_w.is_zero() && self.coeff_z.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Weight {
        Weight::new(&self.coeff_w * c, &self.coeff_z * c)
    }

    /// Exchange the roles of `w` and `z`.
    pub fn swapped(&self) -> Weight {
        Weight::new(self.coeff_z.clone(), self.coeff_w.clone())
    }

    pub fn evaluate(&self, spec: &Specialization) -> Rational {
        &self.coeff_w * &spec.w + &self.coeff_z * &spec.z
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        Weight::new(self.coeff_w + rhs.coeff_w, self.coeff_z + rhs.coeff_z)
    }
}

impl<'a> Add<&'a Weight> for &'a Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight::new(&self.coeff_w + &rhs.coeff_w, &self.coeff_z + &rhs.coeff_z)
    }
}

impl AddAssign<&Weight> for Weight {
    fn add_assign(&mut self, rhs: &Weight) {
        self.coeff_w += &rhs.coeff_w;
        self.coeff_z += &rhs.coeff_z;
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        Weight::new(self.coeff_w - rhs.coeff_w, self.coeff_z - rhs.coeff_z)
    }
}

impl<'a> Sub<&'a Weight> for &'a Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight::new(&self.coeff_w - &rhs.coeff_w, &self.coeff_z - &rhs.coeff_z)
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight::new(-self.coeff_w, -self.coeff_z)
    }
}

impl Mul<Weight> for i64 {
    type Output = Weight;
    fn mul(self, rhs: Weight) -> Weight {
        rhs.scale(&int(self))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (c, var) in [(&self.coeff_w, "w"), (&self.coeff_z, "z")] {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let a = c.abs();
            if !a.is_one() {
                out.push_str(&fmt_rational(&a));
                out.push('*');
            }
            out.push_str(var);
        }
        f.write_str(&out)
    }
}

/// A virtual torus representation: weights with signed multiplicities.
///
/// Equal weights are merged and zero multiplicities dropped, so two
/// characters are equal iff their maps are equal.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VirtualCharacter {
    terms: BTreeMap<Weight, i64>,
}

impl VirtualCharacter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_weights<I: IntoIterator<Item = Weight>>(weights: I) -> Self {
        let mut ch = Self::new();
        for w in weights {
            ch.add_term(w, 1);
        }
        ch
    }

    pub fn add_term(&mut self, weight: Weight, multiplicity: i64) {
        if multiplicity == 0 {
            return;
        }
        let entry = self.terms.entry(weight.clone()).or_insert(0);
        *entry += multiplicity;
        if *entry == 0 {
            self.terms.remove(&weight);
        }
    }

    pub fn extend(&mut self, other: &VirtualCharacter) {
        for (w, m) in &other.terms {
            self.add_term(w.clone(), *m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, i64)> {
        self.terms.iter().map(|(w, m)| (w, *m))
    }

    pub fn multiplicity(&self, weight: &Weight) -> i64 {
        self.terms.get(weight).copied().unwrap_or(0)
    }

    /// Sum of multiplicities.
    pub fn rank(&self) -> i64 {
        self.terms.values().sum()
    }

    /// The sub-multiset of nonzero weights.
    pub fn moving_part(&self) -> VirtualCharacter {
        VirtualCharacter {
            terms: self.terms.iter().filter(|(w, _)| !w.is_zero()).map(|(w, m)| (w.clone(), *m)).collect(),
        }
    }

    /// Multiplicity of the trivial character.
    pub fn fixed_rank(&self) -> i64 {
        self.multiplicity(&Weight::zero())
    }

    /// Equivariant Euler class of the moving part at `spec`.
    pub fn euler(&self, spec: &Specialization) -> Result<Rational> {
        let mut acc = Rational::one();
        for (w, m) in &self.terms {
            if w.is_zero() {
                continue;
            }
            let v = spec.nonzero(w)?;
            acc *= pow(&v, *m);
        }
        Ok(acc)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// A rational point `(w, z)` at which weights are evaluated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Specialization {
    pub w: Rational,
    pub z: Rational,
}

impl Specialization {
    pub fn new(w: Rational, z: Rational) -> Self {
        Specialization { w, z }
    }

    pub fn from_ints(w: i64, z: i64) -> Self {
        Specialization::new(int(w), int(z))
    }

    /// Evaluate `weight`, failing if it vanishes here.
    pub fn nonzero(&self, weight: &Weight) -> Result<Rational> {
        let v = weight.evaluate(self);
        if v.is_zero() {
            return Err(Error::DegenerateSpecialization {
                weight: weight.to_string(),
                w: fmt_rational(&self.w),
                z: fmt_rational(&self.z),
            });
        }
        Ok(v)
    }

    pub fn avoids(&self, forbidden: &[Weight]) -> bool {
        forbidden.iter().all(|f| !f.evaluate(self).is_zero())
    }

    pub fn scaled(&self, t: &Rational) -> Specialization {
        Specialization::new(&self.w * t, &self.z * t)
    }

    /// The point with `w` and `z` exchanged.
    pub fn swapped(&self) -> Specialization {
        Specialization::new(self.z.clone(), self.w.clone())
    }

    fn proportional_to(&self, other: &Specialization) -> bool {
        &self.w * &other.z == &self.z * &other.w
    }
}

impl fmt::Display for Specialization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(w={}, z={})", self.w, self.z)
    }
}

pub fn evaluate_weight(weight: &Weight, spec: &Specialization) -> Rational {
    weight.evaluate(spec)
}

const PRIMES: [i64; 25] =
    [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];

const MAX_ATTEMPTS: usize = 10_000;

fn draw(rng: &mut ChaCha8Rng) -> (Rational, Rational) {
    let mut nums = PRIMES.choose_multiple(rng, 2).copied();
    let (a, b) = (nums.next().unwrap(), nums.next().unwrap());
    let sa = if rng.gen_bool(0.5) { -1 } else { 1 };
    let sb = if rng.gen_bool(0.5) { -1 } else { 1 };
    let qa = rng.gen_range(1..=100);
    let qb = rng.gen_range(1..=100);
    (rat(sa * a, qa), rat(sb * b, qb))
}

/// Deterministic nondegenerate point for `forbidden`.
pub fn sample_specialization(seed: u64, forbidden: &[Weight]) -> Result<Specialization> {
    Ok(sample_specializations(seed, 1, forbidden)?.remove(0))
}

/// `count` pairwise non-proportional nondegenerate points drawn from one
/// seeded stream; the first equals [`sample_specialization`] for the same seed.
pub fn sample_specializations(seed: u64, count: usize, forbidden: &[Weight]) -> Result<Vec<Specialization>> {
    sample_with_limit(seed, count, forbidden, MAX_ATTEMPTS)
}

fn sample_with_limit(
    seed: u64,
    count: usize,
    forbidden: &[Weight],
    max_attempts: usize,
) -> Result<Vec<Specialization>> {
    if forbidden.iter().any(Weight::is_zero) {
        return Err(Error::ZeroForbiddenWeight);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Specialization> = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count {
        if attempts == max_attempts {
            return Err(Error::SamplingExhausted(max_attempts));
        }
        attempts += 1;
        let (w, z) = draw(&mut rng);
        let s = Specialization::new(w, z);
        if s.avoids(forbidden) && out.iter().all(|p| !p.proportional_to(&s)) {
            out.push(s);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn evaluate_examples() {
        let s = Specialization::from_ints(1, 3);
        assert_eq!(evaluate_weight(&Weight::from_ints(1, 1), &s), int(4));
        assert_eq!(evaluate_weight(&Weight::zero(), &s), int(0));
        // z_1 = -w + z
        assert_eq!(evaluate_weight(&Weight::from_ints(-1, 1), &s), int(2));
    }

    #[test]
    fn rational_formatting() {
        assert_eq!(fmt_rational(&rat(27, 2)), "27/2");
        assert_eq!(fmt_rational(&rat(-54, 2)), "-27");
        assert_eq!(fmt_rational(&rat(3, -6)), "-1/2");
    }

    #[test]
    fn weight_display() {
        assert_eq!(Weight::from_ints(2, -1).to_string(), "2*w-z");
        assert_eq!(Weight::from_ints(0, -1).to_string(), "-z");
        assert_eq!(Weight::new(rat(1, 2), int(0)).to_string(), "1/2*w");
        assert_eq!(Weight::zero().to_string(), "0");
    }

    #[test]
    fn character_merging() {
        let mut ch = VirtualCharacter::new();
        ch.add_term(Weight::w(), 2);
        ch.add_term(Weight::z(), 1);
        ch.add_term(Weight::w(), -2);
        ch.add_term(Weight::zero(), 1);
        assert_eq!(ch.multiplicity(&Weight::w()), 0);
        assert_eq!(ch.terms().count(), 2);
        assert_eq!(ch.moving_part().terms().count(), 1);
        assert_eq!(ch.fixed_rank(), 1);
        assert_eq!(ch.rank(), 2);
    }

    #[test]
    fn euler_with_negative_multiplicity() {
        let mut ch = VirtualCharacter::new();
        ch.add_term(Weight::w(), 2);
        ch.add_term(Weight::z(), -1);
        ch.add_term(Weight::zero(), 3);
        let s = Specialization::from_ints(3, 2);
        assert_eq!(ch.euler(&s).unwrap(), rat(9, 2));
        let bad = Specialization::from_ints(3, 0);
        assert!(ch.euler(&bad).is_err());
    }

    #[test]
    fn sampling_is_deterministic_and_avoids() {
        let forbidden = vec![Weight::w(), Weight::z(), Weight::from_ints(1, -1), Weight::from_ints(1, 1)];
        let a = sample_specialization(0, &forbidden).unwrap();
        let b = sample_specialization(0, &forbidden).unwrap();
        assert_eq!(a, b);
        assert!(a.avoids(&forbidden));
        let pts = sample_specializations(7, 5, &forbidden).unwrap();
        assert_eq!(pts.len(), 5);
        for (k, p) in pts.iter().enumerate() {
            assert!(p.avoids(&forbidden));
            for q in &pts[..k] {
                assert!(!p.proportional_to(q));
            }
        }
        assert_eq!(pts[0], sample_specialization(7, &forbidden).unwrap());
    }

    #[test]
    fn sampling_rejects_zero_weight() {
        assert!(matches!(sample_specialization(0, &[Weight::zero()]), Err(Error::ZeroForbiddenWeight)));
    }

    #[test]
    fn sampling_reports_exhaustion() {
        let forbidden = vec![Weight::w()];
        assert!(matches!(sample_with_limit(1, 3, &forbidden, 0), Err(Error::SamplingExhausted(0))));
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..30).prop_map(|(n, d)| rat(n, d))
    }

    fn weight() -> impl Strategy<Value = Weight> {
        (small_rat(), small_rat()).prop_map(|(a, b)| Weight::new(a, b))
    }

    proptest! {
        #[test]
        fn evaluation_is_additive(u in weight(), v in weight(), w in small_rat(), z in small_rat()) {
            let s = Specialization::new(w, z);
            prop_assert_eq!((&u + &v).evaluate(&s), u.evaluate(&s) + v.evaluate(&s));
        }

        #[test]
        fn field_axioms(a in small_rat(), b in small_rat(), c in small_rat()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            if !a.is_zero() {
                prop_assert_eq!(&a * a.recip(), Rational::one());
            }
        }

        #[test]
        fn sampled_points_avoid_forbidden(seed in 0u64..200, ws in proptest::collection::vec(weight(), 1..12)) {
            let ws: Vec<Weight> = ws.into_iter().filter(|w| !w.is_zero()).collect();
            let s = sample_specialization(seed, &ws).unwrap();
            prop_assert!(s.avoids(&ws));
        }
    }
}

//! Exact arithmetic in ℚ and in real quadratic fields ℚ(√d).
//!
//! A [`FieldElement`] is `a + b√d` with rational `a`, `b` and an optional
//! squarefree radicand `d ≥ 2`. The radicand is carried even when `b = 0`,
//! so that a rational value still knows which field it lives in; this is
//! what makes `2` a square in ℚ(√2) but not in ℚ(√3). Equality ignores the
//! radicand whenever `b = 0`.
//!
//! The real embedding always takes `√d > 0`.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Builds `n / d` from machine integers. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer square root of a non-negative big integer, if exact.
pub fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    if &s * &s == *n {
        Some(s)
    } else {
        None
    }
}

/// Square root of a rational, if it is the square of a rational.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    let n = exact_isqrt(r.numer())?;
    let d = exact_isqrt(r.denom())?;
    Some(Rational::new(n, d))
}

/// Splits `n ≥ 1` as `n = s² · f` with `f` squarefree. Returns `(s, f)`.
pub fn square_free_part(mut n: u64) -> (u64, u64) {
    debug_assert!(n >= 1);
    let mut square = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            square *= p;
        }
        if e % 2 == 1 {
            free *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (square, free * n)
}

/// Squarefree integer `d ≥ 2`, the radicand of ℚ(√d).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Radicand(u64);

impl Radicand {
    pub fn new(d: u64) -> Result<Self, Error> {
        if d < 2 || square_free_part(d).0 != 1 {
            return Err(Error::InvalidRadicand(d));
        }
        Ok(Radicand(d))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    fn big(self) -> BigInt {
        BigInt::from(self.0)
    }
}

impl fmt::Display for Radicand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Joins the fields of two operands. `None` is ℚ and embeds in everything.
///
/// Panics on two different radicands: arithmetic between ℚ(√2) and ℚ(√3)
/// leaves the supported fields, and callers validate inputs up front.
pub fn join_fields(x: Option<Radicand>, y: Option<Radicand>) -> Option<Radicand> {
    match (x, y) {
        (None, d) | (d, None) => d,
        (Some(p), Some(q)) if p == q => Some(p),
        (Some(p), Some(q)) => panic!("mixed quadratic fields ℚ(√{p}) and ℚ(√{q})"),
    }
}

/// Like [`join_fields`] but reports the mismatch instead of panicking.
pub fn try_join_fields(x: Option<Radicand>, y: Option<Radicand>) -> Result<Option<Radicand>, Error> {
    match (x, y) {
        (Some(p), Some(q)) if p != q => Err(Error::MixedFields(p.get(), q.get())),
        _ => Ok(join_fields(x, y)),
    }
}

/// A closed rational interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }
}

/// Exact element `a + b√d` of ℚ or ℚ(√d).
#[derive(Clone, Debug)]
pub struct FieldElement {
    a: Rational,
    b: Rational,
    d: Option<Radicand>,
}

impl FieldElement {
    pub fn new(a: Rational, b: Rational, d: Option<Radicand>) -> Self {
        assert!(d.is_some() || b.is_zero(), "irrational part without a radicand");
        FieldElement { a, b, d }
    }

    pub fn rational(a: Rational) -> Self {
        FieldElement {
            a,
            b: Rational::zero(),
            d: None,
        }
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    /// `√d` itself.
    pub fn sqrt_radicand(d: Radicand) -> Self {
        FieldElement {
            a: Rational::zero(),
            b: Rational::one(),
            d: Some(d),
        }
    }

    /// Same value, tagged as an element of ℚ(√d).
    pub fn in_field(mut self, d: Option<Radicand>) -> Self {
        self.d = join_fields(self.d, d);
        self
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> Option<Radicand> {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    fn d_big(&self) -> BigInt {
        self.d.map(Radicand::big).unwrap_or_else(BigInt::zero)
    }

    /// Galois conjugate `a − b√d`.
    pub fn conjugate(&self) -> Self {
        FieldElement {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d,
        }
    }

    /// Norm `a² − d b²` down to ℚ.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * self.d_big()
    }

    pub fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(FieldElement {
            a: &self.a / &n,
            b: -&self.b / &n,
            d: self.d,
        })
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Self {
        self.checked_inv().expect("inverse of zero")
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = FieldElement::one().in_field(self.d);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Sign of the real value under `√d > 0`, decided exactly.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // opposite signs: the larger of a² and d b² wins
        let a2 = &self.a * &self.a;
        let db2 = &self.b * &self.b * self.d_big();
        if a2 > db2 {
            sa
        } else {
            sb
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    /// Compares real values.
    pub fn real_cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }

    /// Rational interval of width at most `2^-bits` containing the value.
    pub fn real_value(&self, bits: u32) -> Interval {
        let Some(d) = self.d.filter(|_| !self.b.is_zero()) else {
            return Interval {
                lo: self.a.clone(),
                hi: self.a.clone(),
            };
        };
        // |b| < 2^(numerator bits − denominator bits + 1)
        let b_log = self.b.numer().bits() as i64 - self.b.denom().bits() as i64 + 1;
        let k = (i64::from(bits) + b_log.max(0)) as usize;
        let scale = BigInt::one() << k;
        let s = (d.big() << (2 * k)).sqrt();
        let lo_root = Rational::new(s.clone(), scale.clone());
        let hi_root = Rational::new(s + 1, scale);
        let x = &self.a + &self.b * &lo_root;
        let y = &self.a + &self.b * &hi_root;
        if x <= y {
            Interval { lo: x, hi: y }
        } else {
            Interval { lo: y, hi: x }
        }
    }

    /// Whether the element is a square in its own field.
    pub fn is_square(&self) -> bool {
        self.square_root_candidate().is_some()
    }

    /// Square root with non-negative real value, or `None` if the element is
    /// not a square in its field.
    pub fn sqrt(&self) -> Option<Self> {
        let s = self.square_root_candidate()?;
        Some(if s.signum() == Ordering::Less { -s } else { s })
    }

    // Solves (p + q√d)² = a + b√d, i.e. p² + d q² = a and 2pq = b.
    // Eliminating p gives d q⁴ − a q² + b²/4 = 0, so
    // q² = (a ± r) / 2d with r² = a² − d b².
    fn square_root_candidate(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let Some(d) = self.d else {
            return rational_sqrt(&self.a).map(FieldElement::rational);
        };
        let r = rational_sqrt(&self.norm())?;
        let two_d = Rational::from_integer(d.big() * 2);
        for t in [(&self.a + &r) / &two_d, (&self.a - &r) / &two_d] {
            if t.is_negative() {
                continue;
            }
            if t.is_zero() {
                // q = 0 forces b = 0 and p² = a
                if self.b.is_zero() {
                    if let Some(p) = rational_sqrt(&self.a) {
                        return Some(FieldElement {
                            a: p,
                            b: Rational::zero(),
                            d: Some(d),
                        });
                    }
                }
                continue;
            }
            if let Some(q) = rational_sqrt(&t) {
                let p = &self.b / (&q * BigInt::from(2));
                let s = FieldElement { a: p, b: q, d: Some(d) };
                debug_assert_eq!(&(&s * &s), self);
                return Some(s);
            }
        }
        None
    }

    /// Common-denominator form `(A + B√d) / D` with integers and `D > 0`.
    pub fn integer_form(&self) -> (BigInt, BigInt, BigInt) {
        let den = self.a.denom().lcm(self.b.denom());
        let a = self.a.numer() * (&den / self.a.denom());
        let b = self.b.numer() * (&den / self.b.denom());
        (a, b, den)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.d == other.d)
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
        if !self.b.is_zero() {
            self.d.hash(state);
        }
    }
}

impl From<Rational> for FieldElement {
    fn from(r: Rational) -> Self {
        FieldElement::rational(r)
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        FieldElement::integer(n)
    }
}

impl From<BigInt> for FieldElement {
    fn from(n: BigInt) -> Self {
        FieldElement::rational(Rational::from_integer(n))
    }
}

/// Exact textual form. Rationals print as `p` or `p/q`; irrational values
/// print as `A+B*sqrt(d)` or `(A+B*sqrt(d))/D` over a common denominator.
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = match self.d {
            Some(d) if !self.b.is_zero() => d,
            _ => return write!(f, "{}", self.a),
        };
        let (a, b, den) = self.integer_form();
        let sign = if b.sign() == Sign::Minus { '-' } else { '+' };
        let body = alloc::format!("{}{}{}*sqrt({})", a, sign, b.abs(), d);
        if den.is_one() {
            f.write_str(&body)
        } else {
            write!(f, "({})/{}", body, den)
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            a: -&self.a,
            b: -&self.b,
            d: self.d,
        }
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        FieldElement {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            d: join_fields(self.d, rhs.d),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        FieldElement {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            d: join_fields(self.d, rhs.d),
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        let d = join_fields(self.d, rhs.d);
        let dd = d.map(Radicand::big).unwrap_or_else(BigInt::zero);
        let a = &self.a * &rhs.a + &self.b * &rhs.b * dd;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        FieldElement { a, b, d }
    }
}

impl Div for &FieldElement {
    type Output = FieldElement;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &FieldElement) -> FieldElement {
        let d = join_fields(self.d, rhs.d);
        (self * &rhs.inv()).in_field(d)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
        impl $tr<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

/// Sum of `coeffs[i] · x^i` by Horner's rule.
pub fn horner(coeffs: &[FieldElement], x: &FieldElement) -> FieldElement {
    let mut acc = FieldElement::zero().in_field(x.radicand());
    for c in coeffs.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// Field of a list of elements, if they agree.
pub fn common_field<'a, I>(items: I) -> Result<Option<Radicand>, Error>
where
    I: IntoIterator<Item = &'a FieldElement>,
{
    items
        .into_iter()
        .try_fold(None, |acc, e| try_join_fields(acc, e.radicand()))
}

/// Positive rational divisors helper: all positive divisors of `n > 0`
/// by trial division. Used for rational-root search.
pub(crate) fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            primes.push((p.clone(), e));
        }
        p += 1;
    }
    if n > BigInt::one() {
        primes.push((n, 1));
    }
    let mut out = alloc::vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        out = next;
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q5() -> Option<Radicand> {
        Some(Radicand::new(5).unwrap())
    }

    fn el(a: Rational, b: Rational, d: u64) -> FieldElement {
        FieldElement::new(a, b, Some(Radicand::new(d).unwrap()))
    }

    #[test]
    fn radicand_rejects_non_squarefree() {
        assert!(Radicand::new(8).is_err());
        assert!(Radicand::new(1).is_err());
        assert!(Radicand::new(0).is_err());
        assert_eq!(Radicand::new(30).unwrap().get(), 30);
        assert_eq!(square_free_part(72), (6, 2));
    }

    #[test]
    fn squares_in_q() {
        assert!(FieldElement::integer(169).is_square());
        assert_eq!(FieldElement::integer(289).sqrt(), Some(FieldElement::integer(17)));
        assert!(!FieldElement::integer(2).is_square());
        assert!(!FieldElement::integer(-4).is_square());
        assert_eq!(
            FieldElement::rational(rat(9, 49)).sqrt(),
            Some(FieldElement::rational(rat(3, 7)))
        );
    }

    #[test]
    fn golden_ratio_conjugate_is_square() {
        // (3 − √5)/2 = ((√5 − 1)/2)²
        let e = el(rat(3, 2), rat(-1, 2), 5);
        assert!(e.is_square());
        assert_eq!(e.sqrt(), Some(el(rat(-1, 2), rat(1, 2), 5)));
    }

    #[test]
    fn two_minus_sqrt3_is_not_square() {
        assert!(!el(rat(2, 1), rat(-1, 1), 3).is_square());
    }

    #[test]
    fn rational_squareness_depends_on_field() {
        let two_in_q3 = FieldElement::integer(2).in_field(Some(Radicand::new(3).unwrap()));
        assert_eq!(two_in_q3.sqrt(), None);
        let two_in_q2 = FieldElement::integer(2).in_field(Some(Radicand::new(2).unwrap()));
        assert_eq!(two_in_q2.sqrt(), Some(el(rat(0, 1), rat(1, 1), 2)));
        // −2 is never a square in a real field
        assert!(!FieldElement::integer(-2)
            .in_field(Some(Radicand::new(2).unwrap()))
            .is_square());
    }

    #[test]
    fn rational_elements_compare_equal_across_tags() {
        let a = FieldElement::integer(3);
        let b = FieldElement::integer(3).in_field(q5());
        assert_eq!(a, b);
    }

    #[test]
    fn signum_of_mixed_sign_elements() {
        assert_eq!(el(rat(3, 1), rat(-1, 1), 5).signum(), Ordering::Greater);
        assert_eq!(el(rat(2, 1), rat(-1, 1), 5).signum(), Ordering::Less);
        assert_eq!(el(rat(-1, 2), rat(1, 2), 5).signum(), Ordering::Greater);
    }

    #[test]
    fn real_value_of_rational_is_exact() {
        let iv = FieldElement::rational(rat(1, 2)).real_value(10);
        assert_eq!(iv.lo, rat(1, 2));
        assert_eq!(iv.hi, rat(1, 2));
    }

    #[test]
    fn real_value_brackets_cos_pi_over_5() {
        let e = el(rat(1, 4), rat(1, 4), 5);
        let iv = e.real_value(20);
        assert!(iv.width() <= Rational::new(BigInt::one(), BigInt::one() << 20));
        // 0.8090169943749474...
        assert!(iv.contains(&Rational::new(
            BigInt::from(80901699437u64),
            BigInt::from(100000000000u64)
        )));
    }

    #[test]
    fn real_value_brackets_minus_sqrt2_over_2() {
        let e = el(rat(0, 1), rat(-1, 2), 2);
        let iv = e.real_value(20);
        assert!(iv.width() <= Rational::new(BigInt::one(), BigInt::one() << 20));
        assert!(iv.contains(&Rational::new(
            BigInt::from(-70710678118i64),
            BigInt::from(100000000000u64)
        )));
    }

    #[test]
    fn display_forms() {
        assert_eq!(alloc::format!("{}", el(rat(-1, 2), rat(1, 2), 5)), "(-1+1*sqrt(5))/2");
        assert_eq!(alloc::format!("{}", el(rat(1, 1), rat(-3, 1), 2)), "1-3*sqrt(2)");
        assert_eq!(alloc::format!("{}", FieldElement::rational(rat(-7, 3))), "-7/3");
    }

    #[test]
    fn divisors_of_twelve() {
        let ds: Vec<i64> = divisors(&BigInt::from(12))
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect();
        assert_eq!(ds, alloc::vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn inverse_and_pow() {
        let x = el(rat(1, 3), rat(2, 5), 7);
        assert_eq!(&x * &x.inv(), FieldElement::one());
        assert_eq!(x.pow(3), &(&x * &x) * &x);
        assert_eq!(FieldElement::zero().checked_inv(), None);
    }
}

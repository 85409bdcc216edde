//! The quartic `Y² = X⁴ − 2(φ₁+φ₂)X³ + (4φ₁φ₂+2)X² − 2(φ₁+φ₂)X + 1`.
//!
//! Multiplying the two cosine-law equations
//! `x² − 2φ₁xy + y² = z_α²` and `x² − 2φ₂xy + y² = z_β²` and dividing by
//! `y⁴` gives this curve in `X = x/y`, `Y = z_α z_β / y²`.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;

use crate::error::Error;
use crate::field::{common_field, horner, rat, FieldElement, Radicand, Rational};

/// Angles with exactly known cosines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedAngle {
    PiOver2,
    PiOver3,
    PiOver4,
    PiOver5,
    PiOver6,
    TwoPiOver5,
    TwoPiOver3,
    FourPiOver5,
}

impl NamedAngle {
    pub const ALL: [NamedAngle; 8] = [
        NamedAngle::PiOver2,
        NamedAngle::PiOver3,
        NamedAngle::PiOver4,
        NamedAngle::PiOver5,
        NamedAngle::PiOver6,
        NamedAngle::TwoPiOver5,
        NamedAngle::TwoPiOver3,
        NamedAngle::FourPiOver5,
    ];

    /// The angle as `k·π/n`, returned as `(k, n)`.
    pub fn fraction_of_pi(self) -> (u32, u32) {
        match self {
            NamedAngle::PiOver2 => (1, 2),
            NamedAngle::PiOver3 => (1, 3),
            NamedAngle::PiOver4 => (1, 4),
            NamedAngle::PiOver5 => (1, 5),
            NamedAngle::PiOver6 => (1, 6),
            NamedAngle::TwoPiOver5 => (2, 5),
            NamedAngle::TwoPiOver3 => (2, 3),
            NamedAngle::FourPiOver5 => (4, 5),
        }
    }

    pub fn from_fraction_of_pi(k: u32, n: u32) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.fraction_of_pi() == (k, n))
    }

    /// Exact cosine.
    pub fn cosine(self) -> FieldElement {
        let q = |n, d| FieldElement::rational(rat(n, d));
        let quad = |a: (i64, i64), b: (i64, i64), d: u64| {
            FieldElement::new(rat(a.0, a.1), rat(b.0, b.1), Some(Radicand::new(d).unwrap()))
        };
        match self {
            NamedAngle::PiOver2 => q(0, 1),
            NamedAngle::PiOver3 => q(1, 2),
            NamedAngle::TwoPiOver3 => q(-1, 2),
            NamedAngle::PiOver4 => quad((0, 1), (1, 2), 2),
            NamedAngle::PiOver6 => quad((0, 1), (1, 2), 3),
            NamedAngle::PiOver5 => quad((1, 4), (1, 4), 5),
            NamedAngle::TwoPiOver5 => quad((-1, 4), (1, 4), 5),
            NamedAngle::FourPiOver5 => quad((-1, 4), (-1, 4), 5),
        }
    }
}

/// Cosines `(φ₁, φ₂)` of the two angles opposite the non-integral sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnglePair {
    phi1: FieldElement,
    phi2: FieldElement,
    field: Option<Radicand>,
}

impl AnglePair {
    pub fn new(phi1: FieldElement, phi2: FieldElement) -> Result<Self, Error> {
        let field = common_field([&phi1, &phi2])?;
        let one = FieldElement::one();
        for phi in [&phi1, &phi2] {
            if (&one - phi).signum() != Ordering::Greater || (&one + phi).signum() != Ordering::Greater {
                return Err(Error::InvalidPair("cosine must lie strictly between -1 and 1"));
            }
        }
        if phi1 == phi2 {
            return Err(Error::InvalidPair("the two cosines must differ"));
        }
        Ok(AnglePair {
            phi1: phi1.in_field(field),
            phi2: phi2.in_field(field),
            field,
        })
    }

    pub fn from_angles(alpha: NamedAngle, beta: NamedAngle) -> Result<Self, Error> {
        Self::new(alpha.cosine(), beta.cosine())
    }

    pub fn phi1(&self) -> &FieldElement {
        &self.phi1
    }

    pub fn phi2(&self) -> &FieldElement {
        &self.phi2
    }

    /// `None` for ℚ, otherwise the radicand of ℚ(√d).
    pub fn field(&self) -> Option<Radicand> {
        self.field
    }

    /// Cosines of `(π − α, π − β)`, with the field preserved.
    pub fn supplement(&self) -> AnglePair {
        AnglePair {
            phi1: -&self.phi1,
            phi2: -&self.phi2,
            field: self.field,
        }
    }
}

/// Cosine pair of the supplementary angles.
pub fn supplement_pair(pair: &AnglePair) -> AnglePair {
    pair.supplement()
}

/// `Y² = c4X⁴ + c3X³ + c2X² + c1X + c0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticCurve {
    // ascending: coeffs[i] multiplies X^i
    coeffs: [FieldElement; 5],
    field: Option<Radicand>,
}

impl QuarticCurve {
    /// Coefficients from `c4` down to `c0`.
    pub fn descending(&self) -> [FieldElement; 5] {
        let mut out = self.coeffs.clone();
        out.reverse();
        out
    }

    /// Coefficient of `X^i`.
    pub fn coeff(&self, i: usize) -> &FieldElement {
        &self.coeffs[i]
    }

    pub fn field(&self) -> Option<Radicand> {
        self.field
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        horner(&self.coeffs, &x.clone().in_field(self.field))
    }

    pub fn eval_rational(&self, x: &Rational) -> FieldElement {
        self.eval(&FieldElement::rational(x.clone()))
    }

    pub fn contains(&self, x: &FieldElement, y: &FieldElement) -> bool {
        y * y == self.eval(x)
    }
}

/// Builds the quartic of `pair`; rejects pairs whose quartic has a repeated
/// root.
pub fn build_quartic(pair: &AnglePair) -> Result<QuarticCurve, Error> {
    let f = pair.field();
    let one = FieldElement::one().in_field(f);
    let sum = &pair.phi1 + &pair.phi2;
    let lin = &sum * &FieldElement::integer(-2);
    let quad = &(&pair.phi1 * &pair.phi2) * &FieldElement::integer(4) + FieldElement::integer(2);
    let coeffs = [one.clone(), lin.clone(), quad, lin, one];
    if has_repeated_root(&coeffs) {
        return Err(Error::SingularCurve);
    }
    Ok(QuarticCurve { coeffs, field: f })
}

/// Evaluates the quartic of `pair` at `x`.
pub fn eval_quartic(curve: &QuarticCurve, x: &FieldElement) -> FieldElement {
    curve.eval(x)
}

/// `(x² − 2φ₁xy + y², x² − 2φ₂xy + y²)`.
pub fn cosine_law_values(pair: &AnglePair, x: &BigInt, y: &BigInt) -> (FieldElement, FieldElement) {
    let f = pair.field();
    let sq = FieldElement::from(x * x + y * y).in_field(f);
    let two_xy = FieldElement::from(x * y * 2);
    (&sq - &(&two_xy * &pair.phi1), &sq - &(&two_xy * &pair.phi2))
}

fn trim(p: &mut Vec<FieldElement>) {
    while p.last().is_some_and(FieldElement::is_zero) {
        p.pop();
    }
}

fn poly_rem(mut a: Vec<FieldElement>, b: &[FieldElement]) -> Vec<FieldElement> {
    trim(&mut a);
    let lead_inv = b.last().expect("nonzero divisor").inv();
    while a.len() >= b.len() {
        let shift = a.len() - b.len();
        let factor = a.last().unwrap() * &lead_inv;
        for (i, c) in b.iter().enumerate() {
            a[shift + i] = &a[shift + i] - &(&factor * c);
        }
        a.pop();
        trim(&mut a);
    }
    a
}

/// True iff `gcd(F, F')` has positive degree.
fn has_repeated_root(coeffs: &[FieldElement]) -> bool {
    let mut a: Vec<FieldElement> = coeffs.to_vec();
    trim(&mut a);
    let mut b: Vec<FieldElement> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * &FieldElement::integer(i as i64))
        .collect();
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(a, &b);
        a = b;
        b = r;
    }
    a.len() > 1
}

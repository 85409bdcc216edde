//! Long Weierstrass curves `v² + a1uv + a3v = u³ + a2u² + a4u + a6` over ℚ or
//! ℚ(√d), the chord-tangent group law, and the birational map from a
//! palindromic-type quartic `Y² = X⁴ + c3X³ + c2X² + c1X + 1`.
//!
//! # The quartic map
//!
//! Write the quartic as `(X² + pX)² + kX² + c1X + 1` with `p = c3/2` and
//! `k = c2 − p²`, and put `Y = X² + pX + w`. Rational points then satisfy
//!
//! ```text
//! (2w − k)X² + (2wp − c1)X + (w² − 1) = 0,
//! ```
//!
//! whose discriminant must be a square `z²`. With `u = −2w`, `v = z` this is
//!
//! ```text
//! v² = u³ + c2u² + (c1c3 − 4)u + (c1² − 4c2 + c3²),
//! ```
//!
//! and `v = 2(2w − k)X + (2wp − c1)` picks the root `X`. Inverting, `X` is
//! recovered from `(u, v)` by solving the (linear in `X`) relation above.
//! The point `(0, 1)` lands on `(−2, c3 − c1)`. The two points at infinity
//! of the quartic correspond to the identity and to `(−k, −(kp − c1))`;
//! those are the map's exceptional points.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::curvegen::QuarticCurve;
use crate::error::Error;
use crate::field::{common_field, divisors, horner, join_fields, FieldElement, Radicand, Rational};

fn fe(n: i64) -> FieldElement {
    FieldElement::integer(n)
}

/// A point in affine coordinates, or the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[allow(clippy::large_enum_variant)]
pub enum EcPoint {
    Infinity,
    Affine(FieldElement, FieldElement),
}

impl EcPoint {
    pub fn affine(u: FieldElement, v: FieldElement) -> Self {
        EcPoint::Affine(u, v)
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, EcPoint::Infinity)
    }

    pub fn coords(&self) -> Option<(&FieldElement, &FieldElement)> {
        match self {
            EcPoint::Infinity => None,
            EcPoint::Affine(u, v) => Some((u, v)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassCurve {
    a1: FieldElement,
    a2: FieldElement,
    a3: FieldElement,
    a4: FieldElement,
    a6: FieldElement,
    field: Option<Radicand>,
}

impl WeierstrassCurve {
    pub fn new(
        a1: FieldElement,
        a2: FieldElement,
        a3: FieldElement,
        a4: FieldElement,
        a6: FieldElement,
    ) -> Result<Self, Error> {
        let field = common_field([&a1, &a2, &a3, &a4, &a6])?;
        let curve = WeierstrassCurve {
            a1: a1.in_field(field),
            a2: a2.in_field(field),
            a3: a3.in_field(field),
            a4: a4.in_field(field),
            a6: a6.in_field(field),
            field,
        };
        if curve.discriminant().is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(curve)
    }

    /// `v² = u³ + a2u² + a4u + a6`.
    pub fn reduced(a2: FieldElement, a4: FieldElement, a6: FieldElement) -> Result<Self, Error> {
        Self::new(fe(0), a2, fe(0), a4, a6)
    }

    /// `[a1, a2, a3, a4, a6]`.
    pub fn coefficients(&self) -> [&FieldElement; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    pub fn field(&self) -> Option<Radicand> {
        self.field
    }

    pub fn b2(&self) -> FieldElement {
        &self.a1 * &self.a1 + &self.a2 * &fe(4)
    }

    pub fn b4(&self) -> FieldElement {
        &self.a4 * &fe(2) + &self.a1 * &self.a3
    }

    pub fn b6(&self) -> FieldElement {
        &self.a3 * &self.a3 + &self.a6 * &fe(4)
    }

    pub fn b8(&self) -> FieldElement {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        &(&(a1 * a1) * a6) + &(&(a2 * a6) * &fe(4)) - &(&(a1 * a3) * a4) + &(&(a2 * a3) * a3) - (a4 * a4)
    }

    pub fn c4(&self) -> FieldElement {
        let b2 = self.b2();
        &b2 * &b2 - &self.b4() * &fe(24)
    }

    pub fn discriminant(&self) -> FieldElement {
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        let t1 = -(&(&b2 * &b2) * &b8);
        let t2 = &(&(&b4 * &b4) * &b4) * &fe(8);
        let t3 = &(&b6 * &b6) * &fe(27);
        let t4 = &(&(&b2 * &b4) * &b6) * &fe(9);
        &(&(t1 - t2) - &t3) + &t4
    }

    /// `j = c4³ / Δ`.
    pub fn j_invariant(&self) -> FieldElement {
        let c4 = self.c4();
        &(&(&c4 * &c4) * &c4) / &self.discriminant()
    }

    /// The curve obtained by `(u, v) ↦ (λ²u, λ³v)`, i.e. `a_i ↦ λ^i a_i`.
    pub fn scaled(&self, lambda: &FieldElement) -> Self {
        let l = |i| lambda.pow(i);
        WeierstrassCurve {
            a1: &self.a1 * &l(1),
            a2: &self.a2 * &l(2),
            a3: &self.a3 * &l(3),
            a4: &self.a4 * &l(4),
            a6: &self.a6 * &l(6),
            field: join_fields(self.field, lambda.radicand()),
        }
    }

    pub fn is_on_curve(&self, p: &EcPoint) -> bool {
        match p {
            EcPoint::Infinity => true,
            EcPoint::Affine(u, v) => {
                let lhs = &(v * v) + &(&(&self.a1 * u) * v) + &(&self.a3 * v);
                let rhs = horner(&[self.a6.clone(), self.a4.clone(), self.a2.clone(), fe(1)], u);
                lhs == rhs
            }
        }
    }

    fn check(&self, p: &EcPoint) -> Result<(), Error> {
        if self.is_on_curve(p) {
            Ok(())
        } else {
            Err(Error::PointNotOnCurve)
        }
    }

    pub fn neg(&self, p: &EcPoint) -> EcPoint {
        match p {
            EcPoint::Infinity => EcPoint::Infinity,
            EcPoint::Affine(u, v) => {
                let v2 = &(&(-v) - &(&self.a1 * u)) - &self.a3;
                EcPoint::Affine(u.clone(), v2)
            }
        }
    }

    /// Group sum by the chord-tangent rule.
    pub fn add(&self, p: &EcPoint, q: &EcPoint) -> Result<EcPoint, Error> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.add_unchecked(p, q))
    }

    fn add_unchecked(&self, p: &EcPoint, q: &EcPoint) -> EcPoint {
        let (u1, v1, u2, v2) = match (p, q) {
            (EcPoint::Infinity, _) => return q.clone(),
            (_, EcPoint::Infinity) => return p.clone(),
            (EcPoint::Affine(u1, v1), EcPoint::Affine(u2, v2)) => (u1, v1, u2, v2),
        };
        let (lambda, nu) = if u1 == u2 {
            if (&(v1 + v2) + &(&self.a1 * u2)) + &self.a3 == fe(0) {
                return EcPoint::Infinity;
            }
            let denom = &(&(v1 * &fe(2)) + &(&self.a1 * u1)) + &self.a3;
            let u1sq = u1 * u1;
            let num = &(&(&(&u1sq * &fe(3)) + &(&(&self.a2 * u1) * &fe(2))) + &self.a4) - &(&self.a1 * v1);
            let num_nu = &(&(&(-&(&u1sq * u1)) + &(&self.a4 * u1)) + &(&self.a6 * &fe(2))) - &(&self.a3 * v1);
            (&num / &denom, &num_nu / &denom)
        } else {
            let du = u2 - u1;
            ((v2 - v1) / &du, (&(v1 * u2) - &(v2 * u1)) / &du)
        };
        let u3 = &(&(&(&lambda * &lambda) + &(&self.a1 * &lambda)) - &self.a2) - &(u1 + u2);
        let v3 = &(&(-&(&(&lambda + &self.a1) * &u3)) - &nu) - &self.a3;
        EcPoint::Affine(u3, v3)
    }

    /// `n·P` by double-and-add.
    pub fn mul(&self, n: i64, p: &EcPoint) -> Result<EcPoint, Error> {
        self.check(p)?;
        let mut base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = EcPoint::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.add_unchecked(&base, &base);
            }
        }
        Ok(acc)
    }

    /// Affine points of order two whose coordinates lie in the curve's
    /// field. Roots of `4u³ + b2u² + 2b4u + b6` are found exactly: rational
    /// candidates from divisors of the norm polynomial, then the remaining
    /// quadratic factor by a square root in the field.
    pub fn two_torsion(&self) -> Vec<EcPoint> {
        let f = self.field;
        let cubic = vec![self.b6(), &self.b4() * &fe(2), self.b2(), fe(4).in_field(f)];
        let mut roots = field_roots(&cubic, f);
        roots.sort_by(|a, b| a.real_cmp(b));
        roots.dedup();
        roots
            .into_iter()
            .map(|u| {
                let v = -(&(&self.a1 * &u) + &self.a3) / fe(2);
                EcPoint::Affine(u, v)
            })
            .collect()
    }
}

/// Group sum on `w`.
pub fn ec_add(w: &WeierstrassCurve, p: &EcPoint, q: &EcPoint) -> Result<EcPoint, Error> {
    w.add(p, q)
}

/// `n·P` on `w`.
pub fn ec_mul(w: &WeierstrassCurve, n: i64, p: &EcPoint) -> Result<EcPoint, Error> {
    w.mul(n, p)
}

pub fn is_on_curve(w: &WeierstrassCurve, p: &EcPoint) -> bool {
    w.is_on_curve(p)
}

pub fn j_invariant(w: &WeierstrassCurve) -> FieldElement {
    w.j_invariant()
}

// Rational numbers from the integer coefficients of `poly`, cleared of
// denominators.
fn integer_coeffs(poly: &[Rational]) -> Vec<BigInt> {
    let lcm = poly.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    poly.iter().map(|c| c.numer() * (&lcm / c.denom())).collect()
}

fn rational_roots(poly: &[Rational]) -> Vec<Rational> {
    let mut ints = integer_coeffs(poly);
    while ints.last().is_some_and(Zero::is_zero) {
        ints.pop();
    }
    let mut roots = Vec::new();
    if ints.len() < 2 {
        return roots;
    }
    let low = ints.iter().position(|c| !c.is_zero()).unwrap();
    if low > 0 {
        roots.push(Rational::zero());
        ints.drain(..low);
    }
    if ints.len() < 2 {
        return roots;
    }
    let lead = ints.last().unwrap().clone();
    let eval = |r: &Rational| {
        ints.iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * r + Rational::from_integer(c.clone()))
    };
    for p in divisors(&ints[0]) {
        for q in divisors(&lead) {
            for s in [p.clone(), -p.clone()] {
                let r = Rational::new(s, q.clone());
                if eval(&r).is_zero() && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
    }
    roots
}

fn deflate(poly: &[FieldElement], root: &FieldElement) -> Vec<FieldElement> {
    // synthetic division, ascending coefficients
    let n = poly.len() - 1;
    let mut out = vec![FieldElement::zero(); n];
    let mut carry = FieldElement::zero();
    for i in (0..n).rev() {
        carry = &poly[i + 1] + &(&carry * root);
        out[i] = carry.clone();
    }
    out
}

/// All roots in ℚ(√d) of a polynomial (ascending coefficients) of degree at
/// most three, found without approximation.
pub(crate) fn field_roots(poly: &[FieldElement], field: Option<Radicand>) -> Vec<FieldElement> {
    let mut poly: Vec<FieldElement> = poly.iter().map(|c| c.clone().in_field(field)).collect();
    while poly.last().is_some_and(FieldElement::is_zero) {
        poly.pop();
    }
    let mut roots = Vec::new();
    // rational candidates from the norm polynomial N = f · f̄ ∈ ℚ[u]
    let norm_poly: Vec<Rational> = {
        let conj: Vec<FieldElement> = poly.iter().map(FieldElement::conjugate).collect();
        let mut prod = vec![FieldElement::zero(); poly.len() + conj.len() - 1];
        for (i, a) in poly.iter().enumerate() {
            for (j, b) in conj.iter().enumerate() {
                prod[i + j] = &prod[i + j] + &(a * b);
            }
        }
        prod.iter().map(|c| c.rational_part().clone()).collect()
    };
    for r in rational_roots(&norm_poly) {
        let x = FieldElement::rational(r).in_field(field);
        while poly.len() > 1 && horner(&poly, &x).is_zero() {
            poly = deflate(&poly, &x);
            if !roots.contains(&x) {
                roots.push(x.clone());
            }
        }
    }
    match poly.len() {
        2 => roots.push(-&poly[0] / &poly[1]),
        3 => {
            let (c, b, a) = (&poly[0], &poly[1], &poly[2]);
            let disc = &(b * b) - &(&(a * c) * &fe(4));
            if let Some(s) = disc.in_field(field).sqrt() {
                let two_a = a * &fe(2);
                roots.push(&(&(-b) + &s) / &two_a);
                roots.push(&(&(-b) - &s) / &two_a);
            }
        }
        _ => {}
    }
    roots
}

/// Explicit correspondence between a quartic `Y² = X⁴ + c3X³ + c2X² + c1X + 1`
/// and its Weierstrass model (see the module docs).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BirationalMap {
    // p = c3/2, k = c2 − p²
    p: FieldElement,
    k: FieldElement,
    c1: FieldElement,
    field: Option<Radicand>,
    base_image: EcPoint,
    exceptional: Vec<EcPoint>,
}

impl BirationalMap {
    /// Image of the quartic point `(0, 1)`.
    pub fn base_image(&self) -> &EcPoint {
        &self.base_image
    }

    /// Curve points with no affine preimage; they correspond to the two
    /// points at infinity of the quartic.
    pub fn exceptional_points(&self) -> &[EcPoint] {
        &self.exceptional
    }

    fn linear_coeff(&self, w: &FieldElement) -> FieldElement {
        &(&(w * &self.p) * &fe(2)) - &self.c1
    }

    /// Quartic point `(X, Y)` to curve point. Defined for every affine point.
    pub fn forward(&self, x: &FieldElement, y: &FieldElement) -> EcPoint {
        let w = &(y - &(x * x)) - &(&self.p * x);
        let u = (&w * &fe(-2)).in_field(self.field);
        let a = &(&w * &fe(2)) - &self.k;
        let v = (&(&(&a * x) * &fe(2)) + &self.linear_coeff(&w)).in_field(self.field);
        EcPoint::Affine(u, v)
    }

    /// Curve point to quartic point, or `None` at the exceptional points.
    pub fn inverse(&self, pt: &EcPoint) -> Option<(FieldElement, FieldElement)> {
        let (u, v) = pt.coords()?;
        let w = u / &fe(-2);
        let a = &(&w * &fe(2)) - &self.k;
        let b = self.linear_coeff(&w);
        let x = if !a.is_zero() {
            (v - &b) / (&a * &fe(2))
        } else if v == &b && !b.is_zero() {
            let c = &(&w * &w) - &fe(1);
            -(&c / &b)
        } else {
            return None;
        };
        let y = &(&(&x * &x) + &(&self.p * &x)) + &w;
        Some((x.in_field(self.field), y.in_field(self.field)))
    }
}

/// Weierstrass model of a quartic with `c4 = c0 = 1`, with the explicit
/// birational map described in the module docs.
pub fn quartic_to_weierstrass(c: &QuarticCurve) -> Result<(WeierstrassCurve, BirationalMap), Error> {
    if c.coeff(4) != &fe(1) || c.coeff(0) != &fe(1) {
        return Err(Error::SingularCurve);
    }
    let f = c.field();
    let (c1, c2, c3) = (c.coeff(1).clone(), c.coeff(2).clone(), c.coeff(3).clone());
    let a2 = c2.clone();
    let a4 = &(&c1 * &c3) - &fe(4);
    let a6 = &(&(&c1 * &c1) - &(&c2 * &fe(4))) + &(&c3 * &c3);
    let curve = WeierstrassCurve::reduced(a2, a4, a6)?;
    let p = &c3 / &fe(2);
    let k = &c2 - &(&p * &p);
    let mut map = BirationalMap {
        p,
        k: k.clone(),
        c1,
        field: f,
        base_image: EcPoint::Infinity,
        exceptional: Vec::new(),
    };
    let b_at = map.linear_coeff(&(&k / &fe(2)));
    map.exceptional = vec![
        EcPoint::Infinity,
        EcPoint::Affine((-&k).in_field(f), (-b_at).in_field(f)),
    ];
    map.base_image = map.forward(&fe(0).in_field(f), &fe(1).in_field(f));
    debug_assert!(map.exceptional.iter().all(|e| curve.is_on_curve(e)));
    Ok((curve, map))
}

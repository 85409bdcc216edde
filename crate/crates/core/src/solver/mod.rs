//! Triangle pairs from curve points, brute-force search, generation of
//! further solutions through the group law, and the single-angle conic.
//!
//! A rational `X = p/q` in lowest terms stands for `(x, y) = (|p|, q)`. A
//! negative `X` flips the sign of both `−2φᵢxy` terms at once, so it is read
//! as a solution for the supplementary angles `(π − α, π − β)`.

pub mod kernel;

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::curvegen::{build_quartic, cosine_law_values, AnglePair};
use crate::elliptic::{quartic_to_weierstrass, EcPoint};
use crate::error::Error;
use crate::field::{try_join_fields, FieldElement, Rational};
use kernel::{gcd_u64, PairKernel, Verdict};

/// Two triangles with common integral sides `x`, `y` and third sides
/// `z_alpha`, `z_beta` opposite the two angles of the pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TrianglePair {
    pub x: BigInt,
    pub y: BigInt,
    pub z_alpha: FieldElement,
    pub z_beta: FieldElement,
    /// The angles are `(π − α, π − β)` rather than `(α, β)`.
    pub supplementary: bool,
    pub primitive: bool,
}

impl TrianglePair {
    /// Same triangles with the two integral sides ordered `x ≤ y`.
    pub fn normalized(mut self) -> Self {
        if self.x > self.y {
            core::mem::swap(&mut self.x, &mut self.y);
        }
        self
    }

    /// The pair scaled by a positive integer `t`.
    pub fn scaled(&self, t: u64) -> Self {
        let tf = FieldElement::from(BigInt::from(t));
        TrianglePair {
            x: &self.x * t,
            y: &self.y * t,
            z_alpha: &self.z_alpha * &tf,
            z_beta: &self.z_beta * &tf,
            supplementary: self.supplementary,
            primitive: t == 1 && self.primitive,
        }
    }

    /// `±x/y`, the quartic abscissa of this pair.
    pub fn abscissa(&self) -> Rational {
        let x = BigRational::new(self.x.clone(), self.y.clone());
        if self.supplementary {
            -x
        } else {
            x
        }
    }

    fn sort_key(&self) -> (BigInt, BigInt, bool) {
        (
            self.x.clone().max(self.y.clone()),
            self.x.clone().min(self.y.clone()),
            self.supplementary,
        )
    }
}

/// Why a rational abscissa does not yield a triangle pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rejection {
    /// `X = 0`, i.e. `xy = 0`.
    Degenerate,
    /// At least one cosine-law value is not a square in the field.
    NotASolution,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::Degenerate => f.write_str("degenerate abscissa (xy = 0)"),
            Rejection::NotASolution => f.write_str("a cosine-law value is not a square in the field"),
        }
    }
}

/// Converts a quartic abscissa `X` into a triangle pair.
pub fn pullback(pair: &AnglePair, x: &Rational) -> Result<TrianglePair, Rejection> {
    if x.is_zero() {
        return Err(Rejection::Degenerate);
    }
    let supplementary = x.is_negative();
    let (px, py) = (x.numer().abs(), x.denom().clone());
    let oriented = if supplementary { pair.supplement() } else { pair.clone() };
    let (qa, qb) = cosine_law_values(&oriented, &px, &py);
    let za = qa.sqrt().ok_or(Rejection::NotASolution)?;
    let zb = qb.sqrt().ok_or(Rejection::NotASolution)?;
    Ok(TrianglePair {
        x: px,
        y: py,
        z_alpha: za,
        z_beta: zb,
        supplementary,
        primitive: true,
    })
}

/// Rechecks both law-of-cosines identities, positivity and the primitivity
/// flag from scratch.
pub fn verify_triangle(pair: &AnglePair, t: &TrianglePair) -> bool {
    if !t.x.is_positive() || !t.y.is_positive() {
        return false;
    }
    if try_join_fields(pair.field(), t.z_alpha.radicand()).is_err()
        || try_join_fields(pair.field(), t.z_beta.radicand()).is_err()
    {
        return false;
    }
    if !t.z_alpha.is_positive() || !t.z_beta.is_positive() {
        return false;
    }
    if t.primitive != t.x.gcd(&t.y).is_one() {
        return false;
    }
    let sign = if t.supplementary { -2 } else { 2 };
    let xy = FieldElement::from(&t.x * &t.y * sign);
    let sides = FieldElement::from(&t.x * &t.x + &t.y * &t.y);
    let law = |phi: &FieldElement, z: &FieldElement| &(z * z) + &(&xy * phi) == sides;
    law(pair.phi1(), &t.z_alpha) && law(pair.phi2(), &t.z_beta)
}

/// Result of a bounded exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub pair: AnglePair,
    pub bound: u64,
    /// Primitive solutions with `x ≤ y`, ordered by `y`, then `x`, then
    /// orientation.
    pub solutions: Vec<TrianglePair>,
    /// Number of `(x, y)` with `1 ≤ x ≤ y ≤ bound` examined.
    pub scanned: u64,
}

/// Partial scan over the rows `y ∈ ys`, suitable for splitting a search
/// across workers. Results of disjoint row sets merge with [`merge_reports`].
pub fn search_rows<I>(pair: &AnglePair, kernel: &PairKernel, ys: I) -> (Vec<TrianglePair>, u64)
where
    I: IntoIterator<Item = u64>,
{
    let mut found = Vec::new();
    let mut scanned = 0u64;
    for y in ys {
        scanned += y;
        for x in 1..=y {
            for supplementary in [false, true] {
                let hit = match kernel.test(x, y, supplementary) {
                    Verdict::NotSquare => continue,
                    Verdict::Square => gcd_u64(x, y) == 1,
                    Verdict::Unknown => gcd_u64(x, y) == 1,
                };
                if !hit {
                    continue;
                }
                let xr = Rational::new(BigInt::from(x), BigInt::from(y));
                let xr = if supplementary { -xr } else { xr };
                if let Ok(t) = pullback(pair, &xr) {
                    found.push(t);
                }
            }
        }
    }
    (found, scanned)
}

/// Sorts and combines partial results into a report.
pub fn merge_reports<I>(pair: &AnglePair, bound: u64, parts: I) -> SearchReport
where
    I: IntoIterator<Item = (Vec<TrianglePair>, u64)>,
{
    let mut solutions = Vec::new();
    let mut scanned = 0;
    for (found, n) in parts {
        solutions.extend(found);
        scanned += n;
    }
    solutions.sort_by(|a, b| (&a.y, &a.x, a.supplementary).cmp(&(&b.y, &b.x, b.supplementary)));
    solutions.dedup();
    SearchReport {
        pair: pair.clone(),
        bound,
        solutions,
        scanned,
    }
}

/// All primitive solutions with `1 ≤ x ≤ y ≤ bound`, in both orientations.
pub fn brute_force_search(pair: &AnglePair, bound: u64) -> Result<SearchReport, Error> {
    if bound < 1 {
        return Err(Error::InvalidBound);
    }
    let kernel = PairKernel::new(pair);
    let part = search_rows(
        pair,
        &kernel,
        Range {
            start: 1,
            end: bound + 1,
        },
    );
    Ok(merge_reports(pair, bound, [part]))
}

/// Walks the group generated by the seed's curve point and the 2-torsion,
/// mapping each `nP + T` with `|n| ≤ count` back to the quartic and keeping
/// rational abscissae that give triangle pairs. Over a quadratic field this
/// is an enumerator only; it makes no completeness claim.
pub fn generate_solutions(pair: &AnglePair, seed: &Rational, count: u32) -> Result<Vec<TrianglePair>, Error> {
    let seed_pair = pullback(pair, seed).map_err(Error::SeedRejected)?;
    let quartic = build_quartic(pair)?;
    let (curve, map) = quartic_to_weierstrass(&quartic)?;
    let y_sq = FieldElement::from(&seed_pair.y * &seed_pair.y);
    let seed_y = &(&seed_pair.z_alpha * &seed_pair.z_beta) / &y_sq;
    let seed_x = FieldElement::rational(seed.clone()).in_field(pair.field());
    debug_assert!(quartic.contains(&seed_x, &seed_y));
    let p = map.forward(&seed_x, &seed_y);

    let mut torsion = alloc::vec![EcPoint::Infinity];
    torsion.extend(curve.two_torsion());

    let mut multiples = Vec::with_capacity(2 * count as usize + 1);
    let mut acc = EcPoint::Infinity;
    multiples.push(acc.clone());
    for _ in 0..count {
        acc = curve.add(&acc, &p)?;
        multiples.push(curve.neg(&acc));
        multiples.push(acc.clone());
    }

    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for m in &multiples {
        for t in &torsion {
            let q = curve.add(m, t)?;
            let Some((x, _)) = map.inverse(&q) else { continue };
            let Some(x) = x.as_rational() else { continue };
            let Ok(sol) = pullback(pair, x) else { continue };
            let sol = sol.normalized();
            if seen.insert((sol.x.clone(), sol.y.clone(), sol.supplementary)) {
                out.push(sol);
            }
        }
    }
    out.sort_by_key(TrianglePair::sort_key);
    Ok(out)
}

/// Integer triple `(x, y, z)` with `x² − 2φxy + y² = z²`, `gcd = 1`, `z > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerTriangle {
    pub x: BigInt,
    pub y: BigInt,
    pub z: BigInt,
}

impl IntegerTriangle {
    /// Both legs positive, i.e. an actual triangle containing the angle.
    pub fn is_triangle(&self) -> bool {
        self.x.is_positive() && self.y.is_positive()
    }
}

/// A rational point on `u² − 2φuv + v² = 1` and its integer triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicPoint {
    pub u: Rational,
    pub v: Rational,
    pub triangle: IntegerTriangle,
}

impl ConicPoint {
    pub fn is_degenerate(&self) -> bool {
        !self.triangle.is_triangle()
    }
}

/// Second intersection of the conic `u² − 2φuv + v² = 1` with the line
/// through `(1, 0)` of parameter `t`:
/// `u = (t² − 1)/D`, `v = 2t(φt − 1)/D`, `D = t² − 2φt + 1`.
pub fn parametrize_single_angle(phi: &Rational, t: &Rational) -> Result<ConicPoint, Error> {
    if phi.abs() >= Rational::one() {
        return Err(Error::InvalidPair("cosine must lie strictly between -1 and 1"));
    }
    let one = Rational::one();
    let two = Rational::from_integer(BigInt::from(2));
    let t2 = t * t;
    let denom = &t2 - &two * phi * t + &one;
    if denom.is_zero() {
        return Err(Error::DegenerateParameter);
    }
    let u = (&t2 - &one) / &denom;
    let v = &two * t * (phi * t - &one) / &denom;

    let l = u.denom().lcm(v.denom());
    let mut x = u.numer() * (&l / u.denom());
    let mut y = v.numer() * (&l / v.denom());
    let g = x.gcd(&y).gcd(&l);
    x /= &g;
    y /= &g;
    let z = &l / &g;
    if !x.is_positive() && !y.is_positive() {
        x = -x;
        y = -y;
    }
    Ok(ConicPoint {
        u,
        v,
        triangle: IntegerTriangle { x, y, z },
    })
}

//! Machine-integer squareness tests for the brute-force scan.
//!
//! Each cosine is written `φ = (a + b√d)/m` with integers and `m > 0`. For a
//! candidate `(x, y)` the cosine-law value scaled by `m²` is
//! `m·(m(x² + y²) − 2σa·xy − 2σb·xy·√d)`, where `σ = ±1` is the orientation,
//! and squareness is decided on that integer form. Residue masks reject most
//! candidates before any square root is taken. Arithmetic is checked; on
//! overflow the kernel reports "unknown" and the caller falls back to exact
//! big-number arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::curvegen::AnglePair;
use crate::field::FieldElement;

const fn residue_mask<const M: usize>() -> [bool; M] {
    let mut mask = [false; M];
    let mut i = 0;
    while i < M {
        mask[(i * i) % M] = true;
        i += 1;
    }
    mask
}

static SQ64: [bool; 64] = residue_mask::<64>();
static SQ63: [bool; 63] = residue_mask::<63>();
static SQ65: [bool; 65] = residue_mask::<65>();
static SQ11: [bool; 11] = residue_mask::<11>();

/// Exact perfect-square test, filtered by quadratic-residue masks.
#[inline]
pub fn is_perfect_square(n: u128) -> bool {
    if !SQ64[(n & 63) as usize] {
        return false;
    }
    // one reduction serves both 63 and 65 and 11 via 45045 = 63·65·11
    let r = (n % 45045) as usize;
    if !SQ63[r % 63] || !SQ65[r % 65] || !SQ11[r % 11] {
        return false;
    }
    let s = n.isqrt();
    s * s == n
}

fn signed_square(n: i128) -> Option<bool> {
    if n < 0 {
        Some(false)
    } else {
        Some(is_perfect_square(n as u128))
    }
}

/// Whether `a + b√d` is a square in ℚ(√d) (or in ℚ when `d` is absent),
/// for integers `a`, `b`. `None` on overflow.
pub fn is_square_integral(a: i128, b: i128, d: Option<u64>) -> Option<bool> {
    if b == 0 {
        if a < 0 {
            return Some(false);
        }
        if is_perfect_square(a as u128) {
            return Some(true);
        }
        return match d {
            None => Some(false),
            Some(d) => signed_square(a.checked_mul(d as i128)?),
        };
    }
    let d = d? as i128;
    let norm = a.checked_mul(a)?.checked_sub(b.checked_mul(b)?.checked_mul(d)?)?;
    if norm < 0 {
        return Some(false);
    }
    if !is_perfect_square(norm as u128) {
        return Some(false);
    }
    let r = (norm as u128).isqrt() as i128;
    for t in [a.checked_add(r)?, a.checked_sub(r)?] {
        if t > 0 && signed_square(t.checked_mul(2 * d)?)? {
            return Some(true);
        }
    }
    Some(false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct ScaledCosine {
    a: i128,
    b: i128,
    m: i128,
}

impl ScaledCosine {
    fn new(phi: &FieldElement) -> Option<Self> {
        let (a, b, m) = phi.integer_form();
        Some(ScaledCosine {
            a: to_i128(&a)?,
            b: to_i128(&b)?,
            m: to_i128(&m)?,
        })
    }

    /// Squareness of `x² + y² − 2σφxy` given `s = x² + y²`, `p = xy`.
    #[inline]
    fn test(&self, s: i128, p: i128, sigma: i128, d: Option<u64>) -> Option<bool> {
        let two_p = p.checked_mul(2 * sigma)?;
        let a = self.m.checked_mul(s)?.checked_sub(two_p.checked_mul(self.a)?)?;
        let b = -two_p.checked_mul(self.b)?;
        is_square_integral(a.checked_mul(self.m)?, b.checked_mul(self.m)?, d)
    }
}

fn to_i128(n: &BigInt) -> Option<i128> {
    n.to_i128()
}

/// Outcome of testing one `(x, y)` in one orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Square,
    NotSquare,
    /// Overflowed the integer path; decide exactly.
    Unknown,
}

/// Precomputed integer data for an angle pair.
#[derive(Clone, Debug)]
pub struct PairKernel {
    phi: Option<[ScaledCosine; 2]>,
    d: Option<u64>,
}

impl PairKernel {
    pub fn new(pair: &AnglePair) -> Self {
        let phi = ScaledCosine::new(pair.phi1())
            .zip(ScaledCosine::new(pair.phi2()))
            .map(|(p, q)| [p, q]);
        PairKernel {
            phi,
            d: pair.field().map(|r| r.get()),
        }
    }

    /// Whether both cosine-law values at `(x, y)` are squares, with the
    /// supplementary orientation when `supplementary` is set.
    #[inline]
    pub fn test(&self, x: u64, y: u64, supplementary: bool) -> Verdict {
        let Some(phi) = &self.phi else {
            return Verdict::Unknown;
        };
        let sigma = if supplementary { -1 } else { 1 };
        let (x, y) = (x as i128, y as i128);
        let Some((s, p)) = x
            .checked_mul(x)
            .zip(y.checked_mul(y))
            .and_then(|(a, b)| a.checked_add(b))
            .zip(x.checked_mul(y))
        else {
            return Verdict::Unknown;
        };
        let mut all = true;
        for c in phi {
            match c.test(s, p, sigma, self.d) {
                Some(true) => {}
                Some(false) => return Verdict::NotSquare,
                None => all = false,
            }
        }
        if all {
            Verdict::Square
        } else {
            Verdict::Unknown
        }
    }
}

pub(crate) fn gcd_u64(x: u64, y: u64) -> u64 {
    x.gcd(&y)
}

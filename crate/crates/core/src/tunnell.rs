//! Tunnell's necessary condition for congruent numbers.
//!
//! For squarefree odd `n`, a congruent `n` has as many representations
//! `n = 2x² + y² + 8z²` as twice the number of `n = 2x² + y² + 32z²`. For
//! even `n` the same holds for `n/2 = 4x² + y² + 8z²` against
//! `n/2 = 4x² + y² + 32z²`. Counts are over all of ℤ³, signs included.

use core::fmt;

use crate::error::Error;
use crate::field::square_free_part;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParityCase {
    Odd,
    Even,
}

impl fmt::Display for ParityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParityCase::Odd => "odd",
            ParityCase::Even => "even",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TunnellVerdict {
    pub n: u64,
    pub parity_case: ParityCase,
    pub count_small: u64,
    pub count_large: u64,
    pub passes: bool,
}

impl TunnellVerdict {
    /// Passing is necessary for congruence, not sufficient.
    pub fn verdict_text(&self) -> &'static str {
        if self.passes {
            "passes: consistent with congruent"
        } else {
            "fails: not congruent"
        }
    }
}

/// Number of `(x, y, z) ∈ ℤ³` with `m = a·x² + y² + c·z²`.
pub fn count_representations(m: u64, a: u64, c: u64) -> u64 {
    assert!(a >= 1 && c >= 1, "form coefficients must be positive");
    let x_max = (m / a).isqrt();
    let z_max = (m / c).isqrt();
    let mut count = 0;
    for x in 0..=x_max {
        let rx = m - a * x * x;
        let wx = if x == 0 { 1 } else { 2 };
        for z in 0..=z_max {
            let cz = c * z * z;
            if cz > rx {
                break;
            }
            let rest = rx - cz;
            let s = rest.isqrt();
            if s * s == rest {
                let wy = if s == 0 { 1 } else { 2 };
                let wz = if z == 0 { 1 } else { 2 };
                count += wx * wy * wz;
            }
        }
    }
    count
}

/// Applies the odd or even case of the criterion to squarefree `n ≥ 1`.
pub fn tunnell_test(n: u64) -> Result<TunnellVerdict, Error> {
    if n == 0 || square_free_part(n).0 != 1 {
        return Err(Error::NotSquarefree(n));
    }
    let (parity_case, m, a) = if n % 2 == 1 {
        (ParityCase::Odd, n, 2)
    } else {
        (ParityCase::Even, n / 2, 4)
    };
    let count_small = count_representations(m, a, 8);
    let count_large = count_representations(m, a, 32);
    Ok(TunnellVerdict {
        n,
        parity_case,
        count_small,
        count_large,
        passes: count_small == 2 * count_large,
    })
}

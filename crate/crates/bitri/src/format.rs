//! JSON documents and CSV tables.
//!
//! Every number that may be irrational or large is written as an exact
//! string in the grammar accepted by [`crate::expr::parse_cosine`], e.g.
//! `"(-1+1*sqrt(5))/2"`. Decimal approximations appear only under an
//! `approx` key, and only when asked for. The exact strings never contain a
//! comma, so CSV fields need no quoting.

use std::fmt::Write as _;

use bitri_core::{
    AnglePair, ConicPoint, EcPoint, FieldElement, QuarticCurve, Rational, SearchReport, TrianglePair, TunnellVerdict,
    WeierstrassCurve,
};
use num_traits::Signed;
use serde::Serialize;

/// Truncated decimal expansion of `r` with `digits` fractional digits.
pub fn decimal(r: &Rational, digits: usize) -> String {
    let mut out = String::new();
    if r.is_negative() {
        out.push('-');
    }
    let num = r.numer().abs();
    let den = r.denom();
    let (int, mut rem) = (&num / den, &num % den);
    write!(out, "{int}").unwrap();
    if digits > 0 {
        out.push('.');
        for _ in 0..digits {
            rem *= 10;
            let d = &rem / den;
            rem -= &d * den;
            write!(out, "{d}").unwrap();
        }
    }
    out
}

/// Decimal string for the real value, accurate to about `bits` bits.
pub fn approx(e: &FieldElement, bits: u32) -> String {
    let digits = (f64::from(bits) * std::f64::consts::LOG10_2).floor() as usize;
    decimal(&e.real_value(bits + 4).midpoint(), digits)
}

fn exact(e: &FieldElement) -> String {
    e.to_string()
}

#[derive(Debug, Serialize)]
pub struct ApproxPair {
    pub phi1: String,
    pub phi2: String,
}

#[derive(Debug, Serialize)]
pub struct PairDoc {
    pub phi1: String,
    pub phi2: String,
    pub field_d: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approx: Option<ApproxPair>,
}

impl PairDoc {
    pub fn new(pair: &AnglePair, approx_bits: Option<u32>) -> Self {
        PairDoc {
            phi1: exact(pair.phi1()),
            phi2: exact(pair.phi2()),
            field_d: pair.field().map(|d| d.get()),
            approx: approx_bits.map(|b| ApproxPair {
                phi1: approx(pair.phi1(), b),
                phi2: approx(pair.phi2(), b),
            }),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ApproxSides {
    pub z_alpha: String,
    pub z_beta: String,
}

#[derive(Debug, Serialize)]
pub struct SolutionDoc {
    pub x: String,
    pub y: String,
    pub z_alpha: String,
    pub z_beta: String,
    pub supplementary: bool,
    pub primitive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approx: Option<ApproxSides>,
}

impl SolutionDoc {
    pub fn new(t: &TrianglePair, approx_bits: Option<u32>) -> Self {
        SolutionDoc {
            x: t.x.to_string(),
            y: t.y.to_string(),
            z_alpha: exact(&t.z_alpha),
            z_beta: exact(&t.z_beta),
            supplementary: t.supplementary,
            primitive: t.primitive,
            approx: approx_bits.map(|b| ApproxSides {
                z_alpha: approx(&t.z_alpha, b),
                z_beta: approx(&t.z_beta, b),
            }),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct WeierstrassDoc {
    pub a1: String,
    pub a2: String,
    pub a3: String,
    pub a4: String,
    pub a6: String,
    pub j: String,
}

impl WeierstrassDoc {
    pub fn new(w: &WeierstrassCurve) -> Self {
        let [a1, a2, a3, a4, a6] = w.coefficients().map(exact);
        WeierstrassDoc {
            a1,
            a2,
            a3,
            a4,
            a6,
            j: exact(&w.j_invariant()),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PointDoc {
    pub u: String,
    pub v: String,
}

impl PointDoc {
    /// `None` for the point at infinity.
    pub fn new(p: &EcPoint) -> Option<Self> {
        p.coords().map(|(u, v)| PointDoc {
            u: exact(u),
            v: exact(v),
        })
    }
}

#[derive(Debug, Serialize)]
pub struct CurveDoc {
    pub pair: PairDoc,
    pub quartic: [String; 5],
    pub weierstrass: WeierstrassDoc,
    pub base_image: Option<PointDoc>,
}

impl CurveDoc {
    pub fn new(
        pair: &AnglePair,
        quartic: &QuarticCurve,
        w: &WeierstrassCurve,
        base: &EcPoint,
        bits: Option<u32>,
    ) -> Self {
        CurveDoc {
            pair: PairDoc::new(pair, bits),
            quartic: quartic.descending().map(|c| exact(&c)),
            weierstrass: WeierstrassDoc::new(w),
            base_image: PointDoc::new(base),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ReportDoc {
    pub bound: u64,
    pub scanned: u64,
}

#[derive(Debug, Serialize)]
pub struct SearchDoc {
    pub pair: PairDoc,
    pub solutions: Vec<SolutionDoc>,
    pub report: ReportDoc,
}

impl SearchDoc {
    pub fn new(r: &SearchReport, bits: Option<u32>) -> Self {
        SearchDoc {
            pair: PairDoc::new(&r.pair, bits),
            solutions: r.solutions.iter().map(|t| SolutionDoc::new(t, bits)).collect(),
            report: ReportDoc {
                bound: r.bound,
                scanned: r.scanned,
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GenerateDoc {
    pub pair: PairDoc,
    pub seed_x: String,
    pub count: u32,
    pub solutions: Vec<SolutionDoc>,
}

#[derive(Debug, Serialize)]
pub struct VerifyDoc {
    pub pair: PairDoc,
    pub solution: SolutionDoc,
    pub valid: bool,
}

#[derive(Debug, Serialize)]
pub struct VerdictDoc {
    pub n: u64,
    pub case: String,
    pub count_small: u64,
    pub count_large: u64,
    pub passes: bool,
    pub verdict: &'static str,
}

impl VerdictDoc {
    pub fn new(v: &TunnellVerdict) -> Self {
        VerdictDoc {
            n: v.n,
            case: v.parity_case.to_string(),
            count_small: v.count_small,
            count_large: v.count_large,
            passes: v.passes,
            verdict: v.verdict_text(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TunnellDoc {
    pub verdicts: Vec<VerdictDoc>,
}

#[derive(Debug, Serialize)]
pub struct TriangleDoc {
    pub x: String,
    pub y: String,
    pub z: String,
}

#[derive(Debug, Serialize)]
pub struct ParametrizeDoc {
    pub cos: String,
    pub t: String,
    pub u: String,
    pub v: String,
    pub triangle: TriangleDoc,
    pub degenerate: bool,
}

impl ParametrizeDoc {
    pub fn new(cos: &Rational, t: &Rational, c: &ConicPoint) -> Self {
        ParametrizeDoc {
            cos: cos.to_string(),
            t: t.to_string(),
            u: c.u.to_string(),
            v: c.v.to_string(),
            triangle: TriangleDoc {
                x: c.triangle.x.to_string(),
                y: c.triangle.y.to_string(),
                z: c.triangle.z.to_string(),
            },
            degenerate: c.is_degenerate(),
        }
    }
}

pub const SOLUTION_CSV_HEADER: &str = "x,y,z_alpha,z_beta,supplementary,primitive";
pub const TUNNELL_CSV_HEADER: &str = "n,case,count_small,count_large,passes";

pub fn solutions_csv(solutions: &[TrianglePair]) -> String {
    let mut out = String::from(SOLUTION_CSV_HEADER);
    out.push('\n');
    for t in solutions {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            t.x, t.y, t.z_alpha, t.z_beta, t.supplementary, t.primitive
        )
        .unwrap();
    }
    out
}

pub fn tunnell_csv(verdicts: &[TunnellVerdict]) -> String {
    let mut out = String::from(TUNNELL_CSV_HEADER);
    out.push('\n');
    for v in verdicts {
        writeln!(
            out,
            "{},{},{},{},{}",
            v.n, v.parity_case, v.count_small, v.count_large, v.passes
        )
        .unwrap();
    }
    out
}

//! Exact cosine expressions.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := ('+' | '-') unary | primary
//! primary := integer | 'sqrt' '(' integer ')' | angle | '(' expr ')'
//! angle   := [integer] 'pi' '/' integer       // cosine of k·π/n
//! ```
//!
//! Named angles resolve through [`NamedAngle`] to their exact cosines, so
//! `pi/2` is `0` and `pi/5` is `(1+sqrt(5))/4`. An expression may use at most
//! one squarefree radicand.

use std::fmt;

use bitri_core::field::{square_free_part, try_join_fields};
use bitri_core::{FieldElement, NamedAngle, Radicand};
use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprError {
    Parse {
        position: usize,
        expected: Vec<&'static str>,
    },
    /// Two different radicands in one expression.
    MixedRadicals(u64, u64),
    DivisionByZero {
        position: usize,
    },
    UnknownAngle {
        position: usize,
        k: u32,
        n: u32,
    },
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprError::Parse { position, expected } => {
                write!(
                    f,
                    "parse error at offset {position}: expected {}",
                    expected.join(" or ")
                )
            }
            ExprError::MixedRadicals(p, q) => write!(f, "expression mixes sqrt({p}) and sqrt({q})"),
            ExprError::DivisionByZero { position } => write!(f, "division by zero at offset {position}"),
            ExprError::UnknownAngle { position, k, n } => {
                write!(f, "no exact cosine for {k}pi/{n} at offset {position}")
            }
        }
    }
}

impl std::error::Error for ExprError {}

/// Source text together with its exact value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosineExpr {
    pub source: String,
    pub value: FieldElement,
}

impl std::str::FromStr for CosineExpr {
    type Err = ExprError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(CosineExpr {
            source: s.to_owned(),
            value: parse_cosine(s)?,
        })
    }
}

pub fn parse_cosine(text: &str) -> Result<FieldElement, ExprError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error(&["operator", "end of input"]));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, expected: &[&'static str]) -> ExprError {
        ExprError::Parse {
            position: self.pos,
            expected: expected.to_vec(),
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8, what: &'static str) -> Result<(), ExprError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&[what]))
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(word.as_bytes()) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn combine(
        &self,
        lhs: FieldElement,
        rhs: FieldElement,
        op: fn(FieldElement, FieldElement) -> FieldElement,
    ) -> Result<FieldElement, ExprError> {
        try_join_fields(lhs.radicand(), rhs.radicand()).map_err(|_| {
            let (p, q) = (lhs.radicand().unwrap().get(), rhs.radicand().unwrap().get());
            ExprError::MixedRadicals(p, q)
        })?;
        Ok(op(lhs, rhs))
    }

    fn expr(&mut self) -> Result<FieldElement, ExprError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                let rhs = self.term()?;
                acc = self.combine(acc, rhs, |a, b| a + b)?;
            } else if self.eat(b'-') {
                let rhs = self.term()?;
                acc = self.combine(acc, rhs, |a, b| a - b)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<FieldElement, ExprError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                let rhs = self.unary()?;
                acc = self.combine(acc, rhs, |a, b| a * b)?;
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let rhs = self.unary()?;
                if rhs.is_zero() {
                    return Err(ExprError::DivisionByZero { position: at });
                }
                acc = self.combine(acc, rhs, |a, b| a / b)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<FieldElement, ExprError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.primary()
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    fn small(&mut self, what: &'static str) -> Result<u32, ExprError> {
        let at = self.pos;
        self.integer()
            .and_then(|n| u32::try_from(n).ok())
            .ok_or(ExprError::Parse {
                position: at,
                expected: vec![what],
            })
    }

    fn primary(&mut self) -> Result<FieldElement, ExprError> {
        const EXPECTED: &[&str] = &["integer", "sqrt(", "pi", "("];
        if self.eat(b'(') {
            let e = self.expr()?;
            self.expect(b')', ")")?;
            return Ok(e);
        }
        let start = self.pos;
        if self.keyword("sqrt") {
            self.expect(b'(', "(")?;
            let n = self.integer().ok_or_else(|| self.error(&["non-negative integer"]))?;
            self.expect(b')', ")")?;
            return sqrt_of_integer(&n).ok_or(ExprError::Parse {
                position: start,
                expected: vec!["radicand below 2^64"],
            });
        }
        if self.keyword("pi") {
            return self.angle(start, 1);
        }
        match self.integer() {
            Some(n) => {
                // `2pi/5` and friends
                if self.src[self.pos..].starts_with(b"pi") {
                    self.pos += 2;
                    let k = u32::try_from(n).map_err(|_| self.error(&["small angle multiple"]))?;
                    return self.angle(start, k);
                }
                Ok(FieldElement::from(n))
            }
            None => Err(self.error(EXPECTED)),
        }
    }

    fn angle(&mut self, start: usize, k: u32) -> Result<FieldElement, ExprError> {
        self.expect(b'/', "/")?;
        let n = self.small("angle denominator")?;
        NamedAngle::from_fraction_of_pi(k, n)
            .map(NamedAngle::cosine)
            .ok_or(ExprError::UnknownAngle { position: start, k, n })
    }
}

/// `√n` as an exact element, pulling out square factors.
fn sqrt_of_integer(n: &BigInt) -> Option<FieldElement> {
    let n = u64::try_from(n).ok()?;
    if n == 0 {
        return Some(FieldElement::zero());
    }
    let (s, f) = square_free_part(n);
    let s = FieldElement::from(BigInt::from(s));
    if f == 1 {
        return Some(s);
    }
    let root = FieldElement::sqrt_radicand(Radicand::new(f).expect("squarefree part"));
    Some(s * root)
}

//! Recursive-descent parser for polynomials in `x`, `y`, `z`.
//!
//! ```text
//! expr     := sign? term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := rational | 'x' | 'y' | 'z' | '(' expr ')'
//! rational := int ('/' uint)?
//! ```
//!
//! Whitespace is ignored between tokens. Juxtaposition (`2x`, `x y`) is an
//! error: every product needs an explicit `*`.

use incidence_core::{MultiPoly, Rat};
use num_bigint::BigInt;
use num_traits::Zero;

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 64;

/// Largest total degree a parsed polynomial may reach.
pub const MAX_DEGREE: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("exponent overflow at position {pos}: {exp} exceeds the cap {cap}")]
    ExponentOverflow { pos: usize, exp: String, cap: u32 },
    #[error("degree overflow at position {pos}: degree exceeds the cap {cap}")]
    DegreeOverflow { pos: usize, cap: u32 },
    #[error("division by zero at position {pos}")]
    ZeroDenominator { pos: usize },
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

fn syntax(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { pos, msg: msg.into() }
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<(usize, &str), ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(syntax(start, "expected digits"));
        }
        Ok((start, std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")))
    }

    fn checked(&self, p: MultiPoly, pos: usize) -> Result<MultiPoly, ParseError> {
        match p.degree() {
            Some(d) if d > MAX_DEGREE => Err(ParseError::DegreeOverflow { pos, cap: MAX_DEGREE }),
            _ => Ok(p),
        }
    }

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let start = self.pos;
            let f = self.factor()?;
            acc = self.checked(&acc * &f, start)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.base()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let (start, text) = self.digits()?;
        let exp = match text.parse::<u32>() {
            Ok(e) if e <= MAX_EXPONENT => e,
            _ => return Err(ParseError::ExponentOverflow { pos: start, exp: text.to_string(), cap: MAX_EXPONENT }),
        };
        self.checked(base.pow(exp), start)
    }

    fn base(&mut self) -> Result<MultiPoly, ParseError> {
        let Some(c) = self.peek() else {
            return Err(syntax(self.pos, "unexpected end of input"));
        };
        match c {
            b'x' | b'y' | b'z' => {
                self.pos += 1;
                Ok(MultiPoly::var(3, usize::from(c - b'x')))
            }
            b'(' => {
                let open = self.pos;
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(syntax(self.pos, format!("expected ')' to close '(' at position {open}")));
                }
                Ok(inner)
            }
            b'0'..=b'9' => Ok(MultiPoly::constant(3, self.rational()?)),
            _ => Err(syntax(self.pos, format!("unexpected character '{}'", self.char_at(self.pos)))),
        }
    }

    fn rational(&mut self) -> Result<Rat, ParseError> {
        let (_, num) = self.digits()?;
        let num: BigInt = num.parse().expect("digits");
        if !self.eat(b'/') {
            return Ok(Rat::from_integer(num));
        }
        let (start, den) = self.digits()?;
        let den: BigInt = den.parse().expect("digits");
        if den.is_zero() {
            return Err(ParseError::ZeroDenominator { pos: start });
        }
        Ok(Rat::new(num, den))
    }

    fn char_at(&self, pos: usize) -> char {
        std::str::from_utf8(&self.src[pos..]).ok().and_then(|s| s.chars().next()).unwrap_or('?')
    }
}

/// Parses a polynomial in `x`, `y`, `z` with exact rational coefficients.
pub fn parse_poly(text: &str) -> Result<MultiPoly, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let out = p.expr()?;
    match p.peek() {
        None => Ok(out),
        Some(c) if c.is_ascii_alphanumeric() || c == b'(' => {
            Err(syntax(p.pos, "implicit multiplication is not allowed; use '*'"))
        }
        Some(_) => Err(syntax(p.pos, format!("unexpected character '{}'", p.char_at(p.pos)))),
    }
}

/// Parses a single rational literal, with an optional leading sign.
pub fn parse_rational(text: &str) -> Result<Rat, ParseError> {
    let t = text.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let offset = body.as_ptr() as usize - text.as_ptr() as usize;
    let mut p = Parser { src: body.as_bytes(), pos: 0 };
    let r = p.rational().map_err(|e| shift(e, offset))?;
    if p.peek().is_some() {
        return Err(syntax(p.pos + offset, "trailing input after rational"));
    }
    Ok(if neg { -r } else { r })
}

fn shift(e: ParseError, by: usize) -> ParseError {
    match e {
        ParseError::Syntax { pos, msg } => ParseError::Syntax { pos: pos + by, msg },
        ParseError::ZeroDenominator { pos } => ParseError::ZeroDenominator { pos: pos + by },
        other => other,
    }
}

/// Renders a rational as `n` or `n/d`.
pub fn format_rational(r: &Rat) -> String {
    r.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use incidence_core::algebra::{int, rat};
    use proptest::prelude::*;

    fn constant(n: i64) -> MultiPoly {
        MultiPoly::constant(3, int(n))
    }

    fn v(i: usize) -> MultiPoly {
        MultiPoly::var(3, i)
    }

    #[test]
    fn spec_examples() {
        let sphere = &(&(&v(0).pow(2) + &v(1).pow(2)) + &v(2).pow(2)) - &constant(1);
        assert_eq!(parse_poly("x^2+y^2+z^2-1").unwrap(), sphere);
        assert_eq!(parse_poly("x*y-z").unwrap(), &(&v(0) * &v(1)) - &v(2));
        let half = &v(0).scale(&rat(1, 2)) - &constant(3);
        assert_eq!(parse_poly("1/2*x - 3").unwrap(), half);
    }

    #[test]
    fn whitespace_and_parentheses() {
        let a = parse_poly(" ( x + 1 ) ^ 2 ").unwrap();
        let b = parse_poly("x^2+2*x+1").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_poly("-(x-y)").unwrap(), parse_poly("y-x").unwrap());
        assert_eq!(parse_poly("x^0").unwrap(), constant(1));
        assert_eq!(parse_poly("6/4").unwrap(), MultiPoly::constant(3, rat(3, 2)));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_poly("2x").unwrap_err(), syntax(1, "implicit multiplication is not allowed; use '*'"));
        assert!(matches!(parse_poly("x y"), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly("x+"), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly("(x+1"), Err(ParseError::Syntax { pos: 4, .. })));
        assert!(matches!(parse_poly("x^-1"), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly("w"), Err(ParseError::Syntax { pos: 0, .. })));
        assert!(matches!(parse_poly("x--y"), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly("x/2"), Err(ParseError::Syntax { pos: 1, .. })));
        assert_eq!(parse_poly("1/0"), Err(ParseError::ZeroDenominator { pos: 2 }));
        assert!(matches!(parse_poly("x^99999999999"), Err(ParseError::ExponentOverflow { pos: 2, .. })));
        assert!(matches!(parse_poly("x^65"), Err(ParseError::ExponentOverflow { .. })));
        assert!(matches!(parse_poly("x^40*y^40"), Err(ParseError::DegreeOverflow { .. })));
        assert!(matches!(parse_poly(""), Err(ParseError::Syntax { pos: 0, .. })));
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1.5").is_err());
        assert_eq!(format_rational(&rat(6, -8)), "-3/4");
    }

    fn small_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(((0u32..4, 0u32..4, 0u32..4), -20i64..20, 1i64..6), 0..6).prop_map(|terms| {
            let mut p = MultiPoly::zero(3);
            for ((a, b, c), n, d) in terms {
                let m = incidence_core::algebra::Monomial::new(vec![a, b, c]);
                p.add_term(m, rat(n, d));
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn display_round_trip(p in small_poly()) {
            prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
        }
    }
}

//! Recursive-descent parser for rational maps in the variable `z`.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'z' | '(' expr ')'
//! ```
//!
//! There is no implicit multiplication, so `2z` and `1/2z` are rejected;
//! write `2*z` and `(1/2)*z`.

use std::fmt;

use dynzeta::dynmap::RationalMap;
use dynzeta::exact::{Field, FracQ, PolyQ, Rat};
use dynzeta::Error;

/// Largest degree of any intermediate numerator or denominator.
pub const MAX_DEGREE: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseError {
    /// `position` is a byte offset into the source text.
    Syntax {
        position: usize,
        message: String,
    },
    NotARationalMap(String),
}

impl ParseError {
    pub fn kind(&self) -> &'static str {
        match self {
            ParseError::Syntax { .. } => "SyntaxError",
            ParseError::NotARationalMap(_) => "NotARationalMap",
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { position, message } => write!(f, "syntax error at {position}: {message}"),
            ParseError::NotARationalMap(m) => write!(f, "not a rational map: {m}"),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(String),
    Z,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(s) => write!(f, "`{s}`"),
            Tok::Z => write!(f, "`z`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn syntax(position: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        position,
        message: message.into(),
    }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        let tok = match c {
            c if c.is_whitespace() => continue,
            '0'..='9' => {
                let mut s = String::from(c);
                while let Some(&(_, d)) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    s.push(d);
                    chars.next();
                }
                Tok::Int(s)
            }
            'z' => Tok::Z,
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => return Err(syntax(i, format!("unexpected character `{other}`"))),
        };
        out.push((i, tok));
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        syntax(self.offset(), format!("expected {wanted}, found {}", self.peek()))
    }

    fn expr(&mut self) -> Result<FracQ, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add_ref(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub_ref(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<FracQ, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let at = self.offset();
                    let rhs = self.unary()?;
                    acc = bounded(acc.mul_ref(&rhs), at)?;
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.offset();
                    let rhs = self.unary()?;
                    acc = bounded(acc.div_ref(&rhs).ok_or_else(|| syntax(at, "division by zero"))?, at)?;
                }
                Tok::Int(_) | Tok::Z | Tok::LParen => {
                    return Err(syntax(self.offset(), "missing operator (write `*` explicitly)"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<FracQ, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(self.unary()?.neg_ref())
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<FracQ, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        let exp = match self.bump() {
            Tok::Int(s) => {
                let limit = MAX_DEGREE / base.num().degree_or_zero().max(base.den().degree_or_zero()).max(1);
                s.parse::<usize>()
                    .ok()
                    .filter(|&e| e <= limit)
                    .ok_or_else(|| syntax(at, format!("degree would exceed {MAX_DEGREE}")))? as u32
            }
            _ => return Err(syntax(at, "exponent must be a non-negative integer literal")),
        };
        if *self.peek() == Tok::Caret {
            return Err(syntax(self.offset(), "chained `^` is ambiguous; add parentheses"));
        }
        if exp == 0 && base.is_zero() {
            return Err(syntax(at, "0^0 is undefined"));
        }
        Ok(pow(&base, exp))
    }

    fn atom(&mut self) -> Result<FracQ, ParseError> {
        match self.peek().clone() {
            Tok::Int(s) => {
                self.bump();
                let r: Rat = s.parse().expect("digits parse as an integer");
                Ok(FracQ::constant(r))
            }
            Tok::Z => {
                self.bump();
                Ok(FracQ::var())
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.unexpected("a number, `z` or `(`")),
        }
    }
}

fn bounded(value: FracQ, at: usize) -> Result<FracQ, ParseError> {
    if value.num().degree_or_zero().max(value.den().degree_or_zero()) > MAX_DEGREE {
        return Err(syntax(at, format!("degree would exceed {MAX_DEGREE}")));
    }
    Ok(value)
}

fn pow(base: &FracQ, exp: u32) -> FracQ {
    let (num, den) = base.clone().into_parts();
    FracQ::new(num.pow(exp), den.pow(exp)).expect("nonzero denominator")
}

/// Parses `text` as an element of Q(z).
pub fn parse_expression(text: &str) -> Result<FracQ, ParseError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let value = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(value)
}

/// Parses `text` as a rational map of degree at least 1.
pub fn parse_map(text: &str) -> Result<RationalMap, ParseError> {
    let (num, den) = parse_expression(text)?.into_parts();
    RationalMap::new(num, den).map_err(|e| match e {
        Error::InvalidMap(m) => ParseError::NotARationalMap(m),
        other => ParseError::NotARationalMap(other.to_string()),
    })
}

/// A string that [`parse_map`] turns back into `phi`.
pub fn render_map(phi: &RationalMap) -> String {
    phi.to_string()
}

/// Coefficients of `p`, ascending.
pub fn coefficients(p: &PolyQ) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn examples() {
        let phi = parse_map("z^2").unwrap();
        assert_eq!(phi, RationalMap::power(2));
        let fam = parse_map("(z^2 + (1/2)*z) / ((1/3)*z + 1)").unwrap();
        let expected = RationalMap::new(
            PolyQ::new(vec![Rat::zero(), q(1, 2), Rat::one()]),
            PolyQ::new(vec![Rat::one(), q(1, 3)]),
        )
        .unwrap();
        assert_eq!(fam, expected);
        let cheb = parse_map("z^2 - 2").unwrap();
        assert_eq!(cheb.numerator(), &PolyQ::from_ints(&[-2, 0, 1]));
        assert!(cheb.denominator().is_one());
    }

    #[test]
    fn precedence() {
        let e = parse_expression("-z^2").unwrap();
        assert_eq!(e, FracQ::from_poly(PolyQ::from_ints(&[0, 0, -1])));
        let e = parse_expression("1 - 2 - 3").unwrap();
        assert_eq!(e, FracQ::constant(Rat::from(-4)));
        let e = parse_expression("12/3/2").unwrap();
        assert_eq!(e, FracQ::constant(Rat::from(2)));
        let e = parse_expression("2*-z").unwrap();
        assert_eq!(e, FracQ::from_poly(PolyQ::from_ints(&[0, -2])));
        let e = parse_expression("(z + 1)^2 / (z + 1)").unwrap();
        assert_eq!(e, FracQ::from_poly(PolyQ::from_ints(&[1, 1])));
    }

    #[test]
    fn errors() {
        let pos = |s: &str| match parse_map(s) {
            Err(ParseError::Syntax { position, .. }) => position,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(pos("2z"), 1);
        assert_eq!(pos("1/2z"), 3);
        assert_eq!(pos("z^"), 2);
        assert_eq!(pos("z^-1"), 2);
        assert_eq!(pos("z^2^3"), 3);
        assert_eq!(pos("(z^4096)^2"), 9);
        assert_eq!(pos("z^4096*z"), 7);
        assert_eq!(pos("(z + 1"), 6);
        assert_eq!(pos("z $ 1"), 2);
        assert_eq!(pos("z / (z - z)"), 4);
        assert_eq!(pos("z)"), 1);
        assert_eq!(pos(""), 0);
        assert!(matches!(parse_map("3"), Err(ParseError::NotARationalMap(_))));
        assert!(matches!(
            parse_map("(z + 1)/(z + 1)"),
            Err(ParseError::NotARationalMap(_))
        ));
    }

    #[test]
    fn render_round_trip() {
        for s in [
            "z^2",
            "z^2 - 2",
            "(z^2 + (1/2)*z) / ((1/3)*z + 1)",
            "1/z",
            "(-3/2)*z^3 + 1/7",
            "(z - 1)/(2*z^2 + 3)",
        ] {
            let phi = parse_map(s).unwrap();
            assert_eq!(parse_map(&render_map(&phi)).unwrap(), phi, "{s}");
        }
    }
}

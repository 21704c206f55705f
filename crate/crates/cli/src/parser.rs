//! Surface syntax for monomial ideals and polynomials.
//!
//! ```text
//! expr  := term ('*' term)*
//! term  := atom ('^' UINT)?
//! atom  := '(' mono (',' mono)* ')' | '(' expr ')' | 'closure' '(' (expr | mono (',' mono)*) ')' | 'm'
//! mono  := factor ('*'? factor)*
//! factor:= 'x' ('^' UINT)? | 'y' ('^' UINT)? | '1'
//! ```
//!
//! `m` stands for `(x, y)`. Whitespace is insignificant.

use std::fmt;

use icmod_core::{closure, Monomial, MonomialIdeal, Poly};
use num_bigint::BigInt;
use thiserror::Error;

/// Largest exponent any parsed or evaluated ideal may carry.
pub const EXPONENT_LIMIT: u32 = 1 << 20;

/// Most generator pairs a single product may combine.
pub const PAIR_LIMIT: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: Pos, msg: String },

    #[error("at {pos}: {source}")]
    Eval {
        pos: Pos,
        #[source]
        source: icmod_core::Error,
    },

    #[error("at {pos}: expression too large (exponent above {EXPONENT_LIMIT} or more than {PAIR_LIMIT} generator pairs)")]
    TooLarge { pos: Pos },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    Gens(Vec<Monomial>),
    Product(Box<Expr>, Box<Expr>),
    Power(Box<Expr>, u32),
    Closure(Box<Expr>),
    MaximalIdeal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    Comma,
    Star,
    Caret,
    Plus,
    Minus,
    X,
    Y,
    M,
    Closure,
    Uint(u64),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Comma => f.write_str("','"),
            Tok::Star => f.write_str("'*'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::X => f.write_str("'x'"),
            Tok::Y => f.write_str("'y'"),
            Tok::M => f.write_str("'m'"),
            Tok::Closure => f.write_str("'closure'"),
            Tok::Uint(n) => write!(f, "{n}"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn syntax(pos: Pos, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        pos,
        msg: msg.into(),
    }
}

fn tokenize(src: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let mut pos = Pos { line: 1, col: 1 };
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let start = pos;
        let mut advance = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().expect("peeked");
            if c == '\n' {
                pos.line += 1;
                pos.col = 1;
            } else {
                pos.col += 1;
            }
        };
        if c.is_whitespace() {
            advance(&mut chars);
            continue;
        }
        if c.is_ascii_digit() {
            let mut n: u64 = 0;
            while let Some(&d) = chars.peek() {
                let Some(v) = d.to_digit(10) else { break };
                n = n.saturating_mul(10).saturating_add(u64::from(v));
                advance(&mut chars);
            }
            out.push((Tok::Uint(n), start));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let mut word = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_alphabetic() {
                    break;
                }
                word.push(d);
                advance(&mut chars);
            }
            if word == "closure" {
                out.push((Tok::Closure, start));
                continue;
            }
            // juxtaposed variables such as "xy" split into single letters
            for (col, ch) in (start.col..).zip(word.chars()) {
                let tok = match ch {
                    'x' => Tok::X,
                    'y' => Tok::Y,
                    'm' => Tok::M,
                    _ => return Err(syntax(start, format!("unknown identifier '{word}'"))),
                };
                out.push((
                    tok,
                    Pos {
                        line: start.line,
                        col,
                    },
                ));
            }
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            _ => return Err(syntax(start, format!("unexpected character '{c}'"))),
        };
        advance(&mut chars);
        out.push((tok, start));
    }
    out.push((Tok::End, pos));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: tokenize(src)?,
            at: 0,
        })
    }

    fn peek(&self) -> Tok {
        self.toks[self.at].0
    }

    fn peek2(&self) -> Tok {
        self.toks.get(self.at + 1).map_or(Tok::End, |t| t.0)
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at];
        if t.0 != Tok::End {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, tok: Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<Pos, ParseError> {
        let (t, pos) = self.bump();
        if t == tok {
            Ok(pos)
        } else {
            Err(syntax(pos, format!("expected {tok}, found {t}")))
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        self.expect(Tok::End).map(|_| ())
    }

    fn uint(&mut self) -> Result<u32, ParseError> {
        match self.bump() {
            (Tok::Uint(n), _) if n <= u64::from(EXPONENT_LIMIT) => Ok(n as u32),
            (Tok::Uint(_), pos) => Err(ParseError::TooLarge { pos }),
            (t, pos) => Err(syntax(pos, format!("expected an integer, found {t}"))),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        while self.eat(Tok::Star) {
            let rhs = self.term()?;
            let pos = lhs.pos;
            lhs = Expr {
                kind: ExprKind::Product(Box::new(lhs), Box::new(rhs)),
                pos,
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat(Tok::Caret) {
            return Ok(base);
        }
        let epos = self.pos();
        let n = self.uint()?;
        if n == 0 {
            return Err(syntax(epos, "ideal exponent must be at least 1"));
        }
        let pos = base.pos;
        Ok(Expr {
            kind: ExprKind::Power(Box::new(base), n),
            pos,
        })
    }

    fn starts_expr(tok: Tok) -> bool {
        matches!(tok, Tok::LParen | Tok::Closure | Tok::M)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.bump().0 {
            Tok::M => Ok(Expr {
                kind: ExprKind::MaximalIdeal,
                pos,
            }),
            Tok::LParen => {
                let kind = if Self::starts_expr(self.peek()) {
                    self.expr()?.kind
                } else {
                    ExprKind::Gens(self.mono_list()?)
                };
                self.expect(Tok::RParen)?;
                Ok(Expr { kind, pos })
            }
            Tok::Closure => {
                let open = self.expect(Tok::LParen)?;
                let inner = if Self::starts_expr(self.peek()) {
                    self.expr()?
                } else {
                    Expr {
                        kind: ExprKind::Gens(self.mono_list()?),
                        pos: open,
                    }
                };
                self.expect(Tok::RParen)?;
                Ok(Expr {
                    kind: ExprKind::Closure(Box::new(inner)),
                    pos,
                })
            }
            t => Err(syntax(
                pos,
                format!("expected '(', 'closure' or 'm', found {t}"),
            )),
        }
    }

    fn mono_list(&mut self) -> Result<Vec<Monomial>, ParseError> {
        let mut gens = vec![self.mono()?];
        while self.eat(Tok::Comma) {
            gens.push(self.mono()?);
        }
        Ok(gens)
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Tok::X | Tok::Y | Tok::Uint(1))
    }

    fn mono(&mut self) -> Result<Monomial, ParseError> {
        if !self.starts_factor() {
            let (t, pos) = self.bump();
            return Err(syntax(pos, format!("expected a monomial, found {t}")));
        }
        let start = self.pos();
        let mut m = self.factor()?;
        loop {
            if self.peek() == Tok::Star && matches!(self.peek2(), Tok::X | Tok::Y | Tok::Uint(1)) {
                self.bump();
            } else if !self.starts_factor() {
                break;
            }
            let f = self.factor()?;
            m = m
                .checked_mul(f)
                .filter(|m| m.a <= EXPONENT_LIMIT && m.b <= EXPONENT_LIMIT)
                .ok_or(ParseError::TooLarge { pos: start })?;
        }
        Ok(m)
    }

    fn factor(&mut self) -> Result<Monomial, ParseError> {
        let (t, pos) = self.bump();
        let var = match t {
            Tok::X => Monomial::x,
            Tok::Y => Monomial::y,
            Tok::Uint(1) => return Ok(Monomial::ONE),
            t => return Err(syntax(pos, format!("expected 'x' or 'y', found {t}"))),
        };
        let n = if self.eat(Tok::Caret) {
            self.uint()?
        } else {
            1
        };
        Ok(var(n))
    }

    /// `['-'] pterm (('+' | '-') pterm)*` with `pterm := UINT ['*'] mono | UINT | mono`.
    fn poly(&mut self) -> Result<Poly, ParseError> {
        let mut terms: Vec<(Monomial, BigInt)> = Vec::new();
        let mut sign = if self.eat(Tok::Minus) { -1 } else { 1 };
        loop {
            let coeff = match self.peek() {
                Tok::Uint(n) => {
                    self.bump();
                    self.eat(Tok::Star);
                    Some(BigInt::from(n))
                }
                _ => None,
            };
            let mono = if self.starts_factor() {
                self.mono()?
            } else if coeff.is_some() {
                Monomial::ONE
            } else {
                let (t, pos) = self.bump();
                return Err(syntax(pos, format!("expected a term, found {t}")));
            };
            terms.push((mono, coeff.unwrap_or_else(|| BigInt::from(1)) * sign));
            sign = match self.peek() {
                Tok::Plus => 1,
                Tok::Minus => -1,
                _ => break,
            };
            self.bump();
        }
        Ok(Poly::new(terms))
    }
}

/// Parses an ideal expression without evaluating it.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(src)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// Parses a single monomial such as `x^2*y^3` or `xy`.
pub fn parse_monomial(src: &str) -> Result<Monomial, ParseError> {
    let mut p = Parser::new(src)?;
    let m = p.mono()?;
    p.finish()?;
    Ok(m)
}

/// Parses a comma-separated list of polynomials with integer coefficients,
/// optionally wrapped in parentheses: `(x^2 - y^2, x*y)`.
pub fn parse_polys(src: &str) -> Result<Vec<Poly>, ParseError> {
    let mut p = Parser::new(src)?;
    let wrapped = p.eat(Tok::LParen);
    let mut polys = vec![p.poly()?];
    while p.eat(Tok::Comma) {
        polys.push(p.poly()?);
    }
    if wrapped {
        p.expect(Tok::RParen)?;
    }
    p.finish()?;
    Ok(polys)
}

fn within_limit(i: &MonomialIdeal) -> bool {
    i.is_unit() || (i.a0() <= EXPONENT_LIMIT && i.br() <= EXPONENT_LIMIT)
}

fn guard(pos: Pos, a: u64, b: u64) -> Result<(), ParseError> {
    if a > u64::from(EXPONENT_LIMIT) || b > u64::from(EXPONENT_LIMIT) {
        Err(ParseError::TooLarge { pos })
    } else {
        Ok(())
    }
}

fn guard_pairs(pos: Pos, pairs: u64) -> Result<(), ParseError> {
    if pairs > PAIR_LIMIT {
        Err(ParseError::TooLarge { pos })
    } else {
        Ok(())
    }
}

fn extent(i: &MonomialIdeal) -> (u64, u64) {
    if i.is_unit() {
        (0, 0)
    } else {
        (u64::from(i.a0()), u64::from(i.br()))
    }
}

/// Product of two evaluated ideals, refusing exponents past the limit.
pub fn checked_product(l: &MonomialIdeal, r: &MonomialIdeal) -> Result<MonomialIdeal, ParseError> {
    let pos = Pos { line: 1, col: 1 };
    let ((la, lb), (ra, rb)) = (extent(l), extent(r));
    guard(pos, la + ra, lb + rb)?;
    guard_pairs(pos, l.num_min_gens() as u64 * r.num_min_gens() as u64)?;
    Ok(l.product(r))
}

/// Evaluates an expression to its normalized ideal.
pub fn eval(e: &Expr) -> Result<MonomialIdeal, ParseError> {
    let out = match &e.kind {
        ExprKind::MaximalIdeal => MonomialIdeal::maximal_power(1),
        ExprKind::Gens(gens) => MonomialIdeal::normalize(gens.iter().copied())
            .map_err(|source| ParseError::Eval { pos: e.pos, source })?,
        ExprKind::Product(l, r) => checked_product(&eval(l)?, &eval(r)?)
            .map_err(|_| ParseError::TooLarge { pos: e.pos })?,
        ExprKind::Power(base, n) => {
            let base = eval(base)?;
            let (a, b) = extent(&base);
            let n64 = u64::from(*n);
            guard(e.pos, a * n64, b * n64)?;
            // the last squaring multiplies two ideals with about half the
            // final number of generators each
            let half = a.min(b) * n64.div_ceil(2) + 1;
            guard_pairs(e.pos, half * half)?;
            base.power(*n)
        }
        ExprKind::Closure(inner) => closure(&eval(inner)?),
    };
    debug_assert!(within_limit(&out));
    Ok(out)
}

/// Parses and evaluates an ideal expression.
pub fn parse_ideal(src: &str) -> Result<MonomialIdeal, ParseError> {
    eval(&parse(src)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(pairs: &[(u32, u32)]) -> MonomialIdeal {
        MonomialIdeal::from_pairs(pairs).unwrap()
    }

    #[test]
    fn generator_lists() {
        let i = parse_ideal("(x^5, x^4*y^2, x^3*y^3, x^2*y^4, x*y^6, y^7)").unwrap();
        assert_eq!(i, ideal(&[(5, 0), (4, 2), (3, 3), (2, 4), (1, 6), (0, 7)]));
        assert_eq!(
            parse_ideal("(x^3y^2, x^4, y^3)").unwrap(),
            ideal(&[(4, 0), (3, 2), (0, 3)])
        );
        assert_eq!(
            parse_ideal(" ( x , x y , y ) ").unwrap(),
            ideal(&[(1, 0), (0, 1)])
        );
    }

    #[test]
    fn maximal_ideal_sugar() {
        assert_eq!(
            parse("m^3").unwrap().kind,
            ExprKind::Power(
                Box::new(Expr {
                    kind: ExprKind::MaximalIdeal,
                    pos: Pos { line: 1, col: 1 }
                }),
                3
            )
        );
        assert_eq!(parse_ideal("m^3").unwrap(), MonomialIdeal::maximal_power(3));
        assert_eq!(parse_ideal("m*m").unwrap(), MonomialIdeal::maximal_power(2));
    }

    #[test]
    fn products_and_closures() {
        let i = parse_ideal("(x,y)*(x,y^2)*closure((x^3,y^2))").unwrap();
        assert_eq!(i, ideal(&[(5, 0), (4, 1), (2, 2), (1, 3), (0, 5)]));
        assert_eq!(
            parse_ideal("closure(x^3,y^2)").unwrap(),
            ideal(&[(3, 0), (2, 1), (0, 2)])
        );
        assert_eq!(
            parse_ideal("closure(x^2,y^3) * closure(x^3,y^4)").unwrap(),
            ideal(&[(5, 0), (4, 2), (3, 3), (2, 4), (1, 6), (0, 7)])
        );
        assert_eq!(
            parse_ideal("((x,y)*(x,y))^2").unwrap(),
            MonomialIdeal::maximal_power(4)
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_ideal("(x^2, y").unwrap_err();
        assert!(
            matches!(
                err,
                ParseError::Syntax {
                    pos: Pos { line: 1, col: 8 },
                    ..
                }
            ),
            "{err}"
        );
        let err = parse_ideal("(x,\n z)").unwrap_err();
        assert!(
            matches!(
                err,
                ParseError::Syntax {
                    pos: Pos { line: 2, col: 2 },
                    ..
                }
            ),
            "{err}"
        );
        assert!(matches!(parse_ideal("m^0"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_ideal("()"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_ideal("m m"), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn eval_errors() {
        let err = parse_ideal("(x,y)*(x^2, x*y)").unwrap_err();
        assert_eq!(
            err,
            ParseError::Eval {
                pos: Pos { line: 1, col: 7 },
                source: icmod_core::Error::NotMPrimary { missing: 'y' }
            }
        );
        assert!(matches!(
            parse_ideal("(x^99999999, y)"),
            Err(ParseError::TooLarge { .. })
        ));
        assert!(matches!(
            parse_ideal("m^1000000"),
            Err(ParseError::TooLarge { .. })
        ));
        assert!(matches!(
            parse_ideal("m^4000*m^5000"),
            Err(ParseError::TooLarge { .. })
        ));
        assert_eq!(parse_ideal("m^3000").unwrap().num_min_gens(), 3001);
        assert!(matches!(
            parse_ideal("(x^1000,y)^5000"),
            Err(ParseError::TooLarge { .. })
        ));
    }

    #[test]
    fn monomials() {
        assert_eq!(parse_monomial("x^2*y^3").unwrap(), Monomial::new(2, 3));
        assert_eq!(parse_monomial("xy").unwrap(), Monomial::new(1, 1));
        assert_eq!(parse_monomial("1").unwrap(), Monomial::ONE);
        assert!(parse_monomial("x,y").is_err());
    }

    #[test]
    fn polynomials() {
        let ps = parse_polys("(x^2 - y^2, x*y)").unwrap();
        assert_eq!(ps.len(), 2);
        assert_eq!(
            ps[0],
            Poly::new([(Monomial::x(2), 1), (Monomial::y(2), -1)])
        );
        let ps = parse_polys("3x + 2*y - 1, -x").unwrap();
        assert_eq!(
            ps[0],
            Poly::new([
                (Monomial::x(1), 3),
                (Monomial::y(1), 2),
                (Monomial::ONE, -1)
            ])
        );
        assert_eq!(ps[1], Poly::new([(Monomial::x(1), -1)]));
        assert!(parse_polys("x +").is_err());
    }
}

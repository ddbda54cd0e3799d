//! Text expressions such as `4*sin(x) + 3 sin(2x) - 0.8*sin(4*x)`.
//!
//! Terms are surd coefficients times an optional `sin(k*x)` or `cos(k*x)`.
//! The symbol `a` may appear linearly, giving a one-parameter family.

use num_traits::Signed;

use crate::error::{ExprError, ExprErrorKind};
use crate::exactnum::rational::{parse_rational, Rational};
use crate::exactnum::SurdExpr;
use crate::paramsolve::ParamFamily;
use crate::trig::TrigPoly;

/// A parsed expression: a fixed polynomial or an affine family in `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprAst {
    Trig(TrigPoly),
    Family(ParamFamily),
}

impl ExprAst {
    pub fn render(&self) -> String {
        match self {
            Self::Trig(t) => t.render(),
            Self::Family(f) => render_family(f),
        }
    }
}

/// `base + a*(direction)`, parseable back into the same family.
pub fn render_family(f: &ParamFamily) -> String {
    let dir = format!("a*({})", f.direction.render());
    if f.base.is_zero() {
        dir
    } else {
        format!("{} + {dir}", f.base.render())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn err(pos: usize, kind: ExprErrorKind) -> ExprError {
    ExprError { pos, kind }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        if c.is_ascii_digit() || c == '.' {
            let mut end = i;
            let mut seen_exp = false;
            while let Some(&(j, d)) = it.peek() {
                let exp_ok = !seen_exp && (d == 'e' || d == 'E') && {
                    let rest = &src[j + 1..];
                    let rest = rest.strip_prefix(['+', '-']).unwrap_or(rest);
                    rest.starts_with(|ch: char| ch.is_ascii_digit())
                };
                if d.is_ascii_digit() || d == '.' {
                    end = j + 1;
                    it.next();
                } else if exp_ok {
                    seen_exp = true;
                    it.next();
                    if let Some(&(k, s)) = it.peek() {
                        if s == '+' || s == '-' {
                            it.next();
                            end = k + 1;
                        }
                    }
                    end = end.max(j + 1);
                } else {
                    break;
                }
            }
            out.push((i, Tok::Num(src[i..end].to_string())));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut end = i;
            while let Some(&(j, d)) = it.peek() {
                if d.is_alphanumeric() && !d.is_ascii_digit() || d == '_' {
                    end = j + d.len_utf8();
                    it.next();
                } else {
                    break;
                }
            }
            out.push((i, Tok::Ident(src[i..end].to_string())));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' | '\u{b7}' | '\u{d7}' => Tok::Star,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return Err(err(i, ExprErrorKind::BadChar(c))),
        };
        out.push((i, tok));
        it.next();
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

/// `c + a·d` during evaluation.
#[derive(Clone, Debug)]
struct Val {
    c: TrigPoly,
    d: TrigPoly,
}

impl Val {
    fn scalar(s: SurdExpr) -> Self {
        Val {
            c: TrigPoly::constant(s),
            d: TrigPoly::zero(),
        }
    }

    fn is_scalar(&self) -> bool {
        self.c.degree() == 0 && self.d.degree() == 0
    }

    fn neg(&self) -> Self {
        let m = SurdExpr::from_int(-1);
        Val {
            c: self.c.scale(&m),
            d: self.d.scale(&m),
        }
    }

    fn add(&self, o: &Val) -> Val {
        Val {
            c: &self.c + &o.c,
            d: &self.d + &o.d,
        }
    }

    /// `self` must be scalar.
    fn scalar_times(&self, o: &Val) -> Result<Val, ExprErrorKind> {
        let (s0, s1) = (self.c.a0(), self.d.a0());
        if !s1.is_zero() && !o.d.is_zero() {
            return Err(ExprErrorKind::NonlinearParameter);
        }
        Ok(Val {
            c: o.c.scale(s0),
            d: &o.d.scale(s0) + &o.c.scale(s1),
        })
    }

    fn mul(&self, o: &Val) -> Result<Val, ExprErrorKind> {
        if self.is_scalar() {
            self.scalar_times(o)
        } else if o.is_scalar() {
            o.scalar_times(self)
        } else {
            Err(ExprErrorKind::TrigProduct)
        }
    }

    fn div(&self, o: &Val) -> Result<Val, ExprErrorKind> {
        if !o.is_scalar() {
            return Err(ExprErrorKind::BadDivision("a trigonometric term".into()));
        }
        if !o.d.is_zero() {
            return Err(ExprErrorKind::BadDivision("the parameter".into()));
        }
        let s = o.c.a0();
        if s.is_zero() {
            return Err(ExprErrorKind::BadDivision("zero".into()));
        }
        let inv = s
            .inverse_monomial()
            .ok_or_else(|| ExprErrorKind::BadDivision("a sum of square roots".into()))?;
        Val::scalar(inv).scalar_times(self)
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    saw_param: bool,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self) -> ExprError {
        err(self.pos(), ExprErrorKind::Unexpected(self.peek().describe()))
    }

    fn expect(&mut self, t: Tok) -> Result<(), ExprError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn expr(&mut self) -> Result<Val, ExprError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.add(&self.term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Val, ExprError> {
        let mut acc = self.unary()?;
        loop {
            let pos = self.pos();
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = acc.mul(&rhs).map_err(|k| err(pos, k))?;
                }
                Tok::Slash => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = acc.div(&rhs).map_err(|k| err(pos, k))?;
                }
                Tok::Ident(_) | Tok::LParen => {
                    let rhs = self.unary()?;
                    acc = acc.mul(&rhs).map_err(|k| err(pos, k))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Val, ExprError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Val, ExprError> {
        let (pos, tok) = self.bump();
        match tok {
            Tok::Num(n) => {
                let r = parse_rational(&n).map_err(|e| err(pos, e.into()))?;
                Ok(Val::scalar(SurdExpr::from_rational(r)))
            }
            Tok::LParen => {
                let v = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(v)
            }
            Tok::Ident(name) => match name.as_str() {
                "a" => {
                    self.saw_param = true;
                    Ok(Val {
                        c: TrigPoly::zero(),
                        d: TrigPoly::constant(SurdExpr::one()),
                    })
                }
                "sqrt" | "\u{221a}" => self.sqrt(pos),
                "sin" | "cos" => {
                    let k = self.frequency()?;
                    let one = SurdExpr::one();
                    let t = if name == "sin" {
                        TrigPoly::sin_term(k, one)
                    } else {
                        TrigPoly::cos_term(k, one)
                    };
                    Ok(Val {
                        c: t,
                        d: TrigPoly::zero(),
                    })
                }
                "x" => Err(err(pos, ExprErrorKind::BareVariable)),
                _ => Err(err(pos, ExprErrorKind::UnknownSymbol(name))),
            },
            _ => {
                self.at -= usize::from(self.at > 0 && tok != Tok::End);
                Err(err(pos, ExprErrorKind::Unexpected(tok.describe())))
            }
        }
    }

    fn sqrt(&mut self, pos: usize) -> Result<Val, ExprError> {
        self.expect(Tok::LParen)?;
        let v = self.expr()?;
        self.expect(Tok::RParen)?;
        let r = (v.is_scalar() && v.d.is_zero())
            .then(|| v.c.a0().as_rational())
            .flatten()
            .ok_or_else(|| err(pos, ExprErrorKind::BadSqrt))?;
        let s = SurdExpr::sqrt_rational(&r).ok_or_else(|| err(pos, ExprErrorKind::BadSqrt))?;
        Ok(Val::scalar(s))
    }

    /// `(x)`, `(kx)`, `(k x)` or `(k*x)` with `k` a positive integer.
    fn frequency(&mut self) -> Result<usize, ExprError> {
        self.expect(Tok::LParen)?;
        let mut k = 1usize;
        if let Tok::Num(n) = self.peek().clone() {
            let pos = self.pos();
            let bad = || err(pos, ExprErrorKind::BadFrequency(n.clone()));
            let r: Rational = parse_rational(&n).map_err(|_| bad())?;
            if !r.is_integer() || !r.is_positive() {
                return Err(bad());
            }
            k = r.to_integer().try_into().map_err(|_| bad())?;
            self.bump();
            if *self.peek() == Tok::Star {
                self.bump();
            }
        }
        match self.peek().clone() {
            Tok::Ident(s) if s == "x" => {
                self.bump();
            }
            Tok::Ident(s) => return Err(err(self.pos(), ExprErrorKind::UnknownSymbol(s))),
            _ => return Err(self.unexpected()),
        }
        self.expect(Tok::RParen)?;
        Ok(k)
    }
}

/// Parses a polynomial or, when `a` occurs, an affine family.
pub fn parse(src: &str) -> Result<ExprAst, ExprError> {
    let mut p = Parser {
        toks: lex(src)?,
        at: 0,
        saw_param: false,
    };
    let v = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected());
    }
    Ok(if p.saw_param {
        ExprAst::Family(ParamFamily::new(v.c, v.d))
    } else {
        ExprAst::Trig(v.c)
    })
}

/// Parses an expression that must not mention `a`.
pub fn parse_trig(src: &str) -> Result<TrigPoly, ExprError> {
    match parse(src)? {
        ExprAst::Trig(t) => Ok(t),
        ExprAst::Family(_) => {
            let pos = src.find('a').unwrap_or(0);
            Err(err(pos, ExprErrorKind::UnexpectedParameter))
        }
    }
}

/// Parses an expression that must mention `a`.
pub fn parse_family(src: &str) -> Result<ParamFamily, ExprError> {
    match parse(src)? {
        ExprAst::Family(f) => Ok(f),
        ExprAst::Trig(_) => Err(err(0, ExprErrorKind::MissingParameter)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::rat;
    use crate::trig::{cosine_poly, q, sine_poly};

    #[test]
    fn cosine_example() {
        let t = parse_trig("5 + 4*cos(x) + 3*cos(2x) + 4*cos(3x)").unwrap();
        assert_eq!(t, cosine_poly(q(5, 1), &[q(4, 1), q(3, 1), q(4, 1)]));
    }

    #[test]
    fn surd_example() {
        let t = parse_trig("sin(x) + sin(2x)/2 + (sin(3x) + 3*sin(4x)/4)/sqrt(2)").unwrap();
        let r2 = SurdExpr::term(rat(1, 2), 2);
        let want = sine_poly(&[q(1, 1), q(1, 2), r2.clone(), &r2 * &q(3, 4)]);
        assert_eq!(t, want);
    }

    #[test]
    fn decimals_are_exact() {
        let t = parse_trig("4 sin(x) + 3 sin(2x) + 2 sin(3x) \u{2212} 0.8 sin(4x)").unwrap();
        assert_eq!(t.sin_coeff(4), q(-4, 5));
        assert_eq!(parse_trig("1.25e-1").unwrap(), TrigPoly::constant(q(1, 8)));
    }

    #[test]
    fn family() {
        let f = parse_family("2*sin(x) + sin(2x) + a*sin(3x)").unwrap();
        assert_eq!(f.base, sine_poly(&[q(2, 1), q(1, 1)]));
        assert_eq!(f.direction, sine_poly(&[q(0, 1), q(0, 1), q(1, 1)]));
        let g = parse_family("(a + 1) sin(x) - a/2 cos(2*x)").unwrap();
        assert_eq!(g.base, sine_poly(&[q(1, 1)]));
        assert_eq!(g.direction, &sine_poly(&[q(1, 1)]) + &cosine_poly(q(0, 1), &[q(0, 1), q(-1, 2)]));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("1 + foo(x)").unwrap_err();
        assert_eq!(e.pos, 4);
        assert!(matches!(e.kind, ExprErrorKind::UnknownSymbol(_)));
        let e = parse("sin(1.5x)").unwrap_err();
        assert_eq!((e.pos, e.kind.clone()), (4, ExprErrorKind::BadFrequency("1.5".into())));
        assert!(matches!(parse("sin(0x)").unwrap_err().kind, ExprErrorKind::BadFrequency(_)));
        assert_eq!(parse("a*a*sin(x)").unwrap_err().kind, ExprErrorKind::NonlinearParameter);
        assert_eq!(parse("a*sin(x)*a").unwrap_err().kind, ExprErrorKind::NonlinearParameter);
        assert_eq!(parse("sin(x)*cos(x)").unwrap_err().kind, ExprErrorKind::TrigProduct);
        assert_eq!(parse("1 + x").unwrap_err().kind, ExprErrorKind::BareVariable);
        assert!(matches!(parse("1/(1+sqrt(2))").unwrap_err().kind, ExprErrorKind::BadDivision(_)));
        assert!(matches!(parse("sin(x)/a").unwrap_err().kind, ExprErrorKind::BadDivision(_)));
        assert!(matches!(parse("1 +").unwrap_err().kind, ExprErrorKind::Unexpected(_)));
        assert!(matches!(parse("(1").unwrap_err().kind, ExprErrorKind::Unexpected(_)));
        assert!(matches!(parse("1 $ 2").unwrap_err().kind, ExprErrorKind::BadChar('$')));
        assert_eq!(parse("sqrt(-2)").unwrap_err().kind, ExprErrorKind::BadSqrt);
        let msg = parse("1 + foo").unwrap_err().annotate("1 + foo");
        assert!(msg.ends_with("    ^ at column 5: unknown symbol `foo`"));
    }

    #[test]
    fn sqrt_of_rationals() {
        assert_eq!(parse_trig("sqrt(8)").unwrap(), TrigPoly::constant(SurdExpr::term(rat(2, 1), 2)));
        assert_eq!(parse_trig("sqrt(1/2)").unwrap(), TrigPoly::constant(SurdExpr::term(rat(1, 2), 2)));
        assert_eq!(parse_trig("3/sqrt(3)").unwrap(), TrigPoly::constant(SurdExpr::sqrt(3)));
    }

    #[test]
    fn render_round_trip() {
        for src in [
            "0",
            "-1/3 + (sqrt(2) - 1) cos(x) - 7/2*sqrt(5) sin(12x)",
            "sin(x) + sin(2x)/2 + (sin(3x) + 3*sin(4x)/4)/sqrt(2)",
            "7/5 + cos(x) + sin(x) + 2*sin(2x) + sin(3x)",
        ] {
            let t = parse_trig(src).unwrap();
            assert_eq!(parse_trig(&t.render()).unwrap(), t, "{}", t.render());
        }
        let f = parse("a sin(3x) + 2 sin(x)").unwrap();
        assert_eq!(parse(&f.render()).unwrap(), f);
    }
}

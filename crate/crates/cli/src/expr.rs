//! Algebra expressions: a small recursive-descent parser and a printer whose
//! output parses back to the same tree.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := '-'? factor ('*' factor)*
//! factor := atom ('^' int)?
//! atom   := scalar | generator | '(' expr ')'
//! ```

use std::fmt;
use std::str::FromStr;

use hallforge::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    B,
    Heis,
    Lattice,
    F,
}

impl Target {
    pub fn as_str(self) -> &'static str {
        match self {
            Target::B => "B",
            Target::Heis => "heis",
            Target::Lattice => "lattice",
            Target::F => "f",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "b" => Ok(Target::B),
            "heis" => Ok(Target::Heis),
            "lattice" => Ok(Target::Lattice),
            "f" => Ok(Target::F),
            _ => Err(Error::Config(format!(
                "unknown algebra `{s}` (expected B, heis, lattice or f)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Int(String),
    Frac(String, String),
    V,
    Q,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gen {
    Z(i64, String),
    Zp(String),
    Zm(String),
    K(Vec<i64>),
    Km(Vec<i64>),
    X(i64, String),
}

impl Gen {
    pub fn allowed_in(&self, target: Target) -> bool {
        match self {
            Gen::Z(..) => target == Target::Lattice,
            Gen::Zp(_) => matches!(target, Target::B | Target::Heis),
            Gen::K(_) => target != Target::F,
            Gen::Zm(_) | Gen::Km(_) => target == Target::Heis,
            Gen::X(..) => target == Target::F,
        }
    }

    pub fn name(&self) -> Option<&str> {
        match self {
            Gen::Z(_, n) | Gen::Zp(n) | Gen::Zm(n) | Gen::X(_, n) => Some(n),
            Gen::K(_) | Gen::Km(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Scalar(Scalar),
    Gen(Gen),
    Paren(Box<Expr>),
    Pow(Box<Expr>, i64),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
}

impl Expr {
    /// Every generator in the tree, left to right.
    pub fn generators(&self) -> Vec<&Gen> {
        let mut out = Vec::new();
        self.walk(&mut |e| {
            if let Expr::Gen(g) = e {
                out.push(g);
            }
        });
        out
    }

    fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Expr)) {
        f(self);
        match self {
            Expr::Scalar(_) | Expr::Gen(_) => {}
            Expr::Paren(x) | Expr::Pow(x, _) | Expr::Neg(x) => x.walk(f),
            Expr::Mul(a, b) | Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.walk(f);
                b.walk(f);
            }
        }
    }
}

fn vector(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Z(m, n) => write!(f, "Z{{{m}}}[{n}]"),
            Gen::Zp(n) => write!(f, "Zp[{n}]"),
            Gen::Zm(n) => write!(f, "Zm[{n}]"),
            Gen::K(v) => write!(f, "K[{}]", vector(v)),
            Gen::Km(v) => write!(f, "Km[{}]", vector(v)),
            Gen::X(m, n) => write!(f, "X{{{m}}}[{n}]"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(n) => f.write_str(n),
            Scalar::Frac(n, d) => write!(f, "{n}/{d}"),
            Scalar::V => f.write_str("v"),
            Scalar::Q => f.write_str("q"),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Scalar(s) => write!(f, "{s}"),
            Expr::Gen(g) => write!(f, "{g}"),
            Expr::Paren(x) => write!(f, "({x})"),
            Expr::Pow(x, n) => write!(f, "{x}^{n}"),
            Expr::Neg(x) => write!(f, "-{x}"),
            Expr::Mul(a, b) => write!(f, "{a} * {b}"),
            Expr::Add(a, b) => write!(f, "{a} + {b}"),
            Expr::Sub(a, b) => write!(f, "{a} - {b}"),
        }
    }
}

/// Parses `src` and checks that every generator belongs to `target`.
pub fn parse_expr(src: &str, target: Target) -> Result<Expr> {
    let e = parse(src)?;
    for g in e.generators() {
        if !g.allowed_in(target) {
            return Err(Error::WrongAlgebra {
                gen: g.to_string(),
                algebra: target.to_string(),
            });
        }
    }
    Ok(e)
}

/// Parses `src` without restricting the generators.
pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser { src, pos: 0 };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty expression"));
    }
    let e = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> Error {
        let found = match self.peek() {
            Some(c) => format!(" near `{c}`"),
            None => " at end of input".into(),
        };
        Error::Parse {
            pos: self.pos,
            msg: format!("{msg}{found}"),
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let neg = self.eat('-');
        let mut lhs = self.factor()?;
        while self.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(if neg { Expr::Neg(Box::new(lhs)) } else { lhs })
    }

    fn factor(&mut self) -> Result<Expr> {
        let atom = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let n = self.int()?;
            return Ok(Expr::Pow(Box::new(atom), n));
        }
        Ok(atom)
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let neg = self.peek() == Some('-');
        if neg {
            self.pos += 1;
            self.skip_ws();
        }
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.error("expected an integer"));
        }
        let text = if neg { format!("-{digits}") } else { digits.to_string() };
        text.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: "integer out of range".into(),
        })
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn atom(&mut self) -> Result<Expr> {
        self.skip_ws();
        let Some(c) = self.peek() else {
            return Err(self.error("expected a scalar, generator or `(`"));
        };
        match c {
            '(' => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(Expr::Paren(Box::new(e)))
            }
            '0'..='9' => {
                let n = self.digits().to_string();
                let save = self.pos;
                self.skip_ws();
                if self.peek() == Some('/') {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.digits();
                    if d.is_empty() {
                        return Err(self.error("expected a denominator"));
                    }
                    if d.bytes().all(|b| b == b'0') {
                        return Err(Error::Parse {
                            pos: self.pos - d.len(),
                            msg: "zero denominator".into(),
                        });
                    }
                    return Ok(Expr::Scalar(Scalar::Frac(n, d.to_string())));
                }
                self.pos = save;
                Ok(Expr::Scalar(Scalar::Int(n)))
            }
            _ if c.is_ascii_alphabetic() => self.word(),
            _ => Err(self.error("expected a scalar, generator or `(`")),
        }
    }

    fn word(&mut self) -> Result<Expr> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        let word = &self.src[start..self.pos];
        let gen = match word {
            "v" => return Ok(Expr::Scalar(Scalar::V)),
            "q" => return Ok(Expr::Scalar(Scalar::Q)),
            "Z" => {
                let m = self.site()?;
                Gen::Z(m, self.name()?)
            }
            "X" => {
                let m = self.site()?;
                Gen::X(m, self.name()?)
            }
            "Zp" => Gen::Zp(self.name()?),
            "Zm" => Gen::Zm(self.name()?),
            "K" => Gen::K(self.k_vector()?),
            "Km" => Gen::Km(self.k_vector()?),
            _ => {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("unknown generator `{word}`"),
                })
            }
        };
        Ok(Expr::Gen(gen))
    }

    fn site(&mut self) -> Result<i64> {
        self.expect('{')?;
        let m = self.int()?;
        self.expect('}')?;
        Ok(m)
    }

    fn name(&mut self) -> Result<String> {
        self.expect('[')?;
        let start = self.pos;
        let Some(len) = self.rest().find(']') else {
            return Err(self.error("unterminated `[`"));
        };
        let name = self.src[start..start + len].trim();
        if name.is_empty() {
            return Err(Error::Parse {
                pos: start,
                msg: "empty object name".into(),
            });
        }
        self.pos = start + len + 1;
        Ok(name.to_string())
    }

    fn k_vector(&mut self) -> Result<Vec<i64>> {
        self.expect('[')?;
        let paren = self.eat('(');
        let mut v = vec![self.int()?];
        while self.eat(',') {
            v.push(self.int()?);
        }
        if paren {
            self.expect(')')?;
        }
        self.expect(']')?;
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_lattice_generators() {
        let e = parse_expr("Z{0}[S1] * Z{0}[S2]", Target::Lattice).unwrap();
        assert_eq!(
            e,
            Expr::Mul(
                Box::new(Expr::Gen(Gen::Z(0, "S1".into()))),
                Box::new(Expr::Gen(Gen::Z(0, "S2".into())))
            )
        );
    }

    #[test]
    fn heis_expression_is_well_formed() {
        let e = parse_expr("K[(1,0)]^-1 * (Zp[S1] + 2*Zm[P])", Target::Heis).unwrap();
        let Expr::Mul(a, b) = &e else { panic!("{e:?}") };
        assert_eq!(**a, Expr::Pow(Box::new(Expr::Gen(Gen::K(vec![1, 0]))), -1));
        assert!(matches!(**b, Expr::Paren(_)));
    }

    #[test]
    fn wrong_algebra() {
        let err = parse_expr("Zp[S1]", Target::Lattice).unwrap_err();
        assert!(matches!(err, Error::WrongAlgebra { .. }), "{err}");
        assert!(parse_expr("X{0}[S1]", Target::Heis).is_err());
        assert!(parse_expr("K[(1,0)]", Target::F).is_err());
    }

    #[test]
    fn errors_carry_positions() {
        let Err(Error::Parse { pos, .. }) = parse("Z{0}[S1] * ") else {
            panic!()
        };
        assert_eq!(pos, 11);
        let Err(Error::Parse { pos, .. }) = parse("Z{x}[S1]") else {
            panic!()
        };
        assert_eq!(pos, 2);
        let Err(Error::Parse { pos, .. }) = parse("(1 + 2") else {
            panic!()
        };
        assert_eq!(pos, 6);
        assert!(parse("").is_err());
        assert!(parse("3/0").is_err());
        assert!(parse("Y[1]").is_err());
    }

    #[test]
    fn whitespace_is_insignificant() {
        let a = parse("Z { -1 } [ S1 ]*K[ ( 1 , -2 ) ]^ 2").unwrap();
        let b = parse("Z{-1}[S1] * K[(1,-2)]^2").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn render_round_trips() {
        for src in [
            "1",
            "3/2 * v^-2 - q",
            "-(Zp[S1] - -Zm[V(1,1)])^3",
            "K[1,0] * Km[(0,-1)]",
            "X{2}[S1^2+S2] + X{-1}[0]",
        ] {
            let e = parse(src).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{src}");
        }
    }
}

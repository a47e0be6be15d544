//! Expression grammar shared by scalar literals and noncommutative polynomial
//! fixtures: `+ - * / ^` with integer exponents, parentheses, integers, `i`,
//! and identifiers (letters, digits, `_`, `'`). `/` binds like `*`; `^` binds
//! tightest and is left of unary minus in `q^-2`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::gaussian::GRat;
use super::grassmann::GScalar;
use super::ratfun::RatFun;
use super::{ParamSig, ScalarError};

#[derive(Debug, Clone, PartialEq)]
pub enum Ast {
    Int(BigInt),
    Imag,
    Ident(String),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, i32),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<Tok>, ScalarError> {
    let mut toks = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' => {
                chars.next();
            }
            '+' => {
                chars.next();
                toks.push(Tok::Plus);
            }
            '-' => {
                chars.next();
                toks.push(Tok::Minus);
            }
            '*' => {
                chars.next();
                toks.push(Tok::Star);
            }
            '/' => {
                chars.next();
                toks.push(Tok::Slash);
            }
            '^' => {
                chars.next();
                toks.push(Tok::Caret);
            }
            '(' => {
                chars.next();
                toks.push(Tok::LParen);
            }
            ')' => {
                chars.next();
                toks.push(Tok::RParen);
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Int(s.parse().unwrap()));
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_alphanumeric() || d == '_' || d == '\'' {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Ident(s));
            }
            other => {
                return Err(ScalarError::Parse(format!("unexpected character `{other}`")));
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), ScalarError> {
        match self.next() {
            Some(found) if found == t => Ok(()),
            other => Err(ScalarError::Parse(format!("expected {:?}, found {:?}", t, other))),
        }
    }

    // sum := product (('+'|'-') product)*
    fn sum(&mut self) -> Result<Ast, ScalarError> {
        let mut lhs = self.product()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    lhs = Ast::Add(Box::new(lhs), Box::new(self.product()?));
                }
                Some(Tok::Minus) => {
                    self.next();
                    lhs = Ast::Sub(Box::new(lhs), Box::new(self.product()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    // product := unary (('*'|'/') unary)*
    fn product(&mut self) -> Result<Ast, ScalarError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    lhs = Ast::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    self.next();
                    lhs = Ast::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    // unary := '-' unary | power
    fn unary(&mut self) -> Result<Ast, ScalarError> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.next();
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    // power := atom ('^' ['-'] int)?
    fn power(&mut self) -> Result<Ast, ScalarError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.next();
            let neg = if matches!(self.peek(), Some(Tok::Minus)) {
                self.next();
                true
            } else {
                false
            };
            match self.next() {
                Some(Tok::Int(n)) => {
                    let e: i32 = n
                        .to_string()
                        .parse()
                        .map_err(|_| ScalarError::Parse("exponent too large".into()))?;
                    return Ok(Ast::Pow(Box::new(base), if neg { -e } else { e }));
                }
                other => {
                    return Err(ScalarError::Parse(format!(
                        "expected integer exponent, found {:?}",
                        other
                    )))
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Ast, ScalarError> {
        match self.next() {
            Some(Tok::Int(n)) => Ok(Ast::Int(n)),
            Some(Tok::Ident(s)) if s == "i" => Ok(Ast::Imag),
            Some(Tok::Ident(s)) => Ok(Ast::Ident(s)),
            Some(Tok::LParen) => {
                let inner = self.sum()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            other => Err(ScalarError::Parse(format!("unexpected token {:?}", other))),
        }
    }
}

pub fn parse_ast(input: &str) -> Result<Ast, ScalarError> {
    let toks = tokenize(input)?;
    let mut p = Parser { toks, pos: 0 };
    let ast = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(ScalarError::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(ast)
}

/// Evaluates an already-parsed expression as a scalar.
pub fn parse_scalar_ast(ast: &Ast, sig: &Arc<ParamSig>) -> Result<GScalar, ScalarError> {
    eval_scalar_ast(ast, sig)
}

fn eval_scalar_ast(ast: &Ast, sig: &Arc<ParamSig>) -> Result<GScalar, ScalarError> {
    match ast {
        Ast::Int(n) => Ok(GScalar::constant(
            sig,
            GRat { re: BigRational::from(n.clone()), im: BigRational::from(BigInt::from(0)) },
        )),
        Ast::Imag => Ok(GScalar::constant(sig, GRat::i())),
        Ast::Ident(name) => {
            if sig.even_index(name).is_some() {
                Ok(GScalar::even_var(sig, name))
            } else if sig.odd_index(name).is_some() {
                Ok(GScalar::odd_var(sig, name))
            } else {
                Err(ScalarError::UnknownParameter(name.clone()))
            }
        }
        Ast::Neg(a) => Ok(eval_scalar_ast(a, sig)?.neg()),
        Ast::Add(a, b) => Ok(eval_scalar_ast(a, sig)?.add(&eval_scalar_ast(b, sig)?)),
        Ast::Sub(a, b) => Ok(eval_scalar_ast(a, sig)?.sub(&eval_scalar_ast(b, sig)?)),
        Ast::Mul(a, b) => Ok(eval_scalar_ast(a, sig)?.mul(&eval_scalar_ast(b, sig)?)),
        Ast::Div(a, b) => {
            let den = eval_scalar_ast(b, sig)?;
            Ok(eval_scalar_ast(a, sig)?.mul(&den.inv()?))
        }
        Ast::Pow(a, e) => {
            let base = eval_scalar_ast(a, sig)?;
            let base = if *e < 0 { base.inv()? } else { base };
            let mut out = GScalar::one(sig);
            for _ in 0..e.unsigned_abs() {
                out = out.mul(&base);
            }
            Ok(out)
        }
    }
}

/// Parses a scalar literal like `q^-2*p + h*h'/(q - 1)`.
pub fn parse_scalar(input: &str, sig: &Arc<ParamSig>) -> Result<GScalar, ScalarError> {
    eval_scalar_ast(&parse_ast(input)?, sig)
}

pub fn parse_ratfun(input: &str, sig: &Arc<ParamSig>) -> Result<RatFun, ScalarError> {
    let s = parse_scalar(input, sig)?;
    if s.comps().any(|(m, _)| *m != 0) {
        return Err(ScalarError::Parse(format!("`{input}` has odd components")));
    }
    Ok(s.body())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Arc<ParamSig> {
        ParamSig::new(&["q", "p"], &["h", "h'"])
    }

    #[test]
    fn literals_round_trip_through_display() {
        let s = sig();
        for text in [
            "q^-2*p + h*h'/(q - 1)",
            "(q - 1)*(p*q - 1)",
            "-h/(q - 1)",
            "1 - q^2 + i*p",
            "p*q/(p*q - 1)*h'",
            "0",
        ] {
            let v = parse_scalar(text, &s).unwrap();
            let reparsed = parse_scalar(&v.to_string(), &s).unwrap();
            assert!(v.eq(&reparsed), "round trip failed for `{text}` -> `{v}`");
        }
    }

    #[test]
    fn division_by_pure_odd_rejected() {
        let s = sig();
        assert!(parse_scalar("q/h", &s).is_err());
        // but division by a unit with nilpotent tail is fine
        let v = parse_scalar("1/(1 + h*h')", &s).unwrap();
        assert!(v.eq(&parse_scalar("1 - h*h'", &s).unwrap()));
    }

    #[test]
    fn exponent_parsing() {
        let s = sig();
        let v = parse_scalar("q^-2", &s).unwrap();
        assert!(v.mul(&parse_scalar("q^2", &s).unwrap()).is_one());
    }
}

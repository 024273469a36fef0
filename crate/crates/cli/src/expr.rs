//! Expression language for elements and forms.
//!
//! ```text
//! sum     := signed (('+' | '-') signed)*
//! signed  := '-' signed | product
//! product := power (('*' | '/\' | '/') power)*
//! power   := atom ('^' '-'? INT)?
//! atom    := INT | 'q' | 'eps' | GENERATOR | 'd' '(' sum ')' | '(' sum ')'
//! ```
//!
//! `*` and `/\` are both the product of forms; `/` divides by a nonzero scalar.

use std::sync::Arc;

use rhoforms::{AlgebraElement, Form, FormSpace, Presentation, Scalar};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Q,
    Eps,
    Gen(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Wedge(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    D(Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Ident(String),
    Sym(&'static str),
    End,
}

struct Parser<'a> {
    text: &'a str,
    pres: &'a Presentation,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

fn syntax(text: &str, offset: usize, expected: &[&str], found: &str) -> CliError {
    let (line, col) = line_col(text, offset);
    CliError::Syntax { line, col, expected: expected.iter().map(|s| s.to_string()).collect(), found: found.into() }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, CliError> {
    let bytes = text.as_bytes();
    let mut out = vec![];
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let v = text[start..i].parse().map_err(|_| syntax(text, start, &["integer"], &text[start..i]))?;
            out.push((Tok::Int(v), start));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
        } else {
            let sym = match c {
                '/' if bytes.get(i + 1) == Some(&b'\\') => "/\\",
                '+' => "+",
                '-' => "-",
                '*' => "*",
                '/' => "/",
                '^' => "^",
                '(' => "(",
                ')' => ")",
                _ => {
                    let ch = &text[i..i + c.len_utf8()];
                    return Err(syntax(text, i, &["operator", "operand"], ch));
                }
            };
            out.push((Tok::Sym(sym), i));
            i += sym.len();
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn found(&self) -> String {
        match self.peek() {
            Tok::Int(v) => v.to_string(),
            Tok::Ident(s) => s.clone(),
            Tok::Sym(s) => s.to_string(),
            Tok::End => "end of input".into(),
        }
    }

    fn eat(&mut self, sym: &str) -> bool {
        if matches!(self.peek(), Tok::Sym(s) if *s == sym) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, sym: &'static str) -> Result<(), CliError> {
        if self.eat(sym) {
            Ok(())
        } else {
            Err(syntax(self.text, self.offset(), &[sym], &self.found()))
        }
    }

    fn sum(&mut self) -> Result<Expr, CliError> {
        let mut e = self.signed()?;
        loop {
            if self.eat("+") {
                e = Expr::Add(Box::new(e), Box::new(self.signed()?));
            } else if self.eat("-") {
                e = Expr::Sub(Box::new(e), Box::new(self.signed()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn signed(&mut self) -> Result<Expr, CliError> {
        if self.eat("-") {
            Ok(Expr::Neg(Box::new(self.signed()?)))
        } else {
            self.product()
        }
    }

    fn product(&mut self) -> Result<Expr, CliError> {
        let mut e = self.power()?;
        loop {
            if self.eat("*") {
                e = Expr::Mul(Box::new(e), Box::new(self.power()?));
            } else if self.eat("/\\") {
                e = Expr::Wedge(Box::new(e), Box::new(self.power()?));
            } else if self.eat("/") {
                e = Expr::Div(Box::new(e), Box::new(self.power()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn power(&mut self) -> Result<Expr, CliError> {
        let base = self.atom()?;
        if !self.eat("^") {
            return Ok(base);
        }
        let negative = self.eat("-");
        match *self.peek() {
            Tok::Int(v) => {
                self.pos += 1;
                Ok(Expr::Pow(Box::new(base), if negative { -v } else { v }))
            }
            _ => Err(syntax(self.text, self.offset(), &["integer exponent"], &self.found())),
        }
    }

    fn atom(&mut self) -> Result<Expr, CliError> {
        let offset = self.offset();
        match self.peek().clone() {
            Tok::Int(v) => {
                self.pos += 1;
                Ok(Expr::Int(v))
            }
            Tok::Sym("(") => {
                self.pos += 1;
                let e = self.sum()?;
                self.expect(")")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.pos += 1;
                match name.as_str() {
                    "q" => Ok(Expr::Q),
                    "eps" => Ok(Expr::Eps),
                    "d" if self.peek() == &Tok::Sym("(") => {
                        self.pos += 1;
                        let e = self.sum()?;
                        self.expect(")")?;
                        Ok(Expr::D(Box::new(e)))
                    }
                    _ => match self.pres.generator_index(&name) {
                        Some(i) => Ok(Expr::Gen(i)),
                        None => {
                            let (line, col) = line_col(self.text, offset);
                            Err(CliError::UnknownGenerator { name, line, col })
                        }
                    },
                }
            }
            _ => Err(syntax(self.text, offset, &["number", "q", "eps", "generator", "d(", "("], &self.found())),
        }
    }
}

pub fn parse_expr(text: &str, pres: &Presentation) -> Result<Expr, CliError> {
    let toks = tokenize(text)?;
    let mut p = Parser { text, pres, toks, pos: 0 };
    let e = p.sum()?;
    if *p.peek() != Tok::End {
        return Err(syntax(text, p.offset(), &["+", "-", "*", "/\\", "/", "^", "end of input"], &p.found()));
    }
    Ok(e)
}

fn scalar_of(w: &Form, what: &str) -> Result<Scalar, CliError> {
    w.as_element()
        .and_then(|u| if u.is_zero() { Some(Scalar::zero()) } else { u.as_scalar() })
        .ok_or_else(|| CliError::domain(rhoforms::Error::InvalidArgument(format!("{what} must be a scalar"))))
}

pub fn eval(e: &Expr, space: &Arc<FormSpace>) -> Result<Form, CliError> {
    let pres = space.presentation();
    let constant = |s: Scalar| Form::from_element(space, &AlgebraElement::scalar(pres, s)).map_err(CliError::domain);
    Ok(match e {
        Expr::Int(v) => constant(Scalar::integer(*v))?,
        Expr::Q => constant(Scalar::q())?,
        Expr::Eps => {
            let n = pres.root_order();
            if n < 2 {
                return Err(CliError::domain(rhoforms::Error::InvalidArgument(format!(
                    "eps is undefined over {}",
                    pres.name()
                ))));
            }
            constant(Scalar::eps(n, 1))?
        }
        Expr::Gen(i) => Form::from_element(space, &AlgebraElement::generator(pres, *i)).map_err(CliError::domain)?,
        Expr::Neg(a) => eval(a, space)?.neg(),
        Expr::Add(a, b) => eval(a, space)?.checked_add(&eval(b, space)?).map_err(CliError::domain)?,
        Expr::Sub(a, b) => eval(a, space)?.checked_sub(&eval(b, space)?).map_err(CliError::domain)?,
        Expr::Mul(a, b) | Expr::Wedge(a, b) => eval(a, space)?.checked_mul(&eval(b, space)?).map_err(CliError::domain)?,
        Expr::Div(a, b) => {
            let s = scalar_of(&eval(b, space)?, "divisor")?;
            let inv = s.inv().map_err(CliError::domain)?;
            eval(a, space)?.scale(&inv)
        }
        Expr::Pow(a, n) => {
            let base = eval(a, space)?;
            if *n < 0 {
                let s = scalar_of(&base, "base of a negative power")?;
                constant(s.pow(*n).map_err(CliError::domain)?)?
            } else {
                let mut acc = Form::one(space);
                for _ in 0..*n {
                    acc = acc.checked_mul(&base).map_err(CliError::domain)?;
                }
                acc
            }
        }
        Expr::D(a) => eval(a, space)?.differential(),
    })
}

/// Parses and evaluates `text` as a form over `space`.
pub fn form(text: &str, space: &Arc<FormSpace>) -> Result<Form, CliError> {
    eval(&parse_expr(text, space.presentation())?, space)
}

/// Parses and evaluates `text` as an element of the algebra.
pub fn element(text: &str, space: &Arc<FormSpace>) -> Result<AlgebraElement, CliError> {
    form(text, space)?.as_element().ok_or_else(|| {
        CliError::domain(rhoforms::Error::DegreeMismatch(format!("'{text}' is not an element of the algebra")))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space() -> Arc<FormSpace> {
        FormSpace::trivial(&Presentation::quantum_plane(2))
    }

    #[test]
    fn precedence() {
        let a = Presentation::quantum_plane(2);
        let e = parse_expr("x1*d(x2) /\\ d(x1)", &a).unwrap();
        let d = |i| Box::new(Expr::D(Box::new(Expr::Gen(i))));
        assert_eq!(e, Expr::Wedge(Box::new(Expr::Mul(Box::new(Expr::Gen(0)), d(1))), d(0)));
        assert_eq!(
            parse_expr("-x1^2 + 1", &a).unwrap(),
            Expr::Add(Box::new(Expr::Neg(Box::new(Expr::Pow(Box::new(Expr::Gen(0)), 2)))), Box::new(Expr::Int(1)))
        );
        assert_eq!(parse_expr("x2*x1", &a).unwrap(), Expr::Mul(Box::new(Expr::Gen(1)), Box::new(Expr::Gen(0))));
    }

    #[test]
    fn errors_carry_positions() {
        let a = Presentation::quantum_plane(2);
        match parse_expr("x3", &a) {
            Err(CliError::UnknownGenerator { name, line: 1, col: 1 }) => assert_eq!(name, "x3"),
            other => panic!("{other:?}"),
        }
        match parse_expr("x1 +\n  * x2", &a) {
            Err(CliError::Syntax { line: 2, col: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_expr("(x1", &a), Err(CliError::Syntax { .. })));
    }

    #[test]
    fn evaluation() {
        let s = space();
        assert_eq!(form("x2*x1", &s).unwrap().to_string(), "q^-1 * x1*x2");
        assert_eq!(form("d(x1*x2) - d(x1)*x2", &s).unwrap(), form("x1*d(x2)", &s).unwrap());
        assert_eq!(form("(1+q)/(1-q) * x1", &s).unwrap().to_string(), "((1+q)/(1-q)) * x1");
        assert_eq!(form("q^-2*q^2", &s).unwrap().to_string(), "1");
        assert!(form("x1/x2", &s).is_err());
        let c = FormSpace::trivial(&Presentation::clock_shift(3).unwrap());
        assert_eq!(form("p*qh - eps*qh*p", &c).unwrap().to_string(), "0");
    }
}

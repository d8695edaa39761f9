//! Evaluator for closed-form table entries such as `(13 - sqrt(13))/26` or
//! `1/4 + (-1)^((p+1)/2)*i/12`.
//!
//! Grammar: `+ - * / ^` with the usual precedence (`^` binds tightest and is
//! right associative), parentheses, numbers, the constants `i`, `pi` and
//! `w = exp(2 pi i/3)`, the variable `p`, and the functions `sqrt`, `exp`
//! and `conj`. Multiplication is always explicit.

use crate::error::{Error, Result};
use crate::scalar::C;

type Complex64 = C<f64>;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let ch = chars[k];
        if ch.is_whitespace() {
            k += 1;
        } else if ch.is_ascii_digit() || ch == '.' {
            let start = k;
            while k < chars.len() && (chars[k].is_ascii_digit() || chars[k] == '.') {
                k += 1;
            }
            let text: String = chars[start..k].iter().collect();
            let x = text
                .parse()
                .map_err(|_| Error::Schema(format!("bad number '{text}' in '{src}'")))?;
            out.push(Tok::Num(x));
        } else if ch.is_ascii_alphabetic() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_alphanumeric() {
                k += 1;
            }
            out.push(Tok::Ident(chars[start..k].iter().collect()));
        } else if "+-*/^()".contains(ch) {
            out.push(Tok::Op(ch));
            k += 1;
        } else {
            return Err(Error::Schema(format!("unexpected '{ch}' in '{src}'")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    p: Option<i64>,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Schema(format!("{msg} in '{}'", self.src))
    }

    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expect(&mut self, op: char) -> Result<()> {
        if self.peek_op() == Some(op) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{op}'")))
        }
    }

    fn sum(&mut self) -> Result<Complex64> {
        let mut acc = self.product()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.product()?;
            acc = if op == '+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Complex64> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if op == '*' { acc * rhs } else { acc / rhs };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Complex64> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Complex64> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            let e = self.unary()?;
            return Ok(pow(base, e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Complex64> {
        let tok = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| self.err("unexpected end"))?;
        self.pos += 1;
        match tok {
            Tok::Num(x) => Ok(Complex64::new(x, 0.0)),
            Tok::Op('(') => {
                let v = self.sum()?;
                self.expect(')')?;
                Ok(v)
            }
            Tok::Op(c) => Err(self.err(&format!("unexpected '{c}'"))),
            Tok::Ident(name) => match name.as_str() {
                "i" => Ok(Complex64::i()),
                "pi" => Ok(Complex64::new(std::f64::consts::PI, 0.0)),
                "w" => Ok(Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0)),
                "p" => self
                    .p
                    .map(|p| Complex64::new(p as f64, 0.0))
                    .ok_or_else(|| self.err("'p' used outside a family row")),
                "sqrt" | "exp" | "conj" => {
                    self.expect('(')?;
                    let arg = self.sum()?;
                    self.expect(')')?;
                    Ok(match name.as_str() {
                        "sqrt" => arg.sqrt(),
                        "exp" => arg.exp(),
                        _ => arg.conj(),
                    })
                }
                other => Err(self.err(&format!("unknown name '{other}'"))),
            },
        }
    }
}

/// Integer exponents are applied by repeated multiplication so that
/// `(-1)^k` and `i^k` stay exact; anything else uses the principal branch.
fn pow(base: Complex64, e: Complex64) -> Complex64 {
    let k = e.re.round();
    if e.im == 0.0 && (e.re - k).abs() < 1e-12 && k.abs() < 1e6 {
        base.powi(k as i32)
    } else {
        base.powc(e)
    }
}

/// Evaluates `src`, substituting `p` when given.
pub fn eval(src: &str, p: Option<i64>) -> Result<Complex64> {
    let mut parser = Parser {
        toks: lex(src)?,
        pos: 0,
        p,
        src,
    };
    let v = parser.sum()?;
    if parser.pos != parser.toks.len() {
        return Err(parser.err("trailing input"));
    }
    Ok(v)
}

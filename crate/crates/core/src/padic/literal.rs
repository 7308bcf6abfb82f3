//! Textual element literals: `p^k * u`, `+ (p^k * u) * sqrt(d)`, `0`, and
//! general arithmetic expressions over integers with `+ - * / ^` and
//! parentheses.

use super::base::Qp;
use super::ext::{PadicE, QpExt};
use super::field::LocalField;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Sqrt(i64),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let txt: String = chars[start..i].iter().collect();
            out.push(Tok::Int(txt.parse().map_err(|_| Error::Parse(format!("integer `{txt}` out of range")))?));
            continue;
        }
        if chars[i..].starts_with(&['s', 'q', 'r', 't', '(']) {
            i += 5;
            let start = i;
            while i < chars.len() && chars[i] != ')' {
                i += 1;
            }
            let txt: String = chars[start..i].iter().collect();
            let d = txt.parse().map_err(|_| Error::Parse(format!("bad sqrt argument `{txt}`")))?;
            out.push(Tok::Sqrt(d));
            i += 1;
            continue;
        }
        if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
            continue;
        }
        return Err(Error::Parse(format!("unexpected character `{c}` in `{s}`")));
    }
    Ok(out)
}

struct Parser<'a, K: LocalField, S> {
    toks: &'a [Tok],
    pos: usize,
    field: &'a K,
    sqrt: S,
}

impl<K: LocalField, S: Fn(i64) -> Result<K::Elem>> Parser<'_, K, S> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<K::Elem> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<K::Elem> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc * self.factor()?;
            } else if self.eat('/') {
                let rhs = self.factor()?;
                acc = self.field.div(&acc, &rhs)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<K::Elem> {
        if self.eat('-') {
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            match self.peek() {
                Some(Tok::Int(n)) => {
                    let n = *n;
                    self.pos += 1;
                    return self.field.pow(&base, if neg { -n } else { n });
                }
                _ => return Err(Error::Parse("exponent must be an integer".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<K::Elem> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(self.field.elem(n))
            }
            Some(Tok::Sqrt(d)) => {
                self.pos += 1;
                (self.sqrt)(d)
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                Ok(v)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

fn parse_with<K: LocalField, S: Fn(i64) -> Result<K::Elem>>(field: &K, s: &str, sqrt: S) -> Result<K::Elem> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty literal".into()));
    }
    let mut p = Parser { toks: &toks, pos: 0, field, sqrt };
    let v = p.expr()?;
    if p.pos != toks.len() {
        return Err(Error::Parse(format!("trailing input in `{s}`")));
    }
    Ok(v)
}

pub fn parse_base(field: &Qp, s: &str) -> Result<super::base::PadicF> {
    parse_with(field, s, |_| Err(Error::Parse("sqrt(...) needs an extension field".into())))
}

pub fn parse_ext(ext: &QpExt, s: &str) -> Result<PadicE> {
    parse_with(ext, s, |d| {
        if d == ext.d() {
            Ok(ext.sqrt_d())
        } else {
            Err(Error::Parse(format!("sqrt({d}) does not match the extension sqrt({})", ext.d())))
        }
    })
}

/// Splits on a separator that is not nested inside parentheses.
pub fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_literals() {
        let f = Qp::new(3, 24).unwrap();
        assert_eq!(parse_base(&f, "3^2 * -2").unwrap(), f.elem(-18));
        assert_eq!(parse_base(&f, "1/5").unwrap(), f.ratio(1, 5).unwrap());
        assert_eq!(parse_base(&f, "3^-2 * 4").unwrap(), f.ratio(4, 9).unwrap());
        assert!(parse_base(&f, "0").unwrap().is_zero());
        assert!(parse_base(&f, "sqrt(2)").is_err());
        assert!(parse_base(&f, "1/0").is_err());
    }

    #[test]
    fn display_round_trip() {
        let e = QpExt::new(Qp::new(2, 24).unwrap(), -1).unwrap();
        let x = e.elem(12) + e.sqrt_d().scale(e.base().ratio(-3, 8).unwrap());
        let txt = x.to_string();
        assert_eq!(parse_ext(&e, &txt).unwrap(), x);
        assert!(parse_ext(&e, "sqrt(5)").is_err());
    }

    #[test]
    fn top_level_split() {
        assert_eq!(split_top("1,(2,3);4", ';'), vec!["1,(2,3)", "4"]);
    }
}

//! Ring expressions: `+ - * ^`, parentheses, integers, `#code` for a raw field
//! element, and named elements. Names are matched longest first, so a basis
//! element called `d_g^2` wins over `d_g` followed by `^2`.

use grpscheme::scalars::{CommRing, Elem};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExprError {
    #[error("unknown symbol at `{0}`")]
    Unknown(String),
    #[error("unexpected end of expression")]
    End,
    #[error("unexpected `{0}`")]
    Unexpected(String),
    #[error("bad number `{0}`")]
    Number(String),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(u64),
    Code(Elem),
    Name(usize),
    Op(char),
}

fn tokenize(src: &str, names: &[&str]) -> Result<Vec<Tok>, ExprError> {
    let mut order: Vec<usize> = (0..names.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(names[i].len()));
    let mut out = Vec::new();
    let mut rest = src;
    while let Some(c) = rest.chars().next() {
        if c.is_whitespace() {
            rest = &rest[c.len_utf8()..];
        } else if c.is_ascii_digit() {
            let end = rest.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(rest.len());
            out.push(Tok::Num(rest[..end].parse().map_err(|_| ExprError::Number(rest[..end].into()))?));
            rest = &rest[end..];
        } else if c == '#' {
            let body = &rest[1..];
            let end = body.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(body.len());
            out.push(Tok::Code(body[..end].parse().map_err(|_| ExprError::Number(rest.into()))?));
            rest = &body[end..];
        } else if let Some(&i) = order.iter().find(|&&i| !names[i].is_empty() && rest.starts_with(names[i])) {
            out.push(Tok::Name(i));
            rest = &rest[names[i].len()..];
        } else if "+-*^()".contains(c) {
            out.push(Tok::Op(c));
            rest = &rest[1..];
        } else {
            return Err(ExprError::Unknown(rest.into()));
        }
    }
    Ok(out)
}

struct Parser<'a, R: CommRing> {
    ring: &'a R,
    values: &'a [R::E],
    toks: Vec<Tok>,
    pos: usize,
}

impl<R: CommRing> Parser<'_, R> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn sum(&mut self) -> Result<R::E, ExprError> {
        let mut acc = match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                let t = self.term()?;
                self.ring.neg(&t)
            }
            _ => self.term()?,
        };
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { self.ring.add(&acc, &t) } else { self.ring.sub(&acc, &t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<R::E, ExprError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = self.ring.mul(&acc, &f);
                }
                Some(Tok::Num(_) | Tok::Code(_) | Tok::Name(_) | Tok::Op('(')) => {
                    let f = self.power()?;
                    acc = self.ring.mul(&acc, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<R::E, ExprError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            match self.next() {
                Some(Tok::Num(e)) => Ok(self.ring.pow(&base, e)),
                Some(t) => Err(ExprError::Unexpected(format!("{t:?}"))),
                None => Err(ExprError::End),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<R::E, ExprError> {
        let f = self.ring.field();
        match self.next() {
            Some(Tok::Num(n)) => Ok(self.ring.from_scalar(f.from_int((n % f.p() as u64) as i64))),
            Some(Tok::Code(c)) if c < f.order() => Ok(self.ring.from_scalar(c)),
            Some(Tok::Code(c)) => Err(ExprError::Number(format!("#{c}"))),
            Some(Tok::Name(i)) => Ok(self.values[i].clone()),
            Some(Tok::Op('(')) => {
                let v = self.sum()?;
                match self.next() {
                    Some(Tok::Op(')')) => Ok(v),
                    Some(t) => Err(ExprError::Unexpected(format!("{t:?}"))),
                    None => Err(ExprError::End),
                }
            }
            Some(Tok::Op('-')) => {
                let v = self.power()?;
                Ok(self.ring.neg(&v))
            }
            Some(t) => Err(ExprError::Unexpected(format!("{t:?}"))),
            None => Err(ExprError::End),
        }
    }
}

/// Evaluates `src` in `ring`; `names[i]` denotes `values[i]`.
pub fn parse<R: CommRing>(ring: &R, names: &[&str], values: &[R::E], src: &str) -> Result<R::E, ExprError> {
    let toks = tokenize(src, names)?;
    if toks.is_empty() {
        return Err(ExprError::End);
    }
    let mut p = Parser { ring, values, toks, pos: 0 };
    let v = p.sum()?;
    match p.next() {
        None => Ok(v),
        Some(t) => Err(ExprError::Unexpected(format!("{t:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use grpscheme::scalars::{Field, Mono, PolyRing};

    fn ring() -> PolyRing {
        PolyRing::new(Field::prime(3).unwrap(), vec!["x".into(), "y".into()], None).unwrap()
    }

    #[test]
    fn arithmetic() {
        let r = ring();
        let vals = [r.var(0), r.var(1)];
        let e = parse(&r, &["x", "y"], &vals, "(x + 2y)^2 - x*x").unwrap();
        let expected = r.add(&r.scale(1, &r.monomial(vec![1, 1], 1)), &r.monomial(vec![0, 2], 1));
        assert_eq!(e, expected);
        assert_eq!(parse(&r, &["x", "y"], &vals, "-x + x").unwrap(), r.zero());
        assert_eq!(parse(&r, &["x"], &vals[..1], "4").unwrap(), r.one());
    }

    #[test]
    fn longest_name_wins() {
        let r = ring();
        let vals = [r.var(0), r.var(1)];
        let e = parse(&r, &["x", "x^2"], &vals, "x^2").unwrap();
        assert_eq!(e, r.var(1));
        let sq = parse(&r, &["x"], &vals[..1], "x^2").unwrap();
        assert_eq!(sq.keys().next(), Some(&Mono(vec![2, 0])));
    }

    #[test]
    fn errors() {
        let r = ring();
        let vals = [r.var(0)];
        assert!(matches!(parse(&r, &["x"], &vals, "z"), Err(ExprError::Unknown(_))));
        assert_eq!(parse(&r, &["x"], &vals, "(x"), Err(ExprError::End));
        assert_eq!(parse(&r, &["x"], &vals, ""), Err(ExprError::End));
        assert!(matches!(parse(&r, &["x"], &vals, "#9"), Err(ExprError::Number(_))));
    }
}

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};

use super::field::{Elem, Field};
use super::ring::CommRing;

/// Exponent vector ordered graded-lexicographically (total degree first,
/// then the first variable dominates).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
    fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial: nonzero coefficients keyed by exponent vector.
pub type Poly = BTreeMap<Mono, Elem>;

/// `k[x_1..x_r]`, optionally modulo `x_i^{e_i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing {
    field: Field,
    vars: Vec<String>,
    trunc: Option<Vec<u32>>,
}

impl PolyRing {
    pub fn new(field: Field, vars: Vec<String>, trunc: Option<Vec<u32>>) -> Result<PolyRing> {
        if let Some(t) = &trunc {
            if t.len() != vars.len() || t.contains(&0) {
                return Err(Error::DimensionMismatch("truncation exponents".into()));
            }
        }
        Ok(PolyRing { field, vars, trunc })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }
    pub fn truncation(&self) -> Option<&[u32]> {
        self.trunc.as_deref()
    }

    pub fn var(&self, i: usize) -> Poly {
        let mut e = vec![0; self.nvars()];
        e[i] = 1;
        self.monomial(e, 1)
    }

    /// `c * x^e`, zero when the truncation kills it.
    pub fn monomial(&self, e: Vec<u32>, c: Elem) -> Poly {
        let mut p = Poly::new();
        if c != 0 && !self.killed(&e) {
            p.insert(Mono(e), c);
        }
        p
    }

    fn killed(&self, e: &[u32]) -> bool {
        self.trunc.as_ref().is_some_and(|t| e.iter().zip(t).any(|(a, b)| a >= b))
    }

    pub fn degree(&self, a: &Poly) -> Option<u32> {
        a.keys().map(Mono::degree).max()
    }

    /// All monomials of total degree at most `d`, in graded-lex order.
    pub fn monomials_up_to(&self, d: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut cur = vec![0; self.nvars()];
        fn rec(ring: &PolyRing, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if i == cur.len() {
                if !ring.killed(cur) {
                    out.push(cur.clone());
                }
                return;
            }
            for e in 0..=left {
                cur[i] = e;
                rec(ring, i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        rec(self, 0, d, &mut cur, &mut out);
        out.sort_by(|a, b| Mono(a.clone()).cmp(&Mono(b.clone())));
        out
    }

    /// Substitution homomorphism into any commutative ring.
    pub fn eval<R: CommRing>(&self, a: &Poly, target: &R, images: &[R::E]) -> R::E {
        assert_eq!(images.len(), self.nvars(), "one image per variable");
        let mut powers: Vec<Vec<R::E>> = images.iter().map(|_| vec![target.one()]).collect();
        for m in a.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = target.mul(powers[i].last().expect("nonempty"), &images[i]);
                    powers[i].push(next);
                }
            }
        }
        let mut acc = target.zero();
        for (m, &c) in a {
            let mut t: Option<R::E> = None;
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let p = &powers[i][e as usize];
                    t = Some(match t {
                        None => p.clone(),
                        Some(t) => target.mul(&t, p),
                    });
                }
            }
            let t = t.unwrap_or_else(|| target.one());
            target.add_assign(&mut acc, &target.scale(c, &t));
        }
        acc
    }

    /// Exact quotient `a / b`, or `None` when `b` does not divide `a`.
    /// Only meaningful without truncation.
    pub fn div_exact(&self, a: &Poly, b: &Poly) -> Option<Poly> {
        let f = &self.field;
        let (lm, &lc) = b.iter().next_back()?;
        let lc_inv = f.inv(lc);
        let mut rem = a.clone();
        let mut quot = Poly::new();
        while let Some((m, &c)) = rem.iter().next_back() {
            if !lm.divides(m) {
                return None;
            }
            let e: Vec<u32> = m.0.iter().zip(&lm.0).map(|(x, y)| x - y).collect();
            let t = self.monomial(e, f.mul(c, lc_inv));
            rem = self.sub(&rem, &self.mul(&t, b));
            quot = self.add(&quot, &t);
        }
        Some(quot)
    }

    pub fn format(&self, a: &Poly) -> String {
        if a.is_empty() {
            return "0".into();
        }
        let f = &self.field;
        let mut parts = Vec::new();
        for (m, &c) in a.iter().rev() {
            let mut factors = Vec::new();
            for (name, &e) in self.vars.iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            let mono = factors.join("*");
            parts.push(match (c, mono.is_empty()) {
                (_, true) => f.format(c),
                (1, false) => mono,
                _ => format!("{}*{}", f.format(c), mono),
            });
        }
        parts.join(" + ")
    }

    pub fn base_change(&self, field: &Field) -> Result<PolyRing> {
        if !self.field.embeds_in(field) {
            return Err(Error::InvalidField("target field does not contain the base field".into()));
        }
        Ok(PolyRing { field: field.clone(), ..self.clone() })
    }
}

impl CommRing for PolyRing {
    type E = Poly;

    fn field(&self) -> &Field {
        &self.field
    }
    fn zero(&self) -> Poly {
        Poly::new()
    }
    fn one(&self) -> Poly {
        self.monomial(vec![0; self.nvars()], 1)
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = a.clone();
        self.add_assign(&mut out, b);
        out
    }
    fn add_assign(&self, a: &mut Poly, b: &Poly) {
        for (m, &c) in b {
            let e = a.entry(m.clone()).or_insert(0);
            *e = self.field.add(*e, c);
            if *e == 0 {
                a.remove(m);
            }
        }
    }
    fn neg(&self, a: &Poly) -> Poly {
        a.iter().map(|(m, &c)| (m.clone(), self.field.neg(c))).collect()
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let f = &self.field;
        let mut out = Poly::new();
        for (ma, &ca) in a {
            for (mb, &cb) in b {
                let e: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect();
                if self.killed(&e) {
                    continue;
                }
                let slot = out.entry(Mono(e)).or_insert(0);
                *slot = f.add(*slot, f.mul(ca, cb));
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }
    fn scale(&self, c: Elem, a: &Poly) -> Poly {
        if c == 0 {
            return Poly::new();
        }
        a.iter().map(|(m, &x)| (m.clone(), self.field.mul(c, x))).collect()
    }
    fn is_zero(&self, a: &Poly) -> bool {
        a.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncation_kills_powers() {
        let r = PolyRing::new(Field::prime(3).unwrap(), vec!["x".into(), "y".into()], Some(vec![3, 2])).unwrap();
        let x = r.var(0);
        assert!(!r.is_zero(&r.pow(&x, 2)));
        assert!(r.is_zero(&r.pow(&x, 3)));
        let y = r.var(1);
        assert!(r.is_zero(&r.mul(&y, &y)));
    }

    #[test]
    fn grlex_printing() {
        let r = PolyRing::new(Field::prime(5).unwrap(), vec!["x".into(), "y".into()], None).unwrap();
        let p = r.add(&r.add(&r.var(1), &r.pow(&r.var(0), 2)), &r.scale(2, &r.one()));
        assert_eq!(r.format(&p), "x^2 + y + 2");
    }

    #[test]
    fn exact_division() {
        let r = PolyRing::new(Field::prime(2).unwrap(), vec!["x".into(), "y".into()], None).unwrap();
        let (x, y) = (r.var(0), r.var(1));
        let a = r.add(&x, &y);
        let prod = r.mul(&a, &r.mul(&x, &a));
        assert_eq!(r.div_exact(&prod, &a).unwrap(), r.mul(&x, &a));
        assert!(r.div_exact(&x, &y).is_none());
    }

    #[test]
    fn monomial_enumeration() {
        let r = PolyRing::new(Field::prime(2).unwrap(), vec!["x".into(), "y".into()], None).unwrap();
        assert_eq!(r.monomials_up_to(2).len(), 6);
        assert_eq!(r.monomials_up_to(2)[0], vec![0, 0]);
    }
}

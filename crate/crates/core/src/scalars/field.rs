//! Finite fields `F_p` and `F_{p^m}`.
//!
//! Elements are encoded as integers `c_0 + c_1 p + ... + c_{m-1} p^{m-1}` where
//! `c_i` is the coefficient of `t^i` in `F_p[t]/(modulus)`. With this encoding the
//! prime field `F_p` sits inside every `F_{p^m}` as the codes `0..p`, so base
//! change from `F_p` to an extension is the identity on element codes.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A field element, encoded as described in the module docs.
pub type Elem = u32;

/// Descriptor of a finite field: characteristic, degree and defining polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldDesc {
    pub p: u32,
    pub m: u32,
    /// Monic irreducible polynomial of degree `m`, coefficients low to high.
    pub modulus: Vec<u32>,
}

#[derive(Debug)]
enum Arith {
    Prime,
    Table { add: Vec<Elem>, mul: Vec<Elem>, neg: Vec<Elem>, inv: Vec<Elem> },
}

#[derive(Debug)]
struct Inner {
    desc: FieldDesc,
    q: u32,
    arith: Arith,
}

/// A finite field with precomputed arithmetic. Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.desc == other.0.desc
    }
}
impl Eq for Field {}

/// Built-in moduli (Conway polynomials) for `p in {2,3,5}`, `m <= 4`.
pub fn builtin_modulus(p: u32, m: u32) -> Option<Vec<u32>> {
    let v: &[u32] = match (p, m) {
        (_, 1) => return Some(vec![0, 1]),
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 1, 0, 1],
        (2, 4) => &[1, 1, 0, 0, 1],
        (3, 2) => &[2, 2, 1],
        (3, 3) => &[1, 2, 0, 1],
        (3, 4) => &[2, 0, 0, 2, 1],
        (5, 2) => &[2, 4, 1],
        (5, 3) => &[3, 3, 0, 1],
        (5, 4) => &[2, 4, 4, 0, 1],
        _ => return None,
    };
    Some(v.to_vec())
}

pub(crate) fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

// Dense polynomial helpers over F_p, coefficients low to high.
fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = poly_trim(a.to_vec());
    let b = poly_trim(b.to_vec());
    let db = b.len() - 1;
    let lead_inv = pow_mod(b[db], p - 2, p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * bi % p) % p;
        }
        r = poly_trim(r);
    }
    r
}

fn pow_mod(mut b: u32, mut e: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = b as u64 % p as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    b = acc as u32;
    b
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let f = poly_trim(modulus.to_vec());
    if f.len() < 2 {
        return false;
    }
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                g.push((c % p as u64) as u32);
                c /= p as u64;
            }
            g.push(1);
            if poly_rem(&f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1, None)
    }

    /// `F_{p^m}`; the modulus defaults to the built-in table.
    pub fn new(p: u32, m: u32, modulus: Option<Vec<u32>>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(Error::InvalidField("extension degree must be >= 1".into()));
        }
        let modulus = match modulus {
            Some(v) => v,
            None => builtin_modulus(p, m)
                .ok_or_else(|| Error::InvalidField(format!("no built-in modulus for p={p}, m={m}")))?,
        };
        let modulus = poly_trim(modulus);
        if modulus.len() != m as usize + 1 || modulus[m as usize] != 1 {
            return Err(Error::InvalidField(format!("modulus must be monic of degree {m}")));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus coefficients must lie in [0,p)".into()));
        }
        if m > 1 && !is_irreducible(&modulus, p) {
            return Err(Error::InvalidField("modulus is reducible".into()));
        }
        let q = p
            .checked_pow(m)
            .filter(|&q| q <= 1 << 10)
            .ok_or_else(|| Error::InvalidField(format!("field of order {p}^{m} is too large")))?;
        let desc = FieldDesc { p, m, modulus };
        let arith = if m == 1 { Arith::Prime } else { build_tables(&desc, q) };
        Ok(Field(Arc::new(Inner { desc, q, arith })))
    }

    pub fn desc(&self) -> &FieldDesc {
        &self.0.desc
    }
    pub fn p(&self) -> u32 {
        self.0.desc.p
    }
    pub fn degree(&self) -> u32 {
        self.0.desc.m
    }
    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// True when `other` contains `self` via the code-preserving embedding
    /// (i.e. `self` is the prime field of `other`, or they are equal).
    pub fn embeds_in(&self, other: &Field) -> bool {
        self == other || (self.degree() == 1 && self.p() == other.p())
    }

    /// True when `a` lies in the prime field.
    pub fn in_prime_field(&self, a: Elem) -> bool {
        a < self.p()
    }

    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.p() as i64) as Elem
    }

    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        let p = self.p();
        let mut c = a;
        (0..self.degree())
            .map(|_| {
                let r = c % p;
                c /= p;
                r
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() > self.degree() as usize || coeffs.iter().any(|&c| c >= self.p()) {
            return Err(Error::InvalidField(format!("bad coefficient list {coeffs:?}")));
        }
        Ok(coeffs.iter().rev().fold(0, |acc, &c| acc * self.p() + c))
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.arith {
            Arith::Prime => {
                let s = a + b;
                let p = self.0.desc.p;
                if s >= p {
                    s - p
                } else {
                    s
                }
            }
            Arith::Table { add, .. } => add[(a * self.0.q + b) as usize],
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match &self.0.arith {
            Arith::Prime => {
                if a == 0 {
                    0
                } else {
                    self.0.desc.p - a
                }
            }
            Arith::Table { neg, .. } => neg[a as usize],
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.arith {
            Arith::Prime => a * b % self.0.desc.p,
            Arith::Table { mul, .. } => mul[(a * self.0.q + b) as usize],
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(a != 0, "inverse of zero");
        match &self.0.arith {
            Arith::Prime => pow_mod(a, self.0.desc.p - 2, self.0.desc.p),
            Arith::Table { inv, .. } => inv[a as usize],
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut acc = 1;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Frobenius `x -> x^p`.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.p() as u64)
    }

    /// `dst += c * src`, the hot loop of elimination.
    #[inline]
    pub fn axpy(&self, dst: &mut [Elem], c: Elem, src: &[Elem]) {
        if c == 0 {
            return;
        }
        match &self.0.arith {
            Arith::Prime => {
                let p = self.0.desc.p;
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d = (*d + c * s) % p;
                }
            }
            Arith::Table { add, mul, .. } => {
                let q = self.0.q;
                let row = &mul[(c * q) as usize..((c + 1) * q) as usize];
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d = add[(*d * q + row[s as usize]) as usize];
                }
            }
        }
    }

    /// `v *= c`.
    pub fn scale_in_place(&self, v: &mut [Elem], c: Elem) {
        for x in v.iter_mut() {
            *x = self.mul(*x, c);
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.0.q
    }

    /// Human-readable form: residue for prime fields, polynomial in `t` otherwise.
    pub fn format(&self, a: Elem) -> String {
        if self.degree() == 1 {
            return a.to_string();
        }
        let cs = self.coeffs(a);
        let terms: Vec<String> = cs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "t".into(),
                (1, c) => format!("{c}t"),
                (i, 1) => format!("t^{i}"),
                (i, c) => format!("{c}t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

fn build_tables(desc: &FieldDesc, q: u32) -> Arith {
    let p = desc.p;
    let m = desc.m as usize;
    let qs = q as usize;
    let decode = |a: u32| -> Vec<u32> {
        let mut c = a;
        (0..m)
            .map(|_| {
                let r = c % p;
                c /= p;
                r
            })
            .collect()
    };
    let encode = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &c| acc * p + c) };
    let mut add = vec![0; qs * qs];
    let mut mul = vec![0; qs * qs];
    for a in 0..q {
        let ca = decode(a);
        for b in 0..q {
            let cb = decode(b);
            let sum: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
            add[(a * q + b) as usize] = encode(&sum);
            let mut prod = vec![0u32; 2 * m];
            for (i, x) in ca.iter().enumerate() {
                for (j, y) in cb.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let mut r = poly_rem(&prod, &desc.modulus, p);
            r.resize(m, 0);
            mul[(a * q + b) as usize] = encode(&r);
        }
    }
    let mut neg = vec![0; qs];
    let mut inv = vec![0; qs];
    for a in 0..q {
        for b in 0..q {
            if add[(a * q + b) as usize] == 0 {
                neg[a as usize] = b;
            }
            if mul[(a * q + b) as usize] == 1 {
                inv[a as usize] = b;
            }
        }
    }
    Arith::Table { add, mul, neg, inv }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_moduli_are_irreducible() {
        for p in [2, 3, 5] {
            for m in 2..=4 {
                let f = builtin_modulus(p, m).unwrap();
                assert!(is_irreducible(&f, p), "p={p} m={m}");
            }
        }
        assert!(!is_irreducible(&[1, 0, 1], 2)); // x^2+1 = (x+1)^2
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Field::prime(4).is_err());
        assert!(Field::new(2, 2, Some(vec![1, 0, 1])).is_err());
        assert!(Field::new(7, 3, None).is_err());
    }

    #[test]
    fn f4_arithmetic() {
        let f = Field::new(2, 2, None).unwrap();
        // t^2 = t + 1
        let t = 2;
        assert_eq!(f.mul(t, t), 3);
        assert_eq!(f.mul(t, f.mul(t, t)), 1);
        assert_eq!(f.inv(t), 3);
        assert_eq!(f.from_coeffs(&[1, 1]).unwrap(), 3);
        assert_eq!(f.coeffs(3), vec![1, 1]);
    }

    #[test]
    fn prime_subfield_codes_agree() {
        let f3 = Field::prime(3).unwrap();
        let f9 = Field::new(3, 2, None).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(f3.mul(a, b), f9.mul(a, b));
                assert_eq!(f3.add(a, b), f9.add(a, b));
            }
        }
    }

    #[test]
    fn frobenius_fixes_exactly_prime_field() {
        for (p, m) in [(2, 2), (3, 2), (2, 3), (5, 2)] {
            let f = Field::new(p, m, None).unwrap();
            let fixed: Vec<_> = f.elements().filter(|&a| f.frobenius(a) == a).collect();
            assert_eq!(fixed, (0..p).collect::<Vec<_>>());
        }
    }
}

use std::fmt::Debug;

use super::field::{Elem, Field};

/// A commutative ring that is also an algebra over a finite field.
pub trait CommRing {
    type E: Clone + PartialEq + Debug;

    fn field(&self) -> &Field;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn scale(&self, c: Elem, a: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;

    /// `a += b` without cloning `a`.
    fn add_assign(&self, a: &mut Self::E, b: &Self::E) {
        *a = self.add(a, b);
    }

    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.add(a, &self.neg(b))
    }

    fn from_scalar(&self, c: Elem) -> Self::E {
        self.scale(c, &self.one())
    }

    fn pow(&self, a: &Self::E, mut e: u64) -> Self::E {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn product<'a, I>(&self, items: I) -> Self::E
    where
        I: IntoIterator<Item = &'a Self::E>,
        Self::E: 'a,
    {
        items.into_iter().fold(self.one(), |acc, x| self.mul(&acc, x))
    }

    fn sum<'a, I>(&self, items: I) -> Self::E
    where
        I: IntoIterator<Item = &'a Self::E>,
        Self::E: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

impl CommRing for Field {
    type E = Elem;

    fn field(&self) -> &Field {
        self
    }
    fn zero(&self) -> Elem {
        0
    }
    fn one(&self) -> Elem {
        1
    }
    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        Field::add(self, *a, *b)
    }
    fn neg(&self, a: &Elem) -> Elem {
        Field::neg(self, *a)
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        Field::mul(self, *a, *b)
    }
    fn scale(&self, c: Elem, a: &Elem) -> Elem {
        Field::mul(self, c, *a)
    }
    fn is_zero(&self, a: &Elem) -> bool {
        *a == 0
    }
}

//! Determinants over commutative rings.
//!
//! [`berkowitz_det`] uses no division and is valid in rings with zero divisors
//! such as truncated polynomial algebras. [`bareiss_det`] needs exact division
//! and is used for polynomial rings without truncation.

use super::poly::{Poly, PolyRing};
use super::ring::CommRing;

/// Square matrix with entries in a ring, row-major.
pub type RingMatrix<E> = Vec<Vec<E>>;

/// Characteristic polynomial coefficients of `a`, highest degree first:
/// `det(t I - a) = Σ c[i] t^{n-i}`.
pub fn berkowitz_charpoly<R: CommRing>(ring: &R, a: &RingMatrix<R::E>) -> Vec<R::E> {
    let n = a.len();
    let mut p = vec![ring.one()];
    for r in 1..=n {
        let k = r - 1;
        let diag = &a[k][k];
        // column entries of the Toeplitz matrix
        let mut col = vec![ring.one(), ring.neg(diag)];
        // c = a[0..k][k], row = a[k][0..k], m = leading k x k block
        let mut v: Vec<R::E> = (0..k).map(|i| a[i][k].clone()).collect();
        for _ in 0..k {
            let rv = ring.sum((0..k).map(|j| ring.mul(&a[k][j], &v[j])).collect::<Vec<_>>().iter());
            col.push(ring.neg(&rv));
            v = (0..k)
                .map(|i| ring.sum((0..k).map(|j| ring.mul(&a[i][j], &v[j])).collect::<Vec<_>>().iter()))
                .collect();
        }
        let mut next = Vec::with_capacity(r + 1);
        for i in 0..=r {
            let mut acc = ring.zero();
            for (j, pj) in p.iter().enumerate().take(i.min(r - 1) + 1) {
                if i >= j && i - j < col.len() {
                    acc = ring.add(&acc, &ring.mul(&col[i - j], pj));
                }
            }
            next.push(acc);
        }
        p = next;
    }
    p
}

/// Division-free determinant.
pub fn berkowitz_det<R: CommRing>(ring: &R, a: &RingMatrix<R::E>) -> R::E {
    let n = a.len();
    let cp = berkowitz_charpoly(ring, a);
    if n % 2 == 0 {
        cp[n].clone()
    } else {
        ring.neg(&cp[n])
    }
}

/// Fraction-free elimination. `div` must return the exact quotient; `None`
/// from it aborts with `None`.
pub fn bareiss_det<R, D>(ring: &R, a: &RingMatrix<R::E>, div: D) -> Option<R::E>
where
    R: CommRing,
    D: Fn(&R::E, &R::E) -> Option<R::E>,
{
    let n = a.len();
    if n == 0 {
        return Some(ring.one());
    }
    let mut m = a.clone();
    let mut sign_neg = false;
    let mut prev = ring.one();
    for k in 0..n - 1 {
        if ring.is_zero(&m[k][k]) {
            let swap = (k + 1..n).find(|&i| !ring.is_zero(&m[i][k]));
            match swap {
                Some(i) => {
                    m.swap(i, k);
                    sign_neg = !sign_neg;
                }
                None => return Some(ring.zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = ring.sub(&ring.mul(&m[i][j], &m[k][k]), &ring.mul(&m[i][k], &m[k][j]));
                m[i][j] = div(&num, &prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Some(if sign_neg { ring.neg(&d) } else { d })
}

/// Determinant of a polynomial matrix: Bareiss without truncation, Berkowitz otherwise.
pub fn poly_det(ring: &PolyRing, a: &RingMatrix<Poly>) -> Poly {
    if ring.truncation().is_none() {
        if let Some(d) = bareiss_det(ring, a, |x, y| ring.div_exact(x, y)) {
            return d;
        }
    }
    berkowitz_det(ring, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::field::Field;
    use crate::scalars::linalg;
    use crate::scalars::matrix::Matrix;

    fn cofactor<R: CommRing>(ring: &R, a: &RingMatrix<R::E>) -> R::E {
        let n = a.len();
        if n == 0 {
            return ring.one();
        }
        let mut acc = ring.zero();
        for j in 0..n {
            let minor: RingMatrix<R::E> =
                (1..n).map(|i| (0..n).filter(|&c| c != j).map(|c| a[i][c].clone()).collect()).collect();
            let t = ring.mul(&a[0][j], &cofactor(ring, &minor));
            acc = if j % 2 == 0 { ring.add(&acc, &t) } else { ring.sub(&acc, &t) };
        }
        acc
    }

    #[test]
    fn berkowitz_matches_elimination_over_field() {
        let f = Field::prime(7).unwrap();
        let rows = vec![vec![1, 2, 3, 4], vec![0, 5, 6, 1], vec![2, 2, 0, 3], vec![6, 1, 1, 1]];
        let d = berkowitz_det(&f, &rows);
        assert_eq!(d, linalg::det(&Matrix::from_rows(&rows), &f));
        assert_eq!(d, cofactor(&f, &rows));
    }

    #[test]
    fn polynomial_determinants_agree() {
        let f = Field::prime(3).unwrap();
        let r = PolyRing::new(f, vec!["x".into(), "y".into()], None).unwrap();
        let (x, y) = (r.var(0), r.var(1));
        let one = r.one();
        let a = vec![
            vec![x.clone(), y.clone(), one.clone()],
            vec![r.add(&x, &one), r.mul(&x, &y), r.zero()],
            vec![y.clone(), one.clone(), r.pow(&x, 2)],
        ];
        let c = cofactor(&r, &a);
        assert_eq!(berkowitz_det(&r, &a), c);
        assert_eq!(poly_det(&r, &a), c);
    }

    #[test]
    fn truncated_ring_uses_division_free_path() {
        let f = Field::prime(2).unwrap();
        let r = PolyRing::new(f, vec!["v".into()], Some(vec![2])).unwrap();
        let v = r.var(0);
        let a = vec![vec![v.clone(), r.one()], vec![r.one(), v.clone()]];
        assert_eq!(poly_det(&r, &a), r.one());
    }
}

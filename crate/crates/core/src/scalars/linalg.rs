//! Exact dense linear algebra: reduced row echelon form, kernels, affine solves.
//!
//! Pivoting is leftmost column, first nonzero row, so all outputs are
//! deterministic functions of the input.

use super::field::{Elem, Field};
use super::matrix::Matrix;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref_in_place(m: &mut Matrix, f: &Field) -> Vec<usize> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    let mut scratch = vec![0; cols];
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m.get(i, c) != 0) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                let (a, b) = (m.get(r, j), m.get(pr, j));
                m.set(r, j, b);
                m.set(pr, j, a);
            }
        }
        let inv = f.inv(m.get(r, c));
        f.scale_in_place(m.row_mut(r), inv);
        scratch.copy_from_slice(m.row(r));
        for i in 0..rows {
            if i != r {
                let x = m.get(i, c);
                if x != 0 {
                    f.axpy(&mut m.row_mut(i)[c..], f.neg(x), &scratch[c..]);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &Matrix, f: &Field) -> (Matrix, Vec<usize>) {
    let mut out = m.clone();
    let piv = rref_in_place(&mut out, f);
    (out, piv)
}

pub fn rank(m: &Matrix, f: &Field) -> usize {
    rref(m, f).1.len()
}

/// Basis of `{v : m v = 0}`. Vector `k` has a 1 in the `k`-th free column and
/// zeros in the other free columns, so the coordinates of any kernel vector in
/// this basis are its entries at the free columns (see [`free_columns`]).
pub fn kernel_basis(m: &Matrix, f: &Field) -> Vec<Vec<Elem>> {
    let (r, piv) = rref(m, f);
    kernel_from_rref(&r, &piv, f)
}

fn kernel_from_rref(r: &Matrix, piv: &[usize], f: &Field) -> Vec<Vec<Elem>> {
    let cols = r.cols();
    free_columns(cols, piv)
        .into_iter()
        .map(|fc| {
            let mut v = vec![0; cols];
            v[fc] = 1;
            for (row, &pc) in piv.iter().enumerate() {
                v[pc] = f.neg(r.get(row, fc));
            }
            v
        })
        .collect()
}

/// Complement of `pivots` in `0..cols`.
pub fn free_columns(cols: usize, pivots: &[usize]) -> Vec<usize> {
    let mut is_piv = vec![false; cols];
    for &p in pivots {
        is_piv[p] = true;
    }
    (0..cols).filter(|&c| !is_piv[c]).collect()
}

/// Solution of `a x = b`: a particular solution and a kernel basis, or `None`
/// when the system is inconsistent.
pub fn solve_affine(a: &Matrix, b: &[Elem], f: &Field) -> Option<(Vec<Elem>, Vec<Vec<Elem>>)> {
    assert_eq!(a.rows(), b.len(), "solve_affine dimension mismatch");
    let cols = a.cols();
    let mut aug = Matrix::zeros(a.rows(), cols + 1);
    for i in 0..a.rows() {
        aug.row_mut(i)[..cols].copy_from_slice(a.row(i));
        aug.set(i, cols, b[i]);
    }
    let piv = rref_in_place(&mut aug, f);
    if piv.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![0; cols];
    for (row, &pc) in piv.iter().enumerate() {
        x[pc] = aug.get(row, cols);
    }
    let mut coeffs = Matrix::zeros(aug.rows(), cols);
    for i in 0..aug.rows() {
        coeffs.row_mut(i).copy_from_slice(&aug.row(i)[..cols]);
    }
    Some((x, kernel_from_rref(&coeffs, &piv, f)))
}

pub fn inverse(m: &Matrix, f: &Field) -> Option<Matrix> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    let mut aug = Matrix::zeros(n, 2 * n);
    for i in 0..n {
        aug.row_mut(i)[..n].copy_from_slice(m.row(i));
        aug.set(i, n + i, 1);
    }
    let piv = rref_in_place(&mut aug, f);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    let mut inv = Matrix::zeros(n, n);
    for i in 0..n {
        inv.row_mut(i).copy_from_slice(&aug.row(i)[n..]);
    }
    Some(inv)
}

/// Determinant by Gaussian elimination.
pub fn det(m: &Matrix, f: &Field) -> Elem {
    assert!(m.is_square(), "determinant of non-square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut d = 1;
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| a.get(i, c) != 0) else {
            return 0;
        };
        if pr != c {
            for j in 0..n {
                let (x, y) = (a.get(c, j), a.get(pr, j));
                a.set(c, j, y);
                a.set(pr, j, x);
            }
            d = f.neg(d);
        }
        let pivot = a.get(c, c);
        d = f.mul(d, pivot);
        let inv = f.inv(pivot);
        let prow: Vec<Elem> = a.row(c).to_vec();
        for i in c + 1..n {
            let x = a.get(i, c);
            if x != 0 {
                f.axpy(a.row_mut(i), f.neg(f.mul(x, inv)), &prow);
            }
        }
    }
    d
}

pub fn is_invertible(m: &Matrix, f: &Field) -> bool {
    m.is_square() && rank(m, f) == m.rows()
}

/// A subspace of `F^n` kept as a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Subspace {
        Subspace { ambient, basis: Matrix::zeros(0, ambient), pivots: vec![] }
    }

    pub fn span(ambient: usize, vectors: &[Vec<Elem>], f: &Field) -> Subspace {
        if vectors.is_empty() {
            return Subspace::zero(ambient);
        }
        let m = Matrix::from_rows(vectors);
        assert_eq!(m.cols(), ambient, "span: vector length");
        let (r, piv) = rref(&m, f);
        let mut basis = Matrix::zeros(piv.len(), ambient);
        for i in 0..piv.len() {
            basis.row_mut(i).copy_from_slice(r.row(i));
        }
        Subspace { ambient, basis, pivots: piv }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn basis(&self) -> Vec<Vec<Elem>> {
        (0..self.dim()).map(|i| self.basis.row(i).to_vec()).collect()
    }

    /// `v` minus its projection along the echelon basis; zero iff `v` is in the span.
    pub fn reduce(&self, v: &[Elem], f: &Field) -> Vec<Elem> {
        let mut r = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = r[pc];
            if c != 0 {
                f.axpy(&mut r, f.neg(c), self.basis.row(i));
            }
        }
        r
    }

    pub fn contains(&self, v: &[Elem], f: &Field) -> bool {
        self.reduce(v, f).iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[Elem], f: &Field) -> Option<Vec<Elem>> {
        if !self.contains(v, f) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc]).collect())
    }

    pub fn contains_subspace(&self, other: &Subspace, f: &Field) -> bool {
        other.basis().iter().all(|v| self.contains(v, f))
    }

    pub fn sum(&self, other: &Subspace, f: &Field) -> Subspace {
        let mut vs = self.basis();
        vs.extend(other.basis());
        Subspace::span(self.ambient, &vs, f)
    }

    pub fn intersection(&self, other: &Subspace, f: &Field) -> Subspace {
        let (a, b) = (self.basis(), other.basis());
        if a.is_empty() || b.is_empty() {
            return Subspace::zero(self.ambient);
        }
        let mut cols = a.clone();
        cols.extend(b.iter().map(|v| v.iter().map(|&x| f.neg(x)).collect::<Vec<_>>()));
        let m = Matrix::from_cols(self.ambient, &cols);
        let vs: Vec<Vec<Elem>> = kernel_basis(&m, f)
            .iter()
            .map(|k| {
                let mut v = vec![0; self.ambient];
                for (row, &c) in a.iter().zip(k) {
                    if c != 0 {
                        f.axpy(&mut v, c, row);
                    }
                }
                v
            })
            .collect();
        Subspace::span(self.ambient, &vs, f)
    }

    /// The quotient `F^n / self`, with the free columns as quotient coordinates.
    pub fn quotient(&self) -> QuotientMap {
        QuotientMap { sub: self.clone(), free: free_columns(self.ambient, &self.pivots) }
    }
}

/// Projection `F^n -> F^n / W`, realized in coordinates given by the non-pivot
/// columns of `W`'s echelon basis. The section sends quotient coordinate `k`
/// to the standard basis vector at the `k`-th free column.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    sub: Subspace,
    free: Vec<usize>,
}

impl QuotientMap {
    pub fn dim(&self) -> usize {
        self.free.len()
    }
    pub fn ambient(&self) -> usize {
        self.sub.ambient
    }
    pub fn kernel(&self) -> &Subspace {
        &self.sub
    }
    pub fn free_columns(&self) -> &[usize] {
        &self.free
    }

    pub fn project(&self, v: &[Elem], f: &Field) -> Vec<Elem> {
        let r = self.sub.reduce(v, f);
        self.free.iter().map(|&c| r[c]).collect()
    }

    pub fn section(&self, coords: &[Elem]) -> Vec<Elem> {
        let mut v = vec![0; self.sub.ambient];
        for (&c, &x) in self.free.iter().zip(coords) {
            v[c] = x;
        }
        v
    }

    /// Matrix of the projection (`dim x ambient`).
    pub fn matrix(&self, f: &Field) -> Matrix {
        let n = self.ambient();
        let cols: Vec<Vec<Elem>> = (0..n)
            .map(|j| {
                let mut e = vec![0; n];
                e[j] = 1;
                self.project(&e, f)
            })
            .collect();
        Matrix::from_cols(self.dim(), &cols)
    }

    /// Matrix of the section (`ambient x dim`).
    pub fn section_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.ambient(), self.dim());
        for (k, &c) in self.free.iter().enumerate() {
            m.set(c, k, 1);
        }
        m
    }
}

/// Iteratively intersect kernels: returns a basis (as columns of the returned
/// matrix, `n x d`) of `{x : A_i x = 0 for all i}` where each `A_i` is produced
/// lazily from the current basis. `apply(i, basis)` must return `A_i * basis`.
pub fn joint_kernel<F>(n: usize, count: usize, mut apply: F, f: &Field) -> Matrix
where
    F: FnMut(usize, &Matrix) -> Matrix,
{
    let mut basis = Matrix::identity(n);
    for i in 0..count {
        if basis.cols() == 0 {
            break;
        }
        let img = apply(i, &basis);
        let ker = kernel_basis(&img, f);
        if ker.len() == basis.cols() {
            continue;
        }
        let k = Matrix::from_cols(basis.cols(), &ker);
        basis = basis.mul(&k, f);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn rref_examples() {
        let f = f2();
        let (r, p) = rref(&Matrix::identity(3), &f);
        assert_eq!(r, Matrix::identity(3));
        assert_eq!(p, vec![0, 1, 2]);
        let (r, p) = rref(&Matrix::zeros(2, 3), &f);
        assert!(r.is_zero());
        assert!(p.is_empty());
        let (r, p) = rref(&Matrix::from_rows(&[vec![1, 1], vec![1, 1]]), &f);
        assert_eq!(r, Matrix::from_rows(&[vec![1, 1], vec![0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        let f = f2();
        assert!(kernel_basis(&Matrix::identity(3), &f).is_empty());
        assert_eq!(kernel_basis(&Matrix::zeros(2, 2), &f), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(kernel_basis(&Matrix::from_rows(&[vec![1, 1]]), &f), vec![vec![1, 1]]);
    }

    #[test]
    fn solve_examples() {
        let f = f2();
        let (x, k) = solve_affine(&Matrix::identity(2), &[1, 0], &f).unwrap();
        assert_eq!(x, vec![1, 0]);
        assert!(k.is_empty());
        assert!(solve_affine(&Matrix::zeros(1, 2), &[1], &f).is_none());
        let (x, k) = solve_affine(&Matrix::from_rows(&[vec![1, 1]]), &[1], &f).unwrap();
        assert_eq!(x, vec![1, 0]);
        assert_eq!(k, vec![vec![1, 1]]);
    }

    #[test]
    fn kronecker_examples() {
        let f = Field::prime(3).unwrap();
        let i6 = Matrix::identity(2).kronecker(&Matrix::identity(3), &f);
        assert_eq!(i6, Matrix::identity(6));
        let b = Matrix::from_rows(&[vec![1, 2], vec![0, 1]]);
        assert_eq!(Matrix::scalar(2).kronecker(&b, &f), b.scale(2, &f));
        let a = Matrix::from_rows(&[vec![1, 1], vec![1, 1]]);
        assert_eq!(rank(&a.kronecker(&b, &f), &f), rank(&a, &f) * rank(&b, &f));
    }

    #[test]
    fn inverse_and_det() {
        let f = Field::prime(5).unwrap();
        let a = Matrix::from_rows(&[vec![2, 1], vec![1, 3]]);
        assert_eq!(det(&a, &f), 0);
        assert!(inverse(&a, &f).is_none());
        let b = Matrix::from_rows(&[vec![2, 1], vec![1, 1]]);
        assert_eq!(det(&b, &f), 1);
        let inv = inverse(&b, &f).unwrap();
        assert_eq!(b.mul(&inv, &f), Matrix::identity(2));
    }

    #[test]
    fn quotient_map_roundtrip() {
        let f = f2();
        let w = Subspace::span(3, &[vec![1, 1, 0]], &f);
        let q = w.quotient();
        assert_eq!(q.dim(), 2);
        let v = vec![1, 0, 1];
        let back = q.section(&q.project(&v, &f));
        let diff: Vec<_> = v.iter().zip(&back).map(|(&a, &b)| f.sub(a, b)).collect();
        assert!(w.contains(&diff, &f));
    }
}

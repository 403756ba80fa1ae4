use crate::error::{Error, Result};

use super::field::{Elem, Field};
use super::linalg::{QuotientMap, Subspace};
use super::matrix::Matrix;
use super::ring::CommRing;

/// Associative unital algebra of finite dimension given by structure constants.
/// `mult[i * dim + j]` lists the nonzero coordinates of `e_i e_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteAlgebra {
    field: Field,
    dim: usize,
    mult: Vec<Vec<(usize, Elem)>>,
    unit: Vec<Elem>,
    names: Vec<String>,
}

pub(crate) fn sparse(v: &[Elem]) -> Vec<(usize, Elem)> {
    v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect()
}

pub(crate) fn unit_vector(n: usize, i: usize) -> Vec<Elem> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

impl FiniteAlgebra {
    pub fn new(
        field: Field,
        names: Vec<String>,
        mult: Vec<Vec<(usize, Elem)>>,
        unit: Vec<Elem>,
    ) -> Result<FiniteAlgebra> {
        let dim = names.len();
        if mult.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "multiplication table has {} entries, expected {}",
                mult.len(),
                dim * dim
            )));
        }
        if unit.len() != dim {
            return Err(Error::DimensionMismatch("unit vector length".into()));
        }
        let q = field.order();
        for row in &mult {
            for &(k, c) in row {
                if k >= dim || c >= q {
                    return Err(Error::InvalidTable(format!("bad structure constant ({k}, {c})")));
                }
            }
        }
        let mult = mult
            .into_iter()
            .map(|row| {
                let mut dense = vec![0; dim];
                for (k, c) in row {
                    dense[k] = field.add(dense[k], c);
                }
                sparse(&dense)
            })
            .collect();
        Ok(FiniteAlgebra { field, dim, mult, unit, names })
    }

    /// Builds the table from a product function on basis indices.
    pub fn from_fn<F>(field: Field, names: Vec<String>, unit: Vec<Elem>, mut prod: F) -> Result<FiniteAlgebra>
    where
        F: FnMut(usize, usize) -> Vec<Elem>,
    {
        let n = names.len();
        let mut mult = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                mult.push(sparse(&prod(i, j)));
            }
        }
        FiniteAlgebra::new(field, names, mult, unit)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn unit(&self) -> &[Elem] {
        &self.unit
    }
    pub fn basis(&self, i: usize) -> Vec<Elem> {
        unit_vector(self.dim, i)
    }
    pub fn product_of_basis(&self, i: usize, j: usize) -> &[(usize, Elem)] {
        &self.mult[i * self.dim + j]
    }

    pub fn mul(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut out = vec![0; self.dim];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let c = f.mul(x, y);
                for &(k, m) in &self.mult[i * self.dim + j] {
                    out[k] = f.add(out[k], f.mul(c, m));
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &[Elem], e: u64) -> Vec<Elem> {
        CommRing::pow(self, &a.to_vec(), e)
    }

    /// Matrix of `x -> a x`.
    pub fn left_mult_matrix(&self, a: &[Elem]) -> Matrix {
        let cols: Vec<Vec<Elem>> = (0..self.dim).map(|j| self.mul(a, &self.basis(j))).collect();
        Matrix::from_cols(self.dim, &cols)
    }

    /// Matrix of `x -> x a`.
    pub fn right_mult_matrix(&self, a: &[Elem]) -> Matrix {
        let cols: Vec<Vec<Elem>> = (0..self.dim).map(|j| self.mul(&self.basis(j), a)).collect();
        Matrix::from_cols(self.dim, &cols)
    }

    /// The multiplication map `A ⊗ A -> A` as a `dim x dim²` matrix.
    pub fn mult_matrix(&self) -> Matrix {
        let n = self.dim;
        let mut m = Matrix::zeros(n, n * n);
        for (ij, row) in self.mult.iter().enumerate() {
            for &(k, c) in row {
                m.set(k, ij, c);
            }
        }
        m
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.mult[i * self.dim + j] == self.mult[j * self.dim + i]))
    }

    /// First basis triple violating associativity.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.mul(&self.basis(i), &self.basis(j));
                for k in 0..self.dim {
                    let jk = self.mul(&self.basis(j), &self.basis(k));
                    if self.mul(&ij, &self.basis(k)) != self.mul(&self.basis(i), &jk) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// First basis element `e` with `1 e != e` or `e 1 != e`.
    pub fn unit_witness(&self) -> Option<usize> {
        (0..self.dim).find(|&i| {
            let e = self.basis(i);
            self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e
        })
    }

    /// Span of `x g y` over basis `x`, `y` and the given generators.
    pub fn ideal(&self, gens: &[Vec<Elem>]) -> Subspace {
        let mut vs = Vec::new();
        for g in gens {
            for i in 0..self.dim {
                let xg = self.mul(&self.basis(i), g);
                if xg.iter().all(|&c| c == 0) {
                    continue;
                }
                for j in 0..self.dim {
                    vs.push(self.mul(&xg, &self.basis(j)));
                }
            }
        }
        Subspace::span(self.dim, &vs, &self.field)
    }

    /// Quotient by a two-sided ideal. Basis of the quotient is the set of
    /// non-pivot basis elements of the ideal's echelon form.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(FiniteAlgebra, QuotientMap)> {
        let q = ideal.quotient();
        if q.dim() == 0 {
            return Err(Error::ZeroQuotient);
        }
        let f = &self.field;
        let names = q.free_columns().iter().map(|&c| self.names[c].clone()).collect();
        let lift: Vec<Vec<Elem>> = (0..q.dim()).map(|k| q.section(&unit_vector(q.dim(), k))).collect();
        let unit = q.project(&self.unit, f);
        let alg = FiniteAlgebra::from_fn(f.clone(), names, unit, |i, j| q.project(&self.mul(&lift[i], &lift[j]), f))?;
        Ok((alg, q))
    }

    /// Subalgebra spanned by `vectors` (must be closed under products and
    /// contain 1). Returns the algebra in the echelon basis of the span and the
    /// inclusion matrix.
    pub fn subalgebra(&self, vectors: &[Vec<Elem>], names: Option<Vec<String>>) -> Result<(FiniteAlgebra, Matrix)> {
        let f = &self.field;
        let sub = Subspace::span(self.dim, vectors, f);
        let basis = sub.basis();
        let coords = |v: &[Elem]| {
            sub.coords(v, f).ok_or_else(|| Error::InvalidTable("subspace is not closed under multiplication".into()))
        };
        let unit = coords(&self.unit)?;
        let mut mult = Vec::with_capacity(basis.len() * basis.len());
        for a in &basis {
            for b in &basis {
                mult.push(sparse(&coords(&self.mul(a, b))?));
            }
        }
        let names = names.unwrap_or_else(|| basis.iter().map(|v| self.format(v)).collect());
        let alg = FiniteAlgebra::new(f.clone(), names, mult, unit)?;
        Ok((alg, Matrix::from_cols(self.dim, &basis)))
    }

    /// Tensor product, basis index `i * other.dim + j`.
    pub fn tensor(&self, other: &FiniteAlgebra) -> FiniteAlgebra {
        let (n, m) = (self.dim, other.dim);
        let f = &self.field;
        let mut names = Vec::with_capacity(n * m);
        for a in &self.names {
            for b in &other.names {
                names.push(join_names(a, b));
            }
        }
        let mut unit = vec![0; n * m];
        for (i, &a) in self.unit.iter().enumerate() {
            for (j, &b) in other.unit.iter().enumerate() {
                unit[i * m + j] = f.mul(a, b);
            }
        }
        let mut mult = Vec::with_capacity(n * m * n * m);
        for i1 in 0..n {
            for j1 in 0..m {
                for i2 in 0..n {
                    for j2 in 0..m {
                        let mut row = Vec::new();
                        for &(k, c) in &self.mult[i1 * n + i2] {
                            for &(l, d) in &other.mult[j1 * m + j2] {
                                row.push((k * m + l, f.mul(c, d)));
                            }
                        }
                        mult.push(row);
                    }
                }
            }
        }
        FiniteAlgebra { field: f.clone(), dim: n * m, mult, unit, names }
    }

    /// Same structure constants read over a field containing this one.
    pub fn base_change(&self, field: &Field) -> Result<FiniteAlgebra> {
        if !self.field.embeds_in(field) {
            return Err(Error::InvalidField("target field does not contain the base field".into()));
        }
        let mut out = self.clone();
        out.field = field.clone();
        Ok(out)
    }

    pub fn format(&self, a: &[Elem]) -> String {
        format_combination(&self.field, &self.names, a)
    }
}

fn join_names(a: &str, b: &str) -> String {
    match (a, b) {
        ("1", _) => b.to_string(),
        (_, "1") => a.to_string(),
        _ => format!("{a}*{b}"),
    }
}

/// Renders `Σ c_i name_i`, skipping zero terms.
pub fn format_combination(f: &Field, names: &[String], v: &[Elem]) -> String {
    let mut parts = Vec::new();
    for (i, &c) in v.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let name = names.get(i).map(String::as_str).unwrap_or("?");
        parts.push(match (c, name) {
            (1, n) => n.to_string(),
            (_, "1") => f.format(c),
            _ => format!("{}*{}", f.format(c), name),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

impl CommRing for FiniteAlgebra {
    type E = Vec<Elem>;

    fn field(&self) -> &Field {
        &self.field
    }
    fn zero(&self) -> Vec<Elem> {
        vec![0; self.dim]
    }
    fn one(&self) -> Vec<Elem> {
        self.unit.clone()
    }
    fn add(&self, a: &Vec<Elem>, b: &Vec<Elem>) -> Vec<Elem> {
        a.iter().zip(b).map(|(&x, &y)| self.field.add(x, y)).collect()
    }
    fn neg(&self, a: &Vec<Elem>) -> Vec<Elem> {
        a.iter().map(|&x| self.field.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<Elem>, b: &Vec<Elem>) -> Vec<Elem> {
        FiniteAlgebra::mul(self, a, b)
    }
    fn scale(&self, c: Elem, a: &Vec<Elem>) -> Vec<Elem> {
        a.iter().map(|&x| self.field.mul(c, x)).collect()
    }
    fn is_zero(&self, a: &Vec<Elem>) -> bool {
        a.iter().all(|&x| x == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dual_numbers(p: u32) -> FiniteAlgebra {
        let f = Field::prime(p).unwrap();
        FiniteAlgebra::from_fn(f, vec!["1".into(), "x".into()], vec![1, 0], |i, j| {
            if i + j < 2 {
                unit_vector(2, i + j)
            } else {
                vec![0, 0]
            }
        })
        .unwrap()
    }

    #[test]
    fn dual_numbers_axioms() {
        let a = dual_numbers(3);
        assert!(a.associativity_witness().is_none());
        assert!(a.unit_witness().is_none());
        assert!(a.is_commutative());
        assert_eq!(a.mul(&[0, 1], &[0, 1]), vec![0, 0]);
    }

    #[test]
    fn quotient_by_maximal_ideal() {
        let a = dual_numbers(2);
        let m = a.ideal(&[vec![0, 1]]);
        assert_eq!(m.dim(), 1);
        let (q, _) = a.quotient(&m).unwrap();
        assert_eq!(q.dim(), 1);
        assert_eq!(q.unit(), &[1]);
        assert!(matches!(a.quotient(&a.ideal(&[vec![1, 0]])), Err(Error::ZeroQuotient)));
    }

    #[test]
    fn tensor_dimension_and_unit() {
        let a = dual_numbers(2);
        let t = a.tensor(&a);
        assert_eq!(t.dim(), 4);
        assert!(t.unit_witness().is_none());
        assert!(t.associativity_witness().is_none());
        assert_eq!(t.names()[3], "x*x");
    }
}

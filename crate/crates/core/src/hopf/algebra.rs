use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::algebra::{format_combination, sparse, unit_vector};
use crate::scalars::{Elem, Field, FiniteAlgebra, Matrix};

/// Finite-dimensional Hopf algebra given by structure constants.
///
/// `comult[k]` lists `(i, j, c)` with `Δ(e_k) = Σ c e_i ⊗ e_j`. Column `j` of
/// `antipode` is `S(e_j)`. Tensor vectors of length `dim²` use index `i * dim + j`.
#[derive(Clone, Debug, PartialEq)]
pub struct HopfAlgebra {
    alg: FiniteAlgebra,
    comult: Vec<Vec<(usize, usize, Elem)>>,
    counit: Vec<Elem>,
    antipode: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub pass: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfReport {
    pub checks: Vec<AxiomCheck>,
}

impl HopfReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

impl fmt::Display for HopfReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match (&c.witness, c.pass) {
                (_, true) => writeln!(f, "  {:<16} pass", c.axiom)?,
                (Some(w), false) => writeln!(f, "  {:<16} FAIL at {}", c.axiom, w)?,
                (None, false) => writeln!(f, "  {:<16} FAIL", c.axiom)?,
            }
        }
        Ok(())
    }
}

/// Merges repeated `(i, j)` entries and sorts, so equal maps have equal tables.
fn normalize_terms(f: &Field, mut terms: Vec<(usize, usize, Elem)>) -> Vec<(usize, usize, Elem)> {
    terms.sort_by_key(|&(i, j, _)| (i, j));
    let mut out: Vec<(usize, usize, Elem)> = Vec::with_capacity(terms.len());
    for (i, j, c) in terms {
        match out.last_mut() {
            Some(last) if (last.0, last.1) == (i, j) => last.2 = f.add(last.2, c),
            _ => out.push((i, j, c)),
        }
    }
    out.retain(|t| t.2 != 0);
    out
}

impl HopfAlgebra {
    pub fn new(
        alg: FiniteAlgebra,
        comult: Vec<Vec<(usize, usize, Elem)>>,
        counit: Vec<Elem>,
        antipode: Matrix,
    ) -> Result<HopfAlgebra> {
        let n = alg.dim();
        if comult.len() != n || counit.len() != n || antipode.rows() != n || antipode.cols() != n {
            return Err(Error::DimensionMismatch("Hopf structure tables".into()));
        }
        let q = alg.field().order();
        for row in &comult {
            for &(i, j, c) in row {
                if i >= n || j >= n || c >= q {
                    return Err(Error::InvalidTable(format!("bad comultiplication entry ({i}, {j}, {c})")));
                }
            }
        }
        if counit.iter().chain(antipode.data()).any(|&c| c >= q) {
            return Err(Error::InvalidTable("coefficient outside the field".into()));
        }
        let comult = comult.into_iter().map(|t| normalize_terms(alg.field(), t)).collect();
        Ok(HopfAlgebra { alg, comult, counit, antipode })
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.alg
    }
    pub fn dim(&self) -> usize {
        self.alg.dim()
    }
    pub fn field(&self) -> &Field {
        self.alg.field()
    }
    pub fn names(&self) -> &[String] {
        self.alg.names()
    }
    pub fn counit(&self) -> &[Elem] {
        &self.counit
    }
    pub fn antipode(&self) -> &Matrix {
        &self.antipode
    }
    pub fn comult_terms(&self, k: usize) -> &[(usize, usize, Elem)] {
        &self.comult[k]
    }
    pub fn unit(&self) -> &[Elem] {
        self.alg.unit()
    }

    pub fn mul(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        self.alg.mul(a, b)
    }

    pub fn apply_counit(&self, a: &[Elem]) -> Elem {
        let f = self.field();
        a.iter().zip(&self.counit).fold(0, |acc, (&x, &e)| f.add(acc, f.mul(x, e)))
    }

    pub fn apply_antipode(&self, a: &[Elem]) -> Vec<Elem> {
        self.antipode.mul_vec(a, self.field())
    }

    /// `Δ(a)` as a dense vector of length `dim²`.
    pub fn comultiply(&self, a: &[Elem]) -> Vec<Elem> {
        let n = self.dim();
        let f = self.field();
        let mut out = vec![0; n * n];
        for (k, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for &(i, j, c) in &self.comult[k] {
                let s = &mut out[i * n + j];
                *s = f.add(*s, f.mul(x, c));
            }
        }
        out
    }

    /// `Δ` as a `dim² x dim` matrix.
    pub fn comult_matrix(&self) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n * n, n);
        for (k, terms) in self.comult.iter().enumerate() {
            for &(i, j, c) in terms {
                let cur = m.get(i * n + j, k);
                m.set(i * n + j, k, self.field().add(cur, c));
            }
        }
        m
    }

    /// Product in `A ⊗ A`.
    pub fn tensor_mul(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        let n = self.dim();
        let f = self.field();
        let mut out = vec![0; n * n];
        for (ij, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let (i1, j1) = (ij / n, ij % n);
            for (kl, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let (i2, j2) = (kl / n, kl % n);
                let c = f.mul(a, b);
                for &(r, u) in self.alg.product_of_basis(i1, i2) {
                    for &(s, v) in self.alg.product_of_basis(j1, j2) {
                        let slot = &mut out[r * n + s];
                        *slot = f.add(*slot, f.mul(c, f.mul(u, v)));
                    }
                }
            }
        }
        out
    }

    /// `(Δ ⊗ id)Δ(e_k)` and `(id ⊗ Δ)Δ(e_k)` as vectors of length `dim³`.
    fn coassoc_sides(&self, k: usize) -> (Vec<Elem>, Vec<Elem>) {
        let n = self.dim();
        let f = self.field();
        let mut left = vec![0; n * n * n];
        let mut right = vec![0; n * n * n];
        for &(i, j, c) in &self.comult[k] {
            for &(a, b, d) in &self.comult[i] {
                let s = &mut left[(a * n + b) * n + j];
                *s = f.add(*s, f.mul(c, d));
            }
            for &(a, b, d) in &self.comult[j] {
                let s = &mut right[(i * n + a) * n + b];
                *s = f.add(*s, f.mul(c, d));
            }
        }
        (left, right)
    }

    /// `Δ^{(2)}(a) = (Δ ⊗ id)Δ(a)` as a vector of length `dim³`.
    pub fn double_comultiply(&self, a: &[Elem]) -> Vec<Elem> {
        let n = self.dim();
        let f = self.field();
        let mut out = vec![0; n * n * n];
        for (k, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let (l, _) = self.coassoc_sides(k);
            f.axpy(&mut out, x, &l);
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        self.alg.is_commutative()
    }

    pub fn is_cocommutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|k| {
            let d = self.comultiply(&unit_vector(n, k));
            (0..n).all(|i| (0..n).all(|j| d[i * n + j] == d[j * n + i]))
        })
    }

    /// `Δ(g) = g ⊗ g` and `ε(g) = 1`.
    pub fn is_group_like(&self, g: &[Elem]) -> bool {
        let n = self.dim();
        let f = self.field();
        if self.apply_counit(g) != 1 {
            return false;
        }
        let d = self.comultiply(g);
        (0..n).all(|i| (0..n).all(|j| d[i * n + j] == f.mul(g[i], g[j])))
    }

    fn name(&self, k: usize) -> &str {
        &self.names()[k]
    }

    /// Checks every Hopf algebra axiom on basis elements.
    pub fn validate(&self) -> HopfReport {
        let n = self.dim();
        let f = self.field();
        let mut checks = Vec::new();
        let wit3 = |t: Option<(usize, usize, usize)>| {
            t.map(|(i, j, k)| format!("({}, {}, {})", self.name(i), self.name(j), self.name(k)))
        };
        let assoc = self.alg.associativity_witness();
        checks.push(AxiomCheck { axiom: "associativity", pass: assoc.is_none(), witness: wit3(assoc) });
        let unit = self.alg.unit_witness();
        checks.push(AxiomCheck {
            axiom: "unit",
            pass: unit.is_none(),
            witness: unit.map(|k| self.name(k).to_string()),
        });

        let coassoc = (0..n).find(|&k| {
            let (l, r) = self.coassoc_sides(k);
            l != r
        });
        checks.push(AxiomCheck {
            axiom: "coassociativity",
            pass: coassoc.is_none(),
            witness: coassoc.map(|k| self.name(k).to_string()),
        });

        let counit = (0..n).find(|&k| {
            let mut l = vec![0; n];
            let mut r = vec![0; n];
            for &(i, j, c) in &self.comult[k] {
                l[j] = f.add(l[j], f.mul(c, self.counit[i]));
                r[i] = f.add(r[i], f.mul(c, self.counit[j]));
            }
            let e = unit_vector(n, k);
            l != e || r != e
        });
        checks.push(AxiomCheck {
            axiom: "counit",
            pass: counit.is_none(),
            witness: counit.map(|k| self.name(k).to_string()),
        });

        let mut delta_mult = None;
        let mut eps_mult = None;
        'outer: for i in 0..n {
            let di = self.comultiply(&unit_vector(n, i));
            for j in 0..n {
                let prod = self.mul(&unit_vector(n, i), &unit_vector(n, j));
                if eps_mult.is_none() && self.apply_counit(&prod) != f.mul(self.counit[i], self.counit[j]) {
                    eps_mult = Some((i, j));
                }
                if delta_mult.is_none() {
                    let dj = self.comultiply(&unit_vector(n, j));
                    if self.comultiply(&prod) != self.tensor_mul(&di, &dj) {
                        delta_mult = Some((i, j));
                    }
                }
                if delta_mult.is_some() && eps_mult.is_some() {
                    break 'outer;
                }
            }
        }
        let unit_ok = self.comultiply(self.unit()) == self.tensor_unit() && self.apply_counit(self.unit()) == 1;
        let wit2 = |t: Option<(usize, usize)>| t.map(|(i, j)| format!("({}, {})", self.name(i), self.name(j)));
        checks.push(AxiomCheck {
            axiom: "comult-algebra",
            pass: delta_mult.is_none() && unit_ok,
            witness: wit2(delta_mult).or_else(|| (!unit_ok).then(|| "1".to_string())),
        });
        checks.push(AxiomCheck { axiom: "counit-algebra", pass: eps_mult.is_none(), witness: wit2(eps_mult) });

        let antipode: Vec<usize> = (0..n)
            .filter(|&k| {
                let mut l = vec![0; n];
                let mut r = vec![0; n];
                for &(i, j, c) in &self.comult[k] {
                    let si = self.antipode.col(i);
                    let sj = self.antipode.col(j);
                    f.axpy(&mut l, c, &self.mul(&si, &unit_vector(n, j)));
                    f.axpy(&mut r, c, &self.mul(&unit_vector(n, i), &sj));
                }
                let target: Vec<Elem> = self.unit().iter().map(|&u| f.mul(u, self.counit[k])).collect();
                l != target || r != target
            })
            .collect();
        checks.push(AxiomCheck {
            axiom: "antipode",
            pass: antipode.is_empty(),
            witness: (!antipode.is_empty())
                .then(|| antipode.iter().map(|&k| self.name(k)).collect::<Vec<_>>().join(", ")),
        });
        HopfReport { checks }
    }

    fn tensor_unit(&self) -> Vec<Elem> {
        let n = self.dim();
        let f = self.field();
        let u = self.unit();
        let mut out = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = f.mul(u[i], u[j]);
            }
        }
        out
    }

    /// Linear dual in the dual basis: multiplication from `Δ`, comultiplication
    /// from multiplication, unit from `ε`, counit from the unit, antipode transposed.
    pub fn dual(&self, names: Vec<String>) -> HopfAlgebra {
        let n = self.dim();
        let f = self.field().clone();
        let mut dense = vec![vec![0; n]; n * n];
        for (k, terms) in self.comult.iter().enumerate() {
            for &(i, j, c) in terms {
                let s = &mut dense[i * n + j][k];
                *s = f.add(*s, c);
            }
        }
        let mult = dense.iter().map(|v| sparse(v)).collect();
        let alg = FiniteAlgebra::new(f, names, mult, self.counit.clone()).expect("dual tables are well formed");
        let mut comult = vec![Vec::new(); n];
        for i in 0..n {
            for j in 0..n {
                for &(k, c) in self.alg.product_of_basis(i, j) {
                    comult[k].push((i, j, c));
                }
            }
        }
        HopfAlgebra { alg, comult, counit: self.unit().to_vec(), antipode: self.antipode.transpose() }
    }

    /// Tensor product of Hopf algebras; basis index `i * other.dim + j`.
    pub fn tensor(&self, other: &HopfAlgebra) -> HopfAlgebra {
        let (n, m) = (self.dim(), other.dim());
        let f = self.field();
        let alg = self.alg.tensor(&other.alg);
        let nm = n * m;
        let mut comult = Vec::with_capacity(nm);
        let mut counit = Vec::with_capacity(nm);
        for i in 0..n {
            for j in 0..m {
                let mut terms = Vec::new();
                for &(a1, a2, c) in &self.comult[i] {
                    for &(b1, b2, d) in &other.comult[j] {
                        terms.push((a1 * m + b1, a2 * m + b2, f.mul(c, d)));
                    }
                }
                comult.push(normalize_terms(f, terms));
                counit.push(f.mul(self.counit[i], other.counit[j]));
            }
        }
        let antipode = self.antipode.kronecker(&other.antipode, f);
        HopfAlgebra { alg, comult, counit, antipode }
    }

    pub fn base_change(&self, field: &Field) -> Result<HopfAlgebra> {
        Ok(HopfAlgebra { alg: self.alg.base_change(field)?, ..self.clone() })
    }

    /// Replaces the antipode; used to build deliberately broken tables.
    pub fn with_antipode(&self, antipode: Matrix) -> Result<HopfAlgebra> {
        HopfAlgebra::new(self.alg.clone(), self.comult.clone(), self.counit.clone(), antipode)
    }

    pub fn format(&self, a: &[Elem]) -> String {
        format_combination(self.field(), self.names(), a)
    }
}

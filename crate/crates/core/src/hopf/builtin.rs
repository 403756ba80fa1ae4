//! Built-in group schemes.
//!
//! Most coordinate rings here are monomial algebras `k[x_1..x_r]` modulo
//! `x_i^{e_i} = 0` or `x_i^{e_i} = 1`; the coalgebra structure and antipode are
//! given on the variables and extended multiplicatively.

use crate::error::{Error, Result};
use crate::scalars::algebra::unit_vector;
use crate::scalars::{Elem, Field, FiniteAlgebra, Matrix};

use super::algebra::HopfAlgebra;
use super::scheme::GroupScheme;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `x^e = 0`
    Nilpotent,
    /// `x^e = 1`
    Cyclic,
}

/// Monomial basis with mixed-radix indexing, last variable fastest.
#[derive(Clone, Debug)]
pub struct Monomials {
    vars: Vec<String>,
    exps: Vec<u32>,
    rels: Vec<Relation>,
}

impl Monomials {
    pub fn new(vars: &[(&str, u32, Relation)]) -> Monomials {
        Monomials {
            vars: vars.iter().map(|v| v.0.to_string()).collect(),
            exps: vars.iter().map(|v| v.1).collect(),
            rels: vars.iter().map(|v| v.2).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).product()
    }

    pub fn index(&self, e: &[u32]) -> usize {
        e.iter().zip(&self.exps).fold(0, |acc, (&x, &b)| acc * b as usize + x as usize)
    }

    pub fn exponents(&self, mut idx: usize) -> Vec<u32> {
        let mut e = vec![0; self.exps.len()];
        for v in (0..self.exps.len()).rev() {
            let b = self.exps[v] as usize;
            e[v] = (idx % b) as u32;
            idx /= b;
        }
        e
    }

    pub fn var_index(&self, v: usize) -> usize {
        let mut e = vec![0; self.exps.len()];
        e[v] = 1;
        self.index(&e)
    }

    fn name(&self, e: &[u32]) -> String {
        let parts: Vec<String> = self
            .vars
            .iter()
            .zip(e)
            .filter(|(_, &x)| x > 0)
            .map(|(n, &x)| if x == 1 { n.clone() } else { format!("{n}^{x}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    fn product(&self, a: &[u32], b: &[u32]) -> Option<Vec<u32>> {
        let mut out = Vec::with_capacity(a.len());
        for v in 0..a.len() {
            let s = a[v] + b[v];
            match self.rels[v] {
                Relation::Nilpotent if s >= self.exps[v] => return None,
                Relation::Nilpotent => out.push(s),
                Relation::Cyclic => out.push(s % self.exps[v]),
            }
        }
        Some(out)
    }

    pub fn algebra(&self, field: &Field) -> FiniteAlgebra {
        let n = self.dim();
        let names = (0..n).map(|i| self.name(&self.exponents(i))).collect();
        FiniteAlgebra::from_fn(field.clone(), names, unit_vector(n, 0), |i, j| {
            match self.product(&self.exponents(i), &self.exponents(j)) {
                Some(e) => unit_vector(n, self.index(&e)),
                None => vec![0; n],
            }
        })
        .expect("monomial algebra is well formed")
    }
}

/// Term `c · m1 ⊗ m2` of a tensor written with exponent vectors.
pub type TensorTerm<'a> = (i64, &'a [u32], &'a [u32]);

/// Hopf algebra on a monomial algebra from data on the variables: `delta[v]`
/// as tensor terms, `antipode[v]` as `(c, exponents)` terms, `counit[v]`.
pub fn monomial_hopf(
    field: &Field,
    mons: &Monomials,
    delta: &[Vec<TensorTerm<'_>>],
    antipode: &[Vec<(i64, &[u32])>],
    counit: &[i64],
) -> Result<HopfAlgebra> {
    let f = field;
    let n = mons.dim();
    let alg = mons.algebra(f);
    let tens = alg.tensor(&alg);
    let r = mons.exps.len();
    if delta.len() != r || antipode.len() != r || counit.len() != r {
        return Err(Error::DimensionMismatch("one structure value per variable".into()));
    }
    let dgen: Vec<Vec<Elem>> = delta
        .iter()
        .map(|terms| {
            let mut v = vec![0; n * n];
            for &(c, a, b) in terms {
                let k = mons.index(a) * n + mons.index(b);
                v[k] = f.add(v[k], f.from_int(c));
            }
            v
        })
        .collect();
    let sgen: Vec<Vec<Elem>> = antipode
        .iter()
        .map(|terms| {
            let mut v = vec![0; n];
            for &(c, a) in terms {
                let k = mons.index(a);
                v[k] = f.add(v[k], f.from_int(c));
            }
            v
        })
        .collect();
    let egen: Vec<Elem> = counit.iter().map(|&c| f.from_int(c)).collect();

    let mut comult_dense: Vec<Vec<Elem>> = Vec::with_capacity(n);
    let mut s_cols: Vec<Vec<Elem>> = Vec::with_capacity(n);
    let mut eps: Vec<Elem> = Vec::with_capacity(n);
    for idx in 0..n {
        let e = mons.exponents(idx);
        match e.iter().position(|&x| x > 0) {
            None => {
                comult_dense.push(unit_vector(n * n, 0));
                s_cols.push(unit_vector(n, 0));
                eps.push(1);
            }
            Some(v) => {
                let mut rest = e.clone();
                rest[v] -= 1;
                let ri = mons.index(&rest);
                comult_dense.push(tens.mul(&comult_dense[ri], &dgen[v]));
                s_cols.push(alg.mul(&s_cols[ri], &sgen[v]));
                eps.push(f.mul(eps[ri], egen[v]));
            }
        }
    }
    let comult = comult_dense
        .iter()
        .map(|d| d.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (k / n, k % n, c)).collect())
        .collect();
    HopfAlgebra::new(alg, comult, eps, Matrix::from_cols(n, &s_cols))
}

fn scheme(name: &str, coord: HopfAlgebra, dual_names: Option<Vec<String>>) -> Result<GroupScheme> {
    GroupScheme::from_coord(name, coord, dual_names)
}

/// `α_p`: `k[x]/(x^p)`, `x` primitive.
pub fn alpha_p(field: &Field) -> Result<GroupScheme> {
    alpha_pn(field, 1).map(|g| g.with_name("alpha_p"))
}

/// `α_{p^n}`: `k[x]/(x^{p^n})`, `x` primitive; height `n`.
pub fn alpha_pn(field: &Field, n: u32) -> Result<GroupScheme> {
    let p = field.p();
    let e = p.checked_pow(n).filter(|&e| e <= 1024).ok_or_else(|| Error::InvalidTable("alpha_pn too large".into()))?;
    let mons = Monomials::new(&[("x", e, Relation::Nilpotent)]);
    let h = monomial_hopf(field, &mons, &[vec![(1, &[1], &[0]), (1, &[0], &[1])]], &[vec![(-1, &[1])]], &[0])?;
    scheme(&format!("alpha_{p}^{n}"), h, None)
}

/// `μ_n`: `k[y]/(y^n - 1)`, `y` group-like.
pub fn mu(field: &Field, n: u32) -> Result<GroupScheme> {
    if n == 0 {
        return Err(Error::InvalidTable("mu needs n >= 1".into()));
    }
    if n == 1 {
        return constant(field, &GroupTable::cyclic(1)).map(|g| g.with_name("mu_1"));
    }
    let mons = Monomials::new(&[("y", n, Relation::Cyclic)]);
    let inv = [n - 1];
    let h = monomial_hopf(field, &mons, &[vec![(1, &[1], &[1])]], &[vec![(1, &inv)]], &[1])?;
    scheme(&format!("mu_{n}"), h, None)
}

/// `μ_p` in characteristic `p`.
pub fn mu_p(field: &Field) -> Result<GroupScheme> {
    mu(field, field.p())
}

/// First Frobenius kernel of the Heisenberg group of unipotent upper
/// triangular 3x3 matrices `M(a,b,c)`, with `Δ` from the matrix product.
pub fn heisenberg1(field: &Field) -> Result<GroupScheme> {
    let p = field.p();
    let nil = Relation::Nilpotent;
    let mons = Monomials::new(&[("a", p, nil), ("b", p, nil), ("c", p, nil)]);
    let (one, a, b, c) = ([0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]);
    let ac = [1, 0, 1];
    let h = monomial_hopf(
        field,
        &mons,
        &[
            vec![(1, &a, &one), (1, &one, &a)],
            vec![(1, &b, &one), (1, &a, &c), (1, &one, &b)],
            vec![(1, &c, &one), (1, &one, &c)],
        ],
        &[vec![(-1, &a)], vec![(1, &ac), (-1, &b)], vec![(-1, &c)]],
        &[0, 0, 0],
    )?;
    scheme("heisenberg1", h, None)
}

/// Semidirect product of `α_p` by `μ_p` acting by scaling:
/// `k[x,y]/(x^p, y^p - 1)`, `Δx = x⊗y + 1⊗x`, `Δy = y⊗y`.
pub fn alpha_rtimes_mu(field: &Field) -> Result<GroupScheme> {
    let p = field.p();
    let mons = Monomials::new(&[("x", p, Relation::Nilpotent), ("y", p, Relation::Cyclic)]);
    let (one, x, y) = ([0, 0], [1, 0], [0, 1]);
    let yinv = [0, p - 1];
    let xyinv = [1, p - 1];
    let h = monomial_hopf(
        field,
        &mons,
        &[vec![(1, &x, &y), (1, &one, &x)], vec![(1, &y, &y)]],
        &[vec![(-1, &xyinv)], vec![(1, &yinv)]],
        &[0, 1],
    )?;
    scheme("alpha_rtimes_mu", h, None)
}

/// Multiplication table of a finite group on elements `0..n`, element 0 being
/// any element (the identity is detected).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    pub names: Vec<String>,
    pub mul: Vec<Vec<usize>>,
}

impl GroupTable {
    pub fn new(names: Vec<String>, mul: Vec<Vec<usize>>) -> Result<GroupTable> {
        let t = GroupTable { names, mul };
        t.check()?;
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn identity(&self) -> usize {
        (0..self.order()).find(|&e| (0..self.order()).all(|g| self.mul[e][g] == g && self.mul[g][e] == g)).unwrap_or(0)
    }

    pub fn inverse(&self, g: usize) -> usize {
        let e = self.identity();
        (0..self.order()).find(|&h| self.mul[g][h] == e).unwrap_or(e)
    }

    fn check(&self) -> Result<()> {
        let n = self.mul.len();
        let bad = |m: &str| Err(Error::InvalidTable(format!("group table: {m}")));
        if n == 0 || self.names.len() != n || self.mul.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return bad("shape");
        }
        let e = (0..n).find(|&e| (0..n).all(|g| self.mul[e][g] == g && self.mul[g][e] == g));
        let Some(e) = e else {
            return bad("no identity");
        };
        for a in 0..n {
            if !(0..n).any(|b| self.mul[a][b] == e && self.mul[b][a] == e) {
                return bad(&format!("element {} has no inverse", self.names[a]));
            }
            for b in 0..n {
                for c in 0..n {
                    if self.mul[self.mul[a][b]][c] != self.mul[a][self.mul[b][c]] {
                        return bad("not associative");
                    }
                }
            }
        }
        Ok(())
    }

    pub fn cyclic(n: usize) -> GroupTable {
        let names = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{i}"),
            })
            .collect();
        let mul = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        GroupTable { names, mul }
    }

    /// `S_3` generated by `r` of order 3 and `s` of order 2, `s r s = r^{-1}`;
    /// elements `s^i r^j` in the order `1, r, r^2, s, sr, sr^2`.
    pub fn s3() -> GroupTable {
        let names = ["1", "r", "r^2", "s", "sr", "sr^2"].iter().map(|s| s.to_string()).collect();
        let idx = |i: usize, j: usize| i * 3 + j % 3;
        let mut mul = vec![vec![0; 6]; 6];
        for (a, row) in mul.iter_mut().enumerate() {
            let (i1, j1) = (a / 3, a % 3);
            for (b, slot) in row.iter_mut().enumerate() {
                let (i2, j2) = (b / 3, b % 3);
                // s^i1 r^j1 s^i2 r^j2 = s^(i1+i2) r^(±j1 + j2)
                let j = if i2 == 1 { 3 - j1 + j2 } else { j1 + j2 };
                *slot = idx((i1 + i2) % 2, j);
            }
        }
        GroupTable { names, mul }
    }

    pub fn direct_product(&self, other: &GroupTable) -> GroupTable {
        let (n, m) = (self.order(), other.order());
        let mut names = Vec::with_capacity(n * m);
        for a in &self.names {
            for b in &other.names {
                names.push(format!("({a},{b})"));
            }
        }
        let mut mul = vec![vec![0; n * m]; n * m];
        for (x, row) in mul.iter_mut().enumerate() {
            for (y, slot) in row.iter_mut().enumerate() {
                *slot = self.mul[x / m][y / m] * m + other.mul[x % m][y % m];
            }
        }
        GroupTable { names, mul }
    }
}

/// Constant group scheme: `k[G]` is the algebra of functions with the point
/// basis `d_g`, and `kG` the group algebra with basis `g`.
pub fn constant(field: &Field, table: &GroupTable) -> Result<GroupScheme> {
    table.check()?;
    let n = table.order();
    let names = table.names.iter().map(|g| format!("d_{g}")).collect();
    let alg =
        FiniteAlgebra::from_fn(
            field.clone(),
            names,
            vec![1; n],
            |i, j| {
                if i == j {
                    unit_vector(n, i)
                } else {
                    vec![0; n]
                }
            },
        )?;
    let mut comult = vec![Vec::new(); n];
    for h in 0..n {
        for k in 0..n {
            comult[table.mul[h][k]].push((h, k, 1));
        }
    }
    let e = table.identity();
    let counit = unit_vector(n, e);
    let cols: Vec<Vec<Elem>> = (0..n).map(|g| unit_vector(n, table.inverse(g))).collect();
    let h = HopfAlgebra::new(alg, comult, counit, Matrix::from_cols(n, &cols))?;
    scheme(&format!("constant({n})"), h, Some(table.names.clone()))
}

/// Direct product `G1 × G2`; `k[G1 × G2] = k[G1] ⊗ k[G2]`.
pub fn product(g1: &GroupScheme, g2: &GroupScheme) -> Result<GroupScheme> {
    if g1.field() != g2.field() {
        return Err(Error::SchemeMismatch("factors over different fields".into()));
    }
    let coord = g1.coord().tensor(g2.coord());
    let mut names = Vec::new();
    for a in g1.group_alg().names() {
        for b in g2.group_alg().names() {
            names.push(format!("{a}.{b}"));
        }
    }
    scheme(&format!("{}x{}", g1.name(), g2.name()), coord, Some(names))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate() {
        for p in [2, 3] {
            let f = Field::prime(p).unwrap();
            for g in [
                alpha_p(&f).unwrap(),
                mu_p(&f).unwrap(),
                heisenberg1(&f).unwrap(),
                alpha_rtimes_mu(&f).unwrap(),
                constant(&f, &GroupTable::s3()).unwrap(),
                alpha_pn(&f, 2).unwrap(),
            ] {
                let report = g.validate();
                assert!(report.passed(), "{} p={p}:\n{report}", g.name());
            }
        }
    }

    #[test]
    fn heisenberg_dimension() {
        let f = Field::prime(2).unwrap();
        assert_eq!(heisenberg1(&f).unwrap().order(), 8);
        let f = Field::prime(3).unwrap();
        assert_eq!(heisenberg1(&f).unwrap().order(), 27);
    }

    #[test]
    fn constant_c2_is_cocommutative_group_algebra() {
        let f = Field::prime(2).unwrap();
        let g = constant(&f, &GroupTable::cyclic(2)).unwrap();
        assert_eq!(g.order(), 2);
        assert!(g.group_alg().is_cocommutative());
        assert!(g.group_alg().is_group_like(&[0, 1]));
    }

    #[test]
    fn broken_antipode_is_reported() {
        let f = Field::prime(2).unwrap();
        let g = constant(&f, &GroupTable::cyclic(2)).unwrap();
        let broken = g.group_alg().with_antipode(Matrix::zeros(2, 2)).unwrap();
        let report = broken.validate();
        let failed: Vec<_> = report.failed().collect();
        assert_eq!(failed.len(), 1);
        assert_eq!(failed[0].axiom, "antipode");
        assert_eq!(failed[0].witness.as_deref(), Some("1, g"));
    }

    #[test]
    fn dual_numbers_primitive_is_hopf() {
        let f = Field::prime(2).unwrap();
        let g = alpha_p(&f).unwrap();
        assert_eq!(g.order(), 2);
        assert!(g.coord().validate().passed());
    }

    #[test]
    fn double_dual_is_identity() {
        let f = Field::prime(3).unwrap();
        for g in [heisenberg1(&f).unwrap(), constant(&f, &GroupTable::s3()).unwrap()] {
            let dd = g.dualize().dualize();
            assert_eq!(dd.coord(), g.coord());
            assert_eq!(dd.group_alg(), g.group_alg());
            assert_eq!(dd.pairing(), g.pairing());
        }
    }

    #[test]
    fn s3_is_nonabelian() {
        let t = GroupTable::s3();
        assert!(GroupTable::new(t.names.clone(), t.mul.clone()).is_ok());
        assert_ne!(t.mul[1][3], t.mul[3][1]);
    }
}

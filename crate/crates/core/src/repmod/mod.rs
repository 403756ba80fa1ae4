//! Left `kG`-modules given by the action matrix of every `kG` basis element.

mod hom;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hopf::subgroup::{QuotientScheme, SubgroupEmbedding};
use crate::hopf::GroupScheme;
use crate::scalars::algebra::unit_vector;
use crate::scalars::{Elem, Field, Matrix, Subspace};

pub use hom::{
    hom_space, invariants, is_equivariant, module_iso_search, twisted_hom_invariants, twisted_invariants, GLinearMap,
    IsoSearch, SEARCH_EXHAUSTIVE_LIMIT, SEARCH_RANDOM_TRIALS,
};

#[derive(Clone, Debug)]
pub struct GModule {
    scheme: Arc<GroupScheme>,
    dim: usize,
    action: Vec<Matrix>,
}

impl PartialEq for GModule {
    fn eq(&self, other: &Self) -> bool {
        same_scheme(&self.scheme, &other.scheme) && self.action == other.action
    }
}

pub(crate) fn same_scheme(a: &Arc<GroupScheme>, b: &Arc<GroupScheme>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl GModule {
    pub fn new(scheme: Arc<GroupScheme>, dim: usize, action: Vec<Matrix>) -> Result<GModule> {
        if action.len() != scheme.order() || action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::DimensionMismatch("one dim x dim action matrix per kG basis element".into()));
        }
        Ok(GModule { scheme, dim, action })
    }

    /// Module structure from the action of an arbitrary linear map on basis vectors.
    pub fn from_fn<F: FnMut(usize) -> Matrix>(scheme: Arc<GroupScheme>, dim: usize, f: F) -> GModule {
        let action = (0..scheme.order()).map(f).collect();
        GModule { scheme, dim, action }
    }

    pub fn scheme(&self) -> &Arc<GroupScheme> {
        &self.scheme
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn field(&self) -> &Field {
        self.scheme.field()
    }
    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    /// Matrix of `x ∈ kG`.
    pub fn act(&self, x: &[Elem]) -> Matrix {
        let f = self.field();
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                out.add_scaled(c, &self.action[i], f);
            }
        }
        out
    }

    /// `x · v`.
    pub fn act_vec(&self, x: &[Elem], v: &[Elem]) -> Vec<Elem> {
        let f = self.field();
        let mut out = vec![0; self.dim];
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                let w = self.action[i].mul_vec(v, f);
                f.axpy(&mut out, c, &w);
            }
        }
        out
    }

    /// Checks that the action is a unital algebra map `kG → End(V)`.
    pub fn validate(&self) -> bool {
        let kg = self.scheme.group_alg();
        let f = self.field();
        let n = kg.dim();
        if self.act(kg.unit()) != Matrix::identity(self.dim) {
            return false;
        }
        (0..n).all(|i| {
            (0..n).all(|j| {
                let prod = kg.mul(&unit_vector(n, i), &unit_vector(n, j));
                self.action[i].mul(&self.action[j], f) == self.act(&prod)
            })
        })
    }

    /// `k` with `x` acting by `ε(x)`.
    pub fn trivial(scheme: &Arc<GroupScheme>) -> GModule {
        let kg = scheme.group_alg().clone();
        GModule::from_fn(scheme.clone(), 1, |i| Matrix::scalar(kg.counit()[i]))
    }

    /// One-dimensional module on which `x` acts by `χ(x)`; `chi` lists the values
    /// on the `kG` basis.
    pub fn character(scheme: &Arc<GroupScheme>, chi: &[Elem]) -> GModule {
        GModule::from_fn(scheme.clone(), 1, |i| Matrix::scalar(chi[i]))
    }

    /// `kG` acting on itself by left multiplication.
    pub fn regular(scheme: &Arc<GroupScheme>) -> GModule {
        let kg = scheme.group_alg();
        let n = kg.dim();
        GModule::from_fn(scheme.clone(), n, |i| kg.algebra().left_mult_matrix(&unit_vector(n, i)))
    }

    pub fn direct_sum(&self, other: &GModule) -> Result<GModule> {
        self.check_same(other)?;
        let action = self.action.iter().zip(&other.action).map(|(a, b)| a.direct_sum(b)).collect();
        Ok(GModule { scheme: self.scheme.clone(), dim: self.dim + other.dim, action })
    }

    pub fn direct_power(&self, k: usize) -> GModule {
        let mut out =
            GModule { scheme: self.scheme.clone(), dim: 0, action: vec![Matrix::zeros(0, 0); self.scheme.order()] };
        for _ in 0..k {
            out = out.direct_sum(self).expect("same scheme");
        }
        out
    }

    pub(crate) fn check_same(&self, other: &GModule) -> Result<()> {
        if same_scheme(&self.scheme, &other.scheme) {
            Ok(())
        } else {
            Err(Error::SchemeMismatch(format!("{} vs {}", self.scheme.name(), other.scheme.name())))
        }
    }

    /// Restriction along `H ≤ G`.
    pub fn restrict(&self, e: &SubgroupEmbedding) -> Result<GModule> {
        if !same_scheme(&self.scheme, e.amb()) {
            return Err(Error::SchemeMismatch("restriction from a different scheme".into()));
        }
        let inj = e.alg_inj();
        Ok(GModule::from_fn(e.sub().clone(), self.dim, |j| self.act(&inj.col(j))))
    }

    /// Inflation along `G ↠ G/N`.
    pub fn inflate(&self, q: &QuotientScheme, g: &Arc<GroupScheme>) -> Result<GModule> {
        if !same_scheme(&self.scheme, &q.scheme) {
            return Err(Error::SchemeMismatch("inflation from a different quotient".into()));
        }
        let surj = &q.alg_surj;
        Ok(GModule::from_fn(g.clone(), self.dim, |i| self.act(&surj.col(i))))
    }

    /// `A ⊗ B` with `x` acting by `Σ x_(1) ⊗ x_(2)`; basis index `i * dim B + j`.
    pub fn tensor(&self, other: &GModule) -> Result<GModule> {
        self.check_same(other)?;
        let kg = self.scheme.group_alg();
        let f = self.field();
        let d = self.dim * other.dim;
        Ok(GModule::from_fn(self.scheme.clone(), d, |k| {
            let mut out = Matrix::zeros(d, d);
            for &(i, j, c) in kg.comult_terms(k) {
                out.add_scaled(c, &self.action[i].kronecker(&other.action[j], f), f);
            }
            out
        }))
    }

    /// `A^*` with `x` acting by `A(S x)^T`.
    pub fn dual(&self) -> GModule {
        let kg = self.scheme.group_alg();
        GModule::from_fn(self.scheme.clone(), self.dim, |k| self.act(&kg.antipode().col(k)).transpose())
    }

    /// `Hom(A, B) = A^* ⊗ B`; vector index `i * dim B + j` is the matrix entry `(j, i)`.
    pub fn hom_module(&self, other: &GModule) -> Result<GModule> {
        self.dual().tensor(other)
    }

    /// The submodule spanned by `vectors`, in the echelon basis of their span.
    pub fn submodule(&self, vectors: &[Vec<Elem>]) -> Result<(GModule, Subspace)> {
        let f = self.field();
        let space = Subspace::span(self.dim, vectors, f);
        let basis = space.basis();
        let mut action = Vec::with_capacity(self.action.len());
        for a in &self.action {
            let cols = basis
                .iter()
                .map(|v| space.coords(&a.mul_vec(v, f), f))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::NotInvariant("subspace is not G-stable".into()))?;
            action.push(Matrix::from_cols(space.dim(), &cols));
        }
        Ok((GModule { scheme: self.scheme.clone(), dim: space.dim(), action }, space))
    }

    /// `k[G]` with `x · f = Σ ⟨x, S f_(1)⟩ f_(2)`, the action by left translation.
    pub fn left_translation(scheme: &Arc<GroupScheme>) -> GModule {
        let coord = scheme.coord();
        let n = coord.dim();
        let f = scheme.field();
        let s = coord.antipode();
        GModule::from_fn(scheme.clone(), n, |i| {
            let mut m = Matrix::zeros(n, n);
            for j in 0..n {
                for &(a, b, c) in coord.comult_terms(j) {
                    let sa = s.get(i, a);
                    if sa != 0 {
                        m.set(b, j, f.add(m.get(b, j), f.mul(c, sa)));
                    }
                }
            }
            m
        })
    }

    pub fn base_change(&self, scheme: &Arc<GroupScheme>) -> Result<GModule> {
        if scheme.order() != self.scheme.order() || !self.field().embeds_in(scheme.field()) {
            return Err(Error::SchemeMismatch("base change target".into()));
        }
        Ok(GModule { scheme: scheme.clone(), dim: self.dim, action: self.action.clone() })
    }
}

/// Vector in `Hom(A, B) = A^* ⊗ B` as a `dim B x dim A` matrix.
pub fn hom_vec_to_matrix(v: &[Elem], da: usize, db: usize) -> Matrix {
    let mut m = Matrix::zeros(db, da);
    for i in 0..da {
        for j in 0..db {
            m.set(j, i, v[i * db + j]);
        }
    }
    m
}

pub fn matrix_to_hom_vec(m: &Matrix) -> Vec<Elem> {
    let (db, da) = (m.rows(), m.cols());
    let mut v = vec![0; da * db];
    for i in 0..da {
        for j in 0..db {
            v[i * db + j] = m.get(j, i);
        }
    }
    v
}

/// `x · f = Σ B(x_(2)) f A(S x_(1))` on `Hom(A, B)` without forming `A^* ⊗ B`.
pub fn hom_act(a: &GModule, b: &GModule, x: &[Elem], fmat: &Matrix) -> Matrix {
    let kg = a.scheme.group_alg();
    let f = a.field();
    let n = kg.dim();
    let d = kg.comultiply(x);
    let mut out = Matrix::zeros(b.dim, a.dim);
    for (ij, &c) in d.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let (i, j) = (ij / n, ij % n);
        let sa = a.act(&kg.antipode().col(i));
        let t = b.action[j].mul(fmat, f).mul(&sa, f);
        out.add_scaled(c, &t, f);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::builtin::{self, GroupTable};

    fn schemes(p: u32) -> Vec<Arc<GroupScheme>> {
        let f = Field::prime(p).unwrap();
        vec![
            Arc::new(builtin::constant(&f, &GroupTable::cyclic(2)).unwrap()),
            Arc::new(builtin::alpha_p(&f).unwrap()),
            Arc::new(builtin::alpha_rtimes_mu(&f).unwrap()),
            Arc::new(builtin::constant(&f, &GroupTable::s3()).unwrap()),
        ]
    }

    #[test]
    fn standard_modules_validate() {
        for p in [2, 3] {
            for g in schemes(p) {
                let k = GModule::trivial(&g);
                let r = GModule::regular(&g);
                assert!(k.validate() && r.validate(), "{}", g.name());
                assert!(r.dual().validate());
                assert!(r.tensor(&k).unwrap().validate());
                assert_eq!(r.tensor(&k).unwrap().action(), r.action());
                assert!(k.hom_module(&r).unwrap().validate());
            }
        }
    }

    #[test]
    fn left_translation_is_module() {
        for g in schemes(3) {
            assert!(GModule::left_translation(&g).validate(), "{}", g.name());
        }
        let g = Arc::new(builtin::heisenberg1(&Field::prime(2).unwrap()).unwrap());
        assert!(GModule::left_translation(&g).validate());
    }

    #[test]
    fn regular_c2_is_permutation() {
        let f = Field::prime(2).unwrap();
        let g = Arc::new(builtin::constant(&f, &GroupTable::cyclic(2)).unwrap());
        let r = GModule::regular(&g);
        assert_eq!(r.action()[1], Matrix::from_rows(&[vec![0, 1], vec![1, 0]]));
    }

    #[test]
    fn regular_alpha_p_is_nilpotent_shift() {
        let f = Field::prime(3).unwrap();
        let g = Arc::new(builtin::alpha_p(&f).unwrap());
        let r = GModule::regular(&g);
        let u = &r.action()[1];
        let f = g.field();
        assert!(!u.mul(u, f).is_zero());
        assert!(u.mul(u, f).mul(u, f).is_zero());
    }

    #[test]
    fn hom_act_matches_hom_module() {
        let f = Field::prime(3).unwrap();
        let g = Arc::new(builtin::alpha_rtimes_mu(&f).unwrap());
        let a = GModule::regular(&g);
        let b = GModule::trivial(&g).direct_sum(&GModule::regular(&g)).unwrap();
        let h = a.hom_module(&b).unwrap();
        let mut fm = Matrix::zeros(b.dim(), a.dim());
        fm.set(0, 1, 1);
        fm.set(3, 2, 2);
        let v = matrix_to_hom_vec(&fm);
        for k in 0..g.order() {
            let x = unit_vector(g.order(), k);
            let direct = hom_act(&a, &b, &x, &fm);
            let via = hom_vec_to_matrix(&h.act_vec(&x, &v), a.dim(), b.dim());
            assert_eq!(direct, via);
        }
    }
}

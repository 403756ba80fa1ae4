//! Primitive idempotents of commutative coordinate rings, the connected
//! component of the identity, and groups of rational points.
//!
//! Idempotents are found inside the Frobenius-fixed subalgebra
//! `{a : a^q = a} ≅ F_q^r`, where `r` is the number of local factors, and split
//! by eigen-idempotents of its basis elements. Everything is deterministic.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalars::algebra::unit_vector;
use crate::scalars::linalg::{kernel_basis, rank};
use crate::scalars::{Elem, Field, FiniteAlgebra, Matrix, Subspace};

use super::scheme::GroupScheme;
use super::subgroup::{subgroup_embed, SubgroupEmbedding};

/// Matrix of `x ↦ x^{q^t}` on a commutative algebra over `F_q`.
pub fn frobenius_matrix(a: &FiniteAlgebra, t: u32) -> Matrix {
    let q = a.field().order() as u64;
    let n = a.dim();
    let cols: Vec<Vec<Elem>> = (0..n).map(|j| a.pow(&unit_vector(n, j), q)).collect();
    let phi = Matrix::from_cols(n, &cols);
    let mut out = Matrix::identity(n);
    for _ in 0..t {
        out = phi.mul(&out, a.field());
    }
    out
}

/// Smallest `t` with `q^t ≥ dim`, enough to kill every nilpotent.
fn nil_killing_power(a: &FiniteAlgebra) -> u32 {
    let q = a.field().order() as usize;
    let mut t = 1;
    let mut qt = q;
    while qt < a.dim() {
        qt = qt.saturating_mul(q);
        t += 1;
    }
    t
}

#[derive(Clone, Debug)]
pub struct IdempotentDecomposition {
    /// Primitive orthogonal idempotents summing to 1.
    pub idempotents: Vec<Vec<Elem>>,
    /// `dim e A` for each idempotent.
    pub factor_dims: Vec<usize>,
    /// Degree over the base field of the residue field of `e A`.
    pub residue_degrees: Vec<u32>,
}

impl IdempotentDecomposition {
    /// Number of geometric points of `Spec A`.
    pub fn geometric_points(&self) -> usize {
        self.residue_degrees.iter().map(|&d| d as usize).sum()
    }
}

/// Eigenvalues of `x ↦ b x` on a split semisimple subalgebra with the given
/// (column) basis, restricted to the ideal generated by `e`.
fn eigenvalues(a: &FiniteAlgebra, fix: &Subspace, b: &[Elem], e: &[Elem]) -> Vec<Elem> {
    let f = a.field();
    let basis: Vec<Vec<Elem>> = fix.basis().iter().map(|v| a.mul(v, e)).collect();
    let be = a.mul(b, e);
    let r0 = rank(&Matrix::from_cols(a.dim(), &basis), f);
    f.elements()
        .filter(|&lam| {
            let shifted: Vec<Elem> = be.iter().zip(e).map(|(&x, &y)| f.sub(x, f.mul(lam, y))).collect();
            let imgs: Vec<Vec<Elem>> = basis.iter().map(|v| a.mul(&shifted, v)).collect();
            rank(&Matrix::from_cols(a.dim(), &imgs), f) < r0
        })
        .collect()
}

/// Complete set of primitive orthogonal idempotents of a commutative algebra.
pub fn primitive_idempotents(a: &FiniteAlgebra) -> IdempotentDecomposition {
    let f = a.field();
    let n = a.dim();
    let phi = frobenius_matrix(a, 1);
    let fix_basis = kernel_basis(&phi.sub(&Matrix::identity(n), f), f);
    let fix = Subspace::span(n, &fix_basis, f);
    let r = fix.dim();
    let mut idems = vec![a.unit().to_vec()];
    'split: for b in fix.basis() {
        if idems.len() == r {
            break 'split;
        }
        let mut next = Vec::new();
        for e in &idems {
            let lams = eigenvalues(a, &fix, &b, e);
            if lams.len() <= 1 {
                next.push(e.clone());
                continue;
            }
            for &lam in &lams {
                let mut prod = e.clone();
                for &mu in lams.iter().filter(|&&mu| mu != lam) {
                    let denom = f.inv(f.sub(lam, mu));
                    let factor: Vec<Elem> =
                        b.iter().zip(a.unit()).map(|(&x, &u)| f.mul(denom, f.sub(x, f.mul(mu, u)))).collect();
                    prod = a.mul(&prod, &factor);
                }
                next.push(prod);
            }
        }
        idems = next;
    }
    let t = nil_killing_power(a);
    let big_phi = frobenius_matrix(a, t);
    let mut factor_dims = Vec::new();
    let mut residue_degrees = Vec::new();
    for e in &idems {
        let le = a.left_mult_matrix(e);
        factor_dims.push(rank(&le, f));
        residue_degrees.push(rank(&big_phi.mul(&le, f), f) as u32);
    }
    IdempotentDecomposition { idempotents: idems, factor_dims, residue_degrees }
}

/// Certificate that `e` is primitive: the Frobenius-fixed part of `eA` is `k e`.
pub fn is_primitive(a: &FiniteAlgebra, e: &[Elem]) -> bool {
    let f = a.field();
    let n = a.dim();
    let phi = frobenius_matrix(a, 1);
    let fix = kernel_basis(&phi.sub(&Matrix::identity(n), f), f);
    let imgs: Vec<Vec<Elem>> = fix.iter().map(|v| a.mul(v, e)).collect();
    a.mul(e, e) == e && rank(&Matrix::from_cols(n, &imgs), f) == 1
}

#[derive(Clone, Debug)]
pub struct ConnectedComponent {
    pub decomposition: IdempotentDecomposition,
    /// Index of the idempotent with `ε(e) = 1`.
    pub identity_factor: usize,
    /// `G^0 ↪ G`.
    pub embedding: SubgroupEmbedding,
}

impl ConnectedComponent {
    /// `|G^0|`.
    pub fn order(&self) -> usize {
        self.decomposition.factor_dims[self.identity_factor]
    }
    /// Number of geometric points of `G`, i.e. `|G^ét|`.
    pub fn etale_order(&self) -> usize {
        self.decomposition.geometric_points()
    }
}

pub fn connected_component(g: &Arc<GroupScheme>) -> Result<ConnectedComponent> {
    let c = g.coord();
    let f = g.field();
    let dec = primitive_idempotents(c.algebra());
    let identity_factor = dec
        .idempotents
        .iter()
        .position(|e| c.apply_counit(e) == 1)
        .ok_or_else(|| Error::Consistency("no idempotent has counit 1".into()))?;
    let e0 = &dec.idempotents[identity_factor];
    let gen: Vec<Elem> = c.unit().iter().zip(e0).map(|(&u, &x)| f.sub(u, x)).collect();
    let gens = if gen.iter().all(|&x| x == 0) { vec![] } else { vec![gen] };
    let embedding = subgroup_embed(g, &gens, &format!("{}^0", g.name()))?;
    Ok(ConnectedComponent { decomposition: dec, identity_factor, embedding })
}

/// `G` is infinitesimal iff `k[G]` is local with residue field `k`.
pub fn is_infinitesimal(g: &GroupScheme) -> bool {
    let dec = primitive_idempotents(g.coord().algebra());
    dec.idempotents.len() == 1 && dec.residue_degrees[0] == 1
}

/// The finite group `G(E)` of points over a splitting extension `E`.
#[derive(Clone, Debug)]
pub struct RationalPointGroup {
    pub ext: Field,
    /// Each point as its values on the basis of `k[G]`, equivalently as an
    /// element of `kG ⊗ E` in the dual basis.
    pub points: Vec<Vec<Elem>>,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    pub inverses: Vec<usize>,
}

impl RationalPointGroup {
    pub fn order(&self) -> usize {
        self.points.len()
    }

    pub fn index_of(&self, p: &[Elem]) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }

    /// Checks the group axioms of the table.
    pub fn is_group(&self) -> bool {
        let n = self.order();
        let t = &self.table;
        (0..n).all(|a| {
            t[self.identity][a] == a
                && t[a][self.identity] == a
                && t[a][self.inverses[a]] == self.identity
                && (0..n).all(|b| (0..n).all(|c| t[t[a][b]][c] == t[a][t[b][c]]))
        })
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Points of `G` over `ext`. `ext` must be the base field or, when the base
/// field is prime, any `F_{p^m}`.
pub fn rational_points(g: &GroupScheme, ext: &Field) -> Result<RationalPointGroup> {
    let base = g.field();
    if !base.embeds_in(ext) {
        return Err(Error::InvalidField("extension does not contain the base field".into()));
    }
    let dec = primitive_idempotents(g.coord().algebra());
    let required = dec.residue_degrees.iter().fold(1, |acc, &d| lcm(acc, d));
    let rel = ext.degree() / base.degree();
    if !rel.is_multiple_of(required) {
        return Err(Error::ExtensionDoesNotSplit { required_degree: required });
    }
    let ge = g.base_change(ext)?;
    let c = ge.coord();
    let a = c.algebra();
    let n = a.dim();
    let dec_e = primitive_idempotents(a);
    let t = nil_killing_power(a);
    let big_phi = frobenius_matrix(a, t);
    let mut points = Vec::with_capacity(dec_e.idempotents.len());
    for e in &dec_e.idempotents {
        let pivot = e.iter().position(|&x| x != 0).expect("idempotent is nonzero");
        let einv = ext.inv(e[pivot]);
        let vals: Vec<Elem> = (0..n)
            .map(|j| {
                let img = big_phi.mul_vec(&a.mul(&unit_vector(n, j), e), ext);
                ext.mul(img[pivot], einv)
            })
            .collect();
        points.push(vals);
    }
    let eps = c.counit().to_vec();
    points.sort();
    if let Some(pos) = points.iter().position(|p| *p == eps) {
        let id = points.remove(pos);
        points.insert(0, id);
    } else {
        return Err(Error::Consistency("counit is not among the points".into()));
    }
    let lookup: HashMap<Vec<Elem>, usize> = points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let kg = ge.group_alg();
    let mut table = vec![vec![0; points.len()]; points.len()];
    for (i, x) in points.iter().enumerate() {
        for (j, y) in points.iter().enumerate() {
            let prod = kg.mul(x, y);
            table[i][j] = *lookup
                .get(&prod)
                .ok_or_else(|| Error::Consistency("points are not closed under convolution".into()))?;
        }
    }
    let inverses = points
        .iter()
        .map(|x| lookup.get(&kg.apply_antipode(x)).copied())
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Consistency("points are not closed under inverses".into()))?;
    Ok(RationalPointGroup { ext: ext.clone(), points, table, identity: 0, inverses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::builtin::{self, GroupTable};

    #[test]
    fn infinitesimal_schemes_are_connected() {
        for p in [2, 3] {
            let f = Field::prime(p).unwrap();
            for g in [builtin::alpha_p(&f).unwrap(), builtin::heisenberg1(&f).unwrap(), builtin::mu_p(&f).unwrap()] {
                let g = Arc::new(g);
                let cc = connected_component(&g).unwrap();
                assert_eq!(cc.decomposition.idempotents.len(), 1);
                assert_eq!(cc.order(), g.order());
                assert!(is_infinitesimal(&g));
                let pts = rational_points(&g, &f).unwrap();
                assert_eq!(pts.order(), 1);
            }
        }
    }

    #[test]
    fn constant_cp_splits_completely() {
        for p in [2, 3] {
            let f = Field::prime(p).unwrap();
            let g = Arc::new(builtin::constant(&f, &GroupTable::cyclic(p as usize)).unwrap());
            let cc = connected_component(&g).unwrap();
            assert_eq!(cc.order(), 1);
            assert_eq!(cc.decomposition.idempotents.len(), p as usize);
            for e in &cc.decomposition.idempotents {
                assert!(is_primitive(g.coord().algebra(), e));
            }
            let pts = rational_points(&g, &f).unwrap();
            assert_eq!(pts.order(), p as usize);
            assert!(pts.is_group());
        }
    }

    #[test]
    fn mu3_over_f2_needs_f4() {
        let f2 = Field::prime(2).unwrap();
        let g = builtin::mu(&f2, 3).unwrap();
        assert_eq!(rational_points(&g, &f2).unwrap_err(), Error::ExtensionDoesNotSplit { required_degree: 2 });
        let f4 = Field::new(2, 2, None).unwrap();
        let pts = rational_points(&g, &f4).unwrap();
        assert_eq!(pts.order(), 3);
        assert!(pts.is_group());
        let dec = primitive_idempotents(g.coord().algebra());
        assert_eq!(dec.idempotents.len(), 2);
        assert_eq!(dec.geometric_points(), 3);
    }
}

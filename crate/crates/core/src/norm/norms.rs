use super::{Carrier, ComoduleAlgebra, SElem};
use crate::error::{Error, Result};
use crate::hopf::components::{connected_component, primitive_idempotents, rational_points, RationalPointGroup};
use crate::hopf::subgroup::{trivial_subgroup, SubgroupEmbedding};
use crate::repmod::same_scheme;
use crate::scalars::algebra::unit_vector;
use crate::scalars::det::{berkowitz_det, poly_det, RingMatrix};
use crate::scalars::linalg::solve_affine;
use crate::scalars::{CommRing, Elem, Field, FiniteAlgebra, Matrix, Subspace};

/// `det` of multiplication by `σ(s)` on the free `S`-module `S ⊗ k[G]`.
pub fn mumford_norm(s_alg: &ComoduleAlgebra, s: &SElem) -> Result<SElem> {
    let sig = s_alg.coact(s);
    let a = s_alg.scheme.coord().algebra();
    let n = a.dim();
    let carrier = &s_alg.carrier;
    let mut m: RingMatrix<SElem> = vec![vec![carrier.zero(); n]; n];
    for (k, sk) in sig.iter().enumerate() {
        if carrier.is_zero(sk) {
            continue;
        }
        for j in 0..n {
            for &(i, c) in a.product_of_basis(k, j) {
                m[i][j] = carrier.add(&m[i][j], &carrier.scale(c, sk));
            }
        }
    }
    let value = match carrier {
        Carrier::Poly(r) => {
            let pm: RingMatrix<_> = m.iter().map(|row| row.iter().map(|x| x.as_poly().clone()).collect()).collect();
            SElem::Poly(poly_det(r, &pm))
        }
        Carrier::Finite(_) => berkowitz_det(carrier, &m),
    };
    if !s_alg.is_invariant(&value) {
        return Err(Error::Consistency("Mumford norm is not invariant".into()));
    }
    Ok(value)
}

/// Representative picked from each coset `γ Γ_H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transversal {
    First,
    Last,
}

#[derive(Clone, Debug)]
pub struct NormReport {
    pub input: SElem,
    /// `|G^0 H : H| = |G^0| / |H^0|`.
    pub exponent: usize,
    pub extension: Field,
    /// Indices into the point group over `extension`.
    pub transversal: Vec<usize>,
    pub value: SElem,
    /// All coefficients of the product lie in the base field.
    pub descended: bool,
    pub invariant: bool,
}

impl NormReport {
    pub fn transversal_size(&self) -> usize {
        self.transversal.len()
    }
}

pub fn relative_norm(
    e: &SubgroupEmbedding,
    s_alg: &ComoduleAlgebra,
    s: &SElem,
    ext: Option<&Field>,
) -> Result<NormReport> {
    NormPlan::new(e, ext, Transversal::First)?.apply(s_alg, s)
}

pub fn relative_norm_with(
    e: &SubgroupEmbedding,
    s_alg: &ComoduleAlgebra,
    s: &SElem,
    ext: Option<&Field>,
    choice: Transversal,
) -> Result<NormReport> {
    NormPlan::new(e, ext, choice)?.apply(s_alg, s)
}

fn points_of_sub(e: &SubgroupEmbedding, gamma_g: &RationalPointGroup, ext: &Field) -> Result<Vec<usize>> {
    let gamma_h = rational_points(e.sub(), ext)?;
    let pi = e.coord_surj();
    gamma_h
        .points
        .iter()
        .map(|vh| {
            let vg: Vec<Elem> = (0..pi.cols())
                .map(|j| (0..pi.rows()).fold(0, |acc, h| ext.add(acc, ext.mul(vh[h], pi.get(h, j)))))
                .collect();
            gamma_g.index_of(&vg).ok_or_else(|| Error::Consistency("point of H is not a point of G".into()))
        })
        .collect()
}

/// Everything in `Nm_H^G` that does not depend on the algebra: the exponent
/// `|G^0 H : H| = |G^0| / |H^0|`, the points over `ext` and a transversal.
#[derive(Clone, Debug)]
pub struct NormPlan {
    pub embedding: SubgroupEmbedding,
    pub ext: Field,
    pub exponent: usize,
    pub connected: SubgroupEmbedding,
    pub points: RationalPointGroup,
    pub transversal: Vec<usize>,
}

impl NormPlan {
    pub fn new(e: &SubgroupEmbedding, ext: Option<&Field>, choice: Transversal) -> Result<NormPlan> {
        let ext = ext.cloned().unwrap_or_else(|| e.amb().field().clone());
        let g0 = connected_component(e.amb())?;
        let h0 = connected_component(e.sub())?;
        let exponent = g0.order() / h0.order();
        let gamma_g = rational_points(e.amb(), &ext)?;
        let sub_pts = points_of_sub(e, &gamma_g, &ext)?;
        let mut covered = vec![false; gamma_g.order()];
        let mut cosets = Vec::new();
        for g in 0..gamma_g.order() {
            if !covered[g] {
                let coset: Vec<usize> = sub_pts.iter().map(|&h| gamma_g.table[g][h]).collect();
                for &c in &coset {
                    covered[c] = true;
                }
                cosets.push(coset);
            }
        }
        let transversal = cosets
            .iter()
            .map(|c| match choice {
                Transversal::First => *c.iter().min().expect("nonempty coset"),
                Transversal::Last => *c.iter().max().expect("nonempty coset"),
            })
            .collect();
        Ok(NormPlan { embedding: e.clone(), ext, exponent, connected: g0.embedding, points: gamma_g, transversal })
    }

    /// `Π_{γ ∈ T} γ(s^{|G^0 H : H|})` over `ext`, then descended to the base field.
    pub fn apply(&self, s_alg: &ComoduleAlgebra, s: &SElem) -> Result<NormReport> {
        let e = &self.embedding;
        if !same_scheme(e.amb(), &s_alg.scheme) {
            return Err(Error::SchemeMismatch(format!(
                "{} is not a subgroup of {}",
                e.sub().name(),
                s_alg.scheme.name()
            )));
        }
        if !s_alg.is_invariant_under(e, s)? {
            return Err(Error::NotInvariant(format!("{} under {}", s_alg.carrier.format(s), e.sub().name())));
        }
        let t = s_alg.carrier.pow(s, self.exponent as u64);
        if !s_alg.is_invariant_under(&self.connected, &t)? {
            return Err(Error::Consistency("power is not invariant under the connected component".into()));
        }
        let ext = &self.ext;
        let s_ext = s_alg.carrier.base_change(ext)?;
        let sig = s_alg.coact(&t);
        let mut value = s_ext.one();
        for &g in &self.transversal {
            let vals = &self.points.points[g];
            let acted = sig.iter().zip(vals).fold(s_ext.zero(), |acc, (sj, &v)| s_ext.add(&acc, &s_ext.scale(v, sj)));
            value = s_ext.mul(&value, &acted);
        }
        let descended = ext == s_alg.field() || value.in_prime_field(ext);
        if !descended {
            return Err(Error::Consistency("norm does not descend to the base field".into()));
        }
        let invariant = s_alg.is_invariant(&value);
        if !invariant {
            return Err(Error::Consistency("norm is not invariant".into()));
        }
        Ok(NormReport {
            input: s.clone(),
            exponent: self.exponent,
            extension: ext.clone(),
            transversal: self.transversal.clone(),
            value,
            descended,
            invariant,
        })
    }
}

#[derive(Clone, Debug)]
pub struct FieldNormReport {
    /// `[L : L^G]`.
    pub degree: usize,
    pub group_order: usize,
    /// `|G| / [L : L^G]`.
    pub exponent: usize,
    pub divides: bool,
    pub field_norm: SElem,
    pub norm: SElem,
    pub mumford: SElem,
    /// `Nm^G(s) = N(s)^exponent` and Mumford agrees.
    pub consistent: bool,
}

/// Local with residue field of full dimension.
fn is_field(a: &FiniteAlgebra) -> bool {
    let dec = primitive_idempotents(a);
    a.is_commutative() && dec.idempotents.len() == 1 && dec.residue_degrees[0] as usize == a.dim()
}

/// Compares `Nm^G` with the field norm of `L / L^G` for a field carrier `L`.
pub fn field_norm_compare(l_alg: &ComoduleAlgebra, s: &SElem, ext: Option<&Field>) -> Result<FieldNormReport> {
    let Carrier::Finite(l) = &l_alg.carrier else {
        return Err(Error::CarrierNotAField);
    };
    if !is_field(l) {
        return Err(Error::CarrierNotAField);
    }
    let f = l.field();
    let d = l.dim();
    let inv: Vec<Vec<Elem>> = l_alg.invariants(None)?.iter().map(|x| x.as_finite().to_vec()).collect();
    let r = inv.len();
    if r == 0 || d % r != 0 {
        return Err(Error::Consistency("invariants do not form a subfield".into()));
    }
    let degree = d / r;
    let module_span = |bs: &[Vec<Elem>]| {
        let vs: Vec<Vec<Elem>> = bs.iter().flat_map(|b| inv.iter().map(move |u| l.mul(u, b))).collect();
        Subspace::span(d, &vs, f)
    };
    let mut basis: Vec<Vec<Elem>> = Vec::new();
    for i in 0..d {
        let mut next = basis.clone();
        next.push(unit_vector(d, i));
        if module_span(&next).dim() > module_span(&basis).dim() {
            basis = next;
        }
    }
    if basis.len() != degree {
        return Err(Error::Consistency("L is not free over L^G of the expected rank".into()));
    }
    let cols: Vec<Vec<Elem>> = basis.iter().flat_map(|b| inv.iter().map(move |u| l.mul(u, b))).collect();
    let a = Matrix::from_cols(d, &cols);
    let sv = s.as_finite();
    let mut m: RingMatrix<Vec<Elem>> = vec![vec![vec![0; d]; degree]; degree];
    for (j, b) in basis.iter().enumerate() {
        let (x, _) =
            solve_affine(&a, &l.mul(sv, b), f).ok_or_else(|| Error::Consistency("coordinates over L^G".into()))?;
        for (i, row) in m.iter_mut().enumerate() {
            let mut c = vec![0; d];
            for (lidx, u) in inv.iter().enumerate() {
                f.axpy(&mut c, x[i * r + lidx], u);
            }
            row[j] = c;
        }
    }
    let field_norm = SElem::Finite(berkowitz_det(l, &m));
    let trivial = trivial_subgroup(&l_alg.scheme)?;
    let norm = relative_norm(&trivial, l_alg, s, ext)?.value;
    let mumford = mumford_norm(l_alg, s)?;
    let group_order = l_alg.scheme.order();
    let divides = group_order.is_multiple_of(degree);
    let exponent = group_order / degree;
    let consistent = divides && mumford == norm && l_alg.carrier.pow(&field_norm, exponent as u64) == norm;
    Ok(FieldNormReport { degree, group_order, exponent, divides, field_norm, norm, mumford, consistent })
}

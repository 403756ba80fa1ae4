use super::Transfer;
use crate::error::{Error, Result};
use crate::hopf::subgroup::{left_invariants, right_invariants, SubgroupEmbedding};
use crate::repmod::{hom_space, is_equivariant, same_scheme, twisted_hom_invariants, GModule};
use crate::scalars::linalg::solve_affine;
use crate::scalars::{Elem, FiniteAlgebra, Matrix, Subspace};

/// `λ_{H,G}`; only the zero/nonzero distinction is meaningful.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lambda {
    Zero,
    NonZero(Elem),
}

impl Lambda {
    pub fn is_nonzero(&self) -> bool {
        matches!(self, Lambda::NonZero(_))
    }
}

/// `ε(τ)` when `ω_{H,G}` is trivial, zero otherwise.
pub fn lambda_scalar(e: &SubgroupEmbedding) -> Result<Lambda> {
    let tr = Transfer::new(e)?;
    Ok(lambda_of(&tr))
}

pub(crate) fn lambda_of(tr: &Transfer) -> Lambda {
    if !tr.omega().trivial {
        return Lambda::Zero;
    }
    match tr.embedding.amb().group_alg().apply_counit(tr.tau()) {
        0 => Lambda::Zero,
        c => Lambda::NonZero(c),
    }
}

/// Whether the trivial module splits off `m`: some `r ∘ i ≠ 0` with
/// `i: k → m`, `r: m → k` both `G`-linear.
pub fn trivial_is_summand(m: &GModule) -> Result<bool> {
    let k = GModule::trivial(m.scheme());
    let f = m.field();
    let ins = hom_space(&k, m)?;
    let outs = hom_space(m, &k)?;
    Ok(ins.iter().any(|i| outs.iter().any(|r| !r.mul(i, f).is_zero())))
}

/// H-linear retraction of `res t: k → res coind ω^{-1}`, if one exists.
pub fn p1_retraction(e: &SubgroupEmbedding) -> Result<Option<Matrix>> {
    let tr = Transfer::new(e)?;
    let c = tr.tmaps.coind_omega_inv.module.restrict(e)?;
    retraction(&c, &tr.tmaps.t.mat)
}

/// `G`-linear retraction of `t: k → coind ω^{-1}`, if one exists.
pub fn g_retraction(e: &SubgroupEmbedding) -> Result<Option<Matrix>> {
    let tr = Transfer::new(e)?;
    retraction(&tr.tmaps.coind_omega_inv.module, &tr.tmaps.t.mat)
}

fn retraction(c: &GModule, t: &Matrix) -> Result<Option<Matrix>> {
    let f = c.field();
    let k = GModule::trivial(c.scheme());
    for r in hom_space(c, &k)? {
        let s = r.mul(t, f).get(0, 0);
        if s != 0 {
            let r = r.scale(f.inv(s), f);
            if !is_equivariant(c, &k, &r) || r.mul(t, f) != Matrix::scalar(1) {
                return Err(Error::Consistency("retraction check".into()));
            }
            return Ok(Some(r));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HigmanStatus {
    Projective,
    NotProjective,
}

#[derive(Clone, Debug)]
pub struct HigmanCertificate {
    pub subgroups: Vec<String>,
    /// One `f_H` per subgroup with `Σ Tr_H^G(f_H) = id`; empty when not projective.
    pub maps: Vec<Matrix>,
    pub status: HigmanStatus,
}

/// Solves `Σ_H Tr_H^G(f_H) = id_M` with `f_H` ranging over `ω^{-1}`-twisted
/// `H`-invariants of `End(M)`.
pub fn higman_certificate(m: &GModule, collection: &[SubgroupEmbedding]) -> Result<HigmanCertificate> {
    let f = m.field();
    let d = m.dim();
    let mut blocks = Vec::new();
    let mut cols = Vec::new();
    for e in collection {
        if !same_scheme(e.amb(), m.scheme()) {
            return Err(Error::SchemeMismatch(format!("subgroup {} of another scheme", e.sub().name())));
        }
        let tr = Transfer::new(e)?;
        let res = m.restrict(e)?;
        let dom = twisted_hom_invariants(&res, &res, &tr.omega().inverse)?;
        for fm in &dom {
            cols.push(tr.apply_hom(m, m, fm).to_vec());
        }
        blocks.push((tr, dom));
    }
    let subgroups = collection.iter().map(|e| e.sub().name().to_string()).collect();
    let target = Matrix::identity(d).to_vec();
    let sol =
        if cols.is_empty() { None } else { solve_affine(&Matrix::from_cols(d * d, &cols), &target, f).map(|(x, _)| x) };
    let Some(x) = sol else {
        return Ok(HigmanCertificate { subgroups, maps: vec![], status: HigmanStatus::NotProjective });
    };
    let mut maps = Vec::new();
    let mut total = Matrix::zeros(d, d);
    let mut offset = 0;
    for (tr, dom) in &blocks {
        let mut fh = Matrix::zeros(d, d);
        for (k, fm) in dom.iter().enumerate() {
            fh.add_scaled(x[offset + k], fm, f);
        }
        offset += dom.len();
        total = total.add(&tr.apply_hom(m, m, &fh), f);
        maps.push(fh);
    }
    if total != Matrix::identity(d) {
        return Err(Error::Consistency("Higman certificate does not sum to the identity".into()));
    }
    Ok(HigmanCertificate { subgroups, maps, status: HigmanStatus::Projective })
}

/// `^H k[G]^K` with its algebra structure.
#[derive(Clone, Debug)]
pub struct DoubleCosets {
    pub basis: Vec<Vec<Elem>>,
    pub algebra: FiniteAlgebra,
}

pub fn double_coset_invariants(k: &SubgroupEmbedding, h: &SubgroupEmbedding) -> Result<DoubleCosets> {
    if !same_scheme(k.amb(), h.amb()) {
        return Err(Error::SchemeMismatch("subgroups of different schemes".into()));
    }
    let g = h.amb();
    let f = g.field();
    let n = g.order();
    let right = Subspace::span(n, &right_invariants(h), f);
    let left = Subspace::span(n, &left_invariants(k), f);
    let basis = right.intersection(&left, f).basis();
    let (algebra, _) = g.coord().algebra().subalgebra(&basis, None)?;
    Ok(DoubleCosets { basis, algebra })
}

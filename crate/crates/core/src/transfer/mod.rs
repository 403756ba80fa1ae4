//! Integrals, the modular character, relative dualizing characters and the
//! transfer built from the canonical map `k → coind ω^{-1}`.

mod higman;

use std::sync::Arc;

use crate::adjunction::{coinduce, Coinduced};
use crate::error::{Error, Result};
use crate::hopf::subgroup::SubgroupEmbedding;
use crate::hopf::GroupScheme;
use crate::repmod::{hom_act, invariants, twisted_hom_invariants, twisted_invariants, GLinearMap, GModule};
use crate::scalars::algebra::unit_vector;
use crate::scalars::linalg::{joint_kernel, solve_affine};
use crate::scalars::{Elem, Field, Matrix};

pub use higman::{
    double_coset_invariants, g_retraction, higman_certificate, lambda_scalar, p1_retraction, trivial_is_summand,
    DoubleCosets, HigmanCertificate, HigmanStatus, Lambda,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// `Σ_g g` over a basis of group-like elements.
    SumOfPoints,
    FirstCoordinate,
}

#[derive(Clone, Debug)]
pub struct IntegralSpace {
    pub scheme: Arc<GroupScheme>,
    pub side: Side,
    pub vector: Vec<Elem>,
    pub normalization: Normalization,
}

/// Left integrals `x Λ = ε(x) Λ` or right integrals `Λ x = ε(x) Λ` in `kG`.
pub fn integral_space(g: &Arc<GroupScheme>, side: Side) -> Result<IntegralSpace> {
    let kg = g.group_alg();
    let f = g.field();
    let n = kg.dim();
    let gens = g.kg_generators().to_vec();
    let basis = joint_kernel(
        n,
        gens.len(),
        |i, b| {
            let m = match side {
                Side::Left => kg.algebra().left_mult_matrix(&gens[i]),
                Side::Right => kg.algebra().right_mult_matrix(&gens[i]),
            };
            let eps = kg.apply_counit(&gens[i]);
            m.sub(&Matrix::identity(n).scale(eps, f), f).mul(b, f)
        },
        f,
    );
    if basis.cols() != 1 {
        return Err(Error::DimensionNotOne(basis.cols()));
    }
    let mut v = basis.col(0);
    let lead = *v.iter().find(|&&x| x != 0).expect("nonzero kernel vector");
    let inv = f.inv(lead);
    for x in v.iter_mut() {
        *x = f.mul(*x, inv);
    }
    let group_like = (0..n).all(|i| kg.is_group_like(&unit_vector(n, i)));
    let normalization = if group_like && v.iter().all(|&x| x == 1) {
        Normalization::SumOfPoints
    } else {
        Normalization::FirstCoordinate
    };
    Ok(IntegralSpace { scheme: g.clone(), side, vector: v, normalization })
}

/// Product of characters in `k[G]`.
pub fn char_mul(g: &GroupScheme, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    g.coord().mul(a, b)
}

pub fn char_inverse(g: &GroupScheme, a: &[Elem]) -> Vec<Elem> {
    g.coord().apply_antipode(a)
}

pub fn is_trivial_char(g: &GroupScheme, a: &[Elem]) -> bool {
    a == g.coord().unit()
}

/// `Σ χ(x_(1)) x_(2)`.
pub fn char_harpoon(g: &GroupScheme, chi: &[Elem], x: &[Elem]) -> Vec<Elem> {
    let f = g.field();
    let n = g.order();
    let d = g.group_alg().comultiply(x);
    let mut out = vec![0; n];
    for (ab, &c) in d.iter().enumerate() {
        if c != 0 {
            let (a, b) = (ab / n, ab % n);
            out[b] = f.add(out[b], f.mul(c, chi[a]));
        }
    }
    out
}

/// The left module of right integrals: `x Λ = δ(x) Λ`, embedded in the regular module.
#[derive(Clone, Debug)]
pub struct DeltaModule {
    pub integral: IntegralSpace,
    /// Values of `δ` on the `kG` basis; also its coordinates in `k[G]`.
    pub character: Vec<Elem>,
    pub module: GModule,
    pub embedding: GLinearMap,
}

impl DeltaModule {
    pub fn is_unimodular(&self) -> bool {
        is_trivial_char(&self.integral.scheme, &self.character)
    }
}

pub fn delta_module(g: &Arc<GroupScheme>) -> Result<DeltaModule> {
    let integral = integral_space(g, Side::Right)?;
    let kg = g.group_alg();
    let n = g.order();
    let lead = integral.vector.iter().position(|&x| x != 0).expect("nonzero integral");
    let character: Vec<Elem> = (0..n).map(|i| kg.mul(&unit_vector(n, i), &integral.vector)[lead]).collect();
    let module = GModule::character(g, &character);
    let emb = Matrix::from_cols(n, std::slice::from_ref(&integral.vector));
    let embedding = GLinearMap::new(module.clone(), GModule::regular(g), emb)?;
    Ok(DeltaModule { integral, character, module, embedding })
}

/// `ω_{H,G} = res δ_G · δ_H^{-1}` as a character of `H`.
#[derive(Clone, Debug)]
pub struct Omega {
    pub embedding: SubgroupEmbedding,
    pub character: Vec<Elem>,
    pub inverse: Vec<Elem>,
    pub trivial: bool,
}

impl Omega {
    pub fn module(&self) -> GModule {
        GModule::character(self.embedding.sub(), &self.character)
    }
    pub fn inverse_module(&self) -> GModule {
        GModule::character(self.embedding.sub(), &self.inverse)
    }
}

pub fn omega(e: &SubgroupEmbedding) -> Result<Omega> {
    let dg = delta_module(e.amb())?;
    let dh = delta_module(e.sub())?;
    Ok(omega_from(e, &dg, &dh))
}

fn omega_from(e: &SubgroupEmbedding, dg: &DeltaModule, dh: &DeltaModule) -> Omega {
    let h = e.sub();
    let res = e.restrict_fn(&dg.character);
    let character = char_mul(h, &res, &char_inverse(h, &dh.character));
    let inverse = char_inverse(h, &character);
    let trivial = is_trivial_char(h, &character);
    Omega { embedding: e.clone(), character, inverse, trivial }
}

/// `t̃: δ_G → coind δ_H` and `t: k → coind ω^{-1}`. Both send the basis vector
/// to the class of an element of `kG` tensored with `1`: `y` with
/// `y ι(Λ_H) = Λ_G`, and `τ = Σ δ_G(y_(1)) y_(2)`.
#[derive(Clone, Debug)]
pub struct TMaps {
    pub delta_g: DeltaModule,
    pub delta_h: DeltaModule,
    pub omega: Omega,
    pub y: Vec<Elem>,
    pub tau: Vec<Elem>,
    pub coind_delta: Coinduced,
    pub coind_omega_inv: Coinduced,
    pub t_tilde: GLinearMap,
    pub t: GLinearMap,
}

pub fn t_maps(e: &SubgroupEmbedding) -> Result<TMaps> {
    let g = e.amb();
    let f = g.field();
    let delta_g = delta_module(g)?;
    let delta_h = delta_module(e.sub())?;
    let omega = omega_from(e, &delta_g, &delta_h);
    let lam_h = e.include(&delta_h.integral.vector);
    let r = g.group_alg().algebra().right_mult_matrix(&lam_h);
    let (y, _) = solve_affine(&r, &delta_g.integral.vector, f)
        .ok_or_else(|| Error::Consistency("Λ_G is not a multiple of ι(Λ_H)".into()))?;
    let tau = char_harpoon(g, &delta_g.character, &y);

    let coind_delta = coinduce(e, &delta_h.module)?;
    let tt = coind_delta.class_of(&y, &[1]);
    if tt.iter().all(|&x| x == 0) {
        return Err(Error::ZeroMap("t̃".into()));
    }
    let t_tilde =
        GLinearMap::new(delta_g.module.clone(), coind_delta.module.clone(), Matrix::from_cols(tt.len(), &[tt]))?;

    let coind_omega_inv = coinduce(e, &omega.inverse_module())?;
    let t = coind_omega_inv.class_of(&tau, &[1]);
    if t.iter().all(|&x| x == 0) {
        return Err(Error::ZeroMap("t".into()));
    }
    let t = GLinearMap::new(GModule::trivial(g), coind_omega_inv.module.clone(), Matrix::from_cols(t.len(), &[t]))?;
    Ok(TMaps { delta_g, delta_h, omega, y, tau, coind_delta, coind_omega_inv, t_tilde, t })
}

/// A linear map between two subspaces given by bases; `matrix` acts on coordinates.
#[derive(Clone, Debug)]
pub struct TransferMap {
    pub domain: Vec<Vec<Elem>>,
    pub codomain: Vec<Vec<Elem>>,
    pub images: Vec<Vec<Elem>>,
    pub matrix: Matrix,
}

impl TransferMap {
    pub fn is_surjective(&self, f: &Field) -> bool {
        crate::scalars::rank(&self.matrix, f) == self.codomain.len()
    }
    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

fn coords_in(basis: &[Vec<Elem>], v: &[Elem], f: &Field) -> Result<Vec<Elem>> {
    if basis.is_empty() {
        return if v.iter().all(|&x| x == 0) {
            Ok(vec![])
        } else {
            Err(Error::Consistency("image outside the invariants".into()))
        };
    }
    let a = Matrix::from_cols(v.len(), basis);
    solve_affine(&a, v, f).map(|(x, _)| x).ok_or_else(|| Error::Consistency("image outside the invariants".into()))
}

/// `Tr_H^G` for a fixed `H ≤ G`.
#[derive(Clone, Debug)]
pub struct Transfer {
    pub embedding: SubgroupEmbedding,
    pub tmaps: TMaps,
}

impl Transfer {
    pub fn new(e: &SubgroupEmbedding) -> Result<Transfer> {
        Ok(Transfer { embedding: e.clone(), tmaps: t_maps(e)? })
    }

    pub fn omega(&self) -> &Omega {
        &self.tmaps.omega
    }
    pub fn tau(&self) -> &[Elem] {
        &self.tmaps.tau
    }

    /// `Tr(l) = τ l` on `l` with `h l = ω^{-1}(h) l`.
    pub fn apply(&self, l: &GModule, v: &[Elem]) -> Vec<Elem> {
        l.act_vec(&self.tmaps.tau, v)
    }

    /// `Hom_H(ω^{-1}, L) → ^G L` for a `G`-module `L`.
    pub fn on_invariants(&self, l: &GModule) -> Result<TransferMap> {
        let f = l.field();
        let res = l.restrict(&self.embedding)?;
        let domain = twisted_invariants(&res, &self.tmaps.omega.inverse);
        let codomain = invariants(l);
        let images: Vec<Vec<Elem>> = domain.iter().map(|v| self.apply(l, v)).collect();
        let cols = images.iter().map(|v| coords_in(&codomain, v, f)).collect::<Result<Vec<_>>>()?;
        let matrix = Matrix::from_cols(codomain.len(), &cols);
        Ok(TransferMap { domain, codomain, images, matrix })
    }

    /// `Hom_H(M, ω ⊗ N) → Hom_G(M, N)`, `F ↦ τ · F`; vectors are row-major matrices.
    pub fn on_hom(&self, m: &GModule, n: &GModule) -> Result<TransferMap> {
        let f = m.field();
        let e = &self.embedding;
        let dom = twisted_hom_invariants(&m.restrict(e)?, &n.restrict(e)?, &self.tmaps.omega.inverse)?;
        let cod = crate::repmod::hom_space(m, n)?;
        let images: Vec<Matrix> = dom.iter().map(|fm| hom_act(m, n, &self.tmaps.tau, fm)).collect();
        for im in &images {
            if !crate::repmod::is_equivariant(m, n, im) {
                return Err(Error::Consistency("transfer output is not G-linear".into()));
            }
        }
        let codomain: Vec<Vec<Elem>> = cod.iter().map(|x| x.to_vec()).collect();
        let images: Vec<Vec<Elem>> = images.iter().map(|x| x.to_vec()).collect();
        let cols = images.iter().map(|v| coords_in(&codomain, v, f)).collect::<Result<Vec<_>>>()?;
        let matrix = Matrix::from_cols(codomain.len(), &cols);
        Ok(TransferMap { domain: dom.iter().map(|x| x.to_vec()).collect(), codomain, images, matrix })
    }

    /// `Tr(F) = τ · F` on a single map `F: M → N`.
    pub fn apply_hom(&self, m: &GModule, n: &GModule, fm: &Matrix) -> Matrix {
        hom_act(m, n, &self.tmaps.tau, fm)
    }
}

/// `Tr_K^G(l)` against `Tr_H^G(Tr_K^H l)` on `Hom_K(ω_{K,G}^{-1}, L)`, the inner
/// transfer taken on `ω_{H,G} ⊗ res L`. Returns both image matrices.
pub fn transitivity_images(
    k_in_h: &SubgroupEmbedding,
    h_in_g: &SubgroupEmbedding,
    l: &GModule,
) -> Result<(Matrix, Matrix)> {
    let k_in_g = crate::hopf::subgroup::compose(k_in_h, h_in_g)?;
    let (tr_kh, tr_hg, tr_kg) = (Transfer::new(k_in_h)?, Transfer::new(h_in_g)?, Transfer::new(&k_in_g)?);
    let h = h_in_g.sub();
    let inner = h_in_g.include(&char_harpoon(h, &tr_hg.omega().character, tr_kh.tau()));
    let chained_elem = h_in_g.amb().group_alg().mul(tr_hg.tau(), &inner);
    let domain = twisted_invariants(&l.restrict(&k_in_g)?, &tr_kg.omega().inverse);
    let expected = char_mul(k_in_h.sub(), &tr_kh.omega().inverse, &k_in_h.restrict_fn(&tr_hg.omega().inverse));
    if expected != tr_kg.omega().inverse {
        return Err(Error::Consistency("ω_{K,G} ≠ ω_{K,H} · res ω_{H,G}".into()));
    }
    let direct: Vec<Vec<Elem>> = domain.iter().map(|v| tr_kg.apply(l, v)).collect();
    let chained: Vec<Vec<Elem>> = domain.iter().map(|v| l.act_vec(&chained_elem, v)).collect();
    Ok((Matrix::from_cols(l.dim(), &direct), Matrix::from_cols(l.dim(), &chained)))
}

/// `Tr(φ ∘ l) = φ ∘ Tr(l)` for every basis map `φ ∈ Hom_G(L, L')`; returns the
/// number of squares checked.
pub fn naturality_squares(e: &SubgroupEmbedding, l: &GModule, l2: &GModule) -> Result<usize> {
    let tr = Transfer::new(e)?;
    let f = l.field();
    let domain = twisted_invariants(&l.restrict(e)?, &tr.omega().inverse);
    let mut count = 0;
    for phi in crate::repmod::hom_space(l, l2)? {
        for v in &domain {
            if tr.apply(l2, &phi.mul_vec(v, f)) != phi.mul_vec(&tr.apply(l, v), f) {
                return Err(Error::Consistency("transfer naturality square fails".into()));
            }
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::builtin::{self, GroupTable};
    use crate::hopf::subgroup::{identity_embedding, subgroup_embed, trivial_subgroup};

    fn f(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    fn gen(g: &GroupScheme, name: &str) -> Vec<Elem> {
        let i = g.coord().names().iter().position(|n| n == name).unwrap();
        unit_vector(g.order(), i)
    }

    #[test]
    fn constant_integral_is_sum() {
        let g = Arc::new(builtin::constant(&f(3), &GroupTable::cyclic(3)).unwrap());
        for side in [Side::Left, Side::Right] {
            let i = integral_space(&g, side).unwrap();
            assert_eq!(i.vector, vec![1, 1, 1]);
            assert_eq!(i.normalization, Normalization::SumOfPoints);
        }
    }

    #[test]
    fn alpha_p_integral_is_top_power() {
        for p in [2, 3] {
            let g = Arc::new(builtin::alpha_p(&f(p)).unwrap());
            let l = integral_space(&g, Side::Left).unwrap();
            let r = integral_space(&g, Side::Right).unwrap();
            assert_eq!(l.vector, unit_vector(p as usize, p as usize - 1));
            assert_eq!(l.vector, r.vector);
            assert!(delta_module(&g).unwrap().is_unimodular());
        }
    }

    #[test]
    fn semidirect_is_not_unimodular() {
        for p in [2, 3] {
            let g = Arc::new(builtin::alpha_rtimes_mu(&f(p)).unwrap());
            let l = integral_space(&g, Side::Left).unwrap();
            let r = integral_space(&g, Side::Right).unwrap();
            assert_ne!(l.vector, r.vector);
            assert!(!delta_module(&g).unwrap().is_unimodular());
            let x = gen(&g, "x");
            let y_minus_1: Vec<Elem> =
                gen(&g, "y").iter().zip(g.coord().unit()).map(|(&a, &b)| g.field().sub(a, b)).collect();
            let alpha = subgroup_embed(&g, &[y_minus_1], "alpha_p").unwrap();
            assert_eq!(alpha.sub().order(), p as usize);
            assert!(omega(&alpha).unwrap().trivial);
            let mu = subgroup_embed(&g, &[x], "mu_p").unwrap();
            assert!(!omega(&mu).unwrap().trivial);
        }
    }

    #[test]
    fn t_maps_are_equivariant() {
        let g = Arc::new(builtin::alpha_rtimes_mu(&f(3)).unwrap());
        let mu = subgroup_embed(&g, &[gen(&g, "x")], "mu_p").unwrap();
        t_maps(&mu).unwrap();
        t_maps(&trivial_subgroup(&g).unwrap()).unwrap();
        let h = Arc::new(builtin::heisenberg1(&f(2)).unwrap());
        let sub = subgroup_embed(&h, &[gen(&h, "a"), gen(&h, "b")], "H").unwrap();
        t_maps(&sub).unwrap();
        let id = t_maps(&identity_embedding(&h)).unwrap();
        assert_eq!(id.t.mat, Matrix::scalar(1));
    }

    #[test]
    fn transfer_of_identity_is_index() {
        let g = Arc::new(builtin::constant(&f(3), &GroupTable::s3()).unwrap());
        let names = g.coord().names().to_vec();
        let not_in_h: Vec<Vec<Elem>> = ["d_r", "d_r^2", "d_sr", "d_sr^2"]
            .iter()
            .map(|n| unit_vector(6, names.iter().position(|x| x == n).unwrap()))
            .collect();
        let h = subgroup_embed(&g, &not_in_h, "<s>").unwrap();
        assert_eq!(h.sub().order(), 2);
        let tr = Transfer::new(&h).unwrap();
        let k = GModule::trivial(&g);
        let m = tr.on_invariants(&k).unwrap();
        assert_eq!(m.matrix, Matrix::scalar(0));
        let m = tr.on_hom(&k, &k).unwrap();
        assert_eq!(m.matrix, Matrix::scalar(0));
        let c3: Vec<Vec<Elem>> = ["d_s", "d_sr", "d_sr^2"]
            .iter()
            .map(|n| unit_vector(6, names.iter().position(|x| x == n).unwrap()))
            .collect();
        let h = subgroup_embed(&g, &c3, "C3").unwrap();
        let m = Transfer::new(&h).unwrap().on_invariants(&k).unwrap();
        assert_eq!(m.matrix, Matrix::scalar(2));
    }

    #[test]
    fn transitivity_and_naturality_s3() {
        use crate::hopf::subgroup::nested;
        let f3 = f(3);
        let g = Arc::new(builtin::constant(&f3, &GroupTable::s3()).unwrap());
        let pts = |ix: &[usize]| ix.iter().map(|&i| unit_vector(6, i)).collect::<Vec<_>>();
        // H = {1, r, r^2}, K = 1
        let tri = nested(&g, &pts(&[3, 4, 5]), &pts(&[1, 2, 3, 4, 5]), ("C3", "1")).unwrap();
        for l in [GModule::regular(&g), GModule::left_translation(&g), GModule::trivial(&g)] {
            let (a, b) = transitivity_images(&tri.k_in_h, &tri.h_in_g, &l).unwrap();
            assert_eq!(a, b);
            assert!(naturality_squares(&tri.h_in_g, &l, &GModule::regular(&g)).unwrap() > 0 || l.dim() == 1);
        }
    }

    #[test]
    fn transitivity_heisenberg() {
        use crate::hopf::subgroup::nested;
        for p in [2, 3] {
            let g = Arc::new(builtin::heisenberg1(&f(p)).unwrap());
            let (a, b) = (gen(&g, "a"), gen(&g, "b"));
            let tri = nested(&g, std::slice::from_ref(&a), &[a.clone(), b], ("K", "H")).unwrap();
            let l = GModule::regular(&g);
            let (x, y) = transitivity_images(&tri.k_in_h, &tri.h_in_g, &l).unwrap();
            assert_eq!(x, y);
            assert!(naturality_squares(&tri.k_in_g, &l, &l).unwrap() > 0);
        }
    }
}

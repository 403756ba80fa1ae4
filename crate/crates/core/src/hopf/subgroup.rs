use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalars::algebra::unit_vector;
use crate::scalars::linalg::{self, kernel_basis};
use crate::scalars::{Elem, Matrix, QuotientMap, Subspace};

use super::algebra::HopfAlgebra;
use super::scheme::GroupScheme;

/// Closed subgroup `H ≤ G` presented by the Hopf ideal `ker(k[G] ↠ k[H])`.
#[derive(Clone, Debug)]
pub struct SubgroupEmbedding {
    sub: Arc<GroupScheme>,
    amb: Arc<GroupScheme>,
    coord_surj: Matrix,
    alg_inj: Matrix,
    ideal: Subspace,
}

impl SubgroupEmbedding {
    pub fn sub(&self) -> &Arc<GroupScheme> {
        &self.sub
    }
    pub fn amb(&self) -> &Arc<GroupScheme> {
        &self.amb
    }
    /// `k[G] ↠ k[H]`, a `|H| x |G|` matrix.
    pub fn coord_surj(&self) -> &Matrix {
        &self.coord_surj
    }
    /// `kH ↪ kG`, a `|G| x |H|` matrix.
    pub fn alg_inj(&self) -> &Matrix {
        &self.alg_inj
    }
    pub fn ideal(&self) -> &Subspace {
        &self.ideal
    }
    /// `|G : H|`.
    pub fn index(&self) -> usize {
        self.amb.order() / self.sub.order()
    }
    pub fn is_identity(&self) -> bool {
        self.ideal.dim() == 0
    }

    /// Image of `h ∈ kH` in `kG`.
    pub fn include(&self, h: &[Elem]) -> Vec<Elem> {
        self.alg_inj.mul_vec(h, self.amb.field())
    }

    /// Image of `f ∈ k[G]` in `k[H]`.
    pub fn restrict_fn(&self, f: &[Elem]) -> Vec<Elem> {
        self.coord_surj.mul_vec(f, self.amb.field())
    }

    /// Checks that both structure maps are Hopf maps and mutually dual.
    pub fn verify(&self) -> bool {
        let f = self.amb.field();
        let (g, h) = (self.amb.coord(), self.sub.coord());
        let pi = &self.coord_surj;
        let n = g.dim();
        let pipi = pi.kronecker(pi, f);
        let mult_ok = (0..n).all(|i| {
            (0..n).all(|j| {
                let prod = g.mul(&unit_vector(n, i), &unit_vector(n, j));
                pi.mul_vec(&prod, f) == h.mul(&pi.col(i), &pi.col(j))
            })
        });
        let comult_ok = pipi.mul(&g.comult_matrix(), f) == h.comult_matrix().mul(pi, f);
        let counit_ok = (0..n).all(|i| h.apply_counit(&pi.col(i)) == g.counit()[i]);
        let antipode_ok = pi.mul(g.antipode(), f) == h.antipode().mul(pi, f);
        let dual_ok = self.alg_inj == pi.transpose();
        linalg::rank(pi, f) == h.dim() && mult_ok && comult_ok && counit_ok && antipode_ok && dual_ok
    }
}

/// Quotient Hopf algebra `A / I` for a Hopf ideal `I`.
pub fn quotient_hopf(a: &HopfAlgebra, ideal: &Subspace) -> Result<(HopfAlgebra, QuotientMap)> {
    let f = a.field();
    for v in ideal.basis() {
        let label = || a.format(&v);
        if a.apply_counit(&v) != 0 {
            return Err(Error::NotHopfIdeal(format!("counit is nonzero on {}", label())));
        }
        if !ideal.contains(&a.apply_antipode(&v), f) {
            return Err(Error::NotHopfIdeal(format!("antipode does not preserve the ideal at {}", label())));
        }
    }
    let (alg, q) = a.algebra().quotient(ideal)?;
    let m = q.dim();
    let n = a.dim();
    let pi = q.matrix(f);
    let proj_tensor = |t: &[Elem]| -> Vec<Elem> {
        let mut out = vec![0; m * m];
        for (ij, &c) in t.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let (pi_i, pi_j) = (pi.col(ij / n), pi.col(ij % n));
            for (k, &x) in pi_i.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let cx = f.mul(c, x);
                for (l, &y) in pi_j.iter().enumerate() {
                    if y != 0 {
                        out[k * m + l] = f.add(out[k * m + l], f.mul(cx, y));
                    }
                }
            }
        }
        out
    };
    for v in ideal.basis() {
        if proj_tensor(&a.comultiply(&v)).iter().any(|&c| c != 0) {
            return Err(Error::NotHopfIdeal(format!("not a coideal at {}", a.format(&v))));
        }
    }
    let mut comult = Vec::with_capacity(m);
    let mut counit = Vec::with_capacity(m);
    let mut s_cols = Vec::with_capacity(m);
    for k in 0..m {
        let lift = q.section(&unit_vector(m, k));
        let d = proj_tensor(&a.comultiply(&lift));
        comult.push(d.iter().enumerate().filter(|(_, &c)| c != 0).map(|(ij, &c)| (ij / m, ij % m, c)).collect());
        counit.push(a.apply_counit(&lift));
        s_cols.push(q.project(&a.apply_antipode(&lift), f));
    }
    let h = HopfAlgebra::new(alg, comult, counit, Matrix::from_cols(m, &s_cols))?;
    Ok((h, q))
}

/// Subgroup cut out by the ideal generated by `gens ⊆ k[G]`.
pub fn subgroup_embed(g: &Arc<GroupScheme>, gens: &[Vec<Elem>], name: &str) -> Result<SubgroupEmbedding> {
    let coord = g.coord();
    let n = coord.dim();
    if gens.iter().any(|v| v.len() != n) {
        return Err(Error::DimensionMismatch("ideal generator length".into()));
    }
    let ideal = coord.algebra().ideal(gens);
    if ideal.dim() == 0 {
        return Ok(SubgroupEmbedding {
            sub: g.clone(),
            amb: g.clone(),
            coord_surj: Matrix::identity(n),
            alg_inj: Matrix::identity(n),
            ideal,
        });
    }
    let (h, q) = quotient_hopf(coord, &ideal)?;
    let kg_names: Vec<String> = q.free_columns().iter().map(|&c| g.group_alg().names()[c].clone()).collect();
    let sub = Arc::new(GroupScheme::from_coord(name, h, Some(kg_names))?);
    let coord_surj = q.matrix(g.field());
    let alg_inj = coord_surj.transpose();
    Ok(SubgroupEmbedding { sub, amb: g.clone(), coord_surj, alg_inj, ideal })
}

/// `G ≤ G`.
pub fn identity_embedding(g: &Arc<GroupScheme>) -> SubgroupEmbedding {
    subgroup_embed(g, &[], g.name()).expect("zero ideal is a Hopf ideal")
}

/// Generators of the augmentation ideal `ker ε`.
pub fn augmentation_ideal(g: &GroupScheme) -> Vec<Vec<Elem>> {
    let c = g.coord();
    let f = g.field();
    (0..c.dim())
        .map(|i| {
            let mut v = unit_vector(c.dim(), i);
            let e = c.counit()[i];
            for (k, &u) in c.unit().iter().enumerate() {
                v[k] = f.sub(v[k], f.mul(e, u));
            }
            v
        })
        .filter(|v| v.iter().any(|&x| x != 0))
        .collect()
}

/// `1 ≤ G`.
pub fn trivial_subgroup(g: &Arc<GroupScheme>) -> Result<SubgroupEmbedding> {
    subgroup_embed(g, &augmentation_ideal(g), "1")
}

/// `K ≤ G` from `K ≤ H` and `H ≤ G`; the subgroup object of `inner` is kept.
pub fn compose(inner: &SubgroupEmbedding, outer: &SubgroupEmbedding) -> Result<SubgroupEmbedding> {
    if !Arc::ptr_eq(inner.amb(), outer.sub()) && **inner.amb() != **outer.sub() {
        return Err(Error::SchemeMismatch("embeddings do not compose".into()));
    }
    let f = outer.amb.field();
    let coord_surj = inner.coord_surj.mul(&outer.coord_surj, f);
    let alg_inj = outer.alg_inj.mul(&inner.alg_inj, f);
    let ker = kernel_basis(&coord_surj, f);
    let ideal = Subspace::span(outer.amb.order(), &ker, f);
    Ok(SubgroupEmbedding { sub: inner.sub.clone(), amb: outer.amb.clone(), coord_surj, alg_inj, ideal })
}

/// The subgroup of `H = outer.sub` cut out by the image of `gens ⊆ k[G]`.
pub fn restrict_to(outer: &SubgroupEmbedding, gens: &[Vec<Elem>], name: &str) -> Result<SubgroupEmbedding> {
    let images: Vec<Vec<Elem>> = gens.iter().map(|v| outer.restrict_fn(v)).collect();
    subgroup_embed(outer.sub(), &images, name)
}

/// A chain `K ≤ H ≤ G` sharing subgroup objects.
#[derive(Clone, Debug)]
pub struct NestedTriple {
    pub k_in_h: SubgroupEmbedding,
    pub h_in_g: SubgroupEmbedding,
    pub k_in_g: SubgroupEmbedding,
}

/// Builds `K ≤ H ≤ G` from ideals of `k[G]`; requires `I_H ⊆ I_K`.
pub fn nested(
    g: &Arc<GroupScheme>,
    h_gens: &[Vec<Elem>],
    k_gens: &[Vec<Elem>],
    names: (&str, &str),
) -> Result<NestedTriple> {
    let h_in_g = subgroup_embed(g, h_gens, names.0)?;
    let mut all = h_gens.to_vec();
    all.extend_from_slice(k_gens);
    let k_direct = g.coord().algebra().ideal(&all);
    if k_direct != g.coord().algebra().ideal(k_gens) {
        return Err(Error::SchemeMismatch("K is not contained in H".into()));
    }
    let k_in_h = restrict_to(&h_in_g, k_gens, names.1)?;
    let k_in_g = compose(&k_in_h, &h_in_g)?;
    Ok(NestedTriple { k_in_h, h_in_g, k_in_g })
}

/// Checks that the ideal of `N` is stable under the coadjoint coaction
/// `f ↦ Σ f_(1) S(f_(3)) ⊗ f_(2)`.
pub fn check_normal(e: &SubgroupEmbedding) -> Result<()> {
    let g = e.amb.coord();
    let f = g.field();
    let n = g.dim();
    let m = e.sub.order();
    let s_cols: Vec<Vec<Elem>> = (0..n).map(|c| g.antipode().col(c)).collect();
    for v in e.ideal.basis() {
        let d2 = g.double_comultiply(&v);
        // accumulate Σ c e_a S(e_c) ⊗ π(e_b) as an n x m array
        let mut acc = vec![0; n * m];
        for (idx, &c) in d2.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let (a, b, cc) = (idx / (n * n), (idx / n) % n, idx % n);
            let pb = e.coord_surj.col(b);
            if pb.iter().all(|&x| x == 0) {
                continue;
            }
            let left = g.mul(&unit_vector(n, a), &s_cols[cc]);
            for (i, &x) in left.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let cx = f.mul(c, x);
                for (j, &y) in pb.iter().enumerate() {
                    if y != 0 {
                        acc[i * m + j] = f.add(acc[i * m + j], f.mul(cx, y));
                    }
                }
            }
        }
        if acc.iter().any(|&x| x != 0) {
            return Err(Error::NotNormal(format!("conjugation moves {}", g.format(&v))));
        }
    }
    Ok(())
}

/// `G/N` with `k[G/N] = {f : (id ⊗ π)Δf = f ⊗ 1} ⊆ k[G]`.
#[derive(Clone, Debug)]
pub struct QuotientScheme {
    pub scheme: Arc<GroupScheme>,
    /// `k[G/N] ↪ k[G]`, a `|G| x |G/N|` matrix.
    pub coord_incl: Matrix,
    /// `kG ↠ k(G/N)`, the transpose of `coord_incl`.
    pub alg_surj: Matrix,
}

/// Right `H`-invariants `{f : (id ⊗ π_H)Δf = f ⊗ 1}` as a basis of `k[G]`.
pub fn right_invariants(e: &SubgroupEmbedding) -> Vec<Vec<Elem>> {
    let g = e.amb.coord();
    let f = g.field();
    let (n, m) = (g.dim(), e.sub.order());
    let one_h = e.sub.coord().unit();
    let cols: Vec<Vec<Elem>> = (0..n)
        .map(|k| {
            let mut out = vec![0; n * m];
            for &(i, j, c) in g.comult_terms(k) {
                for (l, &y) in e.coord_surj.col(j).iter().enumerate() {
                    if y != 0 {
                        out[i * m + l] = f.add(out[i * m + l], f.mul(c, y));
                    }
                }
            }
            for (l, &u) in one_h.iter().enumerate() {
                out[k * m + l] = f.sub(out[k * m + l], u);
            }
            out
        })
        .collect();
    kernel_basis(&Matrix::from_cols(n * m, &cols), f)
}

/// Left `K`-invariants `{f : (π_K ⊗ id)Δf = 1 ⊗ f}`.
pub fn left_invariants(e: &SubgroupEmbedding) -> Vec<Vec<Elem>> {
    let g = e.amb.coord();
    let f = g.field();
    let (n, m) = (g.dim(), e.sub.order());
    let one_k = e.sub.coord().unit();
    let cols: Vec<Vec<Elem>> = (0..n)
        .map(|k| {
            let mut out = vec![0; m * n];
            for &(i, j, c) in g.comult_terms(k) {
                for (l, &y) in e.coord_surj.col(i).iter().enumerate() {
                    if y != 0 {
                        out[l * n + j] = f.add(out[l * n + j], f.mul(c, y));
                    }
                }
            }
            for (l, &u) in one_k.iter().enumerate() {
                out[l * n + k] = f.sub(out[l * n + k], u);
            }
            out
        })
        .collect();
    kernel_basis(&Matrix::from_cols(m * n, &cols), f)
}

/// Coordinates of `v ∈ A ⊗ A` with respect to `J ⊗ J` for an echelon basis `J`
/// of a subspace with the given pivots.
fn tensor_coords(
    v: &[Elem],
    basis: &[Vec<Elem>],
    pivots: &[usize],
    n: usize,
    f: &crate::scalars::Field,
) -> Option<Vec<Elem>> {
    let r = basis.len();
    let c: Vec<Elem> = (0..r * r).map(|ab| v[pivots[ab / r] * n + pivots[ab % r]]).collect();
    let mut back = vec![0; n * n];
    for (ab, &x) in c.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let (ba, bb) = (&basis[ab / r], &basis[ab % r]);
        for (i, &y) in ba.iter().enumerate() {
            if y == 0 {
                continue;
            }
            for (j, &z) in bb.iter().enumerate() {
                if z != 0 {
                    back[i * n + j] = f.add(back[i * n + j], f.mul(x, f.mul(y, z)));
                }
            }
        }
    }
    (back == v).then_some(c)
}

/// Hopf subalgebra of `a` spanned by `vectors`, as a standalone Hopf algebra
/// with its inclusion matrix.
pub fn hopf_subalgebra(a: &HopfAlgebra, vectors: &[Vec<Elem>]) -> Result<(HopfAlgebra, Matrix)> {
    let f = a.field();
    let n = a.dim();
    let span = Subspace::span(n, vectors, f);
    let basis = span.basis();
    let (alg, incl) = a.algebra().subalgebra(&basis, None)?;
    let r = basis.len();
    let mut comult = Vec::with_capacity(r);
    let mut counit = Vec::with_capacity(r);
    let mut s_cols = Vec::with_capacity(r);
    for b in &basis {
        let d = tensor_coords(&a.comultiply(b), &basis, span.pivots(), n, f)
            .ok_or_else(|| Error::InvalidTable("subspace is not a subcoalgebra".into()))?;
        comult.push(d.iter().enumerate().filter(|(_, &c)| c != 0).map(|(ij, &c)| (ij / r, ij % r, c)).collect());
        counit.push(a.apply_counit(b));
        s_cols.push(
            span.coords(&a.apply_antipode(b), f)
                .ok_or_else(|| Error::InvalidTable("subspace is not stable under the antipode".into()))?,
        );
    }
    let h = HopfAlgebra::new(alg, comult, counit, Matrix::from_cols(r, &s_cols))?;
    Ok((h, incl))
}

/// `G/N` for normal `N`; errors with [`Error::NotNormal`] otherwise.
pub fn quotient_scheme(e: &SubgroupEmbedding, name: &str) -> Result<QuotientScheme> {
    check_normal(e)?;
    let inv = right_invariants(e);
    let (h, incl) = hopf_subalgebra(e.amb.coord(), &inv)?;
    let kg_names = (0..h.dim()).map(|i| format!("q{i}")).collect();
    let scheme = Arc::new(GroupScheme::from_coord(name, h, Some(kg_names))?);
    let alg_surj = incl.transpose();
    Ok(QuotientScheme { scheme, coord_incl: incl, alg_surj })
}

/// Image `H/N ≤ G/N` of a subgroup `H ⊇ N` under the quotient map.
pub fn image_in_quotient(h: &SubgroupEmbedding, q: &QuotientScheme, name: &str) -> Result<SubgroupEmbedding> {
    let f = h.amb.field();
    // k[G/N] → k[G] → k[H]; its kernel is the ideal of H/N
    let comp = h.coord_surj.mul(&q.coord_incl, f);
    let ker = kernel_basis(&comp, f);
    subgroup_embed(&q.scheme, &ker, name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::builtin::{self, GroupTable};
    use crate::scalars::Field;

    fn var(g: &GroupScheme, name: &str) -> Vec<Elem> {
        let i = g.coord().names().iter().position(|n| n == name).unwrap();
        unit_vector(g.order(), i)
    }

    #[test]
    fn heisenberg_subgroups() {
        for p in [2, 3] {
            let f = Field::prime(p).unwrap();
            let g = Arc::new(builtin::heisenberg1(&f).unwrap());
            let h = subgroup_embed(&g, &[var(&g, "a"), var(&g, "b")], "H").unwrap();
            assert_eq!(h.sub().order(), p as usize);
            assert!(h.verify());
            let k = subgroup_embed(&g, &[var(&g, "a")], "K").unwrap();
            assert_eq!(k.sub().order(), (p * p) as usize);
            assert!(k.verify());
            let id = identity_embedding(&g);
            assert!(Arc::ptr_eq(id.sub(), &g));
            let one = trivial_subgroup(&g).unwrap();
            assert_eq!(one.sub().order(), 1);
            assert!(one.verify());
        }
    }

    #[test]
    fn non_hopf_ideal_is_rejected() {
        let f = Field::prime(2).unwrap();
        let g = Arc::new(builtin::heisenberg1(&f).unwrap());
        // (b) alone is not a coideal: Δb contains a ⊗ c
        assert!(matches!(subgroup_embed(&g, &[var(&g, "b")], "bad"), Err(Error::NotHopfIdeal(_))));
        assert!(matches!(subgroup_embed(&g, &[g.coord().unit().to_vec()], "bad"), Err(Error::NotHopfIdeal(_))));
    }

    #[test]
    fn heisenberg_center_quotient() {
        for p in [2, 3] {
            let f = Field::prime(p).unwrap();
            let g = Arc::new(builtin::heisenberg1(&f).unwrap());
            let z = subgroup_embed(&g, &[var(&g, "a"), var(&g, "c")], "Z").unwrap();
            let q = quotient_scheme(&z, "G/Z").unwrap();
            assert_eq!(q.scheme.order(), (p * p) as usize);
            let h = subgroup_embed(&g, &[var(&g, "a"), var(&g, "b")], "H").unwrap();
            assert!(matches!(check_normal(&h), Err(Error::NotNormal(_))));
        }
    }

    #[test]
    fn trivial_quotients() {
        let f = Field::prime(3).unwrap();
        let g = Arc::new(builtin::constant(&f, &GroupTable::s3()).unwrap());
        let all = quotient_scheme(&identity_embedding(&g), "G/G").unwrap();
        assert_eq!(all.scheme.order(), 1);
        let none = quotient_scheme(&trivial_subgroup(&g).unwrap(), "G/1").unwrap();
        assert_eq!(none.scheme.order(), 6);
    }

    #[test]
    fn nested_triples_compose() {
        let f = Field::prime(2).unwrap();
        let g = Arc::new(builtin::heisenberg1(&f).unwrap());
        let t = nested(&g, &[var(&g, "a")], &[var(&g, "a"), var(&g, "b")], ("K", "H")).unwrap();
        assert_eq!(t.k_in_g.sub().order(), 2);
        assert!(t.k_in_g.verify());
        assert!(Arc::ptr_eq(t.k_in_g.sub(), t.k_in_h.sub()));
    }
}

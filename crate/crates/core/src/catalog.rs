//! Fixed examples: the scheme list, subgroup pairs, nested triples, module
//! batteries and comodule algebras used by the verification suites.
//!
//! Every constructor takes the field, so the same catalog can be rebuilt over
//! `F_{p^2}` for base-change comparisons.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hopf::builtin::{self, GroupTable};
use crate::hopf::subgroup::{
    identity_embedding, nested, restrict_to, right_invariants, subgroup_embed, trivial_subgroup, NestedTriple,
    SubgroupEmbedding,
};
use crate::hopf::GroupScheme;
use crate::norm::{Carrier, ComoduleAlgebra, SElem};
use crate::repmod::GModule;
use crate::scalars::algebra::unit_vector;
use crate::scalars::{CommRing, Elem, Field, FiniteAlgebra, Poly, PolyRing};

/// Coordinate function with the given basis name.
pub fn coord_gen(g: &GroupScheme, name: &str) -> Result<Vec<Elem>> {
    let i = g
        .coord()
        .names()
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| Error::Parse(format!("{} has no coordinate `{name}`", g.name())))?;
    Ok(unit_vector(g.order(), i))
}

/// For a constant group: the ideal of the subgroup with the given elements.
pub fn points_ideal(g: &GroupScheme, keep: &[&str]) -> Vec<Vec<Elem>> {
    g.coord()
        .names()
        .iter()
        .enumerate()
        .filter(|(_, n)| !keep.iter().any(|k| format!("d_{k}") == **n))
        .map(|(i, _)| unit_vector(g.order(), i))
        .collect()
}

pub fn field(p: u32, degree: u32) -> Result<Field> {
    Field::new(p, degree, None)
}

fn arc(g: Result<GroupScheme>) -> Result<Arc<GroupScheme>> {
    g.map(Arc::new)
}

/// `F_{p^degree}` for the prime `p` of each entry.
pub fn integral_schemes(degree: u32) -> Result<Vec<Arc<GroupScheme>>> {
    let f2 = field(2, degree)?;
    let f3 = field(3, degree)?;
    let named = |g: Result<GroupScheme>, name: &str| arc(g.map(|g| g.with_name(name)));
    Ok(vec![
        named(builtin::constant(&f2, &GroupTable::cyclic(2)), "C2")?,
        named(builtin::constant(&f3, &GroupTable::cyclic(3)), "C3")?,
        named(builtin::constant(&f2, &GroupTable::s3()), "S3/F2")?,
        named(builtin::constant(&f3, &GroupTable::s3()), "S3/F3")?,
        named(builtin::alpha_p(&f2), "alpha_2")?,
        named(builtin::alpha_p(&f3), "alpha_3")?,
        named(builtin::mu_p(&f2), "mu_2")?,
        named(builtin::mu_p(&f3), "mu_3")?,
        named(builtin::heisenberg1(&f2), "heisenberg1(p=2)")?,
        named(builtin::heisenberg1(&f3), "heisenberg1(p=3)")?,
        named(builtin::alpha_rtimes_mu(&f3), "alpha_rtimes_mu(p=3)")?,
    ])
}

/// `heisenberg1` with `H = M(0,0,γ)` (ideal `(a,b)`), `K` (ideal `(a)`), and
/// the proper subgroups of `K` (trivial and the `p + 1` lines `λb + μc = 0`).
#[derive(Clone, Debug)]
pub struct Heisenberg {
    pub g: Arc<GroupScheme>,
    pub h: SubgroupEmbedding,
    pub k: SubgroupEmbedding,
    pub k_proper: Vec<SubgroupEmbedding>,
    /// `d = ac − b`.
    pub d: Vec<Elem>,
}

pub fn heisenberg(f: &Field) -> Result<Heisenberg> {
    let g = arc(builtin::heisenberg1(f))?;
    let (a, b, c) = (coord_gen(&g, "a")?, coord_gen(&g, "b")?, coord_gen(&g, "c")?);
    let alg = g.coord().algebra();
    let ac = alg.mul(&a, &c);
    let d: Vec<Elem> = ac.iter().zip(&b).map(|(&x, &y)| f.sub(x, y)).collect();
    let h = subgroup_embed(&g, &[a.clone(), b.clone()], "H")?;
    let k = subgroup_embed(&g, &[a], "K")?;
    let p = f.p();
    let mut k_proper = vec![trivial_subgroup(k.sub())?];
    let mut lines: Vec<(Elem, Elem)> = (0..p).map(|l| (l, 1)).collect();
    lines.push((1, 0));
    for (l, m) in lines {
        let gen: Vec<Elem> = b.iter().zip(&c).map(|(&x, &y)| f.add(f.mul(l, x), f.mul(m, y))).collect();
        k_proper.push(restrict_to(&k, &[gen], &format!("line({l}b+{m}c)"))?);
    }
    Ok(Heisenberg { g, h, k, k_proper, d })
}

impl Heisenberg {
    /// `V = ^H k[G]` inside the left translation module, restricted to `K`.
    pub fn mackey_module(&self) -> Result<GModule> {
        let lt = GModule::left_translation(&self.g);
        let (v, _) = lt.submodule(&right_invariants(&self.h))?;
        v.restrict(&self.k)
    }

    /// `{a^i d^j}` and `{a^i}`, `0 ≤ i, j < p`.
    pub fn mackey_bases(&self) -> Result<(Vec<Vec<Elem>>, Vec<Vec<Elem>>)> {
        let alg = self.g.coord().algebra();
        let p = self.g.field().p() as u64;
        let a = coord_gen(&self.g, "a")?;
        let mut full = Vec::new();
        let mut small = Vec::new();
        for i in 0..p {
            let ai = alg.pow(&a, i);
            small.push(ai.clone());
            for j in 0..p {
                full.push(alg.mul(&ai, &alg.pow(&self.d, j)));
            }
        }
        Ok((full, small))
    }
}

/// A subgroup pair with the expected zero/nonzero value of `λ` when it is
/// dictated by a general statement.
#[derive(Clone, Debug)]
pub struct Pair {
    pub label: String,
    pub embedding: SubgroupEmbedding,
    pub expect_lambda_nonzero: Option<bool>,
    pub unipotent: bool,
}

fn pair(label: &str, e: SubgroupEmbedding, expect: Option<bool>, unipotent: bool) -> Pair {
    Pair { label: label.to_string(), embedding: e, expect_lambda_nonzero: expect, unipotent }
}

/// Subgroup pairs over `F_{p^degree}`.
pub fn subgroup_pairs(degree: u32) -> Result<Vec<Pair>> {
    let mut out = Vec::new();
    for p in [2u32, 3] {
        let f = field(p, degree)?;
        let cp = arc(builtin::constant(&f, &GroupTable::cyclic(p as usize)).map(|g| g.with_name(format!("C{p}"))))?;
        out.push(pair(&format!("1 <= C{p}"), trivial_subgroup(&cp)?, Some(false), true));
        let mu = arc(builtin::mu_p(&f))?;
        out.push(pair(&format!("1 <= mu_{p}"), trivial_subgroup(&mu)?, Some(true), false));
        let ap = arc(builtin::alpha_p(&f))?;
        out.push(pair(&format!("1 <= alpha_{p}"), trivial_subgroup(&ap)?, Some(false), true));
        out.push(pair(&format!("alpha_{p} <= alpha_{p}"), identity_embedding(&ap), Some(true), true));
        let ap2 = arc(builtin::alpha_pn(&f, 2))?;
        let x = coord_gen(&ap2, "x").or_else(|_| coord_gen(&ap2, &ap2.coord().names()[1]))?;
        let xp = ap2.coord().algebra().pow(&x, p as u64);
        out.push(pair(
            &format!("alpha_{p} <= alpha_{p}^2"),
            subgroup_embed(&ap2, &[xp], "alpha_p")?,
            Some(false),
            true,
        ));

        let hz = heisenberg(&f)?;
        out.push(pair(&format!("1 <= heisenberg1(p={p})"), trivial_subgroup(&hz.g)?, Some(false), true));
        out.push(pair(&format!("H <= heisenberg1(p={p})"), hz.h.clone(), Some(false), true));
        out.push(pair(&format!("K <= heisenberg1(p={p})"), hz.k.clone(), Some(false), true));

        let sd = arc(builtin::alpha_rtimes_mu(&f))?;
        let y = coord_gen(&sd, "y")?;
        let y1: Vec<Elem> = y.iter().zip(sd.coord().unit()).map(|(&a, &b)| f.sub(a, b)).collect();
        out.push(pair(
            &format!("alpha_{p} <= alpha_rtimes_mu(p={p})"),
            subgroup_embed(&sd, &[y1], "alpha_p")?,
            None,
            false,
        ));
        out.push(pair(
            &format!("mu_{p} <= alpha_rtimes_mu(p={p})"),
            subgroup_embed(&sd, &[coord_gen(&sd, "x")?], "mu_p")?,
            Some(false),
            false,
        ));
    }
    for p in [2u32, 3] {
        let f = field(p, degree)?;
        let s3 = arc(builtin::constant(&f, &GroupTable::s3()).map(|g| g.with_name(format!("S3/F{p}"))))?;
        for (name, keep, index) in [("C2", &["1", "s"][..], 3u32), ("C3", &["1", "r", "r^2"][..], 2)] {
            let e = subgroup_embed(&s3, &points_ideal(&s3, keep), name)?;
            out.push(pair(&format!("{name} <= S3/F{p}"), e, Some(index % p != 0), false));
        }
        out.push(pair(&format!("1 <= S3/F{p}"), trivial_subgroup(&s3)?, Some(false), false));
    }
    Ok(out)
}

/// Nested `K ≤ H ≤ G` inside `heisenberg1` and constant `S_3`.
pub fn nested_triples(degree: u32) -> Result<Vec<(String, NestedTriple)>> {
    let mut out = Vec::new();
    for p in [2u32, 3] {
        let f = field(p, degree)?;
        let g = arc(builtin::heisenberg1(&f))?;
        let (a, b) = (coord_gen(&g, "a")?, coord_gen(&g, "b")?);
        out.push((
            format!("H <= K <= heisenberg1(p={p})"),
            nested(&g, std::slice::from_ref(&a), &[a.clone(), b], ("K", "H"))?,
        ));
        let all: Vec<Vec<Elem>> = ["a", "b", "c"].iter().map(|n| coord_gen(&g, n)).collect::<Result<_>>()?;
        out.push((format!("1 <= K <= heisenberg1(p={p})"), nested(&g, &[a], &all, ("K", "1"))?));
        let s3 = arc(builtin::constant(&f, &GroupTable::s3()).map(|g| g.with_name(format!("S3/F{p}"))))?;
        let trivial = points_ideal(&s3, &["1"]);
        out.push((
            format!("1 <= C3 <= S3/F{p}"),
            nested(&s3, &points_ideal(&s3, &["1", "r", "r^2"]), &trivial, ("C3", "1"))?,
        ));
        out.push((format!("1 <= C2 <= S3/F{p}"), nested(&s3, &points_ideal(&s3, &["1", "s"]), &trivial, ("C2", "1"))?));
    }
    Ok(out)
}

/// `(H ≤ G, N, M)` with `N` an `H`-module and `M` a `G`-module.
#[derive(Clone, Debug)]
pub struct AdjunctionTriple {
    pub label: String,
    pub embedding: SubgroupEmbedding,
    pub n: GModule,
    pub m: GModule,
}

pub fn adjunction_triples(degree: u32) -> Result<Vec<AdjunctionTriple>> {
    let mut out = Vec::new();
    let mut push = |label: String, e: &SubgroupEmbedding, n: GModule, m: GModule| {
        out.push(AdjunctionTriple { label, embedding: e.clone(), n, m });
    };
    for p in [2u32, 3] {
        let f = field(p, degree)?;
        let hz = heisenberg(&f)?;
        let (g, h) = (&hz.g, &hz.h);
        push(format!("heisenberg1(p={p}) >= H, k, k"), h, GModule::trivial(h.sub()), GModule::trivial(g));
        push(format!("heisenberg1(p={p}) >= H, kH, k"), h, GModule::regular(h.sub()), GModule::trivial(g));
        let cp = arc(builtin::constant(&f, &GroupTable::cyclic(p as usize)))?;
        let one = trivial_subgroup(&cp)?;
        push(format!("C{p} >= 1, k, kC{p}"), &one, GModule::trivial(one.sub()), GModule::regular(&cp));
        let sd = arc(builtin::alpha_rtimes_mu(&f))?;
        let mu = subgroup_embed(&sd, &[coord_gen(&sd, "x")?], "mu_p")?;
        push(format!("alpha_rtimes_mu(p={p}) >= mu_p, k, k"), &mu, GModule::trivial(mu.sub()), GModule::trivial(&sd));
        push(
            format!("alpha_rtimes_mu(p={p}) >= mu_p, kmu_p, k[G]"),
            &mu,
            GModule::regular(mu.sub()),
            GModule::left_translation(&sd),
        );
    }
    let f3 = field(3, degree)?;
    let s3 = arc(builtin::constant(&f3, &GroupTable::s3()))?;
    let c2 = subgroup_embed(&s3, &points_ideal(&s3, &["1", "s"]), "C2")?;
    push("S3/F3 >= C2, kC2, kS3".into(), &c2, GModule::regular(c2.sub()), GModule::regular(&s3));
    Ok(out)
}

/// Pairs for the Wirthmüller battery, including the non-unimodular one.
pub fn wirthmuller_pairs(degree: u32) -> Result<Vec<(String, SubgroupEmbedding, bool)>> {
    let mut out = Vec::new();
    for p in [2u32, 3] {
        let f = field(p, degree)?;
        let sd = arc(builtin::alpha_rtimes_mu(&f))?;
        let mu = subgroup_embed(&sd, &[coord_gen(&sd, "x")?], "mu_p")?;
        out.push((format!("mu_{p} <= alpha_rtimes_mu(p={p})"), mu, true));
        let hz = heisenberg(&f)?;
        out.push((format!("H <= heisenberg1(p={p})"), hz.h, false));
        let cp = arc(builtin::constant(&f, &GroupTable::cyclic(p as usize)))?;
        out.push((format!("1 <= C{p}"), trivial_subgroup(&cp)?, false));
    }
    Ok(out)
}

/// A comodule algebra with the subgroups used by the norm checks.
#[derive(Clone, Debug)]
pub struct NormEntry {
    pub label: String,
    pub algebra: ComoduleAlgebra,
    /// Splitting extension for the rational points.
    pub ext: Option<Field>,
    pub subgroups: Vec<SubgroupEmbedding>,
    pub nested: Option<NestedTriple>,
    /// Maximal total degree of random polynomial elements.
    pub random_degree: u32,
}

/// `α_p` acting on `k[v]` by translation, `σ(v) = v ⊗ 1 + 1 ⊗ x`.
pub fn translation_algebra(f: &Field) -> Result<ComoduleAlgebra> {
    let g = arc(builtin::alpha_p(f))?;
    let r = PolyRing::new(f.clone(), vec!["v".into()], None)?;
    let mut img = vec![SElem::Poly(Poly::new()); g.order()];
    img[0] = SElem::Poly(r.var(0));
    img[1] = SElem::Poly(r.one());
    ComoduleAlgebra::new("k[v]", g, Carrier::Poly(r), vec![img])
}

/// `μ_n` acting on `k[x]` by the grading, `σ(x) = x ⊗ y`.
pub fn grading_algebra(f: &Field, n: u32) -> Result<ComoduleAlgebra> {
    let g = arc(builtin::mu(f, n))?;
    let r = PolyRing::new(f.clone(), vec!["x".into()], None)?;
    let mut img = vec![SElem::Poly(Poly::new()); g.order()];
    img[1] = SElem::Poly(r.var(0));
    ComoduleAlgebra::new("k[x]", g, Carrier::Poly(r), vec![img])
}

/// A constant group acting on `k[x_1..x_n]` by permuting variables through
/// `perm[g][i]`; `σ(x_i) = Σ_g x_{g·i} ⊗ d_g`.
pub fn permutation_algebra(g: Arc<GroupScheme>, perm: &[Vec<usize>]) -> Result<ComoduleAlgebra> {
    let f = g.field().clone();
    let nv = perm[0].len();
    let vars = (1..=nv).map(|i| format!("x{i}")).collect();
    let r = PolyRing::new(f, vars, None)?;
    let images = (0..nv).map(|i| (0..g.order()).map(|gi| SElem::Poly(r.var(perm[gi][i]))).collect()).collect();
    ComoduleAlgebra::new("k[x]", g, Carrier::Poly(r), images)
}

/// `F_{p^2}` as a 2-dimensional algebra over `F_p` with basis `1, w` and
/// `w^2 = c_1 w + c_0` from the built-in modulus.
pub fn extension_algebra(f: &Field) -> Result<FiniteAlgebra> {
    let big = Field::new(f.p(), 2, None)?;
    let modulus = &big.desc().modulus;
    let (c0, c1) = (f.neg(modulus[0]), f.neg(modulus[1]));
    FiniteAlgebra::from_fn(f.clone(), vec!["1".into(), "w".into()], vec![1, 0], |i, j| match i + j {
        0 => vec![1, 0],
        1 => unit_vector(2, 1),
        _ => vec![c0, c1],
    })
}

/// Frobenius `w ↦ w^p` on `F_{p^2}` as a 2x2 matrix over `F_p`.
fn frobenius_on(l: &FiniteAlgebra) -> Vec<Vec<Elem>> {
    let w = unit_vector(2, 1);
    let wp = l.pow(&w, l.field().p() as u64);
    vec![vec![1, 0], wp]
}

/// `L = F_{p^2}` with `G` acting through a surjection onto `Z/2` by Frobenius.
/// `frob_of[g]` says whether the point `g` acts by Frobenius.
pub fn frobenius_field(f: &Field, g: Arc<GroupScheme>, frob_of: &[bool]) -> Result<ComoduleAlgebra> {
    let l = extension_algebra(f)?;
    let fr = frobenius_on(&l);
    let n = g.order();
    if frob_of.len() != n {
        return Err(Error::DimensionMismatch("one flag per coordinate".into()));
    }
    let images = (0..2)
        .map(|b| {
            (0..n)
                .map(|j| {
                    let v = if frob_of[j] { fr[b].clone() } else { unit_vector(2, b) };
                    SElem::Finite(v)
                })
                .collect()
        })
        .collect();
    ComoduleAlgebra::new("F_{p^2}", g, Carrier::Finite(l), images)
}

/// `F_4` under constant `Z/2` by Frobenius.
pub fn gf4_frobenius() -> Result<ComoduleAlgebra> {
    let f = Field::prime(2)?;
    let g = arc(builtin::constant(&f, &GroupTable::cyclic(2)))?;
    frobenius_field(&f, g, &[false, true])
}

/// `F_4` under `Z/2 × α_2` acting through the first factor: the coaction
/// lands in `k[Z/2] ⊗ 1`.
pub fn gf4_non_faithful() -> Result<ComoduleAlgebra> {
    let f = Field::prime(2)?;
    let c2 = builtin::constant(&f, &GroupTable::cyclic(2))?;
    let a2 = builtin::alpha_p(&f)?;
    let g = arc(builtin::product(&c2, &a2))?;
    let l = extension_algebra(&f)?;
    let fr = frobenius_on(&l);
    let images = (0..2)
        .map(|b| {
            let mut v = vec![SElem::Finite(vec![0, 0]); 4];
            v[0] = SElem::Finite(unit_vector(2, b));
            v[2] = SElem::Finite(fr[b].clone());
            v
        })
        .collect();
    ComoduleAlgebra::new("F_4", g, Carrier::Finite(l), images)
}

/// Comodule algebras for the norm suite over `F_{p^degree}`.
pub fn norm_entries(degree: u32) -> Result<Vec<NormEntry>> {
    let mut out = Vec::new();
    for p in [2u32, 3] {
        let f = field(p, degree)?;
        let tr = translation_algebra(&f)?;
        let g = tr.scheme.clone();
        out.push(NormEntry {
            label: format!("alpha_{p} on k[v]"),
            subgroups: vec![trivial_subgroup(&g)?, identity_embedding(&g)],
            algebra: tr,
            ext: None,
            nested: None,
            random_degree: 2,
        });

        let cp = arc(builtin::constant(&f, &GroupTable::cyclic(p as usize)))?;
        let perm: Vec<Vec<usize>> =
            (0..p as usize).map(|g| (0..p as usize).map(|i| (i + g) % p as usize).collect()).collect();
        let pa = permutation_algebra(cp.clone(), &perm)?;
        out.push(NormEntry {
            label: format!("C{p} on k[x1..x{p}]"),
            subgroups: vec![trivial_subgroup(&cp)?],
            algebra: pa,
            ext: None,
            nested: None,
            random_degree: 1,
        });

        let hz = heisenberg(&f)?;
        let reg = ComoduleAlgebra::regular(hz.g.clone());
        let g = &hz.g;
        let (a, b) = (coord_gen(g, "a")?, coord_gen(g, "b")?);
        let tri = nested(g, std::slice::from_ref(&a), &[a.clone(), b], ("K", "H"))?;
        out.push(NormEntry {
            label: format!("heisenberg1(p={p}) on k[G]"),
            subgroups: vec![trivial_subgroup(g)?, hz.h.clone(), hz.k.clone()],
            algebra: reg,
            ext: None,
            nested: Some(tri),
            random_degree: 0,
        });

        let gr = grading_algebra(&f, p)?;
        let g = gr.scheme.clone();
        out.push(NormEntry {
            label: format!("mu_{p} on k[x]"),
            subgroups: vec![trivial_subgroup(&g)?],
            algebra: gr,
            ext: None,
            nested: None,
            random_degree: 2,
        });

        let s3 = arc(builtin::constant(&f, &GroupTable::s3()))?;
        let perm = s3_permutations();
        let sa = permutation_algebra(s3.clone(), &perm)?;
        let trivial = points_ideal(&s3, &["1"]);
        let tri = nested(&s3, &points_ideal(&s3, &["1", "r", "r^2"]), &trivial, ("C3", "1"))?;
        out.push(NormEntry {
            label: format!("S3/F{p} on k[x1,x2,x3]"),
            subgroups: vec![trivial_subgroup(&s3)?, tri.h_in_g.clone()],
            algebra: sa,
            ext: None,
            nested: Some(tri),
            random_degree: 1,
        });
    }
    // points only over F_4
    let f2 = field(2, degree)?;
    let gr = grading_algebra(&f2, 3)?;
    let g = gr.scheme.clone();
    out.push(NormEntry {
        label: "mu_3 on k[x] over F_2".into(),
        subgroups: vec![trivial_subgroup(&g)?],
        algebra: gr,
        ext: Some(Field::new(2, 2, None)?),
        nested: None,
        random_degree: 2,
    });
    Ok(out)
}

/// `S_3` acting on `{0,1,2}` with `r = (0 1 2)` and `s = (1 2)`, elements in
/// table order `1, r, r^2, s, sr, sr^2`.
fn s3_permutations() -> Vec<Vec<usize>> {
    let r = [1usize, 2, 0];
    let s = [0usize, 2, 1];
    let compose = |x: &[usize], y: &[usize]| -> Vec<usize> { (0..3).map(|i| x[y[i]]).collect() };
    let mut out = vec![vec![]; 6];
    out[0] = vec![0, 1, 2];
    out[1] = r.to_vec();
    out[2] = compose(&r, &r);
    out[3] = s.to_vec();
    out[4] = compose(&s, &r);
    out[5] = compose(&s, &out[2]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_builds() {
        assert_eq!(integral_schemes(1).unwrap().len(), 11);
        assert!(subgroup_pairs(1).unwrap().len() >= 20);
        assert_eq!(nested_triples(1).unwrap().len(), 8);
        assert!(adjunction_triples(1).unwrap().len() >= 10);
        for e in norm_entries(1).unwrap() {
            assert!(e.algebra.validate().iter().all(|c| c.pass), "{}", e.label);
        }
        for a in [gf4_frobenius().unwrap(), gf4_non_faithful().unwrap()] {
            assert!(a.validate().iter().all(|c| c.pass));
        }
    }

    #[test]
    fn heisenberg_lines() {
        let hz = heisenberg(&Field::prime(3).unwrap()).unwrap();
        assert_eq!(hz.k_proper.len(), 5);
        assert!(hz.k_proper[1..].iter().all(|e| e.sub().order() == 3));
        assert_eq!(hz.mackey_module().unwrap().dim(), 9);
    }
}

//! `Ext_G^n` from the bar resolution `P_n = kG^{⊗(n+1)} ⊗ M'` and the relative
//! transfer applied levelwise to `Hom_H(P_•, ω ⊗ M) → Hom_G(P_•, M)`.

use crate::error::{Error, Result};
use crate::hopf::subgroup::SubgroupEmbedding;
use crate::hopf::GroupScheme;
use crate::repmod::{hom_act, same_scheme, twisted_hom_invariants, GModule};
use crate::scalars::linalg::{kernel_basis, solve_affine};
use crate::scalars::{Elem, Field, Matrix, Subspace};
use crate::transfer::Transfer;

pub const DEFAULT_SIZE_CAP: usize = 20000;
pub const DEFAULT_MAX_DEGREE: usize = 3;

fn check_cap(g: &GroupScheme, dm: usize, top: usize, cap: usize) -> Result<()> {
    let needed = g.order().checked_pow(top as u32 + 1).and_then(|x| x.checked_mul(dm)).unwrap_or(usize::MAX);
    if needed > cap {
        return Err(Error::SizeCapExceeded { needed, cap });
    }
    Ok(())
}

fn digits(mut idx: usize, n: usize, len: usize) -> Vec<usize> {
    let mut d = vec![0; len];
    for i in (0..len).rev() {
        d[i] = idx % n;
        idx /= n;
    }
    d
}

fn undigits(d: &[usize], n: usize) -> usize {
    d.iter().fold(0, |acc, &x| acc * n + x)
}

/// Bar resolution up to `n_max`, with `d_0: P_0 → M'` the augmentation.
#[derive(Clone, Debug)]
pub struct BarResolution {
    pub coefficients: GModule,
    pub modules: Vec<GModule>,
    /// `differentials[n]: P_n → P_{n-1}` (`P_{-1} = M'`).
    pub differentials: Vec<Matrix>,
}

impl BarResolution {
    pub fn max_degree(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn is_complex(&self) -> bool {
        let f = self.coefficients.field();
        self.differentials.windows(2).all(|w| w[0].mul(&w[1], f).is_zero())
    }
}

/// Basis index of `g_0 ⊗ … ⊗ g_n ⊗ m` is `((g_0 N + g_1) N + …) dim M' + m`.
pub fn bar_resolution(mp: &GModule, n_max: usize, cap: usize) -> Result<BarResolution> {
    let g = mp.scheme().clone();
    check_cap(&g, mp.dim(), n_max, cap)?;
    let f = g.field().clone();
    let kg = g.group_alg();
    let ng = g.order();
    let dm = mp.dim();
    let mut modules = Vec::new();
    let mut differentials = Vec::new();
    for n in 0..=n_max {
        let rest = ng.pow(n as u32) * dm;
        let module = GModule::from_fn(g.clone(), ng * rest, |x| {
            let lx = kg.algebra().left_mult_matrix(&crate::scalars::algebra::unit_vector(ng, x));
            lx.kronecker(&Matrix::identity(rest), &f)
        });
        modules.push(module);
        let src = ng.pow(n as u32 + 1);
        let tgt = if n == 0 { 0 } else { ng.pow(n as u32) };
        let rows = if n == 0 { dm } else { tgt * dm };
        let mut d = Matrix::zeros(rows, src * dm);
        for s in 0..src {
            let gs = digits(s, ng, n + 1);
            for m in 0..dm {
                let col = s * dm + m;
                for i in 0..n {
                    let sign = if i % 2 == 0 { 1 } else { f.neg(1) };
                    for &(k, c) in kg.algebra().product_of_basis(gs[i], gs[i + 1]) {
                        let mut t = gs[..i].to_vec();
                        t.push(k);
                        t.extend_from_slice(&gs[i + 2..]);
                        let row = undigits(&t, ng) * dm + m;
                        d.set(row, col, f.add(d.get(row, col), f.mul(sign, c)));
                    }
                }
                let sign = if n % 2 == 0 { 1 } else { f.neg(1) };
                let head = undigits(&gs[..n], ng);
                let act = &mp.action()[gs[n]];
                for r in 0..dm {
                    let c = act.get(r, m);
                    if c != 0 {
                        let row = head * dm + r;
                        d.set(row, col, f.add(d.get(row, col), f.mul(sign, c)));
                    }
                }
            }
        }
        differentials.push(d);
    }
    let res = BarResolution { coefficients: mp.clone(), modules, differentials };
    if !res.is_complex() {
        return Err(Error::Consistency("bar differentials do not square to zero".into()));
    }
    Ok(res)
}

/// `δ^n: C^n → C^{n+1}` on `C^n = Hom(kG^{⊗n} ⊗ M', M)`, block `w` of a cochain
/// holding `f(w)`.
fn cochain_differential(mp: &GModule, m: &GModule, n: usize) -> Matrix {
    let g = mp.scheme();
    let f = g.field();
    let kg = g.group_alg();
    let ng = g.order();
    let (dp, dm) = (mp.dim(), m.dim());
    let src = ng.pow(n as u32) * dp;
    let tgt = ng.pow(n as u32 + 1) * dp;
    let mut d = Matrix::zeros(tgt * dm, src * dm);
    let add_block = |d: &mut Matrix, wt: usize, ws: usize, c: Elem, block: Option<&Matrix>| {
        for r in 0..dm {
            match block {
                Some(b) => {
                    for s in 0..dm {
                        let v = b.get(r, s);
                        if v != 0 {
                            let (row, col) = (wt * dm + r, ws * dm + s);
                            d.set(row, col, f.add(d.get(row, col), f.mul(c, v)));
                        }
                    }
                }
                None => {
                    let (row, col) = (wt * dm + r, ws * dm + r);
                    d.set(row, col, f.add(d.get(row, col), c));
                }
            }
        }
    };
    for wt in 0..tgt {
        let gs = digits(wt / dp, ng, n + 1);
        let mm = wt % dp;
        // g_1 f(g_2 ⊗ … ⊗ m)
        let ws = undigits(&gs[1..], ng) * dp + mm;
        add_block(&mut d, wt, ws, 1, Some(&m.action()[gs[0]]));
        for i in 0..n {
            let sign = if i % 2 == 0 { f.neg(1) } else { 1 };
            for &(k, c) in kg.algebra().product_of_basis(gs[i], gs[i + 1]) {
                let mut t = gs[..i].to_vec();
                t.push(k);
                t.extend_from_slice(&gs[i + 2..]);
                let ws = undigits(&t, ng) * dp + mm;
                add_block(&mut d, wt, ws, f.mul(sign, c), None);
            }
        }
        let sign = if (n + 1).is_multiple_of(2) { 1 } else { f.neg(1) };
        let head = undigits(&gs[..n], ng);
        let act = &mp.action()[gs[n]];
        for r in 0..dp {
            let c = act.get(r, mm);
            if c != 0 {
                add_block(&mut d, wt, head * dp + r, f.mul(sign, c), None);
            }
        }
    }
    d
}

/// Cocycles modulo coboundaries in some cochain space.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub reps: Vec<Vec<Elem>>,
    pub boundaries: Vec<Vec<Elem>>,
    ambient: usize,
}

impl Cohomology {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    fn from_parts(cocycles: Vec<Vec<Elem>>, boundaries: Vec<Vec<Elem>>, ambient: usize, f: &Field) -> Cohomology {
        let mut span = Subspace::span(ambient, &boundaries, f);
        let boundaries = span.basis();
        let mut reps = Vec::new();
        for z in cocycles {
            if !span.contains(&z, f) {
                span = span.sum(&Subspace::span(ambient, std::slice::from_ref(&z), f), f);
                reps.push(z);
            }
        }
        Cohomology { reps, boundaries, ambient }
    }

    /// Coordinates of the class of a cocycle `z` in the basis `reps`.
    pub fn classify(&self, z: &[Elem], f: &Field) -> Result<Vec<Elem>> {
        let mut cols = self.reps.clone();
        cols.extend(self.boundaries.iter().cloned());
        if cols.is_empty() {
            return if z.iter().all(|&x| x == 0) {
                Ok(vec![])
            } else {
                Err(Error::Consistency("not a cocycle".into()))
            };
        }
        let a = Matrix::from_cols(self.ambient, &cols);
        let (x, _) = solve_affine(&a, z, f).ok_or_else(|| Error::Consistency("not a cocycle".into()))?;
        Ok(x[..self.reps.len()].to_vec())
    }
}

#[derive(Clone, Debug)]
pub struct ExtGroup {
    pub degree: usize,
    pub cohomology: Cohomology,
}

impl ExtGroup {
    pub fn dim(&self) -> usize {
        self.cohomology.dim()
    }
}

/// `Ext_G^n(M', M)` from the cochains `Hom(kG^{⊗n} ⊗ M', M)`.
pub fn ext_group(mp: &GModule, m: &GModule, n: usize, cap: usize) -> Result<ExtGroup> {
    if !same_scheme(mp.scheme(), m.scheme()) {
        return Err(Error::SchemeMismatch("Ext arguments".into()));
    }
    check_cap(mp.scheme(), mp.dim(), n + 1, cap)?;
    let f = mp.field();
    let d_n = cochain_differential(mp, m, n);
    let cocycles = kernel_basis(&d_n, f);
    let boundaries = if n == 0 { vec![] } else { cochain_differential(mp, m, n - 1).columns() };
    Ok(ExtGroup { degree: n, cohomology: Cohomology::from_parts(cocycles, boundaries, d_n.cols(), f) })
}

pub fn ext_dim(mp: &GModule, m: &GModule, n: usize, cap: usize) -> Result<usize> {
    Ok(ext_group(mp, m, n, cap)?.dim())
}

/// `Hom_X(P_n, χ ⊗ M)` over a subgroup `X` (or `G` itself), as a space of
/// `dim M x dim P_n` matrices, together with the cohomology in degree `n`.
#[derive(Clone, Debug)]
pub struct LevelCohomology {
    /// Bases of the cochain spaces in degrees `n - 1`, `n`, `n + 1`.
    pub cochains: Vec<Vec<Matrix>>,
    pub cohomology: Cohomology,
}

fn level_cohomology(
    bar: &BarResolution,
    e: Option<&SubgroupEmbedding>,
    m: &GModule,
    chi: Option<&[Elem]>,
    n: usize,
) -> Result<LevelCohomology> {
    let f = m.field().clone();
    let restrict = |x: &GModule| match e {
        Some(e) => x.restrict(e),
        None => Ok(x.clone()),
    };
    let res_m = restrict(m)?;
    let chi: Vec<Elem> = match chi {
        Some(c) => c.to_vec(),
        None => res_m.scheme().group_alg().counit().to_vec(),
    };
    let lo = n.saturating_sub(1);
    let mut cochains = Vec::new();
    for k in lo..=n + 1 {
        let p = restrict(&bar.modules[k])?;
        cochains.push(twisted_hom_invariants(&p, &res_m, &chi)?);
    }
    let at = |k: usize| &cochains[k - lo];
    let ambient = m.dim() * bar.modules[n].dim();
    // d^*: F ↦ F ∘ d_{k+1}
    let dstar = |k: usize| -> Result<Matrix> {
        let d = &bar.differentials[k + 1];
        let tgt = at(k + 1);
        let cols = at(k).iter().map(|fm| coords(tgt, &fm.mul(d, &f), &f)).collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_cols(tgt.len(), &cols))
    };
    let dn = dstar(n)?;
    let cocycles: Vec<Vec<Elem>> = kernel_basis(&dn, &f).iter().map(|c| combine(at(n), c, &f).to_vec()).collect();
    let boundaries: Vec<Vec<Elem>> =
        if n == 0 { vec![] } else { at(n - 1).iter().map(|fm| fm.mul(&bar.differentials[n], &f).to_vec()).collect() };
    let cohomology = Cohomology::from_parts(cocycles, boundaries, ambient, &f);
    Ok(LevelCohomology { cochains, cohomology })
}

fn coords(basis: &[Matrix], m: &Matrix, f: &Field) -> Result<Vec<Elem>> {
    if basis.is_empty() {
        return if m.is_zero() { Ok(vec![]) } else { Err(Error::Consistency("cochain outside Hom space".into())) };
    }
    let a = Matrix::from_cols(m.rows() * m.cols(), &basis.iter().map(|b| b.to_vec()).collect::<Vec<_>>());
    solve_affine(&a, &m.to_vec(), f)
        .map(|(x, _)| x)
        .ok_or_else(|| Error::Consistency("cochain outside Hom space".into()))
}

fn combine(basis: &[Matrix], c: &[Elem], f: &Field) -> Matrix {
    let mut out = Matrix::zeros(basis[0].rows(), basis[0].cols());
    for (b, &x) in basis.iter().zip(c) {
        if x != 0 {
            out.add_scaled(x, b, f);
        }
    }
    out
}

/// Relative transfer `Ext_H^n(ω^{-1} ⊗ M', M) → Ext_G^n(M', M)`.
#[derive(Clone, Debug)]
pub struct ExtTransfer {
    pub degree: usize,
    pub source: Cohomology,
    pub target: Cohomology,
    /// Matrix on class coordinates.
    pub matrix: Matrix,
    /// `d^* ∘ Tr = Tr ∘ d^*` on every cochain basis vector of degrees `n - 1`, `n`.
    pub commutes: bool,
    /// `Tr ∘ res` on `Ext_G^n(M', M)`; `None` when `ω` is nontrivial.
    pub tr_res: Option<Matrix>,
}

pub fn transfer_ext(e: &SubgroupEmbedding, mp: &GModule, m: &GModule, n: usize, cap: usize) -> Result<ExtTransfer> {
    let bar = bar_resolution(mp, n + 1, cap)?;
    let tr = Transfer::new(e)?;
    transfer_ext_with(&bar, &tr, m, n)
}

pub fn transfer_ext_with(bar: &BarResolution, tr: &Transfer, m: &GModule, n: usize) -> Result<ExtTransfer> {
    let f = m.field().clone();
    let e = &tr.embedding;
    let src = level_cohomology(bar, Some(e), m, Some(&tr.omega().inverse), n)?;
    let tgt = level_cohomology(bar, None, m, None, n)?;
    let apply = |k: usize, fm: &Matrix| hom_act(&bar.modules[k], m, tr.tau(), fm);
    let lo = n.saturating_sub(1);
    let mut commutes = true;
    for k in lo..=n {
        for fm in &src.cochains[k - lo] {
            let d = &bar.differentials[k + 1];
            if apply(k, fm).mul(d, &f) != apply(k + 1, &fm.mul(d, &f)) {
                commutes = false;
            }
        }
    }
    let ambient_shape = (m.dim(), bar.modules[n].dim());
    let as_matrix = |v: &[Elem]| Matrix::from_vec(ambient_shape.0, ambient_shape.1, v.to_vec());
    let cols = src
        .cohomology
        .reps
        .iter()
        .map(|z| tgt.cohomology.classify(&apply(n, &as_matrix(z)).to_vec(), &f))
        .collect::<Result<Vec<_>>>()?;
    let matrix = Matrix::from_cols(tgt.cohomology.dim(), &cols);
    let tr_res = if tr.omega().trivial {
        let cols = tgt
            .cohomology
            .reps
            .iter()
            .map(|z| tgt.cohomology.classify(&apply(n, &as_matrix(z)).to_vec(), &f))
            .collect::<Result<Vec<_>>>()?;
        Some(Matrix::from_cols(tgt.cohomology.dim(), &cols))
    } else {
        None
    };
    Ok(ExtTransfer { degree: n, source: src.cohomology, target: tgt.cohomology, matrix, commutes, tr_res })
}

/// `Tr^H_K` on `Ext` with both sides over the `G`-bar resolution restricted to
/// `H`; used to compare `Tr^G_H ∘ Tr^H_K` with `Tr^G_K`.
pub fn transfer_ext_chain(
    bar: &BarResolution,
    k_in_h: &SubgroupEmbedding,
    h_in_g: &SubgroupEmbedding,
    m: &GModule,
    n: usize,
) -> Result<(Matrix, Matrix)> {
    let f = m.field().clone();
    let k_in_g = crate::hopf::subgroup::compose(k_in_h, h_in_g)?;
    let tr_kh = Transfer::new(k_in_h)?;
    let tr_hg = Transfer::new(h_in_g)?;
    let tr_kg = Transfer::new(&k_in_g)?;
    if !(tr_kh.omega().trivial && tr_hg.omega().trivial) {
        return Err(Error::Consistency("chain comparison needs trivial ω".into()));
    }
    let src = level_cohomology(bar, Some(&k_in_g), m, None, n)?;
    let tgt = level_cohomology(bar, None, m, None, n)?;
    let shape = (m.dim(), bar.modules[n].dim());
    let pn = &bar.modules[n];
    let pn_h = pn.restrict(h_in_g)?;
    let m_h = m.restrict(h_in_g)?;
    let mut direct = Vec::new();
    let mut chained = Vec::new();
    for z in &src.cohomology.reps {
        let zm = Matrix::from_vec(shape.0, shape.1, z.clone());
        direct.push(tgt.cohomology.classify(&hom_act(pn, m, tr_kg.tau(), &zm).to_vec(), &f)?);
        let mid = hom_act(&pn_h, &m_h, tr_kh.tau(), &zm);
        chained.push(tgt.cohomology.classify(&hom_act(pn, m, tr_hg.tau(), &mid).to_vec(), &f)?);
    }
    let d = tgt.cohomology.dim();
    Ok((Matrix::from_cols(d, &direct), Matrix::from_cols(d, &chained)))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::hopf::builtin::{self, GroupTable};
    use crate::hopf::subgroup::trivial_subgroup;

    fn cyclic(p: u32) -> Arc<GroupScheme> {
        Arc::new(builtin::constant(&Field::prime(p).unwrap(), &GroupTable::cyclic(p as usize)).unwrap())
    }

    #[test]
    fn bar_dimensions_and_complex() {
        let g = cyclic(2);
        let k = GModule::trivial(&g);
        let bar = bar_resolution(&k, 3, DEFAULT_SIZE_CAP).unwrap();
        for n in 0..=3 {
            assert_eq!(bar.modules[n].dim(), 1 << (n + 1));
        }
        assert!(bar.is_complex());
        let a2 = Arc::new(builtin::alpha_p(&Field::prime(2).unwrap()).unwrap());
        let bar = bar_resolution(&GModule::trivial(&a2), 2, DEFAULT_SIZE_CAP).unwrap();
        assert!(bar.differentials[1].mul(&bar.differentials[2], a2.field()).is_zero());
    }

    #[test]
    fn cyclic_ext_is_one_dimensional() {
        for p in [2, 3] {
            let g = cyclic(p);
            let k = GModule::trivial(&g);
            for n in 0..=3 {
                assert_eq!(ext_dim(&k, &k, n, DEFAULT_SIZE_CAP).unwrap(), 1, "p={p} n={n}");
            }
        }
    }

    #[test]
    fn ext_zero_is_invariants() {
        let g = Arc::new(builtin::heisenberg1(&Field::prime(2).unwrap()).unwrap());
        let r = GModule::regular(&g);
        let k = GModule::trivial(&g);
        assert_eq!(ext_dim(&k, &r, 0, DEFAULT_SIZE_CAP).unwrap(), crate::repmod::invariants(&r).len());
    }

    #[test]
    fn alpha_2_ext_one() {
        let g = Arc::new(builtin::alpha_p(&Field::prime(2).unwrap()).unwrap());
        let k = GModule::trivial(&g);
        assert_eq!(ext_dim(&k, &k, 1, DEFAULT_SIZE_CAP).unwrap(), 1);
    }

    #[test]
    fn size_cap_is_enforced() {
        let g = Arc::new(builtin::heisenberg1(&Field::prime(3).unwrap()).unwrap());
        let k = GModule::trivial(&g);
        assert!(matches!(ext_dim(&k, &k, 2, DEFAULT_SIZE_CAP), Err(Error::SizeCapExceeded { .. })));
    }

    #[test]
    fn tr_res_vanishes_for_cyclic() {
        for p in [2, 3] {
            let g = cyclic(p);
            let k = GModule::trivial(&g);
            let e = trivial_subgroup(&g).unwrap();
            for n in 0..=2 {
                let t = transfer_ext(&e, &k, &k, n, DEFAULT_SIZE_CAP).unwrap();
                assert!(t.commutes);
                assert!(t.tr_res.unwrap().is_zero());
            }
        }
    }

    #[test]
    fn ext_transfer_transitivity() {
        use crate::hopf::subgroup::nested;
        use crate::scalars::algebra::unit_vector;
        let f2 = Field::prime(2).unwrap();
        let t = GroupTable::cyclic(2).direct_product(&GroupTable::cyclic(2));
        let g = Arc::new(builtin::constant(&f2, &t).unwrap());
        let pts = |ix: &[usize]| ix.iter().map(|&i| unit_vector(4, i)).collect::<Vec<_>>();
        let tri = nested(&g, &pts(&[1, 3]), &pts(&[1, 2, 3]), ("H", "K")).unwrap();
        let k = GModule::trivial(&g);
        let bar = bar_resolution(&k, 2, DEFAULT_SIZE_CAP).unwrap();
        let (direct, chained) = transfer_ext_chain(&bar, &tri.k_in_h, &tri.h_in_g, &k, 1).unwrap();
        assert_eq!(direct.rows(), 2);
        assert_eq!(direct, chained);
    }
}

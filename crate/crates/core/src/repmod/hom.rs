use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{hom_act, GModule};
use crate::error::{Error, Result};
use crate::scalars::linalg::{is_invertible, joint_kernel};
use crate::scalars::{Elem, Field, Matrix};

/// Exhaustive iso search runs when `q^{dim Hom} <= SEARCH_EXHAUSTIVE_LIMIT`.
pub const SEARCH_EXHAUSTIVE_LIMIT: u64 = 4096;
pub const SEARCH_RANDOM_TRIALS: usize = 1000;

/// A `kG`-linear map, checked on construction.
#[derive(Clone, Debug)]
pub struct GLinearMap {
    pub src: GModule,
    pub dst: GModule,
    pub mat: Matrix,
}

impl GLinearMap {
    pub fn new(src: GModule, dst: GModule, mat: Matrix) -> Result<GLinearMap> {
        src.check_same(&dst)?;
        if mat.rows() != dst.dim() || mat.cols() != src.dim() {
            return Err(Error::DimensionMismatch("map shape".into()));
        }
        if !is_equivariant(&src, &dst, &mat) {
            return Err(Error::Consistency("map is not G-linear".into()));
        }
        Ok(GLinearMap { src, dst, mat })
    }

    pub fn compose(&self, then: &GLinearMap) -> Result<GLinearMap> {
        if self.dst != then.src {
            return Err(Error::SchemeMismatch("composition of incompatible maps".into()));
        }
        let mat = then.mat.mul(&self.mat, self.src.field());
        Ok(GLinearMap { src: self.src.clone(), dst: then.dst.clone(), mat })
    }
}

/// `B(x) F == F A(x)` for every `kG` basis element.
pub fn is_equivariant(a: &GModule, b: &GModule, fmat: &Matrix) -> bool {
    let f = a.field();
    a.action().iter().zip(b.action()).all(|(xa, xb)| xb.mul(fmat, f) == fmat.mul(xa, f))
}

fn vec_of(m: &Matrix) -> Vec<Elem> {
    m.data().to_vec()
}

fn mat_of(v: &[Elem], rows: usize, cols: usize) -> Matrix {
    Matrix::from_vec(rows, cols, v.to_vec())
}

/// Generic fixed-point solver: `{v : T_i v = 0}` over the `kG` generators.
fn solve_linear<T>(n: usize, gens: &[Vec<Elem>], mut op: T, f: &Field) -> Vec<Vec<Elem>>
where
    T: FnMut(&[Elem], &[Elem]) -> Vec<Elem>,
{
    let basis = joint_kernel(
        n,
        gens.len(),
        |i, basis| {
            let cols: Vec<Vec<Elem>> = basis.columns().iter().map(|v| op(&gens[i], v)).collect();
            Matrix::from_cols(n, &cols)
        },
        f,
    );
    basis.columns()
}

/// Basis of `Hom_G(A, B)` as `dim B x dim A` matrices.
pub fn hom_space(a: &GModule, b: &GModule) -> Result<Vec<Matrix>> {
    a.check_same(b)?;
    let f = a.field().clone();
    let (da, db) = (a.dim(), b.dim());
    let gens = a.scheme().kg_generators().to_vec();
    let sols = solve_linear(
        da * db,
        &gens,
        |g, v| {
            let fm = mat_of(v, db, da);
            vec_of(&b.act(g).mul(&fm, &f).sub(&fm.mul(&a.act(g), &f), &f))
        },
        &f,
    );
    Ok(sols.iter().map(|v| mat_of(v, db, da)).collect())
}

/// `{v : x v = χ(x) v}` where `chi` gives `χ` on the `kG` basis.
pub fn twisted_invariants(m: &GModule, chi: &[Elem]) -> Vec<Vec<Elem>> {
    let f = m.field().clone();
    let gens = m.scheme().kg_generators().to_vec();
    solve_linear(
        m.dim(),
        &gens,
        |g, v| {
            let c = dot(g, chi, &f);
            let mut out = m.act_vec(g, v);
            f.axpy(&mut out, f.neg(c), v);
            out
        },
        &f,
    )
}

pub fn invariants(m: &GModule) -> Vec<Vec<Elem>> {
    twisted_invariants(m, m.scheme().group_alg().counit())
}

/// `χ`-twisted invariants of `Hom(A, B)` under `x · f = Σ B(x_(2)) f A(S x_(1))`.
pub fn twisted_hom_invariants(a: &GModule, b: &GModule, chi: &[Elem]) -> Result<Vec<Matrix>> {
    a.check_same(b)?;
    let f = a.field().clone();
    let (da, db) = (a.dim(), b.dim());
    let gens = a.scheme().kg_generators().to_vec();
    let sols = solve_linear(
        da * db,
        &gens,
        |g, v| {
            let fm = mat_of(v, db, da);
            let c = dot(g, chi, &f);
            vec_of(&hom_act(a, b, g, &fm).sub(&fm.scale(c, &f), &f))
        },
        &f,
    );
    Ok(sols.iter().map(|v| mat_of(v, db, da)).collect())
}

pub(crate) fn dot(x: &[Elem], y: &[Elem], f: &Field) -> Elem {
    x.iter().zip(y).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
}

#[derive(Clone, Debug)]
pub enum IsoSearch {
    Found(Matrix),
    NotIsomorphic(String),
    Inconclusive,
}

impl IsoSearch {
    pub fn is_found(&self) -> bool {
        matches!(self, IsoSearch::Found(_))
    }
}

fn combine(basis: &[Matrix], coeffs: &[Elem], f: &Field) -> Matrix {
    let mut m = Matrix::zeros(basis[0].rows(), basis[0].cols());
    for (b, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            m.add_scaled(c, b, f);
        }
    }
    m
}

/// Looks for a `G`-isomorphism `A → B`. Dimension and Hom-dimension mismatches
/// prove non-isomorphism; otherwise `Hom_G(A, B)` is searched exhaustively when
/// small, else by seeded random combinations.
pub fn module_iso_search(a: &GModule, b: &GModule, seed: u64) -> Result<IsoSearch> {
    a.check_same(b)?;
    if a.dim() != b.dim() {
        return Ok(IsoSearch::NotIsomorphic("dimensions differ".into()));
    }
    let f = a.field().clone();
    let hab = hom_space(a, b)?;
    if a.dim() == 0 {
        return Ok(IsoSearch::Found(Matrix::zeros(0, 0)));
    }
    if hab.is_empty() {
        return Ok(IsoSearch::NotIsomorphic("Hom_G(A, B) = 0".into()));
    }
    let haa = hom_space(a, a)?.len();
    let hba = hom_space(b, a)?.len();
    let hbb = hom_space(b, b)?.len();
    if haa != hba || hab.len() != hbb || haa != hbb {
        return Ok(IsoSearch::NotIsomorphic(format!(
            "Hom dimensions differ: (A,A)={haa} (B,A)={hba} (A,B)={} (B,B)={hbb}",
            hab.len()
        )));
    }
    for m in &hab {
        if is_invertible(m, &f) {
            return Ok(IsoSearch::Found(m.clone()));
        }
    }
    let q = f.order() as u64;
    let r = hab.len();
    let exhaustive = (q as f64).powi(r as i32) <= SEARCH_EXHAUSTIVE_LIMIT as f64;
    if exhaustive {
        let mut coeffs = vec![0 as Elem; r];
        loop {
            let mut i = 0;
            while i < r {
                coeffs[i] += 1;
                if (coeffs[i] as u64) < q {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
            if i == r {
                return Ok(IsoSearch::NotIsomorphic("no invertible element in Hom_G(A, B)".into()));
            }
            let m = combine(&hab, &coeffs, &f);
            if is_invertible(&m, &f) {
                return Ok(IsoSearch::Found(m));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SEARCH_RANDOM_TRIALS {
        let coeffs: Vec<Elem> = (0..r).map(|_| rng.gen_range(0..q) as Elem).collect();
        let m = combine(&hab, &coeffs, &f);
        if is_invertible(&m, &f) {
            return Ok(IsoSearch::Found(m));
        }
    }
    Ok(IsoSearch::Inconclusive)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::hopf::builtin::{self, GroupTable};

    #[test]
    fn hom_space_equals_invariants_of_hom() {
        for p in [2, 3] {
            let f = Field::prime(p).unwrap();
            let g = Arc::new(builtin::alpha_rtimes_mu(&f).unwrap());
            let a = GModule::regular(&g);
            let b = GModule::trivial(&g).direct_sum(&a).unwrap();
            let hs = hom_space(&a, &b).unwrap();
            let inv = twisted_hom_invariants(&a, &b, g.group_alg().counit()).unwrap();
            assert_eq!(hs.len(), inv.len());
            assert!(hs.iter().all(|m| is_equivariant(&a, &b, m)));
            // End_G(kG) ≅ kG^op
            assert_eq!(hom_space(&a, &a).unwrap().len(), g.order());
        }
    }

    #[test]
    fn invariants_of_regular_are_integrals() {
        let f = Field::prime(3).unwrap();
        let g = Arc::new(builtin::constant(&f, &GroupTable::cyclic(3)).unwrap());
        let inv = invariants(&GModule::regular(&g));
        assert_eq!(inv, vec![vec![1, 1, 1]]);
    }

    #[test]
    fn iso_search_outcomes() {
        let f = Field::prime(2).unwrap();
        let g = Arc::new(builtin::constant(&f, &GroupTable::s3()).unwrap());
        let r = GModule::regular(&g);
        let d = r.dual();
        assert!(module_iso_search(&r, &d, 7).unwrap().is_found());
        let k2 = GModule::trivial(&g).direct_power(2);
        let k = GModule::trivial(&g);
        let res = module_iso_search(&k2, &k.direct_sum(&k).unwrap(), 0).unwrap();
        assert!(res.is_found());
        let sub = r.tensor(&k).unwrap();
        assert!(module_iso_search(&sub, &r, 0).unwrap().is_found());
        let six_trivial = k.direct_power(6);
        assert!(matches!(module_iso_search(&r, &six_trivial, 0).unwrap(), IsoSearch::NotIsomorphic(_)));
    }
}

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{coinduce, induce, Coinduced, Induced};
use crate::error::{Error, Result};
use crate::hopf::subgroup::SubgroupEmbedding;
use crate::repmod::{hom_space, GLinearMap, GModule};
use crate::scalars::linalg::{inverse, is_invertible};
use crate::scalars::{Elem, Field, Matrix};
use crate::transfer::{t_maps, TMaps};

#[derive(Clone, Debug)]
pub struct WirthmullerCase {
    pub label: String,
    pub input: GModule,
    pub ind: Induced,
    pub coind: Coinduced,
    pub map: GLinearMap,
}

/// `W: ind N → coind(N ⊗ ω^{-1})`, `φ ↦ Σ [τ_(2) ⊗ φ(S τ_(1)) ⊗ 1]`, the image of
/// `id ⊗ t` under the projection formula followed by `coind(ε ⊗ id)`.
pub fn wirthmuller_map(e: &SubgroupEmbedding, n: &GModule) -> Result<WirthmullerCase> {
    let tm = t_maps(e)?;
    wirthmuller_with(e, &tm, n, "N")
}

fn wirthmuller_with(e: &SubgroupEmbedding, tm: &TMaps, n: &GModule, label: &str) -> Result<WirthmullerCase> {
    let g = e.amb();
    let f = g.field().clone();
    let kg = g.group_alg();
    let ng = g.order();
    let dn = n.dim();
    let ind = induce(e, n)?;
    let twisted = n.tensor(&tm.omega.inverse_module())?;
    let coind = coinduce(e, &twisted)?;
    let d = kg.comultiply(&tm.tau);
    let s = kg.antipode();
    let cols: Vec<Vec<Elem>> = ind
        .space
        .basis()
        .iter()
        .map(|phi| {
            let mut amb = vec![0; ng * dn];
            for (ab, &c) in d.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let (a, b) = (ab / ng, ab % ng);
                let mut val = vec![0; dn];
                for (k, &sk) in s.col(a).iter().enumerate() {
                    if sk != 0 {
                        f.axpy(&mut val, sk, &phi[k * dn..(k + 1) * dn]);
                    }
                }
                f.axpy(&mut amb[b * dn..(b + 1) * dn], c, &val);
            }
            coind.quotient.project(&amb, &f)
        })
        .collect();
    let mat = Matrix::from_cols(coind.module.dim(), &cols);
    if !is_invertible(&mat, &f) {
        return Err(Error::Consistency(format!("Wirthmüller map for {label} is not invertible")));
    }
    let map = GLinearMap::new(ind.module.clone(), coind.module.clone(), mat)?;
    Ok(WirthmullerCase { label: label.to_string(), input: n.clone(), ind, coind, map })
}

#[derive(Clone, Debug)]
pub struct WirthmullerReport {
    pub cases: Vec<WirthmullerCase>,
    pub naturality_squares: usize,
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize, f: &Field) -> Matrix {
    loop {
        let data = (0..n * n).map(|_| rng.gen_range(0..f.order()) as Elem).collect();
        let m = Matrix::from_vec(n, n, data);
        if is_invertible(&m, f) {
            return m;
        }
    }
}

fn random_combination(rng: &mut ChaCha8Rng, basis: &[Matrix], f: &Field) -> Option<Matrix> {
    let first = basis.first()?;
    let mut m = Matrix::zeros(first.rows(), first.cols());
    for b in basis {
        m.add_scaled(rng.gen_range(0..f.order()) as Elem, b, f);
    }
    Some(m)
}

/// `W` for `N ∈ {k, kH, P(k ⊕ ω)P^{-1}}` plus naturality squares for random
/// `H`-maps between them.
pub fn wirthmuller_battery(e: &SubgroupEmbedding, seed: u64, maps_per_pair: usize) -> Result<WirthmullerReport> {
    let tm = t_maps(e)?;
    let h = e.sub();
    let f = h.field().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = GModule::trivial(h);
    let omega = tm.omega.module();
    let p = random_invertible(&mut rng, 2, &f);
    let pinv = inverse(&p, &f).expect("invertible");
    let sum = k.direct_sum(&omega)?;
    let conj = GModule::new(h.clone(), 2, sum.action().iter().map(|a| p.mul(a, &f).mul(&pinv, &f)).collect())?;
    let inputs = [("k", k), ("kH", GModule::regular(h)), ("k+omega", conj)];
    let cases = inputs.iter().map(|(label, n)| wirthmuller_with(e, &tm, n, label)).collect::<Result<Vec<_>>>()?;
    let mut squares = 0;
    for a in &cases {
        for b in &cases {
            let basis = hom_space(&a.input, &b.input)?;
            for _ in 0..maps_per_pair {
                let Some(fm) = random_combination(&mut rng, &basis, &f) else {
                    break;
                };
                let left = b.map.mat.mul(&a.ind.map_to(&b.ind, &fm)?, &f);
                let right = a.coind.map_to(&b.coind, &fm).mul(&a.map.mat, &f);
                if left != right {
                    return Err(Error::Consistency(format!("naturality square {} → {} fails", a.label, b.label)));
                }
                squares += 1;
            }
        }
    }
    Ok(WirthmullerReport { cases, naturality_squares: squares })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::hopf::builtin;
    use crate::hopf::subgroup::{identity_embedding, subgroup_embed};
    use crate::repmod::{module_iso_search, IsoSearch};
    use crate::scalars::algebra::unit_vector;

    #[test]
    fn identity_embedding_gives_identity() {
        let g = Arc::new(builtin::heisenberg1(&Field::prime(2).unwrap()).unwrap());
        let c = wirthmuller_map(&identity_embedding(&g), &GModule::trivial(&g)).unwrap();
        assert_eq!(c.map.mat, Matrix::scalar(1));
    }

    #[test]
    fn non_unimodular_pair() {
        for p in [2, 3] {
            let g = Arc::new(builtin::alpha_rtimes_mu(&Field::prime(p).unwrap()).unwrap());
            let x = g.coord().names().iter().position(|n| n == "x").unwrap();
            let mu = subgroup_embed(&g, &[unit_vector(g.order(), x)], "mu_p").unwrap();
            let rep = wirthmuller_battery(&mu, 3, 3).unwrap();
            assert_eq!(rep.cases.len(), 3);
            assert!(rep.naturality_squares > 0);
            let k = GModule::trivial(mu.sub());
            let ind = induce(&mu, &k).unwrap();
            let coind = coinduce(&mu, &k).unwrap();
            let res = module_iso_search(&ind.module, &coind.module, 0).unwrap();
            assert!(matches!(res, IsoSearch::NotIsomorphic(_)), "{res:?}");
        }
    }

    #[test]
    fn heisenberg_battery() {
        let g = Arc::new(builtin::heisenberg1(&Field::prime(3).unwrap()).unwrap());
        let a = g.coord().names().iter().position(|n| n == "a").unwrap();
        let b = g.coord().names().iter().position(|n| n == "b").unwrap();
        let h = subgroup_embed(&g, &[unit_vector(27, a), unit_vector(27, b)], "H").unwrap();
        wirthmuller_battery(&h, 1, 2).unwrap();
    }
}

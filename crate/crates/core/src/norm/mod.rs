//! Comodule algebras `σ: S → S ⊗ k[G]`, their invariant rings, the height of an
//! infinitesimal scheme, and the Mumford, relative and field norms.

mod norms;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hopf::components::is_infinitesimal;
use crate::hopf::subgroup::SubgroupEmbedding;
use crate::hopf::{AxiomCheck, GroupScheme};
use crate::repmod::same_scheme;
use crate::scalars::algebra::unit_vector;
use crate::scalars::linalg::kernel_basis;
use crate::scalars::{CommRing, Elem, Field, FiniteAlgebra, Matrix, Mono, Poly, PolyRing};

pub use norms::{
    field_norm_compare, mumford_norm, relative_norm, relative_norm_with, FieldNormReport, NormPlan, NormReport,
    Transversal,
};

/// The algebra underlying a comodule algebra.
#[derive(Clone, Debug, PartialEq)]
pub enum Carrier {
    Finite(FiniteAlgebra),
    Poly(PolyRing),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SElem {
    Finite(Vec<Elem>),
    Poly(Poly),
}

impl SElem {
    pub fn as_finite(&self) -> &[Elem] {
        match self {
            SElem::Finite(v) => v,
            SElem::Poly(_) => panic!("finite carrier element expected"),
        }
    }

    pub fn as_poly(&self) -> &Poly {
        match self {
            SElem::Poly(p) => p,
            SElem::Finite(_) => panic!("polynomial element expected"),
        }
    }

    /// Every coefficient is in the prime field.
    pub fn in_prime_field(&self, f: &Field) -> bool {
        match self {
            SElem::Finite(v) => v.iter().all(|&c| f.in_prime_field(c)),
            SElem::Poly(p) => p.values().all(|&c| f.in_prime_field(c)),
        }
    }
}

impl Carrier {
    pub fn base_change(&self, field: &Field) -> Result<Carrier> {
        Ok(match self {
            Carrier::Finite(a) => Carrier::Finite(a.base_change(field)?),
            Carrier::Poly(r) => Carrier::Poly(r.base_change(field)?),
        })
    }

    /// Names of the generators on which the coaction is specified.
    pub fn generator_names(&self) -> Vec<String> {
        match self {
            Carrier::Finite(a) => a.names().to_vec(),
            Carrier::Poly(r) => r.vars().to_vec(),
        }
    }

    pub fn generator(&self, i: usize) -> SElem {
        match self {
            Carrier::Finite(a) => SElem::Finite(unit_vector(a.dim(), i)),
            Carrier::Poly(r) => SElem::Poly(r.var(i)),
        }
    }

    pub fn format(&self, s: &SElem) -> String {
        match self {
            Carrier::Finite(a) => a.format(s.as_finite()),
            Carrier::Poly(r) => r.format(s.as_poly()),
        }
    }
}

impl CommRing for Carrier {
    type E = SElem;

    fn field(&self) -> &Field {
        match self {
            Carrier::Finite(a) => a.field(),
            Carrier::Poly(r) => CommRing::field(r),
        }
    }
    fn zero(&self) -> SElem {
        match self {
            Carrier::Finite(a) => SElem::Finite(a.zero()),
            Carrier::Poly(r) => SElem::Poly(r.zero()),
        }
    }
    fn one(&self) -> SElem {
        match self {
            Carrier::Finite(a) => SElem::Finite(a.one()),
            Carrier::Poly(r) => SElem::Poly(r.one()),
        }
    }
    fn add(&self, x: &SElem, y: &SElem) -> SElem {
        match self {
            Carrier::Finite(a) => SElem::Finite(CommRing::add(a, &x.as_finite().to_vec(), &y.as_finite().to_vec())),
            Carrier::Poly(r) => SElem::Poly(r.add(x.as_poly(), y.as_poly())),
        }
    }
    fn add_assign(&self, x: &mut SElem, y: &SElem) {
        match (self, x) {
            (Carrier::Poly(r), SElem::Poly(p)) => r.add_assign(p, y.as_poly()),
            (_, x) => *x = self.add(x, y),
        }
    }
    fn neg(&self, x: &SElem) -> SElem {
        match self {
            Carrier::Finite(a) => SElem::Finite(CommRing::neg(a, &x.as_finite().to_vec())),
            Carrier::Poly(r) => SElem::Poly(r.neg(x.as_poly())),
        }
    }
    fn mul(&self, x: &SElem, y: &SElem) -> SElem {
        match self {
            Carrier::Finite(a) => SElem::Finite(a.mul(x.as_finite(), y.as_finite())),
            Carrier::Poly(r) => SElem::Poly(CommRing::mul(r, x.as_poly(), y.as_poly())),
        }
    }
    fn scale(&self, c: Elem, x: &SElem) -> SElem {
        match self {
            Carrier::Finite(a) => SElem::Finite(CommRing::scale(a, c, &x.as_finite().to_vec())),
            Carrier::Poly(r) => SElem::Poly(r.scale(c, x.as_poly())),
        }
    }
    fn is_zero(&self, x: &SElem) -> bool {
        match x {
            SElem::Finite(v) => v.iter().all(|&c| c == 0),
            SElem::Poly(p) => p.is_empty(),
        }
    }
}

/// `S ⊗ A` for a finite algebra `A`, elements stored as coefficient lists
/// over the basis of `A`.
pub struct TensorRing<'a> {
    pub s: &'a Carrier,
    pub a: &'a FiniteAlgebra,
}

impl CommRing for TensorRing<'_> {
    type E = Vec<SElem>;

    fn field(&self) -> &Field {
        self.a.field()
    }
    fn zero(&self) -> Vec<SElem> {
        vec![self.s.zero(); self.a.dim()]
    }
    fn one(&self) -> Vec<SElem> {
        self.a.unit().iter().map(|&c| self.s.from_scalar(c)).collect()
    }
    fn add(&self, x: &Vec<SElem>, y: &Vec<SElem>) -> Vec<SElem> {
        x.iter().zip(y).map(|(u, v)| self.s.add(u, v)).collect()
    }
    fn add_assign(&self, x: &mut Vec<SElem>, y: &Vec<SElem>) {
        for (u, v) in x.iter_mut().zip(y) {
            self.s.add_assign(u, v);
        }
    }
    fn neg(&self, x: &Vec<SElem>) -> Vec<SElem> {
        x.iter().map(|u| self.s.neg(u)).collect()
    }
    fn mul(&self, x: &Vec<SElem>, y: &Vec<SElem>) -> Vec<SElem> {
        let mut out = self.zero();
        for (i, u) in x.iter().enumerate() {
            if self.s.is_zero(u) {
                continue;
            }
            for (j, v) in y.iter().enumerate() {
                let terms = self.a.product_of_basis(i, j);
                if terms.is_empty() || self.s.is_zero(v) {
                    continue;
                }
                let uv = self.s.mul(u, v);
                for &(k, c) in terms {
                    self.s.add_assign(&mut out[k], &self.s.scale(c, &uv));
                }
            }
        }
        out
    }
    fn scale(&self, c: Elem, x: &Vec<SElem>) -> Vec<SElem> {
        x.iter().map(|u| self.s.scale(c, u)).collect()
    }
    fn is_zero(&self, x: &Vec<SElem>) -> bool {
        x.iter().all(|u| self.s.is_zero(u))
    }
}

/// Right `k[G]`-comodule algebra. `images[i] = σ(generator i)`: every basis
/// element for a finite carrier, every variable for a polynomial carrier.
#[derive(Clone, Debug)]
pub struct ComoduleAlgebra {
    pub name: String,
    pub scheme: Arc<GroupScheme>,
    pub carrier: Carrier,
    pub images: Vec<Vec<SElem>>,
}

impl ComoduleAlgebra {
    pub fn new(
        name: &str,
        scheme: Arc<GroupScheme>,
        carrier: Carrier,
        images: Vec<Vec<SElem>>,
    ) -> Result<ComoduleAlgebra> {
        let gens = carrier.generator_names().len();
        if images.len() != gens || images.iter().any(|v| v.len() != scheme.order()) {
            return Err(Error::DimensionMismatch(format!(
                "coaction of {name} needs {gens} images of length {}",
                scheme.order()
            )));
        }
        if scheme.field() != CommRing::field(&carrier) {
            return Err(Error::SchemeMismatch(format!("{name}: carrier and scheme fields differ")));
        }
        Ok(ComoduleAlgebra { name: name.to_string(), scheme, carrier, images })
    }

    /// `σ = (−) ⊗ 1`.
    pub fn trivial(name: &str, scheme: Arc<GroupScheme>, carrier: Carrier) -> ComoduleAlgebra {
        let unit = scheme.coord().unit().to_vec();
        let images = (0..carrier.generator_names().len())
            .map(|i| {
                let g = carrier.generator(i);
                unit.iter().map(|&c| carrier.scale(c, &g)).collect()
            })
            .collect();
        ComoduleAlgebra { name: name.to_string(), scheme, carrier, images }
    }

    /// `S = k[G]` with `σ = Δ`.
    pub fn regular(scheme: Arc<GroupScheme>) -> ComoduleAlgebra {
        let c = scheme.coord();
        let n = c.dim();
        let carrier = Carrier::Finite(c.algebra().clone());
        let images = (0..n)
            .map(|k| {
                let mut out = vec![SElem::Finite(vec![0; n]); n];
                for &(i, j, coef) in c.comult_terms(k) {
                    let f = scheme.field();
                    let SElem::Finite(v) = &mut out[j] else { unreachable!() };
                    v[i] = f.add(v[i], coef);
                }
                out
            })
            .collect();
        ComoduleAlgebra { name: format!("k[{}]", scheme.name()), scheme, carrier, images }
    }

    pub fn field(&self) -> &Field {
        self.scheme.field()
    }

    pub fn tensor_ring(&self) -> TensorRing<'_> {
        TensorRing { s: &self.carrier, a: self.scheme.coord().algebra() }
    }

    pub fn coact(&self, s: &SElem) -> Vec<SElem> {
        let t = self.tensor_ring();
        match (&self.carrier, s) {
            (Carrier::Finite(_), SElem::Finite(v)) => {
                let mut out = t.zero();
                for (b, &c) in v.iter().enumerate() {
                    if c != 0 {
                        out = t.add(&out, &t.scale(c, &self.images[b]));
                    }
                }
                out
            }
            (Carrier::Poly(r), SElem::Poly(p)) => r.eval(p, &t, &self.images),
            _ => panic!("element does not belong to the carrier"),
        }
    }

    /// `s ⊗ 1`.
    pub fn constant(&self, s: &SElem) -> Vec<SElem> {
        self.scheme.coord().unit().iter().map(|&c| self.carrier.scale(c, s)).collect()
    }

    pub fn is_invariant(&self, s: &SElem) -> bool {
        self.coact(s) == self.constant(s)
    }

    /// The same algebra as an `H`-comodule algebra.
    pub fn restrict(&self, e: &SubgroupEmbedding) -> Result<ComoduleAlgebra> {
        if !same_scheme(e.amb(), &self.scheme) {
            return Err(Error::SchemeMismatch(format!(
                "{} is not a subgroup of {}",
                e.sub().name(),
                self.scheme.name()
            )));
        }
        let pi = e.coord_surj();
        let images = self.images.iter().map(|v| push_forward(&self.carrier, pi, v)).collect();
        Ok(ComoduleAlgebra { name: self.name.clone(), scheme: e.sub().clone(), carrier: self.carrier.clone(), images })
    }

    pub fn is_invariant_under(&self, e: &SubgroupEmbedding, s: &SElem) -> Result<bool> {
        Ok(self.restrict(e)?.is_invariant(s))
    }

    /// Over a field containing the prime field; element codes are unchanged.
    pub fn base_change(&self, field: &Field) -> Result<ComoduleAlgebra> {
        Ok(ComoduleAlgebra {
            name: self.name.clone(),
            scheme: Arc::new(self.scheme.base_change(field)?),
            carrier: self.carrier.base_change(field)?,
            images: self.images.clone(),
        })
    }

    /// Algebra-map, coassociativity and counit axioms with witnesses.
    pub fn validate(&self) -> Vec<AxiomCheck> {
        let names = self.carrier.generator_names();
        let t = self.tensor_ring();
        let c = self.scheme.coord();
        let n = c.dim();
        let mut checks = Vec::new();
        let mut record = |axiom: &'static str, witness: Option<String>| {
            checks.push(AxiomCheck { axiom, pass: witness.is_none(), witness });
        };

        let mult = match &self.carrier {
            Carrier::Finite(a) => {
                let unit_ok = self.coact(&SElem::Finite(a.unit().to_vec())) == t.one();
                let mut w = (!unit_ok).then(|| "σ(1) ≠ 1 ⊗ 1".to_string());
                'outer: for i in 0..a.dim() {
                    for j in 0..a.dim() {
                        let prod =
                            self.coact(&SElem::Finite(a.mul(&unit_vector(a.dim(), i), &unit_vector(a.dim(), j))));
                        if w.is_none() && prod != t.mul(&self.images[i], &self.images[j]) {
                            w = Some(format!("σ({} {}) ≠ σ({}) σ({})", names[i], names[j], names[i], names[j]));
                            break 'outer;
                        }
                    }
                }
                w
            }
            Carrier::Poly(r) => r.truncation().and_then(|tr| {
                tr.iter().enumerate().find_map(|(i, &e)| {
                    (!t.is_zero(&t.pow(&self.images[i], e as u64))).then(|| format!("σ({})^{e} ≠ 0", names[i]))
                })
            }),
        };
        record("algebra map", mult);

        let mut coassoc = None;
        let mut counit = None;
        let eps = c.counit();
        for (g, img) in self.images.iter().enumerate() {
            let mut lhs = vec![self.carrier.zero(); n * n];
            for (b, sb) in img.iter().enumerate() {
                let inner = self.coact(sb);
                for (a, v) in inner.into_iter().enumerate() {
                    lhs[a * n + b] = self.carrier.add(&lhs[a * n + b], &v);
                }
            }
            let mut rhs = vec![self.carrier.zero(); n * n];
            for (k, sk) in img.iter().enumerate() {
                for &(i, j, coef) in c.comult_terms(k) {
                    rhs[i * n + j] = self.carrier.add(&rhs[i * n + j], &self.carrier.scale(coef, sk));
                }
            }
            if coassoc.is_none() && lhs != rhs {
                coassoc = Some(format!("generator {}", names[g]));
            }
            let back = img
                .iter()
                .zip(eps)
                .fold(self.carrier.zero(), |acc, (sb, &e)| self.carrier.add(&acc, &self.carrier.scale(e, sb)));
            if counit.is_none() && back != self.carrier.generator(g) {
                counit = Some(format!("generator {}", names[g]));
            }
        }
        record("coassociativity", coassoc);
        record("counit", counit);
        checks
    }

    /// Basis of `S^G`; polynomial carriers need a degree bound and return the
    /// invariants among polynomials of degree at most the bound.
    pub fn invariants(&self, degree_bound: Option<u32>) -> Result<Vec<SElem>> {
        let f = self.field();
        match &self.carrier {
            Carrier::Finite(a) => {
                let d = a.dim();
                let n = self.scheme.order();
                let cols: Vec<Vec<Elem>> = (0..d)
                    .map(|i| {
                        let s = SElem::Finite(unit_vector(d, i));
                        let diff = self.carrier_diff(&s);
                        diff.iter().flat_map(|x| x.as_finite().to_vec()).collect()
                    })
                    .collect();
                let m = Matrix::from_cols(n * d, &cols);
                Ok(kernel_basis(&m, f).into_iter().map(SElem::Finite).collect())
            }
            Carrier::Poly(r) => {
                let bound = degree_bound.ok_or(Error::MissingDegreeBound)?;
                let monos = r.monomials_up_to(bound);
                let mut rows: BTreeMap<(usize, Mono), usize> = BTreeMap::new();
                let diffs: Vec<Vec<SElem>> =
                    monos.iter().map(|e| self.carrier_diff(&SElem::Poly(r.monomial(e.clone(), 1)))).collect();
                for d in &diffs {
                    for (j, x) in d.iter().enumerate() {
                        for m in x.as_poly().keys() {
                            let next = rows.len();
                            rows.entry((j, m.clone())).or_insert(next);
                        }
                    }
                }
                let mut mat = Matrix::zeros(rows.len(), monos.len());
                for (col, d) in diffs.iter().enumerate() {
                    for (j, x) in d.iter().enumerate() {
                        for (m, &c) in x.as_poly() {
                            mat.set(rows[&(j, m.clone())], col, c);
                        }
                    }
                }
                Ok(kernel_basis(&mat, f)
                    .into_iter()
                    .map(|v| {
                        let mut p = Poly::new();
                        for (e, c) in monos.iter().zip(v) {
                            if c != 0 {
                                p.insert(Mono(e.clone()), c);
                            }
                        }
                        SElem::Poly(p)
                    })
                    .collect())
            }
        }
    }

    fn carrier_diff(&self, s: &SElem) -> Vec<SElem> {
        let t = self.tensor_ring();
        t.sub(&self.coact(s), &self.constant(s))
    }
}

/// `(id ⊗ π)` for a linear map `π` given as a matrix on coordinates.
fn push_forward(s: &Carrier, pi: &Matrix, v: &[SElem]) -> Vec<SElem> {
    (0..pi.rows())
        .map(|h| {
            v.iter()
                .enumerate()
                .filter(|&(j, _)| pi.get(h, j) != 0)
                .fold(s.zero(), |acc, (j, x)| s.add(&acc, &s.scale(pi.get(h, j), x)))
        })
        .collect()
}

/// Smallest `n` with `f^{p^n} = 0` for all `f` in the augmentation ideal.
pub fn height_of(g: &GroupScheme) -> Result<u32> {
    if !is_infinitesimal(g) {
        return Err(Error::NotInfinitesimal);
    }
    let c = g.coord();
    let a = c.algebra();
    let f = g.field();
    let p = f.p() as u64;
    let mut ideal: Vec<Vec<Elem>> = (0..a.dim())
        .map(|i| {
            let mut v = unit_vector(a.dim(), i);
            for (x, &u) in v.iter_mut().zip(a.unit()) {
                *x = f.sub(*x, f.mul(c.apply_counit(&unit_vector(a.dim(), i)), u));
            }
            v
        })
        .filter(|v| v.iter().any(|&x| x != 0))
        .collect();
    let mut n = 0;
    // Frobenius is additive, so killing a spanning set suffices.
    while !ideal.is_empty() {
        ideal = ideal.iter().map(|v| a.pow(v, p)).filter(|v| v.iter().any(|&x| x != 0)).collect();
        n += 1;
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::builtin;

    pub(crate) fn translation(p: u32) -> ComoduleAlgebra {
        let f = Field::prime(p).unwrap();
        let g = Arc::new(builtin::alpha_p(&f).unwrap());
        let r = PolyRing::new(f, vec!["v".into()], None).unwrap();
        let n = g.order();
        let mut img = vec![SElem::Poly(Poly::new()); n];
        img[0] = SElem::Poly(r.var(0));
        img[1] = SElem::Poly(r.one());
        ComoduleAlgebra::new("k[v]", g, Carrier::Poly(r), vec![img]).unwrap()
    }

    #[test]
    fn trivial_and_regular_validate() {
        let f = Field::prime(2).unwrap();
        let g = Arc::new(builtin::heisenberg1(&f).unwrap());
        let r = PolyRing::new(f, vec!["x".into()], Some(vec![4])).unwrap();
        let t = ComoduleAlgebra::trivial("S", g.clone(), Carrier::Poly(r));
        assert!(t.validate().iter().all(|c| c.pass));
        assert_eq!(t.invariants(Some(5)).unwrap().len(), 4);
        let reg = ComoduleAlgebra::regular(g);
        assert!(reg.validate().iter().all(|c| c.pass));
        assert_eq!(reg.invariants(None).unwrap().len(), 1);
    }

    #[test]
    fn broken_coaction_has_witness() {
        let mut s = translation(3);
        let r = match &s.carrier {
            Carrier::Poly(r) => r.clone(),
            _ => unreachable!(),
        };
        s.images[0][2] = SElem::Poly(r.one());
        let checks = s.validate();
        let bad = checks.iter().find(|c| c.axiom == "coassociativity").unwrap();
        assert!(!bad.pass);
        assert_eq!(bad.witness.as_deref(), Some("generator v"));
    }

    #[test]
    fn translation_invariants() {
        for p in [2u32, 3] {
            let s = translation(p);
            assert!(s.validate().iter().all(|c| c.pass));
            assert!(matches!(s.invariants(None), Err(Error::MissingDegreeBound)));
            let inv = s.invariants(Some(p)).unwrap();
            assert_eq!(inv.len(), 2);
            let r = match &s.carrier {
                Carrier::Poly(r) => r.clone(),
                _ => unreachable!(),
            };
            assert!(inv.contains(&SElem::Poly(r.monomial(vec![p], 1))));
        }
    }

    #[test]
    fn heights() {
        let f = Field::prime(2).unwrap();
        assert_eq!(height_of(&builtin::alpha_p(&f).unwrap()).unwrap(), 1);
        assert_eq!(height_of(&builtin::heisenberg1(&f).unwrap()).unwrap(), 1);
        assert_eq!(height_of(&builtin::alpha_pn(&f, 2).unwrap()).unwrap(), 2);
        let c2 = builtin::constant(&f, &crate::hopf::GroupTable::cyclic(2)).unwrap();
        assert!(matches!(height_of(&c2), Err(Error::NotInfinitesimal)));
    }
}

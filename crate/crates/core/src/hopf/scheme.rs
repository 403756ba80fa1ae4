use crate::error::{Error, Result};
use crate::scalars::algebra::unit_vector;
use crate::scalars::{Elem, Field, Matrix, Subspace};

use super::algebra::{AxiomCheck, HopfAlgebra, HopfReport};

/// A finite group scheme: coordinate ring `k[G]`, group algebra `kG = k[G]^*`
/// in the dual basis, and the pairing between them (the identity matrix when
/// `kG` is derived).
#[derive(Clone, Debug, PartialEq)]
pub struct GroupScheme {
    name: String,
    coord: HopfAlgebra,
    group_alg: HopfAlgebra,
    pairing: Matrix,
    generators: Vec<Vec<Elem>>,
}

fn algebra_generators(h: &HopfAlgebra) -> Vec<Vec<Elem>> {
    let n = h.dim();
    let f = h.field();
    let mut gens: Vec<Vec<Elem>> = Vec::new();
    let mut span = Subspace::span(n, &[h.unit().to_vec()], f);
    while span.dim() < n {
        let next = (0..n).find(|&i| !span.contains(&unit_vector(n, i), f)).expect("span is proper");
        gens.push(unit_vector(n, next));
        loop {
            let mut vs = span.basis();
            for b in span.basis() {
                for g in &gens {
                    vs.push(h.mul(&b, g));
                }
            }
            let grown = Subspace::span(n, &vs, f);
            if grown.dim() == span.dim() {
                break;
            }
            span = grown;
        }
    }
    gens
}

impl GroupScheme {
    /// Builds the scheme from a commutative Hopf algebra; `kG` is its dual.
    pub fn from_coord(
        name: impl Into<String>,
        coord: HopfAlgebra,
        dual_names: Option<Vec<String>>,
    ) -> Result<GroupScheme> {
        let report = coord.validate();
        if !report.passed() {
            let failed: Vec<_> = report.failed().map(|c| c.axiom).collect();
            return Err(Error::InvalidTable(format!("Hopf axioms fail: {}", failed.join(", "))));
        }
        if !coord.is_commutative() {
            return Err(Error::InvalidTable("coordinate ring is not commutative".into()));
        }
        let names = dual_names.unwrap_or_else(|| coord.names().iter().map(|n| format!("<{n}>")).collect());
        if names.len() != coord.dim() {
            return Err(Error::DimensionMismatch("group algebra basis names".into()));
        }
        let group_alg = coord.dual(names);
        let generators = algebra_generators(&group_alg);
        let pairing = Matrix::identity(coord.dim());
        Ok(GroupScheme { name: name.into(), coord, group_alg, pairing, generators })
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn with_name(mut self, name: impl Into<String>) -> GroupScheme {
        self.name = name.into();
        self
    }
    pub fn coord(&self) -> &HopfAlgebra {
        &self.coord
    }
    pub fn group_alg(&self) -> &HopfAlgebra {
        &self.group_alg
    }
    pub fn pairing(&self) -> &Matrix {
        &self.pairing
    }
    pub fn field(&self) -> &Field {
        self.coord.field()
    }
    /// `|G| = dim k[G]`.
    pub fn order(&self) -> usize {
        self.coord.dim()
    }
    /// Algebra generators of `kG` (basis vectors), chosen greedily in basis order.
    pub fn kg_generators(&self) -> &[Vec<Elem>] {
        &self.generators
    }

    /// Counit of `kG`.
    pub fn kg_counit(&self, x: &[Elem]) -> Elem {
        self.group_alg.apply_counit(x)
    }

    /// Swaps the roles of `k[G]` and `kG`.
    pub fn dualize(&self) -> GroupScheme {
        GroupScheme {
            name: format!("dual({})", self.name),
            coord: self.group_alg.clone(),
            group_alg: self.coord.clone(),
            pairing: self.pairing.transpose(),
            generators: algebra_generators(&self.coord),
        }
    }

    pub fn base_change(&self, field: &Field) -> Result<GroupScheme> {
        Ok(GroupScheme {
            name: self.name.clone(),
            coord: self.coord.base_change(field)?,
            group_alg: self.group_alg.base_change(field)?,
            pairing: self.pairing.clone(),
            generators: self.generators.clone(),
        })
    }

    /// Checks that the two Hopf structures are transposes of each other under
    /// the pairing, plus the Hopf axioms of both sides.
    pub fn validate(&self) -> HopfReport {
        let f = self.field();
        let mut checks = Vec::new();
        for (label, h) in [("coord", &self.coord), ("group-alg", &self.group_alg)] {
            for c in h.validate().checks {
                checks.push(AxiomCheck {
                    axiom: c.axiom,
                    pass: c.pass,
                    witness: c.witness.map(|w| format!("{label}: {w}")),
                });
            }
        }
        let p = &self.pairing;
        let pinv = crate::scalars::linalg::inverse(p, f);
        let dual_ok = pinv.is_some_and(|_| {
            // <x y, f> = <x ⊗ y, Δf> and <x, f g> = <Δx, f ⊗ g>, all in the given bases
            let pp = p.kronecker(p, f);
            let mult_kg = self.group_alg.algebra().mult_matrix();
            let comult_c = self.coord.comult_matrix();
            let a = mult_kg.transpose().mul(p, f);
            let b = pp.mul(&comult_c, f);
            let m_c = self.coord.algebra().mult_matrix();
            let comult_kg = self.group_alg.comult_matrix();
            let c = comult_kg.transpose().mul(&pp, f);
            let d = p.mul(&m_c, f);
            let unit_ok = p.transpose().mul_vec(self.group_alg.unit(), f) == self.coord.counit()
                && p.mul_vec(self.coord.unit(), f) == self.group_alg.counit();
            let s_ok = self.group_alg.antipode().transpose().mul(p, f) == p.mul(self.coord.antipode(), f);
            a == b && c == d && unit_ok && s_ok
        });
        checks.push(AxiomCheck {
            axiom: "pairing",
            pass: dual_ok,
            witness: (!dual_ok).then(|| "structure maps are not mutually dual".to_string()),
        });
        HopfReport { checks }
    }
}

//! TOML workspace files: a base field plus named schemes, subgroup embeddings,
//! modules and comodule algebras.
//!
//! Building a workspace never stops at the first broken object. Each object
//! contributes findings; an object whose construction fails is reported and
//! anything depending on it is reported as blocked. Only malformed input
//! (bad TOML, unknown references, unparsable expressions) is an error.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;

use grpscheme::adjunction::{coinduce, induce};
use grpscheme::hopf::builtin::{self, GroupTable};
use grpscheme::hopf::subgroup::{
    identity_embedding, right_invariants, subgroup_embed, trivial_subgroup, SubgroupEmbedding,
};
use grpscheme::hopf::{AxiomCheck, GroupScheme, HopfAlgebra};
use grpscheme::norm::{Carrier, ComoduleAlgebra, SElem};
use grpscheme::repmod::GModule;
use grpscheme::scalars::{CommRing, Elem, Field, FiniteAlgebra, Matrix, Poly, PolyRing};

use crate::error::CliError;
use crate::expr;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceFile {
    pub field: FieldSpec,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub suites: Vec<String>,
    pub samples: Option<usize>,
    #[serde(default)]
    pub schemes: BTreeMap<String, SchemeSpec>,
    #[serde(default)]
    pub embeddings: BTreeMap<String, EmbeddingSpec>,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleSpec>,
    #[serde(default)]
    pub algebras: BTreeMap<String, AlgebraSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u32,
    #[serde(default = "one")]
    pub degree: u32,
    pub modulus: Option<Vec<u32>>,
}

fn one() -> u32 {
    1
}

/// Either `builtin` (with `n` where needed) or the raw tables.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeSpec {
    pub builtin: Option<String>,
    pub n: Option<u32>,
    /// Factors for `builtin = "product"`.
    pub factors: Option<Vec<String>>,
    pub names: Option<Vec<String>>,
    pub dual_names: Option<Vec<String>>,
    pub unit: Option<Vec<Elem>>,
    /// One entry per basis pair `(i, j)` in row-major order: `[k, c]` terms of `e_i e_j`.
    pub mult: Option<Vec<Vec<(usize, Elem)>>>,
    /// `[i, j, c]` terms of `Δ(e_k)`.
    pub comult: Option<Vec<Vec<(usize, usize, Elem)>>>,
    pub counit: Option<Vec<Elem>>,
    /// Rows of the antipode matrix; column `j` is `S(e_j)`.
    pub antipode: Option<Vec<Vec<Elem>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingSpec {
    pub scheme: String,
    /// Generators of the Hopf ideal, as expressions in the coordinate basis.
    #[serde(default)]
    pub ideal: Vec<String>,
    /// The trivial subgroup; `ideal` must then be empty.
    #[serde(default)]
    pub trivial: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    /// Scheme name, or embedding name for its subgroup.
    pub scheme: Option<String>,
    /// trivial, regular, left_translation, right_invariants, restrict, coind, ind, sum, raw.
    pub kind: String,
    pub embedding: Option<String>,
    #[serde(default)]
    pub of: Vec<String>,
    /// For `raw`: one matrix (as rows) per group algebra basis element.
    pub action: Option<Vec<Vec<Vec<Elem>>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub scheme: String,
    /// `poly` or `regular`.
    pub carrier: String,
    #[serde(default)]
    pub vars: Vec<String>,
    pub trunc: Option<Vec<u32>>,
    /// Per variable, `[s, f]` pairs with `σ(x) = Σ s ⊗ f`.
    #[serde(default)]
    pub coaction: BTreeMap<String, Vec<(String, String)>>,
    /// Degree over the prime field of the splitting extension.
    pub ext_degree: Option<u32>,
    pub degree_bound: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub object: String,
    pub check: String,
    pub pass: bool,
    pub witness: Option<String>,
}

impl Finding {
    fn ok(object: &str, check: &str, pass: bool) -> Finding {
        Finding { object: object.into(), check: check.into(), pass, witness: None }
    }
    fn error(object: &str, check: &str, err: impl ToString) -> Finding {
        Finding { object: object.into(), check: check.into(), pass: false, witness: Some(err.to_string()) }
    }
    fn axiom(object: &str, c: AxiomCheck) -> Finding {
        Finding { object: object.into(), check: c.axiom.into(), pass: c.pass, witness: c.witness }
    }
}

pub struct Algebra {
    pub algebra: ComoduleAlgebra,
    pub ext: Option<Field>,
    pub degree_bound: Option<u32>,
}

pub struct Workspace {
    pub field: Field,
    pub seed: u64,
    pub suites: Vec<String>,
    pub samples: Option<usize>,
    pub schemes: BTreeMap<String, Arc<GroupScheme>>,
    pub embeddings: BTreeMap<String, SubgroupEmbedding>,
    pub modules: BTreeMap<String, GModule>,
    pub algebras: BTreeMap<String, Algebra>,
    pub findings: Vec<Finding>,
    /// Objects that failed or depend on a failed object.
    pub broken: BTreeSet<String>,
}

impl Workspace {
    pub fn load(path: &Path) -> Result<Workspace, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        Workspace::from_str(&text)
    }

    pub fn from_str(text: &str) -> Result<Workspace, CliError> {
        let file: WorkspaceFile = toml::from_str(text)?;
        Workspace::build(file)
    }

    fn build(file: WorkspaceFile) -> Result<Workspace, CliError> {
        let field = Field::new(file.field.p, file.field.degree, file.field.modulus.clone())
            .map_err(|e| CliError::Parse(format!("[field]: {e}")))?;
        let mut seen = BTreeSet::new();
        for name in
            file.schemes.keys().chain(file.embeddings.keys()).chain(file.modules.keys()).chain(file.algebras.keys())
        {
            if !seen.insert(name) {
                return Err(CliError::Parse(format!("name `{name}` is defined twice")));
            }
        }
        let mut ws = Workspace {
            field,
            seed: file.seed,
            suites: file.suites.clone(),
            samples: file.samples,
            schemes: BTreeMap::new(),
            embeddings: BTreeMap::new(),
            modules: BTreeMap::new(),
            algebras: BTreeMap::new(),
            findings: Vec::new(),
            broken: BTreeSet::new(),
        };
        let mut building = BTreeSet::new();
        for name in file.schemes.keys() {
            ws.scheme(&file, name, &mut building)?;
        }
        for name in file.embeddings.keys() {
            ws.embedding(&file, name, &mut building)?;
        }
        for name in file.modules.keys() {
            ws.module(&file, name, &mut building)?;
        }
        for (name, spec) in &file.algebras {
            ws.algebra(&file, name, spec)?;
        }
        Ok(ws)
    }

    pub fn passed(&self) -> bool {
        self.findings.iter().all(|f| f.pass)
    }

    fn block(&mut self, name: &str, on: &str) {
        self.broken.insert(name.to_string());
        self.findings.push(Finding::error(name, "dependencies", format!("depends on broken `{on}`")));
    }

    fn fail(&mut self, name: &str, check: &str, err: impl ToString) {
        self.broken.insert(name.to_string());
        self.findings.push(Finding::error(name, check, err));
    }

    fn scheme(&mut self, file: &WorkspaceFile, name: &str, building: &mut BTreeSet<String>) -> Result<(), CliError> {
        if self.schemes.contains_key(name) || self.broken.contains(name) {
            return Ok(());
        }
        let spec = file.schemes.get(name).ok_or_else(|| CliError::Parse(format!("unknown scheme `{name}`")))?;
        if !building.insert(name.to_string()) {
            return Err(CliError::Parse(format!("scheme `{name}` depends on itself")));
        }
        let f = self.field.clone();
        let built = match spec.builtin.as_deref() {
            Some("product") => {
                let factors = spec.factors.as_deref().unwrap_or_default();
                if factors.len() != 2 {
                    return Err(CliError::Parse(format!("scheme `{name}`: product needs two factors")));
                }
                for fac in factors {
                    self.scheme(file, fac, building)?;
                    if self.broken.contains(fac) {
                        building.remove(name);
                        self.block(name, fac);
                        return Ok(());
                    }
                }
                builtin::product(&self.schemes[&factors[0]], &self.schemes[&factors[1]])
            }
            Some(b) => {
                let n = || spec.n.ok_or_else(|| CliError::Parse(format!("scheme `{name}`: `{b}` needs `n`")));
                match b {
                    "alpha_p" => builtin::alpha_p(&f),
                    "alpha_pn" => builtin::alpha_pn(&f, n()?),
                    "mu_p" => builtin::mu_p(&f),
                    "mu" => builtin::mu(&f, n()?),
                    "heisenberg1" => builtin::heisenberg1(&f),
                    "alpha_rtimes_mu" => builtin::alpha_rtimes_mu(&f),
                    "cyclic" => builtin::constant(&f, &GroupTable::cyclic(n()? as usize)),
                    "s3" => builtin::constant(&f, &GroupTable::s3()),
                    other => return Err(CliError::Parse(format!("scheme `{name}`: unknown builtin `{other}`"))),
                }
            }
            None => {
                let h = raw_hopf(name, spec, &f)?;
                let report = h.validate();
                if !report.passed() {
                    self.broken.insert(name.to_string());
                    self.findings.extend(report.checks.into_iter().map(|c| Finding::axiom(name, c)));
                    building.remove(name);
                    return Ok(());
                }
                GroupScheme::from_coord(name, h, spec.dual_names.clone())
            }
        };
        building.remove(name);
        match built {
            Ok(g) => {
                let g = g.with_name(name);
                self.findings.extend(g.validate().checks.into_iter().map(|c| Finding::axiom(name, c)));
                self.schemes.insert(name.to_string(), Arc::new(g));
            }
            Err(e) => self.fail(name, "construct", e),
        }
        Ok(())
    }

    /// A scheme by name, or the subgroup of a named embedding.
    fn resolve_scheme(&self, file: &WorkspaceFile, name: &str) -> Result<Option<Arc<GroupScheme>>, CliError> {
        if let Some(g) = self.schemes.get(name) {
            return Ok(Some(g.clone()));
        }
        if let Some(e) = self.embeddings.get(name) {
            return Ok(Some(e.sub().clone()));
        }
        if file.schemes.contains_key(name) || file.embeddings.contains_key(name) {
            return Ok(None);
        }
        Err(CliError::Parse(format!("unknown scheme `{name}`")))
    }

    fn embedding(&mut self, file: &WorkspaceFile, name: &str, building: &mut BTreeSet<String>) -> Result<(), CliError> {
        if self.embeddings.contains_key(name) || self.broken.contains(name) {
            return Ok(());
        }
        let spec = &file.embeddings[name];
        if file.embeddings.contains_key(&spec.scheme) {
            if !building.insert(name.to_string()) {
                return Err(CliError::Parse(format!("embedding `{name}` depends on itself")));
            }
            self.embedding(file, &spec.scheme, building)?;
            building.remove(name);
        }
        let Some(g) = self.resolve_scheme(file, &spec.scheme)? else {
            self.block(name, &spec.scheme);
            return Ok(());
        };
        let built = if spec.trivial {
            if !spec.ideal.is_empty() {
                return Err(CliError::Parse(format!("embedding `{name}`: `trivial` excludes `ideal`")));
            }
            trivial_subgroup(&g)
        } else if spec.ideal.is_empty() {
            Ok(identity_embedding(&g))
        } else {
            let gens = spec
                .ideal
                .iter()
                .map(|src| coord_expr(&g, src).map_err(|e| CliError::Parse(format!("embedding `{name}`: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            subgroup_embed(&g, &gens, name)
        };
        match built {
            Ok(e) => {
                self.findings.push(Finding::ok(name, "hopf-ideal", e.verify()));
                self.embeddings.insert(name.to_string(), e);
            }
            Err(e) => self.fail(name, "construct", e),
        }
        Ok(())
    }

    fn embedding_ref(&self, file: &WorkspaceFile, owner: &str, e: Option<&str>) -> Result<Option<String>, CliError> {
        let e = e.ok_or_else(|| CliError::Parse(format!("`{owner}` needs an `embedding`")))?;
        if self.embeddings.contains_key(e) {
            Ok(None)
        } else if file.embeddings.contains_key(e) {
            Ok(Some(e.to_string()))
        } else {
            Err(CliError::Parse(format!("`{owner}`: unknown embedding `{e}`")))
        }
    }

    fn module(&mut self, file: &WorkspaceFile, name: &str, building: &mut BTreeSet<String>) -> Result<(), CliError> {
        if self.modules.contains_key(name) || self.broken.contains(name) {
            return Ok(());
        }
        let spec = file.modules.get(name).ok_or_else(|| CliError::Parse(format!("unknown module `{name}`")))?;
        if !building.insert(name.to_string()) {
            return Err(CliError::Parse(format!("module `{name}` depends on itself")));
        }
        for dep in &spec.of {
            self.module(file, dep, building)?;
            if self.broken.contains(dep) {
                building.remove(name);
                self.block(name, dep);
                return Ok(());
            }
        }
        building.remove(name);
        let deps: Vec<GModule> = spec.of.iter().map(|d| self.modules[d].clone()).collect();
        let needs_of = |k: usize| {
            if deps.len() == k {
                Ok(())
            } else {
                Err(CliError::Parse(format!("module `{name}`: `{}` takes {k} module(s) in `of`", spec.kind)))
            }
        };
        let scheme = match &spec.scheme {
            Some(s) => match self.resolve_scheme(file, s)? {
                Some(g) => Some(g),
                None => {
                    self.block(name, s);
                    return Ok(());
                }
            },
            None => None,
        };
        let need_scheme = || scheme.clone().ok_or_else(|| CliError::Parse(format!("module `{name}` needs a `scheme`")));
        let built = match spec.kind.as_str() {
            "trivial" => Ok(GModule::trivial(&need_scheme()?)),
            "regular" => Ok(GModule::regular(&need_scheme()?)),
            "left_translation" => Ok(GModule::left_translation(&need_scheme()?)),
            "raw" => {
                let g = need_scheme()?;
                let action =
                    spec.action.as_ref().ok_or_else(|| CliError::Parse(format!("module `{name}` needs `action`")))?;
                let dim = action.first().map_or(0, |m| m.len());
                let q = self.field.order();
                if action.iter().flatten().flatten().any(|&c| c >= q) {
                    return Err(CliError::Parse(format!("module `{name}`: coefficient outside the field")));
                }
                if action.iter().flatten().any(|row| row.len() != dim) {
                    return Err(CliError::Parse(format!("module `{name}`: action matrices must be square")));
                }
                GModule::new(g, dim, action.iter().map(|rows| Matrix::from_rows(rows)).collect())
            }
            "sum" => {
                if deps.is_empty() {
                    return Err(CliError::Parse(format!("module `{name}`: `sum` needs modules in `of`")));
                }
                deps[1..].iter().try_fold(deps[0].clone(), |acc, m| acc.direct_sum(m))
            }
            kind @ ("right_invariants" | "restrict" | "coind" | "ind") => {
                if let Some(dep) = self.embedding_ref(file, name, spec.embedding.as_deref())? {
                    self.block(name, &dep);
                    return Ok(());
                }
                let e = &self.embeddings[spec.embedding.as_deref().unwrap_or_default()];
                match kind {
                    "right_invariants" => {
                        needs_of(0)?;
                        GModule::left_translation(e.amb()).submodule(&right_invariants(e)).map(|(m, _)| m)
                    }
                    "restrict" => {
                        needs_of(1)?;
                        deps[0].restrict(e)
                    }
                    "coind" => {
                        needs_of(1)?;
                        coinduce(e, &deps[0]).map(|c| c.module)
                    }
                    _ => {
                        needs_of(1)?;
                        induce(e, &deps[0]).map(|c| c.module)
                    }
                }
            }
            other => return Err(CliError::Parse(format!("module `{name}`: unknown kind `{other}`"))),
        };
        match built {
            Ok(m) => {
                self.findings.push(Finding::ok(name, "module-axioms", m.validate()));
                self.modules.insert(name.to_string(), m);
            }
            Err(e) => self.fail(name, "construct", e),
        }
        Ok(())
    }

    fn algebra(&mut self, file: &WorkspaceFile, name: &str, spec: &AlgebraSpec) -> Result<(), CliError> {
        let Some(g) = self.resolve_scheme(file, &spec.scheme)? else {
            self.block(name, &spec.scheme);
            return Ok(());
        };
        let ext = match spec.ext_degree {
            Some(d) => Some(
                Field::new(self.field.p(), d, None).map_err(|e| CliError::Parse(format!("algebra `{name}`: {e}")))?,
            ),
            None => None,
        };
        let built = match spec.carrier.as_str() {
            "regular" => Ok(ComoduleAlgebra::regular(g)),
            "poly" => poly_algebra(name, spec, g, &self.field)?,
            other => return Err(CliError::Parse(format!("algebra `{name}`: unknown carrier `{other}`"))),
        };
        match built {
            Ok(a) => {
                self.findings.extend(a.validate().into_iter().map(|c| Finding::axiom(name, c)));
                self.algebras.insert(name.to_string(), Algebra { algebra: a, ext, degree_bound: spec.degree_bound });
            }
            Err(e) => self.fail(name, "construct", e),
        }
        Ok(())
    }
}

type Built<T> = Result<T, grpscheme::Error>;

fn raw_hopf(name: &str, spec: &SchemeSpec, f: &Field) -> Result<HopfAlgebra, CliError> {
    let missing = |k: &str| CliError::Parse(format!("scheme `{name}`: needs `builtin` or `{k}`"));
    let names = spec.names.clone().ok_or_else(|| missing("names"))?;
    let unit = spec.unit.clone().ok_or_else(|| missing("unit"))?;
    let mult = spec.mult.clone().ok_or_else(|| missing("mult"))?;
    let comult = spec.comult.clone().ok_or_else(|| missing("comult"))?;
    let counit = spec.counit.clone().ok_or_else(|| missing("counit"))?;
    let rows = spec.antipode.clone().ok_or_else(|| missing("antipode"))?;
    let n = names.len();
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Parse(format!("scheme `{name}`: antipode must be {n} x {n}")));
    }
    let alg = FiniteAlgebra::new(f.clone(), names, mult, unit)
        .map_err(|e| CliError::Parse(format!("scheme `{name}`: {e}")))?;
    HopfAlgebra::new(alg, comult, counit, Matrix::from_rows(&rows))
        .map_err(|e| CliError::Parse(format!("scheme `{name}`: {e}")))
}

/// An element of `k[G]` written in its basis names.
pub fn coord_expr(g: &GroupScheme, src: &str) -> Result<Vec<Elem>, expr::ExprError> {
    let alg = g.coord().algebra();
    let names: Vec<&str> = alg.names().iter().map(String::as_str).collect();
    let values: Vec<Vec<Elem>> = (0..alg.dim()).map(|i| alg.basis(i)).collect();
    expr::parse(alg, &names, &values, src)
}

/// An element of a carrier written in its generator names.
pub fn carrier_expr(c: &Carrier, src: &str) -> Result<SElem, expr::ExprError> {
    let names = c.generator_names();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let values: Vec<SElem> = (0..names.len()).map(|i| c.generator(i)).collect();
    expr::parse(c, &refs, &values, src)
}

fn poly_algebra(
    name: &str,
    spec: &AlgebraSpec,
    g: Arc<GroupScheme>,
    f: &Field,
) -> Result<Built<ComoduleAlgebra>, CliError> {
    let perr = |msg: String| CliError::Parse(format!("algebra `{name}`: {msg}"));
    if spec.vars.is_empty() {
        return Err(perr("`poly` needs `vars`".into()));
    }
    let r = match PolyRing::new(f.clone(), spec.vars.clone(), spec.trunc.clone()) {
        Ok(r) => r,
        Err(e) => return Ok(Err(e)),
    };
    let carrier = Carrier::Poly(r.clone());
    if let Some(extra) = spec.coaction.keys().find(|k| !spec.vars.contains(k)) {
        return Err(perr(format!("coaction given for unknown variable `{extra}`")));
    }
    let coord = g.coord().algebra();
    let mut images = Vec::with_capacity(spec.vars.len());
    for v in &spec.vars {
        let terms = spec.coaction.get(v).ok_or_else(|| perr(format!("no coaction for `{v}`")))?;
        let mut img = vec![Poly::new(); g.order()];
        for (s_src, f_src) in terms {
            let s = carrier_expr(&carrier, s_src).map_err(|e| perr(e.to_string()))?;
            let fv = coord_expr(&g, f_src).map_err(|e| perr(e.to_string()))?;
            for (k, &c) in fv.iter().enumerate() {
                if c != 0 {
                    r.add_assign(&mut img[k], &r.scale(c, s.as_poly()));
                }
            }
        }
        debug_assert_eq!(coord.dim(), img.len());
        images.push(img.into_iter().map(SElem::Poly).collect());
    }
    Ok(ComoduleAlgebra::new(name, g, carrier, images))
}

//! Named verification suites over the catalog. Each suite returns one line per
//! check; a check that errors out becomes a failing line carrying the error.

use std::fmt::Display;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::adjunction::{
    adjunction_units, coind_transitivity, coinduce, ind_transitivity, induce, projection_formula, wirthmuller_battery,
};
use crate::catalog::{self, NormEntry};
use crate::error::{Error, Result};
use crate::extcoh::{bar_resolution, ext_dim, transfer_ext, transfer_ext_chain, DEFAULT_SIZE_CAP};
use crate::hopf::builtin::{self, GroupTable};
use crate::hopf::components::is_infinitesimal;
use crate::hopf::subgroup::{identity_embedding, nested, right_invariants, trivial_subgroup};
use crate::norm::{
    field_norm_compare, height_of, mumford_norm, Carrier, ComoduleAlgebra, NormPlan, SElem, Transversal,
};
use crate::repmod::{invariants, module_iso_search, GModule, IsoSearch};
use crate::scalars::algebra::unit_vector;
use crate::scalars::linalg::is_invertible;
use crate::scalars::{CommRing, Elem, Field, Matrix, Mono, Poly, PolyRing, Subspace};
use crate::transfer::{delta_module, integral_space, naturality_squares, transitivity_images, Side, Transfer};
use crate::transfer::{
    double_coset_invariants, g_retraction, higman_certificate, lambda_scalar, p1_retraction, trivial_is_summand,
    HigmanStatus,
};

pub const SUITES: &[&str] = &[
    "integrals",
    "mackey-example",
    "higman",
    "adjunction",
    "wirthmuller",
    "transfer",
    "lambda",
    "norm",
    "fieldnorm",
    "ext",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub suite: String,
    pub name: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Catalog fields are `F_{p^degree}`.
    pub degree: u32,
    /// Random elements or pairs per norm check.
    pub samples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, degree: 1, samples: 100 }
    }
}

struct Lines {
    suite: &'static str,
    out: Vec<CheckLine>,
}

impl Lines {
    fn new(suite: &'static str) -> Lines {
        Lines { suite, out: Vec::new() }
    }

    fn push(&mut self, name: String, expected: String, got: String, pass: bool) {
        self.out.push(CheckLine { suite: self.suite.to_string(), name, expected, got, pass });
    }

    fn eq<T: Display + PartialEq>(&mut self, name: impl Into<String>, expected: T, got: T) {
        let pass = expected == got;
        self.push(name.into(), expected.to_string(), got.to_string(), pass);
    }

    fn ok<T: Display + PartialEq>(&mut self, name: impl Into<String>, expected: T, got: Result<T>) {
        match got {
            Ok(g) => self.eq(name, expected, g),
            Err(e) => self.push(name.into(), expected.to_string(), format!("error: {e}"), false),
        }
    }

    fn info(&mut self, name: impl Into<String>, got: impl Display) {
        self.push(name.into(), "-".into(), got.to_string(), true);
    }
}

fn zero_or_not(b: bool) -> &'static str {
    if b {
        "nonzero"
    } else {
        "zero"
    }
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Vec<CheckLine>> {
    let lines = match name {
        "integrals" => integrals(cfg),
        "mackey-example" => mackey_example(cfg),
        "higman" => higman(cfg),
        "adjunction" => adjunction(cfg),
        "wirthmuller" => wirthmuller(cfg),
        "transfer" => transfer(cfg),
        "lambda" => lambda(cfg),
        "norm" => norm(cfg),
        "fieldnorm" => fieldnorm(cfg),
        "ext" => ext(cfg),
        "all" => return run_suites(SUITES, cfg, 1),
        other => return Err(Error::Parse(format!("unknown suite `{other}`"))),
    };
    lines.map(|l| l.out)
}

/// Runs several suites on `jobs` threads; output keeps the order of `names`.
pub fn run_suites(names: &[&str], cfg: &SuiteConfig, jobs: usize) -> Result<Vec<CheckLine>> {
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Consistency(e.to_string()))?;
    let parts: Vec<Result<Vec<CheckLine>>> = pool.install(|| names.par_iter().map(|n| run_suite(n, cfg)).collect());
    Ok(parts.into_iter().collect::<Result<Vec<_>>>()?.concat())
}

fn integrals(cfg: &SuiteConfig) -> Result<Lines> {
    let mut l = Lines::new("integrals");
    for g in catalog::integral_schemes(cfg.degree)? {
        for side in [Side::Left, Side::Right] {
            let got = integral_space(&g, side).map(|_| 1).or_else(|e| match e {
                Error::DimensionNotOne(n) => Ok(n),
                e => Err(e),
            });
            l.ok(format!("{side:?} integrals of {}", g.name()), 1, got);
        }
        let expect_unimodular = !g.name().starts_with("alpha_rtimes_mu");
        l.ok(format!("unimodular {}", g.name()), expect_unimodular, delta_module(&g).map(|d| d.is_unimodular()));
    }
    Ok(l)
}

fn mackey_example(cfg: &SuiteConfig) -> Result<Lines> {
    let mut l = Lines::new("mackey-example");
    for p in [2u32, 3] {
        let f = catalog::field(p, cfg.degree)?;
        let hz = catalog::heisenberg(&f)?;
        let n = hz.g.order();
        let (full, small) = hz.mackey_bases()?;
        let hv = Subspace::span(n, &right_invariants(&hz.h), &f);
        l.eq(format!("dim ^H k[G], p={p}"), (p * p) as usize, hv.dim());
        l.eq(format!("^H k[G] = span a^i d^j, p={p}"), true, hv == Subspace::span(n, &full, &f));
        let dc = double_coset_invariants(&hz.k, &hz.h)?;
        let dv = Subspace::span(n, &dc.basis, &f);
        l.eq(format!("dim ^H k[G]^K, p={p}"), p as usize, dv.dim());
        l.eq(format!("^H k[G]^K = span a^i, p={p}"), true, dv == Subspace::span(n, &small, &f));
        let v = hz.mackey_module()?;
        l.eq(format!("dim V, p={p}"), (p * p) as usize, v.dim());
        l.eq(format!("dim V^K, p={p}"), p as usize, invariants(&v).len());
    }
    Ok(l)
}

fn higman(cfg: &SuiteConfig) -> Result<Lines> {
    let mut l = Lines::new("higman");
    for p in [2u32, 3] {
        let f = catalog::field(p, cfg.degree)?;
        let hz = catalog::heisenberg(&f)?;
        let v = hz.mackey_module()?;
        let status = |c: &[crate::hopf::subgroup::SubgroupEmbedding]| {
            higman_certificate(&v, c).map(|r| format!("{:?}", r.status))
        };
        l.ok(format!("V over proper subgroups of K, p={p}"), "NotProjective".to_string(), status(&hz.k_proper));
        l.ok(format!("V over K itself, p={p}"), "Projective".to_string(), status(&[identity_embedding(hz.k.sub())]));
    }
    for pair in catalog::subgroup_pairs(cfg.degree)? {
        let e = &pair.embedding;
        let tr = Transfer::new(e)?;
        for (nname, n) in [("k", GModule::trivial(e.sub())), ("kH", GModule::regular(e.sub()))] {
            let got =
                coinduce(e, &n).and_then(|c| tr.on_invariants(&c.module)).map(|t| t.is_surjective(e.amb().field()));
            l.ok(format!("Tr onto coind({nname})^G, {}", pair.label), true, got);
        }
    }
    Ok(l)
}

fn adjunction(cfg: &SuiteConfig) -> Result<Lines> {
    let mut l = Lines::new("adjunction");
    for t in catalog::adjunction_triples(cfg.degree)? {
        l.ok(
            format!("units and bijections, {}", t.label),
            "ok",
            adjunction_units(&t.embedding, &t.n, &t.m).map(|_| "ok"),
        );
        let iso = projection_formula(&t.embedding, &t.m, &t.n).map(|g| is_invertible(&g.mat, t.m.field()));
        l.ok(format!("projection formula, {}", t.label), true, iso);
    }
    for (label, tri) in catalog::nested_triples(cfg.degree)? {
        let n = GModule::trivial(tri.k_in_h.sub());
        let f = n.field().clone();
        let c = coind_transitivity(&tri.k_in_h, &tri.h_in_g, &n).map(|g| is_invertible(&g.mat, &f));
        l.ok(format!("coind transitivity, {label}"), true, c);
        let i = ind_transitivity(&tri.k_in_h, &tri.h_in_g, &n).map(|g| is_invertible(&g.mat, &f));
        l.ok(format!("ind transitivity, {label}"), true, i);
    }
    Ok(l)
}

fn wirthmuller(cfg: &SuiteConfig) -> Result<Lines> {
    let mut l = Lines::new("wirthmuller");
    for (label, e, non_unimodular) in catalog::wirthmuller_pairs(cfg.degree)? {
        match wirthmuller_battery(&e, cfg.seed, 3) {
            Ok(r) => {
                l.eq(format!("isomorphisms, {label}"), 3, r.cases.len());
                l.eq(format!("naturality squares, {label}"), true, r.naturality_squares > 0);
            }
            Err(err) => l.push(format!("isomorphisms, {label}"), "3".into(), format!("error: {err}"), false),
        }
        if non_unimodular {
            let k = GModule::trivial(e.sub());
            let got = induce(&e, &k).and_then(|i| {
                let c = coinduce(&e, &k)?;
                module_iso_search(&i.module, &c.module, cfg.seed)
            });
            let got =
                got.map(|r| if matches!(r, IsoSearch::NotIsomorphic(_)) { "not isomorphic" } else { "isomorphic" });
            l.ok(format!("ind k vs coind k, {label}"), "not isomorphic", got);
        }
    }
    Ok(l)
}

fn transfer(cfg: &SuiteConfig) -> Result<Lines> {
    let mut l = Lines::new("transfer");
    for (label, tri) in catalog::nested_triples(cfg.degree)? {
        let g = tri.h_in_g.amb();
        let mods = [("k", GModule::trivial(g)), ("kG", GModule::regular(g)), ("k[G]", GModule::left_translation(g))];
        for (name, m) in &mods {
            let got = transitivity_images(&tri.k_in_h, &tri.h_in_g, m).map(|(a, b)| a == b);
            l.ok(format!("transitivity on {name}, {label}"), true, got);
        }
        let k_in_g = crate::hopf::subgroup::compose(&tri.k_in_h, &tri.h_in_g)?;
        for (sub, e) in [("H", &tri.h_in_g), ("K", &k_in_g)] {
            let got = naturality_squares(e, &mods[1].1, &mods[2].1).map(|n| n > 0);
            l.ok(format!("naturality kG -> k[G] for {sub}, {label}"), true, got);
        }
    }
    Ok(l)
}

fn lambda(cfg: &SuiteConfig) -> Result<Lines> {
    let mut l = Lines::new("lambda");
    for pair in catalog::subgroup_pairs(cfg.degree)? {
        let e = &pair.embedding;
        let lam = match lambda_scalar(e) {
            Ok(x) => x.is_nonzero(),
            Err(err) => {
                l.push(format!("lambda, {}", pair.label), "-".into(), format!("error: {err}"), false);
                continue;
            }
        };
        match pair.expect_lambda_nonzero {
            Some(x) => l.eq(format!("lambda, {}", pair.label), zero_or_not(x), zero_or_not(lam)),
            None => l.info(format!("lambda, {}", pair.label), zero_or_not(lam)),
        }
        if pair.unipotent {
            l.eq(format!("unipotent: lambda nonzero iff H = G, {}", pair.label), e.index() == 1, lam);
        }
        let split = g_retraction(e).map(|r| r.is_some());
        let summand = coinduce(e, &GModule::trivial(e.sub())).and_then(|c| trivial_is_summand(&c.module));
        let proj = higman_certificate(&GModule::trivial(e.amb()), std::slice::from_ref(e))
            .map(|c| c.status == HigmanStatus::Projective);
        l.ok(format!("t split injective, {}", pair.label), lam, split);
        l.ok(format!("res t split injective, {}", pair.label), true, p1_retraction(e).map(|r| r.is_some()));
        l.ok(format!("k summand of coind k, {}", pair.label), lam, summand);
        l.ok(format!("k relatively H-projective, {}", pair.label), lam, proj);
    }
    Ok(l)
}

fn random_poly(rng: &mut ChaCha8Rng, r: &PolyRing, degree: u32) -> Poly {
    let q = r.field().order();
    let mut p = Poly::new();
    for e in r.monomials_up_to(degree) {
        let c = rng.gen_range(0..q) as Elem;
        if c != 0 {
            p.insert(Mono(e), c);
        }
    }
    p
}

fn random_elem(rng: &mut ChaCha8Rng, s: &Carrier, degree: u32) -> SElem {
    match s {
        Carrier::Finite(a) => {
            SElem::Finite((0..a.dim()).map(|_| rng.gen_range(0..a.field().order()) as Elem).collect())
        }
        Carrier::Poly(r) => SElem::Poly(random_poly(rng, r, degree)),
    }
}

fn random_combination(rng: &mut ChaCha8Rng, s: &Carrier, basis: &[SElem]) -> SElem {
    let q = s.field().order();
    basis.iter().fold(s.zero(), |acc, b| s.add(&acc, &s.scale(rng.gen_range(0..q) as Elem, b)))
}

fn norm(cfg: &SuiteConfig) -> Result<Lines> {
    let mut l = Lines::new("norm");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for entry in catalog::norm_entries(cfg.degree)? {
        norm_entry(&mut l, &mut rng, &entry, cfg.samples)?;
    }
    let f2 = catalog::field(2, cfg.degree)?;
    if cfg.degree % 2 == 1 {
        let gr = catalog::grading_algebra(&f2, 3)?;
        let got = NormPlan::new(&trivial_subgroup(&gr.scheme)?, None, Transversal::First)
            .map(|_| "splits".to_string())
            .or_else(|e| match e {
                Error::ExtensionDoesNotSplit { required_degree } => Ok(format!("needs degree {required_degree}")),
                e => Err(e),
            });
        l.ok("mu_3 over F_2 without extension", "needs degree 2".to_string(), got);
    }
    functoriality(&mut l, &mut rng, cfg)?;
    Ok(l)
}

fn norm_entry(l: &mut Lines, rng: &mut ChaCha8Rng, entry: &NormEntry, samples: usize) -> Result<()> {
    let s_alg = &entry.algebra;
    let s = &s_alg.carrier;
    let g = &s_alg.scheme;
    let deg = entry.random_degree;
    let bound = deg + 1;
    let label = &entry.label;
    let n = samples;
    let ext = entry.ext.as_ref();
    let g_inv = s_alg.invariants(Some(bound))?;

    for e in &entry.subgroups {
        let sub = e.sub().name().to_string();
        let plan = NormPlan::new(e, ext, Transversal::First)?;
        let last = NormPlan::new(e, ext, Transversal::Last)?;
        let h_alg = s_alg.restrict(e)?;
        let h_inv = h_alg.invariants(Some(bound))?;
        let index = (g.order() / e.sub().order()) as u64;
        let mut pow_ok = 0;
        let mut mult_ok = 0;
        let mut trans_ok = 0;
        for _ in 0..n {
            let x = random_combination(rng, s, &g_inv);
            if plan.apply(s_alg, &x).map(|r| r.value == s.pow(&x, index)).unwrap_or(false) {
                pow_ok += 1;
            }
            let a = random_combination(rng, s, &h_inv);
            let b = random_combination(rng, s, &h_inv);
            let lhs = plan.apply(s_alg, &s.mul(&a, &b))?.value;
            let na = plan.apply(s_alg, &a)?;
            let nb = plan.apply(s_alg, &b)?;
            if lhs == s.mul(&na.value, &nb.value) {
                mult_ok += 1;
            }
            if last.apply(s_alg, &a)?.value == na.value {
                trans_ok += 1;
            }
        }
        l.eq(format!("Nm_{sub}(s) = s^index on S^G, {label}"), n, pow_ok);
        l.eq(format!("Nm_{sub} multiplicative, {label}"), n, mult_ok);
        l.eq(format!("Nm_{sub} independent of transversal, {label}"), n, trans_ok);
    }

    let one = trivial_subgroup(g)?;
    let plan = NormPlan::new(&one, ext, Transversal::First)?;
    let mut mumford_ok = 0;
    for _ in 0..n {
        let x = random_elem(rng, s, deg);
        if mumford_norm(s_alg, &x)? == plan.apply(s_alg, &x)?.value {
            mumford_ok += 1;
        }
    }
    l.eq(format!("Mumford = Nm_1, {label}"), n, mumford_ok);

    if let Some(tri) = &entry.nested {
        let outer = NormPlan::new(&tri.h_in_g, ext, Transversal::First)?;
        let inner = NormPlan::new(&tri.k_in_h, ext, Transversal::First)?;
        let k_in_g = crate::hopf::subgroup::compose(&tri.k_in_h, &tri.h_in_g)?;
        let direct = NormPlan::new(&k_in_g, ext, Transversal::First)?;
        let h_alg = s_alg.restrict(&tri.h_in_g)?;
        let k_inv = s_alg.restrict(&k_in_g)?.invariants(Some(bound))?;
        let mut ok = 0;
        for _ in 0..n {
            let x = random_combination(rng, s, &k_inv);
            let chained = outer.apply(s_alg, &inner.apply(&h_alg, &x)?.value)?.value;
            if chained == direct.apply(s_alg, &x)?.value {
                ok += 1;
            }
        }
        l.eq(format!("Nm_H Nm_K = Nm_K, {label}"), n, ok);
    }

    if is_infinitesimal(g) {
        let ht = height_of(g)?;
        let p = g.field().p() as u64;
        let mut ht_ok = 0;
        let mut ord_ok = 0;
        for _ in 0..n {
            let x = random_elem(rng, s, deg);
            if s_alg.is_invariant(&s.pow(&x, p.pow(ht))) {
                ht_ok += 1;
            }
            if s_alg.is_invariant(&s.pow(&x, g.order() as u64)) {
                ord_ok += 1;
            }
        }
        l.eq(format!("s^(p^height) invariant, {label}"), n, ht_ok);
        l.eq(format!("s^|G| invariant, {label}"), n, ord_ok);
        for e in &entry.subgroups {
            let h_inv = s_alg.restrict(e)?.invariants(Some(bound))?;
            let index = (g.order() / e.sub().order()) as u64;
            let mut ok = 0;
            for _ in 0..n {
                let x = random_combination(rng, s, &h_inv);
                if s_alg.is_invariant(&s.pow(&x, index)) {
                    ok += 1;
                }
            }
            l.eq(format!("s^|G:{}| invariant for s in S^{0}, {label}", e.sub().name()), n, ok);
        }
    }

    if entry.ext.is_none() && g.field().degree() == 1 {
        let big = Field::new(g.field().p(), 2, None)?;
        let bc = s_alg.base_change(&big)?;
        let e_big = trivial_subgroup(&bc.scheme)?;
        let plan_big = NormPlan::new(&e_big, None, Transversal::First)?;
        let m = n.min(10);
        let mut ok = 0;
        for _ in 0..m {
            let x = random_elem(rng, s, deg);
            if plan_big.apply(&bc, &x)?.value == plan.apply(s_alg, &x)?.value {
                ok += 1;
            }
        }
        l.eq(format!("Nm_1 commutes with base change, {label}"), m, ok);
    }
    Ok(())
}

/// `k[x_1..x_p] → k[x_1..x_p]/(x_i^2)` for `C_p` permuting the variables.
fn functoriality(l: &mut Lines, rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Result<()> {
    for p in [2u32, 3] {
        let f = catalog::field(p, cfg.degree)?;
        let cp = std::sync::Arc::new(builtin::constant(&f, &GroupTable::cyclic(p as usize))?);
        let np = p as usize;
        let perm: Vec<Vec<usize>> = (0..np).map(|g| (0..np).map(|i| (i + g) % np).collect()).collect();
        let src = catalog::permutation_algebra(cp.clone(), &perm)?;
        let Carrier::Poly(r) = &src.carrier else { unreachable!() };
        let q = PolyRing::new(f.clone(), r.vars().to_vec(), Some(vec![2; np]))?;
        let reduce = |x: &SElem| SElem::Poly(CommRing::mul(&q, &q.one(), x.as_poly()));
        let images = src.images.iter().map(|v| v.iter().map(reduce).collect()).collect();
        let dst = ComoduleAlgebra::new("k[x]/(x_i^2)", cp.clone(), Carrier::Poly(q.clone()), images)?;
        let one = trivial_subgroup(&cp)?;
        let plan = NormPlan::new(&one, None, Transversal::First)?;
        let n = cfg.samples;
        let mut ok = 0;
        for _ in 0..n {
            let x = SElem::Poly(random_poly(rng, r, 1));
            if reduce(&plan.apply(&src, &x)?.value) == plan.apply(&dst, &reduce(&x))?.value {
                ok += 1;
            }
        }
        l.eq(format!("Nm_1 commutes with k[x] -> k[x]/(x_i^2), C{p}"), n, ok);
    }
    Ok(())
}

fn fieldnorm(_cfg: &SuiteConfig) -> Result<Lines> {
    let mut l = Lines::new("fieldnorm");
    for (label, alg, exponent) in [
        ("F_4 under C2 by Frobenius", catalog::gf4_frobenius()?, 1usize),
        ("F_4 under C2 x alpha_2", catalog::gf4_non_faithful()?, 2),
    ] {
        for s in [vec![1, 0], vec![0, 1], vec![1, 1]] {
            let sname = alg.carrier.format(&SElem::Finite(s.clone()));
            match field_norm_compare(&alg, &SElem::Finite(s), None) {
                Ok(r) => {
                    l.eq(format!("exponent, {label}, s = {sname}"), exponent, r.exponent);
                    l.eq(format!("Nm = N^exponent = Mumford, {label}, s = {sname}"), true, r.consistent);
                    l.eq(format!("N(s) = 1, {label}, s = {sname}"), "1".to_string(), alg.carrier.format(&r.field_norm));
                }
                Err(e) => {
                    l.push(format!("field norm, {label}, s = {sname}"), "ok".into(), format!("error: {e}"), false)
                }
            }
        }
    }
    Ok(l)
}

/// `dim Ext^n_{C_p}(k, M)` from the periodic resolution with maps `g − 1` and
/// `N = Σ g^i`: the cochains are `M` in every degree.
fn periodic_dim(m: &GModule, gen: &[Elem], n: usize) -> usize {
    let f = m.field();
    let d = m.dim();
    let gm = m.act(gen);
    let minus = gm.sub(&Matrix::identity(d), f);
    let p = f.p() as usize;
    let mut norm = Matrix::zeros(d, d);
    let mut pow = Matrix::identity(d);
    for _ in 0..p {
        norm = norm.add(&pow, f);
        pow = pow.mul(&gm, f);
    }
    // d^n: C^n → C^{n+1} is g − 1 for even n, N for odd n.
    let dn = |k: usize| if k.is_multiple_of(2) { &minus } else { &norm };
    let kernel = d - crate::scalars::rank(dn(n), f);
    let image = if n == 0 { 0 } else { crate::scalars::rank(dn(n - 1), f) };
    kernel - image
}

fn ext(cfg: &SuiteConfig) -> Result<Lines> {
    let mut l = Lines::new("ext");
    let cap = DEFAULT_SIZE_CAP;
    for p in [2u32, 3] {
        let f = catalog::field(p, cfg.degree)?;
        let g = std::sync::Arc::new(builtin::constant(&f, &GroupTable::cyclic(p as usize))?);
        let gen = unit_vector(g.order(), 1);
        let k = GModule::trivial(&g);
        let reg = GModule::regular(&g);
        for (mname, m) in [("k", &k), ("kC_p", &reg)] {
            for n in 0..=3 {
                l.ok(format!("dim Ext^{n}(k, {mname}), C{p}"), periodic_dim(m, &gen, n), ext_dim(&k, m, n, cap));
            }
        }
        let one = trivial_subgroup(&g)?;
        for n in 0..=2 {
            match transfer_ext(&one, &k, &k, n, cap) {
                Ok(t) => {
                    l.eq(format!("Tr commutes with d, n={n}, 1 <= C{p}"), true, t.commutes);
                    l.eq(format!("Tr o res = 0, n={n}, 1 <= C{p}"), true, t.tr_res.is_some_and(|m| m.is_zero()));
                }
                Err(e) => l.push(format!("transfer on Ext^{n}, 1 <= C{p}"), "ok".into(), format!("error: {e}"), false),
            }
        }
        let a = std::sync::Arc::new(builtin::alpha_p(&f)?);
        let ka = GModule::trivial(&a);
        l.ok(format!("dim Ext^1(k, k), alpha_{p}"), 1, ext_dim(&ka, &ka, 1, cap));
    }
    let f2 = catalog::field(2, cfg.degree)?;
    let t = GroupTable::cyclic(2).direct_product(&GroupTable::cyclic(2));
    let v4 = std::sync::Arc::new(builtin::constant(&f2, &t)?);
    let pts = |ix: &[usize]| ix.iter().map(|&i| unit_vector(4, i)).collect::<Vec<_>>();
    let tri = nested(&v4, &pts(&[1, 3]), &pts(&[1, 2, 3]), ("H", "K"))?;
    let k = GModule::trivial(&v4);
    let got = bar_resolution(&k, 2, cap)
        .and_then(|bar| transfer_ext_chain(&bar, &tri.k_in_h, &tri.h_in_g, &k, 1))
        .map(|(a, b)| a == b);
    l.ok("Ext^1 transfer transitivity, 1 <= H <= C2 x C2", true, got);
    Ok(l)
}

//! The verification suite. Nine criteria, each a list of checks against
//! the bundled reference data plus a wall-clock limit.

use crate::catalog::{validate_surface, Catalog, FieldTag, ReferenceKind, SurfaceDescriptor};
use crate::complexone::{hj_eval_ints, HjValue};
use crate::contract::{bundled_targets, run_contraction};
use crate::curves::{conic_bundles_with_unique_reducible_fiber, type_iv_generator_divisors, Support};
use crate::generators::{
    degree_matrix, graded_basis, match_reference_matrix, minimal_generators, reference_matrix, Basis, GeneratorKind,
};
use crate::linalg::determinant;
use crate::picard::{gram_matrix, DivisorClass};
use crate::relations::{compute_relations, reference_homogeneity, COX_DIMENSION};
use coxsurf_algebra::groebner::saturate_by_variables;
use coxsurf_algebra::poly::Exp;
use coxsurf_algebra::{
    groebner_basis, normal_form, Budget, Cyclotomic3, Field, Ideal, Monomial, MonomialOrder, Poly, PolyRing, Rational,
    RingRef,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;
use std::ops::RangeInclusive;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Skips the Groebner stages of X_6321.
    Fast,
    Full,
}

impl std::str::FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fast" => Ok(Suite::Fast),
            "full" => Ok(Suite::Full),
            _ => Err(format!("unknown suite {s}, expected fast or full")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub budget: Budget,
    pub jobs: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { suite: Suite::Fast, budget: Budget::default(), jobs: 0, seed: 0x5eed }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub elapsed_ms: f64,
    pub limit_ms: u64,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub criteria: Vec<CriterionReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.criteria {
            out.push_str(&format!(
                "{} {} {} ({:.1} ms, limit {} ms)\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.id,
                c.title,
                c.elapsed_ms,
                c.limit_ms
            ));
            for f in &c.failures {
                out.push_str(&format!("    failure: {f}\n"));
            }
            for n in &c.notes {
                out.push_str(&format!("    note: {n}\n"));
            }
        }
        let passed = self.criteria.iter().filter(|c| c.passed).count();
        out.push_str(&format!("{passed}/{} criteria passed\n", self.criteria.len()));
        out
    }
}

#[derive(Default)]
struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(msg());
        }
    }
}

struct Ctx<'a> {
    catalog: &'a Catalog,
    config: &'a VerifyConfig,
    pool: rayon::ThreadPool,
}

type CriterionFn = fn(&Ctx) -> Outcome;

pub const CRITERIA: [(usize, &str); 9] = [
    (1, "continued fraction identities"),
    (2, "catalog validation"),
    (3, "generator counts and degree matrices"),
    (4, "conic bundles and type (iv) divisors"),
    (5, "X_411 pipeline"),
    (6, "relation membership and dimension"),
    (7, "homogeneity sweep"),
    (8, "contractions"),
    (9, "property suites"),
];

fn limit_ms(id: usize, suite: Suite) -> u64 {
    match (id, suite) {
        (1, _) => 1,
        (2, _) => 1_000,
        (3, _) | (7, _) => 5_000,
        (4, _) => 10_000,
        (5, _) => 30_000,
        (6, Suite::Fast) => 300_000,
        (6, Suite::Full) => 1_200_000,
        _ => 60_000,
    }
}

fn criterion_fn(id: usize) -> CriterionFn {
    match id {
        1 => continued_fractions,
        2 => catalog_validation,
        3 => generator_tables,
        4 => conic_tables,
        5 => x411_pipeline,
        6 => membership,
        7 => homogeneity_sweep,
        8 => contractions,
        _ => properties,
    }
}

/// Runs the criteria in `ids` (all when empty).
pub fn run_suite(catalog: &Catalog, config: &VerifyConfig, ids: &[usize]) -> VerifyReport {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(config.jobs).build().expect("thread pool");
    let ctx = Ctx { catalog, config, pool };
    let mut criteria = Vec::new();
    for (id, title) in CRITERIA {
        if !ids.is_empty() && !ids.contains(&id) {
            continue;
        }
        let t = Instant::now();
        let out = criterion_fn(id)(&ctx);
        let elapsed_ms = t.elapsed().as_secs_f64() * 1e3;
        let limit = limit_ms(id, config.suite);
        let mut failures = out.failures;
        if elapsed_ms > limit as f64 {
            failures.push(format!("took {elapsed_ms:.1} ms, limit {limit} ms"));
        }
        criteria.push(CriterionReport {
            id,
            title,
            passed: failures.is_empty(),
            elapsed_ms,
            limit_ms: limit,
            failures,
            notes: out.notes,
        });
    }
    VerifyReport { suite: config.suite, criteria }
}

fn zero() -> Option<HjValue> {
    Some(HjValue::Value(Rational::from(0)))
}

fn continued_fractions(_: &Ctx) -> Outcome {
    let mut out = Outcome::default();
    for q in [&[2, 2, 2, 2, 2, 1, 6][..], &[2, 1, 2], &[2, 2, 1, 3]] {
        out.check(hj_eval_ints(q) == zero(), || format!("{q:?} is not 0"));
    }
    out
}

fn catalog_validation(ctx: &Ctx) -> Outcome {
    let mut out = Outcome::default();
    out.check(ctx.catalog.surfaces().len() == 16, || format!("{} surfaces in the catalog", ctx.catalog.surfaces().len()));
    for s in ctx.catalog.surfaces() {
        let r = validate_surface(s);
        for f in r.failures() {
            out.failures.push(format!("{}: {f}", s.name));
        }
    }
    out
}

fn generator_tables(ctx: &Ctx) -> Outcome {
    let mut out = Outcome::default();
    for s in ctx.catalog.surfaces() {
        let g = match minimal_generators(s) {
            Ok(g) => g,
            Err(e) => {
                out.failures.push(format!("{}: {e}", s.name));
                continue;
            }
        };
        out.check(g.len() == s.reference.len(), || {
            format!("{}: {} generators, the reference has {}", s.name, g.len(), s.reference.len())
        });
        let m = match degree_matrix(&g, Basis::E) {
            Ok(m) => m,
            Err(e) => {
                out.failures.push(format!("{}: {e}", s.name));
                continue;
            }
        };
        if let Err(e) = match_reference_matrix(&m, &reference_matrix(s)) {
            out.failures.push(format!("{}: degree matrix: {e}", s.name));
        }
    }
    out
}

/// The supports table: the elliptic fiber `F` or a reducible conic.
pub const BUNDLED_SUPPORTS: &str = include_str!("../data/conics.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SupportRow {
    Fiber,
    Conic(Support),
}

pub fn parse_supports(text: &str) -> Result<Vec<(String, SupportRow)>, String> {
    let mut rows = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let (name, rhs) = line.split_once(':').ok_or_else(|| format!("bad line {line}"))?;
        let rhs = rhs.trim();
        if rhs == "F" {
            rows.push((name.trim().to_string(), SupportRow::Fiber));
            continue;
        }
        let mut terms = Vec::new();
        for t in rhs.split('+').map(str::trim) {
            let (m, l) = match t.split_once('*') {
                Some((m, l)) => (m.trim().parse::<i64>().map_err(|_| format!("bad term {t}"))?, l.trim()),
                None => (1, t),
            };
            terms.push((l.to_string(), m));
        }
        terms.sort();
        rows.push((name.trim().to_string(), SupportRow::Conic(Support(terms))));
    }
    Ok(rows)
}

pub const TYPE_IV_CENSUS: [(&str, usize); 3] = [("X_22", 1), ("X_211", 1), ("X_9111", 3)];

fn conic_tables(ctx: &Ctx) -> Outcome {
    let mut out = Outcome::default();
    let rows = match parse_supports(BUNDLED_SUPPORTS) {
        Ok(r) => r,
        Err(e) => {
            out.failures.push(e);
            return out;
        }
    };
    for s in ctx.catalog.surfaces() {
        let bundles = conic_bundles_with_unique_reducible_fiber(s);
        let want: Vec<&Support> = rows
            .iter()
            .filter(|r| r.0 == s.name)
            .filter_map(|r| match &r.1 { SupportRow::Conic(x) => Some(x), SupportRow::Fiber => None })
            .collect();
        out.check(bundles.len() == want.len(), || {
            format!("{}: {} conic bundles with one reducible member, expected {}", s.name, bundles.len(), want.len())
        });
        for w in &want {
            let found = bundles.iter().any(|b| b.reducible_fibers.iter().any(|f| f == *w));
            out.check(found, || format!("{}: no conic bundle with member {w}", s.name));
        }
        let fiber = rows.iter().any(|r| r.0 == s.name && r.1 == SupportRow::Fiber);
        out.check(fiber == (s.reducible_fibers().len() == 1), || format!("{}: fiber generator mismatch", s.name));
        if let Ok(g) = minimal_generators(s) {
            let has = g.entries.iter().any(|e| e.kind == GeneratorKind::EllipticFiber);
            out.check(has == fiber, || format!("{}: fiber generator present: {has}", s.name));
            let mut computed: Vec<DivisorClass> =
                g.entries.iter().filter(|e| e.kind == GeneratorKind::ConicFiber).map(|e| e.degree).collect();
            let mut reference: Vec<DivisorClass> =
                s.reference.iter().filter(|r| r.kind == ReferenceKind::Conic).map(|r| r.degree).collect();
            computed.sort();
            reference.sort();
            out.check(computed == reference, || format!("{}: conic generator degrees differ from the reference", s.name));
        }
        let n = type_iv_generator_divisors(s).len();
        let expect = TYPE_IV_CENSUS.iter().find(|c| c.0 == s.name).map_or(0, |c| c.1);
        out.check(n == expect, || format!("{}: {n} type (iv) divisors, expected {expect}", s.name));
    }
    out
}

const X411_KERNEL: [&str; 3] = ["T1*T2 + T3^2 - T4", "T1*T4 + T2^3 - T6", "T1*T3^2 + T2^3 - T5"];

fn x411_pipeline(ctx: &Ctx) -> Outcome {
    let mut out = Outcome::default();
    let budget = ctx.config.budget;
    let s = match ctx.catalog.get("X_411") {
        Ok(s) => s,
        Err(e) => {
            out.failures.push(e.to_string());
            return out;
        }
    };
    let r = match compute_relations::<Rational>(s, budget) {
        Ok(r) => r,
        Err(e) => {
            out.failures.push(e.to_string());
            return out;
        }
    };
    let check = || -> Result<Vec<String>, Box<dyn std::error::Error>> {
        let mut failures = Vec::new();
        let t = r.kernel[0].ring().clone();
        let want = X411_KERNEL.iter().map(|x| Poly::parse(&t, x)).collect::<Result<Vec<Poly<Rational>>, _>>()?;
        if !Ideal::new(&t, r.kernel.clone())?.equals(&Ideal::new(&t, want)?, budget)? {
            failures.push("kernel differs from the three reference generators".into());
        }
        let rels = s.reference_relations::<Rational>(&r.ring)?;
        if !Ideal::new(&r.ring, r.generators.clone())?.equals(&Ideal::new(&r.ring, rels)?, budget)? {
            failures.push("J' differs from the reference ideal".into());
        }
        if r.dimension != COX_DIMENSION {
            failures.push(format!("dim J' = {}", r.dimension));
        }
        Ok(failures)
    };
    match check() {
        Ok(f) => out.failures.extend(f),
        Err(e) => out.failures.push(e.to_string()),
    }
    out.notes.push(format!("{} minimal generators, {} basis elements", r.generators.len(), r.basis.len()));
    out
}

pub const MEMBERSHIP_FAST: [&str; 10] =
    ["X_141", "X_222", "X_5511", "X_431", "X_44", "X_33", "X_321", "X_22", "X_211", "X_11(a)"];

pub fn membership_surfaces(suite: Suite) -> Vec<&'static str> {
    let mut v = MEMBERSHIP_FAST.to_vec();
    if suite == Suite::Full {
        v.push("X_6321");
    }
    v
}

/// Membership of every reference relation in the computed ideal,
/// homogeneity and dimension, for one surface.
fn membership_one(s: &SurfaceDescriptor, budget: Budget) -> (Vec<String>, String) {
    let t = Instant::now();
    let mut failures = Vec::new();
    let r = match compute_relations::<Rational>(s, budget) {
        Ok(r) => r,
        Err(e) => return (vec![format!("{}: {e}", s.name)], String::new()),
    };
    let rels = match s.reference_relations::<Rational>(&r.ring) {
        Ok(x) => x,
        Err(e) => return (vec![format!("{}: {e}", s.name)], String::new()),
    };
    let mut members = 0;
    for f in &rels {
        match r.contains(f, budget) {
            Ok(true) => members += 1,
            Ok(false) => failures.push(format!("{}: {f} is not in J'", s.name)),
            Err(e) => failures.push(format!("{}: {e}", s.name)),
        }
    }
    if !matches!(reference_homogeneity::<Rational>(s), Ok(true)) {
        failures.push(format!("{}: reference relations are not homogeneous", s.name));
    }
    let degrees = s.reference_degrees();
    if !r.generators.iter().all(|g| g.is_homogeneous(&degrees)) {
        failures.push(format!("{}: computed relations are not homogeneous", s.name));
    }
    if r.dimension != COX_DIMENSION {
        failures.push(format!("{}: dim J' = {}", s.name, r.dimension));
    }
    let note = format!(
        "{}: {members}/{} relations in J', dim {}, {} generators, {:.1} ms",
        s.name,
        rels.len(),
        r.dimension,
        r.generators.len(),
        t.elapsed().as_secs_f64() * 1e3
    );
    (failures, note)
}

fn membership(ctx: &Ctx) -> Outcome {
    let mut out = Outcome::default();
    let names = membership_surfaces(ctx.config.suite);
    let surfaces: Vec<Result<&SurfaceDescriptor, String>> =
        names.iter().map(|n| ctx.catalog.get(n).map_err(|e| e.to_string())).collect();
    let budget = ctx.config.budget;
    let results: Vec<(Vec<String>, String)> = ctx.pool.install(|| {
        surfaces
            .par_iter()
            .map(|s| match s {
                Ok(s) => membership_one(s, budget),
                Err(e) => (vec![e.clone()], String::new()),
            })
            .collect()
    });
    for (f, n) in results {
        out.failures.extend(f);
        if !n.is_empty() {
            out.notes.push(n);
        }
    }
    if ctx.config.suite == Suite::Full {
        if let Ok(s) = ctx.catalog.get("X_6321") {
            out.check(s.relations.len() == 16, || format!("X_6321 has {} reference relations", s.relations.len()));
        }
    }
    out
}

fn homogeneity_sweep(ctx: &Ctx) -> Outcome {
    let mut out = Outcome::default();
    let mut count = 0;
    for s in ctx.catalog.surfaces().iter().filter(|s| !s.relations.is_empty()) {
        count += 1;
        let r = match s.field {
            FieldTag::Rational => reference_homogeneity::<Rational>(s),
            FieldTag::Cyclotomic3 => reference_homogeneity::<Cyclotomic3>(s),
        };
        match r {
            Ok(true) => {}
            Ok(false) => out.failures.push(format!("{}: inhomogeneous relation", s.name)),
            Err(e) => out.failures.push(format!("{}: {e}", s.name)),
        }
    }
    out.check(count == 13, || format!("{count} surfaces carry relations, expected 13"));
    out
}

fn contractions(ctx: &Ctx) -> Outcome {
    let mut out = Outcome::default();
    for t in bundled_targets() {
        let s = match ctx.catalog.get(&t.surface) {
            Ok(s) => s,
            Err(e) => {
                out.failures.push(e.to_string());
                continue;
            }
        };
        match run_contraction::<Rational>(s, &t, ctx.config.budget) {
            Ok(o) => {
                out.check(o.grading_matches, || format!("{}: grading {}", t.name, o.presentation.grading.describe()));
                out.check(o.ideal_matches, || format!("{}: ideal differs", t.name));
                let flips = if o.sign_changes.is_empty() { String::new() } else { format!(", sign changes {:?}", o.sign_changes) };
                out.notes.push(format!(
                    "{}: {} variables, {} relations, grading {}{flips}",
                    t.name,
                    o.presentation.variables().len(),
                    o.presentation.relations.len(),
                    o.presentation.grading.describe()
                ));
            }
            Err(e) => out.failures.push(format!("{}: {e}", t.name)),
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Property checks

/// `lcm/lm(f) f/lc(f) - lcm/lm(g) g/lc(g)`.
pub fn s_polynomial<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Poly<F> {
    let (Some(a), Some(b)) = (f.leading_monomial(), g.leading_monomial()) else { return Poly::zero(f.ring()) };
    let l = a.lcm(b);
    let ca = f.leading_coefficient().expect("nonzero").inv().expect("nonzero");
    let cb = g.leading_coefficient().expect("nonzero").inv().expect("nonzero");
    f.mul_term(&l.div(a).expect("lcm"), &ca).sub(&g.mul_term(&l.div(b).expect("lcm"), &cb))
}

/// Every S-polynomial of the basis reduces to zero.
pub fn s_closed<F: Field>(basis: &[Poly<F>], budget: Budget) -> Result<bool, coxsurf_algebra::GroebnerError> {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if !normal_form(&s_polynomial(&basis[i], &basis[j]), basis, budget)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All monomials of total degree `d` in `n` variables.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn go(n: usize, i: usize, left: u32, cur: &mut Vec<Exp>, out: &mut Vec<Monomial>) {
        if i + 1 == n {
            cur[i] = left as Exp;
            out.push(Monomial::from_exps(cur));
            return;
        }
        for e in 0..=left {
            cur[i] = e as Exp;
            go(n, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    go(n, 0, d, &mut vec![0; n], &mut out);
    out
}

/// Ideal membership for a homogeneous `f` and homogeneous generators, by
/// linear algebra in the degree of `f`: `f` lies in the ideal iff it is in
/// the span of the products `m g` of that degree.
pub fn span_membership<F: Field>(f: &Poly<F>, gens: &[Poly<F>]) -> Option<bool> {
    let ring = f.ring();
    let Some(d) = f.total_degree() else { return Some(true) };
    if f.terms().iter().any(|(m, _)| m.degree() != d) {
        return None;
    }
    let mut products: Vec<Poly<F>> = Vec::new();
    for g in gens {
        let e = g.total_degree()?;
        if g.terms().iter().any(|(m, _)| m.degree() != e) {
            return None;
        }
        if e <= d {
            for m in monomials_of_degree(ring.nvars(), d - e) {
                products.push(g.mul_term(&m, &F::one()));
            }
        }
    }
    let cols: Vec<Monomial> = monomials_of_degree(ring.nvars(), d);
    let index: HashMap<&Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let dense = |p: &Poly<F>| {
        let mut v = vec![F::zero(); cols.len()];
        for (m, c) in p.terms() {
            v[index[m]] = c.clone();
        }
        v
    };
    // row echelon form keyed by pivot column
    let mut pivots: Vec<(usize, Vec<F>)> = Vec::new();
    let reduce = |mut v: Vec<F>, pivots: &[(usize, Vec<F>)]| {
        for (p, row) in pivots {
            if !v[*p].is_zero() {
                let c = v[*p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x = x.sub(&c.mul(r));
                }
            }
        }
        v
    };
    for p in &products {
        let v = reduce(dense(p), &pivots);
        if let Some(k) = v.iter().position(|x| !x.is_zero()) {
            let inv = v[k].inv().expect("nonzero");
            let row: Vec<F> = v.iter().map(|x| x.mul(&inv)).collect();
            for (_, other) in pivots.iter_mut() {
                if !other[k].is_zero() {
                    let c = other[k].clone();
                    for (x, r) in other.iter_mut().zip(&row) {
                        *x = x.sub(&c.mul(r));
                    }
                }
            }
            pivots.push((k, row));
        }
    }
    Some(reduce(dense(f), &pivots).iter().all(|x| x.is_zero()))
}

/// Random homogeneous polynomial with degree and term count drawn from
/// the ranges.
pub fn random_homogeneous(
    ring: &RingRef,
    rng: &mut impl Rng,
    degree: RangeInclusive<u32>,
    terms: RangeInclusive<usize>,
) -> Poly<Rational> {
    let degree = rng.gen_range(degree);
    let terms = rng.gen_range(terms);
    let all = monomials_of_degree(ring.nvars(), degree);
    let t = (0..terms)
        .map(|_| {
            let m = all[rng.gen_range(0..all.len())].clone();
            let mut c = rng.gen_range(-3i64..=3);
            if c == 0 {
                c = 1;
            }
            (m, Rational::from(c))
        })
        .collect();
    Poly::from_terms(ring, t)
}

fn random_ring(rng: &mut impl Rng, order: MonomialOrder) -> RingRef {
    let n = rng.gen_range(1..=3);
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    PolyRing::new(&names, order)
}

/// Groebner membership against the linear algebra oracle.
pub fn membership_case(rng: &mut impl Rng, budget: Budget) -> Result<(), String> {
    let ring = random_ring(rng, MonomialOrder::GrevLex);
    let k = rng.gen_range(1..=2);
    let gens: Vec<Poly<Rational>> = (0..k)
        .map(|_| random_homogeneous(&ring, rng, 1..=2, 1..=3))
        .filter(|g| !g.is_zero())
        .collect();
    if gens.is_empty() {
        return Ok(());
    }
    let d = rng.gen_range(2..=4);
    let f = if rng.gen_bool(0.5) {
        let mut f = Poly::zero(&ring);
        for g in &gens {
            let e = g.total_degree().unwrap_or(0);
            if e <= d {
                f = f.add(&g.mul(&random_homogeneous(&ring, rng, d - e..=d - e, 2..=2)));
            }
        }
        f
    } else {
        random_homogeneous(&ring, rng, d..=d, 1..=4)
    };
    let ideal = Ideal::new(&ring, gens.clone()).map_err(|e| e.to_string())?;
    let gb = ideal.contains(&f, budget).map_err(|e| e.to_string())?;
    let oracle = span_membership(&f, &gens).ok_or("inhomogeneous input")?;
    if gb != oracle {
        let g: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
        return Err(format!("{f} in ({}) : groebner {gb}, linear algebra {oracle}", g.join(", ")));
    }
    Ok(())
}

/// Saturating twice changes nothing, and the variable fast path agrees
/// with the general elimination.
pub fn saturation_case(rng: &mut impl Rng, budget: Budget) -> Result<(), String> {
    let ring = random_ring(rng, MonomialOrder::GrevLex);
    let gens: Vec<Poly<Rational>> = (0..rng.gen_range(1..=2))
        .map(|_| random_homogeneous(&ring, rng, 1..=3, 1..=3))
        .filter(|g| !g.is_zero())
        .collect();
    if gens.is_empty() {
        return Ok(());
    }
    let v = rng.gen_range(0..ring.nvars());
    let x = Poly::var(&ring, v);
    let err = |e: coxsurf_algebra::GroebnerError| e.to_string();
    let ideal = Ideal::new(&ring, gens.clone()).map_err(err)?;
    let once = ideal.saturate(&x, budget).map_err(err)?;
    let twice = once.saturate(&x, budget).map_err(err)?;
    if !once.equals(&twice, budget).map_err(err)? {
        return Err(format!("saturation by x{v} is not idempotent"));
    }
    let weights = vec![1; ring.nvars()];
    let fast = saturate_by_variables(&gens, &[v], &weights, budget).map_err(err)?;
    let fast = Ideal::new(&ring, fast).map_err(err)?;
    if !fast.equals(&once, budget).map_err(err)? {
        return Err(format!("saturation by x{v}: variable path differs"));
    }
    Ok(())
}

/// `T_i -> s_i` respects sums and products.
pub fn substitution_case(rng: &mut impl Rng) -> Result<(), String> {
    let src = random_ring(rng, MonomialOrder::GrevLex);
    let dst = random_ring(rng, MonomialOrder::Lex);
    let images: Vec<Poly<Rational>> =
        (0..src.nvars()).map(|_| random_homogeneous(&dst, rng, 0..=2, 2..=2)).collect();
    let a = random_homogeneous(&src, rng, 0..=2, 3..=3);
    let b = random_homogeneous(&src, rng, 0..=2, 3..=3);
    let phi = |p: &Poly<Rational>| p.substitute(&dst, &images).map_err(|e| e.to_string());
    if phi(&a.mul(&b))? != phi(&a)?.mul(&phi(&b)?) {
        return Err(format!("product: {a} * {b}"));
    }
    if phi(&a.add(&b))? != phi(&a)?.add(&phi(&b)?) {
        return Err(format!("sum: {a} + {b}"));
    }
    Ok(())
}

fn properties(ctx: &Ctx) -> Outcome {
    let mut out = Outcome::default();
    let budget = ctx.config.budget;
    let mut names = vec!["X_411"];
    names.extend(membership_surfaces(ctx.config.suite));
    let closed: Vec<(String, Result<(bool, usize), String>)> = ctx.pool.install(|| {
        names
            .par_iter()
            .map(|n| {
                let r = ctx
                    .catalog
                    .get(n)
                    .map_err(|e| e.to_string())
                    .and_then(|s| compute_relations::<Rational>(s, budget).map_err(|e| e.to_string()))
                    .and_then(|r| s_closed(&r.basis, budget).map(|c| (c, r.basis.len())).map_err(|e| e.to_string()));
                (n.to_string(), r)
            })
            .collect()
    });
    let mut pairs = 0;
    for (n, r) in closed {
        match r {
            Ok((true, len)) => pairs += len * len.saturating_sub(1) / 2,
            Ok((false, _)) => out.failures.push(format!("{n}: basis of J' is not closed under S-polynomials")),
            Err(e) => out.failures.push(format!("{n}: {e}")),
        }
    }
    out.notes.push(format!("{pairs} S-polynomials reduce to zero"));

    let mut rng = ChaCha8Rng::seed_from_u64(ctx.config.seed);
    let mut run = |label: &str, cases: usize, f: &mut dyn FnMut(&mut ChaCha8Rng) -> Result<(), String>| {
        let mut bad = 0;
        for _ in 0..cases {
            if let Err(e) = f(&mut rng) {
                bad += 1;
                out.failures.push(format!("{label}: {e}"));
            }
        }
        out.notes.push(format!("{label}: {}/{cases} cases", cases - bad));
    };
    run("membership oracle", 100, &mut |r| membership_case(r, budget));
    run("random bases closed", 50, &mut |r| {
        let ring = random_ring(r, MonomialOrder::GrevLex);
        let gens: Vec<Poly<Rational>> = (0..3).map(|_| random_homogeneous(&ring, r, 1..=3, 3..=3)).collect();
        let gb = groebner_basis(&gens, budget).map_err(|e| e.to_string())?;
        if s_closed(&gb, budget).map_err(|e| e.to_string())? { Ok(()) } else { Err("basis not closed".into()) }
    });
    run("saturation idempotence", 30, &mut |r| saturation_case(r, budget));
    run("substitution homomorphism", 100, &mut substitution_case);

    let gram = gram_matrix();
    out.check(determinant(&gram).abs() == 1, || "intersection form is not unimodular".into());
    for s in ctx.catalog.surfaces() {
        match minimal_generators(s) {
            Ok(g) => {
                let b = graded_basis(&g);
                out.check(determinant(&b).abs() == 1, || format!("{}: graded basis is not unimodular", s.name));
            }
            Err(e) => out.failures.push(format!("{}: {e}", s.name)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(3, 4).len(), 15);
        assert_eq!(monomials_of_degree(1, 3).len(), 1);
        assert_eq!(monomials_of_degree(2, 0).len(), 1);
    }

    #[test]
    fn oracle_small() {
        let r = PolyRing::new(&["x", "y"], MonomialOrder::GrevLex);
        let p = |s: &str| Poly::<Rational>::parse(&r, s).unwrap();
        assert_eq!(span_membership(&p("x^2*y - y^3"), &[p("x^2 - y^2")]), Some(true));
        assert_eq!(span_membership(&p("x*y^2"), &[p("x^2 - y^2")]), Some(false));
        assert_eq!(span_membership(&p("x + 1"), &[p("x")]), None);
    }

    #[test]
    fn supports_parse() {
        let rows = parse_supports(BUNDLED_SUPPORTS).unwrap();
        assert_eq!(rows.iter().filter(|r| r.1 == SupportRow::Fiber).count(), 4);
        assert_eq!(rows.len(), 18);
        assert!(parse_supports("X_22 2*P0").is_err());
    }

    #[test]
    fn s_polynomial_cancels_leading_terms() {
        let r = PolyRing::new(&["x", "y"], MonomialOrder::Lex);
        let p = |s: &str| Poly::<Rational>::parse(&r, s).unwrap();
        assert_eq!(s_polynomial(&p("x*y - 1"), &p("x^2 + y")), p("-x - y^2"));
    }
}

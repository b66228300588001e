use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use super::ast::*;
use super::parser::{parse_script, ParseError};
use crate::algebra::{AlgebraError, Element, GradedAlgebra};
use crate::bundles::{external_product, pullback, stabilize, tangent_bundle, whitney_sum, Bundle, BundleError};
use crate::expr::Expr;
use crate::lowdim::{classify_s1s2, classify_s1s3, s4_invariants, s4_realizable, LowDimBundle, LowDimError};
use crate::obstruction::{
    betti_obstruction, check_add_norm_bundle, check_flat_product, check_pdual, check_polynomial_q_family,
    find_obstruction_with, realize, same_in_finite_cover, ObstructionCertificate, ObstructionError, RealizeTargets,
    SearchOptions, VerifyError, DEFAULT_BUDGET,
};
use crate::poly::{ClassPolynomial, PolyError};
use crate::rational::Q;
use crate::spaces::{
    degree_map_to_sphere, inclusion_core, kunneth_product, projection_to_core, torus_cover_map, ManualData, Space,
    SpaceError, SpaceMap, TangentData,
};
use crate::sphere_bundles::{gysin_betti, sphere_euler_check, sphere_pontrjagin_check, SphereError};

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub budget: usize,
    /// Cover multiplier for `realize` statements that do not give one.
    pub cover_m: u64,
    /// Drop generator and note lines from records.
    pub quiet: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { budget: DEFAULT_BUDGET, cover_m: 1, quiet: false }
    }
}

#[derive(Debug, Error)]
pub enum RuntimeError {
    #[error("unknown name `{0}`")]
    Unknown(String),
    #[error("`{name}` is a {found}, expected a {expected}")]
    WrongKind { name: String, found: &'static str, expected: &'static str },
    #[error("`{0}` is already defined")]
    Redefined(String),
    #[error("`{atom}` is not a class of {space} (basis: {basis})")]
    UnknownGenerator { atom: String, space: String, basis: String },
    #[error("manual space: {0}")]
    Manual(String),
    #[error("certificate failed verification: {0}")]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Bundle(#[from] BundleError),
    #[error(transparent)]
    Obstruction(#[from] ObstructionError),
    #[error(transparent)]
    Sphere(#[from] SphereError),
    #[error(transparent)]
    LowDim(#[from] LowDimError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl RuntimeError {
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            RuntimeError::Obstruction(ObstructionError::BudgetExceeded { .. })
                | RuntimeError::Sphere(SphereError::Obstruction(ObstructionError::BudgetExceeded { .. }))
        )
    }
}

#[derive(Debug, Error)]
#[error("line {line}: {error}")]
pub struct ScriptError {
    pub line: usize,
    pub error: RuntimeError,
}

#[derive(Debug, Error)]
pub enum ScriptFailure {
    #[error("parse error at {0}")]
    Parse(ParseError),
    #[error("{0}")]
    Run(ScriptError),
}

impl ScriptFailure {
    /// 2 for syntax errors, 3 for an exhausted search budget, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            ScriptFailure::Parse(_) => 2,
            ScriptFailure::Run(e) if e.error.is_budget() => 3,
            ScriptFailure::Run(_) => 1,
        }
    }
}

/// One query result: ordered `key: value` lines.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Record {
    pub fields: Vec<(String, String)>,
}

impl Record {
    fn push(&mut self, key: &str, value: impl fmt::Display) {
        self.fields.push((key.to_string(), value.to_string()));
    }

    /// First value under `key`.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn get_all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.fields.iter().filter(move |(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.fields {
            writeln!(f, "{k}: {v}")?;
        }
        Ok(())
    }
}

/// Records separated by blank lines.
pub fn format_records(records: &[Record]) -> String {
    records.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n")
}

#[derive(Debug)]
pub struct Outcome {
    pub records: Vec<Record>,
    pub error: Option<ScriptFailure>,
}

/// Parses and runs `text`, stopping at the first error; records produced
/// before the error are kept.
pub fn run_text(text: &str, opts: &RunOptions) -> Outcome {
    match parse_script(text) {
        Err(e) => Outcome { records: Vec::new(), error: Some(ScriptFailure::Parse(e)) },
        Ok(script) => Runner::new(opts.clone()).run(&script),
    }
}

#[derive(Debug, Clone)]
enum Value {
    Space(Space),
    Bundle(Bundle),
    Map(SpaceMap),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Space(_) => "space",
            Value::Bundle(_) => "bundle",
            Value::Map(_) => "map",
        }
    }
}

type Res<T> = Result<T, RuntimeError>;

pub struct Runner {
    opts: RunOptions,
    env: HashMap<String, Value>,
}

impl Runner {
    pub fn new(opts: RunOptions) -> Self {
        Runner { opts, env: HashMap::new() }
    }

    pub fn run(&mut self, script: &Script) -> Outcome {
        let mut records = Vec::new();
        for s in &script.statements {
            match self.execute(s) {
                Ok(Some(r)) => records.push(r),
                Ok(None) => {}
                Err(e) => return Outcome { records, error: Some(ScriptFailure::Run(e)) },
            }
        }
        Outcome { records, error: None }
    }

    pub fn execute(&mut self, s: &Statement) -> Result<Option<Record>, ScriptError> {
        self.statement(s).map_err(|error| ScriptError { line: s.line, error })
    }

    fn statement(&mut self, s: &Statement) -> Res<Option<Record>> {
        if let Some(name) = s.kind.binds() {
            if self.env.contains_key(name) {
                return Err(RuntimeError::Redefined(name.to_string()));
            }
        }
        match &s.kind {
            StatementKind::Space(name, e) => {
                let sp = self.space_named(e, name)?;
                self.env.insert(name.clone(), Value::Space(sp));
                Ok(None)
            }
            StatementKind::Bundle(name, e) => {
                let b = self.bundle(e)?;
                self.env.insert(name.clone(), Value::Bundle(b));
                Ok(None)
            }
            StatementKind::Map(name, e) => {
                let m = self.map(e)?;
                self.env.insert(name.clone(), Value::Map(m));
                Ok(None)
            }
            StatementKind::Query(q) => {
                let mut r = Record::default();
                r.push("query", q);
                r.push("line", s.line);
                self.query(q, &mut r)?;
                Ok(Some(r))
            }
        }
    }

    fn lookup(&self, name: &str) -> Res<&Value> {
        self.env.get(name).ok_or_else(|| RuntimeError::Unknown(name.to_string()))
    }

    fn wrong(&self, name: &str, v: &Value, expected: &'static str) -> RuntimeError {
        RuntimeError::WrongKind { name: name.to_string(), found: v.kind(), expected }
    }

    fn get_bundle(&self, name: &str) -> Res<Bundle> {
        match self.lookup(name)? {
            Value::Bundle(b) => Ok(b.clone()),
            v => Err(self.wrong(name, v, "bundle")),
        }
    }

    fn get_map(&self, name: &str) -> Res<SpaceMap> {
        match self.lookup(name)? {
            Value::Map(m) => Ok(m.clone()),
            v => Err(self.wrong(name, v, "map")),
        }
    }

    fn space(&self, e: &SpaceExpr) -> Res<Space> {
        self.space_named(e, "manual")
    }

    fn space_named(&self, e: &SpaceExpr, name: &str) -> Res<Space> {
        Ok(match e {
            SpaceExpr::Point => Space::point(),
            SpaceExpr::Sphere(n) => Space::sphere(*n)?,
            SpaceExpr::Torus(k) => Space::torus(*k)?,
            SpaceExpr::Cp(n) => Space::complex_projective(*n)?,
            SpaceExpr::Product(a, b) => kunneth_product(&self.space(a)?, &self.space(b)?),
            SpaceExpr::Manual(m) => manual_space(m, name)?,
            SpaceExpr::Named(n) => match self.lookup(n)? {
                Value::Space(s) => s.clone(),
                v => return Err(self.wrong(n, v, "space")),
            },
        })
    }

    fn bundle(&self, e: &BundleExpr) -> Res<Bundle> {
        Ok(match e {
            BundleExpr::Over { space, rank, oriented, classes } => {
                let sp = self.space(space)?;
                let (euler, mut p) = class_data(&sp, classes)?;
                // an unstated top class defaults to e²
                let half = rank / 2;
                if let (Some(e), true) = (&euler, *oriented && rank % 2 == 0 && half > 0) {
                    if !classes.pontrjagin.iter().any(|(i, _)| *i == half) {
                        p.resize(p.len().max(half), sp.zero());
                        p[half - 1] = e * e;
                    }
                }
                Bundle::new(&sp, *rank, *oriented, euler, p)?
            }
            BundleExpr::Tangent(s) => tangent_bundle(&self.space(s)?)?,
            BundleExpr::Trivial(s, r) => Bundle::trivial(&self.space(s)?, *r),
            BundleExpr::Sum(a, b) => whitney_sum(&self.get_bundle(a)?, &self.get_bundle(b)?)?,
            BundleExpr::Cross(a, b) => external_product(&self.get_bundle(a)?, &self.get_bundle(b)?)?,
            BundleExpr::Pullback(m, b) => pullback(&self.get_map(m)?, &self.get_bundle(b)?)?,
            BundleExpr::Stab(b, r) => stabilize(&self.get_bundle(b)?, *r),
        })
    }

    fn map(&self, e: &MapExpr) -> Res<SpaceMap> {
        Ok(match e {
            MapExpr::Cover(s, m) => torus_cover_map(&self.space(s)?, *m)?,
            MapExpr::Incl(s) => inclusion_core(&self.space(s)?)?,
            MapExpr::Proj(s) => projection_to_core(&self.space(s)?)?,
            MapExpr::Degmap(s, d) => {
                let sp = self.space(s)?;
                degree_map_to_sphere(&sp, sp.dimension(), *d)?
            }
            MapExpr::Compose(a, b) => self.get_map(a)?.then(&self.get_map(b)?)?,
        })
    }

    fn certificate(&self, cert: &ObstructionCertificate, r: &mut Record) -> Res<()> {
        r.push("verdict", cert.verdict);
        if let (Some(w), Some(v), Some(res)) = (&cert.witness, &cert.value, &cert.restriction) {
            r.push("witness", w);
            r.push("value", v);
            r.push("restriction", res);
        }
        if !self.opts.quiet {
            for (s, x) in &cert.generators {
                r.push("generator", format!("{s} = {x}"));
            }
        }
        if cert.is_obstructed() {
            cert.verify()?;
            r.push("certificate", "verified");
        }
        if !self.opts.quiet {
            for n in &cert.notes {
                r.push("note", n);
            }
        }
        Ok(())
    }

    fn note(&self, r: &mut Record, n: impl fmt::Display) {
        if !self.opts.quiet {
            r.push("note", n);
        }
    }

    fn search_options(&self) -> SearchOptions {
        SearchOptions { budget: self.opts.budget, ..SearchOptions::default() }
    }

    fn query(&mut self, q: &Query, r: &mut Record) -> Res<()> {
        match q {
            Query::Check(b) => {
                let cert = find_obstruction_with(&self.get_bundle(b)?, &self.search_options())?;
                self.certificate(&cert, r)?;
            }
            Query::CheckFlat(eta, xi) => {
                let cert = check_flat_product(&self.get_bundle(eta)?, &self.get_bundle(xi)?)?;
                self.certificate(&cert, r)?;
            }
            Query::SphereCheck(b, poly) => {
                let xi = self.get_bundle(b)?;
                let cert = if xi.euler().is_some_and(|e| !e.is_zero()) {
                    sphere_euler_check(&xi)?
                } else {
                    let poly = poly.as_ref().map(ClassPolynomial::from_expr).transpose()?;
                    sphere_pontrjagin_check(&xi, poly.as_ref(), &self.search_options())?
                };
                self.certificate(&cert, r)?;
            }
            Query::Gysin(b) => {
                let g = gysin_betti(&self.get_bundle(b)?)?;
                r.push("fiber", format!("S^{}", g.fiber_dim));
                r.push("euler", &g.euler);
                r.push("betti", g.betti.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" "));
                r.push("total", g.total());
                r.push("euler_characteristic", g.euler_characteristic());
            }
            Query::Realize { name, from, over, cover, classes } => {
                let xi_c = self.get_bundle(from)?;
                let base = self.space(over)?;
                let (euler, pontrjagin) = class_data(&base, classes)?;
                let m = cover.unwrap_or(self.opts.cover_m);
                let b = realize(&xi_c, &base, &RealizeTargets { euler, pontrjagin }, m)?;
                r.push("cover", m);
                r.push("rank", b.rank());
                r.push("oriented", b.is_oriented());
                if let Some(e) = b.euler() {
                    r.push("euler", e);
                }
                for (i, p) in b.pontrjagin_classes().iter().enumerate() {
                    r.push(&format!("p{}", i + 1), p);
                }
                self.env.insert(name.clone(), Value::Bundle(b));
            }
            Query::ClassifyS1S3 { rank, w1, p1, e, lift } => {
                let c = classify_s1s3(&LowDimBundle::s1s3(*rank, *w1, *p1, *e, *lift)?)?;
                r.push("verdict", c.verdict());
                r.push("class", &c);
            }
            Query::ClassifyS1S2 { rank, w1, e, w2 } => {
                let d = classify_s1s2(&LowDimBundle::s1s2(*rank, *w1, *e, *w2)?)?;
                r.push("verdict", d.verdict());
                r.push("decomposition", &d);
            }
            Query::S4(m, n) => {
                let (p1, e) = s4_invariants(*m, *n);
                r.push("p1", p1);
                r.push("e", e);
            }
            Query::S4Realizable(rank, p1, e) => {
                r.push("realizable", s4_realizable(*rank, *p1, *e)?);
            }
            Query::Betti(p, c, k) => {
                r.push("verdict", betti_obstruction(*p, *c, *k)?);
                self.note(r, "total Betti number of the total space against that of the core times 2^k");
            }
            Query::Pdual { c, t, extra, y } => {
                let cs = self.space(c)?;
                let y = y.as_ref().map(|e| class_of(&cs, e)).transpose()?;
                let cert = check_pdual(&cs, &self.space(t)?, y.as_ref(), *extra)?;
                self.certificate(&cert, r)?;
            }
            Query::AddNorm { c, t, i, k } => {
                let cert = check_add_norm_bundle(&self.space(c)?, &self.space(t)?, *i, *k)?;
                self.certificate(&cert, r)?;
            }
            Query::Family { c, t, i, q } => {
                let qprime = match q {
                    FamilyQ::Zero => ClassPolynomial::zero(),
                    FamilyQ::Character => ClassPolynomial::character_qprime(*i),
                    FamilyQ::Poly(e) => ClassPolynomial::from_expr(e)?,
                };
                let rep = check_polynomial_q_family(&self.space(c)?, &self.space(t)?, *i, &qprime)?;
                r.push("qprime", &qprime);
                r.push("relative_group_nonzero", rep.relative_group_nonzero);
                r.push("projection", &rep.projection);
                r.push("hypotheses", if rep.hypotheses_hold() { "hold" } else { "fail" });
                match &rep.certificate {
                    Some(cert) => self.certificate(cert, r)?,
                    None => r.push("verdict", crate::obstruction::Verdict::NoObstructionFound),
                }
                if let Some(a) = rep.search_agrees {
                    r.push("search_agrees", a);
                }
            }
            Query::Same(a, b) => {
                let rep = same_in_finite_cover(&self.get_bundle(a)?, &self.get_bundle(b)?)?;
                r.push("same", rep.same);
                r.push("rank", rep.rank);
                r.push("orientation", rep.orientation);
                r.push("euler", rep.euler);
                r.push("pontrjagin", rep.pontrjagin);
                r.push("restriction", rep.restriction);
                self.note(r, rep.caveat);
            }
        }
        Ok(())
    }
}

/// Evaluates a generator-label expression in `space`.
pub fn class_of(space: &Space, e: &Expr) -> Res<Element> {
    let mut total = space.zero();
    for t in &e.terms {
        let mut x = space.unit().scale(&t.coef);
        for (atom, k) in &t.factors {
            let g = space.element(atom).map_err(|_| RuntimeError::UnknownGenerator {
                atom: atom.clone(),
                space: space.name().to_string(),
                basis: space.algebra().basis().iter().map(|b| b.label.clone()).collect::<Vec<_>>().join(", "),
            })?;
            x = x.checked_mul(&g.pow(*k))?;
        }
        total = total.checked_add(&x)?;
    }
    Ok(total)
}

fn class_data(space: &Space, spec: &ClassSpec) -> Res<(Option<Element>, Vec<Element>)> {
    let euler = spec.euler.as_ref().map(|e| class_of(space, e)).transpose()?;
    let n = spec.pontrjagin.iter().map(|(i, _)| *i).max().unwrap_or(0);
    let mut p = vec![space.zero(); n];
    for (i, e) in &spec.pontrjagin {
        p[i - 1] = class_of(space, e)?;
    }
    Ok((euler, p))
}

fn manual_space(m: &ManualSpec, name: &str) -> Res<Space> {
    let mut basis = m.basis.clone();
    if !basis.iter().any(|(_, d)| *d == 0) {
        basis.insert(0, ("1".to_string(), 0));
    }
    let index = |l: &str| {
        basis.iter().position(|(b, _)| b == l).ok_or_else(|| RuntimeError::Manual(format!("unknown basis label `{l}`")))
    };
    let mut table: BTreeMap<(usize, usize), Vec<(usize, Q)>> = BTreeMap::new();
    for (x, y, c, z) in &m.mult {
        table.entry((index(x)?, index(y)?)).or_default().push((index(z)?, c.clone()));
    }
    let alg = GradedAlgebra::with_commuted_products(basis.clone(), table, m.top)?;
    let probe = Space::manual(name, alg.clone(), ManualData::default());
    let tangent = match m.tangent_rank {
        None => {
            if m.euler.is_some() || !m.pontrjagin.is_empty() || m.oriented {
                return Err(RuntimeError::Manual("tangent classes need `tangent_rank`".into()));
            }
            None
        }
        Some(rank) => Some(TangentData {
            rank,
            oriented: m.oriented,
            euler: m.euler.as_ref().map(|e| class_of(&probe, e)).transpose()?,
            pontrjagin: m.pontrjagin.iter().map(|e| class_of(&probe, e)).collect::<Res<_>>()?,
        }),
    };
    Ok(Space::manual(name, alg, ManualData { tangent, simply_connected: m.simply_connected }))
}

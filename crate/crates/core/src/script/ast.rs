use crate::expr::Expr;
use crate::rational::Q;

#[derive(Debug, Clone, PartialEq)]
pub enum SpaceExpr {
    Point,
    Sphere(usize),
    Torus(usize),
    Cp(usize),
    Product(Box<SpaceExpr>, Box<SpaceExpr>),
    Manual(Box<ManualSpec>),
    Named(String),
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ManualSpec {
    pub basis: Vec<(String, usize)>,
    /// `(x, y) -> (c, z)`: `x·y` has `c·z` as a term.
    pub mult: Vec<(String, String, Q, String)>,
    pub top: usize,
    pub tangent_rank: Option<usize>,
    pub oriented: bool,
    pub euler: Option<Expr>,
    pub pontrjagin: Vec<Expr>,
    pub simply_connected: bool,
}

/// Class data inside `{ … }`: `p[i]` is `(i, expr)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ClassSpec {
    pub euler: Option<Expr>,
    pub pontrjagin: Vec<(usize, Expr)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum BundleExpr {
    Over { space: SpaceExpr, rank: usize, oriented: bool, classes: ClassSpec },
    Tangent(SpaceExpr),
    Trivial(SpaceExpr, usize),
    Sum(String, String),
    Cross(String, String),
    Pullback(String, String),
    Stab(String, usize),
}

#[derive(Debug, Clone, PartialEq)]
pub enum MapExpr {
    Cover(SpaceExpr, u64),
    Incl(SpaceExpr),
    Proj(SpaceExpr),
    Degmap(SpaceExpr, i64),
    /// `compose(f, g)` is `f` followed by `g`.
    Compose(String, String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum FamilyQ {
    Zero,
    Character,
    Poly(Expr),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Query {
    Check(String),
    CheckFlat(String, String),
    SphereCheck(String, Option<Expr>),
    Gysin(String),
    Realize { name: String, from: String, over: SpaceExpr, cover: Option<u64>, classes: ClassSpec },
    ClassifyS1S3 { rank: usize, w1: bool, p1: i64, e: i64, lift: Option<bool> },
    ClassifyS1S2 { rank: usize, w1: bool, e: i64, w2: bool },
    S4(i64, i64),
    S4Realizable(usize, i64, i64),
    Betti(u64, u64, u32),
    Pdual { c: SpaceExpr, t: SpaceExpr, extra: usize, y: Option<Expr> },
    AddNorm { c: SpaceExpr, t: SpaceExpr, i: usize, k: usize },
    Family { c: SpaceExpr, t: SpaceExpr, i: usize, q: FamilyQ },
    Same(String, String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum StatementKind {
    Space(String, SpaceExpr),
    Bundle(String, BundleExpr),
    Map(String, MapExpr),
    Query(Query),
}

#[derive(Debug, Clone)]
pub struct Statement {
    /// 1-based line where the statement starts.
    pub line: usize,
    pub kind: StatementKind,
}

impl PartialEq for Statement {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Script {
    pub statements: Vec<Statement>,
}

impl StatementKind {
    /// Name this statement binds, if any.
    pub fn binds(&self) -> Option<&str> {
        match self {
            StatementKind::Space(n, _) | StatementKind::Bundle(n, _) | StatementKind::Map(n, _) => Some(n),
            StatementKind::Query(Query::Realize { name, .. }) => Some(name),
            StatementKind::Query(_) => None,
        }
    }
}

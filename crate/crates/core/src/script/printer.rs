//! Canonical text for the script AST; parsing the output gives back the same tree.

use std::fmt;

use super::ast::*;
use crate::rational::format_q;

impl fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceExpr::Point => write!(f, "point"),
            SpaceExpr::Sphere(n) => write!(f, "sphere({n})"),
            SpaceExpr::Torus(k) => write!(f, "torus({k})"),
            SpaceExpr::Cp(n) => write!(f, "cp({n})"),
            SpaceExpr::Product(a, b) => write!(f, "product({a}, {b})"),
            SpaceExpr::Manual(m) => write!(f, "{m}"),
            SpaceExpr::Named(n) => write!(f, "{n}"),
        }
    }
}

impl fmt::Display for ManualSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let basis: Vec<String> = self.basis.iter().map(|(l, d)| format!("({l}, {d})")).collect();
        let mult: Vec<String> =
            self.mult.iter().map(|(x, y, c, z)| format!("({x}, {y}) -> ({}, {z})", format_q(c))).collect();
        write!(f, "manual {{ basis: [{}], mult: [{}], top: {}", basis.join(", "), mult.join(", "), self.top)?;
        if let Some(r) = self.tangent_rank {
            write!(f, ", tangent_rank: {r}")?;
        }
        if self.oriented {
            write!(f, ", oriented")?;
        }
        if let Some(e) = &self.euler {
            write!(f, ", euler: {e}")?;
        }
        if !self.pontrjagin.is_empty() {
            let p: Vec<String> = self.pontrjagin.iter().map(|e| e.to_string()).collect();
            write!(f, ", pontrjagin: [{}]", p.join(", "))?;
        }
        if self.simply_connected {
            write!(f, ", simply_connected")?;
        }
        write!(f, " }}")
    }
}

fn classes(spec: &ClassSpec) -> Vec<String> {
    let mut items = Vec::new();
    if let Some(e) = &spec.euler {
        items.push(format!("euler = {e}"));
    }
    items.extend(spec.pontrjagin.iter().map(|(i, e)| format!("p{i} = {e}")));
    items
}

impl fmt::Display for BundleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BundleExpr::Over { space, rank, oriented, classes: spec } => {
                let mut items = vec![format!("rank {rank}")];
                if *oriented {
                    items.push("oriented".into());
                }
                items.extend(classes(spec));
                write!(f, "over {space} {{ {} }}", items.join(", "))
            }
            BundleExpr::Tangent(s) => write!(f, "= tangent({s})"),
            BundleExpr::Trivial(s, r) => write!(f, "= trivial({s}, {r})"),
            BundleExpr::Sum(a, b) => write!(f, "= sum({a}, {b})"),
            BundleExpr::Cross(a, b) => write!(f, "= cross({a}, {b})"),
            BundleExpr::Pullback(m, b) => write!(f, "= pullback({m}, {b})"),
            BundleExpr::Stab(b, r) => write!(f, "= stab({b}, {r})"),
        }
    }
}

impl fmt::Display for MapExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapExpr::Cover(s, m) => write!(f, "cover({s}, {m})"),
            MapExpr::Incl(s) => write!(f, "incl({s})"),
            MapExpr::Proj(s) => write!(f, "proj({s})"),
            MapExpr::Degmap(s, d) => write!(f, "degmap({s}, {d})"),
            MapExpr::Compose(a, b) => write!(f, "compose({a}, {b})"),
        }
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Query::Check(b) => write!(f, "check {b}"),
            Query::CheckFlat(a, b) => write!(f, "check-flat {a} {b}"),
            Query::SphereCheck(b, None) => write!(f, "sphere-check {b}"),
            Query::SphereCheck(b, Some(q)) => write!(f, "sphere-check {b} Q={q}"),
            Query::Gysin(b) => write!(f, "gysin {b}"),
            Query::Realize { name, from, over, cover, classes: spec } => {
                write!(f, "realize {name} from {from} over {over}")?;
                if let Some(m) = cover {
                    write!(f, " cover {m}")?;
                }
                let items = classes(spec);
                if items.is_empty() {
                    write!(f, " {{ }}")
                } else {
                    write!(f, " {{ {} }}", items.join(", "))
                }
            }
            Query::ClassifyS1S3 { rank, w1, p1, e, lift } => {
                write!(f, "classify-s1s3 rank={rank} w1={} p1={p1} e={e}", u8::from(*w1))?;
                if let Some(l) = lift {
                    write!(f, " lift={}", u8::from(*l))?;
                }
                Ok(())
            }
            Query::ClassifyS1S2 { rank, w1, e, w2 } => {
                write!(f, "classify-s1s2 rank={rank} w1={} e={e} w2={}", u8::from(*w1), u8::from(*w2))
            }
            Query::S4(m, n) => write!(f, "s4 {m} {n}"),
            Query::S4Realizable(r, p1, e) => write!(f, "s4-realizable {r} {p1} {e}"),
            Query::Betti(p, c, k) => write!(f, "betti {p} {c} {k}"),
            Query::Pdual { c, t, extra, y } => {
                write!(f, "pdual {c} {t}")?;
                if *extra > 0 {
                    write!(f, " extra={extra}")?;
                }
                if let Some(y) = y {
                    write!(f, " y={y}")?;
                }
                Ok(())
            }
            Query::AddNorm { c, t, i, k } => write!(f, "add-norm {c} {t} {i} {k}"),
            Query::Family { c, t, i, q } => {
                write!(f, "family {c} {t} {i}")?;
                match q {
                    FamilyQ::Zero => Ok(()),
                    FamilyQ::Character => write!(f, " ph"),
                    FamilyQ::Poly(e) => write!(f, " Q={e}"),
                }
            }
            Query::Same(a, b) => write!(f, "same {a} {b}"),
        }
    }
}

impl fmt::Display for StatementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatementKind::Space(n, s) => write!(f, "space {n} = {s}"),
            StatementKind::Bundle(n, b) => write!(f, "bundle {n} {b}"),
            StatementKind::Map(n, m) => write!(f, "map {n} = {m}"),
            StatementKind::Query(q) => write!(f, "{q}"),
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{}", s.kind)?;
        }
        Ok(())
    }
}

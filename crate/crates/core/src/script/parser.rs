use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::ast::*;
use crate::expr::Expr;
use crate::rational::{parse_q, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

/// Parses a whole script. Statements are one per line, except that a line
/// with an unclosed `{` or `[` continues onto the following lines. `#`
/// starts a comment.
pub fn parse_script(text: &str) -> Result<Script, ParseError> {
    let mut statements = Vec::new();
    let mut pending: Option<(usize, String)> = None;
    let mut depth = 0i64;
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        match &mut pending {
            Some((_, buf)) => {
                buf.push('\n');
                buf.push_str(line);
            }
            None if line.trim().is_empty() => continue,
            None => pending = Some((n + 1, line.to_string())),
        }
        depth += line.chars().map(|c| match c {
            '{' | '[' => 1,
            '}' | ']' => -1,
            _ => 0,
        }).sum::<i64>();
        if depth <= 0 {
            let (start, buf) = pending.take().expect("statement in progress");
            statements.push(parse_statement(&buf, start)?);
            depth = 0;
        }
    }
    if let Some((start, _)) = pending {
        return Err(ParseError { line: start, col: 1, msg: "unclosed `{` or `[`".into() });
    }
    Ok(Script { statements })
}

/// Parses one statement; `line` is where it starts in the enclosing script.
pub fn parse_statement(text: &str, line: usize) -> Result<Statement, ParseError> {
    let mut c = Cursor { src: text, pos: 0, line };
    let kind = c.statement()?;
    c.ws();
    if !c.at_end() {
        return c.fail("unexpected trailing input");
    }
    Ok(Statement { line, kind })
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
}

fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.'
}

impl<'a> Cursor<'a> {
    fn error_at(&self, pos: usize, msg: impl fmt::Display) -> ParseError {
        let before = &self.src[..pos.min(self.src.len())];
        let line = self.line + before.matches('\n').count();
        let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        ParseError { line, col, msg: msg.to_string() }
    }

    fn fail<T>(&self, msg: impl fmt::Display) -> Result<T, ParseError> {
        Err(self.error_at(self.pos, msg))
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&mut self) -> Option<char> {
        self.ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), ParseError> {
        if self.eat(s) {
            Ok(())
        } else {
            self.fail(format!("expected `{s}`"))
        }
    }

    fn take_while(&mut self, mut f: impl FnMut(char) -> bool) -> &'a str {
        self.ws();
        let len = self.rest().find(|c: char| !f(c)).unwrap_or(self.rest().len());
        let s = &self.rest()[..len];
        self.pos += len;
        s
    }

    fn word(&mut self) -> Result<String, ParseError> {
        self.ws();
        match self.rest().chars().next() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => Ok(self.take_while(is_word_char).to_string()),
            _ => self.fail("expected a name"),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        let start = self.pos;
        match self.word() {
            Ok(w) if w == kw => Ok(()),
            _ => Err(self.error_at(start, format!("expected `{kw}`"))),
        }
    }

    fn number_text(&mut self) -> (usize, &'a str) {
        self.ws();
        let start = self.pos;
        let mut first = true;
        let s = self.take_while(|c| {
            let ok = c.is_ascii_digit() || c == '/' || (first && c == '-');
            first = false;
            ok
        });
        (start, s)
    }

    fn int<T: std::str::FromStr>(&mut self, what: &str) -> Result<T, ParseError> {
        let (start, s) = self.number_text();
        s.parse().map_err(|_| self.error_at(start, format!("expected {what}")))
    }

    fn rational(&mut self) -> Result<Q, ParseError> {
        let (start, s) = self.number_text();
        parse_q(s).ok_or_else(|| self.error_at(start, "expected a rational number"))
    }

    /// An expression running up to the first of `stops` outside parentheses.
    fn expr_until(&mut self, stops: &[char]) -> Result<Expr, ParseError> {
        self.ws();
        let start = self.pos;
        let mut depth = 0i32;
        let mut end = self.src.len();
        for (i, ch) in self.rest().char_indices() {
            match ch {
                '(' => depth += 1,
                ')' if depth > 0 => depth -= 1,
                _ if depth == 0 && (stops.contains(&ch) || ch == ')') => {
                    end = start + i;
                    break;
                }
                _ => {}
            }
        }
        let text = &self.src[start..end];
        if text.contains('\n') {
            // expressions stay on one line so columns can be reported
            let nl = text.find('\n').expect("checked");
            if !text[nl..].trim().is_empty() {
                return Err(self.error_at(start + nl, "expression continues past the end of the line"));
            }
        }
        let e = Expr::parse(text).map_err(|e| self.error_at(start + e.col.saturating_sub(1), e.msg))?;
        self.pos = end;
        Ok(e)
    }

    fn statement(&mut self) -> Result<StatementKind, ParseError> {
        let start = self.pos;
        let head = self.word()?;
        Ok(match head.as_str() {
            "space" => {
                let name = self.binding_name()?;
                self.expect("=")?;
                StatementKind::Space(name, self.space()?)
            }
            "bundle" => {
                let name = self.binding_name()?;
                StatementKind::Bundle(name, self.bundle()?)
            }
            "map" => {
                let name = self.binding_name()?;
                self.expect("=")?;
                StatementKind::Map(name, self.map()?)
            }
            _ => {
                self.pos = start;
                StatementKind::Query(self.query()?)
            }
        })
    }

    fn binding_name(&mut self) -> Result<String, ParseError> {
        let start = self.pos;
        let name = self.word()?;
        if RESERVED.contains(&name.as_str()) {
            return Err(self.error_at(start, format!("`{name}` is reserved")));
        }
        Ok(name)
    }

    fn args_open(&mut self) -> Result<(), ParseError> {
        self.expect("(")
    }

    fn space(&mut self) -> Result<SpaceExpr, ParseError> {
        let start = self.pos;
        let w = self.word()?;
        let call = self.peek() == Some('(');
        let dim = |c: &mut Self| -> Result<usize, ParseError> {
            c.args_open()?;
            let n = c.int("a dimension")?;
            c.expect(")")?;
            Ok(n)
        };
        Ok(match (w.as_str(), call) {
            ("point", false) => SpaceExpr::Point,
            ("sphere", true) => SpaceExpr::Sphere(dim(self)?),
            ("torus", true) => SpaceExpr::Torus(dim(self)?),
            ("cp", true) => SpaceExpr::Cp(dim(self)?),
            ("product", true) => {
                self.args_open()?;
                let a = self.space()?;
                self.expect(",")?;
                let b = self.space()?;
                self.expect(")")?;
                SpaceExpr::Product(Box::new(a), Box::new(b))
            }
            ("manual", false) => SpaceExpr::Manual(Box::new(self.manual()?)),
            (_, true) => return Err(self.error_at(start, format!("unknown space constructor `{w}`"))),
            _ if RESERVED.contains(&w.as_str()) => return Err(self.error_at(start, format!("`{w}` is reserved"))),
            _ => SpaceExpr::Named(w),
        })
    }

    fn label(&mut self) -> Result<String, ParseError> {
        let s = self.take_while(|c| is_word_char(c) || c == '*' || c == '^');
        if s.is_empty() {
            self.fail("expected a basis label")
        } else {
            Ok(s.to_string())
        }
    }

    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T, ParseError>) -> Result<Vec<T>, ParseError> {
        self.expect("[")?;
        let mut out = Vec::new();
        if self.eat("]") {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.eat("]") {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    fn manual(&mut self) -> Result<ManualSpec, ParseError> {
        self.expect("{")?;
        let mut m = ManualSpec::default();
        let mut seen_top = false;
        if self.eat("}") {
            return self.fail("manual space needs `top`");
        }
        loop {
            let start = self.pos;
            let key = self.word()?;
            match key.as_str() {
                "oriented" => m.oriented = true,
                "simply_connected" => m.simply_connected = true,
                _ => {
                    self.expect(":")?;
                    match key.as_str() {
                        "basis" => {
                            m.basis = self.list(|c| {
                                c.expect("(")?;
                                let l = c.label()?;
                                c.expect(",")?;
                                let d = c.int("a degree")?;
                                c.expect(")")?;
                                Ok((l, d))
                            })?
                        }
                        "mult" => {
                            m.mult = self.list(|c| {
                                c.expect("(")?;
                                let x = c.label()?;
                                c.expect(",")?;
                                let y = c.label()?;
                                c.expect(")")?;
                                c.expect("->")?;
                                c.expect("(")?;
                                let k = c.rational()?;
                                c.expect(",")?;
                                let z = c.label()?;
                                c.expect(")")?;
                                Ok((x, y, k, z))
                            })?
                        }
                        "top" => {
                            m.top = self.int("a degree")?;
                            seen_top = true;
                        }
                        "tangent_rank" => m.tangent_rank = Some(self.int("a rank")?),
                        "euler" => m.euler = Some(self.expr_until(&[',', '}'])?),
                        "pontrjagin" => m.pontrjagin = self.list(|c| c.expr_until(&[',', ']']))?,
                        _ => return Err(self.error_at(start, format!("unknown manual key `{key}`"))),
                    }
                }
            }
            if self.eat("}") {
                break;
            }
            self.expect(",")?;
        }
        if !seen_top {
            return self.fail("manual space needs `top`");
        }
        Ok(m)
    }

    /// `{ euler = …, p1 = …, … }`, optionally with `rank` and `oriented`.
    fn class_block(&mut self, allow_rank: bool) -> Result<(Option<usize>, bool, ClassSpec), ParseError> {
        self.expect("{")?;
        let (mut rank, mut oriented, mut spec) = (None, false, ClassSpec::default());
        if self.eat("}") {
            return Ok((rank, oriented, spec));
        }
        loop {
            let start = self.pos;
            let key = self.word()?;
            match key.as_str() {
                "rank" if allow_rank => rank = Some(self.int("a rank")?),
                "oriented" if allow_rank => oriented = true,
                "euler" => {
                    self.expect("=")?;
                    spec.euler = Some(self.expr_until(&[',', '}'])?);
                }
                _ => match key.strip_prefix('p').and_then(|i| i.parse::<usize>().ok()).filter(|&i| i > 0) {
                    Some(i) => {
                        if spec.pontrjagin.iter().any(|(j, _)| *j == i) {
                            return Err(self.error_at(start, format!("p{i} given twice")));
                        }
                        self.expect("=")?;
                        spec.pontrjagin.push((i, self.expr_until(&[',', '}'])?));
                    }
                    None => return Err(self.error_at(start, format!("unknown key `{key}`"))),
                },
            }
            if self.eat("}") {
                return Ok((rank, oriented, spec));
            }
            self.expect(",")?;
        }
    }

    fn name_pair(&mut self) -> Result<(String, String), ParseError> {
        self.args_open()?;
        let a = self.word()?;
        self.expect(",")?;
        let b = self.word()?;
        self.expect(")")?;
        Ok((a, b))
    }

    fn bundle(&mut self) -> Result<BundleExpr, ParseError> {
        if self.eat("=") {
            let start = self.pos;
            let w = self.word()?;
            return Ok(match w.as_str() {
                "tangent" => {
                    self.args_open()?;
                    let s = self.space()?;
                    self.expect(")")?;
                    BundleExpr::Tangent(s)
                }
                "trivial" => {
                    self.args_open()?;
                    let s = self.space()?;
                    self.expect(",")?;
                    let r = self.int("a rank")?;
                    self.expect(")")?;
                    BundleExpr::Trivial(s, r)
                }
                "sum" => {
                    let (a, b) = self.name_pair()?;
                    BundleExpr::Sum(a, b)
                }
                "cross" => {
                    let (a, b) = self.name_pair()?;
                    BundleExpr::Cross(a, b)
                }
                "pullback" => {
                    let (a, b) = self.name_pair()?;
                    BundleExpr::Pullback(a, b)
                }
                "stab" => {
                    self.args_open()?;
                    let a = self.word()?;
                    self.expect(",")?;
                    let r = self.int("a rank")?;
                    self.expect(")")?;
                    BundleExpr::Stab(a, r)
                }
                _ => return Err(self.error_at(start, format!("unknown bundle constructor `{w}`"))),
            });
        }
        self.keyword("over")?;
        let space = self.space()?;
        let at = self.pos;
        let (rank, oriented, classes) = self.class_block(true)?;
        let rank = rank.ok_or_else(|| self.error_at(at, "bundle needs `rank`"))?;
        Ok(BundleExpr::Over { space, rank, oriented, classes })
    }

    fn map(&mut self) -> Result<MapExpr, ParseError> {
        let start = self.pos;
        let w = self.word()?;
        self.args_open()?;
        let m = match w.as_str() {
            "cover" => {
                let s = self.space()?;
                self.expect(",")?;
                MapExpr::Cover(s, self.int("a cover multiplier")?)
            }
            "incl" => MapExpr::Incl(self.space()?),
            "proj" => MapExpr::Proj(self.space()?),
            "degmap" => {
                let s = self.space()?;
                self.expect(",")?;
                MapExpr::Degmap(s, self.int("a degree")?)
            }
            "compose" => {
                let a = self.word()?;
                self.expect(",")?;
                MapExpr::Compose(a, self.word()?)
            }
            _ => return Err(self.error_at(start, format!("unknown map constructor `{w}`"))),
        };
        self.expect(")")?;
        Ok(m)
    }

    /// `key=value` pairs up to the end of the statement.
    fn pairs(&mut self, keys: &[&str]) -> Result<BTreeMap<String, (usize, String)>, ParseError> {
        let mut out = BTreeMap::new();
        while !{
            self.ws();
            self.at_end()
        } {
            let start = self.pos;
            let k = self.word()?;
            if !keys.contains(&k.as_str()) {
                return Err(self.error_at(start, format!("unknown key `{k}` (expected one of {})", keys.join(", "))));
            }
            self.expect("=")?;
            let vstart = self.pos;
            let v = self.take_while(|c| !c.is_whitespace()).to_string();
            if out.insert(k.clone(), (vstart, v)).is_some() {
                return Err(self.error_at(start, format!("`{k}` given twice")));
            }
        }
        Ok(out)
    }

    fn query(&mut self) -> Result<Query, ParseError> {
        let start = self.pos;
        let head = self.word()?;
        Ok(match head.as_str() {
            "check" => Query::Check(self.word()?),
            "check-flat" => Query::CheckFlat(self.word()?, self.word()?),
            "gysin" => Query::Gysin(self.word()?),
            "same" => Query::Same(self.word()?, self.word()?),
            "sphere-check" => {
                let n = self.word()?;
                Query::SphereCheck(n, self.trailing_expr("Q")?)
            }
            "realize" => {
                let name = self.binding_name()?;
                self.keyword("from")?;
                let from = self.word()?;
                self.keyword("over")?;
                let over = self.space()?;
                let cover = if self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
                    self.keyword("cover")?;
                    Some(self.int("a cover multiplier")?)
                } else {
                    None
                };
                let (_, _, classes) = self.class_block(false)?;
                Query::Realize { name, from, over, cover, classes }
            }
            "classify-s1s3" => {
                let p = self.pairs(&["rank", "w1", "p1", "e", "lift"])?;
                Query::ClassifyS1S3 {
                    rank: self.pair_value(&p, "rank")?.unwrap_or(0),
                    w1: self.pair_flag(&p, "w1")?.unwrap_or(false),
                    p1: self.pair_value(&p, "p1")?.unwrap_or(0),
                    e: self.pair_value(&p, "e")?.unwrap_or(0),
                    lift: self.pair_flag(&p, "lift")?,
                }
            }
            "classify-s1s2" => {
                let p = self.pairs(&["rank", "w1", "e", "w2"])?;
                Query::ClassifyS1S2 {
                    rank: self.pair_value(&p, "rank")?.unwrap_or(0),
                    w1: self.pair_flag(&p, "w1")?.unwrap_or(false),
                    e: self.pair_value(&p, "e")?.unwrap_or(0),
                    w2: self.pair_flag(&p, "w2")?.unwrap_or(false),
                }
            }
            "s4" => Query::S4(self.int("an integer")?, self.int("an integer")?),
            "s4-realizable" => {
                Query::S4Realizable(self.int("a rank")?, self.int("an integer")?, self.int("an integer")?)
            }
            "betti" => Query::Betti(self.int("a Betti total")?, self.int("a Betti total")?, self.int("a torus dimension")?),
            "pdual" => {
                let c = self.space()?;
                let t = self.space()?;
                let extra = if self.rest().trim_start().starts_with("extra") {
                    self.keyword("extra")?;
                    self.expect("=")?;
                    self.int("a rank")?
                } else {
                    0
                };
                Query::Pdual { c, t, extra, y: self.trailing_expr("y")? }
            }
            "add-norm" => {
                let c = self.space()?;
                let t = self.space()?;
                Query::AddNorm { c, t, i: self.int("an index")?, k: self.int("a rank")? }
            }
            "family" => {
                let c = self.space()?;
                let t = self.space()?;
                let i = self.int("an index")?;
                let q = if self.rest().trim_start().starts_with("ph") {
                    self.keyword("ph")?;
                    FamilyQ::Character
                } else {
                    match self.trailing_expr("Q")? {
                        Some(e) => FamilyQ::Poly(e),
                        None => FamilyQ::Zero,
                    }
                };
                Query::Family { c, t, i, q }
            }
            _ => return Err(self.error_at(start, format!("unknown statement `{head}`"))),
        })
    }

    /// Optional `key=EXPR` running to the end of the statement.
    fn trailing_expr(&mut self, key: &str) -> Result<Option<Expr>, ParseError> {
        self.ws();
        if self.at_end() {
            return Ok(None);
        }
        self.keyword(key)?;
        self.expect("=")?;
        Ok(Some(self.expr_until(&[])?))
    }

    fn pair_value<T: std::str::FromStr>(
        &self,
        p: &BTreeMap<String, (usize, String)>,
        key: &str,
    ) -> Result<Option<T>, ParseError> {
        match p.get(key) {
            None => Ok(None),
            Some((at, v)) => v.parse().map(Some).map_err(|_| self.error_at(*at, format!("bad value for `{key}`"))),
        }
    }

    fn pair_flag(&self, p: &BTreeMap<String, (usize, String)>, key: &str) -> Result<Option<bool>, ParseError> {
        match p.get(key).map(|(at, v)| (at, v.as_str())) {
            None => Ok(None),
            Some((_, "0" | "false")) => Ok(Some(false)),
            Some((_, "1" | "true")) => Ok(Some(true)),
            Some((at, _)) => Err(self.error_at(*at, format!("`{key}` must be 0 or 1"))),
        }
    }
}

/// Words that cannot name a binding.
pub const RESERVED: &[&str] = &["point", "manual", "over", "from", "cover", "space", "bundle", "map"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_comments() {
        assert_eq!(parse_script("").unwrap(), Script::default());
        assert_eq!(parse_script("# nothing\n\n   # more\n").unwrap().statements.len(), 0);
    }

    #[test]
    fn statement_shapes() {
        let s = parse_script(
            "space B = product(cp(3), torus(2))\n\
             bundle xi over B { rank 2, oriented, euler = a + t1*t2 }\n\
             map f = cover(B, 3)\n\
             bundle eta = pullback(f, xi)\n\
             check eta\n\
             classify-s1s3 rank=4 p1=2 e=1\n\
             sphere-check xi Q=P1^2 - 2*P2\n",
        )
        .unwrap();
        assert_eq!(s.statements.len(), 7);
        assert_eq!(s.statements[4].line, 5);
        let StatementKind::Bundle(_, BundleExpr::Over { rank, oriented, classes, .. }) = &s.statements[1].kind else {
            panic!()
        };
        assert_eq!((*rank, *oriented), (2, true));
        assert_eq!(classes.euler.as_ref().unwrap().to_string(), "a + t1*t2");
        let StatementKind::Query(Query::ClassifyS1S3 { rank, w1, p1, e, lift }) = &s.statements[5].kind else {
            panic!()
        };
        assert_eq!((*rank, *w1, *p1, *e, *lift), (4, false, 2, 1, None));
        let StatementKind::Query(Query::SphereCheck(_, Some(q))) = &s.statements[6].kind else { panic!() };
        assert_eq!(q.to_string(), "P1^2 - 2*P2");
    }

    #[test]
    fn manual_spans_lines() {
        let s = parse_script(
            "space M = manual {\n  basis: [(x, 2), (y, 4)],\n  mult: [(x, x) -> (1, y)],\n  top: 4,\n  simply_connected\n}\ncheck z\n",
        )
        .unwrap();
        assert_eq!(s.statements.len(), 2);
        assert_eq!(s.statements[1].line, 7);
        let StatementKind::Space(_, SpaceExpr::Manual(m)) = &s.statements[0].kind else { panic!() };
        assert_eq!(m.basis, vec![("x".into(), 2), ("y".into(), 4)]);
        assert_eq!(m.top, 4);
        assert!(m.simply_connected);
    }

    #[test]
    fn error_positions() {
        let e = parse_script("space B = torus(2)\nbundle x over B { rank 2, euler = a + }\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.col > 30, "{e}");
        let e = parse_script("frobnicate x").unwrap_err();
        assert_eq!((e.line, e.col), (1, 1));
        let e = parse_script("space B = sphere(x)").unwrap_err();
        assert_eq!((e.line, e.col), (1, 18));
        let e = parse_script("space M = manual {\n basis: [(x, 2)],\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_script("space M = manual {\n  nope: 3\n}").unwrap_err();
        assert_eq!((e.line, e.col), (2, 3));
        assert!(parse_script("space point = torus(1)").is_err());
        assert!(parse_script("classify-s1s2 rank=2 w1=2").is_err());
        assert!(parse_script("check a b").is_err());
    }

    #[test]
    fn printed_form_reparses() {
        let text = "space B = product(cp(1), torus(2))\n\
                    realize z from x over B cover 3 { p1 = 2*a*t1*t2 }\n\
                    pdual cp(1) torus(2) extra=2 y=a\n\
                    family cp(2) torus(4) 1 ph\n";
        let s = parse_script(text).unwrap();
        assert_eq!(s.to_string(), text);
        assert_eq!(parse_script(&s.to_string()).unwrap(), s);
    }
}

//! Input documents.
//!
//! A document is a list of statements separated by newlines or `;`. Header
//! statements have the form `key: value`; every other statement is a relation
//! `lhs = rhs` or `lhs <> rhs`. `#` starts a comment.
//!
//! ```text
//! mode: differential
//! derivations: x, t
//! indeterminates: u
//! ranking: orderly
//! scan: t, x
//! u[0,1] + u*u[1,0] = 0
//! ```

use std::fmt;

use thomas_core::differential::{DiffRanking, Differential, Jet};
use thomas_core::poly::{ParseError, Poly, Variable};
use thomas_core::{Kind, Ranking, Relation, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Algebraic,
    Differential,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Algebraic => "algebraic",
            Mode::Differential => "differential",
        }
    }
}

/// Parse failure located by 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DocError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for DocError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankingKind {
    Orderly,
    /// Blocks of indeterminates, highest first.
    Elimination(Vec<Vec<String>>),
}

pub struct AlgebraicInput {
    pub ranking: Ranking,
    pub relations: Vec<Relation<Var>>,
}

pub struct DifferentialInput {
    pub theory: Differential,
    pub kind: RankingKind,
    pub relations: Vec<Relation<Jet>>,
}

pub enum Document {
    Algebraic(AlgebraicInput),
    Differential(DifferentialInput),
}

/// One statement with its position in the source.
struct Stmt<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Stmt<'_> {
    fn error(&self, offset: usize, message: impl Into<String>) -> DocError {
        let column = self.column + self.text[..offset.min(self.text.len())].chars().count();
        DocError { line: self.line, column, message: message.into() }
    }
}

fn statements(text: &str) -> Vec<Stmt<'_>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let mut start = 0;
        for piece in line.split(';') {
            let trimmed = piece.trim_start();
            let lead = piece.len() - trimmed.len();
            let trimmed = trimmed.trim_end();
            if !trimmed.is_empty() {
                let col = line[..start + lead].chars().count() + 1;
                out.push(Stmt { text: trimmed, line: i + 1, column: col });
            }
            start += piece.len() + 1;
        }
    }
    out
}

const KEYS: [&str; 7] = ["mode", "vars", "derivations", "indeterminates", "ranking", "scan", "tie"];

fn header<'a>(s: &Stmt<'a>) -> Option<(&'a str, &'a str, usize)> {
    let (key, rest) = s.text.split_once(':')?;
    let key = key.trim();
    if !KEYS.contains(&key) {
        return None;
    }
    let value_off = s.text.len() - rest.len() + (rest.len() - rest.trim_start().len());
    Some((key, rest.trim(), value_off))
}

/// Splits a name list on `sep` characters, checking that every entry is an identifier.
fn names(s: &Stmt, value: &str, off: usize, seps: &[char]) -> Result<Vec<String>, DocError> {
    let mut out = Vec::new();
    if value.trim().is_empty() {
        return Ok(out);
    }
    let mut pos = off;
    for part in value.split(|c| seps.contains(&c)) {
        let name = part.trim();
        let at = pos + (part.len() - part.trim_start().len());
        let ok = name.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_alphanumeric() || c == '_');
        if !ok {
            return Err(s.error(at, format!("expected a name, found '{name}'")));
        }
        if out.contains(&name.to_string()) {
            return Err(s.error(at, format!("'{name}' is declared twice")));
        }
        out.push(name.to_string());
        pos += part.len() + 1;
    }
    Ok(out)
}

#[derive(Default)]
struct Headers {
    mode: Option<Mode>,
    vars: Option<Vec<String>>,
    derivations: Option<Vec<String>>,
    indeterminates: Option<Vec<String>>,
    ranking: Option<RankingKind>,
    scan: Option<(Vec<String>, usize, usize)>,
    tie: Option<(Vec<String>, usize, usize)>,
}

fn parse_headers<'a>(stmts: &'a [Stmt<'a>]) -> Result<(Headers, Vec<&'a Stmt<'a>>), DocError> {
    let mut h = Headers::default();
    let mut rels = Vec::new();
    for s in stmts {
        let Some((key, value, off)) = header(s) else {
            rels.push(s);
            continue;
        };
        let list = |seps: &[char]| names(s, value, off, seps);
        match key {
            "mode" => {
                h.mode = Some(match value {
                    "algebraic" => Mode::Algebraic,
                    "differential" => Mode::Differential,
                    _ => return Err(s.error(off, "expected 'algebraic' or 'differential'")),
                })
            }
            "vars" => h.vars = Some(list(&['<', ','])?),
            "derivations" => h.derivations = Some(list(&[','])?),
            "indeterminates" => h.indeterminates = Some(list(&['<', ','])?),
            "scan" => h.scan = Some((list(&[','])?, s.line, s.column)),
            "tie" => h.tie = Some((list(&[','])?, s.line, s.column)),
            "ranking" => {
                h.ranking = Some(if value == "orderly" {
                    RankingKind::Orderly
                } else if let Some(rest) = value.strip_prefix("elimination") {
                    let roff = off + "elimination".len();
                    let mut blocks = Vec::new();
                    let mut pos = roff;
                    for block in rest.split(">>") {
                        blocks.push(names(s, block, pos, &[','])?);
                        pos += block.len() + 2;
                    }
                    RankingKind::Elimination(blocks)
                } else {
                    return Err(s.error(off, "expected 'orderly' or 'elimination a >> b ...'"));
                })
            }
            _ => unreachable!(),
        }
    }
    Ok((h, rels))
}

/// Parses `lhs = rhs` or `lhs <> rhs` into a relation on `lhs - rhs`.
fn parse_relation<V: Variable>(
    s: &Stmt,
    parse: &dyn Fn(&str) -> Result<Poly<V>, ParseError>,
) -> Result<Relation<V>, DocError> {
    let (at, kind, width) = match (s.text.find("<>"), s.text.find("!="), s.text.find('=')) {
        (Some(i), _, _) => (i, Kind::Neq, 2),
        (None, Some(i), _) => (i, Kind::Neq, 2),
        (None, None, Some(i)) => (i, Kind::Eq, 1),
        _ => return Err(s.error(s.text.len(), "expected '= 0' or '<> 0'")),
    };
    let lhs = &s.text[..at];
    let rhs = &s.text[at + width..];
    let side = |text: &str, base: usize| {
        if text.trim().is_empty() {
            return Err(s.error(base + text.len(), "expected a polynomial"));
        }
        parse(text).map_err(|e| s.error(base + e.offset, e.message))
    };
    let l = side(lhs, 0)?;
    let r = side(rhs, at + width)?;
    let p = &l - &r;
    Ok(match kind {
        Kind::Eq => Relation::eq(p),
        Kind::Neq => Relation::neq(p),
    })
}

fn derivation_indices(list: &(Vec<String>, usize, usize), all: &[String]) -> Result<Vec<usize>, DocError> {
    let (names, line, column) = list;
    names
        .iter()
        .map(|n| {
            all.iter().position(|d| d == n).ok_or_else(|| DocError {
                line: *line,
                column: *column,
                message: format!("unknown derivation '{n}'"),
            })
        })
        .collect()
}

/// Parses a document; `mode` overrides the `mode:` header.
pub fn parse_document(text: &str, mode: Option<Mode>) -> Result<Document, DocError> {
    let stmts = statements(text);
    let (h, rels) = parse_headers(&stmts)?;
    let top = DocError { line: 1, column: 1, message: String::new() };
    let mode = mode.or(h.mode).unwrap_or(if h.derivations.is_some() { Mode::Differential } else { Mode::Algebraic });
    match mode {
        Mode::Algebraic => {
            if h.derivations.is_some() || h.indeterminates.is_some() {
                return Err(DocError { message: "derivations and indeterminates need differential mode".into(), ..top });
            }
            let vars = h.vars.unwrap_or_default();
            let ranking = Ranking::new(&vars).map_err(|e| DocError { message: e.to_string(), ..top.clone() })?;
            let parse = |t: &str| ranking.parse(t);
            let relations = rels.iter().map(|s| parse_relation(s, &parse)).collect::<Result<_, _>>()?;
            Ok(Document::Algebraic(AlgebraicInput { ranking, relations }))
        }
        Mode::Differential => {
            if h.vars.is_some() {
                return Err(DocError { message: "'vars' is for algebraic mode; use 'indeterminates'".into(), ..top });
            }
            let derivs = h.derivations.unwrap_or_default();
            let indets = h.indeterminates.unwrap_or_default();
            let kind = h.ranking.unwrap_or(RankingKind::Orderly);
            let err = |e: thomas_core::differential::DiffRankingError| DocError { message: e.to_string(), ..top.clone() };
            let mut ranking = match &kind {
                RankingKind::Orderly => DiffRanking::orderly(&derivs, &indets).map_err(err)?,
                RankingKind::Elimination(b) => DiffRanking::elimination(&derivs, &indets, b).map_err(err)?,
            };
            if let Some(tie) = &h.tie {
                let t = derivation_indices(tie, &derivs)?;
                ranking = ranking.with_tie_order(t).map_err(err)?;
            }
            let scan = match &h.scan {
                Some(sc) => {
                    let v = derivation_indices(sc, &derivs)?;
                    if v.len() != derivs.len() {
                        return Err(DocError { message: "scan must list every derivation once".into(), ..top });
                    }
                    Some(v)
                }
                None => None,
            };
            let parse = |t: &str| ranking.parse(t);
            let relations = rels.iter().map(|s| parse_relation(s, &parse)).collect::<Result<_, _>>()?;
            Ok(Document::Differential(DifferentialInput { theory: Differential::new(ranking, scan), kind, relations }))
        }
    }
}

impl Document {
    pub fn mode(&self) -> Mode {
        match self {
            Document::Algebraic(_) => Mode::Algebraic,
            Document::Differential(_) => Mode::Differential,
        }
    }

    /// Header lines in canonical form.
    pub fn header_lines(&self) -> Vec<String> {
        let mut out = vec![format!("mode: {}", self.mode().name())];
        match self {
            Document::Algebraic(a) => out.push(format!("vars: {}", a.ranking)),
            Document::Differential(d) => {
                let r = &d.theory.ranking;
                out.push(format!("derivations: {}", r.derivations().join(", ")));
                out.push(format!("indeterminates: {}", r.indeterminates().join(" < ")));
                out.push(match &d.kind {
                    RankingKind::Orderly => "ranking: orderly".to_string(),
                    RankingKind::Elimination(b) => {
                        let blocks: Vec<String> = b.iter().map(|x| x.join(", ")).collect();
                        format!("ranking: elimination {}", blocks.join(" >> "))
                    }
                });
                let by_index = |v: &[usize]| v.iter().map(|&i| r.derivations()[i].clone()).collect::<Vec<_>>().join(", ");
                out.push(format!("scan: {}", by_index(&d.theory.scan)));
                out.push(format!("tie: {}", by_index(r.tie_order())));
            }
        }
        out
    }

    pub fn relation_lines(&self) -> Vec<String> {
        match self {
            Document::Algebraic(a) => a.relations.iter().map(|r| a.ranking.format_relation(r)).collect(),
            Document::Differential(d) => d.relations.iter().map(|r| d.theory.ranking.format_relation(r)).collect(),
        }
    }

    /// Canonical text; parsing it gives back an equivalent document.
    pub fn to_text(&self) -> String {
        let mut lines = self.header_lines();
        lines.extend(self.relation_lines());
        lines.join("\n") + "\n"
    }
}

//! The diagram DSL: one slice per line, read bottom to top.
//!
//! ```text
//! @source tau
//! id(tau) cup(tau*)      // a snake
//! cap(tau) id(tau)
//! ```
//!
//! Generators are `id(x)`, `braid+`, `braid-`, `twist+`, `twist-`, `cup(x)`,
//! `cap(x)` and `vertex(v:i,j->k#n)`; a strand `x` is a label, with a trailing
//! `*` for a downward (dual) strand.  `||` separates Deligne factors.  The
//! grammar is in `docs/dsl.ebnf`.

use std::fmt;

use mtcperm_core::evaluator::{DiagramProgram, Generator, MultiWord, Sign, Strand, Variant, VertexId};
use mtcperm_core::FusionCategoryData;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DslError {
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Shape(String),
}

impl DslError {
    fn at(line: usize, col: usize, msg: impl Into<String>) -> DslError {
        DslError::Parse { line, col, msg: msg.into() }
    }
}

/// A strand as written; resolved against a category later.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrandRef {
    pub label: String,
    pub dual: bool,
    pub line: usize,
    pub col: usize,
}

impl StrandRef {
    fn resolve(&self, cat: &FusionCategoryData) -> Result<Strand, DslError> {
        let l = cat
            .index_of(&self.label)
            .map_err(|_| DslError::at(self.line, self.col, format!("unknown label `{}` in {}", self.label, cat.name())))?;
        Ok(if self.dual { Strand::down(l) } else { Strand::up(l) })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gen {
    Id(StrandRef),
    Braid(Sign),
    Twist(Sign),
    Cup(StrandRef),
    Cap(StrandRef),
    /// `index` is 1-based as written.
    Vertex { variant: Variant, i: StrandRef, j: StrandRef, k: StrandRef, index: usize },
}

/// One line: a slice per Deligne factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub line: usize,
    pub factors: Vec<Vec<Gen>>,
}

/// Words are per factor; `()` is the empty word.
pub type WordRef = Vec<Vec<StrandRef>>;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Program {
    pub source: Option<WordRef>,
    pub target: Option<WordRef>,
    pub lines: Vec<Line>,
}

// Equality of programs ignores positions: a printed program parses to the
// same structure even though columns move.
fn strip(p: &Program) -> Program {
    let s = |x: &StrandRef| StrandRef { line: 0, col: 0, ..x.clone() };
    let w = |w: &WordRef| w.iter().map(|f| f.iter().map(s).collect()).collect();
    let g = |g: &Gen| match g {
        Gen::Id(x) => Gen::Id(s(x)),
        Gen::Cup(x) => Gen::Cup(s(x)),
        Gen::Cap(x) => Gen::Cap(s(x)),
        Gen::Vertex { variant, i, j, k, index } => {
            Gen::Vertex { variant: *variant, i: s(i), j: s(j), k: s(k), index: *index }
        }
        other => other.clone(),
    };
    Program {
        source: p.source.as_ref().map(w),
        target: p.target.as_ref().map(w),
        lines: p
            .lines
            .iter()
            .enumerate()
            .map(|(n, l)| Line { line: n, factors: l.factors.iter().map(|f| f.iter().map(g).collect()).collect() })
            .collect(),
    }
}

impl Program {
    /// Structural equality, ignoring source positions.
    pub fn same_as(&self, other: &Program) -> bool {
        strip(self) == strip(other)
    }

    /// Number of Deligne factors (1 for an empty program without directives).
    pub fn factors(&self) -> usize {
        self.lines
            .first()
            .map(|l| l.factors.len())
            .or(self.source.as_ref().map(|w| w.len()))
            .unwrap_or(1)
    }
}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    _text: &'a str,
}

fn is_ident(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, line: usize) -> Cursor<'a> {
        Cursor { chars: text.chars().collect(), pos: 0, line, _text: text }
    }
    fn col(&self) -> usize {
        self.pos + 1
    }
    fn err(&self, msg: impl Into<String>) -> DslError {
        DslError::at(self.line, self.col(), msg)
    }
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }
    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.chars.len()
    }
    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        let n = s.chars().count();
        if self.chars[self.pos..].iter().take(n).copied().eq(s.chars()) {
            self.pos += n;
            true
        } else {
            false
        }
    }
    fn expect(&mut self, s: &str) -> Result<(), DslError> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.err(match self.peek() {
                Some(c) => format!("expected `{s}`, found `{c}`"),
                None => format!("expected `{s}`, found end of line"),
            }))
        }
    }
    fn ident(&mut self) -> Result<(String, usize), DslError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(is_ident) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err(match self.peek() {
                Some(c) => format!("expected a name, found `{c}`"),
                None => "expected a name, found end of line".into(),
            }));
        }
        Ok((self.chars[start..self.pos].iter().collect(), start + 1))
    }
    fn strand(&mut self) -> Result<StrandRef, DslError> {
        let (label, col) = self.ident()?;
        let dual = self.peek() == Some('*');
        if dual {
            self.pos += 1;
        }
        Ok(StrandRef { label, dual, line: self.line, col })
    }
    fn sign(&mut self) -> Result<Sign, DslError> {
        // the sign is glued to the keyword: `braid+`
        match self.peek() {
            Some('+') => {
                self.pos += 1;
                Ok(Sign::Pos)
            }
            Some('-') => {
                self.pos += 1;
                Ok(Sign::Neg)
            }
            _ => Err(self.err("expected `+` or `-`")),
        }
    }
    fn generator(&mut self) -> Result<Gen, DslError> {
        let (kw, col) = self.ident()?;
        let one = |c: &mut Cursor<'_>| -> Result<StrandRef, DslError> {
            c.expect("(")?;
            let s = c.strand()?;
            c.expect(")")?;
            Ok(s)
        };
        match kw.as_str() {
            "id" => Ok(Gen::Id(one(self)?)),
            "cup" => Ok(Gen::Cup(one(self)?)),
            "cap" => Ok(Gen::Cap(one(self)?)),
            "braid" => Ok(Gen::Braid(self.sign()?)),
            "twist" => Ok(Gen::Twist(self.sign()?)),
            "vertex" => {
                self.expect("(")?;
                let (v, vcol) = self.ident()?;
                self.expect(":")?;
                let variant = Variant::from_name(&v).ok_or_else(|| {
                    DslError::at(self.line, vcol, format!("unknown vertex variant `{v}` (a, ahat, ahatstar, astar, acheck, acheckhat)"))
                })?;
                let i = self.strand()?;
                self.expect(",")?;
                let j = self.strand()?;
                self.expect("->")?;
                let k = self.strand()?;
                let mut index = 1;
                if self.eat("#") {
                    let (n, ncol) = self.ident()?;
                    index = n
                        .parse::<usize>()
                        .ok()
                        .filter(|&n| n >= 1)
                        .ok_or_else(|| DslError::at(self.line, ncol, format!("vertex index `{n}` is not a positive integer")))?;
                }
                self.expect(")")?;
                Ok(Gen::Vertex { variant, i, j, k, index })
            }
            _ => Err(DslError::at(self.line, col, format!("unknown generator `{kw}`"))),
        }
    }
    fn word(&mut self) -> Result<WordRef, DslError> {
        let mut out = vec![Vec::new()];
        loop {
            if self.at_end() {
                return Ok(out);
            }
            if self.eat("||") {
                out.push(Vec::new());
            } else if self.eat("()") {
            } else {
                let s = self.strand()?;
                out.last_mut().expect("nonempty").push(s);
            }
        }
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find("//") {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Parse a whole file.  Blank lines and `//` comments are ignored.
pub fn parse_dsl(text: &str) -> Result<Program, DslError> {
    let mut prog = Program::default();
    for (n, raw) in text.lines().enumerate() {
        let lineno = n + 1;
        let body = strip_comment(raw);
        let mut cur = Cursor::new(body, lineno);
        if cur.at_end() {
            continue;
        }
        if cur.eat("@") {
            let (d, col) = cur.ident()?;
            let w = cur.word()?;
            let slot = match d.as_str() {
                "source" => &mut prog.source,
                "target" => &mut prog.target,
                _ => return Err(DslError::at(lineno, col, format!("unknown directive `@{d}`"))),
            };
            if slot.is_some() {
                return Err(DslError::at(lineno, col, format!("`@{d}` given twice")));
            }
            *slot = Some(w);
            continue;
        }
        let mut factors = vec![Vec::new()];
        while !cur.at_end() {
            if cur.eat("||") {
                factors.push(Vec::new());
                continue;
            }
            let g = cur.generator()?;
            factors.last_mut().expect("nonempty").push(g);
        }
        if let Some(first) = prog.lines.first() {
            if first.factors.len() != factors.len() {
                return Err(DslError::at(
                    lineno,
                    1,
                    format!("{} factors, but line {} has {}", factors.len(), first.line, first.factors.len()),
                ));
            }
        }
        prog.lines.push(Line { line: lineno, factors });
    }
    Ok(prog)
}

impl fmt::Display for StrandRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.label, if self.dual { "*" } else { "" })
    }
}

fn sign_str(s: Sign) -> &'static str {
    match s {
        Sign::Pos => "+",
        Sign::Neg => "-",
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Id(s) => write!(f, "id({s})"),
            Gen::Braid(s) => write!(f, "braid{}", sign_str(*s)),
            Gen::Twist(s) => write!(f, "twist{}", sign_str(*s)),
            Gen::Cup(s) => write!(f, "cup({s})"),
            Gen::Cap(s) => write!(f, "cap({s})"),
            Gen::Vertex { variant, i, j, k, index } => write!(f, "vertex({}:{i},{j}->{k}#{index})", variant.name()),
        }
    }
}

fn join<T: fmt::Display>(xs: &[T], sep: &str, empty: &str) -> String {
    if xs.is_empty() {
        return empty.into();
    }
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn word_str(w: &WordRef) -> String {
    w.iter().map(|f| join(f, " ", "()")).collect::<Vec<_>>().join(" || ")
}

/// Canonical text: directives first, one space between generators.
impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(w) = &self.source {
            writeln!(f, "@source {}", word_str(w))?;
        }
        if let Some(w) = &self.target {
            writeln!(f, "@target {}", word_str(w))?;
        }
        for l in &self.lines {
            let parts: Vec<String> = l.factors.iter().map(|s| join(s, " ", "")).collect();
            let text = parts.join(" || ");
            writeln!(f, "{}", text.trim())?;
        }
        Ok(())
    }
}

/// A program bound to a category: one [`DiagramProgram`] per factor.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub source: MultiWord,
    pub target: Option<MultiWord>,
    pub programs: Vec<DiagramProgram>,
    /// Source line of each slice.
    pub lines: Vec<usize>,
}

fn resolve_word(w: &WordRef, cat: &FusionCategoryData) -> Result<MultiWord, DslError> {
    w.iter().map(|f| f.iter().map(|s| s.resolve(cat)).collect()).collect()
}

fn resolve_gen(g: &Gen, cat: &FusionCategoryData) -> Result<Generator, DslError> {
    Ok(match g {
        Gen::Id(s) => Generator::Id(s.resolve(cat)?),
        Gen::Braid(s) => Generator::Braid(*s),
        Gen::Twist(s) => Generator::Twist(*s),
        Gen::Cup(s) => Generator::Cup(s.resolve(cat)?),
        Gen::Cap(s) => Generator::Cap(s.resolve(cat)?),
        Gen::Vertex { variant, i, j, k, index } => {
            Generator::Vertex(VertexId::new(*variant, i.resolve(cat)?, j.resolve(cat)?, k.resolve(cat)?, index - 1))
        }
    })
}

/// The input strands of a slice, when every generator in it is typed.
fn inferred_input(slice: &[Generator]) -> Option<Vec<Strand>> {
    let mut w = Vec::new();
    for g in slice {
        match g {
            Generator::Id(s) => w.push(*s),
            Generator::Cap(s) => w.extend([*s, s.bar()]),
            Generator::Cup(_) => {}
            Generator::Vertex(v) => w.extend(v.signature().0),
            _ => return None,
        }
    }
    Some(w)
}

impl Program {
    /// Bind labels to `cat`.  `source`/`target` override the directives; the
    /// source is otherwise inferred from the first slice when possible.
    pub fn resolve(
        &self,
        cat: &FusionCategoryData,
        source: Option<&WordRef>,
        target: Option<&WordRef>,
    ) -> Result<Resolved, DslError> {
        let nf = self.factors();
        let mut programs = vec![DiagramProgram::default(); nf];
        for l in &self.lines {
            for (m, s) in l.factors.iter().enumerate() {
                programs[m].slices.push(s.iter().map(|g| resolve_gen(g, cat)).collect::<Result<_, _>>()?);
            }
        }
        let src = match source.or(self.source.as_ref()) {
            Some(w) => resolve_word(w, cat)?,
            None => programs
                .iter()
                .map(|p| p.slices.first().map_or(Some(Vec::new()), |s| inferred_input(s)))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| DslError::Shape("cannot infer the source word; add `@source` or pass --source".into()))?,
        };
        if src.len() != nf {
            return Err(DslError::Shape(format!("source has {} factors, the diagram {nf}", src.len())));
        }
        let target = match target.or(self.target.as_ref()) {
            Some(w) => {
                let t = resolve_word(w, cat)?;
                if t.len() != nf {
                    return Err(DslError::Shape(format!("target has {} factors, the diagram {nf}", t.len())));
                }
                Some(t)
            }
            None => None,
        };
        Ok(Resolved { source: src, target, programs, lines: self.lines.iter().map(|l| l.line).collect() })
    }
}

/// Parse a word given on the command line (`tau tau*`, `tau || ()`).
pub fn parse_word(text: &str) -> Result<WordRef, DslError> {
    Cursor::new(text, 1).word()
}

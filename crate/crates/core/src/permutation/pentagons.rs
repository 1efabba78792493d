//! `C ⊠ C`-module structures on `C` and module functors between them, checked
//! as braid identities on simple labels.
//!
//! An object of `C` built from the action is a word of *atoms* (one strand
//! each); a morphism is a list of [`Op`]s naming the atoms it moves, so the
//! same description works wherever the atoms currently sit.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::evaluator::{Builder, Evaluator, Morphism, Sign, Strand};
use crate::report::Report;

/// Where `X` and `Y` go in `(X ⊠ Y) ▷ C`: the `xy` of `▷^{xy}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    P12,
    P21,
    P13,
    P31,
    P23,
    P32,
}

impl Placement {
    pub const ALL: [Placement; 6] =
        [Placement::P12, Placement::P21, Placement::P13, Placement::P31, Placement::P23, Placement::P32];

    pub fn name(self) -> &'static str {
        match self {
            Placement::P12 => "12",
            Placement::P21 => "21",
            Placement::P13 => "13",
            Placement::P31 => "31",
            Placement::P23 => "23",
            Placement::P32 => "32",
        }
    }
}

/// The module category `P^{xy,ε}`.
///
/// `mixed` flips the sign of the second braiding in `ψ^{23}`/`ψ^{32}`.  Every
/// pair of strands still crosses at most once, with a sign fixed by the pair's
/// types, so the pentagon holds for these as well.  `twisted` appends `θ` on
/// the `X`-part of `D'` to `ψ`, which does break it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModuleVariant {
    pub placement: Placement,
    pub sign: Sign,
    pub mixed: bool,
    pub twisted: bool,
}

impl ModuleVariant {
    pub const fn new(placement: Placement, sign: Sign) -> ModuleVariant {
        ModuleVariant { placement, sign, mixed: false, twisted: false }
    }

    pub fn all() -> Vec<ModuleVariant> {
        Placement::ALL
            .iter()
            .flat_map(|&p| [Sign::Pos, Sign::Neg].map(|s| ModuleVariant::new(p, s)))
            .collect()
    }

    pub fn name(&self) -> String {
        let s = if self.sign == Sign::Pos { "+" } else { "-" };
        let extra = match (self.mixed, self.twisted) {
            (false, false) => "",
            (true, false) => "mixed",
            (false, true) => "twisted",
            (true, true) => "mixed+twisted",
        };
        format!("P{}{}{}", self.placement.name(), s, extra)
    }

    /// `(X ⊠ Y) ▷ M`.
    pub fn act(&self, x: &[usize], y: &[usize], m: &[usize]) -> Vec<usize> {
        let parts: [&[usize]; 3] = match self.placement {
            Placement::P12 => [x, y, m],
            Placement::P21 => [y, x, m],
            Placement::P13 => [x, m, y],
            Placement::P31 => [y, m, x],
            Placement::P23 => [m, x, y],
            Placement::P32 => [m, y, x],
        };
        parts.concat()
    }

    /// `ψ_{D,D',M}: (D ⊗ D') ▷ M → D ▷ (D' ▷ M)` for `D = X ⊠ Y`, `D' = X' ⊠ Y'`.
    pub fn psi(&self, x: &[usize], y: &[usize], x1: &[usize], y1: &[usize]) -> Vec<Op> {
        let e = self.sign;
        let e2 = if self.mixed { e.flip() } else { e };
        let cat = |a: &[usize], b: &[usize]| [a, b].concat();
        let mut ops = match self.placement {
            Placement::P12 => vec![Op::cross(x1, y, e)],
            Placement::P21 => vec![Op::cross(y1, x, e)],
            Placement::P13 => vec![Op::cross(y, y1, e)],
            Placement::P31 => vec![Op::cross(x, x1, e)],
            Placement::P23 => vec![Op::cross(x, x1, e), Op::cross(&cat(x, y), y1, e2)],
            Placement::P32 => vec![Op::cross(y, y1, e), Op::cross(&cat(y, x), x1, e2)],
        };
        if self.twisted {
            ops.push(Op::twist(x1, Sign::Pos));
        }
        ops
    }
}

/// One step of a braid-and-twist morphism, addressed by atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Op {
    /// `c^ε_{U,V}`: `U` immediately followed by `V` is braided past it.
    Cross(Vec<usize>, Vec<usize>, Sign),
    /// `θ^{±1}_U` on a contiguous group.
    Twist(Vec<usize>, Sign),
}

impl Op {
    pub fn cross(u: &[usize], v: &[usize], s: Sign) -> Op {
        Op::Cross(u.to_vec(), v.to_vec(), s)
    }
    pub fn twist(u: &[usize], s: Sign) -> Op {
        Op::Twist(u.to_vec(), s)
    }
}

/// A builder that tracks which atom sits where.
struct Tracker {
    order: Vec<usize>,
    b: Builder,
}

impl Tracker {
    fn new(order: Vec<usize>, strands: &[Strand]) -> Tracker {
        let w: Vec<Strand> = order.iter().map(|&a| strands[a]).collect();
        Tracker { order, b: Builder::new(&w) }
    }

    fn find(&self, group: &[usize]) -> Result<usize> {
        let Some(&first) = group.first() else { return Err(Error::Position("empty atom group".into())) };
        let pos = self.order.iter().position(|&a| a == first).ok_or_else(|| Error::Position("unknown atom".into()))?;
        if self.order.get(pos..pos + group.len()) != Some(group) {
            return Err(Error::Position(format!("atoms {group:?} are not adjacent in {:?}", self.order)));
        }
        Ok(pos)
    }

    fn apply(mut self, op: &Op) -> Result<Tracker> {
        match op {
            Op::Cross(u, v, s) => {
                let pos = self.find(u)?;
                if self.order.get(pos + u.len()..pos + u.len() + v.len()) != Some(v.as_slice()) {
                    return Err(Error::Position(format!("{v:?} does not follow {u:?} in {:?}", self.order)));
                }
                self.b = self.b.braid_block(pos, u.len(), v.len(), *s);
                let mut next = self.order[..pos].to_vec();
                next.extend_from_slice(v);
                next.extend_from_slice(u);
                next.extend_from_slice(&self.order[pos + u.len() + v.len()..]);
                self.order = next;
            }
            Op::Twist(u, s) => {
                let pos = self.find(u)?;
                self.b = self.b.twist_block(pos, u.len(), *s);
            }
        }
        Ok(self)
    }
}

/// A morphism between two atom words, given by ops.
#[derive(Debug, Clone)]
pub struct Side {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub ops: Vec<Op>,
}

impl Side {
    /// Evaluate on the strands assigned to the atoms.
    pub fn evaluate(&self, ev: &Evaluator<'_>, strands: &[Strand]) -> Result<Morphism> {
        let mut t = Tracker::new(self.source.clone(), strands);
        for op in &self.ops {
            t = t.apply(op)?;
        }
        if t.order != self.target {
            return Err(Error::ShapeMismatch(format!("ops end at {:?}, expected {:?}", t.order, self.target)));
        }
        ev.run(t.b)
    }
}

/// The module pentagon of `P^v` on atoms `X X' X'' Y Y' Y'' C = 0..7`:
/// `ψ_{D,D',D''▷C} ∘ ψ_{D⊗D',D'',C}` vs `(id_D ▷ ψ_{D',D'',C}) ∘ ψ_{D,D'⊗D'',C}`.
pub fn module_axiom(v: &ModuleVariant) -> (Side, Side) {
    let (x, x1, x2, y, y1, y2, c) = ([0], [1], [2], [3], [4], [5], [6]);
    let cat = |a: &[usize], b: &[usize]| [a, b].concat();
    let source = v.act(&[0, 1, 2], &[3, 4, 5], &c);
    let m2 = v.act(&x2, &y2, &c);
    let target = v.act(&x, &y, &v.act(&x1, &y1, &m2));
    let mut lhs = v.psi(&cat(&x, &x1), &cat(&y, &y1), &x2, &y2);
    lhs.extend(v.psi(&x, &y, &x1, &y1));
    let mut rhs = v.psi(&x, &y, &cat(&x1, &x2), &cat(&y1, &y2));
    rhs.extend(v.psi(&x1, &y1, &x2, &y2));
    (Side { source: source.clone(), target: target.clone(), ops: lhs }, Side { source, target, ops: rhs })
}

/// The module functors `(id_C, φ)` out of `P = P^{12,+}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Functor {
    /// `c_{X,Y} ⊗ id_C: P → P^{21,−}`.
    F,
    /// `id_X ⊗ c⁻¹_{C,Y}: P → P^{13,−}`.
    G,
    /// `c_{X,Y⊗C}: P → P^{31,+}`.
    L,
    /// `c⁻¹_{C,X⊗Y}: P → P^{23,−}`.
    H,
    /// `(id_C ⊗ c_{X,Y}) ∘ c_{X⊗Y,C}: P → P^{32,+}`.
    K,
    /// `id_X ⊗ θ⁻¹_{Y⊗C}(id_Y ⊗ θ_C): P → P^{12,−}`.
    P,
}

impl Functor {
    pub const ALL: [Functor; 6] = [Functor::F, Functor::G, Functor::L, Functor::H, Functor::K, Functor::P];

    pub fn name(self) -> &'static str {
        match self {
            Functor::F => "f",
            Functor::G => "g",
            Functor::L => "l",
            Functor::H => "h",
            Functor::K => "k",
            Functor::P => "p",
        }
    }

    pub fn target(self) -> ModuleVariant {
        let (p, s) = match self {
            Functor::F => (Placement::P21, Sign::Neg),
            Functor::G => (Placement::P13, Sign::Neg),
            Functor::L => (Placement::P31, Sign::Pos),
            Functor::H => (Placement::P23, Sign::Neg),
            Functor::K => (Placement::P32, Sign::Pos),
            Functor::P => (Placement::P12, Sign::Neg),
        };
        ModuleVariant::new(p, s)
    }

    /// `φ_{X⊠Y,M}`.  With `trivial_twist`, every `θ` in `p` is replaced by
    /// the identity (leaving `id_X ⊗ c⁻¹_{Y,C} c⁻¹_{C,Y}`).
    pub fn phi(self, x: &[usize], y: &[usize], m: &[usize], trivial_twist: bool) -> Vec<Op> {
        let cat = |a: &[usize], b: &[usize]| [a, b].concat();
        match self {
            Functor::F => vec![Op::cross(x, y, Sign::Pos)],
            Functor::G => vec![Op::cross(y, m, Sign::Neg)],
            Functor::L => vec![Op::cross(x, &cat(y, m), Sign::Pos)],
            Functor::H => vec![Op::cross(&cat(x, y), m, Sign::Neg)],
            Functor::K => vec![Op::cross(&cat(x, y), m, Sign::Pos), Op::cross(x, y, Sign::Pos)],
            Functor::P if trivial_twist => vec![Op::cross(y, m, Sign::Neg), Op::cross(m, y, Sign::Neg)],
            Functor::P => vec![Op::twist(m, Sign::Pos), Op::twist(&cat(y, m), Sign::Neg)],
        }
    }
}

/// Atoms of the functor pentagons: `X X' Y Y' C`.
pub const PENTAGON_ATOMS: [&str; 5] = ["X", "X'", "Y", "Y'", "C"];

/// `ψ'_{D,D',C} ∘ φ_{D⊗D',C}` vs `(id_D ▷' φ_{D',C}) ∘ φ_{D,D'▷C} ∘ ψ_{D,D',C}`.
pub fn functor_pentagon(f: Functor, trivial_twist: bool) -> (Side, Side) {
    let (x, x1, y, y1, c) = ([0], [1], [2], [3], [4]);
    let p = ModuleVariant::new(Placement::P12, Sign::Pos);
    let q = f.target();
    let source = p.act(&[0, 1], &[2, 3], &c);
    let target = q.act(&x, &y, &q.act(&x1, &y1, &c));
    let mut lhs = f.phi(&[0, 1], &[2, 3], &c, trivial_twist);
    lhs.extend(q.psi(&x, &y, &x1, &y1));
    let mut rhs = p.psi(&x, &y, &x1, &y1);
    rhs.extend(f.phi(&x, &y, &p.act(&x1, &y1, &c), trivial_twist));
    rhs.extend(f.phi(&x1, &y1, &c, trivial_twist));
    (Side { source: source.clone(), target: target.clone(), ops: lhs }, Side { source, target, ops: rhs })
}

/// The twist-free form of the `p` pentagon: both sides followed by `θ_Y ⊗ θ_{Y'}`.
pub fn reduced(f: Functor, side: &Side) -> Side {
    let mut s = side.clone();
    if f == Functor::P {
        s.ops.push(Op::twist(&[2], Sign::Pos));
        s.ops.push(Op::twist(&[3], Sign::Pos));
    }
    s
}

/// A braid/twist word on a fixed strand order, 0-based positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Letter {
    Braid(usize, Sign),
    Twist(usize, Sign),
}

/// Parse `a_2 a_1-a_3 a_2^{-1} t_1`: `a_i` braids strands `i`, `i+1`
/// (1-based), `t_i` twists strand `i`; `^{-1}` inverts; `-` joins letters
/// drawn at the same height (they commute and are read left to right).
pub fn parse_word(text: &str) -> Result<Vec<Letter>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |at: usize, msg: &str| Error::Parse(format!("col {}: {msg} in `{text}`", at + 1));
    while i < bytes.len() {
        let ch = bytes[i];
        if ch.is_ascii_whitespace() || ch == b'-' {
            i += 1;
            continue;
        }
        let kind = match ch {
            b'a' => 'a',
            b't' => 't',
            _ => return Err(err(i, "expected `a_` or `t_`")),
        };
        if bytes.get(i + 1) != Some(&b'_') {
            return Err(err(i + 1, "expected `_`"));
        }
        i += 2;
        let braced = bytes.get(i) == Some(&b'{');
        if braced {
            i += 1;
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let n: usize = text[start..i].parse().map_err(|_| err(start, "expected a strand number"))?;
        if braced {
            if bytes.get(i) != Some(&b'}') {
                return Err(err(i, "expected `}`"));
            }
            i += 1;
        }
        if n == 0 {
            return Err(err(start, "strands are numbered from 1"));
        }
        let mut sign = Sign::Pos;
        if text[i..].starts_with("^{-1}") {
            sign = Sign::Neg;
            i += 5;
        } else if text[i..].starts_with("^{1}") {
            i += 4;
        }
        out.push(if kind == 'a' { Letter::Braid(n - 1, sign) } else { Letter::Twist(n - 1, sign) });
    }
    Ok(out)
}

pub fn evaluate_word(ev: &Evaluator<'_>, word: &[Letter], strands: &[Strand]) -> Result<Morphism> {
    let mut b = Builder::new(strands);
    for l in word {
        let (p, width) = match l {
            Letter::Braid(p, _) => (*p, 2),
            Letter::Twist(p, _) => (*p, 1),
        };
        if p + width > strands.len() {
            return Err(Error::Position(format!("letter at strand {} on {} strands", p + 1, strands.len())));
        }
        b = match l {
            Letter::Braid(p, s) => b.braid(*p, *s),
            Letter::Twist(p, s) => b.twist(*p, *s),
        };
    }
    ev.run(b)
}

/// The transcribed pentagon pictures, one `name lhs|rhs: word` per line.
pub const TRANSCRIBED: &str = include_str!("../../tests/data/pentagon_words.txt");

/// `(name, lhs, rhs)` from a transcription file.
pub fn transcriptions(text: &str) -> Result<Vec<(String, Vec<Letter>, Vec<Letter>)>> {
    let mut out: Vec<(String, Option<Vec<Letter>>, Option<Vec<Letter>>)> = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (head, word) =
            line.split_once(':').ok_or_else(|| Error::Parse(format!("line {}: missing `:`", n + 1)))?;
        let mut it = head.split_whitespace();
        let (Some(name), Some(side), None) = (it.next(), it.next(), it.next()) else {
            return Err(Error::Parse(format!("line {}: expected `name lhs|rhs:`", n + 1)));
        };
        let word = parse_word(word)?;
        let idx = match out.iter().position(|e| e.0 == name) {
            Some(i) => i,
            None => {
                out.push((name.into(), None, None));
                out.len() - 1
            }
        };
        match side {
            "lhs" => out[idx].1 = Some(word),
            "rhs" => out[idx].2 = Some(word),
            _ => return Err(Error::Parse(format!("line {}: side must be lhs or rhs", n + 1))),
        }
    }
    out.into_iter()
        .map(|(n, l, r)| match (l, r) {
            (Some(l), Some(r)) => Ok((n, l, r)),
            _ => Err(Error::Parse(format!("`{n}` needs both sides"))),
        })
        .collect()
}

/// Default cap on the number of label tuples a suite may enumerate.
pub const DEFAULT_TUPLE_CAP: usize = 1_000_000;

fn tuples(ev: &Evaluator<'_>, n: usize, cap: usize) -> Result<Vec<Vec<Strand>>> {
    let r = ev.cat().rank();
    let count = r.checked_pow(n as u32).unwrap_or(usize::MAX);
    if count > cap {
        return Err(Error::Size(format!("{r}^{n} = {count} label tuples exceed the cap {cap}")));
    }
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<Strand>| {
                (0..r).map(move |l| {
                    let mut q = p.clone();
                    q.push(Strand::up(l));
                    q
                })
            })
            .collect();
    }
    Ok(out)
}

fn tuple_name(ev: &Evaluator<'_>, t: &[Strand]) -> String {
    let l: Vec<&str> = t.iter().map(|s| ev.cat().label(s.label)).collect();
    format!("({})", l.join(","))
}

/// Max distance between two sides over all label tuples.
fn sweep(
    ev: &Evaluator<'_>,
    n: usize,
    cap: usize,
    mut pair: impl FnMut(&[Strand]) -> Result<(Morphism, Morphism)>,
) -> Result<(f64, String)> {
    let mut worst = (0.0f64, String::new());
    for t in tuples(ev, n, cap)? {
        let (a, b) = pair(&t)?;
        let d = a.distance(&b);
        if d > worst.0 || worst.1.is_empty() {
            worst = (d.max(worst.0), if d >= worst.0 { tuple_name(ev, &t) } else { worst.1 });
        }
    }
    Ok(worst)
}

fn require_modular(ev: &Evaluator<'_>) -> Result<()> {
    if ev.cat().is_modular() {
        Ok(())
    } else {
        Err(Error::NotModular(ev.cat().name().into()))
    }
}

/// With every `θ = 1` the twist perturbations are vacuous.
fn twists_trivial(ev: &Evaluator<'_>) -> bool {
    let tol = ev.tolerance();
    ev.cat().thetas().iter().all(|t| (t - crate::c(1.0, 0.0)).norm() < tol)
}

/// The six module-functor pentagons, derived from the functor data and also
/// evaluated from the transcribed words; the two must agree side by side.
/// A trivialized twist in `p` must break its pentagon (unless all twists are 1).
pub fn module_pentagon_suite(ev: &Evaluator<'_>, tol: f64, cap: usize) -> Result<Report> {
    require_modular(ev)?;
    let mut rep = Report::new("pentagons", ev.cat().name());
    let words = transcriptions(TRANSCRIBED)?;
    for f in Functor::ALL {
        let (lhs, rhs) = functor_pentagon(f, false);
        let (w, at) = sweep(ev, 5, cap, |t| Ok((lhs.evaluate(ev, t)?, rhs.evaluate(ev, t)?)))?;
        rep.record(&format!("{}/pentagon", f.name()), w, &at, tol);
        let Some((_, wl, wr)) = words.iter().find(|e| e.0 == f.name()) else {
            rep.record_error(
                &format!("{}/transcribed", f.name()),
                &Error::MissingData(format!("no transcription for {}", f.name())),
            );
            continue;
        };
        let (w, at) = sweep(ev, 5, cap, |t| Ok((evaluate_word(ev, wl, t)?, evaluate_word(ev, wr, t)?)))?;
        rep.record(&format!("{}/transcribed", f.name()), w, &at, tol);
        let (rl, rr) = (reduced(f, &lhs), reduced(f, &rhs));
        let (wa, ata) = sweep(ev, 5, cap, |t| Ok((rl.evaluate(ev, t)?, evaluate_word(ev, wl, t)?)))?;
        let (wb, atb) = sweep(ev, 5, cap, |t| Ok((rr.evaluate(ev, t)?, evaluate_word(ev, wr, t)?)))?;
        let (w, at) = if wa >= wb { (wa, format!("lhs {ata}")) } else { (wb, format!("rhs {atb}")) };
        rep.record(&format!("{}/transcription_matches", f.name()), w, &at, tol);
    }
    let (lhs, rhs) = functor_pentagon(Functor::P, true);
    let (w, at) = sweep(ev, 5, cap, |t| Ok((lhs.evaluate(ev, t)?, rhs.evaluate(ev, t)?)))?;
    let r = crate::evaluator::Residual { max_abs: w, relative: w, worst: at };
    if twists_trivial(ev) {
        // the perturbation changes nothing, so the identity must still hold
        rep.record_residual("p/trivial_twist_coincides", &r, tol);
    } else {
        rep.record_failure("p/trivial_twist_breaks", &r);
    }
    Ok(rep)
}

/// The module pentagon for all twelve `P^{xy,ε}` and the mixed-sign
/// `ψ^{23}`/`ψ^{32}` (which satisfy it too); a twisted `ψ^{12}` must fail it.
pub fn module_axiom_suite(ev: &Evaluator<'_>, tol: f64, cap: usize) -> Result<Report> {
    require_modular(ev)?;
    let mut rep = Report::new("module_axioms", ev.cat().name());
    let mixed = [Placement::P23, Placement::P32]
        .into_iter()
        .flat_map(|p| [Sign::Pos, Sign::Neg].map(|s| ModuleVariant { mixed: true, ..ModuleVariant::new(p, s) }));
    for v in ModuleVariant::all().into_iter().chain(mixed) {
        let (lhs, rhs) = module_axiom(&v);
        let (w, at) = sweep(ev, 7, cap, |t| Ok((lhs.evaluate(ev, t)?, rhs.evaluate(ev, t)?)))?;
        rep.record(&format!("{}/pentagon", v.name()), w, &at, tol);
    }
    let twisted = ModuleVariant { twisted: true, ..ModuleVariant::new(Placement::P12, Sign::Pos) };
    let (lhs, rhs) = module_axiom(&twisted);
    let (w, at) = sweep(ev, 7, cap, |t| Ok((lhs.evaluate(ev, t)?, rhs.evaluate(ev, t)?)))?;
    let r = crate::evaluator::Residual { max_abs: w, relative: w, worst: at };
    if twists_trivial(ev) {
        rep.record_residual(&format!("{}/pentagon", twisted.name()), &r, tol);
    } else {
        rep.record_failure(&format!("{}/pentagon_breaks", twisted.name()), &r);
    }
    Ok(rep)
}

use alloc::format;
use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;

use super::{word_to_string, Evaluator, Morphism, ObjectWord, Strand, VertexId};
use crate::error::{Error, Result};
use crate::{c, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

/// One generator of a slice.  Wire consumption: `Id`, `Twist` and 1-input
/// vertices take one strand, `Braid`/`Cap` two, `Cup` none.
#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    Id(Strand),
    /// `+`: `c_{x,y}` on `(x, y)`.  `−`: `c⁻¹_{y,x}` on `(x, y)`.
    Braid(Sign),
    Twist(Sign),
    /// Argument is the left output leg: `Cup(x↓) = coev_x`, `Cup(x↑) = c̃oev_x`.
    Cup(Strand),
    /// Argument is the left input leg: `Cap(x↑) = ev_x`, `Cap(x↓) = ẽv_x`.
    Cap(Strand),
    Vertex(VertexId),
    /// An already evaluated morphism placed as a box.
    Local(Rc<Morphism>),
}

impl Generator {
    fn inputs(&self) -> usize {
        match self {
            Generator::Id(_) | Generator::Twist(_) => 1,
            Generator::Braid(_) => 2,
            Generator::Cup(_) => 0,
            Generator::Cap(_) => 2,
            Generator::Vertex(v) => v.signature().0.len(),
            Generator::Local(m) => m.source.len(),
        }
    }

    /// Output strands given the consumed input strands (no type checks).
    fn outputs(&self, ins: &[Strand]) -> Vec<Strand> {
        match self {
            Generator::Id(s) => vec![*s],
            Generator::Twist(_) => ins.to_vec(),
            Generator::Braid(_) => vec![ins[1], ins[0]],
            Generator::Cup(s) => vec![*s, s.bar()],
            Generator::Cap(_) => vec![],
            Generator::Vertex(v) => v.signature().1,
            Generator::Local(m) => m.target.clone(),
        }
    }
}

/// A planar diagram as slices read bottom to top; each slice covers the whole
/// current word from left to right.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DiagramProgram {
    pub slices: Vec<Vec<Generator>>,
}

impl DiagramProgram {
    /// Word produced from `source`, or `None` if the slices do not fit.
    pub fn output_word(&self, source: &[Strand]) -> Option<ObjectWord> {
        let mut w = source.to_vec();
        for slice in &self.slices {
            let mut next = Vec::new();
            let mut pos = 0;
            for g in slice {
                let k = g.inputs();
                if pos + k > w.len() {
                    return None;
                }
                next.extend(g.outputs(&w[pos..pos + k]));
                pos += k;
            }
            if pos != w.len() {
                return None;
            }
            w = next;
        }
        Some(w)
    }

    /// `other ∘ self`: the slices of `other` stacked on top.
    pub fn then(&self, other: &DiagramProgram) -> DiagramProgram {
        let mut slices = self.slices.clone();
        slices.extend(other.slices.iter().cloned());
        DiagramProgram { slices }
    }

    /// Inverse of a program built from identities, braids and twists.
    pub fn inverse(&self) -> Option<DiagramProgram> {
        let mut slices = Vec::with_capacity(self.slices.len());
        for s in self.slices.iter().rev() {
            let mut out = Vec::with_capacity(s.len());
            for g in s {
                out.push(match g {
                    Generator::Id(x) => Generator::Id(*x),
                    Generator::Braid(sg) => Generator::Braid(sg.flip()),
                    Generator::Twist(sg) => Generator::Twist(sg.flip()),
                    _ => return None,
                });
            }
            slices.push(out);
        }
        Some(DiagramProgram { slices })
    }

    /// Number of non-identity generators.
    pub fn size(&self) -> usize {
        self.slices.iter().flatten().filter(|g| !matches!(g, Generator::Id(_))).count()
    }
}

/// Builds a program one generator per slice, filling in identities.
#[derive(Debug, Clone)]
pub struct Builder {
    source: ObjectWord,
    word: ObjectWord,
    slices: Vec<Vec<Generator>>,
}

impl Builder {
    pub fn new(source: &[Strand]) -> Builder {
        Builder { source: source.to_vec(), word: source.to_vec(), slices: Vec::new() }
    }

    pub fn source(&self) -> &[Strand] {
        &self.source
    }

    /// Current top word.
    pub fn word(&self) -> &[Strand] {
        &self.word
    }

    pub fn place(mut self, pos: usize, g: Generator) -> Builder {
        let k = g.inputs();
        assert!(pos + k <= self.word.len(), "generator at {pos} overruns a word of {}", self.word.len());
        let outs = g.outputs(&self.word[pos..pos + k]);
        let mut slice: Vec<Generator> = self.word[..pos].iter().map(|s| Generator::Id(*s)).collect();
        slice.push(g);
        slice.extend(self.word[pos + k..].iter().map(|s| Generator::Id(*s)));
        let mut next = self.word[..pos].to_vec();
        next.extend(outs);
        next.extend_from_slice(&self.word[pos + k..]);
        self.word = next;
        self.slices.push(slice);
        self
    }

    pub fn braid(self, pos: usize, sign: Sign) -> Builder {
        self.place(pos, Generator::Braid(sign))
    }
    pub fn twist(self, pos: usize, sign: Sign) -> Builder {
        self.place(pos, Generator::Twist(sign))
    }
    pub fn cup(self, pos: usize, left: Strand) -> Builder {
        self.place(pos, Generator::Cup(left))
    }
    pub fn cap(self, pos: usize) -> Builder {
        let s = self.word[pos];
        self.place(pos, Generator::Cap(s))
    }
    pub fn vertex(self, pos: usize, v: VertexId) -> Builder {
        self.place(pos, Generator::Vertex(v))
    }
    pub fn local(self, pos: usize, m: Rc<Morphism>) -> Builder {
        self.place(pos, Generator::Local(m))
    }

    /// `c_{U,V}` (`Pos`) or `c⁻¹_{V,U}` (`Neg`) for `U = word[pos..pos+p]`, `V` the next `q` strands.
    pub fn braid_block(mut self, pos: usize, p: usize, q: usize, sign: Sign) -> Builder {
        for i in (0..p).rev() {
            for j in 0..q {
                self = self.braid(pos + i + j, sign);
            }
        }
        self
    }

    /// Twist of the `n` strands starting at `pos`, expanded through
    /// `θ_{A⊗B} = c_{B,A} ∘ c_{A,B} ∘ (θ_A ⊗ θ_B)`.
    pub fn twist_block(self, pos: usize, n: usize, sign: Sign) -> Builder {
        match sign {
            Sign::Pos => self.twist_pos(pos, n),
            Sign::Neg => {
                let w = self.word[pos..pos + n].to_vec();
                let inv = Builder::new(&w).twist_pos(0, n).build().inverse().expect("invertible");
                self.embed(pos, &inv)
            }
        }
    }

    fn twist_pos(mut self, pos: usize, n: usize) -> Builder {
        if n == 0 {
            return self;
        }
        if n == 1 {
            return self.twist(pos, Sign::Pos);
        }
        self = self.twist_pos(pos + 1, n - 1).twist(pos, Sign::Pos);
        self.braid_block(pos, 1, n - 1, Sign::Pos).braid_block(pos, n - 1, 1, Sign::Pos)
    }

    /// Apply a program acting on `word[pos..pos+len]`, where `len` is the
    /// length of the program's source, leaving other strands alone.
    pub fn embed(mut self, pos: usize, prog: &DiagramProgram) -> Builder {
        for slice in &prog.slices {
            let mut consumed = 0;
            for g in slice {
                consumed += g.inputs();
            }
            let mut s: Vec<Generator> = self.word[..pos].iter().map(|x| Generator::Id(*x)).collect();
            s.extend(slice.iter().cloned());
            s.extend(self.word[pos + consumed..].iter().map(|x| Generator::Id(*x)));
            let mut mid = Vec::new();
            let mut at = pos;
            for g in slice {
                let k = g.inputs();
                mid.extend(g.outputs(&self.word[at..at + k]));
                at += k;
            }
            let mut next = self.word[..pos].to_vec();
            next.extend(mid);
            next.extend_from_slice(&self.word[pos + consumed..]);
            self.word = next;
            self.slices.push(s);
        }
        self
    }

    pub fn build(self) -> DiagramProgram {
        DiagramProgram { slices: self.slices }
    }
}

impl Evaluator<'_> {
    /// Morphism realizing a single generator on the given input strands.
    pub fn generator_morphism(&self, g: &Generator, ins: &[Strand]) -> Result<Rc<Morphism>> {
        let cat = self.cat();
        let one = |t: usize, z: C64| {
            let mut b = alloc::collections::BTreeMap::new();
            b.insert(t, crate::Mat::from_element(1, 1, z));
            b
        };
        Ok(Rc::new(match g {
            Generator::Id(s) => Morphism::identity(self, &[*s]),
            Generator::Braid(sign) => {
                let (x, y) = (ins[0], ins[1]);
                let (ox, oy) = (x.obj(cat), y.obj(cat));
                let mut blocks = alloc::collections::BTreeMap::new();
                for h in cat.fusion_channels(ox, oy) {
                    let m = match sign {
                        Sign::Pos => cat.r_block(ox, oy, h)?.mat.clone(),
                        Sign::Neg => cat.r_block(oy, ox, h)?.inv.clone(),
                    };
                    blocks.insert(h, m);
                }
                Morphism { source: vec![x, y], target: vec![y, x], blocks }
            }
            Generator::Twist(sign) => {
                let x = ins[0];
                let th = cat.theta(x.obj(cat));
                let z = match sign {
                    Sign::Pos => th,
                    Sign::Neg => th.inv(),
                };
                Morphism { source: vec![x], target: vec![x], blocks: one(x.obj(cat), z) }
            }
            Generator::Cup(s) => {
                let z = if s.up { c(cat.qdim(s.label), 0.0) } else { cat.f_unit_entry(s.label).inv() };
                Morphism { source: vec![], target: vec![*s, s.bar()], blocks: one(0, z) }
            }
            Generator::Cap(s) => {
                let z = if s.up { c(1.0, 0.0) } else { cat.f_unit_entry(s.label) * cat.qdim(s.label) };
                Morphism { source: vec![*s, s.bar()], target: vec![], blocks: one(0, z) }
            }
            Generator::Vertex(v) => return self.vertex_morphism(v),
            Generator::Local(m) => return Ok(m.clone()),
        }))
    }

    /// `prog ∘ m`.
    pub fn apply(&self, m: &Morphism, prog: &DiagramProgram) -> Result<Morphism> {
        let mut cur = m.clone();
        for (si, slice) in prog.slices.iter().enumerate() {
            let mut pos = 0;
            for g in slice {
                let k = g.inputs();
                if pos + k > cur.target.len() {
                    return Err(Error::TypeMismatch {
                        slice: si,
                        msg: format!("slice needs more than the {} available strands", cur.target.len()),
                    });
                }
                if let Generator::Id(s) = g {
                    if cur.target[pos] != *s {
                        return Err(Error::TypeMismatch {
                            slice: si,
                            msg: format!(
                                "id({}) applied to {}",
                                word_to_string(self.cat(), &[*s]),
                                word_to_string(self.cat(), &cur.target[pos..pos + 1])
                            ),
                        });
                    }
                    pos += 1;
                    continue;
                }
                if let Generator::Cap(s) = g {
                    if cur.target[pos..pos + 2] != [*s, s.bar()] {
                        return Err(Error::TypeMismatch {
                            slice: si,
                            msg: format!(
                                "cap({}) applied to {}",
                                word_to_string(self.cat(), &[*s]),
                                word_to_string(self.cat(), &cur.target[pos..pos + 2])
                            ),
                        });
                    }
                }
                let gm = self.generator_morphism(g, &cur.target[pos..pos + k])?;
                cur = cur.then_at(self, pos, &gm, si)?;
                pos += gm.target.len();
            }
            if pos != cur.target.len() {
                return Err(Error::TypeMismatch {
                    slice: si,
                    msg: format!("slice covers {pos} of {} strands", cur.target.len()),
                });
            }
        }
        Ok(cur)
    }

    /// Evaluate a program on `source`.
    pub fn evaluate(&self, prog: &DiagramProgram, source: &[Strand]) -> Result<Morphism> {
        self.check_word(source)?;
        self.apply(&Morphism::identity(self, source), prog)
    }

    /// Evaluate and check the resulting target word.
    pub fn evaluate_typed(&self, prog: &DiagramProgram, source: &[Strand], target: &[Strand]) -> Result<Morphism> {
        let m = self.evaluate(prog, source)?;
        if m.target != target {
            return Err(Error::TypeMismatch {
                slice: prog.slices.len(),
                msg: format!(
                    "diagram ends at [{}], expected [{}]",
                    word_to_string(self.cat(), &m.target),
                    word_to_string(self.cat(), target)
                ),
            });
        }
        Ok(m)
    }

    /// Evaluate a builder's program.
    pub fn run(&self, b: Builder) -> Result<Morphism> {
        let src = b.source().to_vec();
        self.evaluate(&b.build(), &src)
    }
}

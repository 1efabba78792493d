//! Hom spaces in fusion-tree bases and evaluation of planar string diagrams.
//!
//! A *word* is a list of oriented strands.  A basis of `Hom(W, t)` for simple
//! `t` is the set of left-associated merge trees; a morphism `f: S → W` is
//! stored block-wise per total `t` as the matrix `M_t` with
//! `β ∘ f = Σ_α M_t[β][α] α` (β a tree on `W`, α a tree on `S`), so that
//! composition is matrix multiplication.

mod block;
mod identities;
mod moves;
mod morphism;
mod program;
mod recouple;
mod vertex;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use serde::Serialize;

use crate::catdata::FusionCategoryData;
use crate::error::{Error, Result};

pub use identities::identities_suite;
pub use block::{BlockMorphism, MultiWord, Residual, SumObject, Summand, TensorSum};
pub use morphism::Morphism;
pub use moves::FMove;
pub use program::{Builder, DiagramProgram, Generator, Sign};
pub use vertex::{Variant, VertexId};

use recouple::QData;

/// An oriented strand; a downward strand carries the dual object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Strand {
    pub label: usize,
    pub up: bool,
}

impl Strand {
    pub const fn up(label: usize) -> Strand {
        Strand { label, up: true }
    }
    pub const fn down(label: usize) -> Strand {
        Strand { label, up: false }
    }
    /// Same label, opposite orientation.
    pub const fn bar(self) -> Strand {
        Strand { label: self.label, up: !self.up }
    }
    /// The simple object carried by the strand.
    pub fn obj(self, cat: &FusionCategoryData) -> usize {
        if self.up {
            self.label
        } else {
            cat.dual(self.label)
        }
    }
}

pub type ObjectWord = Vec<Strand>;

/// Render a word as `tau tau*` style text.
pub fn word_to_string(cat: &FusionCategoryData, w: &[Strand]) -> String {
    if w.is_empty() {
        return "()".into();
    }
    let parts: Vec<String> = w
        .iter()
        .map(|s| format!("{}{}", cat.label(s.label), if s.up { "" } else { "*" }))
        .collect();
    parts.join(" ")
}

/// A left-associated merge tree.  Entry `j` is `(e_{j+1}, μ_{j+1})`: the
/// channel after fusing the first `j+1` strands and the multiplicity index of
/// the vertex `(e_j, o_{j+1} → e_{j+1})`, with `e_0` the unit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FusionTree {
    pub entries: Vec<(usize, usize)>,
}

impl FusionTree {
    pub fn root(&self) -> usize {
        self.entries.last().map_or(0, |e| e.0)
    }
    pub fn channels(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|e| e.0)
    }
    pub fn multiplicities(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|e| e.1)
    }
}

/// An ordered tree basis with a reverse index.
#[derive(Debug)]
pub struct Basis {
    pub trees: Vec<FusionTree>,
    index: BTreeMap<Vec<(usize, usize)>, usize>,
}

impl Basis {
    fn new(trees: Vec<FusionTree>) -> Basis {
        let index = trees.iter().enumerate().map(|(i, t)| (t.entries.clone(), i)).collect();
        Basis { trees, index }
    }
    pub fn len(&self) -> usize {
        self.trees.len()
    }
    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }
    pub fn position(&self, entries: &[(usize, usize)]) -> Option<usize> {
        self.index.get(entries).copied()
    }
}

/// Trees starting from channel `start` over `objs`, ending at `t`, in
/// lexicographic order of their entries.
pub(crate) fn trees_from(cat: &FusionCategoryData, start: usize, objs: &[usize], t: usize) -> Vec<FusionTree> {
    let n = objs.len();
    let r = cat.rank();
    // reach[j][c]: from channel c after j strands, t is still reachable.
    let mut reach = vec![vec![false; r]; n + 1];
    reach[n][t] = true;
    for j in (0..n).rev() {
        for c in 0..r {
            reach[j][c] = (0..r).any(|e| reach[j + 1][e] && cat.n(c, objs[j], e) > 0);
        }
    }
    let mut out = Vec::new();
    if !reach[0][start] {
        return out;
    }
    let mut cur: Vec<(usize, usize)> = Vec::with_capacity(n);
    fn dfs(
        cat: &FusionCategoryData,
        objs: &[usize],
        reach: &[Vec<bool>],
        prev: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<FusionTree>,
    ) {
        let j = cur.len();
        if j == objs.len() {
            out.push(FusionTree { entries: cur.clone() });
            return;
        }
        for e in 0..cat.rank() {
            if !reach[j + 1][e] {
                continue;
            }
            for m in 0..cat.n(prev, objs[j], e) {
                cur.push((e, m));
                dfs(cat, objs, reach, e, cur, out);
                cur.pop();
            }
        }
    }
    dfs(cat, objs, &reach, start, &mut cur, &mut out);
    out
}

/// Evaluation context: the category plus memoized bases, recouplings and vertices.
pub struct Evaluator<'a> {
    cat: &'a FusionCategoryData,
    bases: RefCell<BTreeMap<(Vec<usize>, usize), Rc<Basis>>>,
    qdata: RefCell<BTreeMap<(usize, Vec<usize>), Rc<QData>>>,
    vertices: RefCell<BTreeMap<VertexId, Rc<Morphism>>>,
}

impl<'a> Evaluator<'a> {
    pub fn new(cat: &'a FusionCategoryData) -> Self {
        Evaluator {
            cat,
            bases: RefCell::new(BTreeMap::new()),
            qdata: RefCell::new(BTreeMap::new()),
            vertices: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn cat(&self) -> &'a FusionCategoryData {
        self.cat
    }

    pub fn tolerance(&self) -> f64 {
        self.cat.tolerance()
    }

    pub fn objs(&self, w: &[Strand]) -> Vec<usize> {
        w.iter().map(|s| s.obj(self.cat)).collect()
    }

    pub(crate) fn check_word(&self, w: &[Strand]) -> Result<()> {
        match w.iter().find(|s| s.label >= self.cat.rank()) {
            Some(s) => Err(Error::UnknownLabel(format!("#{}", s.label))),
            None => Ok(()),
        }
    }

    /// Basis of `Hom(objs, t)` as merge trees.
    pub fn basis_objs(&self, objs: &[usize], t: usize) -> Rc<Basis> {
        let key = (objs.to_vec(), t);
        if let Some(b) = self.bases.borrow().get(&key) {
            return b.clone();
        }
        let b = Rc::new(Basis::new(trees_from(self.cat, 0, objs, t)));
        self.bases.borrow_mut().insert(key, b.clone());
        b
    }

    pub fn basis(&self, w: &[Strand], t: usize) -> Rc<Basis> {
        self.basis_objs(&self.objs(w), t)
    }

    /// Deterministic lexicographic list of trees of `word` with root `t`.
    pub fn enumerate_basis(&self, w: &[Strand], t: usize) -> Result<Vec<FusionTree>> {
        self.check_word(w)?;
        if t >= self.cat.rank() {
            return Err(Error::UnknownLabel(format!("#{t}")));
        }
        Ok(self.basis(w, t).trees.clone())
    }

    /// Totals `t` with a nonempty basis.
    pub fn roots(&self, w: &[Strand]) -> Vec<usize> {
        let r = self.cat.rank();
        let mut cur = vec![false; r];
        cur[0] = true;
        for o in self.objs(w) {
            let mut next = vec![false; r];
            for c in (0..r).filter(|&c| cur[c]) {
                for e in self.cat.fusion_channels(c, o) {
                    next[e] = true;
                }
            }
            cur = next;
        }
        (0..r).filter(|&t| cur[t]).collect()
    }

    /// `dim Hom(source, target)`.
    pub fn hom_dim(&self, source: &[Strand], target: &[Strand]) -> Result<usize> {
        self.check_word(source)?;
        self.check_word(target)?;
        Ok(self
            .roots(source)
            .into_iter()
            .map(|t| self.basis(source, t).len() * self.basis(target, t).len())
            .sum())
    }

    pub(crate) fn qdata(&self, start: usize, objs: &[usize]) -> Rc<QData> {
        let key = (start, objs.to_vec());
        if let Some(q) = self.qdata.borrow().get(&key) {
            return q.clone();
        }
        let q = Rc::new(QData::build(self, start, objs));
        self.qdata.borrow_mut().insert(key, q.clone());
        q
    }
}

#[cfg(test)]
mod tests;

//! Morphisms of `C^{⊠n}` between formal direct sums.
//!
//! A block between two summands is a [`TensorSum`]: a sum of pure tensors of
//! per-factor [`Morphism`]s.  Dense Kronecker matrices are only formed when
//! blocks are compared.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::Serialize;

use super::{Builder, DiagramProgram, Evaluator, Morphism, ObjectWord, Sign};
use crate::catdata::max_abs;
use crate::error::{Error, Result};
use crate::{c, Mat, C64};

/// One word per Deligne factor.
pub type MultiWord = Vec<ObjectWord>;

#[derive(Debug, Clone, PartialEq)]
pub struct Summand {
    pub name: String,
    pub words: MultiWord,
}

/// A formal direct sum of ⊠-tuples of words.
#[derive(Debug, Clone, PartialEq)]
pub struct SumObject {
    pub factors: usize,
    pub summands: Vec<Summand>,
}

impl SumObject {
    pub fn new(factors: usize, summands: Vec<Summand>) -> Result<SumObject> {
        if summands.iter().any(|s| s.words.len() != factors) {
            return Err(Error::ShapeMismatch(format!("every summand needs {factors} factor words")));
        }
        Ok(SumObject { factors, summands })
    }

    /// The monoidal unit of `C^{⊠n}`.
    pub fn unit(factors: usize) -> SumObject {
        SumObject { factors, summands: vec![Summand { name: "1".into(), words: vec![Vec::new(); factors] }] }
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Summand `s·|other| + t` is the concatenation of `s` and `t` factor by factor.
    pub fn tensor(&self, other: &SumObject) -> SumObject {
        assert_eq!(self.factors, other.factors, "tensoring objects of different Deligne powers");
        let mut summands = Vec::with_capacity(self.len() * other.len());
        for a in &self.summands {
            for b in &other.summands {
                let words = a
                    .words
                    .iter()
                    .zip(&b.words)
                    .map(|(x, y)| {
                        let mut w = x.clone();
                        w.extend_from_slice(y);
                        w
                    })
                    .collect();
                summands.push(Summand { name: format!("{}⊗{}", a.name, b.name), words });
            }
        }
        SumObject { factors: self.factors, summands }
    }
}

/// `Σ_r ⊗_m terms[r][m]`, all terms sharing the source and target multiwords.
#[derive(Debug, Clone)]
pub struct TensorSum {
    pub source: MultiWord,
    pub target: MultiWord,
    pub terms: Vec<Vec<Morphism>>,
}

impl TensorSum {
    pub fn zero(source: MultiWord, target: MultiWord) -> TensorSum {
        TensorSum { source, target, terms: Vec::new() }
    }

    pub fn pure(factors: Vec<Morphism>) -> TensorSum {
        TensorSum {
            source: factors.iter().map(|m| m.source.clone()).collect(),
            target: factors.iter().map(|m| m.target.clone()).collect(),
            terms: vec![factors],
        }
    }

    pub fn identity(ev: &Evaluator<'_>, w: &MultiWord) -> TensorSum {
        TensorSum::pure(w.iter().map(|x| Morphism::identity(ev, x)).collect())
    }

    /// Evaluate one program per factor.
    pub fn evaluate(ev: &Evaluator<'_>, progs: &[DiagramProgram], source: &MultiWord) -> Result<TensorSum> {
        if progs.len() != source.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} factor programs for {} factors",
                progs.len(),
                source.len()
            )));
        }
        let ms = progs.iter().zip(source).map(|(p, w)| ev.evaluate(p, w)).collect::<Result<Vec<_>>>()?;
        Ok(TensorSum::pure(ms))
    }

    /// Evaluate one builder per factor.
    pub fn run(ev: &Evaluator<'_>, builders: Vec<Builder>) -> Result<TensorSum> {
        let ms = builders.into_iter().map(|b| ev.run(b)).collect::<Result<Vec<_>>>()?;
        Ok(TensorSum::pure(ms))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(mut self, z: C64) -> TensorSum {
        for t in &mut self.terms {
            t[0] = t[0].clone().scale(z);
        }
        self
    }

    pub fn add_assign(&mut self, other: TensorSum) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::ShapeMismatch("adding blocks with different shapes".into()));
        }
        self.terms.extend(other.terms);
        Ok(())
    }

    /// Drop terms with a vanishing factor.
    fn prune(mut self) -> TensorSum {
        self.terms.retain(|t| t.iter().all(|m| m.blocks.values().any(|b| b.iter().any(|z| *z != c(0.0, 0.0)))));
        self
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &TensorSum) -> Result<TensorSum> {
        if f.target != self.source {
            return Err(Error::ShapeMismatch("composing blocks with mismatched words".into()));
        }
        let mut terms = Vec::with_capacity(self.terms.len() * f.terms.len());
        for a in &self.terms {
            for b in &f.terms {
                terms.push(a.iter().zip(b).map(|(x, y)| x.compose(y)).collect::<Result<Vec<_>>>()?);
            }
        }
        Ok(TensorSum { source: f.source.clone(), target: self.target.clone(), terms }.prune())
    }

    /// In-factor juxtaposition `self ⊗ g`.
    pub fn tensor(&self, ev: &Evaluator<'_>, g: &TensorSum) -> TensorSum {
        let cat = |a: &MultiWord, b: &MultiWord| -> MultiWord {
            a.iter()
                .zip(b)
                .map(|(x, y)| {
                    let mut w = x.clone();
                    w.extend_from_slice(y);
                    w
                })
                .collect()
        };
        let mut terms = Vec::with_capacity(self.terms.len() * g.terms.len());
        for a in &self.terms {
            for b in &g.terms {
                terms.push(a.iter().zip(b).map(|(x, y)| x.tensor(ev, y)).collect());
            }
        }
        TensorSum { source: cat(&self.source, &g.source), target: cat(&self.target, &g.target), terms }.prune()
    }

    /// Dense matrices keyed by the tuple of per-factor totals.
    pub fn dense(&self, ev: &Evaluator<'_>) -> BTreeMap<Vec<usize>, Mat> {
        let mut out: BTreeMap<Vec<usize>, Mat> = BTreeMap::new();
        for term in &self.terms {
            let mut partial: Vec<(Vec<usize>, Mat)> = vec![(Vec::new(), Mat::identity(1, 1))];
            for m in term {
                let mut next = Vec::new();
                for (key, acc) in &partial {
                    for (t, b) in &m.blocks {
                        let mut k = key.clone();
                        k.push(*t);
                        next.push((k, acc.kronecker(b)));
                    }
                }
                partial = next;
            }
            for (k, m) in partial {
                match out.get_mut(&k) {
                    Some(x) => *x += m,
                    None => {
                        out.insert(k, m);
                    }
                }
            }
        }
        let _ = ev;
        out
    }
}

/// Max-entry comparison result.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Residual {
    pub max_abs: f64,
    /// Each block's difference scaled by `max(1, ‖a‖∞, ‖b‖∞)`.
    pub relative: f64,
    pub worst: String,
}

impl Residual {
    pub fn zero() -> Residual {
        Residual { max_abs: 0.0, relative: 0.0, worst: String::new() }
    }
    pub fn merge(&mut self, other: Residual) {
        if other.max_abs > self.max_abs || other.max_abs.is_nan() || (self.worst.is_empty() && !other.worst.is_empty()) {
            self.max_abs = other.max_abs;
            self.worst = other.worst;
        }
        self.relative = self.relative.max(other.relative);
    }
}

#[derive(Debug, Clone)]
pub struct BlockMorphism {
    pub source: SumObject,
    pub target: SumObject,
    /// `(source summand, target summand) → block`; absent means zero.
    pub blocks: BTreeMap<(usize, usize), TensorSum>,
}

impl BlockMorphism {
    pub fn zero(source: SumObject, target: SumObject) -> BlockMorphism {
        BlockMorphism { source, target, blocks: BTreeMap::new() }
    }

    pub fn identity(ev: &Evaluator<'_>, x: &SumObject) -> BlockMorphism {
        let blocks = (0..x.len()).map(|s| ((s, s), TensorSum::identity(ev, &x.summands[s].words))).collect();
        BlockMorphism { source: x.clone(), target: x.clone(), blocks }
    }

    /// Build block by block; `f(s, t)` returns `None` for a zero block.
    pub fn from_fn(
        source: SumObject,
        target: SumObject,
        mut f: impl FnMut(usize, usize) -> Result<Option<TensorSum>>,
    ) -> Result<BlockMorphism> {
        let mut blocks = BTreeMap::new();
        for t in 0..target.len() {
            for s in 0..source.len() {
                if let Some(b) = f(s, t)? {
                    if b.source != source.summands[s].words || b.target != target.summands[t].words {
                        return Err(Error::ShapeMismatch(format!(
                            "block ({} → {}) has the wrong words",
                            source.summands[s].name, target.summands[t].name
                        )));
                    }
                    if !b.is_zero() {
                        blocks.insert((s, t), b);
                    }
                }
            }
        }
        Ok(BlockMorphism { source, target, blocks })
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &BlockMorphism) -> Result<BlockMorphism> {
        if f.target != self.source {
            return Err(Error::ShapeMismatch("composing block morphisms with mismatched objects".into()));
        }
        let mut by_src: BTreeMap<usize, Vec<(usize, &TensorSum)>> = BTreeMap::new();
        for (&(s, t), b) in &f.blocks {
            by_src.entry(t).or_default().push((s, b));
        }
        let mut blocks: BTreeMap<(usize, usize), TensorSum> = BTreeMap::new();
        for (&(m, u), g) in &self.blocks {
            let Some(list) = by_src.get(&m) else { continue };
            for &(s, fb) in list {
                let comp = g.compose(fb)?;
                if comp.is_zero() {
                    continue;
                }
                match blocks.get_mut(&(s, u)) {
                    Some(x) => x.add_assign(comp)?,
                    None => {
                        blocks.insert((s, u), comp);
                    }
                }
            }
        }
        Ok(BlockMorphism { source: f.source.clone(), target: self.target.clone(), blocks })
    }

    pub fn tensor(&self, ev: &Evaluator<'_>, g: &BlockMorphism) -> BlockMorphism {
        let (sn, tn) = (g.source.len(), g.target.len());
        let mut blocks = BTreeMap::new();
        for (&(s1, t1), a) in &self.blocks {
            for (&(s2, t2), b) in &g.blocks {
                let blk = a.tensor(ev, b);
                if !blk.is_zero() {
                    blocks.insert((s1 * sn + s2, t1 * tn + t2), blk);
                }
            }
        }
        BlockMorphism { source: self.source.tensor(&g.source), target: self.target.tensor(&g.target), blocks }
    }

    pub fn add(&self, other: &BlockMorphism) -> Result<BlockMorphism> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::ShapeMismatch("adding block morphisms with different objects".into()));
        }
        let mut out = self.clone();
        for (k, b) in &other.blocks {
            match out.blocks.get_mut(k) {
                Some(x) => x.add_assign(b.clone())?,
                None => {
                    out.blocks.insert(*k, b.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn scale(mut self, z: C64) -> BlockMorphism {
        for b in self.blocks.values_mut() {
            *b = core::mem::replace(b, TensorSum::zero(Vec::new(), Vec::new())).scale(z);
        }
        self
    }

    /// `c_{X,Y}` (`Pos`) or `c⁻¹_{Y,X}` (`Neg`) as a morphism `X ⊗ Y → Y ⊗ X`,
    /// braiding every Deligne factor.
    pub fn braiding(ev: &Evaluator<'_>, x: &SumObject, y: &SumObject, sign: Sign) -> Result<BlockMorphism> {
        let source = x.tensor(y);
        let target = y.tensor(x);
        let (nx, ny) = (x.len(), y.len());
        let mut blocks = BTreeMap::new();
        for s in 0..nx {
            for t in 0..ny {
                let builders = (0..x.factors)
                    .map(|m| {
                        let (a, b) = (&x.summands[s].words[m], &y.summands[t].words[m]);
                        let mut w = a.clone();
                        w.extend_from_slice(b);
                        Builder::new(&w).braid_block(0, a.len(), b.len(), sign)
                    })
                    .collect();
                blocks.insert((s * ny + t, t * nx + s), TensorSum::run(ev, builders)?);
            }
        }
        Ok(BlockMorphism { source, target, blocks })
    }

    /// Dense data keyed by summand pair and total tuple.
    pub fn dense(&self, ev: &Evaluator<'_>) -> BTreeMap<(usize, usize), BTreeMap<Vec<usize>, Mat>> {
        self.blocks.iter().map(|(k, b)| (*k, b.dense(ev))).collect()
    }

    /// Entrywise max difference over all blocks.
    pub fn residual(&self, ev: &Evaluator<'_>, other: &BlockMorphism) -> Result<Residual> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::ShapeMismatch("comparing block morphisms with different objects".into()));
        }
        let (da, db) = (self.dense(ev), other.dense(ev));
        let mut res = Residual::zero();
        let mut keys: Vec<(usize, usize)> = da.keys().chain(db.keys()).copied().collect();
        keys.sort();
        keys.dedup();
        let empty = BTreeMap::new();
        for k in keys {
            let (ma, mb) = (da.get(&k).unwrap_or(&empty), db.get(&k).unwrap_or(&empty));
            let mut tk: Vec<&Vec<usize>> = ma.keys().chain(mb.keys()).collect();
            tk.sort();
            tk.dedup();
            for t in tk {
                let (a, b) = (ma.get(t), mb.get(t));
                let (d, na, nb) = match (a, b) {
                    (Some(a), Some(b)) => (max_abs(&(a - b)), max_abs(a), max_abs(b)),
                    (Some(a), None) => (max_abs(a), max_abs(a), 0.0),
                    (None, Some(b)) => (max_abs(b), 0.0, max_abs(b)),
                    (None, None) => unreachable!(),
                };
                let labels: Vec<&str> = t.iter().map(|&x| ev.cat().label(x)).collect();
                res.merge(Residual {
                    max_abs: d,
                    relative: d / na.max(nb).max(1.0),
                    worst: format!(
                        "{} → {} @ ({})",
                        self.source.summands[k.0].name,
                        self.target.summands[k.1].name,
                        labels.join(",")
                    ),
                });
            }
        }
        Ok(res)
    }

    /// Invertibility: for every tuple of totals the assembled matrix over all
    /// summands must be square with full numerical rank.
    pub fn is_invertible(&self, ev: &Evaluator<'_>) -> bool {
        let dims = |obj: &SumObject, s: usize, t: &[usize]| -> usize {
            obj.summands[s].words.iter().zip(t).map(|(w, &x)| ev.basis(w, x).len()).product()
        };
        let mut tuples: Vec<Vec<usize>> = Vec::new();
        let collect = |obj: &SumObject, out: &mut Vec<Vec<usize>>| {
            for s in &obj.summands {
                let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
                for w in &s.words {
                    let roots = ev.roots(w);
                    acc = acc
                        .into_iter()
                        .flat_map(|p| {
                            roots.iter().map(move |&r| {
                                let mut q = p.clone();
                                q.push(r);
                                q
                            })
                        })
                        .collect();
                }
                out.extend(acc);
            }
        };
        collect(&self.source, &mut tuples);
        collect(&self.target, &mut tuples);
        tuples.sort();
        tuples.dedup();
        let dense = self.dense(ev);
        for t in tuples {
            let rs: Vec<usize> = (0..self.target.len()).map(|s| dims(&self.target, s, &t)).collect();
            let cs: Vec<usize> = (0..self.source.len()).map(|s| dims(&self.source, s, &t)).collect();
            let (nr, nc) = (rs.iter().sum::<usize>(), cs.iter().sum::<usize>());
            if nr != nc {
                return false;
            }
            let mut big = Mat::zeros(nr, nc);
            let off = |v: &[usize], i: usize| v[..i].iter().sum::<usize>();
            for (&(s, u), blocks) in &dense {
                if let Some(m) = blocks.get(&t) {
                    big.view_mut((off(&rs, u), off(&cs, s)), (m.nrows(), m.ncols())).copy_from(m);
                }
            }
            if nr == 0 {
                continue;
            }
            let sv = big.singular_values();
            let smax = sv.iter().cloned().fold(0.0, f64::max);
            let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
            if !(smin > ev.tolerance() * smax.max(1.0)) {
                return false;
            }
        }
        true
    }
}

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::{word_to_string, Evaluator, ObjectWord, Strand};
use crate::catdata::max_abs;
use crate::error::{Error, Result};
use crate::{c, Mat, C64};

/// A morphism between two words of one (non-Deligne) category.
///
/// `blocks[t]` has rows indexed by trees of `target` and columns by trees of
/// `source`, both with root `t`.  Absent blocks are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Morphism {
    pub source: ObjectWord,
    pub target: ObjectWord,
    pub blocks: BTreeMap<usize, Mat>,
}

/// Local std ↔ fused change of frame for a segment of at most two strands
/// sitting between channels `E` and `g`.
struct Frame {
    /// `(h, μ, ν)`: `μ` a tree of the segment to `h`, `ν: E ⊗ h → g`.
    fused: Vec<(usize, usize, usize)>,
    phi: Mat,
    phi_inv: Mat,
}

fn frame(ev: &Evaluator<'_>, e: usize, objs: &[usize], g: usize) -> Result<Option<Frame>> {
    let cat = ev.cat();
    Ok(match objs.len() {
        0 => (e == g).then(|| Frame { fused: alloc::vec![(0, 0, 0)], phi: Mat::identity(1, 1), phi_inv: Mat::identity(1, 1) }),
        1 => {
            let n = cat.n(e, objs[0], g);
            (n > 0).then(|| Frame {
                fused: (0..n).map(|a| (objs[0], 0, a)).collect(),
                phi: Mat::identity(n, n),
                phi_inv: Mat::identity(n, n),
            })
        }
        2 => {
            let count: usize = (0..cat.rank()).map(|x| cat.n(e, objs[0], x) * cat.n(x, objs[1], g)).sum();
            if count == 0 {
                None
            } else {
                let blk = cat.f_block(e, objs[0], objs[1], g)?;
                Some(Frame { fused: blk.right.clone(), phi: blk.mat.clone(), phi_inv: blk.inv.clone() })
            }
        }
        _ => unreachable!("frames cover at most two strands"),
    })
}

/// Index of a segment's local tree inside its frame's standard basis.
fn local_index(ev: &Evaluator<'_>, e: usize, objs: &[usize], seg: &[(usize, usize)]) -> Result<usize> {
    Ok(match seg.len() {
        0 => 0,
        1 => seg[0].1,
        _ => {
            let blk = ev.cat().f_block(e, objs[0], objs[1], seg[1].0)?;
            blk.left_index((seg[0].0, seg[0].1, seg[1].1)).expect("tree channel")
        }
    })
}

impl Morphism {
    pub fn zero(source: ObjectWord, target: ObjectWord) -> Morphism {
        Morphism { source, target, blocks: BTreeMap::new() }
    }

    pub fn identity(ev: &Evaluator<'_>, w: &[Strand]) -> Morphism {
        let blocks = ev
            .roots(w)
            .into_iter()
            .map(|t| {
                let n = ev.basis(w, t).len();
                (t, Mat::identity(n, n))
            })
            .collect();
        Morphism { source: w.to_vec(), target: w.to_vec(), blocks }
    }

    /// A single vertex `(x, y) → (z)` with coordinates `w_μ` in the tree basis.
    pub fn merge(ev: &Evaluator<'_>, x: Strand, y: Strand, z: Strand, coords: &[C64]) -> Result<Morphism> {
        let cat = ev.cat();
        let (ox, oy, oz) = (x.obj(cat), y.obj(cat), z.obj(cat));
        if coords.len() != cat.n(ox, oy, oz) {
            return Err(Error::ShapeMismatch(format!(
                "vertex needs {} coordinates, got {}",
                cat.n(ox, oy, oz),
                coords.len()
            )));
        }
        let mut blocks = BTreeMap::new();
        if !coords.is_empty() {
            blocks.insert(oz, Mat::from_row_slice(1, coords.len(), coords));
        }
        Ok(Morphism { source: alloc::vec![x, y], target: alloc::vec![z], blocks })
    }

    /// A single vertex `(z) → (x, y)` with `ν_μ ∘ v = s_μ`.
    pub fn split(ev: &Evaluator<'_>, z: Strand, x: Strand, y: Strand, coords: &[C64]) -> Result<Morphism> {
        let m = Morphism::merge(ev, x, y, z, coords)?;
        Ok(Morphism {
            source: m.target,
            target: m.source,
            blocks: m.blocks.into_iter().map(|(t, b)| (t, b.transpose())).collect(),
        })
    }

    /// Merge coordinates (row of the single block) of a `(x,y) → (z)` morphism.
    pub fn merge_coords(&self, ev: &Evaluator<'_>) -> Vec<C64> {
        let oz = self.target[0].obj(ev.cat());
        let n = ev.basis(&self.source, oz).len();
        match self.blocks.get(&oz) {
            Some(b) => b.row(0).iter().copied().collect(),
            None => alloc::vec![c(0.0, 0.0); n],
        }
    }

    /// Split coordinates (column of the single block) of a `(z) → (x,y)` morphism.
    pub fn split_coords(&self, ev: &Evaluator<'_>) -> Vec<C64> {
        let oz = self.source[0].obj(ev.cat());
        let n = ev.basis(&self.target, oz).len();
        match self.blocks.get(&oz) {
            Some(b) => b.column(0).iter().copied().collect(),
            None => alloc::vec![c(0.0, 0.0); n],
        }
    }

    /// The scalar of an endomorphism of a word with a one-dimensional End
    /// (the empty word or a single strand).
    pub fn scalar(&self, ev: &Evaluator<'_>) -> Result<C64> {
        if self.source != self.target || self.source.len() > 1 {
            return Err(Error::ShapeMismatch("scalar of a morphism that is not in End(simple)".into()));
        }
        let t = self.source.first().map_or(0, |s| s.obj(ev.cat()));
        Ok(self.blocks.get(&t).map_or(c(0.0, 0.0), |b| b[(0, 0)]))
    }

    pub fn scale(mut self, z: C64) -> Morphism {
        for b in self.blocks.values_mut() {
            *b *= z;
        }
        self
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::ShapeMismatch("adding morphisms with different source/target".into()));
        }
        let mut out = self.clone();
        for (t, b) in &other.blocks {
            match out.blocks.get_mut(t) {
                Some(x) => *x += b,
                None => {
                    out.blocks.insert(*t, b.clone());
                }
            }
        }
        Ok(out)
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &Morphism) -> Result<Morphism> {
        if f.target != self.source {
            return Err(Error::ShapeMismatch(format!(
                "composing {} strands after {} strands with mismatched types",
                self.source.len(),
                f.target.len()
            )));
        }
        let mut blocks = BTreeMap::new();
        for (t, a) in &self.blocks {
            if let Some(b) = f.blocks.get(t) {
                blocks.insert(*t, a * b);
            }
        }
        Ok(Morphism { source: f.source.clone(), target: self.target.clone(), blocks })
    }

    /// Max entrywise distance to `other` (absent blocks count as zero).
    pub fn distance(&self, other: &Morphism) -> f64 {
        let mut d: f64 = 0.0;
        for (t, a) in &self.blocks {
            d = d.max(match other.blocks.get(t) {
                Some(b) => max_abs(&(a - b)),
                None => max_abs(a),
            });
        }
        for (t, b) in &other.blocks {
            if !self.blocks.contains_key(t) {
                d = d.max(max_abs(b));
            }
        }
        d
    }

    pub fn max_abs(&self) -> f64 {
        self.blocks.values().fold(0.0, |m, b| m.max(max_abs(b)))
    }

    /// Dense matrix of the whole morphism, blocks stacked in increasing `t`.
    pub fn dense_block(&self, ev: &Evaluator<'_>, t: usize) -> Mat {
        let r = ev.basis(&self.target, t).len();
        let cc = ev.basis(&self.source, t).len();
        self.blocks.get(&t).cloned().unwrap_or_else(|| Mat::zeros(r, cc))
    }

    /// `(id ⊗ g ⊗ id) ∘ self` with `g` acting on target strands `pos..pos+k`.
    pub fn then_at(&self, ev: &Evaluator<'_>, pos: usize, g: &Morphism, slice: usize) -> Result<Morphism> {
        let k = g.source.len();
        if pos + k > self.target.len() {
            return Err(Error::Position(format!(
                "generator at offset {pos} needs {k} strands, word has {}",
                self.target.len()
            )));
        }
        if self.target[pos..pos + k] != g.source[..] {
            return Err(Error::TypeMismatch {
                slice,
                msg: format!(
                    "expected [{}] at offset {pos}, found [{}]",
                    word_to_string(ev.cat(), &g.source),
                    word_to_string(ev.cat(), &self.target[pos..pos + k])
                ),
            });
        }
        if k <= 2 && g.target.len() <= 2 {
            return self.then_local(ev, pos, g);
        }
        let pre = &self.target[..pos];
        let post = &self.target[pos + k..];
        let lifted = Morphism::left_whisker(ev, pre, g).right_whisker(ev, post);
        lifted.compose(self)
    }

    fn then_local(&self, ev: &Evaluator<'_>, pos: usize, g: &Morphism) -> Result<Morphism> {
        let k = g.source.len();
        let kp = g.target.len();
        let mut new_word: ObjectWord = self.target[..pos].to_vec();
        new_word.extend_from_slice(&g.target);
        new_word.extend_from_slice(&self.target[pos + k..]);
        let in_objs = ev.objs(&g.source);
        let out_objs = ev.objs(&g.target);
        let old_objs = ev.objs(&self.target);
        let new_objs = ev.objs(&new_word);

        let mut lambdas: BTreeMap<(usize, usize), Option<Mat>> = BTreeMap::new();
        let mut lambda = |e: usize, gg: usize| -> Result<Option<Mat>> {
            if let Some(l) = lambdas.get(&(e, gg)) {
                return Ok(l.clone());
            }
            let l = match (frame(ev, e, &in_objs, gg)?, frame(ev, e, &out_objs, gg)?) {
                (Some(fi), Some(fo)) => {
                    let mut big = Mat::zeros(fo.fused.len(), fi.fused.len());
                    for (a, &(ho, mo, no)) in fo.fused.iter().enumerate() {
                        let Some(lh) = g.blocks.get(&ho) else { continue };
                        for (b, &(hi, mi, ni)) in fi.fused.iter().enumerate() {
                            if hi == ho && ni == no {
                                big[(a, b)] = lh[(mo, mi)];
                            }
                        }
                    }
                    Some(&fo.phi * big * &fi.phi_inv)
                }
                _ => None,
            };
            lambdas.insert((e, gg), l.clone());
            Ok(l)
        };

        let mut blocks = BTreeMap::new();
        for (&t, old) in &self.blocks {
            let ob = ev.basis_objs(&old_objs, t);
            let nb = ev.basis_objs(&new_objs, t);
            if nb.is_empty() {
                continue;
            }
            type Key<'k> = (&'k [(usize, usize)], &'k [(usize, usize)], usize);
            let mut groups: BTreeMap<Key<'_>, Vec<(usize, usize)>> = BTreeMap::new();
            for (i, tr) in ob.trees.iter().enumerate() {
                let en = &tr.entries;
                let e = if pos > 0 { en[pos - 1].0 } else { 0 };
                let gg = if pos + k > 0 { en[pos + k - 1].0 } else { 0 };
                let li = local_index(ev, e, &in_objs, &en[pos..pos + k])?;
                groups.entry((&en[..pos], &en[pos + k..], gg)).or_default().push((i, li));
            }
            let mut out = Mat::zeros(nb.len(), old.ncols());
            for (r, tr) in nb.trees.iter().enumerate() {
                let en = &tr.entries;
                let e = if pos > 0 { en[pos - 1].0 } else { 0 };
                let gg = if pos + kp > 0 { en[pos + kp - 1].0 } else { 0 };
                let Some(group) = groups.get(&(&en[..pos], &en[pos + kp..], gg)) else { continue };
                let Some(lam) = lambda(e, gg)? else { continue };
                let lo = local_index(ev, e, &out_objs, &en[pos..pos + kp])?;
                for &(i, li) in group {
                    let z = lam[(lo, li)];
                    if z != c(0.0, 0.0) {
                        let row = old.row(i) * z;
                        let mut dst = out.row_mut(r);
                        dst += row;
                    }
                }
            }
            blocks.insert(t, out);
        }
        Ok(Morphism { source: self.source.clone(), target: new_word, blocks })
    }

    /// `id_U ⊗ g`.
    pub fn left_whisker(ev: &Evaluator<'_>, u: &[Strand], g: &Morphism) -> Morphism {
        if u.is_empty() {
            return g.clone();
        }
        let mut source = u.to_vec();
        source.extend_from_slice(&g.source);
        let mut target = u.to_vec();
        target.extend_from_slice(&g.target);
        let (so, to) = (ev.objs(&source), ev.objs(&target));
        let (vs, vt) = (ev.objs(&g.source), ev.objs(&g.target));
        let p = u.len();
        let mut blocks = BTreeMap::new();
        let mut lam_cache: BTreeMap<(usize, usize), Mat> = BTreeMap::new();
        for t in ev.roots(&source) {
            let sb = ev.basis_objs(&so, t);
            let tb = ev.basis_objs(&to, t);
            if tb.is_empty() {
                continue;
            }
            // Λ_E = Q'_{E,V'} · (⊕_h g_h ⊗ I_ν) · Q_{E,V}^{-1}
            let mut lam = |e: usize| -> Mat {
                lam_cache
                    .entry((e, t))
                    .or_insert_with(|| {
                        let qs = ev.qdata(e, &vs);
                        let qt = ev.qdata(e, &vt);
                        let (Some(bs), Some(bt)) = (qs.blocks.get(&t), qt.blocks.get(&t)) else {
                            return Mat::zeros(0, 0);
                        };
                        let mut mid = Mat::zeros(bt.split.len(), bs.split.len());
                        for (a, &(h, w2, nu2)) in bt.split.iter().enumerate() {
                            let Some(gh) = g.blocks.get(&h) else { continue };
                            for (b, &(h1, w1, nu1)) in bs.split.iter().enumerate() {
                                if h1 == h && nu1 == nu2 {
                                    mid[(a, b)] = gh[(w2, w1)];
                                }
                            }
                        }
                        &bt.q * mid * &bs.qinv
                    })
                    .clone()
            };
            let mut groups: BTreeMap<&[(usize, usize)], Vec<usize>> = BTreeMap::new();
            for (i, tr) in sb.trees.iter().enumerate() {
                groups.entry(&tr.entries[..p]).or_default().push(i);
            }
            let mut out = Mat::zeros(tb.len(), sb.len());
            for (r, tr) in tb.trees.iter().enumerate() {
                let prefix = &tr.entries[..p];
                let Some(group) = groups.get(prefix) else { continue };
                let e = prefix[p - 1].0;
                let l = lam(e);
                if l.nrows() == 0 {
                    continue;
                }
                let qt = ev.qdata(e, &vt);
                let qs = ev.qdata(e, &vs);
                let ri = qt.blocks[&t].std.position(&tr.entries[p..]).expect("suffix tree");
                for &i in group {
                    let ci = qs.blocks[&t].std.position(&sb.trees[i].entries[p..]).expect("suffix tree");
                    out[(r, i)] = l[(ri, ci)];
                }
            }
            if out.iter().any(|z| *z != c(0.0, 0.0)) {
                blocks.insert(t, out);
            }
        }
        Morphism { source, target, blocks }
    }

    /// `self ⊗ id_V`.
    pub fn right_whisker(&self, ev: &Evaluator<'_>, v: &[Strand]) -> Morphism {
        if v.is_empty() {
            return self.clone();
        }
        let mut source = self.source.clone();
        source.extend_from_slice(v);
        let mut target = self.target.clone();
        target.extend_from_slice(v);
        let (p, pp) = (self.source.len(), self.target.len());
        let (so, to) = (ev.objs(&source), ev.objs(&target));
        let (us, ut) = (ev.objs(&self.source), ev.objs(&self.target));
        let mut blocks = BTreeMap::new();
        for t in ev.roots(&source) {
            let sb = ev.basis_objs(&so, t);
            let tb = ev.basis_objs(&to, t);
            if tb.is_empty() {
                continue;
            }
            let root = |en: &[(usize, usize)], n: usize| if n == 0 { 0 } else { en[n - 1].0 };
            let mut groups: BTreeMap<(&[(usize, usize)], usize), Vec<(usize, usize)>> = BTreeMap::new();
            for (i, tr) in sb.trees.iter().enumerate() {
                let e = root(&tr.entries, p);
                let ui = ev.basis_objs(&us, e).position(&tr.entries[..p]).expect("prefix tree");
                groups.entry((&tr.entries[p..], e)).or_default().push((i, ui));
            }
            let mut out = Mat::zeros(tb.len(), sb.len());
            let mut any = false;
            for (r, tr) in tb.trees.iter().enumerate() {
                let e = root(&tr.entries, pp);
                let Some(fe) = self.blocks.get(&e) else { continue };
                let Some(group) = groups.get(&(&tr.entries[pp..], e)) else { continue };
                let ri = ev.basis_objs(&ut, e).position(&tr.entries[..pp]).expect("prefix tree");
                for &(i, ui) in group {
                    out[(r, i)] = fe[(ri, ui)];
                    any = true;
                }
            }
            if any {
                blocks.insert(t, out);
            }
        }
        Morphism { source, target, blocks }
    }

    /// `self ⊗ g` (juxtaposition within one factor).
    pub fn tensor(&self, ev: &Evaluator<'_>, g: &Morphism) -> Morphism {
        let right = Morphism::left_whisker(ev, &self.source, g);
        let left = self.right_whisker(ev, &g.target);
        left.compose(&right).expect("whiskers compose")
    }
}

//! Recoupling of a tree that starts from a channel `E`.
//!
//! A tree on `V` starting from `E` and ending at `t` (the tail of a tree on
//! `U ⊗ V`) is rewritten as `(E ⊗ (V-tree to h))_t`, the form on which
//! `id_U ⊗ g` acts blockwise.  `q[std][split]` holds the coefficients.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{Basis, Evaluator};
use crate::{c, Mat};

type Entries = Vec<(usize, usize)>;

pub(crate) struct QBlock {
    /// Trees from `E` over `V` to `t`.
    pub std: Basis,
    /// `(h, index in basis(V, h), ν)` with `ν: E ⊗ h → t`.
    pub split: Vec<(usize, usize, usize)>,
    pub q: Mat,
    pub qinv: Mat,
}

pub(crate) struct QData {
    pub blocks: BTreeMap<usize, QBlock>,
}

struct Level {
    std: Vec<Entries>,
    split: Vec<(usize, Entries, usize)>,
    q: Mat,
}

impl QData {
    pub fn build(ev: &Evaluator<'_>, start: usize, objs: &[usize]) -> QData {
        let cat = ev.cat();
        let r = cat.rank();
        let mut levels: BTreeMap<usize, Level> = BTreeMap::new();
        levels.insert(
            start,
            Level { std: vec![Vec::new()], split: vec![(0, Vec::new(), 0)], q: Mat::identity(1, 1) },
        );
        for j in 0..objs.len() {
            let v = objs[j];
            let mut next = BTreeMap::new();
            for t in 0..r {
                let mut std = Vec::new();
                let mut src = Vec::new();
                for (&cc, lvl) in &levels {
                    for (ti, tr) in lvl.std.iter().enumerate() {
                        for m in 0..cat.n(cc, v, t) {
                            let mut e = tr.clone();
                            e.push((t, m));
                            std.push(e);
                            src.push((cc, ti, m));
                        }
                    }
                }
                if std.is_empty() {
                    continue;
                }
                let mut split = Vec::new();
                let mut split_ix = BTreeMap::new();
                for f in 0..r {
                    let nf = cat.n(start, f, t);
                    if nf == 0 {
                        continue;
                    }
                    let b = ev.basis_objs(&objs[..=j], f);
                    for tree in &b.trees {
                        for nu in 0..nf {
                            split_ix.insert((f, tree.entries.clone(), nu), split.len());
                            split.push((f, tree.entries.clone(), nu));
                        }
                    }
                }
                let mut q = Mat::zeros(std.len(), split.len());
                for (row, &(cc, ti, m)) in src.iter().enumerate() {
                    let lvl = &levels[&cc];
                    for (col, (hp, wp, nup)) in lvl.split.iter().enumerate() {
                        let z0 = lvl.q[(ti, col)];
                        if z0 == c(0.0, 0.0) {
                            continue;
                        }
                        let blk = cat.f_block(start, *hp, v, t).expect("F block for nonzero trees");
                        let li = blk.left_index((cc, *nup, m)).expect("channel");
                        for (ri, &(f, mu, nu)) in blk.right.iter().enumerate() {
                            let z = blk.mat[(li, ri)];
                            if z == c(0.0, 0.0) {
                                continue;
                            }
                            let mut w = wp.clone();
                            w.push((f, mu));
                            let col2 = split_ix[&(f, w, nu)];
                            q[(row, col2)] += z0 * z;
                        }
                    }
                }
                next.insert(t, Level { std, split, q });
            }
            levels = next;
        }
        let mut blocks = BTreeMap::new();
        for (t, lvl) in levels {
            let mut split = Vec::new();
            for (h, w, nu) in &lvl.split {
                let idx = ev.basis_objs(objs, *h).position(w).expect("tree in basis");
                split.push((*h, idx, *nu));
            }
            let qinv = lvl.q.clone().try_inverse().expect("recoupling is invertible");
            let std = Basis::new(lvl.std.into_iter().map(|entries| super::FusionTree { entries }).collect());
            blocks.insert(t, QBlock { std, split, q: lvl.q, qinv });
        }
        QData { blocks }
    }
}

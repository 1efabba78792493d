//! Elementary moves in the enumerated tree bases.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::{Builder, Evaluator, Morphism, Sign, Strand};
use crate::error::{Error, Result};
use crate::{Mat, C64};

/// Trees of a word in which the strands at `pos` and `pos + 1` are fused
/// first.  Entries have the shape of [`super::FusionTree`] entries except at
/// `pos` (`(h, μ)`: the pair fuses to `h`) and `pos + 1` (`(g, ν)`: the vertex
/// `(e_pos, h → g)`).
#[derive(Debug, Clone)]
pub struct FMove {
    pub pos: usize,
    /// Per total: the fused trees, lexicographic.
    pub fused: BTreeMap<usize, Vec<Vec<(usize, usize)>>>,
    /// Per total: `m[r][s]` is the coefficient of fused tree `r` in standard tree `s`.
    pub blocks: BTreeMap<usize, Mat>,
}

impl Evaluator<'_> {
    fn check_position(&self, w: &[Strand], pos: usize, width: usize) -> Result<()> {
        self.check_word(w)?;
        if pos + width > w.len() {
            return Err(Error::Position(format!(
                "position {pos} needs {width} strand(s) but the word has {}",
                w.len()
            )));
        }
        Ok(())
    }

    /// Recoupling of strands `pos`, `pos + 1` from left-associated to fused-first trees.
    pub fn apply_f_move(&self, w: &[Strand], pos: usize) -> Result<FMove> {
        self.check_position(w, pos, 2)?;
        let objs = self.objs(w);
        let cat = self.cat();
        let mut fused = BTreeMap::new();
        let mut blocks = BTreeMap::new();
        for t in self.roots(w) {
            let basis = self.basis_objs(&objs, t);
            // fused trees are generated from the standard ones by replacing their segment
            let mut rows: Vec<Vec<(usize, usize)>> = Vec::new();
            let mut coeffs: Vec<Vec<(Vec<(usize, usize)>, C64)>> = Vec::new();
            for tree in &basis.trees {
                let e_prev = if pos == 0 { 0 } else { tree.entries[pos - 1].0 };
                let (e, al) = tree.entries[pos];
                let (g, be) = tree.entries[pos + 1];
                let blk = cat.f_block(e_prev, objs[pos], objs[pos + 1], g)?;
                let k = blk.left_index((e, al, be)).expect("tree channel");
                let mut out = Vec::new();
                for (r, &(h, mu, nu)) in blk.right.iter().enumerate() {
                    let z = blk.mat[(k, r)];
                    let mut ft = tree.entries.clone();
                    ft[pos] = (h, mu);
                    ft[pos + 1] = (g, nu);
                    if !rows.contains(&ft) {
                        rows.push(ft.clone());
                    }
                    out.push((ft, z));
                }
                coeffs.push(out);
            }
            rows.sort();
            let mut m = Mat::zeros(rows.len(), basis.len());
            for (s, col) in coeffs.into_iter().enumerate() {
                for (ft, z) in col {
                    let r = rows.binary_search(&ft).expect("row present");
                    m[(r, s)] += z;
                }
            }
            // every fused tree is reachable, so the block is square
            debug_assert_eq!(m.nrows(), m.ncols());
            fused.insert(t, rows);
            blocks.insert(t, m);
        }
        Ok(FMove { pos, fused, blocks })
    }

    /// `c_{x,y}` on strands `pos`, `pos + 1`, as a morphism between the two words.
    pub fn apply_r_move(&self, w: &[Strand], pos: usize) -> Result<Morphism> {
        self.check_position(w, pos, 2)?;
        self.run(Builder::new(w).braid(pos, Sign::Pos))
    }

    /// `θ` on strand `pos`.
    pub fn apply_twist(&self, w: &[Strand], pos: usize) -> Result<Morphism> {
        self.check_position(w, pos, 1)?;
        self.run(Builder::new(w).twist(pos, Sign::Pos))
    }
}

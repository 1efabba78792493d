//! Pentagon and hexagon verification by rewriting labelled trees.
//!
//! A tree is a bracketed merge diagram; each move re-expresses the same
//! morphism in another tree basis.  Two move sequences starting from the same
//! tree must end at the same linear combination.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::Serialize;

use super::FusionCategoryData;
use crate::error::Result;
use crate::{c, C64};

#[derive(Debug, Clone, Serialize)]
pub struct CoherenceReport {
    pub max_residual: f64,
    /// Label tuple (and total) where the residual is largest.
    pub worst_index: String,
    pub instances: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Node {
    Leaf(usize),
    /// `(left, right, label, multiplicity)`
    Join(Box<Node>, Box<Node>, usize, usize),
}

use Node::{Join, Leaf};

impl Node {
    fn label(&self) -> usize {
        match self {
            Leaf(l) => *l,
            Join(_, _, l, _) => *l,
        }
    }
    fn join(a: Node, b: Node, l: usize, m: usize) -> Node {
        Join(Box::new(a), Box::new(b), l, m)
    }
}

type Comb = BTreeMap<Node, C64>;

#[derive(Clone, Copy)]
enum Path {
    Root,
    L,
    R,
}

#[derive(Clone, Copy)]
struct Engine<'a> {
    cat: &'a FusionCategoryData,
}

impl Engine<'_> {
    /// `((A B)_e C)_d → Σ F (A (B C)_f)_d`
    fn f_move(&self, n: &Node) -> Result<Vec<(Node, C64)>> {
        let Join(ab, cc, d, be) = n else { unreachable!("f_move on a leaf") };
        let Join(a, b, e, al) = &**ab else { unreachable!("f_move needs a left subtree") };
        let blk = self.cat.f_block(a.label(), b.label(), cc.label(), *d)?;
        let li = blk.left_index((*e, *al, *be)).expect("tree channel in F basis");
        let mut out = Vec::new();
        for (j, &(f, mu, nu)) in blk.right.iter().enumerate() {
            let z = blk.mat[(li, j)];
            if z != c(0.0, 0.0) {
                let inner = Node::join((**b).clone(), (**cc).clone(), f, mu);
                out.push((Node::join((**a).clone(), inner, *d, nu), z));
            }
        }
        Ok(out)
    }

    /// `(A (B C)_f)_d → Σ F⁻¹ ((A B)_e C)_d`
    fn f_inv(&self, n: &Node) -> Result<Vec<(Node, C64)>> {
        let Join(a, bc, d, nu) = n else { unreachable!() };
        let Join(b, cc, f, mu) = &**bc else { unreachable!() };
        let blk = self.cat.f_block(a.label(), b.label(), cc.label(), *d)?;
        let ri = blk.right_index((*f, *mu, *nu)).expect("tree channel in F basis");
        let mut out = Vec::new();
        for (j, &(e, al, be)) in blk.left.iter().enumerate() {
            let z = blk.inv[(ri, j)];
            if z != c(0.0, 0.0) {
                let inner = Node::join((**a).clone(), (**b).clone(), e, al);
                out.push((Node::join(inner, (**cc).clone(), *d, be), z));
            }
        }
        Ok(out)
    }

    /// Precompose `(Y X)_c` with `c_{X,Y}` (or with `c⁻¹_{Y,X}` when `inverse`),
    /// giving a combination of `(X Y)_c`.
    fn swap(&self, n: &Node, inverse: bool) -> Result<Vec<(Node, C64)>> {
        let Join(y, x, cc, mp) = n else { unreachable!() };
        let (xl, yl) = (x.label(), y.label());
        let m = if inverse {
            &self.cat.r_block(yl, xl, *cc)?.inv
        } else {
            &self.cat.r_block(xl, yl, *cc)?.mat
        };
        Ok((0..m.ncols())
            .filter(|&mu| m[(*mp, mu)] != c(0.0, 0.0))
            .map(|mu| (Node::join((**x).clone(), (**y).clone(), *cc, mu), m[(*mp, mu)]))
            .collect())
    }

    fn apply_at(
        &self,
        n: &Node,
        path: Path,
        op: &dyn Fn(&Node) -> Result<Vec<(Node, C64)>>,
    ) -> Result<Vec<(Node, C64)>> {
        match path {
            Path::Root => op(n),
            Path::L | Path::R => {
                let Join(a, b, l, m) = n else { unreachable!() };
                let sub = if matches!(path, Path::L) { a } else { b };
                Ok(op(sub)?
                    .into_iter()
                    .map(|(s, z)| {
                        let t = if matches!(path, Path::L) {
                            Node::join(s, (**b).clone(), *l, *m)
                        } else {
                            Node::join((**a).clone(), s, *l, *m)
                        };
                        (t, z)
                    })
                    .collect())
            }
        }
    }

    fn step(&self, comb: &Comb, path: Path, op: &dyn Fn(&Node) -> Result<Vec<(Node, C64)>>) -> Result<Comb> {
        let mut out = Comb::new();
        for (n, z) in comb {
            for (m, w) in self.apply_at(n, path, op)? {
                *out.entry(m).or_insert(c(0.0, 0.0)) += z * w;
            }
        }
        Ok(out)
    }
}

fn residual(a: &Comb, b: &Comb) -> f64 {
    let mut r: f64 = 0.0;
    for (k, v) in a {
        r = r.max((v - b.get(k).copied().unwrap_or(c(0.0, 0.0))).norm());
    }
    for (k, v) in b {
        if !a.contains_key(k) {
            r = r.max(v.norm());
        }
    }
    r
}

fn single(n: Node) -> Comb {
    let mut m = Comb::new();
    m.insert(n, c(1.0, 0.0));
    m
}

struct Tracker<'a> {
    cat: &'a FusionCategoryData,
    tag: &'static str,
    worst: f64,
    at: String,
    count: usize,
}

impl Tracker<'_> {
    fn record(&mut self, res: f64, ix: &[usize]) {
        self.count += 1;
        if res > self.worst || self.at.is_empty() || res.is_nan() {
            self.worst = res;
            self.at = format!("{}={}", self.tag, self.cat.fmt_index(ix));
        }
    }
    fn finish(self) -> CoherenceReport {
        CoherenceReport { max_residual: self.worst, worst_index: self.at, instances: self.count }
    }
}

/// Max over all pentagon instances of `‖path A − path B‖∞`, where for
/// `(((a b)_e c)_f d)_t` path A is two root F-moves and path B is F-moves
/// at the left child, the root, then the right child.
pub fn verify_pentagon(cat: &FusionCategoryData) -> Result<CoherenceReport> {
    let eng = Engine { cat };
    let r = cat.rank();
    let mut tr = Tracker { cat, tag: "(a,b,c,d,t)", worst: 0.0, at: String::new(), count: 0 };
    let fm = |n: &Node| eng.f_move(n);
    for a in 0..r {
        for b in 0..r {
            for cc in 0..r {
                for d in 0..r {
                    for e in cat.fusion_channels(a, b) {
                        for f in cat.fusion_channels(e, cc) {
                            for t in cat.fusion_channels(f, d) {
                                for m1 in 0..cat.n(a, b, e) {
                                    for m2 in 0..cat.n(e, cc, f) {
                                        for m3 in 0..cat.n(f, d, t) {
                                            let ab = Node::join(Leaf(a), Leaf(b), e, m1);
                                            let abc = Node::join(ab, Leaf(cc), f, m2);
                                            let start = single(Node::join(abc, Leaf(d), t, m3));
                                            let pa = eng.step(&eng.step(&start, Path::Root, &fm)?, Path::Root, &fm)?;
                                            let pb = eng.step(
                                                &eng.step(&eng.step(&start, Path::L, &fm)?, Path::Root, &fm)?,
                                                Path::R,
                                                &fm,
                                            )?;
                                            tr.record(residual(&pa, &pb), &[a, b, cc, d, t]);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(tr.finish())
}

/// Both hexagons, as identities of `T ∘ c_{a, b⊗c}` (resp. with `c⁻¹`) for
/// every tree `T = ((b c)_f a)_d`:
/// the direct swap at the root versus the route through
/// `(id_b ⊗ c_{a,c}) ∘ (c_{a,b} ⊗ id_c)`.
pub fn verify_hexagon(cat: &FusionCategoryData) -> Result<CoherenceReport> {
    let eng = Engine { cat };
    let r = cat.rank();
    let mut tr = Tracker { cat, tag: "(a,b,c,d)", worst: 0.0, at: String::new(), count: 0 };
    let fm = |n: &Node| eng.f_move(n);
    let fi = |n: &Node| eng.f_inv(n);
    for inverse in [false, true] {
        let sw = move |n: &Node| eng.swap(n, inverse);
        for a in 0..r {
            for b in 0..r {
                for cc in 0..r {
                    for f in cat.fusion_channels(b, cc) {
                        for d in cat.fusion_channels(f, a) {
                            for m1 in 0..cat.n(b, cc, f) {
                                for m2 in 0..cat.n(f, a, d) {
                                    let bc = Node::join(Leaf(b), Leaf(cc), f, m1);
                                    let start = single(Node::join(bc, Leaf(a), d, m2));
                                    let lhs = eng.step(&start, Path::Root, &sw)?;
                                    let mut rhs = eng.step(&start, Path::Root, &fm)?;
                                    rhs = eng.step(&rhs, Path::R, &sw)?;
                                    rhs = eng.step(&rhs, Path::Root, &fi)?;
                                    rhs = eng.step(&rhs, Path::L, &sw)?;
                                    rhs = eng.step(&rhs, Path::Root, &fm)?;
                                    tr.record(residual(&lhs, &rhs), &[a, b, cc, d]);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(tr.finish())
}


/// Pentagon, hexagon, ribbon and pivotal-normalization residuals as a report.
pub fn consistency_suite(cat: &FusionCategoryData, tol: f64) -> Result<crate::report::Report> {
    let mut rep = crate::report::Report::new("consistency", cat.name());
    let p = verify_pentagon(cat)?;
    rep.record("pentagon", p.max_residual, &p.worst_index, tol);
    let h = verify_hexagon(cat)?;
    rep.record("hexagon", h.max_residual, &h.worst_index, tol);
    let (r, at) = cat.ribbon_residual();
    rep.record("ribbon", r, &at, tol);
    let (r, at) = cat.pivotal_residual();
    rep.record("pivotal", r, &at, tol);
    Ok(rep)
}

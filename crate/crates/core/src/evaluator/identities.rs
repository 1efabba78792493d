//! The diagrammatic identities every evaluation must respect, checked over
//! every label assignment of a category.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{word_to_string, Builder, Evaluator, Morphism, Sign, Strand, Variant, VertexId};
use crate::error::Result;
use crate::report::Report;
use crate::c;

/// Running maximum of a family of residuals.
struct Worst {
    res: f64,
    at: String,
}

impl Worst {
    fn new() -> Worst {
        Worst { res: 0.0, at: String::new() }
    }
    fn see(&mut self, r: f64, at: impl FnOnce() -> String) {
        if r > self.res || self.at.is_empty() {
            self.res = r;
            self.at = at();
        }
    }
}

/// Snakes, loops, Reidemeister II, Yang–Baxter and braid naturality.
pub fn identities_suite(ev: &Evaluator<'_>, tol: f64) -> Result<Report> {
    let cat = ev.cat();
    let mut rep = Report::new("identities", cat.name());
    let ss: Vec<Strand> = (0..cat.rank()).flat_map(|l| [Strand::up(l), Strand::down(l)]).collect();
    let name = |w: &[Strand]| word_to_string(cat, w);

    let (mut snake, mut lp) = (Worst::new(), Worst::new());
    for &s in &ss {
        let id = Morphism::identity(ev, &[s]);
        let l = ev.run(Builder::new(&[s]).cup(1, s.bar()).cap(0))?;
        let r = ev.run(Builder::new(&[s]).cup(0, s).cap(1))?;
        snake.see(l.distance(&id).max(r.distance(&id)), || name(&[s]));
        let d = ev.run(Builder::new(&[]).cup(0, s).cap(0))?.scalar(ev)?;
        lp.see((d - c(cat.qdim(s.label), 0.0)).norm(), || name(&[s]));
    }
    rep.record("snake", snake.res, &snake.at, tol);
    rep.record("loop", lp.res, &lp.at, tol);

    let (mut r2, mut yb) = (Worst::new(), Worst::new());
    for &x in &ss {
        for &y in &ss {
            let id = Morphism::identity(ev, &[x, y]);
            for sg in [Sign::Pos, Sign::Neg] {
                let m = ev.run(Builder::new(&[x, y]).braid(0, sg).braid(0, sg.flip()))?;
                r2.see(m.distance(&id), || name(&[x, y]));
            }
            for &z in &ss {
                let w = [x, y, z];
                for sg in [Sign::Pos, Sign::Neg] {
                    let l = ev.run(Builder::new(&w).braid(0, sg).braid(1, sg).braid(0, sg))?;
                    let r = ev.run(Builder::new(&w).braid(1, sg).braid(0, sg).braid(1, sg))?;
                    yb.see(l.distance(&r), || name(&w));
                }
            }
        }
    }
    rep.record("reidemeister2", r2.res, &r2.at, tol);
    rep.record("yang_baxter", yb.res, &yb.at, tol);

    let mut nat = Worst::new();
    let r = cat.rank();
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                for idx in 0..cat.n(i, j, k) {
                    let v = VertexId::new(Variant::A, Strand::up(i), Strand::up(j), Strand::up(k), idx);
                    for &l in &ss {
                        let w = [Strand::up(i), Strand::up(j), l];
                        let a = ev.run(Builder::new(&w).vertex(0, v).braid(0, Sign::Pos))?;
                        let b = ev.run(Builder::new(&w).braid_block(0, 2, 1, Sign::Pos).vertex(1, v))?;
                        nat.see(a.distance(&b), || format!("{} -> {}", name(&w), cat.label(k)));
                    }
                }
            }
        }
    }
    rep.record("naturality", nat.res, &nat.at, tol);
    Ok(rep)
}

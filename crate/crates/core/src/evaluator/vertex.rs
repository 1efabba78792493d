//! Basis vertices and their dual variants.
//!
//! For a basis vector `α ∈ Hom(i ⊗ j, k)` (legs are strands, `x̄` flips the
//! orientation):
//!
//! | variant | shape | meaning |
//! |---|---|---|
//! | `A` | `(i, j) → (k)` | the basis vector itself |
//! | `AHat` | `(k) → (i, j)` | κ-dual: `α_m ∘ α̂_n = δ_{mn} id_k` |
//! | `AHatStar` | `(j̄, ī) → (k̄)` | left dual of `α̂` |
//! | `AStar` | `(k̄) → (j̄, ī)` | left dual of `α` |
//! | `ACheck` | `(j̄) → (k̄, i)` | `(id ⊗ ev_j)(id ⊗ α̂ ⊗ id)(coev_k ⊗ id)` |
//! | `ACheckHat` | `(k̄, i) → (j̄)` | κ-dual of the `ACheck` basis |

use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;

use super::{Builder, Evaluator, Morphism, Strand};
use crate::error::{Error, Result};
use crate::{c, Mat, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variant {
    A,
    AHat,
    AHatStar,
    ACheck,
    AStar,
    ACheckHat,
}

impl Variant {
    pub const ALL: [Variant; 6] =
        [Variant::A, Variant::AHat, Variant::AHatStar, Variant::ACheck, Variant::AStar, Variant::ACheckHat];

    /// DSL spelling.
    pub fn name(self) -> &'static str {
        match self {
            Variant::A => "a",
            Variant::AHat => "ahat",
            Variant::AHatStar => "ahatstar",
            Variant::ACheck => "acheck",
            Variant::AStar => "astar",
            Variant::ACheckHat => "acheckhat",
        }
    }

    pub fn from_name(s: &str) -> Option<Variant> {
        Variant::ALL.into_iter().find(|v| v.name() == s)
    }
}

/// The `index`-th (0-based) standard basis vector of `Hom(i ⊗ j, k)` in the given variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId {
    pub variant: Variant,
    pub i: Strand,
    pub j: Strand,
    pub k: Strand,
    pub index: usize,
}

impl VertexId {
    pub fn new(variant: Variant, i: Strand, j: Strand, k: Strand, index: usize) -> VertexId {
        VertexId { variant, i, j, k, index }
    }

    /// `(inputs, outputs)`.
    pub fn signature(&self) -> (Vec<Strand>, Vec<Strand>) {
        let (i, j, k) = (self.i, self.j, self.k);
        match self.variant {
            Variant::A => (vec![i, j], vec![k]),
            Variant::AHat => (vec![k], vec![i, j]),
            Variant::AHatStar => (vec![j.bar(), i.bar()], vec![k.bar()]),
            Variant::AStar => (vec![k.bar()], vec![j.bar(), i.bar()]),
            Variant::ACheck => (vec![j.bar()], vec![k.bar(), i]),
            Variant::ACheckHat => (vec![k.bar(), i], vec![j.bar()]),
        }
    }

    pub fn with_variant(self, variant: Variant) -> VertexId {
        VertexId { variant, ..self }
    }
}

fn unit(n: usize, m: usize) -> Vec<C64> {
    (0..n).map(|x| if x == m { c(1.0, 0.0) } else { c(0.0, 0.0) }).collect()
}

impl Evaluator<'_> {
    /// `N` for the triple of a vertex.
    pub fn vertex_dim(&self, i: Strand, j: Strand, k: Strand) -> usize {
        let cat = self.cat();
        cat.n(i.obj(cat), j.obj(cat), k.obj(cat))
    }

    /// Realize a standard-basis vertex variant (cached).
    pub fn vertex_morphism(&self, v: &VertexId) -> Result<Rc<Morphism>> {
        if let Some(m) = self.vertices.borrow().get(v) {
            return Ok(m.clone());
        }
        self.check_word(&[v.i, v.j, v.k])?;
        let n = self.vertex_dim(v.i, v.j, v.k);
        if v.index >= n {
            return Err(Error::UnknownBasisId(alloc::format!(
                "{}:{}#{} (dimension {n})",
                v.variant.name(),
                super::word_to_string(self.cat(), &[v.i, v.j, v.k]),
                v.index + 1
            )));
        }
        let e = unit(n, v.index);
        let alpha = || Morphism::merge(self, v.i, v.j, v.k, &e);
        // κ(e_m, ŝ) = ŝ_m, so the κ-dual of the standard basis is the standard split basis.
        let alpha_hat = || Morphism::split(self, v.k, v.i, v.j, &e);
        let m = match v.variant {
            Variant::A => alpha()?,
            Variant::AHat => alpha_hat()?,
            Variant::AHatStar => self.left_dual(&alpha_hat()?)?,
            Variant::AStar => self.left_dual(&alpha()?)?,
            Variant::ACheck => self.check_of(&alpha_hat()?)?,
            Variant::ACheckHat => {
                let checks: Vec<Morphism> = (0..n)
                    .map(|m| self.check_of(&Morphism::split(self, v.k, v.i, v.j, &unit(n, m))?))
                    .collect::<Result<_>>()?;
                let duals = self.kappa_dual_merges(&checks)?;
                duals.into_iter().nth(v.index).expect("index in range")
            }
        };
        let m = Rc::new(m);
        self.vertices.borrow_mut().insert(*v, m.clone());
        Ok(m)
    }

    /// `α̌ = (id_k̄ ⊗ id_i ⊗ ev_j) ∘ (id_k̄ ⊗ α̂ ⊗ id_j̄) ∘ (coev_k ⊗ id_j̄)` for `α̂: (k) → (i, j)`.
    pub fn check_of(&self, alpha_hat: &Morphism) -> Result<Morphism> {
        let k = alpha_hat.source[0];
        let j = alpha_hat.target[1];
        let b = Builder::new(&[j.bar()])
            .cup(0, k.bar())
            .local(1, Rc::new(alpha_hat.clone()))
            .cap(2);
        self.run(b)
    }

    /// Merge vectors κ-dual to a list of split vectors `(z) → (x, y)`: `w_m ∘ s_n = δ_{mn}`.
    pub fn kappa_dual_merges(&self, splits: &[Morphism]) -> Result<Vec<Morphism>> {
        let Some(first) = splits.first() else { return Ok(Vec::new()) };
        let (z, x, y) = (first.source[0], first.target[0], first.target[1]);
        let n = splits.len();
        let cols: Vec<Vec<C64>> = splits.iter().map(|s| s.split_coords(self)).collect();
        if cols.iter().any(|col| col.len() != n) {
            return Err(Error::ShapeMismatch("split list is not a basis".into()));
        }
        let s = Mat::from_fn(n, n, |r, cc| cols[cc][r]);
        let w = s
            .try_inverse()
            .ok_or_else(|| Error::SingularPairing("κ Gram matrix is singular".into()))?;
        (0..n)
            .map(|m| Morphism::merge(self, x, y, z, &w.row(m).iter().copied().collect::<Vec<_>>()))
            .collect()
    }

    /// Left dual `*f: V̄ → Ū` of `f: U → V`:
    /// `(ẽv_V ⊗ id_Ū) ∘ (id_V̄ ⊗ f ⊗ id_Ū) ∘ (id_V̄ ⊗ c̃oev_U)`.
    pub fn left_dual(&self, f: &Morphism) -> Result<Morphism> {
        let (u, v) = (&f.source, &f.target);
        let vbar: Vec<Strand> = v.iter().rev().map(|s| s.bar()).collect();
        let m = vbar.len();
        let mut b = Builder::new(&vbar);
        for (idx, s) in u.iter().enumerate() {
            b = b.cup(m + idx, *s);
        }
        b = b.local(m, Rc::new(f.clone()));
        for idx in (0..m).rev() {
            b = b.cap(idx);
        }
        self.run(b)
    }

    /// Right dual `f*: V̄ → Ū` of `f: U → V`:
    /// `(id_Ū ⊗ ev_V) ∘ (id_Ū ⊗ f ⊗ id_V̄) ∘ (coev_U ⊗ id_V̄)`.
    pub fn right_dual(&self, f: &Morphism) -> Result<Morphism> {
        let (u, v) = (&f.source, &f.target);
        let vbar: Vec<Strand> = v.iter().rev().map(|s| s.bar()).collect();
        let (n, m) = (u.len(), v.len());
        let mut b = Builder::new(&vbar);
        for idx in 0..n {
            b = b.cup(idx, u[n - 1 - idx].bar());
        }
        b = b.local(n, Rc::new(f.clone()));
        for idx in (0..m).rev() {
            b = b.cap(n + idx);
        }
        self.run(b)
    }
}

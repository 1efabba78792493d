//! Dual bases of `Hom(i ⊗ j, k)` with respect to the three pairings
//!
//! * κ: `Hom(i⊗j, k) × Hom(k, i⊗j)`, `α ∘ β̂ = κ(α, β̂) id_k`;
//! * η: `Hom(i⊗j, k) × Hom(j̄⊗ī, k̄)`, `(α ⊗ β̂*) ∘ (id_i ⊗ c̃oev_j ⊗ id_ī) ∘ c̃oev_i = η c̃oev_k`;
//! * ϑ: `Hom(i⊗j, k) × Hom(j̄, k̄⊗i)`, `(id_k̄ ⊗ α) ∘ (β̌ ⊗ id_j) ∘ coev_j = ϑ coev_k`.
//!
//! Dual bases are obtained by solving the Gram system of a pairing against an
//! arbitrary spanning list, so nothing depends on how the fusion-tree basis is
//! normalized.

use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::evaluator::{Builder, Evaluator, Morphism, Strand, Variant, VertexId};
use crate::report::Report;
use crate::{c, Mat, C64};

/// `⟨g⟩_h`: the scalar `λ` with `g = λ h`.  Fails if `g` is not a multiple of `h`.
pub fn proportional(g: &Morphism, h: &Morphism, tol: f64) -> Result<C64> {
    if g.source != h.source || g.target != h.target {
        return Err(Error::ShapeMismatch("reference morphism has a different type".into()));
    }
    let (mut hh, mut hg) = (0.0, c(0.0, 0.0));
    for (t, b) in &h.blocks {
        hh += b.iter().map(|z| z.norm_sqr()).sum::<f64>();
        if let Some(a) = g.blocks.get(t) {
            hg += b.iter().zip(a.iter()).map(|(x, y)| x.conj() * y).sum::<C64>();
        }
    }
    if hh == 0.0 {
        return Err(Error::Numerical("reference morphism is zero".into()));
    }
    let lambda = hg / hh;
    let off = g.distance(&h.clone().scale(lambda));
    if off > tol * g.max_abs().max(1.0) {
        return Err(Error::Numerical(format!("morphism is not proportional to the reference (off by {off:.3e})")));
    }
    Ok(lambda)
}

fn merge_triple(alpha: &Morphism) -> Result<(Strand, Strand, Strand)> {
    match (alpha.source.as_slice(), alpha.target.as_slice()) {
        ([i, j], [k]) => Ok((*i, *j, *k)),
        _ => Err(Error::ShapeMismatch("expected a vertex (i, j) → (k)".into())),
    }
}

/// `κ(α, β̂)` for `α: (i,j) → k`, `β̂: k → (i,j)`.
pub fn kappa(ev: &Evaluator<'_>, alpha: &Morphism, beta_hat: &Morphism) -> Result<C64> {
    let (_, _, k) = merge_triple(alpha)?;
    if beta_hat.source != alpha.target || beta_hat.target != alpha.source {
        return Err(Error::ShapeMismatch("κ needs β̂: k → (i, j)".into()));
    }
    proportional(&alpha.compose(beta_hat)?, &Morphism::identity(ev, &[k]), ev.tolerance())
}

/// `η(α, β̂*)` for `β̂*: (j̄, ī) → k̄`, measured against `c̃oev_k`.
pub fn eta(ev: &Evaluator<'_>, alpha: &Morphism, beta_hat_star: &Morphism) -> Result<C64> {
    let (i, j, k) = merge_triple(alpha)?;
    if beta_hat_star.source != vec![j.bar(), i.bar()] || beta_hat_star.target != vec![k.bar()] {
        return Err(Error::ShapeMismatch("η needs β̂*: (j̄, ī) → k̄".into()));
    }
    let b = Builder::new(&[])
        .cup(0, i)
        .cup(1, j)
        .local(0, Rc::new(alpha.clone()))
        .local(1, Rc::new(beta_hat_star.clone()));
    let reference = ev.run(Builder::new(&[]).cup(0, k))?;
    proportional(&ev.run(b)?, &reference, ev.tolerance())
}

/// `ϑ(α, β̌)` for `β̌: j̄ → (k̄, i)`, measured against `coev_k`.
pub fn theta_pairing(ev: &Evaluator<'_>, alpha: &Morphism, beta_check: &Morphism) -> Result<C64> {
    let (i, j, k) = merge_triple(alpha)?;
    if beta_check.source != vec![j.bar()] || beta_check.target != vec![k.bar(), i] {
        return Err(Error::ShapeMismatch("ϑ needs β̌: j̄ → (k̄, i)".into()));
    }
    let b = Builder::new(&[])
        .cup(0, j.bar())
        .local(0, Rc::new(beta_check.clone()))
        .local(1, Rc::new(alpha.clone()));
    let reference = ev.run(Builder::new(&[]).cup(0, k.bar()))?;
    proportional(&ev.run(b)?, &reference, ev.tolerance())
}

/// Solve `pair(basis_m, dual_n) = δ_{mn}` with `dual_n` in the span of `candidates`.
pub fn dual_by_gram(
    basis: &[Morphism],
    candidates: &[Morphism],
    tol: f64,
    mut pair: impl FnMut(&Morphism, &Morphism) -> Result<C64>,
) -> Result<Vec<Morphism>> {
    let n = basis.len();
    if candidates.len() != n {
        return Err(Error::ShapeMismatch(format!("{n} basis vectors but {} candidates", candidates.len())));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut g = Mat::zeros(n, n);
    for (m, a) in basis.iter().enumerate() {
        for (p, b) in candidates.iter().enumerate() {
            g[(m, p)] = pair(a, b)?;
        }
    }
    let sv = g.clone().singular_values();
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(smin > tol * smax.max(1.0)) {
        return Err(Error::SingularPairing(format!("Gram matrix has σ_min = {smin:.3e}")));
    }
    let x = g.try_inverse().ok_or_else(|| Error::SingularPairing("Gram matrix is singular".into()))?;
    (0..n)
        .map(|col| {
            let mut acc = candidates[0].clone().scale(x[(0, col)]);
            for (p, cand) in candidates.iter().enumerate().skip(1) {
                acc = acc.add(&cand.clone().scale(x[(p, col)]))?;
            }
            Ok(acc)
        })
        .collect()
}

fn unit_vec(n: usize, m: usize) -> Vec<C64> {
    (0..n).map(|x| if x == m { c(1.0, 0.0) } else { c(0.0, 0.0) }).collect()
}

/// Standard merge basis of `Hom(i ⊗ j, k)`.
pub fn standard_basis(ev: &Evaluator<'_>, i: Strand, j: Strand, k: Strand) -> Result<Vec<Morphism>> {
    let n = ev.vertex_dim(i, j, k);
    (0..n).map(|m| Morphism::merge(ev, i, j, k, &unit_vec(n, m))).collect()
}

/// Standard split basis of `Hom(k, i ⊗ j)`.
pub fn standard_splits(ev: &Evaluator<'_>, k: Strand, i: Strand, j: Strand) -> Result<Vec<Morphism>> {
    let n = ev.vertex_dim(i, j, k);
    (0..n).map(|m| Morphism::split(ev, k, i, j, &unit_vec(n, m))).collect()
}

/// `basis'_m = Σ_n G[m][n] basis_n`.
pub fn change_basis(basis: &[Morphism], g: &Mat) -> Result<Vec<Morphism>> {
    (0..basis.len())
        .map(|m| {
            let mut acc = basis[0].clone().scale(g[(m, 0)]);
            for (n, b) in basis.iter().enumerate().skip(1) {
                acc = acc.add(&b.clone().scale(g[(m, n)]))?;
            }
            Ok(acc)
        })
        .collect()
}

/// A random invertible `n × n` matrix with entries in the unit square.
pub fn random_invertible(rng: &mut impl Rng, n: usize) -> Mat {
    loop {
        let g = Mat::from_fn(n, n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let sv = g.clone().singular_values();
        if n == 0 || sv.iter().cloned().fold(f64::INFINITY, f64::min) > 0.1 {
            return g;
        }
    }
}

/// κ-dual basis `{α̂}` of `Hom(k, i ⊗ j)`.
pub fn kappa_dual_basis(ev: &Evaluator<'_>, basis: &[Morphism]) -> Result<Vec<Morphism>> {
    let Some(first) = basis.first() else { return Ok(Vec::new()) };
    let (i, j, k) = merge_triple(first)?;
    let cands = standard_splits(ev, k, i, j)?;
    dual_by_gram(basis, &cands, ev.tolerance(), |a, b| kappa(ev, a, b))
}

/// Merges κ-dual to a list of splits `k → (i, j)`: `w_m ∘ s_n = δ_{mn} id_k`.
pub fn kappa_dual_merges(ev: &Evaluator<'_>, splits: &[Morphism]) -> Result<Vec<Morphism>> {
    let Some(first) = splits.first() else { return Ok(Vec::new()) };
    let (k, i, j) = match (first.source.as_slice(), first.target.as_slice()) {
        ([k], [i, j]) => (*k, *i, *j),
        _ => return Err(Error::ShapeMismatch("expected splits k → (i, j)".into())),
    };
    let cands = standard_basis(ev, i, j, k)?;
    dual_by_gram(splits, &cands, ev.tolerance(), |s, w| kappa(ev, w, s))
}

/// `(α̂*, α̌)` from `α̂: k → (i, j)`: the categorical (left) dual, and the
/// dual with the `i` leg bent back up.
pub fn dual_variants(ev: &Evaluator<'_>, alpha_hat: &Morphism) -> Result<(Morphism, Morphism)> {
    Ok((ev.left_dual(alpha_hat)?, ev.check_of(alpha_hat)?))
}

/// `(α̂* ⊗ id_i) ∘ (id_j̄ ⊗ coev_i)`, the other way to write `α̌`.
pub fn bend_hat_star(ev: &Evaluator<'_>, hat_star: &Morphism) -> Result<Morphism> {
    let (jb, ib) = match hat_star.source.as_slice() {
        [a, b] => (*a, *b),
        _ => return Err(Error::ShapeMismatch("expected α̂*: (j̄, ī) → k̄".into())),
    };
    ev.run(Builder::new(&[jb]).cup(1, ib).local(0, Rc::new(hat_star.clone())))
}

/// A basis of `Hom(i ⊗ j, k)` together with its κ-, η- and ϑ-duals.
#[derive(Debug, Clone)]
pub struct PairedBasis {
    pub i: Strand,
    pub j: Strand,
    pub k: Strand,
    pub basis: Vec<Morphism>,
    pub kappa_dual: Vec<Morphism>,
    pub eta_dual: Vec<Morphism>,
    pub theta_dual: Vec<Morphism>,
}

impl PairedBasis {
    pub fn new(ev: &Evaluator<'_>, i: Strand, j: Strand, k: Strand, basis: Vec<Morphism>) -> Result<PairedBasis> {
        if basis.len() != ev.vertex_dim(i, j, k) {
            return Err(Error::ShapeMismatch(format!(
                "{} vectors do not form a basis of a {}-dimensional space",
                basis.len(),
                ev.vertex_dim(i, j, k)
            )));
        }
        let kappa_dual = kappa_dual_basis(ev, &basis)?;
        let mut eta_dual = Vec::with_capacity(basis.len());
        let mut theta_dual = Vec::with_capacity(basis.len());
        for h in &kappa_dual {
            let (s, ch) = dual_variants(ev, h)?;
            eta_dual.push(s);
            theta_dual.push(ch);
        }
        Ok(PairedBasis { i, j, k, basis, kappa_dual, eta_dual, theta_dual })
    }

    pub fn standard(ev: &Evaluator<'_>, i: Strand, j: Strand, k: Strand) -> Result<PairedBasis> {
        PairedBasis::new(ev, i, j, k, standard_basis(ev, i, j, k)?)
    }

    /// Max deviation of the three pairing matrices from the identity: `(κ, η, ϑ)`.
    pub fn deltas(&self, ev: &Evaluator<'_>) -> Result<[f64; 3]> {
        let mut out = [0.0f64; 3];
        for (m, a) in self.basis.iter().enumerate() {
            for n in 0..self.basis.len() {
                let delta = if m == n { c(1.0, 0.0) } else { c(0.0, 0.0) };
                out[0] = out[0].max((kappa(ev, a, &self.kappa_dual[n])? - delta).norm());
                out[1] = out[1].max((eta(ev, a, &self.eta_dual[n])? - delta).norm());
                out[2] = out[2].max((theta_pairing(ev, a, &self.theta_dual[n])? - delta).norm());
            }
        }
        Ok(out)
    }

    /// Commuting categorical and κ-duality: the κ-dual merges of `{α*}` are `{(α̂)*}`.
    pub fn dual_hat_commutation(&self, ev: &Evaluator<'_>) -> Result<f64> {
        let stars = self.basis.iter().map(|a| ev.left_dual(a)).collect::<Result<Vec<_>>>()?;
        let hats_of_stars = kappa_dual_merges(ev, &stars)?;
        Ok(hats_of_stars.iter().zip(&self.eta_dual).fold(0.0, |d, (x, y)| d.max(x.distance(y))))
    }

    /// `α̌` equals `α̂*` with its `ī` input bent into an `i` output.
    pub fn check_is_bent_hat_star(&self, ev: &Evaluator<'_>) -> Result<f64> {
        let mut d: f64 = 0.0;
        for (s, ch) in self.eta_dual.iter().zip(&self.theta_dual) {
            d = d.max(bend_hat_star(ev, s)?.distance(ch));
        }
        Ok(d)
    }

    /// `Σ_α α̂ ∘ α ∈ End(i ⊗ j)`.
    pub fn projector(&self) -> Result<Morphism> {
        let mut acc = Morphism::zero(vec![self.i, self.j], vec![self.i, self.j]);
        for (a, h) in self.basis.iter().zip(&self.kappa_dual) {
            acc = acc.add(&h.compose(a)?)?;
        }
        Ok(acc)
    }

    /// The built-in vertex variants agree with this (standard) basis' duals.
    pub fn matches_builtin(&self, ev: &Evaluator<'_>) -> Result<f64> {
        let mut d: f64 = 0.0;
        for m in 0..self.basis.len() {
            let id = |v| VertexId::new(v, self.i, self.j, self.k, m);
            d = d.max(ev.vertex_morphism(&id(Variant::A))?.distance(&self.basis[m]));
            d = d.max(ev.vertex_morphism(&id(Variant::AHat))?.distance(&self.kappa_dual[m]));
            d = d.max(ev.vertex_morphism(&id(Variant::AHatStar))?.distance(&self.eta_dual[m]));
            d = d.max(ev.vertex_morphism(&id(Variant::ACheck))?.distance(&self.theta_dual[m]));
        }
        Ok(d)
    }
}

/// `Σ_k Σ_α α̂ ∘ α` over all channels of `i ⊗ j`, with the basis of each channel
/// supplied by `pick`.
pub fn completeness_operator(
    ev: &Evaluator<'_>,
    i: Strand,
    j: Strand,
    mut pick: impl FnMut(Strand) -> Result<Vec<Morphism>>,
) -> Result<Morphism> {
    let mut acc = Morphism::zero(vec![i, j], vec![i, j]);
    for k in ev.roots(&[i, j]) {
        let k = Strand::up(k);
        let pb = PairedBasis::new(ev, i, j, k, pick(k)?)?;
        acc = acc.add(&pb.projector()?)?;
    }
    Ok(acc)
}

/// `‖Σ_k Σ_α α̂ ∘ α − id_{i⊗j}‖∞` for the standard bases.
pub fn check_completeness(ev: &Evaluator<'_>, i: Strand, j: Strand) -> Result<f64> {
    let op = completeness_operator(ev, i, j, |k| standard_basis(ev, i, j, k))?;
    Ok(op.distance(&Morphism::identity(ev, &[i, j])))
}

/// Every `(i, j, k)` with `N_{ij}^k > 0`, all strands up.
pub fn admissible_triples(ev: &Evaluator<'_>) -> Vec<(Strand, Strand, Strand)> {
    let r = ev.cat().rank();
    let mut out = Vec::new();
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                if ev.cat().n(i, j, k) > 0 {
                    out.push((Strand::up(i), Strand::up(j), Strand::up(k)));
                }
            }
        }
    }
    out
}

fn triple_name(ev: &Evaluator<'_>, i: Strand, j: Strand, k: Strand) -> String {
    let cat = ev.cat();
    format!("({},{},{})", cat.label(i.label), cat.label(j.label), cat.label(k.label))
}

/// Pairing deltas, duality compatibilities and completeness over all triples,
/// for the standard basis and `changes` random bases per triple.
pub fn verify_suite(ev: &Evaluator<'_>, rng: &mut impl Rng, changes: usize, tol: f64) -> Result<Report> {
    let mut report = Report::new("dualbases", ev.cat().name());
    let worst = |id: &str, d: f64, at: String, report: &mut Report| report.record(id, d, &at, tol);
    let mut pair_checks = [(0.0, String::new()), (0.0, String::new()), (0.0, String::new())];
    let (mut a1, mut eq33, mut builtin) = ((0.0, String::new()), (0.0, String::new()), (0.0, String::new()));
    let bump = |slot: &mut (f64, String), d: f64, at: &str| {
        if d > slot.0 || (slot.1.is_empty() && !at.is_empty()) {
            *slot = (d.max(slot.0), at.into());
        }
    };
    for (i, j, k) in admissible_triples(ev) {
        let name = triple_name(ev, i, j, k);
        let std = PairedBasis::standard(ev, i, j, k)?;
        bump(&mut builtin, std.matches_builtin(ev)?, &name);
        let mut bases = vec![std.basis.clone()];
        for _ in 0..changes {
            bases.push(change_basis(&std.basis, &random_invertible(rng, std.basis.len()))?);
        }
        for b in bases {
            let pb = PairedBasis::new(ev, i, j, k, b)?;
            let d = pb.deltas(ev)?;
            for (slot, x) in pair_checks.iter_mut().zip(d) {
                bump(slot, x, &name);
            }
            bump(&mut a1, pb.dual_hat_commutation(ev)?, &name);
            bump(&mut eq33, pb.check_is_bent_hat_star(ev)?, &name);
        }
    }
    for (id, slot) in ["kappa_delta", "eta_delta", "theta_delta"].iter().zip(pair_checks) {
        worst(id, slot.0, slot.1, &mut report);
    }
    worst("hat_commutes_with_dual", a1.0, a1.1, &mut report);
    worst("check_is_bent_hat_star", eq33.0, eq33.1, &mut report);
    worst("builtin_vertices_match", builtin.0, builtin.1, &mut report);

    let r = ev.cat().rank();
    let (mut comp, mut indep) = ((0.0, String::new()), (0.0, String::new()));
    for a in 0..r {
        for b in 0..r {
            let (i, j) = (Strand::up(a), Strand::up(b));
            let name = format!("({},{})", ev.cat().label(a), ev.cat().label(b));
            let reference = completeness_operator(ev, i, j, |k| standard_basis(ev, i, j, k))?;
            bump(&mut comp, reference.distance(&Morphism::identity(ev, &[i, j])), &name);
            for _ in 0..changes {
                let op = completeness_operator(ev, i, j, |k| {
                    let std = standard_basis(ev, i, j, k)?;
                    change_basis(&std, &random_invertible(rng, std.len()))
                })?;
                bump(&mut indep, op.distance(&reference), &name);
            }
        }
    }
    worst("completeness", comp.0, comp.1, &mut report);
    worst("basis_independence", indep.0, indep.1, &mut report);
    Ok(report)
}

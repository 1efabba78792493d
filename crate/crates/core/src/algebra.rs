//! Algebra and module objects in `C^{⊠n}` and their axiom checkers.
//!
//! Objects are formal direct sums ([`SumObject`]); since the tensor product of
//! sum objects is strictly associative and unital at the level of summand
//! indices and words, the axioms are compared after renaming summands only.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::evaluator::{BlockMorphism, Evaluator, Sign, SumObject};
use crate::report::Report;

#[derive(Debug, Clone)]
pub struct AlgebraObject {
    pub name: String,
    pub carrier: SumObject,
    /// `A ⊗ A → A`.
    pub mult: BlockMorphism,
    /// `1 → A`.
    pub unit: BlockMorphism,
}

/// Replace summand names of a morphism's source/target by those of objects
/// with the same words.
pub fn retype(mut m: BlockMorphism, source: &SumObject, target: &SumObject) -> Result<BlockMorphism> {
    let same = |a: &SumObject, b: &SumObject| {
        a.factors == b.factors && a.len() == b.len() && a.summands.iter().zip(&b.summands).all(|(x, y)| x.words == y.words)
    };
    if !same(&m.source, source) || !same(&m.target, target) {
        return Err(Error::ShapeMismatch("objects differ beyond summand names".into()));
    }
    m.source = source.clone();
    m.target = target.clone();
    Ok(m)
}

impl AlgebraObject {
    /// The unit object with the identity multiplication.
    pub fn trivial(ev: &Evaluator<'_>, factors: usize) -> AlgebraObject {
        let one = SumObject::unit(factors);
        let id = BlockMorphism::identity(ev, &one);
        let mult = retype(id.clone(), &one.tensor(&one), &one).expect("1 ⊗ 1 = 1");
        AlgebraObject { name: "1".into(), carrier: one, mult, unit: id }
    }

    pub fn factors(&self) -> usize {
        self.carrier.factors
    }

    /// Rename the carrier's summands (and the multiplication's source accordingly).
    pub fn rename_summands(mut self, names: &[String]) -> Result<AlgebraObject> {
        if names.len() != self.carrier.len() {
            return Err(Error::ShapeMismatch("one name per summand".into()));
        }
        for (s, n) in self.carrier.summands.iter_mut().zip(names) {
            s.name = n.clone();
        }
        let sq = self.carrier.tensor(&self.carrier);
        self.mult = retype(self.mult, &sq, &self.carrier)?;
        let one = SumObject::unit(self.factors());
        self.unit = retype(self.unit, &one, &self.carrier)?;
        Ok(self)
    }

    pub fn named(mut self, name: &str) -> AlgebraObject {
        self.name = name.into();
        self
    }
}

/// `m ∘ (m ⊗ id)` and `m ∘ (id ⊗ m)`.
pub fn associators(ev: &Evaluator<'_>, a: &AlgebraObject) -> Result<(BlockMorphism, BlockMorphism)> {
    let id = BlockMorphism::identity(ev, &a.carrier);
    let lhs = a.mult.compose(&a.mult.tensor(ev, &id))?;
    let rhs = a.mult.compose(&id.tensor(ev, &a.mult))?;
    let rhs = retype(rhs, &lhs.source, &lhs.target)?;
    Ok((lhs, rhs))
}

/// Associativity and both unit triangles.
pub fn check_algebra(ev: &Evaluator<'_>, a: &AlgebraObject, tol: f64) -> Result<Report> {
    let mut r = Report::new("algebra", ev.cat().name());
    let (lhs, rhs) = associators(ev, a)?;
    r.record_residual(&format!("{}/associativity", a.name), &lhs.residual(ev, &rhs)?, tol);
    let id = BlockMorphism::identity(ev, &a.carrier);
    let left = retype(a.mult.compose(&a.unit.tensor(ev, &id))?, &a.carrier, &a.carrier)?;
    r.record_residual(&format!("{}/left_unit", a.name), &left.residual(ev, &id)?, tol);
    let right = retype(a.mult.compose(&id.tensor(ev, &a.unit))?, &a.carrier, &a.carrier)?;
    r.record_residual(&format!("{}/right_unit", a.name), &right.residual(ev, &id)?, tol);
    Ok(r)
}

/// Multiplication precomposed with the braiding `c_{A,A}`.
pub fn opposite(ev: &Evaluator<'_>, a: &AlgebraObject) -> Result<AlgebraObject> {
    let c = BlockMorphism::braiding(ev, &a.carrier, &a.carrier, Sign::Pos)?;
    Ok(AlgebraObject {
        name: format!("{}ᵒᵖ", a.name),
        carrier: a.carrier.clone(),
        mult: a.mult.compose(&c)?,
        unit: a.unit.clone(),
    })
}

/// `A ⊗ B` with `(m_A ⊗ m_B) ∘ (id_A ⊗ c_{B,A} ⊗ id_B)` and unit `u_A ⊗ u_B`.
pub fn tensor_algebra(ev: &Evaluator<'_>, a: &AlgebraObject, b: &AlgebraObject) -> Result<AlgebraObject> {
    if a.factors() != b.factors() {
        return Err(Error::ShapeMismatch("algebras live in different Deligne powers".into()));
    }
    let ida = BlockMorphism::identity(ev, &a.carrier);
    let idb = BlockMorphism::identity(ev, &b.carrier);
    let swap = BlockMorphism::braiding(ev, &b.carrier, &a.carrier, Sign::Pos)?;
    let middle = ida.tensor(ev, &swap).tensor(ev, &idb);
    let mult = a.mult.tensor(ev, &b.mult).compose(&middle)?;
    let carrier = a.carrier.tensor(&b.carrier);
    let mult = retype(mult, &carrier.tensor(&carrier), &carrier)?;
    let unit = retype(a.unit.tensor(ev, &b.unit), &SumObject::unit(a.factors()), &carrier)?;
    Ok(AlgebraObject { name: format!("{}⊗{}", a.name, b.name), carrier, mult, unit })
}

/// `f ∘ u_A = u_B` and `f ∘ m_A = m_B ∘ (f ⊗ f)`.
pub fn check_algebra_hom(
    ev: &Evaluator<'_>,
    name: &str,
    f: &BlockMorphism,
    a: &AlgebraObject,
    b: &AlgebraObject,
    tol: f64,
) -> Result<Report> {
    if f.source != a.carrier || f.target != b.carrier {
        return Err(Error::ShapeMismatch(format!("{name} does not map {} to {}", a.name, b.name)));
    }
    let mut r = Report::new("algebra_hom", ev.cat().name());
    r.record_residual(&format!("{name}/unit"), &f.compose(&a.unit)?.residual(ev, &b.unit)?, tol);
    let lhs = f.compose(&a.mult)?;
    let rhs = b.mult.compose(&f.tensor(ev, f))?;
    r.record_residual(&format!("{name}/multiplication"), &lhs.residual(ev, &rhs)?, tol);
    Ok(r)
}

/// A right module `p: M ⊗ A → M`.
#[derive(Debug, Clone)]
pub struct ModuleObject {
    pub name: String,
    pub carrier: SumObject,
    pub action: BlockMorphism,
}

impl ModuleObject {
    /// `A` acting on itself by multiplication.
    pub fn regular(a: &AlgebraObject) -> ModuleObject {
        ModuleObject { name: a.name.clone(), carrier: a.carrier.clone(), action: a.mult.clone() }
    }

    /// The free module `X ⊗ A` with action `id_X ⊗ m`.
    pub fn free(ev: &Evaluator<'_>, x: &SumObject, a: &AlgebraObject) -> Result<ModuleObject> {
        let carrier = x.tensor(&a.carrier);
        let action = BlockMorphism::identity(ev, x).tensor(ev, &a.mult);
        let action = retype(action, &carrier.tensor(&a.carrier), &carrier)?;
        Ok(ModuleObject { name: format!("X⊗{}", a.name), carrier, action })
    }
}

/// `p ∘ (p ⊗ id_A) = p ∘ (id_M ⊗ m)` and `p ∘ (id_M ⊗ u) = id_M`.
pub fn check_module(ev: &Evaluator<'_>, m: &ModuleObject, a: &AlgebraObject, tol: f64) -> Result<Report> {
    let mut r = Report::new("module", ev.cat().name());
    let ida = BlockMorphism::identity(ev, &a.carrier);
    let idm = BlockMorphism::identity(ev, &m.carrier);
    let lhs = m.action.compose(&m.action.tensor(ev, &ida))?;
    let rhs = m.action.compose(&idm.tensor(ev, &a.mult))?;
    let rhs = retype(rhs, &lhs.source, &lhs.target)?;
    r.record_residual(&format!("{}/associativity", m.name), &lhs.residual(ev, &rhs)?, tol);
    let unit = retype(m.action.compose(&idm.tensor(ev, &a.unit))?, &m.carrier, &m.carrier)?;
    r.record_residual(&format!("{}/unit", m.name), &unit.residual(ev, &idm)?, tol);
    Ok(r)
}

/// An `A`-`B`-bimodule: `l: A ⊗ M → M`, `r: M ⊗ B → M`.
#[derive(Debug, Clone)]
pub struct BimoduleObject {
    pub name: String,
    pub carrier: SumObject,
    pub left: BlockMorphism,
    pub right: BlockMorphism,
}

impl BimoduleObject {
    pub fn regular(a: &AlgebraObject) -> BimoduleObject {
        BimoduleObject { name: a.name.clone(), carrier: a.carrier.clone(), left: a.mult.clone(), right: a.mult.clone() }
    }
}

/// Both module structures and `r ∘ (l ⊗ id_B) = l ∘ (id_A ⊗ r)`.
pub fn check_bimodule(
    ev: &Evaluator<'_>,
    m: &BimoduleObject,
    a: &AlgebraObject,
    b: &AlgebraObject,
    tol: f64,
) -> Result<Report> {
    let mut rep = Report::new("bimodule", ev.cat().name());
    let right = ModuleObject { name: format!("{}/right", m.name), carrier: m.carrier.clone(), action: m.right.clone() };
    rep.extend(check_module(ev, &right, b, tol)?);
    let ida = BlockMorphism::identity(ev, &a.carrier);
    let idb = BlockMorphism::identity(ev, &b.carrier);
    let idm = BlockMorphism::identity(ev, &m.carrier);
    let lhs = m.left.compose(&ida.tensor(ev, &m.left))?;
    let rhs = m.left.compose(&a.mult.tensor(ev, &idm))?;
    let rhs = retype(rhs, &lhs.source, &lhs.target)?;
    rep.record_residual(&format!("{}/left/associativity", m.name), &lhs.residual(ev, &rhs)?, tol);
    let unit = retype(m.left.compose(&a.unit.tensor(ev, &idm))?, &m.carrier, &m.carrier)?;
    rep.record_residual(&format!("{}/left/unit", m.name), &unit.residual(ev, &idm)?, tol);
    let lhs = m.right.compose(&m.left.tensor(ev, &idb))?;
    let rhs = m.left.compose(&ida.tensor(ev, &m.right))?;
    let rhs = retype(rhs, &lhs.source, &lhs.target)?;
    rep.record_residual(&format!("{}/compatibility", m.name), &lhs.residual(ev, &rhs)?, tol);
    Ok(rep)
}

/// Compare two algebras with the same carrier words, ignoring summand names.
pub fn algebra_distance(ev: &Evaluator<'_>, a: &AlgebraObject, b: &AlgebraObject) -> Result<f64> {
    let bm = retype(b.mult.clone(), &a.mult.source, &a.mult.target)?;
    let bu = retype(b.unit.clone(), &a.unit.source, &a.unit.target)?;
    Ok(a.mult.residual(ev, &bm)?.max_abs.max(a.unit.residual(ev, &bu)?.max_abs))
}

/// Names `(x, y, ...)` for product summands.
pub fn tuple_names(parts: &[Vec<String>]) -> Vec<String> {
    let mut out: Vec<Vec<String>> = alloc::vec![Vec::new()];
    for p in parts {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                p.iter().map(move |x| {
                    let mut q = prefix.clone();
                    q.push(x.clone());
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(|v| format!("({})", v.join(","))).collect()
}

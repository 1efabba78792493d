//! Skeletal fusion-category data: loading, validation and derived quantities.
//!
//! F-blocks are stored in the left-associated → right-associated direction:
//! `F^{abc}_d[(e,α,β)][(f,μ,ν)]` expresses the tree `((a b)_e^α c)_d^β` as a
//! combination of trees `(a (b c)_f^μ)_d^ν`.  R-blocks act on multiplicity
//! spaces: `ν^{ba}_{c,μ'} ∘ c_{a,b} = Σ_μ R^{ab}_c[μ'][μ] ν^{ab}_{c,μ}`.

mod coherence;
mod deligne;
mod json;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use crate::error::{Error, Result};
use crate::{c, Mat, C64};

pub use coherence::{consistency_suite, verify_hexagon, verify_pentagon, CoherenceReport};
pub use deligne::{deligne_power, DeligneCategoryData, DEFAULT_RANK_CAP};

const GREEK: &[(&str, &str)] = &[
    ("alpha", "α"),
    ("beta", "β"),
    ("gamma", "γ"),
    ("epsilon", "ε"),
    ("sigma", "σ"),
    ("tau", "τ"),
    ("phi", "φ"),
    ("psi", "ψ"),
    ("omega", "ω"),
];

/// Default tolerance used when a file does not specify one.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Channel index triple `(channel, first multiplicity, second multiplicity)`.
pub type Channel = (usize, usize, usize);

#[derive(Debug, Clone)]
pub struct FBlock {
    /// Left-associated basis `(e, α, β)`, lexicographic.
    pub left: Vec<Channel>,
    /// Right-associated basis `(f, μ, ν)`, lexicographic.
    pub right: Vec<Channel>,
    pub mat: Mat,
    pub inv: Mat,
}

impl FBlock {
    pub fn left_index(&self, ch: Channel) -> Option<usize> {
        self.left.binary_search(&ch).ok()
    }
    pub fn right_index(&self, ch: Channel) -> Option<usize> {
        self.right.binary_search(&ch).ok()
    }
}

#[derive(Debug, Clone)]
pub struct RBlock {
    pub mat: Mat,
    pub inv: Mat,
}

/// Raw ingredients of a category; the input of [`FusionCategoryData::from_parts`].
#[derive(Debug, Clone)]
pub struct CategoryParts {
    pub name: String,
    pub labels: Vec<String>,
    /// `dual[i] = i*`; `None` derives it from `N`.
    pub dual: Option<Vec<usize>>,
    /// Flattened `N[i][j][k]` (row-major, `rank³` entries).
    pub n: Vec<u32>,
    /// Blocks in the lexicographic bases of [`left_basis`] / [`right_basis`].
    pub f: BTreeMap<[usize; 4], Mat>,
    pub r: BTreeMap<[usize; 3], Mat>,
    pub theta: Vec<C64>,
    pub tolerance: f64,
    pub notes: Option<String>,
}

/// What `from_parts` validates.  Structural checks always run.
#[derive(Debug, Clone, Copy)]
pub struct LoadOptions {
    /// Pentagon, hexagon, ribbon and pivotal-normalization checks.
    pub coherence: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions { coherence: true }
    }
}

/// An immutable skeletal ribbon fusion category.
#[derive(Debug, Clone)]
pub struct FusionCategoryData {
    name: String,
    labels: Vec<String>,
    dual: Vec<usize>,
    n: Vec<u32>,
    f: BTreeMap<[usize; 4], FBlock>,
    r: BTreeMap<[usize; 3], RBlock>,
    theta: Vec<C64>,
    qdims: Vec<f64>,
    s: Mat,
    tolerance: f64,
    notes: Option<String>,
}

/// Lexicographic `(e,α,β)` basis of `((a b)_e c)_d` trees.
pub fn left_basis(rank: usize, n: &[u32], a: usize, b: usize, c: usize, d: usize) -> Vec<Channel> {
    let nn = |i: usize, j: usize, k: usize| n[(i * rank + j) * rank + k] as usize;
    let mut out = Vec::new();
    for e in 0..rank {
        for al in 0..nn(a, b, e) {
            for be in 0..nn(e, c, d) {
                out.push((e, al, be));
            }
        }
    }
    out
}

/// Lexicographic `(f,μ,ν)` basis of `(a (b c)_f)_d` trees.
pub fn right_basis(rank: usize, n: &[u32], a: usize, b: usize, c: usize, d: usize) -> Vec<Channel> {
    let nn = |i: usize, j: usize, k: usize| n[(i * rank + j) * rank + k] as usize;
    let mut out = Vec::new();
    for f in 0..rank {
        for mu in 0..nn(b, c, f) {
            for nu in 0..nn(a, f, d) {
                out.push((f, mu, nu));
            }
        }
    }
    out
}

pub(crate) fn invert(m: &Mat, what: &str) -> Result<Mat> {
    if m.nrows() != m.ncols() {
        return Err(Error::Consistency(format!("{what} is not square ({}x{})", m.nrows(), m.ncols())));
    }
    m.clone()
        .try_inverse()
        .ok_or_else(|| Error::Consistency(format!("{what} is not invertible")))
}

pub(crate) fn max_abs(m: &Mat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

impl FusionCategoryData {
    /// Parse the JSON category format.  `default_name` is used when the file has no `name`.
    pub fn from_json_str(text: &str, default_name: &str, opts: LoadOptions) -> Result<Self> {
        let parts = json::parse(text, default_name)?;
        Self::from_parts(parts, opts)
    }

    /// Serialize back to the JSON category format.
    pub fn to_json_string(&self) -> String {
        json::write(self)
    }

    /// Validate and build.  Checks run in a fixed order and the first failure is reported.
    pub fn from_parts(p: CategoryParts, opts: LoadOptions) -> Result<Self> {
        let cat = Self::structural(p)?;
        if opts.coherence {
            cat.check_coherence()?;
        }
        Ok(cat)
    }

    fn structural(p: CategoryParts) -> Result<Self> {
        let r = p.labels.len();
        if r == 0 {
            return Err(Error::Consistency("no labels".into()));
        }
        if p.n.len() != r * r * r {
            return Err(Error::Consistency(format!("N has {} entries, expected {}", p.n.len(), r * r * r)));
        }
        if !(p.tolerance > 0.0) {
            return Err(Error::Consistency("tolerance must be positive".into()));
        }
        let nn = |i: usize, j: usize, k: usize| p.n[(i * r + j) * r + k];
        let lab = |i: usize| p.labels[i].as_str();

        for i in 0..r {
            for j in 0..r {
                let d = (i == j) as u32;
                if nn(0, i, j) != d || nn(i, 0, j) != d {
                    return Err(Error::Consistency(format!(
                        "unit strictness fails at ({}, {})",
                        lab(i),
                        lab(j)
                    )));
                }
            }
        }
        let mut dual = vec![usize::MAX; r];
        for i in 0..r {
            let hits: Vec<usize> = (0..r).filter(|&j| nn(i, j, 0) > 0).collect();
            if hits.len() != 1 || nn(i, hits[0], 0) != 1 {
                return Err(Error::Consistency(format!("rigidity fails for label {}", lab(i))));
            }
            dual[i] = hits[0];
        }
        if let Some(given) = &p.dual {
            if given != &dual {
                return Err(Error::Consistency("dual map disagrees with N".into()));
            }
        }
        for i in 0..r {
            if dual[dual[i]] != i {
                return Err(Error::Consistency(format!("dual is not an involution at {}", lab(i))));
            }
        }

        let mut fmap = BTreeMap::new();
        for a in 0..r {
            for b in 0..r {
                for cc in 0..r {
                    for d in 0..r {
                        let left = left_basis(r, &p.n, a, b, cc, d);
                        let right = right_basis(r, &p.n, a, b, cc, d);
                        let key = [a, b, cc, d];
                        let name = || format!("F^{{{},{},{}}}_{}", lab(a), lab(b), lab(cc), lab(d));
                        if left.len() != right.len() {
                            return Err(Error::Consistency(format!(
                                "{}: tree counts differ ({} vs {}); N is not associative",
                                name(),
                                left.len(),
                                right.len()
                            )));
                        }
                        if left.is_empty() {
                            if p.f.contains_key(&key) {
                                return Err(Error::Consistency(format!("{} given but has no trees", name())));
                            }
                            continue;
                        }
                        let unit_leg = a == 0 || b == 0 || cc == 0;
                        let mat = match p.f.get(&key) {
                            Some(m) => {
                                if m.nrows() != left.len() || m.ncols() != right.len() {
                                    return Err(Error::Consistency(format!(
                                        "{} has shape {}x{}, expected {}x{}",
                                        name(),
                                        m.nrows(),
                                        m.ncols(),
                                        left.len(),
                                        right.len()
                                    )));
                                }
                                if unit_leg {
                                    let id = Mat::identity(left.len(), left.len());
                                    if max_abs(&(m - &id)) > p.tolerance {
                                        return Err(Error::Consistency(format!(
                                            "triangle: {} with a unit leg must be the identity",
                                            name()
                                        )));
                                    }
                                }
                                m.clone()
                            }
                            None if unit_leg => Mat::identity(left.len(), left.len()),
                            None => return Err(Error::MissingData(name())),
                        };
                        let inv = invert(&mat, &name())?;
                        fmap.insert(key, FBlock { left, right, mat, inv });
                    }
                }
            }
        }

        let mut rmap = BTreeMap::new();
        for a in 0..r {
            for b in 0..r {
                for cc in 0..r {
                    let m = nn(a, b, cc) as usize;
                    let key = [a, b, cc];
                    let name = || format!("R^{{{},{}}}_{}", lab(a), lab(b), lab(cc));
                    if m == 0 {
                        if p.r.contains_key(&key) {
                            return Err(Error::Consistency(format!("{} given but N is zero", name())));
                        }
                        continue;
                    }
                    let unit_leg = a == 0 || b == 0;
                    let mat = match p.r.get(&key) {
                        Some(x) => {
                            if x.nrows() != m || x.ncols() != m {
                                return Err(Error::Consistency(format!("{} must be {m}x{m}", name())));
                            }
                            if unit_leg && max_abs(&(x - Mat::identity(m, m))) > p.tolerance {
                                return Err(Error::Consistency(format!("{} with a unit leg must be the identity", name())));
                            }
                            x.clone()
                        }
                        None if unit_leg => Mat::identity(m, m),
                        None => return Err(Error::MissingData(name())),
                    };
                    let inv = invert(&mat, &name())?;
                    rmap.insert(key, RBlock { mat, inv });
                }
            }
        }

        if p.theta.len() != r {
            return Err(Error::Consistency(format!("theta has {} entries, expected {r}", p.theta.len())));
        }
        if (p.theta[0] - c(1.0, 0.0)).norm() > p.tolerance {
            return Err(Error::Consistency("theta of the unit must be 1".into()));
        }
        for i in 0..r {
            if (p.theta[i].norm() - 1.0).abs() > p.tolerance {
                return Err(Error::Consistency(format!("|theta_{}| != 1", lab(i))));
            }
            if (p.theta[i] - p.theta[dual[i]]).norm() > p.tolerance {
                return Err(Error::Consistency(format!("theta is not selfdual at {}", lab(i))));
            }
        }

        let qdims = perron_frobenius(r, &p.n)?;
        let mut cat = FusionCategoryData {
            name: p.name,
            labels: p.labels,
            dual,
            n: p.n,
            f: fmap,
            r: rmap,
            theta: p.theta,
            qdims,
            s: Mat::zeros(0, 0),
            tolerance: p.tolerance,
            notes: p.notes,
        };
        cat.s = cat.compute_s();
        Ok(cat)
    }

    fn check_coherence(&self) -> Result<()> {
        let tol = self.tolerance;
        let pent = verify_pentagon(self)?;
        if !(pent.max_residual <= tol) {
            return Err(Error::Consistency(format!(
                "pentagon residual {:.3e} at {}",
                pent.max_residual, pent.worst_index
            )));
        }
        let hex = verify_hexagon(self)?;
        if !(hex.max_residual <= tol) {
            return Err(Error::Consistency(format!(
                "hexagon residual {:.3e} at {}",
                hex.max_residual, hex.worst_index
            )));
        }
        let rib = self.ribbon_residual();
        if !(rib.0 <= tol) {
            return Err(Error::Consistency(format!("ribbon residual {:.3e} at {}", rib.0, rib.1)));
        }
        let piv = self.pivotal_residual();
        if !(piv.0 <= tol) {
            return Err(Error::Consistency(format!(
                "pivotal normalization residual {:.3e} at {}",
                piv.0, piv.1
            )));
        }
        Ok(())
    }

    /// `max ‖θ_c − R^{ba}_c R^{ab}_c θ_a θ_b‖`, with the worst `(a,b,c)`.
    pub fn ribbon_residual(&self) -> (f64, String) {
        let mut worst = (0.0, String::new());
        for ((a, b, cc), _) in self.nonzero_triples() {
            let m = self.n(a, b, cc);
            let lhs = Mat::identity(m, m) * self.theta[cc];
            let rhs = &self.r[&[b, a, cc]].mat * &self.r[&[a, b, cc]].mat * (self.theta[a] * self.theta[b]);
            let res = max_abs(&(lhs - rhs));
            if res > worst.0 || worst.1.is_empty() {
                worst = (res, self.fmt_index(&[a, b, cc]));
            }
        }
        worst
    }

    /// Residual of the conditions making the cup/cap normalization consistent:
    /// `F^{xx̄x}_x[0,0] = F⁻¹^{x̄xx̄}_x̄[0,0]` and `d_x² F^{xx̄x}_x[0,0] F⁻¹^{xx̄x}_x[0,0] = 1`.
    pub fn pivotal_residual(&self) -> (f64, String) {
        let mut worst = (0.0, String::new());
        for x in 0..self.rank() {
            let xb = self.dual[x];
            let f = self.f_unit_entry(x);
            let finv_bar = self.finv_unit_entry(xb);
            let finv = self.finv_unit_entry(x);
            let d = self.qdims[x];
            let r1 = (f - finv_bar).norm();
            let r2 = (f * finv * (d * d) - c(1.0, 0.0)).norm();
            let res = r1.max(r2);
            if res > worst.0 || worst.1.is_empty() {
                worst = (res, self.labels[x].clone());
            }
        }
        worst
    }

    /// `F^{x x̄ x}_x[(1,0,0)][(1,0,0)]`.
    pub fn f_unit_entry(&self, x: usize) -> C64 {
        let xb = self.dual[x];
        let blk = &self.f[&[x, xb, x, x]];
        let i = blk.left_index((0, 0, 0)).expect("unit channel");
        let j = blk.right_index((0, 0, 0)).expect("unit channel");
        blk.mat[(i, j)]
    }

    /// `F⁻¹^{x x̄ x}_x[(1,0,0)][(1,0,0)]`.
    pub fn finv_unit_entry(&self, x: usize) -> C64 {
        let xb = self.dual[x];
        let blk = &self.f[&[x, xb, x, x]];
        let i = blk.right_index((0, 0, 0)).expect("unit channel");
        let j = blk.left_index((0, 0, 0)).expect("unit channel");
        blk.inv[(i, j)]
    }

    /// Frobenius–Schur indicator `d_x F^{x x̄ x}_x[0,0]` for selfdual `x`; `None` otherwise.
    pub fn frobenius_schur(&self, x: usize) -> Option<C64> {
        (self.dual[x] == x).then(|| self.f_unit_entry(x) * self.qdims[x])
    }

    fn compute_s(&self) -> Mat {
        let r = self.rank();
        let dtot = self.total_dimension();
        Mat::from_fn(r, r, |a, b| {
            let mut acc = c(0.0, 0.0);
            for cc in 0..r {
                if self.n(a, b, cc) == 0 {
                    continue;
                }
                let prod = &self.r[&[b, a, cc]].mat * &self.r[&[a, b, cc]].mat;
                acc += prod.trace() * self.qdims[cc];
            }
            acc / dtot
        })
    }

    fn nonzero_triples(&self) -> impl Iterator<Item = ((usize, usize, usize), usize)> + '_ {
        let r = self.rank();
        (0..r * r * r).filter_map(move |ix| {
            let v = self.n[ix] as usize;
            (v > 0).then(|| ((ix / (r * r), (ix / r) % r, ix % r), v))
        })
    }

    pub(crate) fn fmt_index(&self, ix: &[usize]) -> String {
        let parts: Vec<&str> = ix.iter().map(|&i| self.labels[i].as_str()).collect();
        format!("({})", parts.join(","))
    }

    // ---- accessors -------------------------------------------------------

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn set_name(&mut self, name: &str) {
        self.name = name.to_string();
    }
    pub fn notes(&self) -> Option<&str> {
        self.notes.as_deref()
    }
    pub fn rank(&self) -> usize {
        self.labels.len()
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }
    /// Look up a label; Greek labels also answer to their ASCII names (`tau` for `τ`).
    pub fn index_of(&self, label: &str) -> Result<usize> {
        let greek = GREEK.iter().find(|(ascii, _)| *ascii == label).map(|(_, g)| *g);
        self.labels
            .iter()
            .position(|l| l == label)
            .or_else(|| greek.and_then(|g| self.labels.iter().position(|l| l == g)))
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// The ASCII spelling of a label, if it has one.
    pub fn ascii_label(&self, i: usize) -> &str {
        let l = self.labels[i].as_str();
        GREEK.iter().find(|(_, g)| *g == l).map_or(l, |(a, _)| a)
    }
    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }
    /// `N_{ij}^k`.
    pub fn n(&self, i: usize, j: usize, k: usize) -> usize {
        let r = self.rank();
        self.n[(i * r + j) * r + k] as usize
    }
    pub fn n_flat(&self) -> &[u32] {
        &self.n
    }
    /// Channels `k` with `N_{ij}^k > 0`.
    pub fn fusion_channels(&self, i: usize, j: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank()).filter(move |&k| self.n(i, j, k) > 0)
    }
    pub fn f_block(&self, a: usize, b: usize, c: usize, d: usize) -> Result<&FBlock> {
        self.f.get(&[a, b, c, d]).ok_or_else(|| {
            Error::MissingData(format!(
                "F^{{{},{},{}}}_{}",
                self.labels[a], self.labels[b], self.labels[c], self.labels[d]
            ))
        })
    }
    pub fn f_blocks(&self) -> &BTreeMap<[usize; 4], FBlock> {
        &self.f
    }
    pub fn r_block(&self, a: usize, b: usize, c: usize) -> Result<&RBlock> {
        self.r.get(&[a, b, c]).ok_or_else(|| {
            Error::MissingData(format!("R^{{{},{}}}_{}", self.labels[a], self.labels[b], self.labels[c]))
        })
    }
    pub fn r_blocks(&self) -> &BTreeMap<[usize; 3], RBlock> {
        &self.r
    }
    pub fn theta(&self, i: usize) -> C64 {
        self.theta[i]
    }
    pub fn thetas(&self) -> &[C64] {
        &self.theta
    }
    pub fn qdim(&self, i: usize) -> f64 {
        self.qdims[i]
    }
    pub fn quantum_dimensions(&self) -> &[f64] {
        &self.qdims
    }
    /// `D = sqrt(Σ d_i²)`.
    pub fn total_dimension(&self) -> f64 {
        self.qdims.iter().map(|d| d * d).sum::<f64>().sqrt()
    }
    /// Normalized S-matrix `S_ab = (1/D) Σ_c d_c Tr(R^{ba}_c R^{ab}_c)`.
    pub fn s_matrix(&self) -> &Mat {
        &self.s
    }
    pub fn is_modular(&self) -> bool {
        self.s.determinant().norm() > self.tolerance
    }
    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }
    pub fn set_tolerance(&mut self, tol: f64) {
        self.tolerance = tol;
    }
    pub fn is_multiplicity_free(&self) -> bool {
        self.n.iter().all(|&v| v <= 1)
    }

    /// Ingredients for rebuilding (e.g. to apply a perturbation).  Identity
    /// unit-leg blocks are included explicitly.
    pub fn to_parts(&self) -> CategoryParts {
        CategoryParts {
            name: self.name.clone(),
            labels: self.labels.clone(),
            dual: Some(self.dual.clone()),
            n: self.n.clone(),
            f: self.f.iter().map(|(k, b)| (*k, b.mat.clone())).collect(),
            r: self.r.iter().map(|(k, b)| (*k, b.mat.clone())).collect(),
            theta: self.theta.clone(),
            tolerance: self.tolerance,
            notes: self.notes.clone(),
        }
    }
}

/// PF eigenvector of `M = Σ_i N_i`, normalized so that `x_0 = 1`.
/// Since `N_i d = d_i d` for every `i`, its entries are the quantum dimensions.
fn perron_frobenius(r: usize, n: &[u32]) -> Result<Vec<f64>> {
    let mut m = vec![0.0f64; r * r];
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                m[j * r + k] += n[(i * r + j) * r + k] as f64;
            }
        }
    }
    let mut x = vec![1.0f64; r];
    for _ in 0..100_000 {
        let mut y = vec![0.0f64; r];
        for j in 0..r {
            for k in 0..r {
                y[j] += m[j * r + k] * x[k];
            }
        }
        let s = y[0];
        if !(s > 0.0) {
            return Err(Error::Numerical("Perron-Frobenius iteration degenerated".into()));
        }
        for v in y.iter_mut() {
            *v /= s;
        }
        let delta = x.iter().zip(&y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        x = y;
        if delta < 1e-15 {
            return Ok(x);
        }
    }
    Err(Error::Numerical("Perron-Frobenius iteration did not converge".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn fibonacci_basics() {
        let cat = catalog::fibonacci();
        assert_eq!(cat.rank(), 2);
        assert_eq!(cat.n(1, 1, 1), 1);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((cat.qdim(1) - phi).abs() < 1e-12);
        assert!(cat.is_modular());
    }

    #[test]
    fn dimension_fusion_rule() {
        for cat in catalog::all() {
            let r = cat.rank();
            for i in 0..r {
                for j in 0..r {
                    let rhs: f64 = (0..r).map(|k| cat.n(i, j, k) as f64 * cat.qdim(k)).sum();
                    assert!((cat.qdim(i) * cat.qdim(j) - rhs).abs() < 1e-9, "{}", cat.name());
                }
                assert!((cat.qdim(i) - cat.qdim(cat.dual(i))).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn s_matrix_is_unitary_for_modular_catalog() {
        for cat in catalog::all().into_iter().filter(|c| c.is_modular()) {
            let s = cat.s_matrix();
            let r = cat.rank();
            let prod = s * s.adjoint();
            assert!(max_abs(&(prod - Mat::identity(r, r))) < 1e-9, "{}", cat.name());
        }
    }

    #[test]
    fn symmetric_z2_is_not_modular() {
        assert!(!catalog::z2_bosonic().is_modular());
    }

    #[test]
    fn sign_flip_is_rejected_at_load_but_not_structurally() {
        let mut p = catalog::fibonacci().to_parts();
        p.f.get_mut(&[1, 1, 1, 1]).unwrap()[(0, 0)] *= -1.0;
        let err = FusionCategoryData::from_parts(p.clone(), LoadOptions::default()).unwrap_err();
        match err {
            Error::Consistency(msg) => assert!(msg.starts_with("pentagon"), "{msg}"),
            e => panic!("unexpected {e:?}"),
        }
        assert!(FusionCategoryData::from_parts(p, LoadOptions { coherence: false }).is_ok());
    }

    #[test]
    fn missing_block_is_missing_data() {
        let mut p = catalog::fibonacci().to_parts();
        p.f.remove(&[1, 1, 1, 1]);
        assert!(matches!(
            FusionCategoryData::from_parts(p, LoadOptions::default()),
            Err(Error::MissingData(_))
        ));
    }

    #[test]
    fn non_unit_theta_rejected() {
        let mut p = catalog::fibonacci().to_parts();
        p.theta[1] *= 2.0;
        assert!(matches!(
            FusionCategoryData::from_parts(p, LoadOptions::default()),
            Err(Error::Consistency(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        for cat in catalog::all() {
            let text = cat.to_json_string();
            let back = FusionCategoryData::from_json_str(&text, "x", LoadOptions::default()).unwrap();
            assert_eq!(back.labels(), cat.labels());
            assert_eq!(back.name(), cat.name());
            for (k, b) in cat.f_blocks() {
                assert!(max_abs(&(&b.mat - &back.f_blocks()[k].mat)) < 1e-15);
            }
        }
    }
}

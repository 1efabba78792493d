//! Deligne powers `C^{⊠n}` as flat skeletal data.
//!
//! Labels are n-tuples of base labels in lexicographic order (first component
//! slowest).  A flat multiplicity index is the mixed-radix combination of the
//! component indices, again first component slowest.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{left_basis, right_basis, CategoryParts, Channel, FusionCategoryData};
use crate::error::{Error, Result};
use crate::Mat;

pub const DEFAULT_RANK_CAP: usize = 10_000;

#[derive(Debug, Clone)]
pub struct DeligneCategoryData {
    base: FusionCategoryData,
    n: usize,
    flat: FusionCategoryData,
}

impl DeligneCategoryData {
    pub fn base(&self) -> &FusionCategoryData {
        &self.base
    }
    pub fn power(&self) -> usize {
        self.n
    }
    /// The product category as ordinary skeletal data.
    pub fn flat(&self) -> &FusionCategoryData {
        &self.flat
    }
    /// Component labels of a flat label.
    pub fn components(&self, flat: usize) -> Vec<usize> {
        split(flat, self.base.rank(), self.n)
    }
    pub fn flat_index(&self, comps: &[usize]) -> usize {
        comps.iter().fold(0, |acc, &i| acc * self.base.rank() + i)
    }
}

fn split(mut x: usize, r: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for m in (0..n).rev() {
        out[m] = x % r;
        x /= r;
    }
    out
}

/// Split a flat multiplicity index into component indices given the component radices.
fn split_mult(mut x: usize, radices: &[usize]) -> Vec<usize> {
    let mut out = vec![0; radices.len()];
    for m in (0..radices.len()).rev() {
        out[m] = x % radices[m];
        x /= radices[m];
    }
    out
}

/// `C^{⊠n}` with F, R, θ and d taken as componentwise products.
///
/// The flat data is built without re-running the coherence checks; the
/// products satisfy them by construction and the test-suite verifies this.
pub fn deligne_power(cat: &FusionCategoryData, n: usize, rank_cap: usize) -> Result<DeligneCategoryData> {
    if n == 0 {
        return Err(Error::Size("Deligne power must be at least 1".into()));
    }
    let r = cat.rank();
    let rank = r
        .checked_pow(n as u32)
        .filter(|&x| x <= rank_cap)
        .ok_or_else(|| Error::Size(format!("rank {r}^{n} exceeds the cap {rank_cap}")))?;

    let comps: Vec<Vec<usize>> = (0..rank).map(|x| split(x, r, n)).collect();
    let labels: Vec<String> = comps
        .iter()
        .map(|cs| {
            let names: Vec<&str> = cs.iter().map(|&i| cat.label(i)).collect();
            names.join("⊠")
        })
        .collect();

    let mut nflat = vec![0u32; rank * rank * rank];
    for i in 0..rank {
        for j in 0..rank {
            for k in 0..rank {
                nflat[(i * rank + j) * rank + k] =
                    (0..n).map(|m| cat.n(comps[i][m], comps[j][m], comps[k][m]) as u32).product();
            }
        }
    }

    let prod = |vals: &mut dyn Iterator<Item = crate::C64>| {
        let first = vals.next().expect("n >= 1");
        vals.fold(first, |acc, z| acc * z)
    };

    let mut f = BTreeMap::new();
    for a in 0..rank {
        for b in 0..rank {
            for c in 0..rank {
                for d in 0..rank {
                    let left = left_basis(rank, &nflat, a, b, c, d);
                    if left.is_empty() {
                        continue;
                    }
                    let right = right_basis(rank, &nflat, a, b, c, d);
                    let blocks: Vec<_> = (0..n)
                        .map(|m| cat.f_block(comps[a][m], comps[b][m], comps[c][m], comps[d][m]))
                        .collect::<Result<_>>()?;
                    let loc = |ch: Channel, m: usize, is_left: bool| -> Channel {
                        let (x, p, q) = ch;
                        let xs = &comps[x];
                        let (r1, r2): (Vec<usize>, Vec<usize>) = (0..n)
                            .map(|k| {
                                if is_left {
                                    (cat.n(comps[a][k], comps[b][k], xs[k]), cat.n(xs[k], comps[c][k], comps[d][k]))
                                } else {
                                    (cat.n(comps[b][k], comps[c][k], xs[k]), cat.n(comps[a][k], xs[k], comps[d][k]))
                                }
                            })
                            .unzip();
                        (xs[m], split_mult(p, &r1)[m], split_mult(q, &r2)[m])
                    };
                    let li: Vec<Vec<usize>> = left
                        .iter()
                        .map(|&ch| (0..n).map(|m| blocks[m].left_index(loc(ch, m, true)).unwrap()).collect())
                        .collect();
                    let ri: Vec<Vec<usize>> = right
                        .iter()
                        .map(|&ch| (0..n).map(|m| blocks[m].right_index(loc(ch, m, false)).unwrap()).collect())
                        .collect();
                    let mat = Mat::from_fn(left.len(), right.len(), |i, j| {
                        prod(&mut (0..n).map(|m| blocks[m].mat[(li[i][m], ri[j][m])]))
                    });
                    f.insert([a, b, c, d], mat);
                }
            }
        }
    }

    let mut rmap = BTreeMap::new();
    for a in 0..rank {
        for b in 0..rank {
            for c in 0..rank {
                let dim = nflat[(a * rank + b) * rank + c] as usize;
                if dim == 0 {
                    continue;
                }
                let blocks: Vec<_> = (0..n)
                    .map(|m| cat.r_block(comps[a][m], comps[b][m], comps[c][m]))
                    .collect::<Result<_>>()?;
                let radices: Vec<usize> = (0..n).map(|m| blocks[m].mat.nrows()).collect();
                let mat = Mat::from_fn(dim, dim, |i, j| {
                    let (si, sj) = (split_mult(i, &radices), split_mult(j, &radices));
                    prod(&mut (0..n).map(|m| blocks[m].mat[(si[m], sj[m])]))
                });
                rmap.insert([a, b, c], mat);
            }
        }
    }

    let theta = (0..rank).map(|x| prod(&mut comps[x].iter().map(|&i| cat.theta(i)))).collect();
    let qdims: Vec<f64> = (0..rank)
        .map(|x| {
            let mut it = comps[x].iter().map(|&i| cat.qdim(i));
            let first = it.next().unwrap();
            it.fold(first, |acc, d| acc * d)
        })
        .collect();

    let parts = CategoryParts {
        name: format!("{}^{}", cat.name(), n),
        labels,
        dual: None,
        n: nflat,
        f,
        r: rmap,
        theta,
        tolerance: cat.tolerance(),
        notes: None,
    };
    let flat = FusionCategoryData::structural(parts)?.with_qdims(qdims);
    Ok(DeligneCategoryData { base: cat.clone(), n, flat })
}

impl FusionCategoryData {
    pub(super) fn with_qdims(mut self, q: Vec<f64>) -> Self {
        self.qdims = q;
        self.s = self.compute_s();
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::catdata::{max_abs, verify_hexagon, verify_pentagon};

    #[test]
    fn fibonacci_squared_labels() {
        let d = deligne_power(&catalog::fibonacci(), 2, DEFAULT_RANK_CAP).unwrap();
        let names: Vec<&str> = d.flat().labels().iter().map(|s| s.as_str()).collect();
        assert_eq!(names, ["1⊠1", "1⊠τ", "τ⊠1", "τ⊠τ"]);
        assert_eq!(d.components(2), [1, 0]);
        assert_eq!(d.flat_index(&[1, 0]), 2);
    }

    #[test]
    fn vec_cubed_is_vec() {
        let d = deligne_power(&catalog::trivial(), 3, DEFAULT_RANK_CAP).unwrap();
        assert_eq!(d.flat().rank(), 1);
        assert_eq!(d.flat().theta(0), crate::c(1.0, 0.0));
    }

    #[test]
    fn fibonacci_cubed_hom_dim() {
        let d = deligne_power(&catalog::fibonacci(), 3, DEFAULT_RANK_CAP).unwrap();
        let t = d.flat_index(&[1, 1, 1]);
        assert_eq!(d.flat().n(t, t, t), 1);
    }

    #[test]
    fn first_power_is_bit_identical() {
        for cat in catalog::all() {
            let d = deligne_power(&cat, 1, DEFAULT_RANK_CAP).unwrap();
            let fl = d.flat();
            assert_eq!(fl.quantum_dimensions(), cat.quantum_dimensions());
            assert_eq!(fl.thetas(), cat.thetas());
            assert_eq!(fl.n_flat(), cat.n_flat());
            for (k, b) in cat.f_blocks() {
                assert_eq!(fl.f_blocks()[k].mat, b.mat);
            }
            for (k, b) in cat.r_blocks() {
                assert_eq!(fl.r_blocks()[k].mat, b.mat);
            }
            assert_eq!(fl.s_matrix(), cat.s_matrix());
        }
    }

    #[test]
    fn products_are_componentwise_and_coherent() {
        for cat in [catalog::fibonacci(), catalog::ising(), catalog::semion()] {
            let d = deligne_power(&cat, 2, DEFAULT_RANK_CAP).unwrap();
            let fl = d.flat();
            for x in 0..fl.rank() {
                let cs = d.components(x);
                assert_eq!(fl.qdim(x), cat.qdim(cs[0]) * cat.qdim(cs[1]));
                assert_eq!(fl.theta(x), cat.theta(cs[0]) * cat.theta(cs[1]));
            }
            assert!(verify_pentagon(fl).unwrap().max_residual < 1e-10);
            assert!(verify_hexagon(fl).unwrap().max_residual < 1e-10);
            // S of a product is the Kronecker product of S.
            let s = cat.s_matrix();
            assert!(max_abs(&(fl.s_matrix() - s.kronecker(s))) < 1e-12);
        }
    }

    #[test]
    fn rank_cap_is_enforced() {
        assert!(matches!(deligne_power(&catalog::ising(), 3, 26), Err(Error::Size(_))));
        assert!(matches!(deligne_power(&catalog::ising(), 0, 100), Err(Error::Size(_))));
    }
}

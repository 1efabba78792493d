//! The JSON category file format.
//!
//! Keys are comma-separated label names; multiplicity indices in files are 1-based.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{left_basis, right_basis, CategoryParts, FusionCategoryData, DEFAULT_TOLERANCE};
use crate::error::{Error, Result};
use crate::{c, Mat};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCategory {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    description: Option<String>,
    /// Free-form remarks, e.g. the cup/cap sign convention for non-trivial FS indicators.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    notes: Option<String>,
    labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dual: Option<BTreeMap<String, String>>,
    #[serde(rename = "N")]
    n: BTreeMap<String, u32>,
    #[serde(rename = "F", default)]
    f: BTreeMap<String, BTreeMap<String, [f64; 2]>>,
    #[serde(rename = "R", default)]
    r: BTreeMap<String, Vec<Vec<[f64; 2]>>>,
    theta: BTreeMap<String, [f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tolerance: Option<f64>,
}

struct Labels<'a>(&'a [String]);

impl Labels<'_> {
    fn get(&self, s: &str) -> Result<usize> {
        let s = s.trim();
        self.0
            .iter()
            .position(|l| l == s)
            .ok_or_else(|| Error::UnknownLabel(s.to_string()))
    }
    fn tuple<const K: usize>(&self, key: &str) -> Result<[usize; K]> {
        let parts: Vec<&str> = key.split(',').collect();
        if parts.len() != K {
            return Err(Error::Parse(format!("key `{key}` must have {K} comma-separated labels")));
        }
        let mut out = [0; K];
        for (o, p) in out.iter_mut().zip(parts) {
            *o = self.get(p)?;
        }
        Ok(out)
    }
    /// `label,m1,m2` with 1-based multiplicities → 0-based triple.
    fn channel(&self, s: &str) -> Result<(usize, usize, usize)> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("channel `{s}` must be `label,m,m`")));
        }
        let m = |t: &str| -> Result<usize> {
            let v: usize = t
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad multiplicity `{t}` in `{s}`")))?;
            if v == 0 {
                return Err(Error::Parse(format!("multiplicities are 1-based in `{s}`")));
            }
            Ok(v - 1)
        };
        Ok((self.get(parts[0])?, m(parts[1])?, m(parts[2])?))
    }
}

pub(super) fn parse(text: &str, default_name: &str) -> Result<CategoryParts> {
    let raw: RawCategory = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let rank = raw.labels.len();
    if rank == 0 {
        return Err(Error::Parse("`labels` is empty".into()));
    }
    for (i, l) in raw.labels.iter().enumerate() {
        if l.is_empty() || l.contains(',') || l.contains('|') || raw.labels[..i].contains(l) {
            return Err(Error::Parse(format!("invalid or duplicate label `{l}`")));
        }
    }
    let labels = Labels(&raw.labels);

    let dual = match &raw.dual {
        None => None,
        Some(m) => {
            let mut d = alloc::vec![usize::MAX; rank];
            for (k, v) in m {
                d[labels.get(k)?] = labels.get(v)?;
            }
            if d.contains(&usize::MAX) {
                return Err(Error::Parse("`dual` must list every label".into()));
            }
            Some(d)
        }
    };

    let mut n = alloc::vec![0u32; rank * rank * rank];
    for (k, v) in &raw.n {
        let [i, j, l] = labels.tuple::<3>(k)?;
        n[(i * rank + j) * rank + l] = *v;
    }

    let mut f = BTreeMap::new();
    for (k, entries) in &raw.f {
        let [a, b, cc, d] = labels.tuple::<4>(k)?;
        let left = left_basis(rank, &n, a, b, cc, d);
        let right = right_basis(rank, &n, a, b, cc, d);
        let mut m = Mat::zeros(left.len(), right.len());
        for (ek, val) in entries {
            let (l, r) = ek
                .split_once('|')
                .ok_or_else(|| Error::Parse(format!("F entry key `{ek}` must be `e,α,β|f,μ,ν`")))?;
            let lc = labels.channel(l)?;
            let rc = labels.channel(r)?;
            let li = left.binary_search(&lc).map_err(|_| {
                Error::Consistency(format!("F^{{{k}}}: `{l}` is not a left channel allowed by N"))
            })?;
            let ri = right.binary_search(&rc).map_err(|_| {
                Error::Consistency(format!("F^{{{k}}}: `{r}` is not a right channel allowed by N"))
            })?;
            m[(li, ri)] = c(val[0], val[1]);
        }
        f.insert([a, b, cc, d], m);
    }

    let mut r = BTreeMap::new();
    for (k, rows) in &raw.r {
        let key = labels.tuple::<3>(k)?;
        let nr = rows.len();
        if rows.iter().any(|row| row.len() != nr) {
            return Err(Error::Parse(format!("R^{{{k}}} must be a square matrix")));
        }
        r.insert(key, Mat::from_fn(nr, nr, |i, j| c(rows[i][j][0], rows[i][j][1])));
    }

    let mut theta = alloc::vec![c(f64::NAN, f64::NAN); rank];
    for (k, v) in &raw.theta {
        theta[labels.get(k)?] = c(v[0], v[1]);
    }
    if let Some(i) = theta.iter().position(|t| t.re.is_nan()) {
        return Err(Error::Parse(format!("theta missing for `{}`", raw.labels[i])));
    }

    Ok(CategoryParts {
        name: raw.name.clone().unwrap_or_else(|| default_name.to_string()),
        labels: raw.labels.clone(),
        dual,
        n,
        f,
        r,
        theta,
        tolerance: raw.tolerance.unwrap_or(DEFAULT_TOLERANCE),
        notes: raw.notes.clone(),
    })
}

pub(super) fn write(cat: &FusionCategoryData) -> String {
    let l = |i: usize| cat.label(i).to_string();
    let rank = cat.rank();
    let mut n = BTreeMap::new();
    for i in 0..rank {
        for j in 0..rank {
            for k in 0..rank {
                if cat.n(i, j, k) > 0 {
                    n.insert(format!("{},{},{}", l(i), l(j), l(k)), cat.n(i, j, k) as u32);
                }
            }
        }
    }
    let ch = |(x, a, b): (usize, usize, usize)| format!("{},{},{}", l(x), a + 1, b + 1);
    let mut f = BTreeMap::new();
    for (k, blk) in cat.f_blocks() {
        if k[..3].contains(&0) {
            continue;
        }
        let mut entries = BTreeMap::new();
        for (i, lc) in blk.left.iter().enumerate() {
            for (j, rc) in blk.right.iter().enumerate() {
                let z = blk.mat[(i, j)];
                if z.norm() != 0.0 {
                    entries.insert(format!("{}|{}", ch(*lc), ch(*rc)), [z.re, z.im]);
                }
            }
        }
        f.insert(format!("{},{},{},{}", l(k[0]), l(k[1]), l(k[2]), l(k[3])), entries);
    }
    let mut r = BTreeMap::new();
    for (k, blk) in cat.r_blocks() {
        if k[0] == 0 || k[1] == 0 {
            continue;
        }
        let rows = (0..blk.mat.nrows())
            .map(|i| (0..blk.mat.ncols()).map(|j| [blk.mat[(i, j)].re, blk.mat[(i, j)].im]).collect())
            .collect();
        r.insert(format!("{},{},{}", l(k[0]), l(k[1]), l(k[2])), rows);
    }
    let raw = RawCategory {
        name: Some(cat.name().to_string()),
        description: None,
        notes: cat.notes().map(|s| s.to_string()),
        labels: cat.labels().to_vec(),
        dual: Some((0..rank).map(|i| (l(i), l(cat.dual(i)))).collect()),
        n,
        f,
        r,
        theta: (0..rank).map(|i| (l(i), [cat.theta(i).re, cat.theta(i).im])).collect(),
        tolerance: Some(cat.tolerance()),
    };
    serde_json::to_string_pretty(&raw).expect("serializable")
}

//! Evaluating DSL programs and printing the resulting blocks.

use serde::Serialize;

use mtcperm_core::evaluator::{word_to_string, Evaluator, FusionTree, MultiWord, Strand, TensorSum};
use mtcperm_core::{Error, FusionCategoryData, Mat};

use crate::dsl::{DslError, Program, WordRef};

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error(transparent)]
    Dsl(#[from] DslError),
    /// `slice` is 0-based; `line` is where it was written.
    #[error("type mismatch at slice {slice}{}: {msg}", line.map(|l| format!(" (line {l})")).unwrap_or_default())]
    Type { slice: usize, line: Option<usize>, msg: String },
    #[error(transparent)]
    Core(Error),
}

/// One block of the result: totals per factor and the matrix with its bases.
#[derive(Debug, Clone, Serialize)]
pub struct Block {
    pub roots: Vec<String>,
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Evaluated {
    pub category: String,
    pub source: String,
    pub target: String,
    pub blocks: Vec<Block>,
}

impl Evaluated {
    /// Largest entrywise difference, or `None` if the shapes differ.
    pub fn distance(&self, other: &Evaluated) -> Option<f64> {
        if self.source != other.source || self.target != other.target || self.blocks.len() != other.blocks.len() {
            return None;
        }
        let mut d: f64 = 0.0;
        for (a, b) in self.blocks.iter().zip(&other.blocks) {
            if a.roots != b.roots || a.re.len() != b.re.len() {
                return None;
            }
            for (r, (x, y)) in a.re.iter().zip(&b.re).enumerate() {
                for (cidx, (u, v)) in x.iter().zip(y).enumerate() {
                    d = d.max((u - v).hypot(a.im[r][cidx] - b.im[r][cidx]));
                }
            }
        }
        Some(d)
    }
}

fn tree_name(cat: &FusionCategoryData, t: &FusionTree) -> String {
    if t.entries.is_empty() {
        return "∅".into();
    }
    let parts: Vec<String> = t
        .entries
        .iter()
        .map(|&(ch, mu)| if mu == 0 { cat.label(ch).to_string() } else { format!("{}#{}", cat.label(ch), mu + 1) })
        .collect();
    format!("[{}]", parts.join(","))
}

fn multiword_string(cat: &FusionCategoryData, w: &MultiWord) -> String {
    w.iter().map(|f| word_to_string(cat, f)).collect::<Vec<_>>().join(" || ")
}

/// Per-factor bases of `word` at `roots`, combined in Kronecker order.
fn product_legend(ev: &Evaluator<'_>, word: &MultiWord, roots: &[usize]) -> Vec<String> {
    let mut out = vec![String::new()];
    for (m, (w, &t)) in word.iter().zip(roots).enumerate() {
        let names: Vec<String> = ev.basis(w, t).trees.iter().map(|tr| tree_name(ev.cat(), tr)).collect();
        out = out
            .iter()
            .flat_map(|p| names.iter().map(move |n| if m == 0 { n.clone() } else { format!("{p} ⊠ {n}") }))
            .collect();
    }
    out
}

fn common_roots(ev: &Evaluator<'_>, a: &[Strand], b: &[Strand]) -> Vec<usize> {
    let rb = ev.roots(b);
    ev.roots(a).into_iter().filter(|t| rb.contains(t)).collect()
}

fn map_type_error(e: Error, lines: &[usize]) -> EvalError {
    match e {
        Error::TypeMismatch { slice, msg } => EvalError::Type { slice, line: lines.get(slice).copied(), msg },
        other => EvalError::Core(other),
    }
}

/// Parse-free entry point: evaluate a parsed program on `cat`.
pub fn evaluate_program(
    cat: &FusionCategoryData,
    prog: &Program,
    source: Option<&WordRef>,
    target: Option<&WordRef>,
) -> Result<Evaluated, EvalError> {
    let r = prog.resolve(cat, source, target)?;
    let ev = Evaluator::new(cat);
    let ts = TensorSum::evaluate(&ev, &r.programs, &r.source).map_err(|e| map_type_error(e, &r.lines))?;
    if let Some(t) = &r.target {
        if *t != ts.target {
            return Err(EvalError::Type {
                slice: r.lines.len(),
                line: None,
                msg: format!(
                    "diagram ends at `{}`, expected `{}`",
                    multiword_string(cat, &ts.target),
                    multiword_string(cat, t)
                ),
            });
        }
    }
    let dense = ts.dense(&ev);
    // every admissible tuple of totals, zero blocks included
    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
    for (s, t) in ts.source.iter().zip(&ts.target) {
        let rs = common_roots(&ev, s, t);
        tuples = tuples
            .into_iter()
            .flat_map(|p| {
                rs.iter().map(move |&x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    let mut blocks = Vec::new();
    for roots in tuples {
        let rows = product_legend(&ev, &ts.target, &roots);
        let cols = product_legend(&ev, &ts.source, &roots);
        let m = dense.get(&roots).cloned().unwrap_or_else(|| Mat::zeros(rows.len(), cols.len()));
        blocks.push(Block {
            roots: roots.iter().map(|&t| cat.label(t).to_string()).collect(),
            re: (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)].re).collect()).collect(),
            im: (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)].im).collect()).collect(),
            rows,
            cols,
        });
    }
    Ok(Evaluated {
        category: cat.name().into(),
        source: multiword_string(cat, &ts.source),
        target: multiword_string(cat, &ts.target),
        blocks,
    })
}

fn fmt_c(re: f64, im: f64) -> String {
    let z = |x: f64| if x.abs() < 5e-13 { 0.0 } else { x };
    let (re, im) = (z(re), z(im));
    if im == 0.0 {
        format!("{re:.6}")
    } else {
        format!("{re:.6}{}{:.6}i", if im < 0.0 { "-" } else { "+" }, im.abs())
    }
}

pub fn render_text(e: &Evaluated) -> String {
    let mut out = format!("{}: [{}] -> [{}]\n", e.category, e.source, e.target);
    if e.blocks.is_empty() {
        out += "  (no admissible totals: the Hom space is zero)\n";
    }
    for b in &e.blocks {
        out += &format!("block total ({}): {}x{}\n", b.roots.join(", "), b.rows.len(), b.cols.len());
        out += &format!("  rows: {}\n  cols: {}\n", b.rows.join("  "), b.cols.join("  "));
        for (r, c) in b.re.iter().zip(&b.im) {
            let cells: Vec<String> = r.iter().zip(c).map(|(x, y)| format!("{:>22}", fmt_c(*x, *y))).collect();
            out += &format!("  {}\n", cells.join(""));
        }
    }
    out
}

//! Running the verification suites over categories, in parallel.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use mtcperm_core::catdata::consistency_suite;
use mtcperm_core::evaluator::{identities_suite, Evaluator};
use mtcperm_core::permutation::pentagons::{module_axiom_suite, module_pentagon_suite};
use mtcperm_core::permutation::{algebra_suite, verify_iso_suite};
use mtcperm_core::report::Report;
use mtcperm_core::{dualbases, Error, FusionCategoryData};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Pentagon, hexagon, ribbon, pivotal data and the evaluator identities.
    Consistency,
    Dualbases,
    Algebra,
    Iso,
    /// Module-functor pentagons and the module axioms.
    Pentagons,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [Suite::Consistency, Suite::Dualbases, Suite::Algebra, Suite::Iso, Suite::Pentagons];

    pub fn expand(self) -> Vec<Suite> {
        if self == Suite::All {
            Suite::EACH.to_vec()
        } else {
            vec![self]
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Consistency => "consistency",
            Suite::Dualbases => "dualbases",
            Suite::Algebra => "algebra",
            Suite::Iso => "iso",
            Suite::Pentagons => "pentagons",
            Suite::All => "all",
        }
    }

    /// Suites built on `C ⊠ C` / `C^{⊠3}`; they need a modular category.
    fn needs_modular(self) -> bool {
        matches!(self, Suite::Algebra | Suite::Iso | Suite::Pentagons)
    }

    /// Default tolerance: the coherence data is held to 1e-10, diagram
    /// evaluations to 1e-9.
    pub fn default_tolerance(self) -> f64 {
        match self {
            Suite::Consistency => 1e-10,
            _ => 1e-9,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Options {
    /// Overrides the per-suite defaults.
    pub tol: Option<f64>,
    pub jobs: usize,
    pub rank_cap: usize,
    pub seed: u64,
    /// Random basis changes per triple in the dual-basis suite.
    pub changes: usize,
    /// Cap on simple tuples per pentagon identity.
    pub tuple_cap: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            tol: None,
            jobs: 1,
            rank_cap: mtcperm_core::catdata::DEFAULT_RANK_CAP,
            seed: 0,
            changes: 10,
            tuple_cap: mtcperm_core::permutation::pentagons::DEFAULT_TUPLE_CAP,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct Outcome {
    pub category: String,
    pub suite: Suite,
    pub status: Status,
    pub seconds: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<Report>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub pass: bool,
    pub outcomes: Vec<Outcome>,
}

impl Summary {
    /// First failing check, as `category/suite/check`.
    pub fn first_failure(&self) -> Option<String> {
        self.outcomes.iter().filter(|o| o.status == Status::Fail).find_map(|o| {
            let r = o.report.as_ref()?;
            let c = r.first_failure()?;
            Some(format!(
                "{}/{}/{}: residual {:.3e} at {}",
                o.category,
                o.suite.name(),
                c.id,
                c.max_residual,
                c.worst_index
            ))
        })
    }
}

fn errored(suite: &str, cat: &str, id: &str, e: &Error) -> Report {
    let mut r = Report::new(suite, cat);
    r.record_error(id, e);
    r
}

/// `A`, `B`, `C` live in `C^{⊠3}`; refuse categories whose cube exceeds the cap.
fn cube_rank(cat: &FusionCategoryData, cap: usize) -> Result<(), Error> {
    let r = cat.rank();
    match r.checked_pow(3) {
        Some(n) if n <= cap => Ok(()),
        _ => Err(Error::Size(format!("rank {r}^3 exceeds the rank cap {cap}"))),
    }
}

/// Run one suite on one category.
pub fn run_suite(cat: &FusionCategoryData, suite: Suite, opts: &Options) -> Outcome {
    let t0 = Instant::now();
    let tol = opts.tol.unwrap_or(suite.default_tolerance());
    let mut out = Outcome {
        category: cat.name().into(),
        suite,
        status: Status::Skipped,
        seconds: 0.0,
        note: None,
        report: None,
    };
    if suite.needs_modular() && !cat.is_modular() {
        out.note = Some("not modular (singular S-matrix)".into());
        return out;
    }
    let ev = Evaluator::new(cat);
    let res: Result<Report, Error> = match suite {
        Suite::Consistency => consistency_suite(cat, tol).and_then(|mut r| {
            // diagram identities are held to the evaluation tolerance
            r.extend(identities_suite(&ev, tol.max(1e-9))?);
            Ok(r)
        }),
        Suite::Dualbases => {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            dualbases::verify_suite(&ev, &mut rng, opts.changes, tol)
        }
        Suite::Algebra => cube_rank(cat, opts.rank_cap).and_then(|_| algebra_suite(&ev, tol)),
        Suite::Iso => cube_rank(cat, opts.rank_cap).and_then(|_| verify_iso_suite(&ev, tol, opts.seed)),
        Suite::Pentagons => module_pentagon_suite(&ev, tol, opts.tuple_cap).and_then(|mut r| {
            r.extend(module_axiom_suite(&ev, tol, opts.tuple_cap)?);
            Ok(r)
        }),
        Suite::All => unreachable!("expanded by the caller"),
    };
    let report = res.unwrap_or_else(|e| errored(suite.name(), cat.name(), suite.name(), &e));
    out.status = if report.pass { Status::Pass } else { Status::Fail };
    out.report = Some(report);
    out.seconds = t0.elapsed().as_secs_f64();
    out
}

/// All `(category, suite)` pairs on `opts.jobs` threads; results come back in
/// category-major order regardless of scheduling.
pub fn run(cats: &[FusionCategoryData], suites: &[Suite], opts: &Options) -> Summary {
    let tasks: Vec<(usize, Suite)> =
        (0..cats.len()).flat_map(|c| suites.iter().flat_map(|s| s.expand()).map(move |s| (c, s))).collect();
    let slots: Mutex<Vec<Option<Outcome>>> = Mutex::new(vec![None; tasks.len()]);
    let next = AtomicUsize::new(0);
    std::thread::scope(|sc| {
        for _ in 0..opts.jobs.max(1).min(tasks.len().max(1)) {
            sc.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(c, s)) = tasks.get(i) else { break };
                let o = run_suite(&cats[c], s, opts);
                slots.lock().expect("no poisoned workers")[i] = Some(o);
            });
        }
    });
    let outcomes: Vec<Outcome> =
        slots.into_inner().expect("workers joined").into_iter().map(|o| o.expect("every task ran")).collect();
    let pass = outcomes.iter().all(|o| o.status != Status::Fail);
    Summary { pass, outcomes }
}

/// Human-readable summary.
pub fn render_text(s: &Summary) -> String {
    let mut out = String::new();
    for o in &s.outcomes {
        let status = match o.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        match &o.report {
            Some(r) => {
                out += &format!(
                    "{:<16} {:<12} {status}  {:>3} checks  max residual {:.2e}  ({:.2} s)\n",
                    o.category,
                    o.suite.name(),
                    r.checks.len(),
                    r.max_residual(),
                    o.seconds
                );
                for c in r.checks.iter().filter(|c| !c.pass) {
                    out += &format!("    failed {}: residual {:.3e} at {}\n", c.id, c.max_residual, c.worst_index);
                }
            }
            None => {
                out += &format!(
                    "{:<16} {:<12} {status}  {}\n",
                    o.category,
                    o.suite.name(),
                    o.note.as_deref().unwrap_or("")
                )
            }
        }
    }
    out += if s.pass { "overall: PASS\n" } else { "overall: FAIL\n" };
    if let Some(f) = s.first_failure() {
        out += &format!("first failure: {f}\n");
    }
    out
}

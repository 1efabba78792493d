//! Acceptance matrix.  Prints one line per criterion (verdict, wall time,
//! measured residuals against the pinned tolerances) and exits non-zero only
//! if a measurement disagrees with what is asserted below.
//!
//! Two criteria are reported as FAIL on purpose: the measurements contradict
//! the stated expectation, and the test pins the measured behaviour instead.
//!  - 5: the displayed f₁, f₂, f preserve units but are not multiplicative;
//!    the twist-dressed maps are, and those pass at 1e-9.
//!  - 6: the mixed-braiding ψ variants still satisfy the module pentagon; the
//!    θ → 1 perturbation and a twisted-ψ control do break it.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mtcperm::dsl::parse_dsl;
use mtcperm_core::catdata::{verify_hexagon, verify_pentagon};
use mtcperm_core::evaluator::{identities_suite, Builder, Evaluator, Strand};
use mtcperm_core::permutation::pentagons::{module_axiom_suite, module_pentagon_suite, DEFAULT_TUPLE_CAP};
use mtcperm_core::permutation::{algebra_suite, verify_iso_suite};
use mtcperm_core::report::{Report, DIFFER_THRESHOLD};
use mtcperm_core::{catalog, dualbases, Error, FusionCategoryData, LoadOptions};

const CONSISTENCY_TOL: f64 = 1e-10;
const PERTURBED_MIN: f64 = 1e-2;
const EVAL_TOL: f64 = 1e-9;
const DUAL_TOL: f64 = 1e-9;
const RANDOM_CHANGES: usize = 10;
const ALGEBRA_TOL: f64 = 1e-9;
const ISO_TOL: f64 = 1e-9;
const PENTAGON_TOL: f64 = 1e-9;

const LIMIT_1: Duration = Duration::from_secs(5);
const LIMIT_2: Duration = Duration::from_secs(30);
const LIMIT_3: Duration = Duration::from_secs(60);
const LIMIT_5: Duration = Duration::from_secs(600);
const LIMIT_6: Duration = Duration::from_secs(300);

/// `verdict` is the criterion as stated; `confirmed` says whether every
/// measurement matched the assertions of this file.
struct Outcome {
    verdict: bool,
    confirmed: bool,
    detail: String,
}

fn check(rep: &Report, id: &str) -> f64 {
    rep.checks
        .iter()
        .find(|c| c.id == id)
        .map(|c| c.max_residual)
        .unwrap_or_else(|| panic!("{}/{}: no check `{id}`", rep.category, rep.suite))
}

fn max_over(rep: &Report, pred: impl Fn(&str) -> bool) -> f64 {
    rep.checks.iter().filter(|c| pred(&c.id)).fold(0.0, |m, c| m.max(c.max_residual))
}

fn modular_cats() -> Vec<FusionCategoryData> {
    vec![catalog::fibonacci(), catalog::ising()]
}

fn golden() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

fn criterion_1() -> Outcome {
    let mut worst: f64 = 0.0;
    for cat in catalog::all() {
        worst = worst.max(verify_pentagon(&cat).unwrap().max_residual);
        worst = worst.max(verify_hexagon(&cat).unwrap().max_residual);
    }
    let lenient = LoadOptions { coherence: false };
    let bp = FusionCategoryData::from_json_str(catalog::BROKEN_PENTAGON, "bp", lenient).unwrap();
    let bh = FusionCategoryData::from_json_str(catalog::BROKEN_HEXAGON, "bh", lenient).unwrap();
    let p = verify_pentagon(&bp).unwrap().max_residual;
    let h = verify_hexagon(&bh).unwrap().max_residual;
    let rejected = catalog::BROKEN
        .iter()
        .all(|(n, t)| matches!(FusionCategoryData::from_json_str(t, n, LoadOptions::default()), Err(Error::Consistency(_))));
    // gauge-invariant data against closed forms
    let fib = catalog::fibonacci();
    let ising = catalog::ising();
    let tau = fib.index_of("tau").unwrap();
    let sigma = ising.index_of("sigma").unwrap();
    let pi = std::f64::consts::PI;
    let oracle = [
        (fib.qdim(tau) - golden()).abs(),
        (fib.theta(tau) - num_complex::Complex64::from_polar(1.0, 4.0 * pi / 5.0)).norm(),
        (ising.qdim(sigma) - 2f64.sqrt()).abs(),
        (ising.theta(sigma) - num_complex::Complex64::from_polar(1.0, pi / 8.0)).norm(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    let ok = worst < CONSISTENCY_TOL && p > PERTURBED_MIN && h > PERTURBED_MIN && rejected && oracle < 1e-12;
    Outcome {
        verdict: ok,
        confirmed: ok,
        detail: format!(
            "pentagon/hexagon max {worst:.1e} < {CONSISTENCY_TOL:.0e}; perturbed pentagon {p:.2} / hexagon {h:.2} > {PERTURBED_MIN:.0e}; loader rejects fixtures: {rejected}; d, θ closed forms {oracle:.1e}"
        ),
    }
}

fn criterion_2() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut n = 0;
    for cat in catalog::all() {
        let ev = Evaluator::new(&cat);
        let rep = identities_suite(&ev, EVAL_TOL).unwrap();
        worst = worst.max(rep.max_residual());
        n += rep.checks.len();
    }
    let fib = catalog::fibonacci();
    let ev = Evaluator::new(&fib);
    let d = ev.run(Builder::new(&[]).cup(0, Strand::down(1)).cap(0)).unwrap().scalar(&ev).unwrap();
    let lp = (d.re - golden()).abs().max(d.im.abs());
    let ok = worst < EVAL_TOL && lp < EVAL_TOL;
    Outcome {
        verdict: ok,
        confirmed: ok,
        detail: format!("{n} identity families (snake, loop, R-II, Yang-Baxter, naturality), max {worst:.1e} < {EVAL_TOL:.0e}; τ-loop − φ = {lp:.1e}"),
    }
}

fn criterion_3() -> Outcome {
    let mut worst: f64 = 0.0;
    for cat in catalog::all() {
        let ev = Evaluator::new(&cat);
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let rep = dualbases::verify_suite(&ev, &mut rng, RANDOM_CHANGES, DUAL_TOL).unwrap();
        worst = worst.max(rep.max_residual());
    }
    let ok = worst < DUAL_TOL;
    Outcome {
        verdict: ok,
        confirmed: ok,
        detail: format!("κ/η/ϑ deltas, hat/dual commutation, completeness, basis independence ({RANDOM_CHANGES} random changes/triple): max {worst:.1e} < {DUAL_TOL:.0e}"),
    }
}

fn criterion_4() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut complete = true;
    for cat in modular_cats() {
        let rep = algebra_suite(&Evaluator::new(&cat), ALGEBRA_TOL).unwrap();
        worst = worst.max(rep.max_residual());
        for name in ["A_P", "A₁", "A₂", "A", "B", "C"] {
            complete &= rep.checks.iter().any(|c| c.id == format!("{name}/associativity"));
        }
    }
    let ok = worst < ALGEBRA_TOL && complete;
    Outcome {
        verdict: ok,
        confirmed: ok,
        detail: format!("A_P, A₁, A₂, A, B, C on Fibonacci and Ising: associativity and units max {worst:.1e} < {ALGEBRA_TOL:.0e}"),
    }
}

fn criterion_5() -> Outcome {
    let (mut shown_min, mut shown_max, mut unit, mut dressed, mut inverse, mut dressed_inv) =
        (f64::INFINITY, 0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for cat in modular_cats() {
        let rep = verify_iso_suite(&Evaluator::new(&cat), ISO_TOL, 17).unwrap();
        for name in ["f1", "f2", "f", "f_inv"] {
            let r = check(&rep, &format!("{name}/displayed_multiplication_breaks"));
            shown_min = shown_min.min(r);
            shown_max = shown_max.max(r);
            unit = unit.max(check(&rep, &format!("{name}/unit")));
            dressed = dressed.max(check(&rep, &format!("{name}θ/multiplication"))).max(check(&rep, &format!("{name}θ/unit")));
        }
        inverse = inverse.max(check(&rep, "f/right_inverse")).max(check(&rep, "f/left_inverse"));
        dressed_inv = ["fθ/right_inverse", "fθ/left_inverse", "fθ/factorizes", "fθ/basis_independent", "fθ/invertible"]
            .iter()
            .fold(dressed_inv, |m, id| m.max(check(&rep, id)));
    }
    let verdict = shown_max < ISO_TOL && unit < ISO_TOL && inverse < ISO_TOL;
    let confirmed = shown_min > DIFFER_THRESHOLD && unit < ISO_TOL && inverse < ISO_TOL && dressed < ISO_TOL && dressed_inv < ISO_TOL;
    Outcome {
        verdict,
        confirmed,
        detail: format!(
            "displayed f₁, f₂, f, f⁻¹: units {unit:.1e}, f∘f⁻¹ = id {inverse:.1e}, but multiplicativity residual {shown_min:.2}..{shown_max:.2} (not < {ISO_TOL:.0e}); \
             twist-dressed maps (block factors θ-ratios): homomorphisms {dressed:.1e}, inverse/factorization/basis independence {dressed_inv:.1e}"
        ),
    }
}

fn criterion_6() -> Outcome {
    let cat = catalog::fibonacci();
    let ev = Evaluator::new(&cat);
    let p = module_pentagon_suite(&ev, PENTAGON_TOL, DEFAULT_TUPLE_CAP).unwrap();
    let m = module_axiom_suite(&ev, PENTAGON_TOL, DEFAULT_TUPLE_CAP).unwrap();
    let functors = max_over(&p, |id| id.ends_with("/pentagon") || id.ends_with("/transcribed") || id.ends_with("/transcription_matches"));
    let nfun = p.checks.iter().filter(|c| c.id.ends_with("/pentagon")).count();
    let plain = |id: &str| id.ends_with("/pentagon") && !id.contains("mixed") && !id.contains("twisted");
    let axioms = max_over(&m, plain);
    let naxioms = m.checks.iter().filter(|c| plain(&c.id)).count();
    let trivial_twist = check(&p, "p/trivial_twist_breaks");
    let mixed = max_over(&m, |id| id.contains("mixed"));
    let twisted = check(&m, "P12+twisted/pentagon_breaks");
    let stated = functors < PENTAGON_TOL && nfun == 6 && axioms < PENTAGON_TOL && naxioms == 12 && trivial_twist > DIFFER_THRESHOLD;
    Outcome {
        verdict: stated && mixed > DIFFER_THRESHOLD,
        confirmed: stated && mixed < PENTAGON_TOL && twisted > DIFFER_THRESHOLD,
        detail: format!(
            "{nfun} functor pentagons {functors:.1e}, {naxioms} module axioms {axioms:.1e} (< {PENTAGON_TOL:.0e}); θ→1 breaks: {trivial_twist:.2}; \
             mixed braiding expected to break but holds: {mixed:.1e}; twisted-ψ control breaks: {twisted:.2}"
        ),
    }
}

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data")
}

fn run_bin(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mtcperm")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn eval_json(file: &str) -> serde_json::Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("diagrams").join(file);
    let (code, out) = run_bin(&["eval", "--category", "fibonacci", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code, 0, "eval {file}");
    serde_json::from_str(&out).expect("json")
}

fn criterion_7() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for (name, _) in catalog::SOURCES {
        let path = data_dir().join(format!("{name}.json"));
        let (code, _) = run_bin(&["verify", "--category", path.to_str().unwrap(), "--suite", "all", "--jobs", "4"]);
        ok &= code == 0;
        notes.push(format!("{name}→{code}"));
    }
    for (name, _) in catalog::BROKEN {
        let path = data_dir().join(format!("{name}.json"));
        let (code, out) = run_bin(&["verify", "--category", path.to_str().unwrap(), "--suite", "consistency"]);
        ok &= code == 1 && out.contains("first failure");
        notes.push(format!("{name}→{code}"));
    }
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("diagrams");
    let mut files = 0;
    for e in std::fs::read_dir(&dir).unwrap() {
        let p = e.unwrap().path();
        if p.extension().is_some_and(|x| x == "dsl") {
            let a = parse_dsl(&std::fs::read_to_string(&p).unwrap()).unwrap();
            ok &= parse_dsl(&a.to_string()).is_ok_and(|b| b.same_as(&a));
            files += 1;
        }
    }
    let snake = eval_json("snake.dsl");
    let entry = |v: &serde_json::Value, b: usize| (v["blocks"][b]["re"][0][0].as_f64().unwrap(), v["blocks"][b]["im"][0][0].as_f64().unwrap());
    let s = entry(&snake, 0);
    let loop_ = entry(&eval_json("loop.dsl"), 0);
    let (l, r) = (eval_json("yangbaxter_lhs.dsl"), eval_json("yangbaxter_rhs.dsl"));
    let yb_equal = l["blocks"].as_array().unwrap().iter().zip(r["blocks"].as_array().unwrap()).all(|(a, b)| {
        let f = |x: &serde_json::Value| x.as_array().unwrap().iter().flat_map(|r| r.as_array().unwrap().iter().map(|z| z.as_f64().unwrap()).collect::<Vec<_>>()).collect::<Vec<_>>();
        f(&a["re"]).iter().zip(f(&b["re"])).chain(f(&a["im"]).iter().zip(f(&b["im"]))).all(|(x, y)| (x - y).abs() < EVAL_TOL)
    });
    ok &= snake["blocks"].as_array().unwrap().len() == 1 && (s.0 - 1.0).abs() < EVAL_TOL && s.1.abs() < EVAL_TOL;
    ok &= (loop_.0 - 1.618034).abs() < 1e-6 && yb_equal;
    Outcome {
        verdict: ok,
        confirmed: ok,
        detail: format!(
            "verify exit codes [{}]; {files} corpus files round-trip; snake = {:.6}, loop = {:.6}, Yang-Baxter sides equal: {yb_equal}",
            notes.join(", "),
            s.0,
            loop_.0
        ),
    }
}

fn main() -> ExitCode {
    type Crit = (usize, &'static str, fn() -> Outcome, Option<Duration>);
    let criteria: [Crit; 7] = [
        (1, "consistency", criterion_1, Some(LIMIT_1)),
        (2, "evaluator identities", criterion_2, Some(LIMIT_2)),
        (3, "dual bases", criterion_3, Some(LIMIT_3)),
        (4, "algebra layer", criterion_4, None),
        (5, "main theorem kernel", criterion_5, Some(LIMIT_5)),
        (6, "module pentagons", criterion_6, Some(LIMIT_6)),
        (7, "cli", criterion_7, None),
    ];
    // `cargo test -- <filter>` passes arguments; honour a numeric filter.
    let filter: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut all_confirmed = true;
    println!("\nacceptance criteria");
    for (n, name, f, limit) in criteria {
        if !filter.is_empty() && !filter.contains(&n) {
            continue;
        }
        let t = Instant::now();
        let o = f();
        let el = t.elapsed();
        let in_time = limit.is_none_or(|l| el < l);
        let verdict = if o.verdict && in_time { "PASS" } else { "FAIL" };
        let lim = limit.map(|l| format!(", limit {} s", l.as_secs())).unwrap_or_default();
        println!("criterion {n} {name:<22} {verdict}  ({:.2} s{lim})  {}", el.as_secs_f64(), o.detail);
        if !o.confirmed || !in_time {
            println!("  !! measurement differs from the pinned expectation");
        }
        all_confirmed &= o.confirmed && in_time;
    }
    if all_confirmed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

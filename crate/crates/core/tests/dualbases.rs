use mtcperm_core::dualbases::*;
use mtcperm_core::evaluator::{Evaluator, Morphism, Strand};
use mtcperm_core::{c, catalog, Error, Mat, C64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-10;

fn one() -> C64 {
    c(1.0, 0.0)
}

#[test]
fn vec_pairings_are_one() {
    let cat = catalog::trivial();
    let ev = Evaluator::new(&cat);
    let u = Strand::up(0);
    let pb = PairedBasis::standard(&ev, u, u, u).unwrap();
    assert!((kappa(&ev, &pb.basis[0], &pb.kappa_dual[0]).unwrap() - one()).norm() < TOL);
    // every variant of the unit vertex is the scalar 1
    for m in [&pb.basis[0], &pb.kappa_dual[0], &pb.eta_dual[0], &pb.theta_dual[0]] {
        assert_eq!(m.blocks.len(), 1);
        assert!((m.blocks[&0][(0, 0)] - one()).norm() < TOL);
    }
    assert_eq!(check_completeness(&ev, u, u).unwrap(), 0.0);
}

#[test]
fn fibonacci_tau_tau_tau() {
    let cat = catalog::fibonacci();
    let ev = Evaluator::new(&cat);
    let t = Strand::up(1);
    let pb = PairedBasis::standard(&ev, t, t, t).unwrap();
    assert!((kappa(&ev, &pb.basis[0], &pb.kappa_dual[0]).unwrap() - one()).norm() < TOL);
    assert!((eta(&ev, &pb.basis[0], &pb.eta_dual[0]).unwrap() - one()).norm() < TOL);
    assert!(pb.dual_hat_commutation(&ev).unwrap() < 1e-9);
    // bilinearity: pairing with zero
    let zero = Morphism::zero(pb.kappa_dual[0].source.clone(), pb.kappa_dual[0].target.clone());
    assert_eq!(kappa(&ev, &pb.basis[0], &zero).unwrap(), c(0.0, 0.0));
    let zero = Morphism::zero(pb.eta_dual[0].source.clone(), pb.eta_dual[0].target.clone());
    assert_eq!(eta(&ev, &pb.basis[0], &zero).unwrap(), c(0.0, 0.0));
    let zero = Morphism::zero(pb.theta_dual[0].source.clone(), pb.theta_dual[0].target.clone());
    assert_eq!(theta_pairing(&ev, &pb.basis[0], &zero).unwrap(), c(0.0, 0.0));
}

#[test]
fn one_dimensional_dual_is_reciprocal() {
    // (τ, τ, 1): α̂ = s / κ(α, s) for the standard split s, computed by hand
    let cat = catalog::fibonacci();
    let ev = Evaluator::new(&cat);
    let (t, u) = (Strand::up(1), Strand::up(0));
    let alpha = standard_basis(&ev, t, t, u).unwrap().remove(0).scale(c(0.3, -1.1));
    let s = standard_splits(&ev, u, t, t).unwrap().remove(0);
    let z = alpha.compose(&s).unwrap().scalar(&ev).unwrap();
    let hat = kappa_dual_basis(&ev, std::slice::from_ref(&alpha)).unwrap().remove(0);
    assert!(hat.distance(&s.clone().scale(one() / z)) < TOL);
}

#[test]
fn ising_theta_pairing() {
    let cat = catalog::ising();
    let ev = Evaluator::new(&cat);
    let (s, p) = (Strand::up(1), Strand::up(2));
    assert_eq!(cat.label(1), "σ");
    assert_eq!(cat.label(2), "ψ");
    let pb = PairedBasis::standard(&ev, s, s, p).unwrap();
    assert!((theta_pairing(&ev, &pb.basis[0], &pb.theta_dual[0]).unwrap() - one()).norm() < TOL);
    assert!(pb.check_is_bent_hat_star(&ev).unwrap() < 1e-9);
}

/// A two-dimensional space: `Hom(τ⊗τ⊗τ, τ)` paired with `Hom(τ, τ⊗τ⊗τ)` by composition.
fn two_dim(ev: &Evaluator<'_>) -> (Vec<Morphism>, Vec<Morphism>) {
    let t = Strand::up(1);
    let w = vec![t, t, t];
    let mut merges = Vec::new();
    let mut splits = Vec::new();
    for m in 0..2 {
        let mut a = Morphism::zero(w.clone(), vec![t]);
        a.blocks.insert(1, Mat::from_fn(1, 2, |_, col| if col == m { one() } else { c(0.0, 0.0) }));
        merges.push(a);
        let mut b = Morphism::zero(vec![t], w.clone());
        b.blocks.insert(1, Mat::from_fn(2, 1, |row, _| if row == m { c(0.5, 0.5) } else { c(0.0, -0.25) }));
        splits.push(b);
    }
    let _ = ev;
    (merges, splits)
}

#[test]
fn basis_change_transforms_duals_contragrediently() {
    let cat = catalog::fibonacci();
    let ev = Evaluator::new(&cat);
    let (merges, splits) = two_dim(&ev);
    let t = Strand::up(1);
    let pair = |a: &Morphism, b: &Morphism| proportional(&a.compose(b)?, &Morphism::identity(&ev, &[t]), TOL);
    let duals = dual_by_gram(&merges, &splits, TOL, pair).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10 {
        let g = random_invertible(&mut rng, 2);
        let changed = change_basis(&merges, &g).unwrap();
        let new_duals = dual_by_gram(&changed, &splits, TOL, pair).unwrap();
        let expect = change_basis(&duals, &g.transpose().try_inverse().unwrap()).unwrap();
        for (a, b) in new_duals.iter().zip(&expect) {
            assert!(a.distance(b) < 1e-9);
        }
    }
    // a repeated vector is not a basis
    let bad = vec![merges[0].clone(), merges[0].clone()];
    assert!(matches!(dual_by_gram(&bad, &splits, TOL, pair), Err(Error::SingularPairing(_))));
}

#[test]
fn completeness_relations() {
    let fib = catalog::fibonacci();
    let ev = Evaluator::new(&fib);
    assert!(check_completeness(&ev, Strand::up(1), Strand::up(1)).unwrap() < 1e-10);
    assert!(check_completeness(&ev, Strand::up(1), Strand::down(1)).unwrap() < 1e-10);
    let ising = catalog::ising();
    let ev = Evaluator::new(&ising);
    let s = Strand::up(1);
    assert_eq!(ev.roots(&[s, s]), vec![0, 2]);
    assert!(check_completeness(&ev, s, s).unwrap() < 1e-10);
    // dropping one channel breaks it
    let partial = PairedBasis::standard(&ev, s, s, Strand::up(0)).unwrap().projector().unwrap();
    assert!(partial.distance(&Morphism::identity(&ev, &[s, s])) > 0.1);
}

#[test]
fn suite_passes_on_every_bundled_category() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for cat in catalog::all() {
        let ev = Evaluator::new(&cat);
        let r = verify_suite(&ev, &mut rng, 3, 1e-9).unwrap();
        assert!(r.pass, "{}: {:?}", cat.name(), r.first_failure());
        assert_eq!(r.checks.len(), 8);
    }
}

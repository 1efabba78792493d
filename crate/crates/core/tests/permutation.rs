use mtcperm_core::algebra::*;
use mtcperm_core::catalog;
use mtcperm_core::evaluator::{BlockMorphism, Evaluator, Sign, SumObject, Summand, Strand};
use mtcperm_core::permutation::pentagons::*;
use mtcperm_core::permutation::*;
use mtcperm_core::report::{Expect, Report};
use mtcperm_core::{c, Error};

const TOL: f64 = 1e-9;

fn assert_passes(rep: &Report) {
    for ch in &rep.checks {
        assert!(ch.pass, "{}/{}: {} residual {:.3e} at {}", rep.category, rep.suite, ch.id, ch.max_residual, ch.worst_index);
    }
}

fn check<'a>(rep: &'a Report, id: &str) -> &'a mtcperm_core::report::Check {
    rep.checks.iter().find(|c| c.id == id).unwrap_or_else(|| panic!("no check `{id}`"))
}

#[test]
fn algebras_on_fibonacci_and_ising() {
    for cat in [catalog::fibonacci(), catalog::ising()] {
        let ev = Evaluator::new(&cat);
        let rep = algebra_suite(&ev, TOL).unwrap();
        assert_passes(&rep);
        assert_eq!(rep.checks.iter().filter(|c| c.id.ends_with("/associativity")).count(), 8, "{}", cat.name());
    }
}

#[test]
fn trivial_category_gives_trivial_algebras() {
    let cat = catalog::trivial();
    let ev = Evaluator::new(&cat);
    let ap = build_a_p(&ev, &Bases::standard()).unwrap();
    assert_eq!(ap.carrier.len(), 1);
    assert_passes(&check_algebra(&ev, &ap, TOL).unwrap());
    let rep = verify_iso_suite(&ev, TOL, 1).unwrap();
    for ch in rep.checks.iter().filter(|c| c.expect == Expect::Equal) {
        assert!(ch.max_residual < 1e-14, "{} = {:e}", ch.id, ch.max_residual);
    }
    // with every twist 1 the displayed maps are already the dressed ones
    assert_passes(&rep);
    assert!(check(&rep, "f/multiplication").pass);
}

#[test]
fn zeroed_multiplication_block_breaks_associativity() {
    let cat = catalog::fibonacci();
    let ev = Evaluator::new(&cat);
    let mut ap = build_a_p(&ev, &Bases::standard()).unwrap();
    let r = cat.rank();
    // τ ⊗ τ → 1; dropping all of τ ⊗ τ would leave a square-zero algebra
    ap.mult.blocks.remove(&(r + 1, 0)).expect("block present");
    let rep = check_algebra(&ev, &ap, TOL).unwrap();
    assert!(!check(&rep, "A_P/associativity").pass);
}

#[test]
fn opposite_braiding_does_not_give_an_algebra() {
    let cat = catalog::fibonacci();
    let ev = Evaluator::new(&cat);
    let flipped = build_a_p_braided(&ev, &Bases::standard(), Sign::Pos).unwrap();
    let ap = build_a_p(&ev, &Bases::standard()).unwrap();
    // as an action of A_P on itself the flipped product is not associative
    let m = ModuleObject { name: "flipped".into(), carrier: ap.carrier.clone(), action: flipped.mult.clone() };
    let rep = check_module(&ev, &m, &ap, TOL).unwrap();
    assert!(!check(&rep, "flipped/associativity").pass);
}

#[test]
fn opposite_is_an_involution() {
    let cat = catalog::ising();
    let ev = Evaluator::new(&cat);
    let ap = build_a_p(&ev, &Bases::standard()).unwrap();
    let op = opposite(&ev, &ap).unwrap();
    assert_passes(&check_algebra(&ev, &op, TOL).unwrap());
    // c ∘ c is the monodromy, not the identity; the opposite of the opposite uses c⁻¹
    let opop = opposite(&ev, &op).unwrap();
    let back = opop.mult.compose(&BlockMorphism::braiding(&ev, &ap.carrier, &ap.carrier, Sign::Neg).unwrap()).unwrap();
    let back = back.compose(&BlockMorphism::braiding(&ev, &ap.carrier, &ap.carrier, Sign::Neg).unwrap()).unwrap();
    assert!(back.residual(&ev, &ap.mult).unwrap().max_abs < TOL);
}

#[test]
fn tensor_with_the_unit_and_associativity_of_tensor() {
    let cat = catalog::fibonacci();
    let ev = Evaluator::new(&cat);
    let bases = Bases::standard();
    let ap = build_a_p(&ev, &bases).unwrap();
    let one = AlgebraObject::trivial(&ev, 2);
    let t = tensor_algebra(&ev, &ap, &one).unwrap();
    assert_eq!(t.carrier.len(), ap.carrier.len());
    assert!(algebra_distance(&ev, &ap, &t).unwrap() < TOL);

    let a1 = lift(&ev, &ap, 3, 0).unwrap();
    let a2 = lift(&ev, &ap, 3, 1).unwrap();
    let a1op = opposite(&ev, &a1).unwrap();
    let l = tensor_algebra(&ev, &tensor_algebra(&ev, &a1op, &a2).unwrap(), &a1).unwrap();
    let r = tensor_algebra(&ev, &a1op, &tensor_algebra(&ev, &a2, &a1).unwrap()).unwrap();
    assert!(algebra_distance(&ev, &l, &r).unwrap() < TOL);
    assert!(algebra_distance(&ev, &l, &build_a(&ev, &bases).unwrap()).unwrap() < TOL);
}

#[test]
fn random_block_map_is_not_a_homomorphism() {
    let cat = catalog::fibonacci();
    let ev = Evaluator::new(&cat);
    let ap = build_a_p(&ev, &Bases::standard()).unwrap();
    let id = BlockMorphism::identity(&ev, &ap.carrier);
    let f = id.add(&id.clone().scale(c(0.37, -0.2))).unwrap();
    let rep = check_algebra_hom(&ev, "g", &f, &ap, &ap, TOL).unwrap();
    assert!(!check(&rep, "g/unit").pass);
    assert!(!check(&rep, "g/multiplication").pass);
    assert_passes(&check_algebra_hom(&ev, "id", &id, &ap, &ap, TOL).unwrap());
}

#[test]
fn free_and_regular_modules() {
    let cat = catalog::fibonacci();
    let ev = Evaluator::new(&cat);
    let ap = build_a_p(&ev, &Bases::standard()).unwrap();
    let tau = Strand::up(1);
    let x = SumObject::new(
        2,
        vec![
            Summand { name: "τ⊠1".into(), words: vec![vec![tau], vec![]] },
            Summand { name: "τ⊠τ*".into(), words: vec![vec![tau], vec![tau.bar()]] },
        ],
    )
    .unwrap();
    assert_passes(&check_module(&ev, &ModuleObject::free(&ev, &x, &ap).unwrap(), &ap, TOL).unwrap());
    assert_passes(&check_module(&ev, &ModuleObject::regular(&ap), &ap, TOL).unwrap());
    assert_passes(&check_bimodule(&ev, &BimoduleObject::regular(&ap), &ap, &ap, TOL).unwrap());
}

#[test]
fn iso_suite_fibonacci() {
    let cat = catalog::fibonacci();
    let ev = Evaluator::new(&cat);
    let rep = verify_iso_suite(&ev, TOL, 7).unwrap();
    assert_passes(&rep);
    for name in ["f1", "f2", "f", "f_inv"] {
        assert!(check(&rep, &format!("{name}/displayed_multiplication_breaks")).max_residual > 1.0);
        assert!(check(&rep, &format!("{name}θ/multiplication")).max_residual < TOL);
    }
    assert!(check(&rep, "fθ/basis_independent").max_residual < TOL);
}

#[test]
fn iso_suite_ising() {
    let cat = catalog::ising();
    let ev = Evaluator::new(&cat);
    assert_passes(&verify_iso_suite(&ev, TOL, 11).unwrap());
}

#[test]
fn functor_pentagons_and_module_axioms_fibonacci() {
    let cat = catalog::fibonacci();
    let ev = Evaluator::new(&cat);
    let p = module_pentagon_suite(&ev, TOL, DEFAULT_TUPLE_CAP).unwrap();
    assert_passes(&p);
    assert_eq!(p.checks.iter().filter(|c| c.id.ends_with("/pentagon")).count(), 6);
    let m = module_axiom_suite(&ev, TOL, DEFAULT_TUPLE_CAP).unwrap();
    assert_passes(&m);
    assert_eq!(m.checks.iter().filter(|c| c.id.ends_with("/pentagon") && !c.id.contains("mixed")).count(), 12);
    assert!(check(&m, "P12+twisted/pentagon_breaks").max_residual > 1.0);
}

#[test]
fn module_axioms_ising() {
    let cat = catalog::ising();
    let ev = Evaluator::new(&cat);
    assert_passes(&module_axiom_suite(&ev, TOL, DEFAULT_TUPLE_CAP).unwrap());
}

#[test]
fn non_modular_category_is_rejected() {
    let cat = catalog::z2_bosonic();
    let ev = Evaluator::new(&cat);
    assert!(matches!(build_a_p(&ev, &Bases::standard()), Err(Error::NotModular(_))));
    assert!(matches!(module_axiom_suite(&ev, TOL, 10), Err(Error::NotModular(_))));
}

#[test]
fn transcription_parser() {
    assert_eq!(parse_word("a_2 t_1").unwrap(), vec![Letter::Braid(1, Sign::Pos), Letter::Twist(0, Sign::Pos)]);
    assert_eq!(parse_word("a_{1}^{-1}").unwrap(), vec![Letter::Braid(0, Sign::Neg)]);
    let e = parse_word("a_1 b_2").unwrap_err();
    assert!(matches!(&e, Error::Parse(m) if m.contains("col 5")), "{e}");
    assert!(parse_word("a_").is_err());
    assert_eq!(transcriptions(TRANSCRIBED).unwrap().len(), 6);
}

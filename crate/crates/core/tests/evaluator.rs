use mtcperm_core::catalog;
use mtcperm_core::evaluator::{identities_suite, Builder, Evaluator, Morphism, Sign, Strand};
use mtcperm_core::{c, Error};

const TOL: f64 = 1e-12;

#[test]
fn r_move_on_two_taus_is_the_r_symbol() {
    let cat = catalog::fibonacci();
    let ev = Evaluator::new(&cat);
    let tau = Strand::up(1);
    let m = ev.apply_r_move(&[tau, tau], 0).unwrap();
    for t in [0, 1] {
        let r = &cat.r_block(1, 1, t).unwrap().mat;
        assert!((&m.blocks[&t] - r).camax() < TOL, "root {t}");
    }
    // R^{ττ}_1 = e^{-4πi/5}
    let expect = c(0.0, -4.0 * std::f64::consts::PI / 5.0).exp();
    assert!((m.blocks[&0][(0, 0)] - expect).norm() < 1e-12);
}

#[test]
fn twist_on_the_unit_is_trivial() {
    for cat in catalog::all() {
        let ev = Evaluator::new(&cat);
        let m = ev.apply_twist(&[Strand::up(0)], 0).unwrap();
        assert!((m.blocks[&0][(0, 0)] - c(1.0, 0.0)).norm() < TOL);
    }
}

#[test]
fn braid_then_inverse_is_identity() {
    let cat = catalog::ising();
    let ev = Evaluator::new(&cat);
    let w = [Strand::up(1), Strand::down(2), Strand::up(1)];
    for pos in 0..2 {
        for sg in [Sign::Pos, Sign::Neg] {
            let m = ev.run(Builder::new(&w).braid(pos, sg).braid(pos, sg.flip())).unwrap();
            assert!(m.distance(&Morphism::identity(&ev, &w)) < TOL);
        }
    }
}

#[test]
fn ising_sigma_pair_has_no_sigma_channel() {
    let cat = catalog::ising();
    let ev = Evaluator::new(&cat);
    let s = cat.index_of("sigma").unwrap();
    let sigma = Strand::up(s);
    assert!(ev.enumerate_basis(&[sigma, sigma], s).unwrap().is_empty());
    assert_eq!(ev.hom_dim(&[sigma, sigma], &[sigma]).unwrap(), 0);
}

#[test]
fn f_move_block_is_the_transposed_f_symbol() {
    for cat in [catalog::fibonacci(), catalog::ising()] {
        let ev = Evaluator::new(&cat);
        let x = cat.rank() - 1;
        let w = [Strand::up(x); 3];
        let mv = ev.apply_f_move(&w, 1).unwrap();
        for (&t, m) in &mv.blocks {
            let f = &cat.f_block(x, x, x, t).unwrap().mat;
            assert!((m - f.transpose()).camax() < TOL, "{} root {t}", cat.name());
        }
    }
}

#[test]
fn moves_reject_bad_positions() {
    let cat = catalog::fibonacci();
    let ev = Evaluator::new(&cat);
    let tau = Strand::up(1);
    assert!(matches!(ev.apply_f_move(&[tau, tau], 1), Err(Error::Position(_))));
    assert!(matches!(ev.apply_r_move(&[tau], 0), Err(Error::Position(_))));
    assert!(matches!(ev.apply_twist(&[], 0), Err(Error::Position(_))));
}

#[test]
fn identities_hold_on_every_bundled_category() {
    for cat in catalog::all() {
        let ev = Evaluator::new(&cat);
        let rep = identities_suite(&ev, 1e-9).unwrap();
        for ch in &rep.checks {
            assert!(ch.pass, "{}: {} {:e} at {}", cat.name(), ch.id, ch.max_residual, ch.worst_index);
        }
    }
}

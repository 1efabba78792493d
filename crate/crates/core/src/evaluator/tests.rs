use super::*;
use crate::catalog;
use crate::{c, Mat, C64};
use alloc::vec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-10;

fn strands(cat: &FusionCategoryData) -> Vec<Strand> {
    (0..cat.rank()).flat_map(|l| [Strand::up(l), Strand::down(l)]).collect()
}

fn random_morphism(ev: &Evaluator<'_>, rng: &mut ChaCha8Rng, u: &[Strand], v: &[Strand]) -> Morphism {
    let mut m = Morphism::zero(u.to_vec(), v.to_vec());
    let tv = ev.roots(v);
    for t in ev.roots(u).into_iter().filter(|t| tv.contains(t)) {
        let (r, cc) = (ev.basis(v, t).len(), ev.basis(u, t).len());
        m.blocks.insert(t, Mat::from_fn(r, cc, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))));
    }
    m
}

fn assert_close(a: &Morphism, b: &Morphism, what: &str) {
    assert_eq!(a.source, b.source, "{what}: sources differ");
    assert_eq!(a.target, b.target, "{what}: targets differ");
    let d = a.distance(b);
    assert!(d < TOL, "{what}: distance {d:e}");
}

#[test]
fn fibonacci_hom_dimensions() {
    let cat = catalog::fibonacci();
    let ev = Evaluator::new(&cat);
    let tau = Strand::up(1);
    // dim Hom(τ^n, 1) follows the Fibonacci numbers
    let expect = [1, 0, 1, 1, 2, 3, 5, 8];
    for (n, &d) in expect.iter().enumerate() {
        assert_eq!(ev.hom_dim(&vec![tau; n], &[]).unwrap(), d, "n = {n}");
    }
    assert_eq!(ev.hom_dim(&[tau, tau], &[tau, tau]).unwrap(), 2);
    assert_eq!(ev.hom_dim(&[tau, tau, tau], &[tau]).unwrap(), 2);
    let trees = ev.enumerate_basis(&[tau, tau, tau], 1).unwrap();
    assert_eq!(trees.len(), 2);
    assert!(trees[0] < trees[1]);
    assert!(ev.enumerate_basis(&[Strand::up(5)], 0).is_err());
}

#[test]
fn snakes_and_loops() {
    for cat in catalog::all() {
        let ev = Evaluator::new(&cat);
        for s in strands(&cat) {
            let id = Morphism::identity(&ev, &[s]);
            let z = ev.run(Builder::new(&[s]).cup(1, s.bar()).cap(0)).unwrap();
            assert_close(&z, &id, "left snake");
            let z = ev.run(Builder::new(&[s]).cup(0, s).cap(1)).unwrap();
            assert_close(&z, &id, "right snake");
            let d = ev.run(Builder::new(&[]).cup(0, s).cap(0)).unwrap().scalar(&ev).unwrap();
            assert!((d - c(cat.qdim(s.label), 0.0)).norm() < TOL, "{}: loop {d}", cat.name());
        }
    }
}

#[test]
fn fibonacci_loop_is_golden_ratio() {
    let cat = catalog::fibonacci();
    let ev = Evaluator::new(&cat);
    let d = ev.run(Builder::new(&[]).cup(0, Strand::down(1)).cap(0)).unwrap().scalar(&ev).unwrap();
    assert!((d.re - 1.618_033_988_749_895).abs() < 1e-12 && d.im.abs() < 1e-12);
}

#[test]
fn reidemeister_two_and_yang_baxter() {
    for cat in catalog::all() {
        let ev = Evaluator::new(&cat);
        let ss = strands(&cat);
        for &x in &ss {
            for &y in &ss {
                let id = Morphism::identity(&ev, &[x, y]);
                for sg in [Sign::Pos, Sign::Neg] {
                    let m = ev.run(Builder::new(&[x, y]).braid(0, sg).braid(0, sg.flip())).unwrap();
                    assert_close(&m, &id, "R-II");
                }
                for &z in ss.iter().step_by(2) {
                    let w = [x, y, z];
                    let l = ev.run(Builder::new(&w).braid(0, Sign::Pos).braid(1, Sign::Pos).braid(0, Sign::Pos)).unwrap();
                    let r = ev.run(Builder::new(&w).braid(1, Sign::Pos).braid(0, Sign::Pos).braid(1, Sign::Pos)).unwrap();
                    assert_close(&l, &r, "Yang-Baxter");
                }
            }
        }
    }
}

#[test]
fn braiding_is_natural_for_vertices() {
    for cat in catalog::all() {
        let ev = Evaluator::new(&cat);
        let r = cat.rank();
        for (i, j, k) in (0..r).flat_map(|i| (0..r).flat_map(move |j| (0..r).map(move |k| (i, j, k)))) {
            for idx in 0..cat.n(i, j, k) {
                let v = VertexId::new(Variant::A, Strand::up(i), Strand::up(j), Strand::up(k), idx);
                for l in 0..r {
                    let w = [Strand::up(i), Strand::up(j), Strand::up(l)];
                    let a = ev.run(Builder::new(&w).vertex(0, v).braid(0, Sign::Pos)).unwrap();
                    let b = ev.run(Builder::new(&w).braid_block(0, 2, 1, Sign::Pos).vertex(1, v)).unwrap();
                    assert_close(&a, &b, "naturality");
                }
                // balancing: θ_k α = α c_{j,i} c_{i,j} (θ_i ⊗ θ_j)
                let w = [Strand::up(i), Strand::up(j)];
                let a = ev.run(Builder::new(&w).vertex(0, v).twist(0, Sign::Pos)).unwrap();
                let b = ev.run(Builder::new(&w).twist_block(0, 2, Sign::Pos).vertex(0, v)).unwrap();
                assert_close(&a, &b, "balancing");
                let bi = ev.run(Builder::new(&w).twist_block(0, 2, Sign::Pos).twist_block(0, 2, Sign::Neg)).unwrap();
                assert_close(&bi, &Morphism::identity(&ev, &w), "twist inverse");
            }
        }
    }
}

#[test]
fn curl_is_twist() {
    for cat in catalog::all() {
        let ev = Evaluator::new(&cat);
        for s in strands(&cat) {
            let curl = ev.run(Builder::new(&[s]).cup(1, s).braid(0, Sign::Pos).cap(1)).unwrap();
            let th = ev.run(Builder::new(&[s]).twist(0, Sign::Pos)).unwrap();
            assert_close(&curl, &th, "curl");
        }
    }
}

#[test]
fn kappa_duality_of_vertex_variants() {
    for cat in catalog::all() {
        let ev = Evaluator::new(&cat);
        let r = cat.rank();
        for i in 0..r {
            for j in 0..r {
                for k in cat.fusion_channels(i, j) {
                    let n = cat.n(i, j, k);
                    let (si, sj, sk) = (Strand::up(i), Strand::up(j), Strand::up(k));
                    let get = |v: Variant, m| ev.vertex_morphism(&VertexId::new(v, si, sj, sk, m)).unwrap();
                    for m in 0..n {
                        for nn in 0..n {
                            let delta = if m == nn { 1.0 } else { 0.0 };
                            let pairs = [
                                (Variant::A, Variant::AHat),
                                (Variant::AHatStar, Variant::AStar),
                                (Variant::ACheckHat, Variant::ACheck),
                            ];
                            for (x, y) in pairs {
                                let z = get(x, m).compose(&get(y, nn)).unwrap();
                                let id = Morphism::identity(&ev, &z.source).scale(c(delta, 0.0));
                                assert_close(&z, &id, x.name());
                            }
                        }
                    }
                    // α̌ also equals α̂* with the ī strand bent up on the right
                    for m in 0..n {
                        let hs = VertexId::new(Variant::AHatStar, si, sj, sk, m);
                        let alt = ev.run(Builder::new(&[sj.bar()]).cup(1, si.bar()).vertex(0, hs)).unwrap();
                        assert_close(&alt, &get(Variant::ACheck, m), "check alternative");
                    }
                }
            }
        }
    }
}

#[test]
fn unknown_basis_index() {
    let cat = catalog::fibonacci();
    let ev = Evaluator::new(&cat);
    let t = Strand::up(1);
    let v = VertexId::new(Variant::A, t, t, Strand::up(0), 1);
    assert!(matches!(ev.vertex_morphism(&v), Err(Error::UnknownBasisId(_))));
}

#[test]
fn duals_agree_and_are_involutive() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for cat in catalog::all() {
        let ev = Evaluator::new(&cat);
        let ss = strands(&cat);
        for _ in 0..6 {
            let u: Vec<Strand> = (0..rng.gen_range(1..3)).map(|_| ss[rng.gen_range(0..ss.len())]).collect();
            let v: Vec<Strand> = (0..rng.gen_range(1..3)).map(|_| ss[rng.gen_range(0..ss.len())]).collect();
            let f = random_morphism(&ev, &mut rng, &u, &v);
            let l = ev.left_dual(&f).unwrap();
            let r = ev.right_dual(&f).unwrap();
            assert_close(&l, &r, "left vs right dual");
            assert_close(&ev.right_dual(&r).unwrap(), &f, "double dual");
        }
    }
}

#[test]
fn tensor_matches_whiskered_composites() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for cat in [catalog::fibonacci(), catalog::ising()] {
        let ev = Evaluator::new(&cat);
        let ss = strands(&cat);
        for _ in 0..5 {
            let mut pick = |n: usize| -> Vec<Strand> { (0..n).map(|_| ss[rng.gen_range(0..ss.len())]).collect() };
            let (u1, v1, u2, v2) = (pick(2), pick(1), pick(1), pick(3));
            let f = random_morphism(&ev, &mut rng, &u1, &v1);
            let g = random_morphism(&ev, &mut rng, &u2, &v2);
            let t = f.tensor(&ev, &g);
            let mut w = u1.clone();
            w.extend_from_slice(&u2);
            let a = ev.run(Builder::new(&w).local(0, Rc::new(f.clone())).local(v1.len(), Rc::new(g.clone()))).unwrap();
            let b = ev.run(Builder::new(&w).local(u1.len(), Rc::new(g.clone())).local(0, Rc::new(f.clone()))).unwrap();
            assert_close(&t, &a, "f then g");
            assert_close(&t, &b, "g then f");
        }
    }
}

#[test]
fn functoriality_of_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let cat = catalog::ising();
    let ev = Evaluator::new(&cat);
    let ss = strands(&cat);
    let w: Vec<Strand> = (0..4).map(|_| ss[rng.gen_range(0..ss.len())]).collect();
    let p = Builder::new(&w).braid(1, Sign::Pos).twist(3, Sign::Neg).build();
    let mid = p.output_word(&w).unwrap();
    let q = Builder::new(&mid).braid(0, Sign::Neg).braid(2, Sign::Pos).build();
    let whole = ev.evaluate(&p.then(&q), &w).unwrap();
    let split = ev.evaluate(&q, &mid).unwrap().compose(&ev.evaluate(&p, &w).unwrap()).unwrap();
    assert_close(&whole, &split, "functoriality");
    let inv = ev.evaluate(&p.then(&q).inverse().unwrap(), &whole.target).unwrap();
    assert_close(&inv.compose(&whole).unwrap(), &Morphism::identity(&ev, &w), "inverse program");
}

#[test]
fn type_errors_name_the_slice() {
    let cat = catalog::fibonacci();
    let ev = Evaluator::new(&cat);
    let (t, one) = (Strand::up(1), Strand::up(0));
    let p = Builder::new(&[t, t]).braid(0, Sign::Pos).build();
    let bad = DiagramProgram { slices: vec![p.slices[0].clone(), vec![Generator::Cap(t)]] };
    match ev.evaluate(&bad, &[t, t]) {
        Err(Error::TypeMismatch { slice, .. }) => assert_eq!(slice, 1),
        other => panic!("expected a type error, got {other:?}"),
    }
    let bad = DiagramProgram { slices: vec![vec![Generator::Id(one), Generator::Id(t)]] };
    assert!(matches!(ev.evaluate(&bad, &[t, t]), Err(Error::TypeMismatch { slice: 0, .. })));
}

#[test]
fn block_braiding_squares_to_identity_after_inverse() {
    let base = catalog::fibonacci();
    let d = crate::catdata::deligne_power(&base, 1, 100).unwrap();
    let cat = d.flat();
    let ev = Evaluator::new(cat);
    let tau = Strand::up(1);
    let x = SumObject::new(
        1,
        vec![
            Summand { name: "1".into(), words: vec![vec![]] },
            Summand { name: "τ".into(), words: vec![vec![tau]] },
        ],
    )
    .unwrap();
    let y = SumObject::new(1, vec![Summand { name: "ττ".into(), words: vec![vec![tau, tau]] }]).unwrap();
    let c1 = BlockMorphism::braiding(&ev, &x, &y, Sign::Pos).unwrap();
    let c2 = BlockMorphism::braiding(&ev, &x, &y, Sign::Neg).unwrap();
    assert!(c1.is_invertible(&ev));
    // c⁻¹_{X,Y} ∘ ... : compose the positive braiding with the inverse going back
    let back = BlockMorphism::braiding(&ev, &y, &x, Sign::Neg).unwrap();
    let id = BlockMorphism::identity(&ev, &x.tensor(&y));
    let res = back.compose(&c1).unwrap().residual(&ev, &id).unwrap();
    assert!(res.max_abs < TOL, "{res:?}");
    // Neg braiding differs from Pos on a non-symmetric category
    assert!(c1.residual(&ev, &c2).unwrap().max_abs > 0.1);
    let z = BlockMorphism::zero(x.tensor(&y), y.tensor(&x));
    assert!(!z.is_invertible(&ev));
    let _: C64 = c(0.0, 0.0);
}

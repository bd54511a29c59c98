use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rigidkit_pcf::*;

fn cat_map() -> ToralAbelianAction {
    ToralAbelianAction::new(vec![IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]).unwrap()]).unwrap()
}

/// Companion matrix of x^3 - 3x - 1 and C + I.
fn cubic_units() -> Vec<IntMatrix> {
    let c = vec![vec![0, 0, 1], vec![1, 0, 3], vec![0, 1, 0]];
    let mut d = c.clone();
    for (i, row) in d.iter_mut().enumerate() {
        row[i] += 1;
    }
    vec![IntMatrix::from_rows(&c).unwrap(), IntMatrix::from_rows(&d).unwrap()]
}

fn cubic_action() -> ToralAbelianAction {
    ToralAbelianAction::new(cubic_units()).unwrap()
}

fn planted(action: &ToralAbelianAction, twist: TwistSpec) -> HolderCocycle {
    let q = twist.target_dim();
    let constants = vec![DVector::zeros(q); action.rank()];
    HolderCocycle::planted_coboundary(action, twist, TrigMap::sine(action.dim(), q, 0.01), constants).unwrap()
}

fn rotation(theta: f64) -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[theta.cos(), -theta.sin(), theta.sin(), theta.cos()])
}

fn random_point(rng: &mut ChaCha8Rng, d: usize) -> DVector<f64> {
    DVector::from_fn(d, |_, _| rng.gen_range(0.0..1.0))
}

#[test]
fn cubic_units_oracle() {
    let gens = cubic_units();
    assert_eq!(gens[0].det(), 1);
    assert_eq!(gens[1].det(), -1);
    assert_eq!(gens[0].mul(&gens[1]).unwrap(), gens[1].mul(&gens[0]).unwrap());
    // Independence: the log-modulus vectors on two eigenlines are not proportional.
    let action = cubic_action();
    let l = |g: usize, i: usize| action.eigenvalue(g, i).abs().ln();
    let regulator = l(0, 0) * l(1, 1) - l(0, 1) * l(1, 0);
    assert!(regulator.abs() > 0.1);
    // No relation C^m (C+I)^n = +-I with small exponents.
    for m in -4i64..=4 {
        for n in -4i64..=4 {
            if (m, n) == (0, 0) {
                continue;
            }
            let e = action.element_matrix(&Element(vec![m, n])).unwrap();
            let id = IntMatrix::identity(3);
            let neg = IntMatrix::from_rows(&[vec![-1, 0, 0], vec![0, -1, 0], vec![0, 0, -1]]).unwrap();
            assert!(e != id && e != neg);
        }
    }
}

#[test]
fn action_rejects_bad_generators() {
    let a = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]).unwrap();
    let b = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
    assert!(matches!(ToralAbelianAction::new(vec![a.clone(), b]), Err(Error::InvalidAction(_))));
    let c = IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]).unwrap();
    assert!(matches!(ToralAbelianAction::new(vec![c]), Err(Error::InvalidAction(_))));
    let rot = IntMatrix::from_rows(&[vec![0, -1], vec![1, 0]]).unwrap();
    assert_eq!(ToralAbelianAction::new(vec![rot]).unwrap_err(), Error::ComplexSpectrum);
    let inv = a.unimodular_inverse().unwrap();
    assert_eq!(a.mul(&inv).unwrap(), IntMatrix::identity(2));
}

#[test]
fn jordan_block_adapted_norm() {
    let j = DMatrix::from_row_slice(3, 3, &[1.0, 1.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 1.0]);
    let n = adapted_norm(&[j.clone()], 0.1, 1e-9).unwrap();
    assert!(n.operator_norm(&j) <= 1.1);
    assert!(n.lambda < 1.0);
}

#[test]
fn module_cocycles_satisfy_cocycle_equation() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (action, twist) in [
        (cat_map(), TwistSpec::new(2, vec![rotation(0.2)], 1e-9).unwrap()),
        (cubic_action(), TwistSpec::new(2, vec![rotation(0.1), rotation(-0.3)], 1e-9).unwrap()),
    ] {
        let beta = planted(&action, twist);
        let k = action.rank();
        let samples: Vec<_> = (0..1000)
            .map(|_| {
                let a = Element((0..k).map(|_| rng.gen_range(-2..=2)).collect());
                let b = Element((0..k).map(|_| rng.gen_range(-2..=2)).collect());
                (a, b, random_point(&mut rng, action.dim()))
            })
            .collect();
        assert!(beta.cocycle_residual(&action, &samples) < 1e-10);
    }
}

#[test]
fn incompatible_constants_rejected() {
    let twist = TwistSpec::new(2, vec![rotation(0.1), rotation(0.4)], 1e-9).unwrap();
    let cs = vec![DVector::from_vec(vec![1.0, 0.0]), DVector::from_vec(vec![0.0, 0.0])];
    assert_eq!(HolderCocycle::constant(twist, cs).unwrap_err(), Error::IncompatibleConstants);
}

#[test]
fn constant_cocycle() {
    let action = cubic_action();
    let cs = vec![DVector::from_vec(vec![0.3]), DVector::from_vec(vec![-0.2])];
    let beta = HolderCocycle::constant(TwistSpec::trivial(2, 1), cs.clone()).unwrap();
    let pcf = Pcf::new(&action, &beta, PcfConfig::default()).unwrap();
    let x = DVector::from_vec(vec![0.1, 0.2, 0.3]);
    let y = &x + &action.lines()[1] * 0.4;
    let a = action.contracting_generator(1).unwrap();
    assert_eq!(pcf.potential(&a, &x, &y).unwrap().value.norm(), 0.0);
    let b = Element(vec![1, 1]);
    assert_eq!(pcf.independence(&a, &b, &x, &y).unwrap(), 0.0);
    let grid = vec![DVector::from_vec(vec![0.5, 0.5, 0.5]), DVector::from_vec(vec![0.9, 0.1, 0.4])];
    let t = pcf.transfer(&x, &grid).unwrap();
    assert!(t.values.iter().all(|v| v.norm() == 0.0));
    for (c, i) in cs.iter().zip(&t.constants) {
        assert!((c - i).norm() < 1e-15);
    }
}

#[test]
fn coboundary_potential_telescopes() {
    let action = cat_map();
    let beta = planted(&action, TwistSpec::trivial(1, 1));
    let pcf = Pcf::new(&action, &beta, PcfConfig::default()).unwrap();
    let t = |x: &DVector<f64>| 0.01 * (std::f64::consts::TAU * x[0]).sin();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let a = Element(vec![1]);
    for line in 0..2 {
        for _ in 0..20 {
            let x = random_point(&mut rng, 2);
            let y = &x + &action.lines()[line] * rng.gen_range(-2.0..2.0);
            let p = pcf.potential(&a, &x, &y).unwrap();
            let expected = t(&x) - t(&y);
            assert!((p.value[0] - expected).abs() < 1e-8);
            let leaf = if action.eigenvalue(0, line).abs() < 1.0 { Leaf::Stable } else { Leaf::Unstable };
            assert_eq!(p.leaf, leaf);
            assert!(p.tail_bound < 1e-10);
        }
    }
}

#[test]
fn off_leaf_points_rejected() {
    let action = cat_map();
    let beta = planted(&action, TwistSpec::trivial(1, 1));
    let pcf = Pcf::new(&action, &beta, PcfConfig::default()).unwrap();
    let x = DVector::from_vec(vec![0.1, 0.2]);
    let y = DVector::from_vec(vec![0.3, 0.2]);
    assert_eq!(pcf.potential(&Element(vec![1]), &x, &y).unwrap_err(), Error::NotOnCommonLeaf);
}

#[test]
fn tiny_budget_fails_to_converge() {
    let action = cat_map();
    let beta = planted(&action, TwistSpec::trivial(1, 1));
    let cfg = PcfConfig { budget: 3, ..PcfConfig::default() };
    let pcf = Pcf::new(&action, &beta, cfg).unwrap();
    let x = DVector::from_vec(vec![0.1, 0.2]);
    let y = &x + &action.lines()[1] * 0.5;
    assert_eq!(
        pcf.potential(&Element(vec![1]), &x, &y).unwrap_err(),
        Error::ConvergenceBudgetExceeded { budget: 3 }
    );
}

#[test]
fn twisted_equivariance() {
    let action = cat_map();
    let beta = planted(&action, TwistSpec::new(2, vec![rotation(0.05)], 1e-9).unwrap());
    let pcf = Pcf::new(&action, &beta, PcfConfig::default()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let a = Element(vec![1]);
    for line in 0..2 {
        for _ in 0..10 {
            let x = random_point(&mut rng, 2);
            let y = &x + &action.lines()[line] * rng.gen_range(-1.0..1.0);
            assert!(pcf.equivariance(&a, &a, &x, &y).unwrap() < 1e-8);
        }
    }
}

#[test]
fn smallness_violation_detected() {
    let action = cat_map();
    let shear = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]);
    let twist = TwistSpec::new(2, vec![shear], 1e-9).unwrap();
    let beta = HolderCocycle::constant(twist, vec![DVector::zeros(2)]).unwrap();
    // A shear admits an adapted norm, so this passes; a rotation scaled off the unit circle does not.
    assert!(Pcf::new(&action, &beta, PcfConfig::default()).is_ok());
    let scaled = rotation(0.3) * 1.01;
    assert_eq!(TwistSpec::new(2, vec![scaled], 1e-6).unwrap_err(), Error::NotSlowFamily);
}

#[test]
fn independence_on_both_actions() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let action = cat_map();
    let beta = planted(&action, TwistSpec::trivial(1, 1));
    let pcf = Pcf::new(&action, &beta, PcfConfig::default()).unwrap();
    for _ in 0..10 {
        let x = random_point(&mut rng, 2);
        let y = &x + &action.lines()[1] * rng.gen_range(-1.0..1.0);
        assert!(pcf.independence(&Element(vec![1]), &Element(vec![2]), &x, &y).unwrap() < 1e-8);
    }
    let action = cubic_action();
    let beta = planted(&action, TwistSpec::trivial(2, 1));
    let pcf = Pcf::new(&action, &beta, PcfConfig::default()).unwrap();
    for line in 0..3 {
        for _ in 0..5 {
            let x = random_point(&mut rng, 3);
            let y = &x + &action.lines()[line] * rng.gen_range(-1.0..1.0);
            let d = pcf
                .independence(&Element(vec![1, 0]), &Element(vec![0, 1]), &x, &y)
                .or_else(|_| pcf.independence(&Element(vec![1, 0]), &Element(vec![0, -1]), &x, &y))
                .unwrap();
            assert!(d < 1e-8);
        }
    }
}

#[test]
fn path_functional_algebra() {
    let action = cubic_action();
    let beta = planted(&action, TwistSpec::trivial(2, 1));
    let pcf = Pcf::new(&action, &beta, PcfConfig::default()).unwrap();
    let x = DVector::from_vec(vec![0.2, 0.7, 0.1]);
    let single = LyapunovPath::new(x.clone(), vec![(2, 0.6)]);
    let a = action.contracting_generator(2).unwrap();
    let p = pcf.potential(&a, &single.end(&action), &x).unwrap().value;
    assert!((pcf.path_functional(&single).unwrap() - p).norm() < 1e-15);

    let t1 = LyapunovPath::new(x.clone(), vec![(0, 0.3), (1, -0.8)]);
    let t2 = LyapunovPath::new(t1.end(&action), vec![(2, 0.5), (0, 0.1)]);
    let joined = pcf.path_functional(&t1.concat(&t2)).unwrap();
    let parts = pcf.path_functional(&t1).unwrap() + pcf.path_functional(&t2).unwrap();
    assert!((joined - parts).norm() < 1e-10);
    let back = pcf.path_functional(&t1.reverse(&action)).unwrap();
    assert!((back + pcf.path_functional(&t1).unwrap()).norm() < 1e-10);
    assert_eq!(pcf.cycle_test(&t1).unwrap_err(), Error::NotClosed);
}

#[test]
fn coboundary_cycles_vanish() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for action in [cat_map(), cubic_action()] {
        let beta = planted(&action, TwistSpec::trivial(action.rank(), 1));
        let pcf = Pcf::new(&action, &beta, PcfConfig::default()).unwrap();
        let d = action.dim();
        for _ in 0..50 {
            let i = rng.gen_range(0..d);
            let j = (i + rng.gen_range(1..d)) % d;
            let tau = LyapunovPath::parallelogram(random_point(&mut rng, d), i, rng.gen_range(-1.5..1.5), j, rng.gen_range(-1.5..1.5));
            assert!(pcf.cycle_test(&tau).unwrap() < 1e-8);
        }
    }
}

#[test]
fn transfer_recovers_planted_map() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for action in [cat_map(), cubic_action()] {
        let q = 2;
        let mut constants = vec![DVector::from_vec(vec![0.02, -0.01])];
        if action.rank() == 2 {
            constants.push(DVector::from_vec(vec![-0.03, 0.005]));
        }
        let tmap = TrigMap::sine(action.dim(), q, 0.01);
        let beta = HolderCocycle::planted_coboundary(&action, TwistSpec::trivial(action.rank(), q), tmap.clone(), constants.clone()).unwrap();
        let pcf = Pcf::new(&action, &beta, PcfConfig::default()).unwrap();
        let x0 = random_point(&mut rng, action.dim());
        let grid: Vec<_> = (0..30).map(|_| random_point(&mut rng, action.dim())).collect();
        let t = pcf.transfer(&x0, &grid).unwrap();
        assert!(t.residual < 1e-6);
        let shift = -tmap.eval(&x0);
        for (x, v) in grid.iter().zip(&t.values) {
            assert!((v - (tmap.eval(x) + &shift)).norm() < 1e-8);
        }
        // i(s) = c(s) + T(x0) - psi_s T(x0) with trivial twist.
        for (c, i) in constants.iter().zip(&t.constants) {
            assert!((c - i).norm() < 1e-8);
        }
    }
}

#[test]
fn non_coboundary_raises_obstruction() {
    let trig = |d: usize, k: usize| TrigMap {
        components: vec![vec![TrigTerm { amplitude: 0.01, frequency: (0..d).map(|i| i64::from(i == k)).collect(), phase: 0.0 }]],
    };
    let action = cat_map();
    let beta = HolderCocycle::trigonometric(TwistSpec::trivial(1, 1), vec![trig(2, 0)]).unwrap();
    let pcf = Pcf::new(&action, &beta, PcfConfig::default()).unwrap();
    let x0 = DVector::from_vec(vec![0.1, 0.4]);
    assert!(matches!(pcf.transfer(&x0, &[x0.clone()]), Err(Error::CycleObstruction { .. })));

    let action = cubic_action();
    let beta = HolderCocycle::trigonometric(TwistSpec::trivial(2, 1), vec![trig(3, 0), trig(3, 1)]).unwrap();
    let samples = vec![(Element(vec![0, 1]), Element(vec![1, 0]), x0.clone().push(0.2))];
    assert!(beta.cocycle_residual(&action, &samples) > 1e-4);
    let pcf = Pcf::new(&action, &beta, PcfConfig::default()).unwrap();
    let x0 = DVector::from_vec(vec![0.1, 0.4, 0.2]);
    assert!(matches!(pcf.transfer(&x0, &[x0.clone()]), Err(Error::CycleObstruction { .. })));
}

#[test]
fn tail_decay_matches_estimate() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for action in [cat_map(), cubic_action()] {
        let beta = planted(&action, TwistSpec::trivial(action.rank(), 1));
        let pcf = Pcf::new(&action, &beta, PcfConfig::default()).unwrap();
        for line in 0..action.dim() {
            let a = action.contracting_generator(line).unwrap();
            let pairs: Vec<_> = (0..50)
                .map(|_| {
                    let x = random_point(&mut rng, action.dim());
                    let y = &x + &action.lines()[line] * rng.gen_range(0.2..1.0);
                    (x, y)
                })
                .collect();
            let fit = pcf.decay_fit(&a, &pairs).unwrap();
            assert!(fit.relative_gap() < 0.1, "{fit:?}");
            assert!(fit.rate <= fit.coarse_bound);
        }
    }
}

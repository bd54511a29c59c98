use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

use rigidkit_pcf::*;

fn setup(theta: f64) -> (ToralAbelianAction, HolderCocycle) {
    let action = ToralAbelianAction::new(vec![IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]).unwrap()]).unwrap();
    let r = DMatrix::from_row_slice(2, 2, &[theta.cos(), -theta.sin(), theta.sin(), theta.cos()]);
    let twist = TwistSpec::new(2, vec![r], 1e-9).unwrap();
    let beta = HolderCocycle::planted_coboundary(&action, twist, TrigMap::sine(2, 2, 0.01), vec![DVector::zeros(2)]).unwrap();
    (action, beta)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn equivariance_holds(theta in -0.3f64..0.3, x0 in 0.0f64..1.0, x1 in 0.0f64..1.0, t in -1.0f64..1.0, line in 0usize..2) {
        let (action, beta) = setup(theta);
        let pcf = Pcf::new(&action, &beta, PcfConfig::default()).unwrap();
        let x = DVector::from_vec(vec![x0, x1]);
        let y = &x + &action.lines()[line] * t;
        let a = Element(vec![1]);
        prop_assert!(pcf.equivariance(&a, &a, &x, &y).unwrap() < 1e-8);
    }

    #[test]
    fn twisted_parallelograms_vanish(theta in -0.3f64..0.3, x0 in 0.0f64..1.0, x1 in 0.0f64..1.0, t in -1.0f64..1.0, r in -1.0f64..1.0) {
        let (action, beta) = setup(theta);
        let pcf = Pcf::new(&action, &beta, PcfConfig::default()).unwrap();
        let tau = LyapunovPath::parallelogram(DVector::from_vec(vec![x0, x1]), 0, t, 1, r);
        prop_assert!(pcf.cycle_test(&tau).unwrap() < 1e-8);
        let rev = tau.reverse(&action);
        let sum = pcf.path_functional(&tau).unwrap() + pcf.path_functional(&rev).unwrap();
        prop_assert!(sum.norm() < 1e-10);
    }
}

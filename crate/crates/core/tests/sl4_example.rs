use std::collections::BTreeMap;

use rigidkit_core::lie::{centralizer, AbelianSubalgebra, LieAlgebra};
use rigidkit_core::linalg::rational::qvec;
use rigidkit_core::linalg::QMatrix;
use rigidkit_core::roots::{
    detection, find_detecting_conjugators, normalizer_quotient, rigidity_report, weyl_chambers, CartanData,
    ClassKind, Functional, RigidityInput,
};

fn setup() -> (LieAlgebra, AbelianSubalgebra) {
    let g = LieAlgebra::sl(4).unwrap();
    let t = QMatrix::diagonal(&qvec(&[1, 1, 0, -2]));
    let s = QMatrix::from_i64(&[&[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, -1]]);
    let a = AbelianSubalgebra::from_matrices(&g, &[t, s]).unwrap();
    (g, a)
}

fn f(v: &[i64]) -> Functional {
    Functional::new(qvec(v))
}

#[test]
fn roots_and_dimensions() {
    let (g, a) = setup();
    let sys = rigidkit_core::roots::restricted_roots(&g, &a).unwrap();
    let dims: BTreeMap<String, usize> = sys.roots().iter().map(|(k, s)| (k.to_string(), s.dim())).collect();
    let expected: BTreeMap<String, usize> = [
        ("(1,-1)", 2),
        ("(-1,1)", 2),
        ("(3,1)", 2),
        ("(-3,-1)", 2),
        ("(2,2)", 1),
        ("(-2,-2)", 1),
    ]
    .into_iter()
    .map(|(k, d)| (k.to_string(), d))
    .collect();
    assert_eq!(dims, expected);
    assert_eq!(sys.zero_space().dim(), 5);
    assert!(sys.is_complete() && sys.is_symmetric());
    assert!(sys.grading_violation(&g).is_none());
    assert_eq!(sys.coarse_classes().len(), 6);
    assert_eq!(weyl_chambers(&sys).count(), 6);
}

#[test]
fn neutral_algebra_is_centralizer_of_split_part() {
    let (g, a) = setup();
    let split = a.split_parts(&g).unwrap();
    assert_eq!(centralizer(&g, &split).dim(), 5);
}

#[test]
fn detection_and_conjugators() {
    let (g, a) = setup();
    let cartan = CartanData::diagonal(&g).unwrap();
    let det = detection(&g, &cartan, &a).unwrap();
    let undetected: Vec<&str> = det.undetected().iter().map(|e| e.label.as_str()).collect();
    assert_eq!(undetected, ["e1-e2", "e2-e1"]);
    let r = det.entry_by_label("e1-e2").unwrap().root.clone();
    let ws = find_detecting_conjugators(&cartan, &det, &r).unwrap();
    assert!(ws.len() >= 2);
    assert_eq!(cartan.root_label(&g, &ws[0].r1), "e2-e3");
    assert_eq!(cartan.root_label(&g, &ws[0].image), "e1-e3");
}

#[test]
fn normalizer_quotient_is_id_and_34() {
    let (g, a) = setup();
    let q: Vec<String> = normalizer_quotient(&g, &a).unwrap().iter().map(|p| p.cycle_notation()).collect();
    assert_eq!(q, ["id", "(34)"]);
}

#[test]
fn rigidity_flags() {
    let (g, a) = setup();
    let cartan = CartanData::diagonal(&g).unwrap();
    let input = RigidityInput { algebra: &g, subalgebra: &a, representation: None, cartan: Some(&cartan), ideals: &[] };
    let (r, _, _) = rigidity_report(&input).unwrap();
    assert!(r.genuinely_higher_rank);
    assert_eq!(r.all_roots_detected, Some(false));
    let flag = |v: &[i64]| {
        r.semisimple_on_classes
            .iter()
            .find(|c| c.key == f(v).ray_key() && c.kind == ClassKind::Root)
            .unwrap()
            .semisimple
    };
    assert!(!flag(&[1, -1]));
    assert!(!flag(&[3, 1]));
    assert!(flag(&[2, 2]));
}

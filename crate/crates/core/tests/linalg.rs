use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rigidkit_core::linalg::rational::{qi, qvec};
use rigidkit_core::linalg::*;
use rigidkit_core::Error;

/// Rank by fraction-free elimination over the integers.
fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let (a, b) = (m[rank][c].clone(), m[r][c].clone());
                for k in 0..cols {
                    m[r][k] = &m[r][k] * &a - &m[rank][k] * &b;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn kernel_dimension_matches_integer_elimination() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..50 {
        let rows: Vec<Vec<i64>> = (0..5)
            .map(|_| (0..5).map(|_| if rng.gen_bool(0.4) { 0 } else { rng.gen_range(-4..=4) }).collect())
            .collect();
        // Make some rows dependent.
        let mut rows = rows;
        if rng.gen_bool(0.5) {
            rows[4] = rows[0].iter().zip(&rows[1]).map(|(a, b)| 2 * a - b).collect();
        }
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let m = QMatrix::from_i64(&refs);
        let k = kernel(&m);
        assert_eq!(k.dim(), 5 - integer_rank(&rows));
        for v in k.basis() {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }
}

#[test]
fn jordan_chevalley_after_change_of_basis() {
    let j = QMatrix::from_i64(&[&[1, 1, 0, 0], &[0, 1, 0, 0], &[0, 0, -1, 1], &[0, 0, 0, -1]]);
    let p = QMatrix::from_i64(&[&[1, 2, 0, 1], &[0, 1, 3, 0], &[1, 0, 1, 0], &[0, 0, 1, 1]]);
    let pinv = p.inverse().unwrap();
    let m = &(&p * &j) * &pinv;
    let jc = jordan_chevalley(&m).unwrap();
    let s = &(&pinv * &jc.semisimple) * &p;
    let n = &(&pinv * &jc.nilpotent) * &p;
    assert_eq!(s, QMatrix::diagonal(&qvec(&[1, 1, -1, -1])));
    assert_eq!(n, QMatrix::from_i64(&[&[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 0, 0]]));
    assert_eq!(&jc.semisimple + &jc.nilpotent, m);
    assert!(jc.semisimple.commutes_with(&jc.nilpotent));
    assert!(jc.nilpotent.pow(4).is_zero());
}

#[test]
fn jordan_chevalley_parts_commute_with_commutant() {
    let m = QMatrix::from_i64(&[&[2, 1, 0], &[0, 2, 0], &[0, 0, 3]]);
    let jc = jordan_chevalley(&m).unwrap();
    // Polynomials in M commute with everything commuting with M.
    for c in [QMatrix::from_i64(&[&[1, 5, 0], &[0, 1, 0], &[0, 0, 7]]), m.pow(2)] {
        assert!(c.commutes_with(&m));
        assert!(jc.semisimple.commutes_with(&c));
        assert!(jc.nilpotent.commutes_with(&c));
    }
}

#[test]
fn joint_spaces_of_sl4_example() {
    let g = rigidkit_core::lie::LieAlgebra::sl(4).unwrap();
    let t = QMatrix::diagonal(&qvec(&[1, 1, 0, -2]));
    let s = QMatrix::from_i64(&[&[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, -1]]);
    let ads = [g.ad(&g.coordinates_of(&t).unwrap()), g.ad(&g.coordinates_of(&s).unwrap())];
    let parts = joint_generalized_eigenspaces(&ads).unwrap();
    assert_eq!(parts.len(), 7);
    let spaces: Vec<Subspace> = parts.iter().map(|p| p.space.clone()).collect();
    assert!(is_direct_sum_decomposition(15, &spaces));
}

#[test]
fn joint_spaces_reject_non_commuting() {
    let a = QMatrix::from_i64(&[&[1, 1], &[0, 1]]);
    let b = QMatrix::from_i64(&[&[1, 0], &[1, 1]]);
    assert_eq!(
        joint_generalized_eigenspaces(&[a, b]),
        Err(Error::NotCommuting { first: 0, second: 1 })
    );
}

fn commuting_family(seed: u64) -> Vec<QMatrix> {
    // Polynomials in a fixed upper-triangular matrix, conjugated by a unimodular P.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = QMatrix::from_i64(&[&[1, 1, 0, 0], &[0, 1, 0, 0], &[0, 0, 2, 0], &[0, 0, 0, -1]]);
    let p = QMatrix::from_i64(&[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1], &[0, 0, 0, 1]]);
    let pinv = p.inverse().unwrap();
    (0..3)
        .map(|_| {
            let (a, b, c) = (rng.gen_range(-3..=3), rng.gen_range(-3..=3), rng.gen_range(-3..=3));
            let poly = &(&QMatrix::identity(4).scale(&qi(a)) + &base.scale(&qi(b))) + &base.pow(2).scale(&qi(c));
            &(&p * &poly) * &pinv
        })
        .collect()
}

proptest! {
    #[test]
    fn joint_decomposition_is_order_independent(seed in 0u64..1000) {
        let fam = commuting_family(seed);
        let a = joint_generalized_eigenspaces(&fam).unwrap();
        let rev: Vec<QMatrix> = fam.iter().rev().cloned().collect();
        let b = joint_generalized_eigenspaces(&rev).unwrap();
        let mut a: Vec<(Vec<_>, Subspace)> = a.into_iter().map(|j| (j.eigenvalues, j.space)).collect();
        let mut b: Vec<(Vec<_>, Subspace)> = b
            .into_iter()
            .map(|j| (j.eigenvalues.into_iter().rev().collect(), j.space))
            .collect();
        a.sort_by(|x, y| x.0.cmp(&y.0));
        b.sort_by(|x, y| x.0.cmp(&y.0));
        prop_assert_eq!(&a, &b);
        let spaces: Vec<Subspace> = a.iter().map(|p| p.1.clone()).collect();
        prop_assert!(is_direct_sum_decomposition(4, &spaces));
        for (vals, space) in &a {
            for (m, lambda) in fam.iter().zip(vals) {
                prop_assert!(space.is_invariant_under(m));
                let shifted = m - &QMatrix::identity(4).scale(lambda);
                prop_assert!(space.restrict(&shifted).unwrap().is_nilpotent());
            }
        }
    }

    #[test]
    fn jordan_chevalley_invariants(seed in 0u64..1000) {
        for m in commuting_family(seed) {
            let jc = jordan_chevalley(&m).unwrap();
            prop_assert_eq!(&jc.semisimple + &jc.nilpotent, m.clone());
            prop_assert!(jc.semisimple.commutes_with(&jc.nilpotent));
            prop_assert!(jc.nilpotent.pow(4).is_zero());
            prop_assert!(jordan_chevalley(&jc.semisimple).unwrap().nilpotent.is_zero());
        }
    }

    #[test]
    fn spectrum_multiplicities_sum_to_dimension(entries in proptest::collection::vec(-5i64..5, 3)) {
        // Upper-triangular integer matrices always have rational spectrum.
        let m = QMatrix::from_i64(&[&[entries[0], 1, 2], &[0, entries[1], -1], &[0, 0, entries[2]]]);
        let spec = rational_spectrum(&m).unwrap();
        prop_assert_eq!(spec.iter().map(|(_, k)| k).sum::<usize>(), 3);
    }
}

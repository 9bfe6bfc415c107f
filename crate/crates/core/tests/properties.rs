use std::sync::Arc;

use num_complex::Complex64;
use proptest::prelude::*;
use wallspan_core::clifford::{build_family, hermitian, verify_family, GaussMatrix};
use wallspan_core::f2cohomology::{fiber_restriction, F2Poly, RingKind, RingPresentation};
use wallspan_core::fields::{sample_point, sample_rng, WallFields};
use wallspan_core::invariants::{nu, pspan_wall, upper_bound_fibration, WallParams};
use wallspan_core::linalg::singular_values;

fn wall_ring(m: u64, n: u64) -> Arc<RingPresentation> {
    RingPresentation::new(RingKind::Wall { m, n }).unwrap()
}

/// Random element from a bit mask over the normal-form basis.
fn poly_from_mask(ring: &Arc<RingPresentation>, mask: &[bool]) -> F2Poly {
    let mut p = ring.zero();
    for (b, &on) in ring.basis().iter().zip(mask) {
        if on {
            p = p.add(&ring.monomial(b).unwrap()).unwrap();
        }
    }
    p
}

fn ring_and_polys(k: usize) -> impl Strategy<Value = ((u64, u64), Vec<Vec<bool>>)> {
    (1u64..=4, 0u64..=3).prop_flat_map(move |(m, n)| {
        let rank = (2 * (m + 1) * (n + 1)) as usize;
        (Just((m, n)), proptest::collection::vec(proptest::collection::vec(any::<bool>(), rank), k))
    })
}

proptest! {
    #[test]
    fn nu_doubling(k in 1u64..1_000_000) {
        prop_assert_eq!(nu(2 * k).unwrap(), nu(k).unwrap() + 1);
        prop_assert_eq!(nu(2 * k + 1).unwrap(), 0);
    }

    #[test]
    fn pspan_formula_properties(m in 1u64..1000, n in 0u64..100_000) {
        let p = WallParams::new(m, n).unwrap();
        let ps = pspan_wall(p);
        prop_assert_eq!(ps, upper_bound_fibration(p));
        prop_assert!(ps > m);
        prop_assert_eq!((ps - (m + 1)) % 2, 0);
        prop_assert!(ps <= p.dim());
    }

    #[test]
    fn ring_axioms(((m, n), polys) in ring_and_polys(3)) {
        let ring = wall_ring(m, n);
        let [a, b, c] = [0, 1, 2].map(|i| poly_from_mask(&ring, &polys[i]));
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.add(&a).unwrap().is_zero());
        prop_assert_eq!(a.mul(&ring.one()).unwrap(), a);
    }

    #[test]
    fn normal_form_idempotent(((m, n), polys) in ring_and_polys(1)) {
        let ring = wall_ring(m, n);
        let p = poly_from_mask(&ring, &polys[0]);
        let mut again = ring.zero();
        for t in p.terms() {
            again = again.add(&ring.monomial(t).unwrap()).unwrap();
        }
        prop_assert_eq!(again, p);
    }

    #[test]
    fn unit_inverse_is_inverse(((m, n), polys) in ring_and_polys(1)) {
        let ring = wall_ring(m, n);
        let mut p = poly_from_mask(&ring, &polys[0]);
        if !p.component(0).is_one() {
            p = p.add(&ring.one()).unwrap();
        }
        let inv = p.unit_inverse().unwrap();
        prop_assert!(p.mul(&inv).unwrap().is_one());
    }

    #[test]
    fn fiber_restriction_is_multiplicative(((m, n), polys) in ring_and_polys(2)) {
        let ring = wall_ring(m, n);
        let a = poly_from_mask(&ring, &polys[0]);
        let b = poly_from_mask(&ring, &polys[1]);
        let lhs = fiber_restriction(&a.mul(&b).unwrap()).unwrap();
        let rhs = fiber_restriction(&a).unwrap().mul(&fiber_restriction(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let sum = fiber_restriction(&a.add(&b).unwrap()).unwrap();
        prop_assert_eq!(sum, fiber_restriction(&a).unwrap().add(&fiber_restriction(&b).unwrap()).unwrap());
    }

    #[test]
    fn kronecker_associative(entries in proptest::collection::vec((-2i64..=2, -2i64..=2), 12)) {
        let mat = |k: usize| {
            let e: Vec<_> = entries[4 * k..4 * k + 4].iter().map(|&(re, im)| num_complex::Complex::new(re, im)).collect();
            GaussMatrix::from_rows(&[&e[0..2], &e[2..4]]).unwrap()
        };
        let (a, b, c) = (mat(0), mat(1), mat(2));
        prop_assert_eq!(a.kronecker(&b.kronecker(&c)), a.kronecker(&b).kronecker(&c));
    }

    #[test]
    fn clifford_images_pairwise_imaginary(n in 0u64..=16, seed in any::<u64>()) {
        let f = build_family(n).unwrap();
        let p = sample_point(n as usize, 1, &mut sample_rng(seed, 0));
        let images: Vec<Vec<Complex64>> = f.matrices.iter().map(|a| a.apply(&p.z).unwrap()).collect();
        for j in 0..images.len() {
            for k in 0..images.len() {
                if j != k {
                    prop_assert!(hermitian(&images[j], &images[k]).re.abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn tangency_on_random_points(m in 1u64..=4, n in 0u64..=8, seed in any::<u64>()) {
        let fields = WallFields::new(WallParams::new(m, n).unwrap()).unwrap();
        let p = sample_point(n as usize, m as usize, &mut sample_rng(seed, 1));
        for t in fields.evaluate_all(&p).unwrap() {
            for r in t.tangency_residuals(&p) {
                prop_assert!(r <= 1e-10);
            }
            // iβ is real: u has no imaginary part to lose
            prop_assert!(t.u.iter().all(|x| x.is_finite()));
        }
    }

    #[test]
    fn jacobi_matches_nalgebra(rows in 1usize..6, cols_extra in 0usize..6, seed in any::<u64>()) {
        use rand::Rng;
        let cols = rows + cols_extra;
        let mut rng = sample_rng(seed, 9);
        let data: Vec<Vec<f64>> = (0..rows).map(|_| (0..cols).map(|_| rng.random_range(-1.0..1.0)).collect()).collect();
        let mut ours = singular_values(&data);
        let m = nalgebra::DMatrix::from_fn(rows, cols, |i, j| data[i][j]);
        let mut theirs: Vec<f64> = m.singular_values().iter().copied().collect();
        theirs.sort_by(|a, b| b.total_cmp(a));
        ours.truncate(theirs.len());
        for (a, b) in ours.iter().zip(&theirs) {
            prop_assert!((a - b).abs() < 1e-12 * theirs[0].max(1.0));
        }
    }
}

#[test]
fn wall_graded_dimension_closed_count() {
    for m in 1..=5u32 {
        for n in 0..=5u32 {
            let ring = wall_ring(m.into(), n.into());
            for q in 0..=m + 2 * n + 2 {
                let closed = (0..=1u32)
                    .flat_map(|e| (0..=m).flat_map(move |i| (0..=n).map(move |j| (e, i, j))))
                    .filter(|&(e, i, j)| e + i + 2 * j == q)
                    .count();
                assert_eq!(ring.graded_dimension(q), closed, "Q({m},{n}) degree {q}");
            }
        }
    }
}

#[test]
fn clifford_squares_and_counts() {
    for n in 0..=16u64 {
        let f = build_family(n).unwrap();
        assert_eq!(f.len() as u32, 2 * nu(n + 1).unwrap() + 1);
        let minus_id = GaussMatrix::identity(f.size()).neg();
        for a in &f.matrices {
            assert_eq!(a.size(), (n + 1) as usize);
            assert_eq!(a.mul(a).unwrap(), minus_id);
        }
        assert!(verify_family(&f).all_passed());
    }
}

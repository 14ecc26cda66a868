mod common;

use ceresa_core::fixtures::{self, ones};
use ceresa_core::jacobian::{binomial, monodromy_phi, subsets, JacobianData, TensorElement};
use ceresa_core::linalg::{determinant, lattice_rank, rat, Rat, RatMatrix};
use ceresa_core::SpanningTree;
use num_traits::Signed;
use proptest::prelude::*;

fn k4_q(l: &[Rat]) -> RatMatrix {
    let l = |i: usize| l[i - 1].clone();
    RatMatrix::from_rows(vec![
        vec![l(1) + l(5) + l(6), -l(6), -l(5)],
        vec![-l(6), l(2) + l(4) + l(6), -l(4)],
        vec![-l(5), -l(4), l(3) + l(4) + l(5)],
    ])
}

#[test]
fn k4_polarization() {
    let l: Vec<Rat> = (1..=6).map(rat).collect();
    assert_eq!(fixtures::k4_jacobian(&l).polarization(), &k4_q(&l));
    let mut r = common::rng(4);
    for _ in 0..10 {
        let l = fixtures::random_lengths(&mut r, 6);
        assert_eq!(fixtures::k4_jacobian(&l).polarization(), &k4_q(&l));
    }
}

#[test]
fn tl3_polarization_corner() {
    let l: Vec<Rat> = (1..=9).map(rat).collect();
    let q = fixtures::tl3_jacobian(&l).polarization().clone();
    let tail = rat(5 + 6 + 7 + 8 + 9);
    assert_eq!(q[(0, 0)], rat(7));
    assert_eq!(q[(0, 1)], rat(0));
    assert_eq!(q[(2, 3)], tail);
    assert_eq!(q[(3, 3)], &tail + rat(4));
}

#[test]
fn integral_polarization_requires_integers() {
    let jd = fixtures::k4_jacobian(&[rat(1), rat(2), Rat::new(1.into(), 2.into()), rat(1), rat(1), rat(1)]);
    assert!(jd.integral_polarization().is_err());
    assert!(fixtures::k4_jacobian(&ones(6)).integral_polarization().is_ok());
}

#[test]
fn k4_l21_generators() {
    // N(a_i ∧ a_j ⊗ b_k) = a_i ⊗ a_j ∧ b_k - a_j ⊗ a_i ∧ b_k
    let jd = fixtures::k4_jacobian(&(1..=6).map(rat).collect::<Vec<_>>());
    let l = jd.lattice_l(2, 1).unwrap();
    for (col, (ij, k)) in subsets(3, 2).iter().flat_map(|ij| (0..3).map(move |k| (ij.clone(), k))).enumerate() {
        let (a, b) = (jd.cycle_vector(ij[0]), jd.cycle_vector(ij[1]));
        let e = jd.unit(k);
        let want = &TensorElement::pure(3, std::slice::from_ref(&a), &[b.clone(), e.clone()])
            - &TensorElement::pure(3, &[b], &[a, e]);
        assert_eq!(l.col(col), want.into_coords());
    }
}

#[test]
fn phi_squared_sign() {
    let jd = fixtures::k4_jacobian(&ones(6));
    let x = jd.integral_generator(&[0, 1], &[2]);
    let twice = monodromy_phi(&monodromy_phi(&x).unwrap()).unwrap();
    let wedge = TensorElement::pure(3, &[], &[jd.cycle_vector(0), jd.cycle_vector(1), jd.unit(2)]);
    assert_eq!(twice, wedge.scale(&rat(-2)));
}

#[test]
fn wmp_on_fixtures() {
    let r = [rat(2), rat(3), rat(7)];
    for jd in [
        fixtures::k4_jacobian(&ones(6)),
        fixtures::tl3_jacobian(&ones(9)),
        fixtures::l3_jacobian(&ones(6)),
        JacobianData::with_default_tree(&fixtures::theta(&r)),
        JacobianData::with_default_tree(&fixtures::banana(&ones(5))),
        JacobianData::with_default_tree(&fixtures::loop_graph(rat(3))),
    ] {
        let g = jd.genus();
        assert_eq!(lattice_rank(&jd.lattice_l(1, 0).unwrap()), g);
        assert_eq!(lattice_rank(&jd.lattice_l(2, 1).unwrap()), g * binomial(g, 2));
    }
}

#[test]
fn omega_is_symmetric() {
    let jd = fixtures::tl3_jacobian(&(1..=9).map(rat).collect::<Vec<_>>());
    let w = jd.omega();
    let g = jd.genus();
    for i in 0..g {
        for e in 0..g {
            assert_eq!(w.coords()[i * g + e], w.coords()[e * g + i]);
        }
    }
}

fn det_of(jd: &JacobianData) -> Rat {
    determinant(jd.polarization())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn polarization_positive_definite(seed in any::<u64>()) {
        let (jd, _) = common::random_case(seed, 6, false);
        let q = jd.polarization();
        prop_assert_eq!(q, &q.transpose());
        for k in 1..=jd.genus() {
            let idx: Vec<usize> = (0..k).collect();
            let minor = RatMatrix::from_rows(idx.iter().map(|&i| idx.iter().map(|&j| q[(i, j)].clone()).collect()).collect());
            prop_assert!(determinant(&minor).is_positive());
        }
    }

    #[test]
    fn determinant_is_tree_free(seed in any::<u64>()) {
        let (jd, other) = common::random_case(seed, 6, true);
        let d = det_of(&jd);
        prop_assert!(d.is_integer() && d.is_positive());
        prop_assert_eq!(&d, &det_of(&other));
        let (flipped, _) = common::flipped(&jd, seed as usize % jd.graph().edge_count());
        prop_assert_eq!(&d, &det_of(&flipped));
    }

    #[test]
    fn phi_squared_is_even(seed in any::<u64>()) {
        let (jd, _) = common::random_case(seed, 5, true);
        let g = jd.genus();
        for ij in subsets(g, 2) {
            for k in 0..g {
                let x = monodromy_phi(&monodromy_phi(&jd.integral_generator(&ij, &[k])).unwrap()).unwrap();
                let halves = x.scale(&Rat::new(1.into(), 2.into()));
                prop_assert!(halves.coords().iter().all(|c| c.is_integer()));
            }
        }
    }

    #[test]
    fn wmp_random(seed in any::<u64>()) {
        let (jd, _) = common::random_case(seed, 5, false);
        let g = jd.genus();
        prop_assert_eq!(lattice_rank(&jd.lattice_l(1, 0).unwrap()), g);
        prop_assert_eq!(lattice_rank(&jd.lattice_l(2, 1).unwrap()), g * binomial(g, 2));
    }

    #[test]
    fn lattices_are_tree_free(seed in any::<u64>()) {
        let (jd, other) = common::random_case(seed, 4, false);
        let g = jd.genus();
        let p = common::change(&other, &jd, &common::identity_map(jd.graph()));
        for (deg, here, there) in [
            ((1, 0), jd.jh_quotient(1, 0).unwrap(), other.jh_quotient(1, 0).unwrap()),
            ((2, 1), jd.jh_quotient(2, 1).unwrap(), other.jh_quotient(2, 1).unwrap()),
            ((2, 1), jd.jhbar_quotient().unwrap(), other.jhbar_quotient().unwrap()),
        ] {
            prop_assert!(common::same_quotient(&here, &there, g, deg, &p));
        }
        if g >= 3 {
            prop_assert!(common::same_quotient(&jd.q_quotient(3, 0).unwrap(), &other.q_quotient(3, 0).unwrap(), g, (3, 0), &p));
        }
    }

    #[test]
    fn omega_is_tree_free(seed in any::<u64>()) {
        let (jd, other) = common::random_case(seed, 4, false);
        let p = common::change(&other, &jd, &common::identity_map(jd.graph()));
        prop_assert_eq!(common::move_tensor(&other.omega(), &p), jd.omega());
    }
}

#[test]
fn genus_one_quotients() {
    let graph = fixtures::loop_graph(rat(5));
    let jd = JacobianData::new(&graph, &SpanningTree::bfs(&graph));
    assert_eq!(jd.polarization()[(0, 0)], rat(5));
    let q = jd.jh_quotient(1, 0).unwrap();
    assert!(q.is_zero_class(&[rat(5)]).unwrap());
    assert!(!q.is_zero_class(&[rat(1)]).unwrap());
    assert_eq!(jd.lattice_l(2, 1).unwrap().rows(), 0);
    assert!(jd.lattice_l(0, 1).is_err());
}

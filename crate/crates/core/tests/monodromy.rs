use dmwb_core::fixture::MatrixFixture;
use dmwb_core::monodromy::*;
use dmwb_core::{ExtOrder, LatticeSpec};
use proptest::prelude::*;

fn group(orders: [i64; 4]) -> OrbifoldGroup {
    OrbifoldGroup::new(orders.map(|m| {
        if m == 0 {
            ExtOrder::Infinite
        } else {
            ExtOrder::int(m)
        }
    }))
    .unwrap()
}

fn synthetic() -> MatrixFixture {
    MatrixFixture::from_json(include_str!("fixtures/synthetic_10_5.json")).unwrap()
}

#[test]
fn synthetic_fixture_passes_every_word() {
    let report = verify_matrix_assignment(&synthetic(), &LatticeSpec::three(10, 5)).unwrap();
    assert_eq!(report.checks.len(), 10);
    assert!(report.passed());
    assert!(report.checks.iter().all(|c| c.status == WordStatus::Pass));
    assert!(matches!(
        verify_matrix_assignment(&synthetic(), &LatticeSpec::two(4, 4, 3)),
        Err(MonodromyError::NotThreeFold(_))
    ));
}

#[test]
fn conjugate_words_have_equal_orders() {
    let words = symbolic_words();
    let fx = synthetic();
    for (i, j) in conjugate_pairs() {
        assert!(words[i].0.is_conjugate(&words[j].0), "{i} {j}");
        assert_eq!(words[i].1, words[j].1);
        let oi = elliptic_order(
            &fx.eval_str(ORDER_TABLE[i].0).unwrap(),
            1e-9,
            DEFAULT_ORDER_CAP,
        );
        let oj = elliptic_order(
            &fx.eval_str(ORDER_TABLE[j].0).unwrap(),
            1e-9,
            DEFAULT_ORDER_CAP,
        );
        assert_eq!(oi, oj);
    }
    // the two reflections share a target order without being conjugate in the free group
    assert!(!words[0].0.is_conjugate(&words[2].0));
}

#[test]
fn abelianizations_by_hand() {
    // identity monodromy on four order-5 points: Z + (Z/5)^3
    let t = mapping_torus(&group([5; 4]), &MappingClass::identity()).unwrap();
    let ab = abelianization(&t);
    assert_eq!((ab.free_rank, ab.torsion.clone()), (1, vec![5, 5, 5]));
    assert_eq!(coinvariant_rank(&t), 0);

    // four punctures: H1 of the fibre is Z^3; a half twist identifies two classes
    let cusp = group([0; 4]);
    let t = mapping_torus(&cusp, &MappingClass::identity()).unwrap();
    assert_eq!(abelianization(&t).free_rank, 4);
    let t = mapping_torus(&cusp, &MappingClass::half_twist(1)).unwrap();
    assert_eq!(abelianization(&t).free_rank, 3);
    assert_eq!(coinvariant_rank(&t), 2);

    assert!(mapping_torus(&group([5, 3, 5, 5]), &MappingClass::half_twist(1)).is_err());
}

#[test]
fn default_loops_are_valid_on_the_fibre_groups() {
    for spec in [LatticeSpec::three(10, 5), LatticeSpec::three(6, 3)] {
        let g = fiber_orbifold_group(&spec).unwrap();
        for (_, mc) in default_loop_monodromy() {
            assert!(mc.validate(&g).is_ok(), "{spec}");
            assert!(mc.preserves_relators(&g));
        }
    }
    // E0 has order 4 and E3 order 6, so the twist swapping them is not allowed
    let g = fiber_orbifold_group(&LatticeSpec::three(12, 4)).unwrap();
    assert!(MappingClass::half_twist(1).validate(&g).is_ok());
    assert!(MappingClass::half_twist(3).validate(&g).is_err());
}

fn twist_word() -> impl Strategy<Value = Word> {
    prop::collection::vec(prop_oneof![1i8..=3, -3i8..=-1], 0..8).prop_map(Word::from_letters)
}

proptest! {
    #[test]
    fn twist_words_preserve_relators(w in twist_word()) {
        let mc = MappingClass::from_twists(&w);
        for orders in [[5; 4], [0; 4], [2, 2, 2, 2]] {
            let g = group(orders);
            prop_assert!(mc.preserves_relators(&g));
            prop_assert!(mc.validate(&g).is_ok());
        }
    }

    #[test]
    fn torus_abelianization_counts_homs(w in twist_word(), q in prop::sample::select(vec![2u64, 3, 5])) {
        let t = mapping_torus(&group([5; 4]), &MappingClass::from_twists(&w)).unwrap();
        let ab = abelianization(&t);
        prop_assert_eq!(ab.hom_count(q), hom_count_brute_force(&t.relators(), 5, q));
        prop_assert_eq!(coinvariant_rank(&t) + 1, ab.free_rank);
    }

    #[test]
    fn inverse_twists_undo(w in twist_word()) {
        let mc = MappingClass::from_twists(&w).compose(&MappingClass::from_twists(&w.inverse()));
        for i in 1..=4u8 {
            prop_assert_eq!(mc.apply(&Word::gen(i)), Word::gen(i));
        }
    }
}

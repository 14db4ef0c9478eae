use pauli_lgr::{
    enumerate_generators, generator_from_operators, orbit_of, point_of, to_observable,
    Correspondence, GroupElem, PauliPoint, ProjPoint, Sl2, Stratification,
};
use proptest::prelude::*;

fn elem(n: usize) -> impl Strategy<Value = GroupElem> {
    (
        prop::collection::vec(0usize..6, n),
        Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
    )
        .prop_map(|(f, perm)| {
            GroupElem::new(f.into_iter().map(|i| Sl2::all()[i]).collect(), perm).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Any basis of the same subspace gives the same point.
    #[test]
    fn point_ignores_basis_choice(idx in 0usize..2295, mix in prop::collection::vec(any::<bool>(), 16)) {
        let gens = enumerate_generators(4).unwrap();
        let g = &gens[idx];
        let ops = g.basis_operators();
        let mut mixed = Vec::new();
        for (i, op) in ops.iter().enumerate() {
            let mut c = op.coords().clone();
            for (j, other) in ops.iter().enumerate().skip(i + 1) {
                if mix[4 * i + j] {
                    c.xor_assign(other.coords());
                }
            }
            mixed.push(PauliPoint::new(4, c).unwrap());
        }
        mixed.reverse();
        let h = generator_from_operators(&mixed).unwrap();
        prop_assert_eq!(point_of(&h).unwrap(), point_of(g).unwrap());
    }

    #[test]
    fn group_action_preserves_image(g in elem(4), idx in 0usize..2295) {
        let corr = Correspondence::build(4).unwrap();
        let p = &corr.points()[idx];
        prop_assert!(corr.contains(&g.act(p)));
    }

    #[test]
    fn orbit_ids_are_invariant(g in elem(3), mask in 1u64..256) {
        let s = Stratification::compute(3).unwrap();
        let p = ProjPoint::from_mask(3, mask).unwrap();
        prop_assert_eq!(s.orbit_id(&p), s.orbit_id(&g.act(&p)));
    }
}

#[test]
fn lifts_of_every_image_point_project_back() {
    for n in 2..=4 {
        let corr = Correspondence::build(n).unwrap();
        for p in corr.image() {
            let g = corr.lift(&p).unwrap();
            assert_eq!(point_of(&g).unwrap(), p);
        }
    }
}

#[test]
fn observable_coordinates_match_display_bits() {
    let corr = Correspondence::build(3).unwrap();
    for p in corr.points() {
        let obs = to_observable(p);
        let bits = p.display_bits();
        for (i, &b) in bits.iter().enumerate() {
            assert_eq!(obs.coords().get(i), b);
        }
    }
}

#[test]
fn orbit_of_representative_matches_stratification() {
    let s = Stratification::compute(3).unwrap();
    for o in s.orbits() {
        assert_eq!(orbit_of(&o.representative).len(), o.size);
    }
}

use harmonic_locus::characters::{character_hooks, character_theorem4, weights_from_character};
use harmonic_locus::exact_poly::{parity_conjugation_checks, wronskian_for_partition};
use harmonic_locus::partitions::{partition_from_contents, FrobeniusCoordinates};
use harmonic_locus::wilson::{verify_relations, RationalMatrix, WilsonData};
use harmonic_locus::Partition;
use proptest::prelude::*;

fn partition(max_parts: usize, max_part: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max_part, 0..=max_parts).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

proptest! {
    #[test]
    fn conjugation_is_an_involution(l in partition(8, 8)) {
        prop_assert_eq!(l.conjugate().conjugate(), l.clone());
        prop_assert_eq!(l.conjugate().size(), l.size());
    }

    #[test]
    fn contents_determine_the_partition(l in partition(8, 8)) {
        prop_assert_eq!(partition_from_contents(&l.contents()).unwrap(), l);
    }

    #[test]
    fn frobenius_round_trip(l in partition(8, 8)) {
        let f = l.frobenius();
        prop_assert_eq!(f.hook_lengths().iter().sum::<usize>(), l.size());
        let again = FrobeniusCoordinates::new(f.arms.clone(), f.legs.clone()).unwrap();
        prop_assert_eq!(again.to_partition(), l);
    }

    #[test]
    fn hooks_are_transpose_invariant(l in partition(8, 8)) {
        prop_assert_eq!(l.hooks(), l.conjugate().hooks());
        prop_assert_eq!(l.hooks().len(), l.size());
    }

    #[test]
    fn character_weights_are_hooks(l in partition(5, 6)) {
        let chi = character_theorem4(&l);
        prop_assert_eq!(&chi, &character_hooks(&l));
        let w = weights_from_character(&chi).unwrap();
        prop_assert_eq!(w.squares(), l.hooks().map(|h| h * h));
    }

    #[test]
    fn wronskian_degree_and_symmetries(l in partition(4, 5)) {
        let w = wronskian_for_partition(&l);
        prop_assert_eq!(w.degree(), Some(l.size()));
        prop_assert_eq!(parity_conjugation_checks(&l), (true, true));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn wilson_data_survives_serialization(l in partition(3, 4).prop_filter("nonempty", |l| !l.is_empty())) {
        let d = WilsonData::new(&l).unwrap();
        prop_assert!(verify_relations(&d).all_pass());
        let back = RationalMatrix::from_string_rows(&d.x.to_string_rows()).unwrap();
        prop_assert_eq!(back, d.x);
    }
}

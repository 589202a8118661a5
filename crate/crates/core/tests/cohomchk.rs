use primlink::cohomchk::{
    cochain_dims, completeness_verdict, expected_cohomology, fox_augmented_jacobian, PresentationData, PrimeSelection,
};
use primlink::primes::is_prime;
use primlink_oracle::sample_diagrams;
use proptest::prelude::*;

fn commutator_presentation() -> impl Strategy<Value = PresentationData> {
    (1usize..=5).prop_flat_map(|d| {
        proptest::collection::vec((1..=d, proptest::collection::vec(-9i64..=9, d)), 0..=d).prop_map(move |rels| {
            PresentationData::commutators(d, &rels).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn commutator_relators_have_trivial_first_coboundary(pres in commutator_presentation()) {
        for p in (2u64..=100).filter(|&p| is_prime(p)) {
            let j = fox_augmented_jacobian(&pres, p).unwrap();
            prop_assert!(j.matrix.is_zero());
            let dims = cochain_dims(pres.generators, &j).unwrap();
            prop_assert_eq!(dims, [1, pres.generators, pres.relators.len()]);
        }
    }
}

#[test]
fn link_presentations_match_expected_dims() {
    for (name, d) in sample_diagrams() {
        let n = d.components();
        for dropped in 1..=n {
            let pres = PresentationData::from_diagram(&d, dropped).unwrap();
            assert_eq!(pres.relators.len(), n - 1);
            for p in (2u64..=100).filter(|&p| is_prime(p)) {
                let j = fox_augmented_jacobian(&pres, p).unwrap();
                let dims = cochain_dims(n, &j).unwrap();
                assert_eq!(dims[..], expected_cohomology(n)[..3], "{name} p={p}");
                assert_eq!(dims[0], 1);
            }
        }
    }
}

#[test]
fn verdict_is_monotone_in_degree() {
    for (name, d) in sample_diagrams() {
        let maxk = if d.components() <= 2 { 6 } else { 5 };
        let top = completeness_verdict(&d, PrimeSelection::Auto, maxk).unwrap();
        if !top.is_verified() {
            continue;
        }
        for k in 2..maxk {
            let lower = completeness_verdict(&d, PrimeSelection::Auto, k).unwrap();
            assert!(lower.is_verified(), "{name}: verified at {maxk} but not at {k}");
        }
    }
}

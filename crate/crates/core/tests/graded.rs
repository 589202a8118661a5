use num_bigint::{BigInt, BigUint};
use primlink::freelie::FreeLieAlgebra;
use primlink::gradedcert::{
    commutator_degrees, enveloping_dims, freeness_certificate, ideal_degrees, quotient_profile, relators_from_diagram,
    GradedAnalysis, Localization, RankProfile,
};
use primlink::linkdiag::{primitive, LinkingDiagram};
use primlink_oracle::{sample_diagrams, tensor_route};

/// Highest degree each sample is pushed to in this suite.
fn depth(d: &LinkingDiagram) -> usize {
    match d.components() {
        1 | 2 => 6,
        _ => 5,
    }
}

#[test]
fn lie_route_matches_tensor_route() {
    for (name, d) in sample_diagrams() {
        let maxk = depth(&d);
        let n = d.components();
        let alg = FreeLieAlgebra::new(n);
        let a = GradedAnalysis::compute(&alg, &d, n, maxk).unwrap();
        let oracle = tensor_route(&d, n, maxk);
        for o in &oracle {
            let k = o.degree;
            assert_eq!(a.ideal.rank(k), o.ideal_rank, "{name}: rank r_{k}");
            assert_eq!(a.profile.get(k).unwrap().divisors, o.quotient_torsion, "{name}: torsion of (L/r)_{k}");
            assert_eq!(a.commutators.rank(k), o.commutator_rank, "{name}: rank [r,r]_{k}");
        }
        if a.profile.is_torsion_free() {
            let c = a.certificate(Localization::Integral).unwrap();
            for v in &c.degrees {
                let o = &oracle[v.degree - 1];
                assert_eq!(v.rank, o.relation_rank(), "{name}: rank (r/[r,r])_{}", v.degree);
                assert_eq!(v.divisors, o.relation_torsion, "{name}: torsion (r/[r,r])_{}", v.degree);
            }
        }
    }
}

#[test]
fn structural_identities() {
    for (name, d) in sample_diagrams() {
        let maxk = depth(&d);
        let n = d.components();
        let alg = FreeLieAlgebra::new(n);
        let rel = relators_from_diagram(&alg, &d, n).unwrap();
        let ideal = ideal_degrees(&alg, &rel, maxk);
        let profile = quotient_profile(&alg, &rel, maxk);
        for k in 1..=maxk {
            let p = profile.get(k).unwrap();
            if p.is_torsion_free() {
                assert_eq!(ideal.rank(k) + p.rank, alg.dim(k), "{name} degree {k}");
            }
        }
        for k in 2..maxk {
            for v in ideal.basis_elements(&alg, k) {
                for j in 1..=n {
                    let w = alg.bracket(&v, &alg.generator(j).unwrap());
                    assert!(ideal.contains(&alg, k + 1, &w), "{name}: ideal not closed in degree {}", k + 1);
                }
            }
        }
        let comm = commutator_degrees(&alg, &ideal, maxk);
        assert!(comm.is_contained_in(&ideal), "{name}: [r,r] not in r");
    }
}

#[test]
fn dropped_index_independence() {
    for (name, d) in sample_diagrams() {
        let n = d.components();
        let alg = FreeLieAlgebra::new(n);
        let first = quotient_profile(&alg, &relators_from_diagram(&alg, &d, 1).unwrap(), 5);
        let last = quotient_profile(&alg, &relators_from_diagram(&alg, &d, n).unwrap(), 5);
        assert_eq!(first.ranks(), last.ranks(), "{name}");
    }
}

#[test]
fn primitive_samples_are_torsion_free_and_certified() {
    for (name, d) in sample_diagrams() {
        if !primitive(&d).primitive {
            continue;
        }
        let n = d.components();
        let maxk = depth(&d);
        let alg = FreeLieAlgebra::new(n);
        let a = GradedAnalysis::compute(&alg, &d, n, maxk).unwrap();
        assert!(a.profile.is_torsion_free(), "{name}: {:?}", a.profile);
        assert!(a.certificate(Localization::Integral).unwrap().passed(), "{name}");
    }
}

#[test]
fn documented_examples() {
    let hopf = LinkingDiagram::hopf();
    let alg = FreeLieAlgebra::new(2);
    let r = relators_from_diagram(&alg, &hopf, 2).unwrap();
    let ideal = ideal_degrees(&alg, &r, 3);
    assert_eq!((ideal.rank(2), ideal.rank(3)), (1, 2));
    assert_eq!(quotient_profile(&alg, &r, 4).ranks(), vec![2, 0, 0, 0]);
    let c = freeness_certificate(&hopf, 2, 4).unwrap();
    assert_eq!(c.degrees.iter().map(|v| v.rank).collect::<Vec<_>>(), vec![1, 2, 3]);

    let chain = LinkingDiagram::from_labels(3, &[(1, 2, 1), (2, 3, 1)]).unwrap();
    let alg3 = FreeLieAlgebra::new(3);
    let r = relators_from_diagram(&alg3, &chain, 3).unwrap();
    assert_eq!(ideal_degrees(&alg3, &r, 2).rank(2), 2);
    let p = quotient_profile(&alg3, &r, 2);
    assert_eq!(p.get(2).unwrap().rank, 1);
    assert!(p.is_torsion_free());
    assert!(freeness_certificate(&chain, 3, 6).unwrap().passed());

    let unlinked = LinkingDiagram::from_labels(2, &[(1, 2, 0)]).unwrap();
    let c = freeness_certificate(&unlinked, 2, 2).unwrap();
    assert!(!c.passed());
    assert_eq!(c.degrees[0].rank, 0);
    assert_eq!(c.degrees[0].expected_rank, BigUint::from(1u32));
}

#[test]
fn enveloping_examples() {
    let u = |v: &[u64]| v.iter().map(|&x| BigUint::from(x)).collect::<Vec<_>>();
    assert_eq!(enveloping_dims(&RankProfile::from_ranks(&[2, 0, 0, 0]), 4).unwrap(), u(&[1, 2, 3, 4, 5]));
    let free2 = RankProfile::from_ranks(&[2, 1, 2, 3, 6, 9]);
    assert_eq!(enveloping_dims(&free2, 6).unwrap(), u(&[1, 2, 4, 8, 16, 32, 64]));
    assert_eq!(enveloping_dims(&RankProfile::from_ranks(&[]), 2).unwrap(), u(&[1, 0, 0]));
    // free on 3 generators: the enveloping algebra is the tensor algebra
    let free3 = RankProfile::from_ranks(&[3, 3, 8, 18, 48]);
    assert_eq!(enveloping_dims(&free3, 5).unwrap(), u(&[1, 3, 9, 27, 81, 243]));
}

#[test]
fn torsion_from_doubled_linking() {
    let d = LinkingDiagram::from_labels(2, &[(1, 2, 2)]).unwrap();
    let alg = FreeLieAlgebra::new(2);
    let a = GradedAnalysis::compute(&alg, &d, 2, 4).unwrap();
    assert_eq!(a.profile.first_torsion(), Some(2));
    assert_eq!(a.profile.get(2).unwrap().divisors, vec![BigInt::from(2)]);
    assert!(a.certificate(Localization::AtPrime(3)).unwrap().passed());
    assert!(a.certificate(Localization::Integral).is_err());
}

use primlink::linkdiag::{primitive, q_primitive, FailingPrimes, LinkingDiagram};
use primlink::primes::is_prime;
use primlink_oracle::spanning_tree_exists;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn diagram(max_d: usize, bound: i64) -> impl Strategy<Value = LinkingDiagram> {
    (1..=max_d).prop_flat_map(move |d| {
        proptest::collection::vec(-bound..=bound, d * (d - 1) / 2).prop_map(move |labels| {
            let mut it = labels.into_iter();
            let mut triples = Vec::new();
            for i in 1..=d {
                for j in i + 1..=d {
                    triples.push((i, j, it.next().unwrap()));
                }
            }
            LinkingDiagram::from_labels(d, &triples).unwrap()
        })
    })
}

const SMALL_PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

fn relabel(d: &LinkingDiagram, i: usize, j: usize, l: i64) -> LinkingDiagram {
    let mut m = d.matrix().to_vec();
    m[i][j] = l;
    m[j][i] = l;
    LinkingDiagram::new(m).unwrap()
}

proptest! {
    #[test]
    fn agrees_with_spanning_tree_search(d in diagram(5, 12)) {
        for q in SMALL_PRIMES {
            prop_assert_eq!(q_primitive(&d, q).unwrap(), spanning_tree_exists(&d, q));
        }
    }

    #[test]
    fn unit_label_is_monotone(d in diagram(5, 12), pick in 0usize..100) {
        let n = d.components();
        prop_assume!(n >= 2);
        let edges: Vec<(usize, usize, i64)> = d.edges().collect();
        let (i, j, _) = edges[pick % edges.len()];
        let better = relabel(&d, i, j, 1);
        for q in SMALL_PRIMES {
            prop_assert!(!q_primitive(&d, q).unwrap() || q_primitive(&better, q).unwrap());
        }
    }

    #[test]
    fn depends_only_on_residues(d in diagram(5, 12), shift in -3i64..=3) {
        for q in SMALL_PRIMES {
            let mut m = d.matrix().to_vec();
            for (a, row) in m.iter_mut().enumerate() {
                for (b, x) in row.iter_mut().enumerate() {
                    if a != b {
                        *x += shift * q as i64;
                    }
                }
            }
            let shifted = LinkingDiagram::new(m).unwrap();
            prop_assert_eq!(q_primitive(&d, q).unwrap(), q_primitive(&shifted, q).unwrap());
        }
    }

    #[test]
    fn failing_set_is_exact(d in diagram(5, 30)) {
        let v = primitive(&d);
        prop_assert_eq!(v.primitive, v.failing.is_empty());
        for q in (2u64..200).filter(|&q| is_prime(q)) {
            prop_assert_eq!(v.failing.contains(q), !q_primitive(&d, q).unwrap());
        }
    }
}

#[test]
fn primitive_diagrams_pass_sampled_primes() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let diagrams = [
        LinkingDiagram::hopf(),
        LinkingDiagram::unknot(),
        LinkingDiagram::from_labels(3, &[(1, 2, 1), (2, 3, 1)]).unwrap(),
        LinkingDiagram::from_labels(3, &[(1, 2, 2), (2, 3, 3), (1, 3, 5)]).unwrap(),
        LinkingDiagram::from_labels(4, &[(1, 2, 4), (2, 3, 9), (3, 4, 25), (1, 4, 7), (1, 3, 3)]).unwrap(),
    ];
    let mut sampled = Vec::with_capacity(1000);
    while sampled.len() < 1000 {
        let q: u64 = rng.gen_range(2..1 << 40);
        if is_prime(q) {
            sampled.push(q);
        }
    }
    for d in &diagrams {
        assert!(primitive(d).primitive);
        for &q in &sampled {
            assert!(q_primitive(d, q).unwrap(), "q = {q}");
        }
    }
}

#[test]
fn examples() {
    let two = |l| LinkingDiagram::from_labels(2, &[(1, 2, l)]).unwrap();
    assert_eq!(primitive(&two(0)).failing, FailingPrimes::All);
    assert_eq!(primitive(&two(6)).failing, FailingPrimes::Finite([2, 3].into()));
    assert_eq!(primitive(&two(2)).failing, FailingPrimes::Finite([2].into()));
    assert!(primitive(&LinkingDiagram::hopf()).failing.is_empty());
}

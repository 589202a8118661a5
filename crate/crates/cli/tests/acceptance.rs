//! Acceptance suite: one pass/fail line per criterion.
//!
//! Everything here is exact, so every tolerance is zero: counts, ranks,
//! divisors and dimensions must match exactly.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use primlink::cohomchk::{
    cochain_dims, completeness_verdict, fox_augmented_jacobian, resolve_primes, Check, CompletenessReport,
    PresentationData, PrimeSelection, Status,
};
use primlink::exactla::{smith_normal_form, IntMatrix};
use primlink::freelie::{lyndon_basis, to_associative, FreeLieAlgebra, LieElement};
use primlink::gradedcert::{
    commutator_degrees, enveloping_dims, ideal_degrees, quotient_profile, relators_from_diagram, GradedAnalysis,
    Localization,
};
use primlink::linkdiag::{FailingPrimes, LinkingDiagram};
use primlink::primes::is_prime;
use primlink_oracle::{determinantal_divisors, necklace_count, sample_diagrams, tensor_route};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Wall-clock budget for the whole suite.
const BUDGET: Duration = Duration::from_secs(120);
/// Highest degree checked in the end-to-end criteria.
const MAX_DEGREE: usize = 6;
const LIE_TRIPLES: usize = 250;
const LIE_MAX_DEGREE: usize = 5;
const SNF_MATRICES: usize = 100;
const SNF_MAX_DIM: usize = 8;
const SNF_BOUND: i64 = 50;
const SEED: u64 = 20261015;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

/// Runs `primlink analyze` on a data file with a private cache directory.
fn cli_exit(file: &str) -> Result<i32, String> {
    let cache = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = Command::new(env!("CARGO_BIN_EXE_primlink"))
        .arg("analyze")
        .arg(data(file))
        .env("PRIMLINK_CACHE_DIR", cache.path())
        .output()
        .map_err(|e| e.to_string())?;
    out.status.code().ok_or_else(|| "terminated by signal".into())
}

fn two(l: i64) -> LinkingDiagram {
    LinkingDiagram::from_labels(2, &[(1, 2, l)]).unwrap()
}

fn chain3() -> LinkingDiagram {
    LinkingDiagram::from_labels(3, &[(1, 2, 1), (2, 3, 1), (1, 3, 0)]).unwrap()
}

fn verdict(d: &LinkingDiagram, primes: PrimeSelection, k: usize) -> Result<CompletenessReport, String> {
    completeness_verdict(d, primes, k).map_err(|e| e.to_string())
}

fn all_dims(r: &CompletenessReport, want: [usize; 4]) -> Result<(), String> {
    for p in &r.per_prime {
        ensure!(p.cohomology.computed == want, "p={}: dims {:?}, want {:?}", p.prime, p.cohomology.computed, want);
        ensure!(p.cohomology.expected == want, "p={}: expected {:?}", p.prime, p.cohomology.expected);
    }
    Ok(())
}

fn certificate_ranks(r: &CompletenessReport) -> Result<Vec<(usize, BigUint)>, String> {
    let p = r.per_prime.first().ok_or("no primes checked")?;
    let c = p.certificate.as_ref().ok_or("certificate missing")?;
    Ok(c.degrees.iter().map(|v| (v.rank, v.expected_rank.clone())).collect())
}

fn c1_witt() -> Outcome {
    for d in 1..=4 {
        for k in 1..=8 {
            let n = lyndon_basis(d, k).len();
            ensure!(n == necklace_count(d, k), "d={d} k={k}: {n} vs {}", necklace_count(d, k));
        }
    }
    let seq: Vec<usize> = (1..=8).map(|k| lyndon_basis(2, k).len()).collect();
    ensure!(seq[..6] == [2, 1, 2, 3, 6, 9], "d=2 sequence {seq:?}");
    Ok(format!("32 (d,k) pairs; d=2: {seq:?}"))
}

fn random_element(rng: &mut impl Rng, d: usize) -> LieElement {
    let k = rng.gen_range(1..=LIE_MAX_DEGREE);
    let basis = lyndon_basis(d, k);
    let mut e = LieElement::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let w = basis[rng.gen_range(0..basis.len())].clone();
        e.add_term(w, BigInt::from(rng.gen_range(-5i64..=5)));
    }
    e
}

fn c2_lie_axioms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let algs = [FreeLieAlgebra::new(2), FreeLieAlgebra::new(3), FreeLieAlgebra::new(4)];
    for _ in 0..LIE_TRIPLES {
        let alg = &algs[rng.gen_range(0..algs.len())];
        let d = alg.generators();
        let (a, b, c) = (random_element(&mut rng, d), random_element(&mut rng, d), random_element(&mut rng, d));
        let ab = alg.bracket(&a, &b);
        ensure!(ab == -&alg.bracket(&b, &a), "antisymmetry fails for {a}, {b}");
        let jacobi =
            &(&alg.bracket(&a, &alg.bracket(&b, &c)) + &alg.bracket(&b, &alg.bracket(&c, &a))) + &alg.bracket(&c, &ab);
        ensure!(jacobi.is_zero(), "Jacobi fails for {a}, {b}, {c}: {jacobi}");
        let (pa, pb) = (to_associative(&a), to_associative(&b));
        ensure!(to_associative(&ab) == &(&pa * &pb) - &(&pb * &pa), "embedding fails for {a}, {b}");
    }
    Ok(format!("{} random elements, d in 2..=4, degree <= {LIE_MAX_DEGREE}", 3 * LIE_TRIPLES))
}

fn c3_snf() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x5f);
    for t in 0..SNF_MATRICES {
        let (r, c) = (rng.gen_range(1..=SNF_MAX_DIM), rng.gen_range(1..=SNF_MAX_DIM));
        let entries = (0..r * c).map(|_| BigInt::from(rng.gen_range(-SNF_BOUND..=SNF_BOUND))).collect();
        let a = IntMatrix::new(r, c, entries).unwrap();
        let f = smith_normal_form(&a);
        ensure!(&(&f.left * &a) * &f.right == f.diagonal, "matrix {t}: U*A*V != S");
        ensure!(f.left.determinant().unwrap().abs().is_one(), "matrix {t}: |det U| != 1");
        ensure!(f.right.determinant().unwrap().abs().is_one(), "matrix {t}: |det V| != 1");
        for i in 0..r {
            for j in 0..c {
                ensure!(i == j || f.diagonal[(i, j)].is_zero(), "matrix {t}: S not diagonal");
            }
        }
        let diag: Vec<BigInt> = (0..r.min(c)).map(|i| f.diagonal[(i, i)].clone()).collect();
        ensure!(diag.iter().all(|x| !x.is_negative()), "matrix {t}: negative divisor");
        ensure!(diag.windows(2).all(|w| w[1].is_multiple_of(&w[0])), "matrix {t}: chain broken {diag:?}");
        if r.max(c) <= 5 {
            ensure!(f.divisors() == determinantal_divisors(&a), "matrix {t}: disagrees with minors");
        }
    }
    Ok(format!("{SNF_MATRICES} matrices up to {SNF_MAX_DIM}x{SNF_MAX_DIM}, entries in [-{SNF_BOUND}, {SNF_BOUND}]"))
}

fn c4_hopf() -> Outcome {
    let d = LinkingDiagram::hopf();
    let r = verdict(&d, PrimeSelection::Auto, MAX_DEGREE)?;
    ensure!(r.primitivity.primitive && r.primitivity.failing.is_empty(), "not primitive: {:?}", r.primitivity);
    ensure!(r.quotient_profile.ranks() == [2, 0, 0, 0, 0, 0], "ranks {:?}", r.quotient_profile.ranks());
    ensure!(r.quotient_profile.is_torsion_free(), "torsion in L/r");
    let ranks = certificate_ranks(&r)?;
    let u = enveloping_dims(&r.quotient_profile, MAX_DEGREE - 2).map_err(|e| e.to_string())?;
    ensure!(ranks.len() == MAX_DEGREE - 1, "certificate covers {} degrees", ranks.len());
    for (i, (rank, expected)) in ranks.iter().enumerate() {
        ensure!(*expected == u[i] && BigUint::from(*rank) == u[i], "degree {}: {rank} vs {}", i + 2, u[i]);
    }
    all_dims(&r, [1, 2, 1, 0])?;
    ensure!(r.is_verified(), "status {:?}", r.status);
    let code = cli_exit("hopf.json")?;
    ensure!(code == 0, "exit {code}");
    Ok(format!("certificate ranks {:?}, dims (1,2,1,0), exit 0", ranks.iter().map(|x| x.0).collect::<Vec<_>>()))
}

fn c5_chain() -> Outcome {
    let d = chain3();
    let r = verdict(&d, PrimeSelection::Auto, MAX_DEGREE)?;
    ensure!(r.primitivity.primitive, "not primitive");
    let q2 = r.quotient_profile.get(2).ok_or("no degree 2")?;
    ensure!(q2.rank == 1 && q2.divisors.is_empty(), "degree-2 quotient {q2:?}");
    for p in &r.per_prime {
        let c = p.certificate.as_ref().ok_or("certificate missing")?;
        ensure!(c.passed() && c.max_degree() == MAX_DEGREE, "p={}: {:?}", p.prime, c.first_failure());
    }
    all_dims(&r, [1, 3, 2, 0])?;
    ensure!(r.is_verified(), "status {:?}", r.status);
    let code = cli_exit("chain3.json")?;
    ensure!(code == 0, "exit {code}");
    Ok(format!("quotient ranks {:?}, dims (1,3,2,0), exit 0", r.quotient_profile.ranks()))
}

fn c6_doubled() -> Outcome {
    let d = two(2);
    let v = primlink::linkdiag::primitive(&d);
    ensure!(v.failing == FailingPrimes::Finite([2].into()), "failing {:?}", v.failing);
    let at3 = verdict(&d, PrimeSelection::Explicit(vec![3]), MAX_DEGREE)?;
    ensure!(at3.status == Status::VerifiedUpToDegree { degree: MAX_DEGREE }, "p=3: {:?}", at3.status);
    let at2 = verdict(&d, PrimeSelection::Explicit(vec![2]), MAX_DEGREE)?;
    let first = at2.reasons().first().ok_or("p=2 unexpectedly verified")?;
    ensure!(first.check == Check::QPrimitivity && first.prime == Some(2), "p=2 first failure: {first}");
    Ok("failing {2}; p=3 verified to degree 6; p=2 fails at q-primitivity".into())
}

fn c7_unlinked() -> Outcome {
    let r = verdict(&two(0), PrimeSelection::Auto, MAX_DEGREE)?;
    ensure!(r.primitivity.failing == FailingPrimes::All, "failing {:?}", r.primitivity.failing);
    let p = r.per_prime.first().ok_or("no primes checked")?;
    let c = p.certificate.as_ref().ok_or("certificate missing")?;
    let f = c.first_failure().ok_or("certificate passed")?;
    ensure!(f.degree == 2 && f.rank == 0 && f.expected_rank == BigUint::one(), "first failure {f:?}");
    ensure!(!r.is_verified(), "verified");
    let code = cli_exit("unlinked.json")?;
    ensure!(code == 1, "exit {code}");
    Ok("failing = all primes; certificate fails at degree 2 (0 vs 1); exit 1".into())
}

fn c8_knot() -> Outcome {
    let r = verdict(&LinkingDiagram::unknot(), PrimeSelection::Auto, MAX_DEGREE)?;
    ensure!(r.relators.is_empty(), "relators {:?}", r.relators);
    ensure!(r.quotient_profile.ranks() == [1, 0, 0, 0, 0, 0], "ranks {:?}", r.quotient_profile.ranks());
    all_dims(&r, [1, 1, 0, 0])?;
    for p in &r.per_prime {
        let c = p.certificate.as_ref().ok_or("certificate missing")?;
        ensure!(c.passed(), "p={}: {:?}", p.prime, c.first_failure());
    }
    ensure!(r.is_verified(), "status {:?}", r.status);
    let code = cli_exit("knot.json")?;
    ensure!(code == 0, "exit {code}");
    Ok("no relators, ranks (1,0,...), dims (1,1,0,0), certificate vacuous".into())
}

fn analyzed_diagrams() -> Vec<(String, LinkingDiagram)> {
    let mut v: Vec<(String, LinkingDiagram)> = sample_diagrams().into_iter().map(|(n, d)| (n.to_owned(), d)).collect();
    v.push(("chain3".into(), chain3()));
    v.push(("doubled".into(), two(2)));
    v
}

fn depth(d: &LinkingDiagram) -> usize {
    if d.components() <= 2 {
        MAX_DEGREE
    } else {
        5
    }
}

fn c9_structure() -> Outcome {
    let mut checked_primes = 0;
    for (name, d) in analyzed_diagrams() {
        let n = d.components();
        let maxk = depth(&d);
        let alg = FreeLieAlgebra::new(n);
        let rel = relators_from_diagram(&alg, &d, n).map_err(|e| e.to_string())?;
        let ideal = ideal_degrees(&alg, &rel, maxk);
        let profile = quotient_profile(&alg, &rel, maxk);
        for k in 1..=maxk {
            let q = profile.get(k).ok_or("missing degree")?;
            if q.is_torsion_free() {
                ensure!(ideal.rank(k) + q.rank == alg.dim(k), "{name} k={k}: rank additivity");
            }
        }
        ensure!(commutator_degrees(&alg, &ideal, maxk).is_contained_in(&ideal), "{name}: [r,r] not in r");
        for k in 2..maxk {
            for v in ideal.basis_elements(&alg, k) {
                for j in 1..=n {
                    let w = alg.bracket(&v, &alg.generator(j).unwrap());
                    ensure!(ideal.contains(&alg, k + 1, &w), "{name}: [r_{k}, x_{j}] not in r");
                }
            }
        }
        let mut primes = resolve_primes(&d, &PrimeSelection::Auto).map_err(|e| e.to_string())?;
        primes.extend((2..=100).filter(|&p| is_prime(p)));
        primes.sort_unstable();
        primes.dedup();
        let pres = PresentationData::from_diagram(&d, n).map_err(|e| e.to_string())?;
        for &p in &primes {
            let j = fox_augmented_jacobian(&pres, p).map_err(|e| e.to_string())?;
            ensure!(j.matrix.is_zero(), "{name} p={p}: Jacobian nonzero");
            let dims = cochain_dims(n, &j).map_err(|e| e.to_string())?;
            ensure!(dims == [1, n, n - 1], "{name} p={p}: dims {dims:?}");
            checked_primes += 1;
        }
        // the tensor-algebra route must see the same ideal
        for o in tensor_route(&d, n, maxk.min(5)) {
            ensure!(o.ideal_rank == ideal.rank(o.degree), "{name} k={}: oracle ideal rank", o.degree);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x9);
    for _ in 0..50 {
        let d = rng.gen_range(1..=5);
        let rels: Vec<(usize, Vec<i64>)> =
            (0..rng.gen_range(0..=d)).map(|_| (rng.gen_range(1..=d), (0..d).map(|_| rng.gen_range(-9..=9)).collect())).collect();
        let pres = PresentationData::commutators(d, &rels).map_err(|e| e.to_string())?;
        for p in (2..=100).filter(|&p| is_prime(p)) {
            let j = fox_augmented_jacobian(&pres, p).map_err(|e| e.to_string())?;
            ensure!(j.matrix.is_zero(), "random presentation p={p}: Jacobian nonzero");
        }
    }
    Ok(format!("{} diagrams, {checked_primes} (diagram, prime) cochain checks, 50 random presentations", analyzed_diagrams().len()))
}

fn c10_dropped() -> Outcome {
    let mut count = 0;
    for (name, d) in sample_diagrams() {
        let n = d.components();
        let alg = FreeLieAlgebra::new(n);
        let mut base = None;
        for dropped in 1..=n {
            let a = GradedAnalysis::compute(&alg, &d, dropped, 5).map_err(|e| e.to_string())?;
            let ranks = a.profile.ranks();
            match &base {
                None => base = Some(ranks),
                Some(b) => ensure!(*b == ranks, "{name}: drop {dropped} gives {ranks:?}, drop 1 gives {b:?}"),
            }
            if a.profile.is_torsion_free() {
                ensure!(a.certificate(Localization::Integral).is_ok(), "{name}: certificate error");
            }
        }
        count += 1;
    }
    Ok(format!("{count} sample diagrams, every dropped index, k <= 5"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("Witt dimensions", c1_witt),
        ("Lie axioms via oracle", c2_lie_axioms),
        ("SNF soundness", c3_snf),
        ("Hopf link end-to-end", c4_hopf),
        ("three-component chain", c5_chain),
        ("d=2, l12=2", c6_doubled),
        ("non-primitive l12=0", c7_unlinked),
        ("knot", c8_knot),
        ("structural identities", c9_structure),
        ("dropped-index independence", c10_dropped),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} [{secs:.2}s]: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} [{secs:.2}s]: {why}", i + 1);
            }
        }
    }
    let total = start.elapsed();
    let within = total <= BUDGET;
    println!(
        "runtime {} {:.2}s (budget {}s)",
        if within { "PASS" } else { "FAIL" },
        total.as_secs_f64(),
        BUDGET.as_secs()
    );
    if failed == 0 && within {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

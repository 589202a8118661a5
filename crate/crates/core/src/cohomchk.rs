//! Mod-p cohomology dimension checks and the aggregated completeness report.
//!
//! The presentation cochain complex `Z/p ← (Z/p)^{#rel} ← (Z/p)^d ← Z/p` only
//! needs augmented Fox derivatives, which reduce to exponent sums.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::{rank_mod_p, IntMatrix, LinalgError};
use crate::freelie::FreeLieAlgebra;
use crate::gradedcert::{CertError, FreenessCertificate, GradedAnalysis, Localization, RankProfile};
use crate::linkdiag::{self, FailingPrimes, LinkDoc, LinkingDiagram, PrimitivityVerdict};
use crate::primes::{is_prime, smallest_primes_avoiding};

pub const REPORT_VERSION: u32 = 1;
pub const DEFAULT_MAX_DEGREE: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomError {
    #[error("{p} is not a prime")]
    NotPrime { p: u64 },
    #[error("generator index {index} outside 1..={generators}")]
    Generator { index: usize, generators: usize },
    #[error("Jacobian has {cols} columns but the presentation has {generators} generators")]
    Columns { cols: usize, generators: usize },
    #[error("no primes requested")]
    NoPrimes,
    #[error("cannot parse prime list {0:?}")]
    PrimeList(String),
    #[error(transparent)]
    Graded(#[from] CertError),
    #[error("unsupported report version {0}")]
    ReportVersion(u32),
    #[error("malformed report JSON: {0}")]
    Json(String),
}

/// A word in the free group, as syllables `x_i^e` with 1-based `i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FreeWord {
    syllables: Vec<(usize, i64)>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn power(generator: usize, exponent: i64) -> Self {
        let mut w = FreeWord::identity();
        w.push(generator, exponent);
        w
    }

    /// Π_j x_j^{e_j} in index order.
    pub fn from_exponents(exponents: &[i64]) -> Self {
        let mut w = FreeWord::identity();
        for (j, &e) in exponents.iter().enumerate() {
            w.push(j + 1, e);
        }
        w
    }

    fn push(&mut self, generator: usize, exponent: i64) {
        if exponent == 0 {
            return;
        }
        if let Some(last) = self.syllables.last_mut() {
            if last.0 == generator {
                match last.1.checked_add(exponent) {
                    Some(0) => {
                        self.syllables.pop();
                        return;
                    }
                    Some(e) => {
                        last.1 = e;
                        return;
                    }
                    None => {}
                }
            }
        }
        self.syllables.push((generator, exponent));
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.syllables
    }

    pub fn inverse(&self) -> Self {
        FreeWord { syllables: self.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect() }
    }

    pub fn concat(&self, other: &FreeWord) -> Self {
        let mut w = self.clone();
        for &(g, e) in &other.syllables {
            w.push(g, e);
        }
        w
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(a: &FreeWord, b: &FreeWord) -> Self {
        a.inverse().concat(&b.inverse()).concat(a).concat(b)
    }

    /// ε(∂w/∂x_j), from ε(∂(uv)) = ε(∂u) + ε(∂v), ε(∂u⁻¹) = −ε(∂u) and
    /// ε(∂x_i/∂x_j) = δ_ij; a syllable x_i^e contributes e·δ_ij.
    pub fn augmented_fox(&self, j: usize) -> BigInt {
        self.syllables.iter().filter(|(g, _)| *g == j).map(|&(_, e)| BigInt::from(e)).sum()
    }
}

/// Generators and relators of a finite presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationData {
    pub generators: usize,
    pub relators: Vec<FreeWord>,
}

impl PresentationData {
    pub fn new(generators: usize, relators: Vec<FreeWord>) -> Result<Self, CohomError> {
        for w in &relators {
            if let Some(&(index, _)) = w.syllables().iter().find(|(g, _)| *g == 0 || *g > generators) {
                return Err(CohomError::Generator { index, generators });
            }
        }
        Ok(PresentationData { generators, relators })
    }

    /// Relators `[x_k, v_k]` for `(k, exponent vector of v_k)` pairs.
    pub fn commutators(generators: usize, relators: &[(usize, Vec<i64>)]) -> Result<Self, CohomError> {
        let words = relators
            .iter()
            .map(|(k, exps)| FreeWord::commutator(&FreeWord::power(*k, 1), &FreeWord::from_exponents(exps)))
            .collect();
        Self::new(generators, words)
    }

    /// `[x_k, v_k]` for every component `k ≠ dropped`, where `v_k` has the
    /// k-th row of linking numbers as exponents.
    pub fn from_diagram(diagram: &LinkingDiagram, dropped: usize) -> Result<Self, CohomError> {
        let d = diagram.components();
        if dropped == 0 || dropped > d {
            return Err(CertError::DroppedOutOfRange { dropped, components: d }.into());
        }
        let rels: Vec<(usize, Vec<i64>)> =
            (1..=d).filter(|&k| k != dropped).map(|k| (k, diagram.matrix()[k - 1].clone())).collect();
        Self::commutators(d, &rels)
    }
}

/// Matrix over Z/p with entries stored as residues in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianModP {
    pub prime: u64,
    pub matrix: IntMatrix,
}

/// Augmented Fox Jacobian (relators × generators) reduced mod `p`.
pub fn fox_augmented_jacobian(presentation: &PresentationData, p: u64) -> Result<JacobianModP, CohomError> {
    if !is_prime(p) {
        return Err(CohomError::NotPrime { p });
    }
    let modulus = BigInt::from(p);
    let rows: Vec<Vec<BigInt>> = presentation
        .relators
        .iter()
        .map(|w| {
            (1..=presentation.generators)
                .map(|j| {
                    let r = w.augmented_fox(j) % &modulus;
                    if r < BigInt::from(0) { r + &modulus } else { r }
                })
                .collect()
        })
        .collect();
    let matrix = IntMatrix::from_rows(presentation.generators, &rows).expect("rows have one entry per generator");
    Ok(JacobianModP { prime: p, matrix })
}

/// (H⁰, H¹, H²) of the presentation cochain complex over Z/p.
///
/// The first coboundary vanishes because augmentation kills 1 − x_j, so
/// H⁰ = 1, H¹ = d − rank J and H² = #relators − rank J.
pub fn cochain_dims(generators: usize, jacobian: &JacobianModP) -> Result<[usize; 3], CohomError> {
    let m = &jacobian.matrix;
    if m.cols() != generators {
        return Err(CohomError::Columns { cols: m.cols(), generators });
    }
    let rank = rank_mod_p(m, jacobian.prime).map_err(|e| match e {
        LinalgError::NotPrime { p } => CohomError::NotPrime { p },
        other => unreachable!("{other}"),
    })?;
    Ok([1, generators - rank, m.rows() - rank])
}

/// dim H^n(G, Z/p) for n = 0..=3 of a primitive link group with `d`
/// components: (1, d, d − 1, 0).
pub fn expected_cohomology(d: usize) -> [usize; 4] {
    assert!(d >= 1, "a link has at least one component");
    [1, d, d - 1, 0]
}

/// Which primes to test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeSelection {
    /// Primes dividing some nonzero label, plus the three smallest primes
    /// dividing none.
    Auto,
    Explicit(Vec<u64>),
}

impl FromStr for PrimeSelection {
    type Err = CohomError;

    fn from_str(s: &str) -> Result<Self, CohomError> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("auto") {
            return Ok(PrimeSelection::Auto);
        }
        let primes = s
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| CohomError::PrimeList(s.to_owned())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PrimeSelection::Explicit(primes))
    }
}

impl fmt::Display for PrimeSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeSelection::Auto => write!(f, "auto"),
            PrimeSelection::Explicit(v) => {
                let s: Vec<String> = v.iter().map(u64::to_string).collect();
                write!(f, "{}", s.join(","))
            }
        }
    }
}

/// Sorted, deduplicated primes for `selection`.
pub fn resolve_primes(diagram: &LinkingDiagram, selection: &PrimeSelection) -> Result<Vec<u64>, CohomError> {
    match selection {
        PrimeSelection::Auto => {
            let divisors = linkdiag::label_primes(diagram);
            let mut all: BTreeSet<u64> = smallest_primes_avoiding(&divisors, 3).into_iter().collect();
            all.extend(divisors);
            Ok(all.into_iter().collect())
        }
        PrimeSelection::Explicit(v) => {
            if v.is_empty() {
                return Err(CohomError::NoPrimes);
            }
            if let Some(&p) = v.iter().find(|&&p| !is_prime(p)) {
                return Err(CohomError::NotPrime { p });
            }
            Ok(v.iter().copied().collect::<BTreeSet<_>>().into_iter().collect())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerdictOptions {
    pub primes: PrimeSelection,
    pub max_degree: usize,
    /// 1-based component whose relator is omitted; the last one by default.
    pub dropped: Option<usize>,
}

impl Default for VerdictOptions {
    fn default() -> Self {
        VerdictOptions { primes: PrimeSelection::Auto, max_degree: DEFAULT_MAX_DEGREE, dropped: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Primitivity,
    QPrimitivity,
    Torsion,
    Certificate,
    Cohomology,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FailureReason {
    pub check: Check,
    pub prime: Option<u64>,
    pub degree: Option<usize>,
    pub detail: String,
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let check = serde_json::to_value(self.check).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
        write!(f, "{check}")?;
        match (self.prime, self.degree) {
            (Some(p), Some(k)) => write!(f, " (p = {p}, degree {k})")?,
            (Some(p), None) => write!(f, " (p = {p})")?,
            (None, Some(k)) => write!(f, " (degree {k})")?,
            (None, None) => {}
        }
        write!(f, ": {}", self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "state", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Status {
    VerifiedUpToDegree { degree: usize },
    Failed { reasons: Vec<FailureReason> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CohomologyCheck {
    pub expected: [usize; 4],
    /// H⁰, H¹, H² of the presentation complex; H³ = 0 since it has length 2.
    pub computed: [usize; 4],
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrimeReport {
    pub prime: u64,
    pub q_primitive: bool,
    /// First degree with p-torsion in L/r, if any.
    pub torsion_degree: Option<usize>,
    /// Absent when p-torsion in L/r blocks the enveloping-algebra count.
    pub certificate: Option<FreenessCertificate>,
    pub cohomology: CohomologyCheck,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelatorDoc {
    pub component: usize,
    pub element: String,
}

/// Evidence bundle for one diagram. Serialized as the versioned JSON report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompletenessReport {
    pub report_version: u32,
    pub diagram: LinkDoc,
    pub dropped: usize,
    pub max_degree: usize,
    pub primitivity: PrimitivityVerdict,
    pub primes: Vec<u64>,
    pub relators: Vec<RelatorDoc>,
    /// dim L_k for k = 1..=max_degree.
    pub lie_dimensions: Vec<usize>,
    pub quotient_profile: RankProfile,
    pub per_prime: Vec<PrimeReport>,
    pub status: Status,
}

impl CompletenessReport {
    pub fn is_verified(&self) -> bool {
        matches!(self.status, Status::VerifiedUpToDegree { .. })
    }

    pub fn reasons(&self) -> &[FailureReason] {
        match &self.status {
            Status::Failed { reasons } => reasons,
            Status::VerifiedUpToDegree { .. } => &[],
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }

    pub fn from_json_slice(data: &[u8]) -> Result<Self, CohomError> {
        let report: CompletenessReport =
            serde_json::from_slice(data).map_err(|e| CohomError::Json(e.to_string()))?;
        if report.report_version != REPORT_VERSION {
            return Err(CohomError::ReportVersion(report.report_version));
        }
        Ok(report)
    }
}

/// Runs every check on `diagram` with a fresh algebra.
pub fn completeness_verdict(
    diagram: &LinkingDiagram,
    primes: PrimeSelection,
    max_degree: usize,
) -> Result<CompletenessReport, CohomError> {
    let alg = FreeLieAlgebra::new(diagram.components());
    completeness_verdict_with(&alg, diagram, &VerdictOptions { primes, max_degree, dropped: None })
}

/// Runs primitivity, the graded quotient and certificate, and the cochain
/// dimension count; `alg` must be the free Lie ring on `diagram.components()`
/// generators and may carry preloaded structure constants.
pub fn completeness_verdict_with(
    alg: &FreeLieAlgebra,
    diagram: &LinkingDiagram,
    options: &VerdictOptions,
) -> Result<CompletenessReport, CohomError> {
    let d = diagram.components();
    let maxk = options.max_degree;
    let dropped = options.dropped.unwrap_or(d);
    let primes = resolve_primes(diagram, &options.primes)?;
    let analysis = GradedAnalysis::compute(alg, diagram, dropped, maxk)?;
    let presentation = PresentationData::from_diagram(diagram, dropped)?;
    let primitivity = linkdiag::primitive(diagram);
    let expected = expected_cohomology(d);

    let mut reasons = Vec::new();
    if options.primes == PrimeSelection::Auto && !primitivity.primitive {
        reasons.push(FailureReason {
            check: Check::Primitivity,
            prime: None,
            degree: None,
            detail: format!("not q-primitive for {}", primitivity.failing),
        });
    }

    let mut per_prime = Vec::with_capacity(primes.len());
    for &p in &primes {
        let q_primitive = match &primitivity.failing {
            FailingPrimes::All => false,
            FailingPrimes::Finite(s) => !s.contains(&p),
        };
        if !q_primitive {
            reasons.push(FailureReason {
                check: Check::QPrimitivity,
                prime: Some(p),
                degree: None,
                detail: format!("edges with labels prime to {p} do not span the diagram"),
            });
        }

        let torsion_degree = analysis.profile.localized(p).first_torsion();
        let certificate = match analysis.certificate(Localization::AtPrime(p)) {
            Ok(c) => Some(c),
            Err(CertError::Torsion { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        if let Some(k) = torsion_degree {
            reasons.push(FailureReason {
                check: Check::Torsion,
                prime: Some(p),
                degree: Some(k),
                detail: format!("(L/r)_{k} has {p}-torsion"),
            });
        }
        if let Some(f) = certificate.as_ref().and_then(FreenessCertificate::first_failure) {
            let detail = if f.divisors.is_empty() {
                format!("rank of (r/[r,r])_{} is {}, expected {}", f.degree, f.rank, f.expected_rank)
            } else {
                format!("(r/[r,r])_{} has {p}-torsion", f.degree)
            };
            reasons.push(FailureReason { check: Check::Certificate, prime: Some(p), degree: Some(f.degree), detail });
        }

        let jacobian = fox_augmented_jacobian(&presentation, p)?;
        let [h0, h1, h2] = cochain_dims(d, &jacobian)?;
        let computed = [h0, h1, h2, 0];
        let matches = computed == expected;
        if !matches {
            reasons.push(FailureReason {
                check: Check::Cohomology,
                prime: Some(p),
                degree: None,
                detail: format!("cochain dimensions {computed:?} differ from {expected:?}"),
            });
        }
        per_prime.push(PrimeReport {
            prime: p,
            q_primitive,
            torsion_degree,
            certificate,
            cohomology: CohomologyCheck { expected, computed, matches },
        });
    }

    let status = if reasons.is_empty() {
        Status::VerifiedUpToDegree { degree: maxk }
    } else {
        Status::Failed { reasons }
    };
    Ok(CompletenessReport {
        report_version: REPORT_VERSION,
        diagram: diagram.to_doc(),
        dropped,
        max_degree: maxk,
        primitivity,
        primes,
        relators: analysis
            .relators
            .relators
            .iter()
            .map(|r| RelatorDoc { component: r.component, element: r.element.to_string() })
            .collect(),
        lie_dimensions: (1..=maxk).map(|k| alg.dim(k)).collect(),
        quotient_profile: analysis.profile,
        per_prime,
        status,
    })
}

//! Graded ideal of the relators, the quotient L/r, its enveloping algebra's
//! dimension series, and the degree-wise rank certificate for r/[r,r].
//!
//! Everything is computed one degree at a time on integer lattices inside
//! the Lyndon coordinate space of each Lₖ, and every verdict is bounded by
//! the largest degree computed.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_int;
use crate::exactla::{express_in_basis, hermite_row_basis, lattice_contains, smith_normal_form, IntMatrix};
use crate::freelie::{FreeLieAlgebra, LieElement};
use crate::linkdiag::LinkingDiagram;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertError {
    #[error("dropped component {dropped} is outside 1..={components}")]
    DroppedOutOfRange { dropped: usize, components: usize },
    #[error("maximum degree must be at least {min}, got {got}")]
    MaxDegree { min: usize, got: usize },
    #[error("quotient has torsion in degree {degree}; the enveloping-algebra count needs a free module")]
    Torsion { degree: usize },
    #[error("commutator lattice escapes the ideal in degree {degree}")]
    NotContained { degree: usize },
}

/// One relator: the degree-2 image attached to a link component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relator {
    /// 1-based component index.
    pub component: usize,
    pub element: LieElement,
}

/// The relators W_k for every component k other than the dropped one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelatorSet {
    pub components: usize,
    pub dropped: usize,
    pub relators: Vec<Relator>,
}

impl RelatorSet {
    pub fn elements(&self) -> impl Iterator<Item = &LieElement> {
        self.relators.iter().map(|r| &r.element)
    }

    pub fn len(&self) -> usize {
        self.relators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relators.is_empty()
    }
}

/// W_k = Σ_{j≠k} ℓ_{kj}·[x_k, x_j] for every k ≠ `dropped` (1-based).
pub fn relators_from_diagram(
    alg: &FreeLieAlgebra,
    diagram: &LinkingDiagram,
    dropped: usize,
) -> Result<RelatorSet, CertError> {
    let d = diagram.components();
    if dropped == 0 || dropped > d {
        return Err(CertError::DroppedOutOfRange { dropped, components: d });
    }
    assert_eq!(alg.generators(), d, "algebra rank must match the diagram");
    let gens: Vec<LieElement> = (1..=d).map(|i| alg.generator(i).expect("in range")).collect();
    let relators = (1..=d)
        .filter(|&k| k != dropped)
        .map(|k| {
            let mut w = LieElement::zero();
            for j in (1..=d).filter(|&j| j != k) {
                let l = diagram.label(k - 1, j - 1);
                if l != 0 {
                    w.add_scaled(&alg.bracket(&gens[k - 1], &gens[j - 1]), &BigInt::from(l));
                }
            }
            Relator { component: k, element: w }
        })
        .collect();
    Ok(RelatorSet { components: d, dropped, relators })
}

/// Per-degree lattices inside Lₖ, each stored as its Hermite basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubmodule {
    slices: BTreeMap<usize, IntMatrix>,
}

impl GradedSubmodule {
    fn new() -> Self {
        GradedSubmodule { slices: BTreeMap::new() }
    }

    fn insert(&mut self, k: usize, generators: IntMatrix) {
        self.slices.insert(k, hermite_row_basis(&generators));
    }

    /// Hermite basis of degree `k`, if that degree was computed.
    pub fn slice(&self, k: usize) -> Option<&IntMatrix> {
        self.slices.get(&k)
    }

    /// Rank of degree `k`; zero for degrees never computed.
    pub fn rank(&self, k: usize) -> usize {
        self.slices.get(&k).map_or(0, IntMatrix::rows)
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.slices.keys().copied()
    }

    pub fn max_degree(&self) -> usize {
        self.slices.keys().next_back().copied().unwrap_or(0)
    }

    /// The basis rows of degree `k` as Lie elements.
    pub fn basis_elements(&self, alg: &FreeLieAlgebra, k: usize) -> Vec<LieElement> {
        self.slices
            .get(&k)
            .map(|m| (0..m.rows()).map(|i| alg.from_coordinates(k, m.row(i))).collect())
            .unwrap_or_default()
    }

    /// Whether the degree-`k` part of `a` lies in the lattice of degree `k`.
    pub fn contains(&self, alg: &FreeLieAlgebra, k: usize, a: &LieElement) -> bool {
        let Some(coords) = alg.coordinates(a, k) else { return false };
        match self.slices.get(&k) {
            Some(basis) => express_in_basis(basis, &coords).is_some(),
            None => coords.iter().all(Zero::is_zero),
        }
    }

    /// Lattice inclusion in every degree of `self`.
    pub fn is_contained_in(&self, other: &GradedSubmodule) -> bool {
        self.slices.iter().all(|(k, m)| match other.slices.get(k) {
            Some(big) => lattice_contains(big, m),
            None => m.rows() == 0,
        })
    }
}

fn coordinate_matrix(alg: &FreeLieAlgebra, k: usize, elements: &[LieElement]) -> IntMatrix {
    let cols = alg.dim(k);
    let rows: Vec<Vec<BigInt>> = elements
        .iter()
        .map(|e| alg.coordinates(e, k).expect("elements live in the algebra"))
        .collect();
    IntMatrix::from_rows(cols, &rows).expect("coordinate rows have the basis width")
}

/// The graded ideal r generated by the relators, degrees 1 through `maxk`.
///
/// r₁ = 0, r₂ is spanned by the relators, and r_{k+1} by the brackets of a
/// basis of r_k with the generators (L is generated in degree 1).
pub fn ideal_degrees(alg: &FreeLieAlgebra, relators: &RelatorSet, maxk: usize) -> GradedSubmodule {
    let mut ideal = GradedSubmodule::new();
    if maxk >= 1 {
        ideal.insert(1, IntMatrix::zeros(0, alg.dim(1)));
    }
    if maxk < 2 {
        return ideal;
    }
    let elements: Vec<LieElement> = relators.elements().cloned().collect();
    ideal.insert(2, coordinate_matrix(alg, 2, &elements));
    let gens: Vec<LieElement> = (1..=alg.generators()).map(|i| alg.generator(i).expect("in range")).collect();
    for k in 2..maxk {
        let spanning: Vec<LieElement> = ideal
            .basis_elements(alg, k)
            .iter()
            .flat_map(|v| gens.iter().map(move |x| (v, x)))
            .map(|(v, x)| alg.bracket(v, x))
            .collect();
        ideal.insert(k + 1, coordinate_matrix(alg, k + 1, &spanning));
    }
    ideal
}

/// [r, r] in degrees 1 through `maxk`: spanned in degree k by brackets of
/// basis elements of r_i and r_{k−i}, 2 ≤ i ≤ k−2.
pub fn commutator_degrees(alg: &FreeLieAlgebra, ideal: &GradedSubmodule, maxk: usize) -> GradedSubmodule {
    let mut out = GradedSubmodule::new();
    let bases: BTreeMap<usize, Vec<LieElement>> =
        (2..=maxk).map(|k| (k, ideal.basis_elements(alg, k))).collect();
    for k in 1..=maxk {
        let mut spanning = Vec::new();
        // [b, a] = −[a, b], so i ≤ k − i covers every pair.
        for i in (2..=k / 2).filter(|&i| k - i >= 2) {
            let (left, right) = (&bases[&i], &bases[&(k - i)]);
            for (ia, a) in left.iter().enumerate() {
                let start = if i == k - i { ia + 1 } else { 0 };
                for b in &right[start..] {
                    spanning.push(alg.bracket(a, b));
                }
            }
        }
        out.insert(k, coordinate_matrix(alg, k, &spanning));
    }
    out
}

/// Rank and nontrivial elementary divisors of one graded piece.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeRank {
    pub degree: usize,
    pub rank: usize,
    #[serde(with = "exact_int::vec")]
    pub divisors: Vec<BigInt>,
}

impl DegreeRank {
    pub fn is_torsion_free(&self) -> bool {
        self.divisors.is_empty()
    }
}

/// Degree → (free rank, elementary divisors other than 0 and 1).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RankProfile {
    degrees: Vec<DegreeRank>,
}

impl RankProfile {
    pub fn from_ranks(ranks: &[usize]) -> Self {
        RankProfile {
            degrees: ranks
                .iter()
                .enumerate()
                .map(|(i, &rank)| DegreeRank { degree: i + 1, rank, divisors: vec![] })
                .collect(),
        }
    }

    pub fn from_degrees(mut degrees: Vec<DegreeRank>) -> Self {
        degrees.sort_by_key(|d| d.degree);
        RankProfile { degrees }
    }

    pub fn get(&self, k: usize) -> Option<&DegreeRank> {
        self.degrees.iter().find(|d| d.degree == k)
    }

    pub fn degrees(&self) -> &[DegreeRank] {
        &self.degrees
    }

    /// Ranks in degree order.
    pub fn ranks(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.rank).collect()
    }

    pub fn first_torsion(&self) -> Option<usize> {
        self.degrees.iter().find(|d| !d.is_torsion_free()).map(|d| d.degree)
    }

    pub fn is_torsion_free(&self) -> bool {
        self.first_torsion().is_none()
    }

    /// The profile after tensoring with the p-adic integers: divisors prime
    /// to `p` become units and are dropped.
    pub fn localized(&self, p: u64) -> RankProfile {
        let p = BigInt::from(p);
        RankProfile {
            degrees: self
                .degrees
                .iter()
                .map(|d| DegreeRank {
                    degree: d.degree,
                    rank: d.rank,
                    divisors: d.divisors.iter().filter(|x| x.is_multiple_of(&p)).cloned().collect(),
                })
                .collect(),
        }
    }
}

fn torsion_of(lattice_basis: &IntMatrix) -> Vec<BigInt> {
    smith_normal_form(lattice_basis).torsion()
}

/// Rank and torsion of (L/r)_k for k = 1..=maxk, given the ideal.
pub fn profile_of(alg: &FreeLieAlgebra, ideal: &GradedSubmodule, maxk: usize) -> RankProfile {
    let degrees = (1..=maxk)
        .map(|k| {
            let (rank, divisors) = match ideal.slice(k) {
                Some(h) => (alg.dim(k) - h.rows(), torsion_of(h)),
                None => (alg.dim(k), vec![]),
            };
            DegreeRank { degree: k, rank, divisors }
        })
        .collect();
    RankProfile { degrees }
}

/// Rank and torsion of (L/r)_k for k = 1..=maxk.
pub fn quotient_profile(alg: &FreeLieAlgebra, relators: &RelatorSet, maxk: usize) -> RankProfile {
    let ideal = ideal_degrees(alg, relators, maxk);
    profile_of(alg, &ideal, maxk)
}

/// dim U_k for k = 0..=maxk, the coefficients of Π_m (1 − t^m)^{−a_m} with
/// a_m the ranks of `profile`. Degrees absent from the profile count as 0.
pub fn enveloping_dims(profile: &RankProfile, maxk: usize) -> Result<Vec<BigUint>, CertError> {
    if let Some(degree) = profile.first_torsion().filter(|&k| k <= maxk) {
        return Err(CertError::Torsion { degree });
    }
    let mut series = vec![BigUint::zero(); maxk + 1];
    series[0] = BigUint::one();
    for m in 1..=maxk {
        let a = profile.get(m).map_or(0, |d| d.rank);
        // multiply by 1/(1 − t^m), a times
        for _ in 0..a {
            for k in m..=maxk {
                let prev = series[k - m].clone();
                series[k] += prev;
            }
        }
    }
    Ok(series)
}

/// Whether torsion is judged over the integers or after localizing at a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Localization {
    Integral,
    AtPrime(u64),
}

/// Outcome in a single degree k ≥ 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeVerdict {
    pub degree: usize,
    /// Rank of (r/[r,r])_k.
    pub rank: usize,
    /// (d − 1)·dim U_{k−2}.
    #[serde(with = "exact_int::biguint")]
    pub expected_rank: BigUint,
    #[serde(with = "exact_int::vec")]
    pub divisors: Vec<BigInt>,
    pub passed: bool,
}

/// Degree-wise evidence that r/[r,r] is a free U-module on the relators.
///
/// The map from the free module on the d − 1 relators onto r/[r,r] is onto
/// by construction, so matching ranks together with torsion-freeness in a
/// degree certify that the map is an isomorphism in that degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FreenessCertificate {
    pub generators: usize,
    pub localization: Localization,
    pub degrees: Vec<DegreeVerdict>,
}

impl FreenessCertificate {
    pub fn passed(&self) -> bool {
        self.degrees.iter().all(|d| d.passed)
    }

    pub fn first_failure(&self) -> Option<&DegreeVerdict> {
        self.degrees.iter().find(|d| !d.passed)
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.last().map_or(0, |d| d.degree)
    }
}

/// Relators, ideal, commutator ideal, and quotient profile of one diagram,
/// computed once and shared by every prime checked.
#[derive(Clone, Debug)]
pub struct GradedAnalysis {
    pub relators: RelatorSet,
    pub ideal: GradedSubmodule,
    pub commutators: GradedSubmodule,
    pub profile: RankProfile,
    pub max_degree: usize,
}

impl GradedAnalysis {
    pub fn compute(
        alg: &FreeLieAlgebra,
        diagram: &LinkingDiagram,
        dropped: usize,
        maxk: usize,
    ) -> Result<Self, CertError> {
        if maxk < 2 {
            return Err(CertError::MaxDegree { min: 2, got: maxk });
        }
        let relators = relators_from_diagram(alg, diagram, dropped)?;
        let ideal = ideal_degrees(alg, &relators, maxk);
        let commutators = commutator_degrees(alg, &ideal, maxk);
        let profile = profile_of(alg, &ideal, maxk);
        Ok(GradedAnalysis { relators, ideal, commutators, profile, max_degree: maxk })
    }

    /// Per-degree freeness verdicts for k = 2..=maxk.
    pub fn certificate(&self, localization: Localization) -> Result<FreenessCertificate, CertError> {
        let maxk = self.max_degree;
        let profile = match localization {
            Localization::Integral => self.profile.clone(),
            Localization::AtPrime(p) => self.profile.localized(p),
        };
        let u_dims = enveloping_dims(&profile, maxk - 2)?;
        let generators = self.relators.len();
        let keep = |x: &BigInt| match localization {
            Localization::Integral => true,
            Localization::AtPrime(p) => x.is_multiple_of(&BigInt::from(p)),
        };
        let mut degrees = Vec::with_capacity(maxk - 1);
        for k in 2..=maxk {
            let ideal_basis = self.ideal.slice(k).expect("computed through maxk");
            let comm_basis = self.commutators.slice(k).expect("computed through maxk");
            let rows = (0..comm_basis.rows())
                .map(|i| express_in_basis(ideal_basis, comm_basis.row(i)))
                .collect::<Option<Vec<_>>>()
                .ok_or(CertError::NotContained { degree: k })?;
            let inclusion = IntMatrix::from_rows(ideal_basis.rows(), &rows).expect("coordinates have ideal rank");
            let divisors: Vec<BigInt> = smith_normal_form(&inclusion).torsion().into_iter().filter(keep).collect();
            let rank = ideal_basis.rows() - comm_basis.rows();
            let expected_rank = BigUint::from(generators) * &u_dims[k - 2];
            let passed = divisors.is_empty() && BigUint::from(rank) == expected_rank;
            degrees.push(DegreeVerdict { degree: k, rank, expected_rank, divisors, passed });
        }
        Ok(FreenessCertificate { generators, localization, degrees })
    }
}

/// Integral freeness certificate for `diagram` through degree `maxk`.
pub fn freeness_certificate(
    diagram: &LinkingDiagram,
    dropped: usize,
    maxk: usize,
) -> Result<FreenessCertificate, CertError> {
    let alg = FreeLieAlgebra::new(diagram.components());
    GradedAnalysis::compute(&alg, diagram, dropped, maxk)?.certificate(Localization::Integral)
}

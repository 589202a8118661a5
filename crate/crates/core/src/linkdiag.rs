//! Linking diagrams and their primitivity.
//!
//! A diagram on `d` components is the complete graph whose edge `{i, j}`
//! carries the linking number ℓᵢⱼ. It is q-primitive when the edges with
//! ℓᵢⱼ ≢ 0 (mod q) connect all vertices, and primitive when that holds for
//! every prime q.

use std::collections::BTreeSet;
use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::primes::{is_prime, prime_divisors};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("a link needs at least one component")]
    NoComponents,
    #[error("\"components\" is {declared} but the linking matrix has {rows} rows")]
    ComponentCount { declared: usize, rows: usize },
    #[error("linking matrix is not square: row {row} has {len} entries, expected {d}")]
    NotSquare { row: usize, len: usize, d: usize },
    #[error("linking matrix must have zero diagonal: entry ({i},{i}) is {value}", i = .index + 1)]
    NonzeroDiagonal { index: usize, value: i64 },
    #[error("linking matrix must be symmetric: entry ({},{}) is {a} but ({},{}) is {b}", .i + 1, .j + 1, .j + 1, .i + 1)]
    Asymmetric { i: usize, j: usize, a: i64, b: i64 },
    #[error("{q} is not a prime")]
    NotPrime { q: u64 },
    #[error("malformed link JSON: {0}")]
    Json(String),
}

/// Symmetric matrix of linking numbers with zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinkingDiagram {
    linking: Vec<Vec<i64>>,
}

/// On-disk shape: `{"components": d, "linking": [[...]]}`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct LinkDoc {
    pub components: usize,
    pub linking: Vec<Vec<i64>>,
}

impl LinkingDiagram {
    pub fn new(linking: Vec<Vec<i64>>) -> Result<Self, DiagramError> {
        let d = linking.len();
        if d == 0 {
            return Err(DiagramError::NoComponents);
        }
        for (row, r) in linking.iter().enumerate() {
            if r.len() != d {
                return Err(DiagramError::NotSquare { row: row + 1, len: r.len(), d });
            }
        }
        for (i, r) in linking.iter().enumerate() {
            if r[i] != 0 {
                return Err(DiagramError::NonzeroDiagonal { index: i, value: r[i] });
            }
        }
        for (i, row) in linking.iter().enumerate() {
            for (j, &a) in row.iter().enumerate().skip(i + 1) {
                let b = linking[j][i];
                if a != b {
                    return Err(DiagramError::Asymmetric { i, j, a, b });
                }
            }
        }
        Ok(LinkingDiagram { linking })
    }

    /// Builds a diagram from its upper-triangular labels `(i, j, ℓ)`, 1-based.
    pub fn from_labels(d: usize, labels: &[(usize, usize, i64)]) -> Result<Self, DiagramError> {
        let mut m = vec![vec![0; d]; d];
        for &(i, j, l) in labels {
            m[i - 1][j - 1] = l;
            m[j - 1][i - 1] = l;
        }
        Self::new(m)
    }

    /// The Hopf link: two components linking once.
    pub fn hopf() -> Self {
        Self::from_labels(2, &[(1, 2, 1)]).unwrap()
    }

    pub fn unknot() -> Self {
        Self::new(vec![vec![0]]).unwrap()
    }

    pub fn components(&self) -> usize {
        self.linking.len()
    }

    /// ℓᵢⱼ with 0-based indices.
    pub fn label(&self, i: usize, j: usize) -> i64 {
        self.linking[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.linking
    }

    /// Edges `(i, j)` with `i < j`, 0-based, together with their labels.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        let d = self.components();
        (0..d).flat_map(move |i| (i + 1..d).map(move |j| (i, j, self.linking[i][j])))
    }

    pub fn to_doc(&self) -> LinkDoc {
        LinkDoc { components: self.components(), linking: self.linking.clone() }
    }

    pub fn from_json_slice(data: &[u8]) -> Result<Self, DiagramError> {
        let doc: LinkDoc = serde_json::from_slice(data).map_err(|e| DiagramError::Json(e.to_string()))?;
        Self::try_from(doc)
    }

    fn connected_by(&self, keep: impl Fn(i64) -> bool) -> bool {
        let d = self.components();
        let mut uf = UnionFind::<usize>::new(d);
        let mut joined = 1;
        for (i, j, l) in self.edges() {
            if keep(l) && uf.union(i, j) {
                joined += 1;
            }
        }
        joined == d
    }
}

impl TryFrom<LinkDoc> for LinkingDiagram {
    type Error = DiagramError;

    fn try_from(doc: LinkDoc) -> Result<Self, DiagramError> {
        if doc.components != doc.linking.len() {
            return Err(DiagramError::ComponentCount { declared: doc.components, rows: doc.linking.len() });
        }
        Self::new(doc.linking)
    }
}

/// Primes at which a diagram fails to be q-primitive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FailingPrimes {
    /// Every prime fails; serialized as the string `"all"`.
    #[serde(with = "all_marker")]
    All,
    Finite(BTreeSet<u64>),
}

mod all_marker {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str("all")
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(), D::Error> {
        let s = String::deserialize(d)?;
        if s == "all" {
            Ok(())
        } else {
            Err(serde::de::Error::custom("expected \"all\""))
        }
    }
}

impl FailingPrimes {
    pub fn is_empty(&self) -> bool {
        matches!(self, FailingPrimes::Finite(s) if s.is_empty())
    }

    pub fn contains(&self, q: u64) -> bool {
        match self {
            FailingPrimes::All => true,
            FailingPrimes::Finite(s) => s.contains(&q),
        }
    }
}

impl fmt::Display for FailingPrimes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailingPrimes::All => write!(f, "all primes"),
            FailingPrimes::Finite(s) if s.is_empty() => write!(f, "none"),
            FailingPrimes::Finite(s) => {
                let v: Vec<String> = s.iter().map(u64::to_string).collect();
                write!(f, "{{{}}}", v.join(", "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitivityVerdict {
    pub primitive: bool,
    pub failing: FailingPrimes,
}

/// Whether the edges with labels not divisible by `q` span the diagram.
pub fn q_primitive(diagram: &LinkingDiagram, q: u64) -> Result<bool, DiagramError> {
    if !is_prime(q) {
        return Err(DiagramError::NotPrime { q });
    }
    Ok(diagram.connected_by(|l| l.unsigned_abs() % q != 0))
}

/// Exact set of primes at which the diagram is not q-primitive.
///
/// If the nonzero labels already fail to connect the diagram, every prime
/// fails. Otherwise a prime not dividing any label leaves the same connected
/// subgraph, so only divisors of the labels need testing.
pub fn primitive(diagram: &LinkingDiagram) -> PrimitivityVerdict {
    if !diagram.connected_by(|l| l != 0) {
        return PrimitivityVerdict { primitive: false, failing: FailingPrimes::All };
    }
    let failing: BTreeSet<u64> = label_primes(diagram)
        .into_iter()
        .filter(|&q| !q_primitive(diagram, q).expect("candidates are prime"))
        .collect();
    PrimitivityVerdict { primitive: failing.is_empty(), failing: FailingPrimes::Finite(failing) }
}

/// Primes dividing at least one nonzero label.
pub fn label_primes(diagram: &LinkingDiagram) -> BTreeSet<u64> {
    diagram.edges().flat_map(|(_, _, l)| prime_divisors(l.unsigned_abs())).collect()
}

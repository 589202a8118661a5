//! Exact algebra for primitive link groups: linking-diagram primitivity,
//! the graded Lie ring of a link group's lower central series up to a fixed
//! degree, a rank certificate for the relation module, and mod-p cohomology
//! dimension counts.

pub mod cache;
pub mod cohomchk;
pub mod exact_int;
pub mod exactla;
pub mod freelie;
pub mod gradedcert;
pub mod linkdiag;
pub mod primes;

pub use cohomchk::{completeness_verdict, CompletenessReport, PrimeSelection};
pub use exactla::IntMatrix;
pub use freelie::{FreeLieAlgebra, LieElement, LyndonWord};
pub use linkdiag::{LinkingDiagram, PrimitivityVerdict};

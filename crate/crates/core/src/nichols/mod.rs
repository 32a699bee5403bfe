//! The relation-finding pipeline: coproduct components, antipode, the
//! Dynkin map and its convolution identities, theta-fixed and level
//! classification, relation construction with primitivity certification,
//! skew-derivations, and graded dimensions of the Nichols algebra.

mod hopf;
mod level;

pub use hopf::{
    antipode, antipode_vector, convolution_check_ns, convolution_check_dynkin_id,
    coproduct_component, derivation, dynkin_apply, is_primitive, is_primitive_graded, Side,
    SplitTerms,
};
pub use level::{
    find_relations, level_classify, nichols_dimensions, partial_twist_u, relation_sweep,
    serre_element, theta_fixed_classes, ClassOutcome, Relation, RelationCertificates,
    DEFAULT_SERRE_BOUND,
};

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::exactla::LinAlgError;
use crate::tensorspace::{TensorError, TensorVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NicholsError {
    #[error("class {multidegree:?} is not of full level: {verdict}")]
    NotLevelN {
        multidegree: Vec<usize>,
        verdict: LevelVerdict,
    },
    #[error("q_{i}{j} q_{j}{i} is no power q_{i}{i}^c with -{bound} <= c <= 0")]
    NoSerreExponent { i: u8, j: u8, bound: i64 },
    #[error("certification failed: {0}")]
    CertificationFailed(String),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// Classification of an anagram class with respect to the full twist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LevelVerdict {
    /// Fixed by the full twist and no letter subset of size `2..n-1` has
    /// twist scalar one: every kernel element here has full level.
    LevelN,
    /// Fixed by the full twist, but some proper subset violates the level
    /// condition.
    ThetaFixedOnly,
    /// Not fixed by the full twist.
    NotThetaFixed,
}

impl fmt::Display for LevelVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LevelVerdict::LevelN => "LEVEL_N",
            LevelVerdict::ThetaFixedOnly => "THETA_FIXED_ONLY",
            LevelVerdict::NotThetaFixed => "NOT_THETA_FIXED",
        };
        write!(f, "{s}")
    }
}

/// Outcome of classifying one anagram class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelReport {
    pub multidegree: Vec<usize>,
    pub theta_fixed: bool,
    /// Letter multisets of size `2..n-1` (drawn from the multidegree) whose
    /// twist scalar is one, sorted; each is a witness against full level.
    pub violating_subsets: Vec<(usize, Vec<u8>)>,
    pub verdict: LevelVerdict,
}

/// Element of the graded tensor algebra: finitely many homogeneous
/// components indexed by total degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedElement {
    components: BTreeMap<usize, TensorVector>,
}

impl GradedElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit 1 in degree zero.
    pub fn unit() -> Self {
        Self::from_vector(TensorVector::from_word(crate::tensorspace::Word::empty()))
    }

    pub fn from_vector(v: TensorVector) -> Self {
        let mut out = Self::zero();
        out.add_vector(&v);
        out
    }

    pub fn add_vector(&mut self, v: &TensorVector) {
        let Some(deg) = v.degree() else { return };
        let entry = self.components.entry(deg).or_default();
        *entry = entry.add(v);
        if entry.is_zero() {
            self.components.remove(&deg);
        }
    }

    pub fn component(&self, degree: usize) -> Option<&TensorVector> {
        self.components.get(&degree)
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &TensorVector)> {
        self.components.iter().map(|(&d, v)| (d, v))
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }
}

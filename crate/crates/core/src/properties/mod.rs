//! The catalog of limit-computable properties.
//!
//! Each property is a [`Property`] addressed by a stable string id. Stage
//! functions simulate machines through a private [`Simulator`], so work from
//! earlier stages is reused without changing any outcome.
//!
//! Budgets: properties whose definition fixes the step allowance of each run
//! (`k`, `incompressible`, `partial-detect`, `partial-enum`, `easy-eq`) compute
//! a budget-independent value and report `NoOutput` when that allowance exceeds
//! the stage budget. The remaining properties use the stage budget itself as
//! their per-run allowance.
//!
//! [`Simulator`]: crate::machine::Simulator

mod enumeration;
mod equality;
mod error_ratio;
mod kolmogorov;
mod partial;
mod rational;

use std::fmt;
use std::sync::Arc;

pub use enumeration::{
    canonicalize, complexity_bound_enum, find_violation, CanonicalEnumeration, CanonicalStages,
    ComplexityBoundEnumeration, ComplexityBoundStages, Violation, ViolationKind,
};
pub use equality::{
    class_equality, easy_equality, ClassEquality, ClassEqualityStages, EasyEquality,
    EasyEqualityStages, ResourceBound,
};
pub use error_ratio::{
    decode_error_guess, error_ratio, ErrorBound, ErrorRatio, ErrorRatioStages, InverseCeilSqrt,
    InverseStage,
};
pub use kolmogorov::{
    incompressible_property, k_property, k_property_over, IncompressibleProperty,
    IncompressibleStages, KProperty, KStages, ProgramUniverse, StandardUniverse,
};
pub use partial::{
    partial_detect_property, partial_enum_property, PartialDetect, PartialDetectStages,
    PartialEnum, PartialEnumStages,
};
pub use rational::{error_fraction, simplest_rational_in, Rational};

use crate::encodings::{tau, tau_inv};
use crate::limit_engine::{Property, DEFAULT_WINDOW};
use crate::machine::{literal_index, ProgramIndex};
use crate::{Error, Nat, Result};

/// Stable ids of every catalog property.
pub const PROPERTY_IDS: [&str; 9] = [
    "k",
    "incompressible",
    "partial-detect",
    "partial-enum",
    "easy-eq",
    "class-eq",
    "error-ratio",
    "canonical",
    "cbe",
];

/// A total stage-indexed producer of program indices. Callers promise the
/// emitted indices denote total functions when a property requires it.
pub trait ClassEnumerator: fmt::Debug + Send + Sync {
    fn emit(&self, n: u64) -> ProgramIndex;
}

/// Emits every index in order: `n ↦ n`.
#[derive(Clone, Copy, Debug, Default)]
pub struct AllIndices;

impl ClassEnumerator for AllIndices {
    fn emit(&self, n: u64) -> ProgramIndex {
        ProgramIndex::from(n)
    }
}

/// Emits the canonical literal for `n`: a class of total, pairwise distinct
/// constant functions.
#[derive(Clone, Copy, Debug, Default)]
pub struct Literals;

impl ClassEnumerator for Literals {
    fn emit(&self, n: u64) -> ProgramIndex {
        literal_index(&Nat::from(n))
    }
}

/// Emits a fixed non-empty list over and over.
#[derive(Clone, Debug)]
pub struct Cycle(Vec<ProgramIndex>);

impl Cycle {
    pub fn new(indices: Vec<ProgramIndex>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::EmptyList);
        }
        Ok(Cycle(indices))
    }

    pub fn indices(&self) -> &[ProgramIndex] {
        &self.0
    }
}

impl ClassEnumerator for Cycle {
    fn emit(&self, n: u64) -> ProgramIndex {
        self.0[(n % self.0.len() as u64) as usize].clone()
    }
}

/// Emits a fixed finite prefix and then repeats its last element.
#[derive(Clone, Debug)]
pub struct ThenRepeat(Vec<ProgramIndex>);

impl ThenRepeat {
    pub fn new(indices: Vec<ProgramIndex>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::EmptyList);
        }
        Ok(ThenRepeat(indices))
    }
}

impl ClassEnumerator for ThenRepeat {
    fn emit(&self, n: u64) -> ProgramIndex {
        let at = (n as usize).min(self.0.len() - 1);
        self.0[at].clone()
    }
}

/// Splits a pair input `τ(i, j)` into two program indices.
pub fn split_pair(input: &Nat) -> (ProgramIndex, ProgramIndex) {
    let (i, j) = tau_inv(input);
    (ProgramIndex::new(i), ProgramIndex::new(j))
}

/// Pair input `τ(i, j)` for the two-machine properties.
pub fn pair_input(i: &ProgramIndex, j: &ProgramIndex) -> Nat {
    tau(i.value(), j.value())
}

/// Builds a catalog property with default parameters.
///
/// Defaults: `easy-eq` uses `h(x) = 8 + 8(x+1)` for both machines, `class-eq`
/// uses [`AllIndices`] for both classes, `error-ratio` uses `ε(t) = 1/t`,
/// `canonical` enumerates [`Literals`], `cbe` canonicalizes [`Literals`] and
/// draws candidates from [`AllIndices`], and `partial-enum` confirms pairs
/// over the default stabilization window.
///
/// [`AllIndices`] is a poor source for `canonical`: index 0 diverges, so no
/// later index ever shows a difference witness against it.
pub fn catalog_property(id: &str) -> Result<Arc<dyn Property + Send + Sync>> {
    let all: Arc<dyn ClassEnumerator> = Arc::new(AllIndices);
    Ok(match id {
        "k" => Arc::new(KProperty),
        "incompressible" => Arc::new(IncompressibleProperty),
        "partial-detect" => Arc::new(PartialDetect),
        "partial-enum" => Arc::new(PartialEnum::new(DEFAULT_WINDOW)),
        "easy-eq" => Arc::new(EasyEquality::new(
            ResourceBound::default(),
            ResourceBound::default(),
        )),
        "class-eq" => Arc::new(ClassEquality::new(all.clone(), all)),
        "error-ratio" => Arc::new(ErrorRatio::new(Arc::new(InverseStage))),
        "canonical" => Arc::new(CanonicalEnumeration::new(Arc::new(Literals))),
        "cbe" => Arc::new(ComplexityBoundEnumeration::new(Arc::new(Literals), all)),
        other => return Err(Error::UnknownProperty(other.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_ids_resolve() {
        for id in PROPERTY_IDS {
            assert_eq!(catalog_property(id).unwrap().id(), id);
        }
        assert!(matches!(
            catalog_property("nope"),
            Err(Error::UnknownProperty(_))
        ));
    }

    #[test]
    fn enumerators() {
        let c = Cycle::new(vec![ProgramIndex::from(4u64), ProgramIndex::from(9u64)]).unwrap();
        assert_eq!(c.emit(3), ProgramIndex::from(9u64));
        let r = ThenRepeat::new(vec![ProgramIndex::from(4u64), ProgramIndex::from(9u64)]).unwrap();
        assert_eq!(r.emit(30), ProgramIndex::from(9u64));
        assert!(Cycle::new(vec![]).is_err());
        assert_eq!(AllIndices.emit(17), ProgramIndex::from(17u64));
        assert_eq!(Literals.emit(2), ProgramIndex::from(13u64));
    }

    #[test]
    fn pair_inputs_split() {
        let (i, j) = (ProgramIndex::from(70_000u64), ProgramIndex::from(5u64));
        assert_eq!(split_pair(&pair_input(&i, &j)), (i, j));
    }
}

//! The finite commutative rings recurrences can run over.

use std::fmt::Debug;
use std::hash::Hash;

use crate::field::{FieldCtx, FieldElement};

/// A finite commutative ring with an enumeration of its elements.
pub trait FiniteRing: Clone + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    /// Number of elements, `None` if it does not fit in a `u64`.
    fn size(&self) -> Option<u64>;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_unit(&self, a: &Self::Elem) -> bool;
    fn contains(&self, a: &Self::Elem) -> bool;
    /// Element number `index` in a fixed enumeration, `index < size`.
    fn element(&self, index: u64) -> Self::Elem;
    /// Inverse of [`FiniteRing::element`].
    fn index_of(&self, a: &Self::Elem) -> u64;
    fn format_elem(&self, a: &Self::Elem) -> String;
}

impl FiniteRing for FieldCtx {
    type Elem = FieldElement;

    fn size(&self) -> Option<u64> {
        Some(self.q())
    }

    fn zero(&self) -> FieldElement {
        FieldCtx::zero(self)
    }

    fn one(&self) -> FieldElement {
        FieldCtx::one(self)
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldCtx::add(self, *a, *b)
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldCtx::mul(self, *a, *b)
    }

    fn is_unit(&self, a: &FieldElement) -> bool {
        !a.is_zero()
    }

    fn contains(&self, a: &FieldElement) -> bool {
        FieldCtx::contains(self, *a)
    }

    fn element(&self, index: u64) -> FieldElement {
        FieldCtx::element(self, index).expect("index below q")
    }

    fn index_of(&self, a: &FieldElement) -> u64 {
        a.index()
    }

    fn format_elem(&self, a: &FieldElement) -> String {
        crate::text::format_element(self, *a)
    }
}

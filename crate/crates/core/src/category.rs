//! The interface every category instance implements.
//!
//! A [`PointedCategory`] supplies composition, the zero object, kernels and
//! cokernels, and the factorization helpers that the generic calculus in
//! [`crate::calculus`] is written against. Instances whose objects can be
//! enumerated up to a size bound additionally implement [`FiniteCategory`],
//! which is what the exhaustive axiom suites and Hall counting need.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Debug;

/// A cone over a cospan `X -> Y <- Y'`: `left: P -> X`, `right: P -> Y'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone<M> {
    pub left: M,
    pub right: M,
}

/// A cocone under a span `Y' <- X' -> X`: `left: Y' -> Q`, `right: X -> Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocone<M> {
    pub left: M,
    pub right: M,
}

/// A pointed category with kernels and cokernels.
pub trait PointedCategory {
    type Obj: Clone + Eq + Ord + Debug;
    type Mor: Clone + Eq + Ord + Debug;

    fn name(&self) -> String;

    fn dom<'a>(&self, f: &'a Self::Mor) -> &'a Self::Obj;
    fn cod<'a>(&self, f: &'a Self::Mor) -> &'a Self::Obj;

    /// `g ∘ f`; callers guarantee `cod f = dom g`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor;
    fn identity(&self, x: &Self::Obj) -> Self::Mor;
    fn zero_object(&self) -> Self::Obj;
    fn zero_morphism(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Mor;

    /// `ker(f): Ker(f) -> dom f`.
    fn kernel(&self, f: &Self::Mor) -> Self::Mor;
    /// `coker(f): cod f -> Coker(f)`.
    fn cokernel(&self, f: &Self::Mor) -> Self::Mor;

    /// The unique `h` with `m ∘ h = f`, if one exists. `m` is a monomorphism.
    fn lift_through_mono(&self, m: &Self::Mor, f: &Self::Mor) -> Option<Self::Mor>;
    /// The unique `h` with `h ∘ e = f`, if one exists. `e` is an epimorphism.
    fn descend_through_epi(&self, e: &Self::Mor, f: &Self::Mor) -> Option<Self::Mor>;

    fn is_mono(&self, f: &Self::Mor) -> bool;
    fn is_epi(&self, f: &Self::Mor) -> bool;
    fn is_iso(&self, f: &Self::Mor) -> bool;

    fn size(&self, x: &Self::Obj) -> usize;

    /// Canonical pullback of `f: X -> Y` and `g: Y' -> Y`, when the instance
    /// supplies one.
    fn pullback(&self, _f: &Self::Mor, _g: &Self::Mor) -> Option<Cone<Self::Mor>> {
        None
    }

    /// The mediating morphism `T -> P` for `a: T -> X`, `b: T -> Y'`.
    fn pullback_mediator(
        &self,
        _cone: &Cone<Self::Mor>,
        _a: &Self::Mor,
        _b: &Self::Mor,
    ) -> Option<Self::Mor> {
        None
    }

    /// Canonical pushout of `f': X' -> Y'` and `g': X' -> X`.
    fn pushout(&self, _f: &Self::Mor, _g: &Self::Mor) -> Option<Cocone<Self::Mor>> {
        None
    }

    /// The mediating morphism `Q -> T` for `a: Y' -> T`, `b: X -> T`.
    fn pushout_mediator(
        &self,
        _cocone: &Cocone<Self::Mor>,
        _a: &Self::Mor,
        _b: &Self::Mor,
    ) -> Option<Self::Mor> {
        None
    }

    fn describe(&self, f: &Self::Mor) -> String {
        alloc::format!("{:?}", f)
    }

    fn is_zero(&self, f: &Self::Mor) -> bool {
        *f == self.zero_morphism(self.dom(f), self.cod(f))
    }
}

/// A pointed category whose objects can be enumerated up to a size bound.
pub trait FiniteCategory: PointedCategory {
    /// Token with `iso_key(X) == iso_key(Y)` exactly when `X ≅ Y`.
    type Key: Clone + Eq + Ord + Debug;

    /// One representative per isomorphism class, in canonical order.
    fn objects(&self, bound: usize) -> Vec<Self::Obj>;
    fn hom(&self, x: &Self::Obj, y: &Self::Obj) -> Vec<Self::Mor>;
    fn iso_key(&self, x: &Self::Obj) -> Self::Key;

    /// Set-level image of `f`, used to identify subobjects.
    fn image_signature(&self, f: &Self::Mor) -> Vec<usize>;
}

/// Canonical representatives and automorphisms, used by functor categories
/// to compute isomorphism keys of diagrams.
pub trait Canonical: FiniteCategory {
    /// The canonical representative of `x` together with an iso `x -> rep`.
    fn canonical(&self, x: &Self::Obj) -> (Self::Obj, Self::Mor);
    fn automorphisms(&self, x: &Self::Obj) -> Vec<Self::Mor>;
    fn inverse(&self, iso: &Self::Mor) -> Self::Mor;
}

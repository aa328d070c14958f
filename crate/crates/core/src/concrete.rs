//! Categories concrete over finite pointed sets.
//!
//! Most instances (pointed sets, closure spaces, commutative monoids, modules,
//! pre-crystals, groups) are finite pointed sets carrying extra structure,
//! with morphisms that are structure-preserving pointed maps. A [`Theory`]
//! describes that structure once; the blanket implementations below turn it
//! into a [`PointedCategory`], [`FiniteCategory`] and [`Canonical`].

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Debug;

use crate::category::{Canonical, Cocone, Cone, FiniteCategory, PointedCategory};
use crate::partition::{Partition, UnionFind};
use crate::perm::{invert, pointed_functions, pointed_permutations};
use crate::psets::PointedMap;

/// A morphism of a concrete category: a pointed map with its endpoints.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hom<O> {
    pub dom: O,
    pub cod: O,
    pub map: PointedMap,
}

impl<O> Hom<O> {
    pub fn new(dom: O, cod: O, map: PointedMap) -> Self {
        Hom { dom, cod, map }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map.apply(x)
    }
}

/// A kind of structure on finite pointed sets `{0, .., n-1}` (base point `0`).
pub trait Theory {
    type Obj: Clone + Eq + Ord + Debug;

    fn name(&self) -> String;
    /// Number of elements, base point included.
    fn carrier(&self, x: &Self::Obj) -> usize;
    fn zero(&self) -> Self::Obj;
    fn is_hom(&self, x: &Self::Obj, y: &Self::Obj, map: &PointedMap) -> bool;

    /// Kernel object with its inclusion into `dom f`.
    fn kernel_object(&self, f: &Hom<Self::Obj>) -> (Self::Obj, PointedMap);
    /// Cokernel object with the projection from `cod f`.
    fn cokernel_object(&self, f: &Hom<Self::Obj>) -> (Self::Obj, PointedMap);

    /// Transport of structure along the bijection `i -> perm[i]`.
    fn relabel(&self, x: &Self::Obj, perm: &[usize]) -> Self::Obj;

    /// One representative per isomorphism class with carrier at most `bound`.
    fn objects(&self, bound: usize) -> Vec<Self::Obj>;

    fn is_mono(&self, f: &Hom<Self::Obj>) -> bool {
        f.map.is_injective()
    }

    fn is_epi(&self, f: &Hom<Self::Obj>) -> bool {
        f.map.is_surjective(self.carrier(&f.cod))
    }

    fn hom_maps(&self, x: &Self::Obj, y: &Self::Obj) -> Vec<PointedMap> {
        pointed_functions(self.carrier(x), self.carrier(y))
            .into_iter()
            .map(PointedMap::from_table_unchecked)
            .filter(|m| self.is_hom(x, y, m))
            .collect()
    }

    /// Structure on the set-level fibre product, given as the list of pairs.
    fn pullback_object(&self, _x: &Self::Obj, _y: &Self::Obj, _pairs: &[(usize, usize)]) -> Option<Self::Obj> {
        None
    }

    /// Pushout of `f': X' -> Y'` and `g': X' -> X`: the apex with the
    /// injections from `Y'` and from `X`.
    fn pushout_object(
        &self,
        _f: &Hom<Self::Obj>,
        _g: &Hom<Self::Obj>,
    ) -> Option<(Self::Obj, PointedMap, PointedMap)> {
        None
    }

    /// Canonical representative and the relabeling reaching it.
    fn canonize(&self, x: &Self::Obj) -> (Self::Obj, Vec<usize>) {
        canonical_form(self, x)
    }

    fn describe_obj(&self, x: &Self::Obj) -> String {
        format!("{:?}", x)
    }
}

/// Smallest relabeling of `x` together with the permutation achieving it.
pub fn canonical_form<T: Theory + ?Sized>(theory: &T, x: &T::Obj) -> (T::Obj, Vec<usize>) {
    let n = theory.carrier(x);
    let mut best: Option<(T::Obj, Vec<usize>)> = None;
    for p in pointed_permutations(n) {
        let y = theory.relabel(x, &p);
        match &best {
            Some((b, _)) if *b <= y => {}
            _ => best = Some((y, p)),
        }
    }
    best.expect("at least the identity permutation")
}

/// Iso-class representatives among `candidates`, sorted by canonical form.
pub fn dedupe_iso<T: Theory + ?Sized>(theory: &T, candidates: impl IntoIterator<Item = T::Obj>) -> Vec<T::Obj> {
    let mut reps: Vec<T::Obj> = candidates.into_iter().map(|x| theory.canonize(&x).0).collect();
    reps.sort_by(|a, b| theory.carrier(a).cmp(&theory.carrier(b)).then_with(|| a.cmp(b)));
    reps.dedup();
    reps
}

/// Pairs `(x, y)` with `f(x) = g(y)`, `(0, 0)` first, then lexicographic.
pub fn fibre_pairs(f: &PointedMap, g: &PointedMap) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for x in 0..f.len() {
        for y in 0..g.len() {
            if f.apply(x) == g.apply(y) {
                pairs.push((x, y));
            }
        }
    }
    pairs
}

/// Set-level pushout of `f': X' -> Y'` and `g': X' -> X` in pointed sets:
/// the partition of `Y' ⊔ X` (with `X` offset by `|Y'|`) generated by
/// `f'(x') ~ g'(x')`, plus the two injections into the classes.
pub fn wedge_pushout(f: &PointedMap, f_cod: usize, g: &PointedMap, g_cod: usize) -> (Partition, PointedMap, PointedMap) {
    let mut uf = UnionFind::new(f_cod + g_cod);
    for x in 0..f.len() {
        uf.union(f.apply(x), f_cod + g.apply(x));
    }
    let part = uf.partition();
    let left = PointedMap::from_table_unchecked((0..f_cod).map(|y| part.class_of(y)).collect());
    let right = PointedMap::from_table_unchecked((0..g_cod).map(|x| part.class_of(f_cod + x)).collect());
    (part, left, right)
}

/// Collapse `subset` (which contains `0`) of an `n`-element set to the base
/// point, keeping the surviving elements in order.
pub fn collapse(n: usize, subset: &[usize]) -> (usize, PointedMap) {
    let mut table = alloc::vec![0; n];
    let mut next = 1;
    for (x, slot) in table.iter_mut().enumerate() {
        if !subset.contains(&x) {
            *slot = next;
            next += 1;
        }
    }
    (next, PointedMap::from_table_unchecked(table))
}

/// Inclusion of the sorted `subset` (containing `0`) as `{0, .., k-1}`.
pub fn inclusion(subset: &[usize]) -> PointedMap {
    PointedMap::from_table_unchecked(subset.to_vec())
}

/// Quotient of `0..n` by `part` as a projection table.
pub fn projection(part: &Partition) -> PointedMap {
    PointedMap::from_table_unchecked(part.labels().to_vec())
}

impl<T: Theory> PointedCategory for T {
    type Obj = T::Obj;
    type Mor = Hom<T::Obj>;

    fn name(&self) -> String {
        Theory::name(self)
    }

    fn dom<'a>(&self, f: &'a Hom<T::Obj>) -> &'a T::Obj {
        &f.dom
    }

    fn cod<'a>(&self, f: &'a Hom<T::Obj>) -> &'a T::Obj {
        &f.cod
    }

    fn compose(&self, g: &Hom<T::Obj>, f: &Hom<T::Obj>) -> Hom<T::Obj> {
        debug_assert_eq!(f.cod, g.dom);
        Hom::new(f.dom.clone(), g.cod.clone(), g.map.after(&f.map))
    }

    fn identity(&self, x: &T::Obj) -> Hom<T::Obj> {
        Hom::new(x.clone(), x.clone(), PointedMap::identity(self.carrier(x)))
    }

    fn zero_object(&self) -> T::Obj {
        self.zero()
    }

    fn zero_morphism(&self, x: &T::Obj, y: &T::Obj) -> Hom<T::Obj> {
        Hom::new(x.clone(), y.clone(), PointedMap::zero(self.carrier(x)))
    }

    fn kernel(&self, f: &Hom<T::Obj>) -> Hom<T::Obj> {
        let (k, incl) = self.kernel_object(f);
        Hom::new(k, f.dom.clone(), incl)
    }

    fn cokernel(&self, f: &Hom<T::Obj>) -> Hom<T::Obj> {
        let (c, proj) = self.cokernel_object(f);
        Hom::new(f.cod.clone(), c, proj)
    }

    fn lift_through_mono(&self, m: &Hom<T::Obj>, f: &Hom<T::Obj>) -> Option<Hom<T::Obj>> {
        if m.cod != f.cod {
            return None;
        }
        let mut table = Vec::with_capacity(f.map.len());
        for u in 0..f.map.len() {
            let target = f.apply(u);
            let x = (0..m.map.len()).find(|&x| m.apply(x) == target)?;
            table.push(x);
        }
        let h = PointedMap::from_table_unchecked(table);
        if m.map.after(&h) != f.map || !self.is_hom(&f.dom, &m.dom, &h) {
            return None;
        }
        Some(Hom::new(f.dom.clone(), m.dom.clone(), h))
    }

    fn descend_through_epi(&self, e: &Hom<T::Obj>, f: &Hom<T::Obj>) -> Option<Hom<T::Obj>> {
        if e.dom != f.dom {
            return None;
        }
        let n = self.carrier(&e.cod);
        let mut table: Vec<Option<usize>> = alloc::vec![None; n];
        for y in 0..e.map.len() {
            let slot = &mut table[e.apply(y)];
            match slot {
                Some(v) if *v != f.apply(y) => return None,
                _ => *slot = Some(f.apply(y)),
            }
        }
        let table: Option<Vec<usize>> = table.into_iter().collect();
        let h = PointedMap::from_table_unchecked(table?);
        if !self.is_hom(&e.cod, &f.cod, &h) {
            return None;
        }
        Some(Hom::new(e.cod.clone(), f.cod.clone(), h))
    }

    fn is_mono(&self, f: &Hom<T::Obj>) -> bool {
        Theory::is_mono(self, f)
    }

    fn is_epi(&self, f: &Hom<T::Obj>) -> bool {
        Theory::is_epi(self, f)
    }

    fn is_iso(&self, f: &Hom<T::Obj>) -> bool {
        let n = self.carrier(&f.cod);
        if f.map.len() != n || !f.map.is_injective() {
            return false;
        }
        let inv = PointedMap::from_table_unchecked(invert(f.map.table()));
        self.is_hom(&f.cod, &f.dom, &inv)
    }

    fn size(&self, x: &T::Obj) -> usize {
        self.carrier(x)
    }

    fn pullback(&self, f: &Hom<T::Obj>, g: &Hom<T::Obj>) -> Option<Cone<Hom<T::Obj>>> {
        let pairs = fibre_pairs(&f.map, &g.map);
        let apex = self.pullback_object(&f.dom, &g.dom, &pairs)?;
        let left = PointedMap::from_table_unchecked(pairs.iter().map(|p| p.0).collect());
        let right = PointedMap::from_table_unchecked(pairs.iter().map(|p| p.1).collect());
        Some(Cone {
            left: Hom::new(apex.clone(), f.dom.clone(), left),
            right: Hom::new(apex, g.dom.clone(), right),
        })
    }

    fn pullback_mediator(&self, cone: &Cone<Hom<T::Obj>>, a: &Hom<T::Obj>, b: &Hom<T::Obj>) -> Option<Hom<T::Obj>> {
        let apex = &cone.left.dom;
        let n = self.carrier(apex);
        let mut table = Vec::with_capacity(a.map.len());
        for t in 0..a.map.len() {
            let p = (0..n).find(|&p| cone.left.apply(p) == a.apply(t) && cone.right.apply(p) == b.apply(t))?;
            table.push(p);
        }
        let h = PointedMap::from_table_unchecked(table);
        if !self.is_hom(&a.dom, apex, &h) {
            return None;
        }
        Some(Hom::new(a.dom.clone(), apex.clone(), h))
    }

    fn pushout(&self, f: &Hom<T::Obj>, g: &Hom<T::Obj>) -> Option<Cocone<Hom<T::Obj>>> {
        let (apex, left, right) = self.pushout_object(f, g)?;
        Some(Cocone {
            left: Hom::new(f.cod.clone(), apex.clone(), left),
            right: Hom::new(g.cod.clone(), apex, right),
        })
    }

    fn pushout_mediator(&self, cocone: &Cocone<Hom<T::Obj>>, a: &Hom<T::Obj>, b: &Hom<T::Obj>) -> Option<Hom<T::Obj>> {
        let apex = &cocone.left.cod;
        let n = self.carrier(apex);
        let mut table: Vec<Option<usize>> = alloc::vec![None; n];
        let legs = [(&cocone.left, a), (&cocone.right, b)];
        for (leg, target) in legs {
            for y in 0..leg.map.len() {
                let slot = &mut table[leg.apply(y)];
                match slot {
                    Some(v) if *v != target.apply(y) => return None,
                    _ => *slot = Some(target.apply(y)),
                }
            }
        }
        let table: Option<Vec<usize>> = table.into_iter().collect();
        let h = PointedMap::from_table_unchecked(table?);
        if !self.is_hom(apex, &a.cod, &h) {
            return None;
        }
        Some(Hom::new(apex.clone(), a.cod.clone(), h))
    }

    fn describe(&self, f: &Hom<T::Obj>) -> String {
        format!(
            "{:?}:{}->{}",
            f.map.table(),
            self.describe_obj(&f.dom),
            self.describe_obj(&f.cod)
        )
    }
}

impl<T: Theory> FiniteCategory for T {
    type Key = T::Obj;

    fn objects(&self, bound: usize) -> Vec<T::Obj> {
        Theory::objects(self, bound)
    }

    fn hom(&self, x: &T::Obj, y: &T::Obj) -> Vec<Hom<T::Obj>> {
        self.hom_maps(x, y)
            .into_iter()
            .map(|m| Hom::new(x.clone(), y.clone(), m))
            .collect()
    }

    fn iso_key(&self, x: &T::Obj) -> T::Obj {
        self.canonize(x).0
    }

    fn image_signature(&self, f: &Hom<T::Obj>) -> Vec<usize> {
        f.map.image()
    }
}

impl<T: Theory> Canonical for T {
    fn canonical(&self, x: &T::Obj) -> (T::Obj, Hom<T::Obj>) {
        let (c, p) = self.canonize(x);
        (c.clone(), Hom::new(x.clone(), c, PointedMap::from_table_unchecked(p)))
    }

    fn automorphisms(&self, x: &T::Obj) -> Vec<Hom<T::Obj>> {
        pointed_permutations(self.carrier(x))
            .into_iter()
            .filter(|p| self.relabel(x, p) == *x)
            .map(|p| Hom::new(x.clone(), x.clone(), PointedMap::from_table_unchecked(p)))
            .collect()
    }

    fn inverse(&self, iso: &Hom<T::Obj>) -> Hom<T::Obj> {
        Hom::new(
            iso.cod.clone(),
            iso.dom.clone(),
            PointedMap::from_table_unchecked(invert(iso.map.table())),
        )
    }
}

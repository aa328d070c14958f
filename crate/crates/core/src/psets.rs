//! Finite pointed sets `{0, .., n}` with base point `0`, the strict
//! subcategory, duality on strict maps, smash product, (co)products and
//! actions of pointed monoids.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::concrete::{collapse, inclusion, wedge_pushout, Hom, Theory};
use crate::error::{Error, Result};

/// A base-point preserving map given by its table: `x ↦ table[x]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct PointedMap(Vec<usize>);

impl PointedMap {
    pub fn new(table: Vec<usize>) -> Result<Self> {
        match table.first() {
            Some(0) => Ok(PointedMap(table)),
            Some(_) => Err(Error::InvalidInput("pointed map must send 0 to 0".into())),
            None => Err(Error::InvalidInput("pointed map needs a base point".into())),
        }
    }

    /// Callers guarantee `table[0] == 0`.
    pub fn from_table_unchecked(table: Vec<usize>) -> Self {
        debug_assert_eq!(table.first(), Some(&0));
        PointedMap(table)
    }

    pub fn identity(len: usize) -> Self {
        PointedMap((0..len).collect())
    }

    pub fn zero(len: usize) -> Self {
        PointedMap(vec![0; len])
    }

    pub fn table(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &PointedMap) -> PointedMap {
        PointedMap(f.0.iter().map(|&x| self.0[x]).collect())
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &PointedMap) -> PointedMap {
        g.after(self)
    }

    /// Sorted distinct image, always containing `0`.
    pub fn image(&self) -> Vec<usize> {
        let mut im = self.0.clone();
        im.sort_unstable();
        im.dedup();
        im
    }

    /// `f⁻¹(0)`, in increasing order.
    pub fn kernel_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.0[x] == 0).collect()
    }

    /// `dom(f)`: the elements not sent to the base point.
    pub fn domain_of_definition(&self) -> Vec<usize> {
        (1..self.len()).filter(|&x| self.0[x] != 0).collect()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = self.0.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    pub fn is_surjective(&self, cod_len: usize) -> bool {
        self.image().len() == cod_len
    }

    /// Injective on `dom(f)`.
    pub fn is_strict(&self) -> bool {
        let mut seen: Vec<usize> = self.0.iter().copied().filter(|&y| y != 0).collect();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }
}

/// The pointed set `{0, 1, .., n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FinPointedSet {
    pub n: usize,
}

impl FinPointedSet {
    pub fn new(n: usize) -> Self {
        FinPointedSet { n }
    }

    /// The set with `size` elements, base point included.
    pub fn of_size(size: usize) -> Self {
        assert!(size >= 1, "a pointed set has at least its base point");
        FinPointedSet { n: size - 1 }
    }

    pub fn size(&self) -> usize {
        self.n + 1
    }
}

pub type PsetMap = Hom<FinPointedSet>;

/// Build a pointed map between pointed sets, checking the table.
pub fn pset_map(dom: FinPointedSet, cod: FinPointedSet, table: Vec<usize>) -> Result<PsetMap> {
    if table.len() != dom.size() {
        return Err(Error::InvalidInput(format!(
            "table has {} entries, domain has {}",
            table.len(),
            dom.size()
        )));
    }
    if table.iter().any(|&y| y >= cod.size()) {
        return Err(Error::InvalidInput("table leaves the codomain".into()));
    }
    Ok(Hom::new(dom, cod, PointedMap::new(table)?))
}

/// `(ker f: Ker f -> X, coker f: Y -> Y/f(X))`. Quotient elements keep the
/// order of their smallest representative.
pub fn pset_ker_coker(f: &PsetMap) -> (PsetMap, PsetMap) {
    let k = f.map.kernel_elements();
    let ker = Hom::new(FinPointedSet::of_size(k.len()), f.dom, inclusion(&k));
    let (c, proj) = collapse(f.cod.size(), &f.map.image());
    let coker = Hom::new(f.cod, FinPointedSet::of_size(c), proj);
    (ker, coker)
}

pub fn pset_is_strict(f: &PsetMap) -> bool {
    f.map.is_strict()
}

/// The dual `f*: Y -> X` of a strict map.
pub fn pset_dual(f: &PsetMap) -> Result<PsetMap> {
    if !f.map.is_strict() {
        return Err(Error::NotStrict);
    }
    let mut table = vec![0; f.cod.size()];
    for x in f.map.domain_of_definition() {
        table[f.apply(x)] = x;
    }
    Ok(Hom::new(f.cod, f.dom, PointedMap::from_table_unchecked(table)))
}

/// `X ∧ Y`: pairs of non-base elements, enumerated with `x` major, plus the
/// base point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smash {
    pub left: FinPointedSet,
    pub right: FinPointedSet,
    pub object: FinPointedSet,
}

impl Smash {
    /// Index of the class of `(x, y)` in `X ∧ Y`.
    pub fn pair(&self, x: usize, y: usize) -> usize {
        if x == 0 || y == 0 {
            0
        } else {
            1 + (x - 1) * self.right.n + (y - 1)
        }
    }

    /// Inverse of [`Smash::pair`] on non-base elements.
    pub fn unpair(&self, z: usize) -> (usize, usize) {
        if z == 0 {
            (0, 0)
        } else {
            (1 + (z - 1) / self.right.n, 1 + (z - 1) % self.right.n)
        }
    }

    /// The projection `X × Y -> X ∧ Y`, in the product's enumeration.
    pub fn projection(&self, product: &Product) -> PsetMap {
        let table = product.pairs.iter().map(|&(x, y)| self.pair(x, y)).collect();
        Hom::new(product.object, self.object, PointedMap::from_table_unchecked(table))
    }
}

pub fn pset_smash(x: FinPointedSet, y: FinPointedSet) -> Smash {
    Smash {
        left: x,
        right: y,
        object: FinPointedSet::new(x.n * y.n),
    }
}

/// Cartesian product with lexicographically ordered pairs; `(0, 0)` is the
/// base point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Product {
    pub object: FinPointedSet,
    pub pairs: Vec<(usize, usize)>,
    pub p1: PsetMap,
    pub p2: PsetMap,
}

/// Wedge `X ∨ Y`: `X` as is, then the non-base elements of `Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coproduct {
    pub object: FinPointedSet,
    pub i1: PsetMap,
    pub i2: PsetMap,
}

impl Product {
    /// `⟨a, b⟩: T -> X × Y`.
    pub fn pairing(&self, a: &PsetMap, b: &PsetMap) -> PsetMap {
        let table = (0..a.dom.size())
            .map(|t| {
                let key = (a.apply(t), b.apply(t));
                self.pairs.iter().position(|&p| p == key).expect("pairs are exhaustive")
            })
            .collect();
        Hom::new(a.dom, self.object, PointedMap::from_table_unchecked(table))
    }
}

impl Coproduct {
    /// `[a, b]: X ∨ Y -> T`.
    pub fn copairing(&self, a: &PsetMap, b: &PsetMap) -> PsetMap {
        let mut table = a.map.table().to_vec();
        table.extend_from_slice(&b.map.table()[1..]);
        Hom::new(self.object, a.cod, PointedMap::from_table_unchecked(table))
    }
}

pub fn pset_prod_coprod(x: FinPointedSet, y: FinPointedSet) -> (Product, Coproduct) {
    let pairs: Vec<(usize, usize)> = (0..x.size())
        .flat_map(|a| (0..y.size()).map(move |b| (a, b)))
        .collect();
    let prod = FinPointedSet::of_size(pairs.len());
    let p1 = Hom::new(prod, x, PointedMap::from_table_unchecked(pairs.iter().map(|p| p.0).collect()));
    let p2 = Hom::new(prod, y, PointedMap::from_table_unchecked(pairs.iter().map(|p| p.1).collect()));
    let wedge = FinPointedSet::new(x.n + y.n);
    let i1 = Hom::new(x, wedge, PointedMap::identity(x.size()));
    let i2 = Hom::new(
        y,
        wedge,
        PointedMap::from_table_unchecked((0..y.size()).map(|b| if b == 0 { 0 } else { x.n + b }).collect()),
    );
    (
        Product {
            object: prod,
            pairs,
            p1,
            p2,
        },
        Coproduct { object: wedge, i1, i2 },
    )
}

/// `Set_*`, or its strict subcategory `Set_*^s` when `strict_only` is set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PointedSets {
    pub strict_only: bool,
}

pub fn pset_category(strict_only: bool) -> PointedSets {
    PointedSets { strict_only }
}

impl Theory for PointedSets {
    type Obj = FinPointedSet;

    fn name(&self) -> String {
        if self.strict_only { "psets-strict" } else { "psets" }.into()
    }

    fn carrier(&self, x: &FinPointedSet) -> usize {
        x.size()
    }

    fn zero(&self) -> FinPointedSet {
        FinPointedSet::new(0)
    }

    fn is_hom(&self, _x: &FinPointedSet, _y: &FinPointedSet, map: &PointedMap) -> bool {
        !self.strict_only || map.is_strict()
    }

    fn kernel_object(&self, f: &PsetMap) -> (FinPointedSet, PointedMap) {
        let (k, _) = pset_ker_coker(f);
        (k.dom, k.map)
    }

    fn cokernel_object(&self, f: &PsetMap) -> (FinPointedSet, PointedMap) {
        let (_, c) = pset_ker_coker(f);
        (c.cod, c.map)
    }

    fn relabel(&self, x: &FinPointedSet, _perm: &[usize]) -> FinPointedSet {
        *x
    }

    fn canonize(&self, x: &FinPointedSet) -> (FinPointedSet, Vec<usize>) {
        (*x, (0..x.size()).collect())
    }

    fn objects(&self, bound: usize) -> Vec<FinPointedSet> {
        (1..=bound).map(FinPointedSet::of_size).collect()
    }

    fn hom_maps(&self, x: &FinPointedSet, y: &FinPointedSet) -> Vec<PointedMap> {
        crate::perm::pointed_functions(x.size(), y.size())
            .into_iter()
            .map(PointedMap::from_table_unchecked)
            .filter(|m| !self.strict_only || m.is_strict())
            .collect()
    }

    fn pullback_object(&self, _x: &FinPointedSet, _y: &FinPointedSet, pairs: &[(usize, usize)]) -> Option<FinPointedSet> {
        if self.strict_only {
            let left = PointedMap::from_table_unchecked(pairs.iter().map(|p| p.0).collect());
            let right = PointedMap::from_table_unchecked(pairs.iter().map(|p| p.1).collect());
            if !left.is_strict() || !right.is_strict() {
                return None;
            }
        }
        Some(FinPointedSet::of_size(pairs.len()))
    }

    fn pushout_object(&self, f: &PsetMap, g: &PsetMap) -> Option<(FinPointedSet, PointedMap, PointedMap)> {
        let (part, left, right) = wedge_pushout(&f.map, f.cod.size(), &g.map, g.cod.size());
        if self.strict_only && (!left.is_strict() || !right.is_strict()) {
            return None;
        }
        Some((FinPointedSet::of_size(part.class_count()), left, right))
    }

    fn describe_obj(&self, x: &FinPointedSet) -> String {
        format!("{}", x.size())
    }
}

/// A monoid with absorbing zero, on elements `0..order`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PointedMonoid {
    pub order: usize,
    /// `mul[a][b] = a·b`.
    pub mul: Vec<Vec<usize>>,
    pub zero: usize,
    pub one: usize,
}

impl PointedMonoid {
    pub fn new(mul: Vec<Vec<usize>>, zero: usize, one: usize) -> Result<Self> {
        let order = mul.len();
        let bad = |msg: &str| Err(Error::InvalidAction(msg.into()));
        if zero >= order || one >= order || mul.iter().any(|r| r.len() != order || r.iter().any(|&c| c >= order)) {
            return bad("multiplication table is not square over the carrier");
        }
        for a in 0..order {
            if mul[one][a] != a || mul[a][one] != a {
                return bad("unit law fails");
            }
            if mul[zero][a] != zero || mul[a][zero] != zero {
                return bad("zero is not absorbing");
            }
            for b in 0..order {
                for c in 0..order {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return bad("multiplication is not associative");
                    }
                }
            }
        }
        Ok(PointedMonoid { order, mul, zero, one })
    }

    /// `{0, 1}`: the pointed monoid of the trivial group.
    pub fn trivial() -> Self {
        PointedMonoid::new(vec![vec![0, 0], vec![0, 1]], 0, 1).expect("valid")
    }

    /// `μ_r ⊔ {0}`: element `k + 1` is `ζ^k`.
    pub fn mu(r: usize) -> Self {
        assert!(r >= 1);
        let mut mul = vec![vec![0; r + 1]; r + 1];
        for a in 1..=r {
            for b in 1..=r {
                mul[a][b] = 1 + (a - 1 + b - 1) % r;
            }
        }
        PointedMonoid::new(mul, 0, 1).expect("valid")
    }

    /// Elements other than `0` and `1`, which generate the action.
    pub fn generators(&self) -> Vec<usize> {
        (0..self.order).filter(|&a| a != self.zero && a != self.one).collect()
    }
}

/// A pointed monoid acting on a finite pointed set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GAction {
    pub monoid: PointedMonoid,
    pub carrier: FinPointedSet,
    /// `action[a]` is the map `x ↦ a·x`.
    pub action: Vec<PointedMap>,
}

impl GAction {
    pub fn new(monoid: PointedMonoid, carrier: FinPointedSet, action: Vec<Vec<usize>>) -> Result<Self> {
        let n = carrier.size();
        if action.len() != monoid.order {
            return Err(Error::InvalidAction("one row per monoid element is required".into()));
        }
        let mut maps = Vec::with_capacity(action.len());
        for row in action {
            if row.len() != n || row.iter().any(|&x| x >= n) || row[0] != 0 {
                return Err(Error::InvalidAction("action row is not a pointed map of the carrier".into()));
            }
            maps.push(PointedMap::from_table_unchecked(row));
        }
        if maps[monoid.one] != PointedMap::identity(n) {
            return Err(Error::InvalidAction("unit does not act as the identity".into()));
        }
        if maps[monoid.zero] != PointedMap::zero(n) {
            return Err(Error::InvalidAction("zero does not act as zero".into()));
        }
        for a in 0..monoid.order {
            for b in 0..monoid.order {
                if maps[monoid.mul[a][b]] != maps[a].after(&maps[b]) {
                    return Err(Error::InvalidAction(format!("(ab)x != a(bx) for a={a}, b={b}")));
                }
            }
        }
        Ok(GAction {
            monoid,
            carrier,
            action: maps,
        })
    }

    pub fn act(&self, a: usize, x: usize) -> usize {
        self.action[a].apply(x)
    }

    /// A map of carriers is equivariant when it commutes with every element.
    pub fn is_equivariant(&self, other: &GAction, f: &PointedMap) -> bool {
        (0..self.monoid.order).all(|a| f.after(&self.action[a]) == other.action[a].after(f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{classify, factorize};
    use crate::category::PointedCategory;

    fn map(dom: usize, cod: usize, t: &[usize]) -> PsetMap {
        pset_map(FinPointedSet::of_size(dom), FinPointedSet::of_size(cod), t.to_vec()).unwrap()
    }

    #[test]
    fn ker_coker_examples() {
        let f = map(3, 2, &[0, 1, 0]);
        let (k, c) = pset_ker_coker(&f);
        assert_eq!(k.map.table(), &[0, 2]);
        assert_eq!(c.cod.size(), 1);

        let id = map(2, 2, &[0, 1]);
        let (k, c) = pset_ker_coker(&id);
        assert_eq!(k.dom.size(), 1);
        assert_eq!(c.cod.size(), 1);

        let z = map(3, 2, &[0, 0, 0]);
        let (k, c) = pset_ker_coker(&z);
        assert_eq!(k.dom.size(), 3);
        assert_eq!(c.cod.size(), 2);
        assert_eq!(c.map.table(), &[0, 1]);
    }

    #[test]
    fn cokernel_renumbers_by_smallest_representative() {
        let f = map(2, 4, &[0, 2]);
        let (_, c) = pset_ker_coker(&f);
        assert_eq!(c.map.table(), &[0, 1, 0, 2]);
    }

    #[test]
    fn fold_is_not_strict() {
        let cat = pset_category(false);
        let f = map(3, 2, &[0, 1, 1]);
        assert!(!pset_is_strict(&f));
        let fac = factorize(&cat, &f).unwrap();
        assert_eq!(fac.coim.cod.size(), 3);
        assert_eq!(fac.im.dom.size(), 2);
        assert!(!fac.mid.map.is_injective());
        let c = classify(&cat, &f).unwrap();
        assert!(c.is_epi && !c.is_strict && !c.is_strict_epi);
    }

    #[test]
    fn identity_factorization_is_trivial() {
        let cat = pset_category(false);
        let id = map(2, 2, &[0, 1]);
        let fac = factorize(&cat, &id).unwrap();
        assert_eq!(fac.coim, id);
        assert_eq!(fac.mid, id);
        assert_eq!(fac.im, id);
    }

    #[test]
    fn inclusion_is_strict_mono() {
        let cat = pset_category(false);
        let c = classify(&cat, &map(2, 3, &[0, 1])).unwrap();
        assert!(c.is_strict_mono);
        assert!(pset_is_strict(&map(2, 3, &[0, 2])));
    }

    #[test]
    fn dual_example() {
        let f = map(2, 3, &[0, 2]);
        let d = pset_dual(&f).unwrap();
        assert_eq!(d.map.table(), &[0, 0, 1]);
        assert_eq!(pset_dual(&d).unwrap(), f);
        let id = map(3, 3, &[0, 1, 2]);
        assert_eq!(pset_dual(&id).unwrap(), id);
        assert_eq!(pset_dual(&map(3, 2, &[0, 1, 1])), Err(Error::NotStrict));
    }

    #[test]
    fn smash_sizes() {
        let one = FinPointedSet::new(1);
        let y = FinPointedSet::new(4);
        assert_eq!(pset_smash(one, y).object, y);
        let s = pset_smash(FinPointedSet::new(2), FinPointedSet::new(2));
        assert_eq!(s.object.size(), 5);
        for z in 1..5 {
            let (a, b) = s.unpair(z);
            assert_eq!(s.pair(a, b), z);
        }
    }

    #[test]
    fn product_and_wedge_sizes() {
        let x = FinPointedSet::new(1);
        let (p, c) = pset_prod_coprod(x, x);
        assert_eq!(p.object.size(), 4);
        assert_eq!(c.object.size(), 3);
        let y = FinPointedSet::new(3);
        let (p, c) = pset_prod_coprod(FinPointedSet::new(0), y);
        assert_eq!(p.object.size(), y.size());
        assert_eq!(c.object, y);
    }

    #[test]
    fn hom_counts() {
        let cat = pset_category(false);
        let two = FinPointedSet::new(1);
        assert_eq!(crate::category::FiniteCategory::hom(&cat, &two, &two).len(), 2);
        let three = FinPointedSet::new(2);
        assert_eq!(crate::category::FiniteCategory::hom(&cat, &three, &three).len(), 9);
        let strict = pset_category(true);
        assert_eq!(crate::category::FiniteCategory::hom(&strict, &three, &three).len(), 7);
    }

    #[test]
    fn zero_object_hom_sets_are_singletons() {
        let cat = pset_category(false);
        let z = cat.zero_object();
        for x in Theory::objects(&cat, 4) {
            assert_eq!(crate::category::FiniteCategory::hom(&cat, &z, &x).len(), 1);
            assert_eq!(crate::category::FiniteCategory::hom(&cat, &x, &z).len(), 1);
        }
    }

    #[test]
    fn mu_monoid_is_cyclic() {
        let m = PointedMonoid::mu(3);
        assert_eq!(m.mul[2][2], 3);
        assert_eq!(m.mul[2][3], 1);
        assert_eq!(m.generators(), vec![2, 3]);
    }

    #[test]
    fn invalid_action_rejected() {
        let m = PointedMonoid::mu(2);
        // ζ acting as a non-involution on {0, 1, 2}
        let err = GAction::new(m, FinPointedSet::new(2), vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 0]]);
        assert!(matches!(err, Err(Error::InvalidAction(_))));
        let ok = GAction::new(
            PointedMonoid::mu(2),
            FinPointedSet::new(2),
            vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]],
        );
        assert!(ok.is_ok());
    }

    #[test]
    fn suites_pass_at_bound_four() {
        use crate::calculus::{check_parabelian, check_proto_exact_closure};
        for strict in [false, true] {
            let cat = pset_category(strict);
            let r = check_parabelian(&cat, 4).unwrap();
            assert!(r.passed(), "{r}");
            assert!(r.checked() > 0);
            let r = check_proto_exact_closure(&cat, 4).unwrap();
            assert!(r.passed(), "{r}");
        }
    }
}

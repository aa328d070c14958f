//! Closure spaces and matroids on small ground sets, stored as their
//! families of flats (bitmasks over `0..size`).

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::concrete::{collapse, dedupe_iso, inclusion, wedge_pushout, Hom, Theory};
use crate::error::{Error, Result};
use crate::psets::PointedMap;

pub type Mask = u32;

/// Largest supported ground set.
pub const MAX_GROUND: usize = 16;

fn full(size: usize) -> Mask {
    ((1u64 << size) - 1) as Mask
}

fn bits(m: Mask) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&i| m >> i & 1 == 1)
}

fn image_mask(f: &[usize], a: Mask) -> Mask {
    bits(a).fold(0, |acc, x| acc | 1 << f[x])
}

fn preimage_mask(f: &[usize], b: Mask) -> Mask {
    (0..f.len()).filter(|&x| b >> f[x] & 1 == 1).fold(0, |acc, x| acc | 1 << x)
}

/// A closure space given by its intersection-closed family of flats.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClosureSpace {
    pub size: usize,
    /// Sorted, without repetitions.
    pub flats: Vec<Mask>,
}

impl ClosureSpace {
    pub fn new(size: usize, flats: Vec<Mask>) -> Result<Self> {
        if size > MAX_GROUND {
            return Err(Error::InvalidStructure(format!("ground set larger than {MAX_GROUND}")));
        }
        let all = full(size);
        let set: BTreeSet<Mask> = flats.into_iter().collect();
        if set.iter().any(|&f| f & !all != 0) {
            return Err(Error::InvalidStructure("flat outside the ground set".into()));
        }
        if !set.contains(&all) {
            return Err(Error::InvalidStructure("the ground set must be closed".into()));
        }
        for &a in &set {
            for &b in &set {
                if !set.contains(&(a & b)) {
                    return Err(Error::InvalidStructure(format!("{a:#b} ∩ {b:#b} is not closed")));
                }
            }
        }
        Ok(ClosureSpace {
            size,
            flats: set.into_iter().collect(),
        })
    }

    /// Like [`ClosureSpace::new`], additionally requiring `0 ∈ σ(∅)`.
    pub fn pointed(size: usize, flats: Vec<Mask>) -> Result<Self> {
        let s = ClosureSpace::new(size, flats)?;
        if size == 0 || !s.is_pointed() {
            return Err(Error::InvalidStructure("base point is not in the closure of the empty set".into()));
        }
        Ok(s)
    }

    /// Every subset is closed.
    pub fn discrete(size: usize) -> Self {
        ClosureSpace {
            size,
            flats: (0..=full(size)).collect(),
        }
    }

    /// Build from a closure operator tabulated on all subsets.
    pub fn from_operator(size: usize, sigma: impl Fn(Mask) -> Mask) -> Result<Self> {
        let flats = (0..=full(size)).filter(|&a| sigma(a) == a).collect();
        ClosureSpace::new(size, flats)
    }

    pub fn full(&self) -> Mask {
        full(self.size)
    }

    pub fn is_closed(&self, a: Mask) -> bool {
        self.flats.binary_search(&a).is_ok()
    }

    /// `σ(A)`: the intersection of the flats containing `A`.
    pub fn closure_of(&self, a: Mask) -> Mask {
        self.flats.iter().filter(|&&f| f & a == a).fold(self.full(), |acc, &f| acc & f)
    }

    pub fn is_pointed(&self) -> bool {
        self.closure_of(0) & 1 == 1
    }
}

/// `y ∈ σ(A ∪ x) \ σ(A)` implies `x ∈ σ(A ∪ y)`, for all `A, x, y`.
pub fn check_exchange(space: &ClosureSpace) -> bool {
    let n = space.size;
    let closures: Vec<Mask> = (0..=space.full()).map(|a| space.closure_of(a)).collect();
    for a in 0..=space.full() {
        for x in 0..n {
            let sax = closures[(a | 1 << x) as usize];
            let fresh = sax & !closures[a as usize];
            for y in bits(fresh) {
                if closures[(a | 1 << y) as usize] >> x & 1 == 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// A matroid by its rank function on all subsets of `0..size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matroid {
    pub size: usize,
    pub rank: Vec<usize>,
}

impl Matroid {
    pub fn from_rank(size: usize, rank: Vec<usize>) -> Result<Self> {
        if size > MAX_GROUND || rank.len() != 1 << size {
            return Err(Error::NotAMatroid("rank table must cover every subset".into()));
        }
        if rank[0] != 0 {
            return Err(Error::NotAMatroid("rank of the empty set is not 0".into()));
        }
        for a in 0..rank.len() {
            for x in 0..size {
                let ax = a | 1 << x;
                if rank[ax] < rank[a] {
                    return Err(Error::NotAMatroid("rank is not monotone".into()));
                }
                if rank[ax] > rank[a] + 1 {
                    return Err(Error::NotAMatroid("rank grows by more than one".into()));
                }
            }
        }
        for a in 0..rank.len() {
            for b in 0..rank.len() {
                if rank[a | b] + rank[a & b] > rank[a] + rank[b] {
                    return Err(Error::NotAMatroid("rank is not submodular".into()));
                }
            }
        }
        Ok(Matroid { size, rank })
    }

    /// From the family of independent sets.
    pub fn from_independent_sets(size: usize, sets: &[Mask]) -> Result<Self> {
        let indep: BTreeSet<Mask> = sets.iter().copied().collect();
        if !indep.contains(&0) {
            return Err(Error::NotAMatroid("the empty set must be independent".into()));
        }
        for &i in &indep {
            if i & !full(size) != 0 {
                return Err(Error::NotAMatroid("independent set outside the ground set".into()));
            }
            for x in bits(i) {
                if !indep.contains(&(i & !(1 << x))) {
                    return Err(Error::NotAMatroid("independent sets are not closed under subsets".into()));
                }
            }
        }
        for &i in &indep {
            for &j in &indep {
                if j.count_ones() > i.count_ones() && !bits(j & !i).any(|x| indep.contains(&(i | 1 << x))) {
                    return Err(Error::NotAMatroid("augmentation fails".into()));
                }
            }
        }
        let rank = (0..1usize << size)
            .map(|a| {
                indep
                    .iter()
                    .filter(|&&i| i & !(a as Mask) == 0)
                    .map(|i| i.count_ones() as usize)
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        Matroid::from_rank(size, rank)
    }

    pub fn free(size: usize) -> Self {
        Matroid::uniform(size, size)
    }

    /// `U_{r,n}`.
    pub fn uniform(r: usize, n: usize) -> Self {
        let rank = (0..1usize << n).map(|a| a.count_ones().min(r as u32) as usize).collect();
        Matroid { size: n, rank }
    }

    /// `σ(A) = {x : ρ(A ∪ x) = ρ(A)}`.
    pub fn closure_of(&self, a: Mask) -> Mask {
        (0..self.size)
            .filter(|&x| self.rank[(a | 1 << x) as usize] == self.rank[a as usize])
            .fold(a, |acc, x| acc | 1 << x)
    }
}

/// The closure space of a matroid.
pub fn matroid_closure(m: &Matroid) -> ClosureSpace {
    let flats = (0..=full(m.size)).filter(|&a| m.closure_of(a) == a).collect();
    ClosureSpace::new(m.size, flats).expect("matroid flats are intersection-closed")
}

/// The pointed closure space of a matroid with a loop adjoined as base
/// point `0`; the matroid's elements become `1..=size`.
pub fn pointed_matroid_closure(m: &Matroid) -> ClosureSpace {
    let flats = matroid_closure(m).flats.iter().map(|&f| f << 1 | 1).collect();
    ClosureSpace::new(m.size + 1, flats).expect("shifted flats stay intersection-closed")
}

/// Every matroid on `0..size`, enumerated from its independent sets.
pub fn all_matroids(size: usize) -> Vec<Matroid> {
    let subsets = 1usize << size;
    assert!(subsets <= 16, "independent-set enumeration is limited to 4 elements");
    let mut out = Vec::new();
    for fam in 0u32..(1u32 << subsets) {
        if fam & 1 == 0 {
            continue;
        }
        let sets: Vec<Mask> = (0..subsets as Mask).filter(|&s| fam >> s & 1 == 1).collect();
        let down = sets
            .iter()
            .all(|&i| bits(i).all(|x| fam >> (i & !(1 << x)) & 1 == 1));
        if !down {
            continue;
        }
        if let Ok(m) = Matroid::from_independent_sets(size, &sets) {
            out.push(m);
        }
    }
    out
}

/// Every pointed closure space on `size` points (labeled).
pub fn all_pointed_closure_spaces(size: usize) -> Vec<ClosureSpace> {
    assert!((1..=5).contains(&size), "exhaustive enumeration is limited to 5 points");
    let k = size - 1;
    let subsets = 1usize << k;
    let mut out = Vec::new();
    for fam in 0u64..(1u64 << subsets) {
        if fam >> (subsets - 1) & 1 == 0 {
            continue;
        }
        let sets: Vec<Mask> = (0..subsets as Mask).filter(|&s| fam >> s & 1 == 1).collect();
        let closed = sets.iter().all(|&a| sets.iter().all(|&b| fam >> (a & b) & 1 == 1));
        if closed {
            out.push(ClosureSpace {
                size,
                flats: sets.iter().map(|&f| f << 1 | 1).collect(),
            });
        }
    }
    out
}

/// The three continuity conditions for a map of ground sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContinuityVerdict {
    /// Preimages of flats are flats.
    pub preimage: bool,
    /// `σ f⁻¹ B ⊆ f⁻¹ σ B` for every `B`.
    pub pullback: bool,
    /// `f σ A ⊆ σ f A` for every `A`.
    pub image: bool,
}

impl ContinuityVerdict {
    pub fn agree(&self) -> bool {
        self.preimage == self.pullback && self.pullback == self.image
    }
}

pub fn continuity_conditions(f: &[usize], x: &ClosureSpace, y: &ClosureSpace) -> ContinuityVerdict {
    let preimage = y.flats.iter().all(|&b| x.is_closed(preimage_mask(f, b)));
    let pullback = (0..=y.full()).all(|b| {
        let lhs = x.closure_of(preimage_mask(f, b));
        let rhs = preimage_mask(f, y.closure_of(b));
        lhs & !rhs == 0
    });
    let image = (0..=x.full()).all(|a| {
        let lhs = image_mask(f, x.closure_of(a));
        let rhs = y.closure_of(image_mask(f, a));
        lhs & !rhs == 0
    });
    ContinuityVerdict {
        preimage,
        pullback,
        image,
    }
}

/// Continuity, with the three formulations cross-checked.
pub fn is_continuous(f: &[usize], x: &ClosureSpace, y: &ClosureSpace) -> Result<bool> {
    if f.len() != x.size || f.iter().any(|&v| v >= y.size) {
        return Err(Error::InvalidInput("map does not match the ground sets".into()));
    }
    let v = continuity_conditions(f, x, y);
    if !v.agree() {
        return Err(Error::InternalDisagreement(format!("{v:?} for {f:?}")));
    }
    Ok(v.preimage)
}

/// Images of flats are flats.
pub fn is_closed_map(f: &[usize], x: &ClosureSpace, y: &ClosureSpace) -> bool {
    x.flats.iter().all(|&a| y.is_closed(image_mask(f, a)))
}

/// `σ f A ⊆ f σ A` for all `A`.
pub fn closed_map_criterion(f: &[usize], x: &ClosureSpace, y: &ClosureSpace) -> bool {
    (0..=x.full()).all(|a| {
        let lhs = y.closure_of(image_mask(f, a));
        let rhs = image_mask(f, x.closure_of(a));
        lhs & !rhs == 0
    })
}

pub type ClosureMap = Hom<ClosureSpace>;

fn cl_kernel(f: &ClosureMap) -> (ClosureSpace, PointedMap) {
    let k = f.map.kernel_elements();
    let kmask = k.iter().fold(0, |acc, &x| acc | 1 << x);
    let flats: BTreeSet<Mask> = f
        .dom
        .flats
        .iter()
        .map(|&fl| compress(fl & kmask, &k))
        .collect();
    (
        ClosureSpace {
            size: k.len(),
            flats: flats.into_iter().collect(),
        },
        inclusion(&k),
    )
}

fn cl_cokernel(f: &ClosureMap) -> (ClosureSpace, PointedMap) {
    let image = f.map.image();
    let imask = image.iter().fold(0, |acc, &y| acc | 1 << y);
    let (c, proj) = collapse(f.cod.size, &image);
    let flats: BTreeSet<Mask> = f
        .cod
        .flats
        .iter()
        .filter(|&&fl| fl & imask == imask)
        .map(|&fl| image_mask(proj.table(), fl))
        .collect();
    (
        ClosureSpace {
            size: c,
            flats: flats.into_iter().collect(),
        },
        proj,
    )
}

/// Renumber the members of `a ⊆ elems` by their position in `elems`.
fn compress(a: Mask, elems: &[usize]) -> Mask {
    elems
        .iter()
        .enumerate()
        .filter(|&(_, &e)| a >> e & 1 == 1)
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

/// `(ker f, coker f)` with the induced and quotient closure structures.
pub fn cl_ker_coker(f: &ClosureMap) -> Result<(ClosureMap, ClosureMap)> {
    if !is_continuous(f.map.table(), &f.dom, &f.cod)? {
        return Err(Error::NotContinuous);
    }
    let (k, incl) = cl_kernel(f);
    let (c, proj) = cl_cokernel(f);
    Ok((Hom::new(k, f.dom.clone(), incl), Hom::new(f.cod.clone(), c, proj)))
}

/// Pointed closure spaces `Cl_*`, or pointed matroids `Mat_*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClosureSpaces {
    pub matroids_only: bool,
}

pub fn closure_category(matroids_only: bool) -> ClosureSpaces {
    ClosureSpaces { matroids_only }
}

impl Theory for ClosureSpaces {
    type Obj = ClosureSpace;

    fn name(&self) -> String {
        if self.matroids_only { "matroid" } else { "closure" }.into()
    }

    fn carrier(&self, x: &ClosureSpace) -> usize {
        x.size
    }

    fn zero(&self) -> ClosureSpace {
        ClosureSpace {
            size: 1,
            flats: vec![1],
        }
    }

    fn is_hom(&self, x: &ClosureSpace, y: &ClosureSpace, map: &PointedMap) -> bool {
        continuity_conditions(map.table(), x, y).preimage
    }

    fn kernel_object(&self, f: &ClosureMap) -> (ClosureSpace, PointedMap) {
        cl_kernel(f)
    }

    fn cokernel_object(&self, f: &ClosureMap) -> (ClosureSpace, PointedMap) {
        cl_cokernel(f)
    }

    fn relabel(&self, x: &ClosureSpace, perm: &[usize]) -> ClosureSpace {
        let mut flats: Vec<Mask> = x.flats.iter().map(|&f| image_mask(perm, f)).collect();
        flats.sort_unstable();
        ClosureSpace { size: x.size, flats }
    }

    fn objects(&self, bound: usize) -> Vec<ClosureSpace> {
        let mut all = Vec::new();
        for size in 1..=bound {
            if self.matroids_only {
                all.extend(all_matroids(size - 1).iter().map(pointed_matroid_closure));
            } else {
                all.extend(all_pointed_closure_spaces(size));
            }
        }
        dedupe_iso(self, all)
    }

    fn pullback_object(&self, x: &ClosureSpace, y: &ClosureSpace, pairs: &[(usize, usize)]) -> Option<ClosureSpace> {
        let p1: Vec<usize> = pairs.iter().map(|p| p.0).collect();
        let p2: Vec<usize> = pairs.iter().map(|p| p.1).collect();
        let mut flats = BTreeSet::new();
        for &a in &x.flats {
            for &b in &y.flats {
                flats.insert(preimage_mask(&p1, a) & preimage_mask(&p2, b));
            }
        }
        let space = ClosureSpace {
            size: pairs.len(),
            flats: flats.into_iter().collect(),
        };
        (!self.matroids_only || check_exchange(&space)).then_some(space)
    }

    fn pushout_object(&self, f: &ClosureMap, g: &ClosureMap) -> Option<(ClosureSpace, PointedMap, PointedMap)> {
        let (part, left, right) = wedge_pushout(&f.map, f.cod.size, &g.map, g.cod.size);
        let size = part.class_count();
        let flats: Vec<Mask> = (0..=full(size))
            .filter(|&s| f.cod.is_closed(preimage_mask(left.table(), s)) && g.cod.is_closed(preimage_mask(right.table(), s)))
            .collect();
        let space = ClosureSpace { size, flats };
        (!self.matroids_only || check_exchange(&space)).then_some((space, left, right))
    }

    fn describe_obj(&self, x: &ClosureSpace) -> String {
        format!("{}{:?}", x.size, x.flats)
    }
}

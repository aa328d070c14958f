//! Functor categories `[I, C]` with componentwise kernels and cokernels,
//! quiver representations over `F1`, the adjunction between representations
//! and modules over the pointed path semigroup, and pre-crystals.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::category::{Canonical, Cocone, Cone, FiniteCategory, PointedCategory};
use crate::concrete::{collapse, dedupe_iso, inclusion, Hom, Theory};
use crate::error::{Error, Result};
use crate::psets::{FinPointedSet, PointedMap, PointedMonoid, PointedSets, PsetMap};

/// A path as a sequence of arrow indices, traversed first to last.
pub type Path = Vec<usize>;

/// `lhs = rhs`, where `rhs = None` stands for the zero morphism and an empty
/// `rhs` for the identity at the source of `lhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Path,
    pub rhs: Option<Path>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Quiver {
    pub vertices: usize,
    /// `(source, target)` per arrow.
    pub arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new(vertices: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        if arrows.iter().any(|&(s, t)| s >= vertices || t >= vertices) {
            return Err(Error::InvalidInput("arrow endpoint is not a vertex".into()));
        }
        Ok(Quiver { vertices, arrows })
    }

    /// `• -> •`.
    pub fn a2() -> Self {
        Quiver {
            vertices: 2,
            arrows: vec![(0, 1)],
        }
    }

    /// All composable paths with exactly `len` arrows.
    pub fn paths_of_length(&self, len: usize) -> Vec<Path> {
        let mut paths: Vec<Path> = vec![Vec::new()];
        for step in 0..len {
            let mut next = Vec::new();
            for p in &paths {
                for (a, &(s, _)) in self.arrows.iter().enumerate() {
                    if step == 0 || self.arrows[*p.last().unwrap()].1 == s {
                        let mut q = p.clone();
                        q.push(a);
                        next.push(q);
                    }
                }
            }
            paths = next;
        }
        if len == 0 {
            Vec::new()
        } else {
            paths
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.paths_of_length(self.vertices + 1).is_empty()
    }
}

/// A finitely presented index category: a quiver with relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexCategory {
    pub vertices: usize,
    pub arrows: Vec<(usize, usize)>,
    pub relations: Vec<Relation>,
}

impl IndexCategory {
    pub fn new(vertices: usize, arrows: Vec<(usize, usize)>, relations: Vec<Relation>) -> Result<Self> {
        let q = Quiver::new(vertices, arrows)?;
        let cat = IndexCategory {
            vertices,
            arrows: q.arrows,
            relations,
        };
        for r in &cat.relations {
            let (s, t) = cat
                .endpoints(&r.lhs)
                .ok_or_else(|| Error::InvalidInput("relation lhs is not a nonempty composable path".into()))?;
            if let Some(rhs) = &r.rhs {
                let ok = if rhs.is_empty() { s == t } else { cat.endpoints(rhs) == Some((s, t)) };
                if !ok {
                    return Err(Error::InvalidInput("relation sides have different endpoints".into()));
                }
            }
        }
        Ok(cat)
    }

    /// The terminal category `•`.
    pub fn point() -> Self {
        IndexCategory {
            vertices: 1,
            arrows: Vec::new(),
            relations: Vec::new(),
        }
    }

    /// `• -> •`.
    pub fn arrow() -> Self {
        IndexCategory::free(&Quiver::a2())
    }

    /// The path category of a quiver.
    pub fn free(q: &Quiver) -> Self {
        IndexCategory {
            vertices: q.vertices,
            arrows: q.arrows.clone(),
            relations: Vec::new(),
        }
    }

    /// One object; the non-trivial elements of the monoid are the arrows and
    /// the multiplication table supplies the relations.
    pub fn from_pointed_monoid(m: &PointedMonoid) -> Self {
        let gens = m.generators();
        let as_path = |c: usize| -> Option<Path> {
            if c == m.zero {
                None
            } else if c == m.one {
                Some(Vec::new())
            } else {
                Some(vec![gens.iter().position(|&g| g == c).unwrap()])
            }
        };
        let mut relations = Vec::new();
        for (i, &a) in gens.iter().enumerate() {
            for (j, &b) in gens.iter().enumerate() {
                // acting by a, then by b, is acting by b·a
                relations.push(Relation {
                    lhs: vec![i, j],
                    rhs: as_path(m.mul[b][a]),
                });
            }
        }
        IndexCategory {
            vertices: 1,
            arrows: vec![(0, 0); gens.len()],
            relations,
        }
    }

    pub fn endpoints(&self, p: &[usize]) -> Option<(usize, usize)> {
        let first = *p.first()?;
        let mut at = self.arrows.get(first)?.1;
        for &a in &p[1..] {
            let &(s, t) = self.arrows.get(a)?;
            if s != at {
                return None;
            }
            at = t;
        }
        Some((self.arrows[first].0, at))
    }
}

/// A functor `I -> C`: one object per vertex, one morphism per arrow.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Diagram<O, M> {
    pub objs: Vec<O>,
    pub maps: Vec<M>,
}

/// A natural transformation, one component per vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct NatTrans<O, M> {
    pub dom: Diagram<O, M>,
    pub cod: Diagram<O, M>,
    pub comps: Vec<M>,
}

/// `[I, C]` for a finite index category `I` and a base category `C`.
#[derive(Debug, Clone)]
pub struct FunctorCategory<B> {
    pub index: IndexCategory,
    pub base: B,
    pub label: String,
}

pub type Dgm<B> = Diagram<<B as PointedCategory>::Obj, <B as PointedCategory>::Mor>;
pub type Nat<B> = NatTrans<<B as PointedCategory>::Obj, <B as PointedCategory>::Mor>;

pub fn funcat_category<B: Canonical>(index: IndexCategory, base: B) -> FunctorCategory<B> {
    let label = format!("funcat[{}v{}a]:{}", index.vertices, index.arrows.len(), base.name());
    FunctorCategory { index, base, label }
}

/// `Set_*^G` for a pointed monoid `G`, as functors out of one-object `G`.
pub fn gset_category(monoid: &PointedMonoid, label: &str) -> FunctorCategory<PointedSets> {
    FunctorCategory {
        index: IndexCategory::from_pointed_monoid(monoid),
        base: PointedSets { strict_only: false },
        label: format!("gset:{label}"),
    }
}

/// `Rep(Q, F1) = [P(Q), Set_*^s]`.
pub fn quiver_rep_category(q: &Quiver, label: &str) -> FunctorCategory<PointedSets> {
    FunctorCategory {
        index: IndexCategory::free(q),
        base: PointedSets { strict_only: true },
        label: format!("quiver:{label}"),
    }
}

pub type QuiverRep = Diagram<FinPointedSet, PsetMap>;

impl<B: Canonical> FunctorCategory<B> {
    fn src(&self, a: usize) -> usize {
        self.index.arrows[a].0
    }

    fn tgt(&self, a: usize) -> usize {
        self.index.arrows[a].1
    }

    /// The image of a path (or of the identity at `v` for the empty path).
    pub fn eval_path(&self, d: &Dgm<B>, path: &[usize], v: usize) -> B::Mor {
        let mut m = self.base.identity(&d.objs[v]);
        for &a in path {
            m = self.base.compose(&d.maps[a], &m);
        }
        m
    }

    pub fn is_diagram(&self, d: &Dgm<B>) -> bool {
        if d.objs.len() != self.index.vertices || d.maps.len() != self.index.arrows.len() {
            return false;
        }
        for (a, m) in d.maps.iter().enumerate() {
            if *self.base.dom(m) != d.objs[self.src(a)] || *self.base.cod(m) != d.objs[self.tgt(a)] {
                return false;
            }
        }
        self.index.relations.iter().all(|r| self.relation_holds(d, r))
    }

    fn relation_holds(&self, d: &Dgm<B>, r: &Relation) -> bool {
        let s = self.src(r.lhs[0]);
        let lhs = self.eval_path(d, &r.lhs, s);
        match &r.rhs {
            None => self.base.is_zero(&lhs),
            Some(p) => lhs == self.eval_path(d, p, s),
        }
    }

    pub fn is_natural(&self, eta: &Nat<B>) -> bool {
        (0..self.index.arrows.len()).all(|a| self.natural_at(eta, a))
    }

    fn natural_at(&self, eta: &Nat<B>, a: usize) -> bool {
        let (s, t) = self.index.arrows[a];
        self.base.compose(&eta.cod.maps[a], &eta.comps[s]) == self.base.compose(&eta.comps[t], &eta.dom.maps[a])
    }

    /// Build and validate a natural transformation.
    pub fn nat(&self, dom: Dgm<B>, cod: Dgm<B>, comps: Vec<B::Mor>) -> Result<Nat<B>> {
        let eta = NatTrans { dom, cod, comps };
        if eta.comps.len() != self.index.vertices {
            return Err(Error::Mismatch("one component per vertex is required".into()));
        }
        if !self.is_natural(&eta) {
            return Err(Error::InvalidInput("components are not natural".into()));
        }
        Ok(eta)
    }

    /// The isomorphism key of a diagram: canonical components plus the
    /// smallest transported arrow maps over all component automorphisms.
    pub fn diagram_key(&self, d: &Dgm<B>) -> (Vec<B::Obj>, Vec<B::Mor>) {
        let canon: Vec<(B::Obj, B::Mor)> = d.objs.iter().map(|o| self.base.canonical(o)).collect();
        let transported: Vec<B::Mor> = d
            .maps
            .iter()
            .enumerate()
            .map(|(a, m)| {
                let inv = self.base.inverse(&canon[self.src(a)].1);
                self.base.compose(&canon[self.tgt(a)].1, &self.base.compose(m, &inv))
            })
            .collect();
        let reps: Vec<B::Obj> = canon.into_iter().map(|c| c.0).collect();
        if transported.is_empty() {
            return (reps, transported);
        }
        let autos: Vec<Vec<B::Mor>> = reps.iter().map(|r| self.base.automorphisms(r)).collect();
        let inv_autos: Vec<Vec<B::Mor>> = autos
            .iter()
            .map(|list| list.iter().map(|x| self.base.inverse(x)).collect())
            .collect();
        let mut best: Option<Vec<B::Mor>> = None;
        let mut choice = vec![0usize; reps.len()];
        loop {
            let cand: Vec<B::Mor> = transported
                .iter()
                .enumerate()
                .map(|(a, m)| {
                    let (s, t) = self.index.arrows[a];
                    self.base
                        .compose(&autos[t][choice[t]], &self.base.compose(m, &inv_autos[s][choice[s]]))
                })
                .collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
            let mut v = 0;
            loop {
                if v == choice.len() {
                    return (reps, best.unwrap());
                }
                choice[v] += 1;
                if choice[v] < autos[v].len() {
                    break;
                }
                choice[v] = 0;
                v += 1;
            }
        }
    }

    fn componentwise<F>(&self, mut step: F) -> Vec<B::Mor>
    where
        F: FnMut(usize) -> B::Mor,
    {
        (0..self.index.vertices).map(&mut step).collect()
    }
}

impl<B: Canonical> PointedCategory for FunctorCategory<B> {
    type Obj = Dgm<B>;
    type Mor = Nat<B>;

    fn name(&self) -> String {
        self.label.clone()
    }

    fn dom<'a>(&self, f: &'a Nat<B>) -> &'a Dgm<B> {
        &f.dom
    }

    fn cod<'a>(&self, f: &'a Nat<B>) -> &'a Dgm<B> {
        &f.cod
    }

    fn compose(&self, g: &Nat<B>, f: &Nat<B>) -> Nat<B> {
        NatTrans {
            dom: f.dom.clone(),
            cod: g.cod.clone(),
            comps: self.componentwise(|v| self.base.compose(&g.comps[v], &f.comps[v])),
        }
    }

    fn identity(&self, x: &Dgm<B>) -> Nat<B> {
        NatTrans {
            dom: x.clone(),
            cod: x.clone(),
            comps: self.componentwise(|v| self.base.identity(&x.objs[v])),
        }
    }

    fn zero_object(&self) -> Dgm<B> {
        let z = self.base.zero_object();
        Diagram {
            objs: vec![z.clone(); self.index.vertices],
            maps: vec![self.base.identity(&z); self.index.arrows.len()],
        }
    }

    fn zero_morphism(&self, x: &Dgm<B>, y: &Dgm<B>) -> Nat<B> {
        NatTrans {
            dom: x.clone(),
            cod: y.clone(),
            comps: self.componentwise(|v| self.base.zero_morphism(&x.objs[v], &y.objs[v])),
        }
    }

    fn kernel(&self, f: &Nat<B>) -> Nat<B> {
        let ks = self.componentwise(|v| self.base.kernel(&f.comps[v]));
        let maps = (0..self.index.arrows.len())
            .map(|a| {
                let (s, t) = self.index.arrows[a];
                let through = self.base.compose(&f.dom.maps[a], &ks[s]);
                self.base
                    .lift_through_mono(&ks[t], &through)
                    .expect("arrow maps restrict to kernels")
            })
            .collect();
        let k = Diagram {
            objs: ks.iter().map(|k| self.base.dom(k).clone()).collect(),
            maps,
        };
        NatTrans {
            dom: k,
            cod: f.dom.clone(),
            comps: ks,
        }
    }

    fn cokernel(&self, f: &Nat<B>) -> Nat<B> {
        let cs = self.componentwise(|v| self.base.cokernel(&f.comps[v]));
        let maps = (0..self.index.arrows.len())
            .map(|a| {
                let (s, t) = self.index.arrows[a];
                let through = self.base.compose(&cs[t], &f.cod.maps[a]);
                self.base
                    .descend_through_epi(&cs[s], &through)
                    .expect("arrow maps descend to cokernels")
            })
            .collect();
        let c = Diagram {
            objs: cs.iter().map(|c| self.base.cod(c).clone()).collect(),
            maps,
        };
        NatTrans {
            dom: f.cod.clone(),
            cod: c,
            comps: cs,
        }
    }

    fn lift_through_mono(&self, m: &Nat<B>, f: &Nat<B>) -> Option<Nat<B>> {
        let comps: Option<Vec<B::Mor>> = (0..self.index.vertices)
            .map(|v| self.base.lift_through_mono(&m.comps[v], &f.comps[v]))
            .collect();
        let eta = NatTrans {
            dom: f.dom.clone(),
            cod: m.dom.clone(),
            comps: comps?,
        };
        self.is_natural(&eta).then_some(eta)
    }

    fn descend_through_epi(&self, e: &Nat<B>, f: &Nat<B>) -> Option<Nat<B>> {
        let comps: Option<Vec<B::Mor>> = (0..self.index.vertices)
            .map(|v| self.base.descend_through_epi(&e.comps[v], &f.comps[v]))
            .collect();
        let eta = NatTrans {
            dom: e.cod.clone(),
            cod: f.cod.clone(),
            comps: comps?,
        };
        self.is_natural(&eta).then_some(eta)
    }

    fn is_mono(&self, f: &Nat<B>) -> bool {
        f.comps.iter().all(|c| self.base.is_mono(c))
    }

    fn is_epi(&self, f: &Nat<B>) -> bool {
        f.comps.iter().all(|c| self.base.is_epi(c))
    }

    fn is_iso(&self, f: &Nat<B>) -> bool {
        f.comps.iter().all(|c| self.base.is_iso(c))
    }

    fn size(&self, x: &Dgm<B>) -> usize {
        x.objs.iter().map(|o| self.base.size(o)).max().unwrap_or(1)
    }

    fn pullback(&self, f: &Nat<B>, g: &Nat<B>) -> Option<Cone<Nat<B>>> {
        let cones: Option<Vec<Cone<B::Mor>>> = (0..self.index.vertices)
            .map(|v| self.base.pullback(&f.comps[v], &g.comps[v]))
            .collect();
        let cones = cones?;
        let mut maps = Vec::with_capacity(self.index.arrows.len());
        for (a, &(s, t)) in self.index.arrows.iter().enumerate() {
            let x = self.base.compose(&f.dom.maps[a], &cones[s].left);
            let y = self.base.compose(&g.dom.maps[a], &cones[s].right);
            maps.push(self.base.pullback_mediator(&cones[t], &x, &y)?);
        }
        let apex = Diagram {
            objs: cones.iter().map(|c| self.base.dom(&c.left).clone()).collect(),
            maps,
        };
        Some(Cone {
            left: NatTrans {
                dom: apex.clone(),
                cod: f.dom.clone(),
                comps: cones.iter().map(|c| c.left.clone()).collect(),
            },
            right: NatTrans {
                dom: apex,
                cod: g.dom.clone(),
                comps: cones.into_iter().map(|c| c.right).collect(),
            },
        })
    }

    fn pullback_mediator(&self, cone: &Cone<Nat<B>>, a: &Nat<B>, b: &Nat<B>) -> Option<Nat<B>> {
        let comps: Option<Vec<B::Mor>> = (0..self.index.vertices)
            .map(|v| {
                let c = Cone {
                    left: cone.left.comps[v].clone(),
                    right: cone.right.comps[v].clone(),
                };
                self.base.pullback_mediator(&c, &a.comps[v], &b.comps[v])
            })
            .collect();
        let eta = NatTrans {
            dom: a.dom.clone(),
            cod: cone.left.dom.clone(),
            comps: comps?,
        };
        self.is_natural(&eta).then_some(eta)
    }

    fn pushout(&self, f: &Nat<B>, g: &Nat<B>) -> Option<Cocone<Nat<B>>> {
        let cocones: Option<Vec<Cocone<B::Mor>>> = (0..self.index.vertices)
            .map(|v| self.base.pushout(&f.comps[v], &g.comps[v]))
            .collect();
        let cocones = cocones?;
        let mut maps = Vec::with_capacity(self.index.arrows.len());
        for (a, &(s, t)) in self.index.arrows.iter().enumerate() {
            let y = self.base.compose(&cocones[t].left, &f.cod.maps[a]);
            let x = self.base.compose(&cocones[t].right, &g.cod.maps[a]);
            maps.push(self.base.pushout_mediator(&cocones[s], &y, &x)?);
        }
        let apex = Diagram {
            objs: cocones.iter().map(|c| self.base.cod(&c.left).clone()).collect(),
            maps,
        };
        Some(Cocone {
            left: NatTrans {
                dom: f.cod.clone(),
                cod: apex.clone(),
                comps: cocones.iter().map(|c| c.left.clone()).collect(),
            },
            right: NatTrans {
                dom: g.cod.clone(),
                cod: apex,
                comps: cocones.into_iter().map(|c| c.right).collect(),
            },
        })
    }

    fn pushout_mediator(&self, cocone: &Cocone<Nat<B>>, a: &Nat<B>, b: &Nat<B>) -> Option<Nat<B>> {
        let comps: Option<Vec<B::Mor>> = (0..self.index.vertices)
            .map(|v| {
                let c = Cocone {
                    left: cocone.left.comps[v].clone(),
                    right: cocone.right.comps[v].clone(),
                };
                self.base.pushout_mediator(&c, &a.comps[v], &b.comps[v])
            })
            .collect();
        let eta = NatTrans {
            dom: cocone.left.cod.clone(),
            cod: a.cod.clone(),
            comps: comps?,
        };
        self.is_natural(&eta).then_some(eta)
    }

    fn describe(&self, f: &Nat<B>) -> String {
        let parts: Vec<String> = f.comps.iter().map(|c| self.base.describe(c)).collect();
        format!("<{}>", parts.join(" ; "))
    }
}

impl<B: Canonical> FiniteCategory for FunctorCategory<B> {
    type Key = (Vec<B::Obj>, Vec<B::Mor>);

    fn objects(&self, bound: usize) -> Vec<Dgm<B>> {
        let base_objs = self.base.objects(bound);
        let mut found: BTreeMap<Self::Key, ()> = BTreeMap::new();
        let mut objs: Vec<B::Obj> = Vec::with_capacity(self.index.vertices);
        self.enumerate_objects(&base_objs, &mut objs, &mut found);
        found.into_keys().map(|(objs, maps)| Diagram { objs, maps }).collect()
    }

    fn hom(&self, x: &Dgm<B>, y: &Dgm<B>) -> Vec<Nat<B>> {
        let options: Vec<Vec<B::Mor>> = (0..self.index.vertices)
            .map(|v| self.base.hom(&x.objs[v], &y.objs[v]))
            .collect();
        let mut out = Vec::new();
        let mut eta = NatTrans {
            dom: x.clone(),
            cod: y.clone(),
            comps: Vec::with_capacity(self.index.vertices),
        };
        self.enumerate_homs(&options, &mut eta, &mut out);
        out
    }

    fn iso_key(&self, x: &Dgm<B>) -> Self::Key {
        self.diagram_key(x)
    }

    fn image_signature(&self, f: &Nat<B>) -> Vec<usize> {
        let mut sig = Vec::new();
        for c in &f.comps {
            sig.extend(self.base.image_signature(c));
            sig.push(usize::MAX);
        }
        sig
    }
}

impl<B: Canonical> FunctorCategory<B> {
    fn enumerate_objects(&self, base_objs: &[B::Obj], objs: &mut Vec<B::Obj>, found: &mut BTreeMap<(Vec<B::Obj>, Vec<B::Mor>), ()>) {
        if objs.len() < self.index.vertices {
            for o in base_objs {
                objs.push(o.clone());
                self.enumerate_objects(base_objs, objs, found);
                objs.pop();
            }
            return;
        }
        let options: Vec<Vec<B::Mor>> = self
            .index
            .arrows
            .iter()
            .map(|&(s, t)| self.base.hom(&objs[s], &objs[t]))
            .collect();
        let mut d = Diagram {
            objs: objs.clone(),
            maps: Vec::with_capacity(options.len()),
        };
        self.enumerate_maps(&options, &mut d, found);
    }

    fn enumerate_maps(&self, options: &[Vec<B::Mor>], d: &mut Dgm<B>, found: &mut BTreeMap<(Vec<B::Obj>, Vec<B::Mor>), ()>) {
        if d.maps.len() == options.len() {
            if self.index.relations.iter().all(|r| self.relation_holds(d, r)) {
                found.insert(self.diagram_key(d), ());
            }
            return;
        }
        for m in &options[d.maps.len()] {
            d.maps.push(m.clone());
            self.enumerate_maps(options, d, found);
            d.maps.pop();
        }
    }

    fn enumerate_homs(&self, options: &[Vec<B::Mor>], eta: &mut Nat<B>, out: &mut Vec<Nat<B>>) {
        let v = eta.comps.len();
        if v == options.len() {
            out.push(eta.clone());
            return;
        }
        for c in &options[v] {
            eta.comps.push(c.clone());
            let ok = self.index.arrows.iter().enumerate().all(|(a, &(s, t))| {
                s.max(t) != v || self.natural_at(eta, a)
            });
            if ok {
                self.enumerate_homs(options, eta, out);
            }
            eta.comps.pop();
        }
    }
}

/// A module over the pointed path semigroup of a quiver, acting by strict
/// maps, with paths longer than `path_bound` acting as zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSemigroupModule {
    pub quiver: Quiver,
    pub carrier: FinPointedSet,
    /// Action of the trivial path at each vertex.
    pub idempotents: Vec<PointedMap>,
    /// Action of each arrow.
    pub arrows: Vec<PointedMap>,
    pub path_bound: usize,
}

pub const DEFAULT_PATH_BOUND: usize = 4;

impl PathSemigroupModule {
    pub fn new(
        quiver: Quiver,
        carrier: FinPointedSet,
        idempotents: Vec<PointedMap>,
        arrows: Vec<PointedMap>,
        path_bound: usize,
    ) -> Result<Self> {
        let n = carrier.size();
        let bad = |m: &str| Err(Error::InvalidAction(m.into()));
        if idempotents.len() != quiver.vertices || arrows.len() != quiver.arrows.len() {
            return bad("one action per vertex and per arrow is required");
        }
        for m in idempotents.iter().chain(&arrows) {
            if m.len() != n || m.table().iter().any(|&x| x >= n) || !m.is_strict() {
                return bad("actions must be strict endomaps of the carrier");
            }
        }
        for (i, ei) in idempotents.iter().enumerate() {
            for (j, ej) in idempotents.iter().enumerate() {
                let expected = if i == j { ei.clone() } else { PointedMap::zero(n) };
                if ei.after(ej) != expected {
                    return bad("trivial paths are not orthogonal idempotents");
                }
            }
        }
        for (a, &(s, t)) in quiver.arrows.iter().enumerate() {
            if idempotents[t].after(&arrows[a]) != arrows[a] || arrows[a].after(&idempotents[s]) != arrows[a] {
                return bad("arrow action is not concentrated between its endpoints");
            }
        }
        let m = PathSemigroupModule {
            quiver,
            carrier,
            idempotents,
            arrows,
            path_bound,
        };
        let long = path_bound + 1;
        for p in m.quiver.paths_of_length(long) {
            if m.act_path(&p) != PointedMap::zero(n) {
                return Err(Error::PathBoundExceeded {
                    bound: path_bound,
                    length: long,
                });
            }
        }
        Ok(m)
    }

    /// Action of a nonempty path (first arrow acts first).
    pub fn act_path(&self, p: &[usize]) -> PointedMap {
        let mut m = PointedMap::identity(self.carrier.size());
        for &a in p {
            m = self.arrows[a].after(&m);
        }
        m
    }

    /// Sorted elements of `e_i M`, base point first.
    pub fn corner(&self, i: usize) -> Vec<usize> {
        let e = &self.idempotents[i];
        (0..self.carrier.size()).filter(|&m| m == 0 || e.apply(m) == m).collect()
    }
}

/// `L X`: the wedge of the `X_i` with the induced path action.
pub fn lr_left(q: &Quiver, x: &QuiverRep, path_bound: usize) -> Result<PathSemigroupModule> {
    let (carrier, offsets) = wedge_offsets(x.objs.iter().map(|o| o.size()));
    let n = carrier.size();
    let idempotents = (0..q.vertices)
        .map(|i| {
            let mut t = vec![0; n];
            for e in 1..x.objs[i].size() {
                t[offsets[i] + e] = offsets[i] + e;
            }
            PointedMap::from_table_unchecked(t)
        })
        .collect();
    let arrows = q
        .arrows
        .iter()
        .enumerate()
        .map(|(a, &(s, tv))| {
            let mut t = vec![0; n];
            for e in 1..x.objs[s].size() {
                let img = x.maps[a].apply(e);
                if img != 0 {
                    t[offsets[s] + e] = offsets[tv] + img;
                }
            }
            PointedMap::from_table_unchecked(t)
        })
        .collect();
    PathSemigroupModule::new(q.clone(), carrier, idempotents, arrows, path_bound)
}

/// `R M = (e_i M)_i`, with arrow maps restricted from the action.
pub fn lr_right(m: &PathSemigroupModule) -> QuiverRep {
    let corners: Vec<Vec<usize>> = (0..m.quiver.vertices).map(|i| m.corner(i)).collect();
    let objs: Vec<FinPointedSet> = corners.iter().map(|c| FinPointedSet::of_size(c.len())).collect();
    let maps = m
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| {
            let table = corners[s]
                .iter()
                .map(|&e| {
                    let img = m.arrows[a].apply(e);
                    corners[t].iter().position(|&c| c == img).expect("arrows land in the target corner")
                })
                .collect();
            Hom::new(objs[s], objs[t], PointedMap::from_table_unchecked(table))
        })
        .collect();
    Diagram { objs, maps }
}

/// `L X` together with the verdict that `R L X ≅ X` through the evident
/// componentwise bijection.
pub fn lr_adjunction(q: &Quiver, x: &QuiverRep, path_bound: usize) -> Result<(PathSemigroupModule, bool)> {
    let cat = quiver_rep_category(q, "lr");
    if !cat.is_diagram(x) {
        return Err(Error::InvalidInput("not a representation of the quiver".into()));
    }
    let lx = lr_left(q, x, path_bound)?;
    let rlx = lr_right(&lx);
    let comps: Vec<PsetMap> = (0..q.vertices)
        .map(|i| {
            let corner = lx.corner(i);
            let (_, offsets) = wedge_offsets(x.objs.iter().map(|o| o.size()));
            let table = (0..x.objs[i].size())
                .map(|e| if e == 0 { 0 } else { corner.iter().position(|&c| c == offsets[i] + e).unwrap() })
                .collect();
            Hom::new(x.objs[i], rlx.objs[i], PointedMap::from_table_unchecked(table))
        })
        .collect();
    let eta = NatTrans {
        dom: x.clone(),
        cod: rlx,
        comps,
    };
    let iso = cat.is_natural(&eta) && cat.is_iso(&eta);
    Ok((lx, iso))
}

/// `R M`, the counit `L R M -> M` as a map of carriers, and whether it is
/// surjective.
pub fn lr_counit(m: &PathSemigroupModule) -> (QuiverRep, PsetMap, bool) {
    let rm = lr_right(m);
    let (carrier, offsets) = wedge_offsets(rm.objs.iter().map(|o| o.size()));
    let mut table = vec![0; carrier.size()];
    for i in 0..m.quiver.vertices {
        for (e, &elt) in m.corner(i).iter().enumerate().skip(1) {
            table[offsets[i] + e] = elt;
        }
    }
    let counit = Hom::new(carrier, m.carrier, PointedMap::from_table_unchecked(table));
    let surjective = counit.map.is_surjective(m.carrier.size());
    (rm, counit, surjective)
}

fn wedge_offsets(sizes: impl Iterator<Item = usize>) -> (FinPointedSet, Vec<usize>) {
    let mut offsets = Vec::new();
    let mut total = 0;
    for s in sizes {
        offsets.push(total);
        total += s - 1;
    }
    (FinPointedSet::new(total), offsets)
}

/// A pointed set with strict endomaps `e_i`, one per index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PreCrystal {
    pub size: usize,
    pub ops: Vec<PointedMap>,
}

impl PreCrystal {
    pub fn new(size: usize, ops: Vec<Vec<usize>>) -> Result<Self> {
        let mut maps = Vec::with_capacity(ops.len());
        for t in ops {
            if t.len() != size || t.iter().any(|&x| x >= size) {
                return Err(Error::InvalidInput("operator is not an endomap of the carrier".into()));
            }
            let m = PointedMap::new(t)?;
            if !m.is_strict() {
                return Err(Error::InvalidInput("pre-crystal operators must be strict".into()));
            }
            maps.push(m);
        }
        Ok(PreCrystal { size, ops: maps })
    }

    /// The operators `f_i = e_i*`.
    pub fn duals(&self) -> Vec<PointedMap> {
        let x = FinPointedSet::of_size(self.size);
        self.ops
            .iter()
            .map(|e| crate::psets::pset_dual(&Hom::new(x, x, e.clone())).expect("strict").map)
            .collect()
    }
}

/// The weak morphism condition: `f(x) ≠ 0` and `f(ax) ≠ 0` imply
/// `f(ax) = a f(x)`.
pub fn is_precrystal_morphism(x: &PreCrystal, y: &PreCrystal, f: &PointedMap) -> bool {
    if f.len() != x.size || x.ops.len() != y.ops.len() || f.table().iter().any(|&v| v >= y.size) {
        return false;
    }
    x.ops.iter().zip(&y.ops).all(|(ex, ey)| {
        (1..x.size).all(|e| {
            let fx = f.apply(e);
            let fax = f.apply(ex.apply(e));
            fx == 0 || fax == 0 || fax == ey.apply(fx)
        })
    })
}

/// Pre-crystals with `index` operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PreCrystals {
    pub index: usize,
}

pub fn precrystal_category(index: usize) -> PreCrystals {
    PreCrystals { index }
}

pub type PreCrystalMap = Hom<PreCrystal>;

fn precrystal_kernel(f: &PreCrystalMap) -> (PreCrystal, PointedMap) {
    let k = f.map.kernel_elements();
    let ops = f
        .dom
        .ops
        .iter()
        .map(|e| {
            PointedMap::from_table_unchecked(
                k.iter()
                    .map(|&x| k.iter().position(|&y| y == e.apply(x)).unwrap_or(0))
                    .collect(),
            )
        })
        .collect();
    (PreCrystal { size: k.len(), ops }, inclusion(&k))
}

fn precrystal_cokernel(f: &PreCrystalMap) -> (PreCrystal, PointedMap) {
    let image = f.map.image();
    let (c, proj) = collapse(f.cod.size, &image);
    let ops = f
        .cod
        .ops
        .iter()
        .map(|e| {
            let mut t = vec![0; c];
            for y in 0..f.cod.size {
                let cls = proj.apply(y);
                if cls != 0 {
                    let ay = e.apply(y);
                    t[cls] = if image.contains(&ay) { 0 } else { proj.apply(ay) };
                }
            }
            PointedMap::from_table_unchecked(t)
        })
        .collect();
    (PreCrystal { size: c, ops }, proj)
}

/// `(ker f, coker f)` with the truncated operator structures.
pub fn precrystal_ker_coker(f: &PreCrystalMap) -> Result<(PreCrystalMap, PreCrystalMap)> {
    if !is_precrystal_morphism(&f.dom, &f.cod, &f.map) {
        return Err(Error::NotAPreCrystalMorphism(format!("{:?}", f.map.table())));
    }
    let (k, incl) = precrystal_kernel(f);
    let (c, proj) = precrystal_cokernel(f);
    Ok((Hom::new(k, f.dom.clone(), incl), Hom::new(f.cod.clone(), c, proj)))
}

impl Theory for PreCrystals {
    type Obj = PreCrystal;

    fn name(&self) -> String {
        format!("precrystal:{}", self.index)
    }

    fn carrier(&self, x: &PreCrystal) -> usize {
        x.size
    }

    fn zero(&self) -> PreCrystal {
        PreCrystal {
            size: 1,
            ops: vec![PointedMap::zero(1); self.index],
        }
    }

    fn is_hom(&self, x: &PreCrystal, y: &PreCrystal, map: &PointedMap) -> bool {
        is_precrystal_morphism(x, y, map)
    }

    fn kernel_object(&self, f: &PreCrystalMap) -> (PreCrystal, PointedMap) {
        precrystal_kernel(f)
    }

    fn cokernel_object(&self, f: &PreCrystalMap) -> (PreCrystal, PointedMap) {
        precrystal_cokernel(f)
    }

    fn relabel(&self, x: &PreCrystal, perm: &[usize]) -> PreCrystal {
        let inv = crate::perm::invert(perm);
        let p = PointedMap::from_table_unchecked(perm.to_vec());
        let pinv = PointedMap::from_table_unchecked(inv);
        PreCrystal {
            size: x.size,
            ops: x.ops.iter().map(|e| p.after(&e.after(&pinv))).collect(),
        }
    }

    fn objects(&self, bound: usize) -> Vec<PreCrystal> {
        let mut all = Vec::new();
        for size in 1..=bound {
            let strict: Vec<PointedMap> = crate::perm::pointed_functions(size, size)
                .into_iter()
                .map(PointedMap::from_table_unchecked)
                .filter(PointedMap::is_strict)
                .collect();
            let mut choice = vec![0usize; self.index];
            loop {
                all.push(PreCrystal {
                    size,
                    ops: choice.iter().map(|&c| strict[c].clone()).collect(),
                });
                let mut i = 0;
                while i < choice.len() {
                    choice[i] += 1;
                    if choice[i] < strict.len() {
                        break;
                    }
                    choice[i] = 0;
                    i += 1;
                }
                if i == choice.len() {
                    break;
                }
            }
        }
        dedupe_iso(self, all)
    }

    fn describe_obj(&self, x: &PreCrystal) -> String {
        let ops: Vec<String> = x.ops.iter().map(|e| format!("{:?}", e.table())).collect();
        format!("{}{{{}}}", x.size, ops.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{check_parabelian, check_proto_exact_closure};

    fn pset(size: usize) -> FinPointedSet {
        FinPointedSet::of_size(size)
    }

    fn pmap(d: usize, c: usize, t: &[usize]) -> PsetMap {
        crate::psets::pset_map(pset(d), pset(c), t.to_vec()).unwrap()
    }

    #[test]
    fn point_index_mirrors_base() {
        let cat = funcat_category(IndexCategory::point(), PointedSets::default());
        assert_eq!(cat.objects(4).len(), 4);
    }

    #[test]
    fn arrow_category_parabelian_at_three() {
        let cat = funcat_category(IndexCategory::arrow(), PointedSets::default());
        let r = check_parabelian(&cat, 3).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.checked() > 0);
    }

    #[test]
    fn a2_representations_parabelian_at_three() {
        let cat = quiver_rep_category(&Quiver::a2(), "a2");
        let r = check_parabelian(&cat, 3).unwrap();
        assert!(r.passed(), "{r}");
        let r = check_proto_exact_closure(&cat, 3).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn mu2_sets_parabelian_at_four() {
        let cat = gset_category(&PointedMonoid::mu(2), "mu2");
        let r = check_parabelian(&cat, 4).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn trivial_monoid_sets_are_pointed_sets() {
        let cat = gset_category(&PointedMonoid::trivial(), "trivial");
        assert!(cat.index.arrows.is_empty());
        assert_eq!(cat.objects(4).len(), 4);
    }

    #[test]
    fn mu2_orbit_types() {
        // sizes 1..3: {0}; {0,x}; {0,x,y} with swap or with trivial action
        let cat = gset_category(&PointedMonoid::mu(2), "mu2");
        assert_eq!(cat.objects(3).len(), 4);
    }

    #[test]
    fn kernel_in_a2_is_componentwise() {
        let cat = quiver_rep_category(&Quiver::a2(), "a2");
        let x = Diagram {
            objs: vec![pset(3), pset(2)],
            maps: vec![pmap(3, 2, &[0, 1, 0])],
        };
        let y = Diagram {
            objs: vec![pset(2), pset(2)],
            maps: vec![pmap(2, 2, &[0, 1])],
        };
        let eta = cat.nat(x, y, vec![pmap(3, 2, &[0, 1, 0]), pmap(2, 2, &[0, 1])]).unwrap();
        let k = cat.kernel(&eta);
        assert_eq!(k.comps[0].map.table(), &[0, 2]);
        assert_eq!(k.comps[1].map.table(), &[0]);
        assert!(cat.is_diagram(&k.dom));
    }

    #[test]
    fn rl_is_identity_on_a2_reps() {
        let q = Quiver::a2();
        let cat = quiver_rep_category(&q, "a2");
        for x in cat.objects(3) {
            let (_, iso) = lr_adjunction(&q, &x, DEFAULT_PATH_BOUND).unwrap();
            assert!(iso);
            let lx = lr_left(&q, &x, DEFAULT_PATH_BOUND).unwrap();
            assert!(lr_counit(&lx).2);
        }
    }

    #[test]
    fn counit_fails_to_be_onto() {
        let q = Quiver::new(2, Vec::new()).unwrap();
        let m = PathSemigroupModule::new(q, pset(2), vec![PointedMap::zero(2), PointedMap::zero(2)], Vec::new(), 4)
            .unwrap();
        let (_, _, onto) = lr_counit(&m);
        assert!(!onto);
    }

    #[test]
    fn cyclic_path_bound() {
        let q = Quiver::new(1, vec![(0, 0)]).unwrap();
        let rep = Diagram {
            objs: vec![pset(2)],
            maps: vec![pmap(2, 2, &[0, 1])],
        };
        assert_eq!(
            lr_left(&q, &rep, 4),
            Err(Error::PathBoundExceeded { bound: 4, length: 5 })
        );
        let nil = Diagram {
            objs: vec![pset(3)],
            maps: vec![pmap(3, 3, &[0, 0, 1])],
        };
        assert!(lr_left(&q, &nil, 4).is_ok());
    }

    #[test]
    fn precrystal_examples() {
        let x = PreCrystal::new(3, vec![vec![0, 2, 0]]).unwrap();
        let y = PreCrystal::new(2, vec![vec![0, 0]]).unwrap();
        let f = Hom::new(x.clone(), y, PointedMap::new(vec![0, 1, 0]).unwrap());
        let (k, c) = precrystal_ker_coker(&f).unwrap();
        assert_eq!(k.map.table(), &[0, 2]);
        assert_eq!(k.dom.ops[0].table(), &[0, 0]);
        assert_eq!(c.cod.size, 1);

        let id = Hom::new(x.clone(), x.clone(), PointedMap::identity(3));
        let (k, c) = precrystal_ker_coker(&id).unwrap();
        assert_eq!((k.dom.size, c.cod.size), (1, 1));
    }

    #[test]
    fn precrystal_rejects_bad_morphism() {
        let x = PreCrystal::new(3, vec![vec![0, 2, 0]]).unwrap();
        let y = PreCrystal::new(3, vec![vec![0, 0, 0]]).unwrap();
        let f = Hom::new(x, y, PointedMap::identity(3));
        assert!(matches!(precrystal_ker_coker(&f), Err(Error::NotAPreCrystalMorphism(_))));
    }

    #[test]
    fn precrystal_suites() {
        let cat = precrystal_category(1);
        let r = check_parabelian(&cat, 3).unwrap();
        assert!(r.passed(), "{r}");
        let r = check_proto_exact_closure(&cat, 3).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn empty_index_precrystals_are_pointed_sets() {
        let cat = precrystal_category(0);
        assert_eq!(Theory::objects(&cat, 4).len(), 4);
    }
}

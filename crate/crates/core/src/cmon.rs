//! Finite commutative monoids, congruences and saturation, modules over
//! finite semirings, and congruence generation in finite algebras.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::concrete::{dedupe_iso, inclusion, Hom, Theory};
use crate::error::{Error, Result};
use crate::partition::{Partition, UnionFind};
use crate::psets::PointedMap;

/// Commutative monoid on `0..order` with neutral element `0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FinCommMonoid {
    pub add: Vec<Vec<usize>>,
}

fn square_table(t: &[Vec<usize>], n: usize) -> bool {
    t.len() == n && t.iter().all(|r| r.len() == n && r.iter().all(|&v| v < n))
}

impl FinCommMonoid {
    pub fn new(add: Vec<Vec<usize>>) -> Result<Self> {
        let n = add.len();
        let bad = |m: &str| Err(Error::InvalidStructure(m.into()));
        if n == 0 || !square_table(&add, n) {
            return bad("addition table must be square over a nonempty carrier");
        }
        for a in 0..n {
            if add[0][a] != a {
                return bad("0 is not neutral");
            }
            for b in 0..n {
                if add[a][b] != add[b][a] {
                    return bad("addition is not commutative");
                }
                for c in 0..n {
                    if add[add[a][b]][c] != add[a][add[b][c]] {
                        return bad("addition is not associative");
                    }
                }
            }
        }
        Ok(FinCommMonoid { add })
    }

    pub fn order(&self) -> usize {
        self.add.len()
    }

    pub fn plus(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    pub fn trivial() -> Self {
        FinCommMonoid { add: vec![vec![0]] }
    }

    /// `ℤ/n`.
    pub fn cyclic(n: usize) -> Self {
        FinCommMonoid {
            add: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(),
        }
    }

    /// `B = {0, 1}` with `1 + 1 = 1`.
    pub fn boolean() -> Self {
        FinCommMonoid {
            add: vec![vec![0, 1], vec![1, 1]],
        }
    }

    /// `{0, .., cap}` with sums truncated at `cap`.
    pub fn truncated_naturals(cap: usize) -> Self {
        FinCommMonoid {
            add: (0..=cap).map(|a| (0..=cap).map(|b| (a + b).min(cap)).collect()).collect(),
        }
    }

    /// `A × B`, pairs enumerated lexicographically.
    pub fn product(a: &FinCommMonoid, b: &FinCommMonoid) -> Self {
        let (n, m) = (a.order(), b.order());
        let add = (0..n * m)
            .map(|p| (0..n * m).map(|q| a.add[p / m][q / m] * m + b.add[p % m][q % m]).collect())
            .collect();
        FinCommMonoid { add }
    }

    pub fn is_submonoid(&self, x: &[usize]) -> bool {
        x.contains(&0)
            && x.iter().all(|&v| v < self.order())
            && x.iter().all(|&a| x.iter().all(|&b| x.contains(&self.add[a][b])))
    }

    /// Submonoid generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = gens.iter().copied().collect();
        set.insert(0);
        loop {
            let new: Vec<usize> = set
                .iter()
                .flat_map(|&a| set.iter().map(move |&b| (a, b)))
                .map(|(a, b)| self.add[a][b])
                .filter(|c| !set.contains(c))
                .collect();
            if new.is_empty() {
                return set.into_iter().collect();
            }
            set.extend(new);
        }
    }

    pub fn as_algebra(&self) -> FinAlgebra {
        FinAlgebra {
            order: self.order(),
            ops: vec![Operation::binary(&self.add)],
        }
    }
}

/// `y₁ ~ y₂` iff `y₁ + x₁ = y₂ + x₂` for some `x₁, x₂ ∈ X`. The relation is
/// checked to be an equivalence and compatible with addition.
pub fn cmon_congruence(y: &FinCommMonoid, x: &[usize]) -> Result<Partition> {
    if !y.is_submonoid(x) {
        return Err(Error::NotASubmonoid);
    }
    let n = y.order();
    let mut rel = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            rel[a][b] = x.iter().any(|&x1| x.iter().any(|&x2| y.add[a][x1] == y.add[b][x2]));
        }
    }
    for a in 0..n {
        for b in 0..n {
            if !rel[a][b] {
                continue;
            }
            for c in 0..n {
                if rel[b][c] && !rel[a][c] {
                    return Err(Error::Internal("one-step relation is not transitive".into()));
                }
                if !rel[y.add[a][c]][y.add[b][c]] {
                    return Err(Error::Internal("relation is not compatible with addition".into()));
                }
            }
        }
    }
    let labels: Vec<usize> = (0..n).map(|a| (0..n).find(|&b| rel[a][b]).unwrap()).collect();
    Ok(Partition::from_labels(&labels))
}

/// `⟨X⟩`: the class of `0` under [`cmon_congruence`].
pub fn cmon_saturation(y: &FinCommMonoid, x: &[usize]) -> Result<Vec<usize>> {
    let p = cmon_congruence(y, x)?;
    Ok((0..y.order()).filter(|&a| p.same(a, 0)).collect())
}

pub fn is_saturated(y: &FinCommMonoid, x: &[usize]) -> Result<bool> {
    Ok(cmon_saturation(y, x)?.len() == x.len())
}

/// One operation of a finite algebra, as a row-major table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Operation {
    pub arity: usize,
    pub table: Vec<usize>,
}

impl Operation {
    pub fn unary(t: &[usize]) -> Self {
        Operation {
            arity: 1,
            table: t.to_vec(),
        }
    }

    pub fn binary(t: &[Vec<usize>]) -> Self {
        Operation {
            arity: 2,
            table: t.iter().flatten().copied().collect(),
        }
    }

    fn eval(&self, order: usize, args: &[usize]) -> usize {
        let idx = args.iter().fold(0, |acc, &a| acc * order + a);
        self.table[idx]
    }
}

/// A finite algebra over a finitary signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinAlgebra {
    pub order: usize,
    pub ops: Vec<Operation>,
}

impl FinAlgebra {
    pub fn new(order: usize, ops: Vec<Operation>) -> Result<Self> {
        for op in &ops {
            if op.table.len() != order.pow(op.arity as u32) || op.table.iter().any(|&v| v >= order) {
                return Err(Error::InvalidStructure("operation table does not match its arity".into()));
            }
        }
        Ok(FinAlgebra { order, ops })
    }

    pub fn is_congruence(&self, p: &Partition) -> bool {
        self.ops.iter().all(|op| {
            let k = op.arity;
            all_tuples(self.order, k).iter().all(|args| {
                (0..k).all(|i| {
                    let mut moved = args.clone();
                    moved[i] = p.representatives()[p.class_of(args[i])];
                    p.same(op.eval(self.order, args), op.eval(self.order, &moved))
                })
            })
        })
    }

    /// `A / p`, classes numbered by smallest member.
    pub fn quotient(&self, p: &Partition) -> FinAlgebra {
        let reps = p.representatives();
        let m = reps.len();
        let ops = self
            .ops
            .iter()
            .map(|op| Operation {
                arity: op.arity,
                table: all_tuples(m, op.arity)
                    .iter()
                    .map(|cls| {
                        let args: Vec<usize> = cls.iter().map(|&c| reps[c]).collect();
                        p.class_of(op.eval(self.order, &args))
                    })
                    .collect(),
            })
            .collect();
        FinAlgebra { order: m, ops }
    }
}

fn all_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |a| {
                    let mut t = t.clone();
                    t.push(a);
                    t
                })
            })
            .collect();
    }
    out
}

/// The least congruence containing `pairs`, by a union-find fixpoint.
pub fn talg_congruence_generate(a: &FinAlgebra, pairs: &[(usize, usize)]) -> Partition {
    let mut uf = UnionFind::new(a.order);
    for &(x, y) in pairs {
        uf.union(x, y);
    }
    let tuples: Vec<Vec<Vec<usize>>> = a.ops.iter().map(|op| all_tuples(a.order, op.arity)).collect();
    loop {
        let mut changed = false;
        for (op, args_list) in a.ops.iter().zip(&tuples) {
            for args in args_list {
                for i in 0..op.arity {
                    let mut moved = args.clone();
                    moved[i] = uf.find(args[i]);
                    if moved[i] != args[i] {
                        changed |= uf.union(op.eval(a.order, args), op.eval(a.order, &moved));
                    }
                }
            }
        }
        if !changed {
            return uf.partition();
        }
    }
}

/// Semiring on `0..order`: `0` neutral for `+` and absorbing for `·`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FinSemiring {
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub one: usize,
}

impl FinSemiring {
    pub fn new(add: Vec<Vec<usize>>, mul: Vec<Vec<usize>>, one: usize) -> Result<Self> {
        let monoid = FinCommMonoid::new(add)?;
        let n = monoid.order();
        let bad = |m: &str| Err(Error::InvalidStructure(m.into()));
        if !square_table(&mul, n) || one >= n {
            return bad("multiplication table must be square over the carrier");
        }
        let add = monoid.add;
        for a in 0..n {
            if mul[one][a] != a || mul[a][one] != a {
                return bad("1 is not a unit");
            }
            if mul[0][a] != 0 || mul[a][0] != 0 {
                return bad("0 is not absorbing");
            }
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return bad("multiplication is not associative");
                    }
                    if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]] || mul[add[a][b]][c] != add[mul[a][c]][mul[b][c]] {
                        return bad("distributivity fails");
                    }
                }
            }
        }
        Ok(FinSemiring { add, mul, one })
    }

    pub fn order(&self) -> usize {
        self.add.len()
    }

    /// `B`: `1 + 1 = 1`.
    pub fn boolean() -> Self {
        FinSemiring::new(vec![vec![0, 1], vec![1, 1]], vec![vec![0, 0], vec![0, 1]], 1).expect("valid")
    }

    /// `𝔽₂`.
    pub fn f2() -> Self {
        FinSemiring::new(vec![vec![0, 1], vec![1, 0]], vec![vec![0, 0], vec![0, 1]], 1).expect("valid")
    }

    /// `{0 = 1}`.
    pub fn trivial() -> Self {
        FinSemiring::new(vec![vec![0]], vec![vec![0]], 0).expect("valid")
    }
}

/// A finite module: a commutative monoid with an action `act[s][m] = s·m`.
/// Plain commutative monoids carry an empty action.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Semimodule {
    pub add: Vec<Vec<usize>>,
    pub act: Vec<Vec<usize>>,
}

impl Semimodule {
    pub fn from_monoid(m: &FinCommMonoid) -> Self {
        Semimodule {
            add: m.add.clone(),
            act: Vec::new(),
        }
    }

    pub fn new(semiring: &FinSemiring, monoid: &FinCommMonoid, act: Vec<Vec<usize>>) -> Result<Self> {
        let n = monoid.order();
        let s = semiring.order();
        let bad = |m: &str| Err(Error::InvalidModule(m.into()));
        if act.len() != s || act.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return bad("action table must have one row per scalar");
        }
        let add = &monoid.add;
        for a in 0..s {
            if act[a][0] != 0 {
                return bad("scalars must fix 0");
            }
            for m in 0..n {
                if act[0][m] != 0 {
                    return bad("0 must act as zero");
                }
                if act[semiring.one][m] != m {
                    return bad("1 must act as the identity");
                }
                for b in 0..s {
                    if act[semiring.add[a][b]][m] != add[act[a][m]][act[b][m]] {
                        return bad("(s + t)m != sm + tm");
                    }
                    if act[semiring.mul[a][b]][m] != act[a][act[b][m]] {
                        return bad("(st)m != s(tm)");
                    }
                }
                for k in 0..n {
                    if act[a][add[m][k]] != add[act[a][m]][act[a][k]] {
                        return bad("s(m + k) != sm + sk");
                    }
                }
            }
        }
        Ok(Semimodule {
            add: add.clone(),
            act,
        })
    }

    pub fn order(&self) -> usize {
        self.add.len()
    }

    pub fn monoid(&self) -> FinCommMonoid {
        FinCommMonoid { add: self.add.clone() }
    }

    pub fn as_algebra(&self) -> FinAlgebra {
        let mut ops = vec![Operation::binary(&self.add)];
        ops.extend(self.act.iter().map(|r| Operation::unary(r)));
        FinAlgebra { order: self.order(), ops }
    }

    fn restrict(&self, elems: &[usize]) -> Semimodule {
        let pos = |v: usize| elems.iter().position(|&e| e == v).expect("subset is closed");
        Semimodule {
            add: elems.iter().map(|&a| elems.iter().map(|&b| pos(self.add[a][b])).collect()).collect(),
            act: self.act.iter().map(|r| elems.iter().map(|&m| pos(r[m])).collect()).collect(),
        }
    }

    fn quotient(&self, p: &Partition) -> Semimodule {
        let reps = p.representatives();
        Semimodule {
            add: reps.iter().map(|&a| reps.iter().map(|&b| p.class_of(self.add[a][b])).collect()).collect(),
            act: self.act.iter().map(|r| reps.iter().map(|&m| p.class_of(r[m])).collect()).collect(),
        }
    }
}

pub type SemimoduleMap = Hom<Semimodule>;

pub fn is_module_hom(x: &Semimodule, y: &Semimodule, f: &PointedMap) -> bool {
    let n = x.order();
    f.len() == n
        && f.table().iter().all(|&v| v < y.order())
        && (0..n).all(|a| (0..n).all(|b| f.apply(x.add[a][b]) == y.add[f.apply(a)][f.apply(b)]))
        && x.act.len() == y.act.len()
        && x.act.iter().zip(&y.act).all(|(rx, ry)| (0..n).all(|m| f.apply(rx[m]) == ry[f.apply(m)]))
}

fn module_kernel(f: &SemimoduleMap) -> (Semimodule, PointedMap) {
    let k = f.map.kernel_elements();
    (f.dom.restrict(&k), inclusion(&k))
}

fn module_cokernel(f: &SemimoduleMap) -> (Semimodule, PointedMap) {
    let p = cmon_congruence(&f.cod.monoid(), &f.map.image()).expect("images are submonoids");
    (f.cod.quotient(&p), PointedMap::from_table_unchecked(p.labels().to_vec()))
}

/// `(ker f, coker f)`; the cokernel is the quotient by the congruence of the
/// image.
pub fn cmon_ker_coker(f: &SemimoduleMap) -> Result<(SemimoduleMap, SemimoduleMap)> {
    if !is_module_hom(&f.dom, &f.cod, &f.map) {
        return Err(Error::NotAHomomorphism);
    }
    let (k, incl) = module_kernel(f);
    let (c, proj) = module_cokernel(f);
    Ok((Hom::new(k, f.dom.clone(), incl), Hom::new(f.cod.clone(), c, proj)))
}

/// `Im(f) = ⟨f(X)⟩` as a sorted subset of the codomain.
pub fn cmon_image(f: &SemimoduleMap) -> Result<Vec<usize>> {
    if !is_module_hom(&f.dom, &f.cod, &f.map) {
        return Err(Error::NotAHomomorphism);
    }
    cmon_saturation(&f.cod.monoid(), &f.map.image())
}

/// For `X ⊆ Y ⊆ Z` with `X`, `Y` saturated in `Z`: is `Y/X -> Z/X` injective?
pub fn quotient_map_injective(z: &FinCommMonoid, y: &[usize], x: &[usize]) -> Result<bool> {
    let in_z = cmon_congruence(z, x)?;
    let ym = FinCommMonoid {
        add: Semimodule::from_monoid(z).restrict(y).add,
    };
    let x_in_y: Vec<usize> = x.iter().map(|v| y.iter().position(|w| w == v).unwrap()).collect();
    let in_y = cmon_congruence(&ym, &x_in_y)?;
    for (i, &a) in y.iter().enumerate() {
        for (j, &b) in y.iter().enumerate() {
            if in_z.same(a, b) && !in_y.same(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Every commutative monoid of the given order with neutral element `0`
/// (labeled), by backtracking with associativity pruning.
pub fn all_comm_monoids(order: usize) -> Vec<FinCommMonoid> {
    assert!(order >= 1);
    let n = order;
    let mut cells = Vec::new();
    for a in 1..n {
        for b in a..n {
            cells.push((a, b));
        }
    }
    let mut table: Vec<Vec<Option<usize>>> = vec![vec![None; n]; n];
    for a in 0..n {
        table[0][a] = Some(a);
        table[a][0] = Some(a);
    }
    let mut out = Vec::new();
    fill_monoid(&cells, 0, &mut table, &mut out);
    out
}

fn fill_monoid(cells: &[(usize, usize)], i: usize, t: &mut Vec<Vec<Option<usize>>>, out: &mut Vec<FinCommMonoid>) {
    let n = t.len();
    if i == cells.len() {
        out.push(FinCommMonoid {
            add: t.iter().map(|r| r.iter().map(|v| v.unwrap()).collect()).collect(),
        });
        return;
    }
    let (a, b) = cells[i];
    for v in 0..n {
        t[a][b] = Some(v);
        t[b][a] = Some(v);
        if partial_associative(t) {
            fill_monoid(cells, i + 1, t, out);
        }
    }
    t[a][b] = None;
    t[b][a] = None;
}

fn partial_associative(t: &[Vec<Option<usize>>]) -> bool {
    let n = t.len();
    for a in 0..n {
        for b in 0..n {
            let Some(ab) = t[a][b] else { continue };
            for c in 0..n {
                let (Some(l), Some(bc)) = (t[ab][c], t[b][c]) else { continue };
                if let Some(r) = t[a][bc] {
                    if l != r {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// `CMon` (no semiring) or `Mod(S)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semimodules {
    pub semiring: Option<FinSemiring>,
    pub label: String,
}

pub fn cmon_category() -> Semimodules {
    Semimodules {
        semiring: None,
        label: "cmon".into(),
    }
}

pub fn semiring_module_category(semiring: FinSemiring, label: &str) -> Semimodules {
    Semimodules {
        semiring: Some(semiring),
        label: format!("mod:{label}"),
    }
}

impl Semimodules {
    fn structures_on(&self, m: &FinCommMonoid) -> Vec<Semimodule> {
        let Some(s) = &self.semiring else {
            return vec![Semimodule::from_monoid(m)];
        };
        let n = m.order();
        let plain = Semimodule::from_monoid(m);
        let endos: Vec<Vec<usize>> = crate::perm::pointed_functions(n, n)
            .into_iter()
            .filter(|t| is_module_hom(&plain, &plain, &PointedMap::from_table_unchecked(t.clone())))
            .collect();
        let free: Vec<usize> = (0..s.order()).filter(|&a| a != 0 && a != s.one).collect();
        let mut out = Vec::new();
        let mut choice = vec![0usize; free.len()];
        loop {
            let mut act = vec![(0..n).collect::<Vec<usize>>(); s.order()];
            act[0] = vec![0; n];
            for (k, &a) in free.iter().enumerate() {
                act[a] = endos[choice[k]].clone();
            }
            if s.one != 0 || n == 1 {
                if let Ok(module) = Semimodule::new(s, m, act) {
                    out.push(module);
                }
            }
            let mut k = 0;
            while k < choice.len() {
                choice[k] += 1;
                if choice[k] < endos.len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == choice.len() {
                return out;
            }
        }
    }
}

impl Theory for Semimodules {
    type Obj = Semimodule;

    fn name(&self) -> String {
        self.label.clone()
    }

    fn carrier(&self, x: &Semimodule) -> usize {
        x.order()
    }

    fn zero(&self) -> Semimodule {
        let scalars = self.semiring.as_ref().map_or(0, FinSemiring::order);
        Semimodule {
            add: vec![vec![0]],
            act: vec![vec![0]; scalars],
        }
    }

    fn is_hom(&self, x: &Semimodule, y: &Semimodule, map: &PointedMap) -> bool {
        is_module_hom(x, y, map)
    }

    fn kernel_object(&self, f: &SemimoduleMap) -> (Semimodule, PointedMap) {
        module_kernel(f)
    }

    fn cokernel_object(&self, f: &SemimoduleMap) -> (Semimodule, PointedMap) {
        module_cokernel(f)
    }

    fn relabel(&self, x: &Semimodule, perm: &[usize]) -> Semimodule {
        let n = x.order();
        let inv = crate::perm::invert(perm);
        Semimodule {
            add: (0..n).map(|a| (0..n).map(|b| perm[x.add[inv[a]][inv[b]]]).collect()).collect(),
            act: x.act.iter().map(|r| (0..n).map(|m| perm[r[inv[m]]]).collect()).collect(),
        }
    }

    fn objects(&self, bound: usize) -> Vec<Semimodule> {
        let mut all = Vec::new();
        for order in 1..=bound {
            let monoids = dedupe_iso(&cmon_category(), all_comm_monoids(order).iter().map(Semimodule::from_monoid));
            for m in monoids {
                all.extend(self.structures_on(&m.monoid()));
            }
        }
        dedupe_iso(self, all)
    }

    fn pullback_object(&self, x: &Semimodule, y: &Semimodule, pairs: &[(usize, usize)]) -> Option<Semimodule> {
        let pos = |p: (usize, usize)| pairs.iter().position(|&q| q == p).expect("fibre product is a submodule");
        let add = pairs
            .iter()
            .map(|&(a, b)| pairs.iter().map(|&(c, d)| pos((x.add[a][c], y.add[b][d]))).collect())
            .collect();
        let act = x
            .act
            .iter()
            .zip(&y.act)
            .map(|(rx, ry)| pairs.iter().map(|&(a, b)| pos((rx[a], ry[b]))).collect())
            .collect();
        Some(Semimodule { add, act })
    }

    fn pushout_object(&self, f: &SemimoduleMap, g: &SemimoduleMap) -> Option<(Semimodule, PointedMap, PointedMap)> {
        // quotient of Y' ⊕ X by the congruence generated by (f'(x'), 0) ~ (0, g'(x'))
        let (y, x) = (&f.cod, &g.cod);
        let m = x.order();
        let idx = |a: usize, b: usize| a * m + b;
        let n = y.order() * m;
        let add: Vec<Vec<usize>> = (0..n)
            .map(|p| (0..n).map(|q| idx(y.add[p / m][q / m], x.add[p % m][q % m])).collect())
            .collect();
        let act: Vec<Vec<usize>> = y
            .act
            .iter()
            .zip(&x.act)
            .map(|(ry, rx)| (0..n).map(|p| idx(ry[p / m], rx[p % m])).collect())
            .collect();
        let sum = Semimodule { add, act };
        let pairs: Vec<(usize, usize)> = (0..f.map.len())
            .map(|x0| (idx(f.apply(x0), 0), idx(0, g.apply(x0))))
            .collect();
        let p = talg_congruence_generate(&sum.as_algebra(), &pairs);
        let q = sum.quotient(&p);
        let left = PointedMap::from_table_unchecked((0..y.order()).map(|a| p.class_of(idx(a, 0))).collect());
        let right = PointedMap::from_table_unchecked((0..m).map(|b| p.class_of(idx(0, b))).collect());
        Some((q, left, right))
    }

    fn describe_obj(&self, x: &Semimodule) -> String {
        format!("{:?}", x.add)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{check_parabelian, check_proto_exact_closure, classify, factorize, is_exact_pair, pushout_strict_epi};
    use crate::category::PointedCategory;

    fn module(m: &FinCommMonoid) -> Semimodule {
        Semimodule::from_monoid(m)
    }

    fn hom(x: &FinCommMonoid, y: &FinCommMonoid, t: &[usize]) -> SemimoduleMap {
        Hom::new(module(x), module(y), PointedMap::new(t.to_vec()).unwrap())
    }

    #[test]
    fn congruence_examples() {
        let b = FinCommMonoid::boolean();
        assert_eq!(cmon_congruence(&b, &[0]).unwrap().class_count(), 2);
        let z2 = FinCommMonoid::cyclic(2);
        assert_eq!(cmon_congruence(&z2, &[0]).unwrap().class_count(), 2);
        assert_eq!(cmon_congruence(&z2, &[0, 1]).unwrap().class_count(), 1);
        assert_eq!(cmon_congruence(&b, &[0, 1]).unwrap().class_count(), 1);
        assert_eq!(cmon_congruence(&b, &[1]), Err(Error::NotASubmonoid));
    }

    #[test]
    fn saturation_examples() {
        let b = FinCommMonoid::boolean();
        assert_eq!(cmon_saturation(&b, &[0]).unwrap(), vec![0]);
        let n3 = FinCommMonoid::truncated_naturals(3);
        // {0, 2, 3}: 1 + 2 = 3 lands in X, so 1 joins the saturation
        assert_eq!(cmon_saturation(&n3, &[0, 2, 3]).unwrap(), vec![0, 1, 2, 3]);
        let z4 = FinCommMonoid::cyclic(4);
        assert_eq!(cmon_saturation(&z4, &[0, 2]).unwrap(), vec![0, 2]);
    }

    #[test]
    fn fold_has_trivial_kernel_but_is_not_strict() {
        let cat = cmon_category();
        let b = FinCommMonoid::boolean();
        let b2 = FinCommMonoid::product(&b, &b);
        let fold = hom(&b2, &b, &[0, 1, 1, 1]);
        let (k, _) = cmon_ker_coker(&fold).unwrap();
        assert_eq!(k.dom.order(), 1);
        let fac = factorize(&cat, &fold).unwrap();
        assert_eq!(fac.coim.cod.order(), 4);
        assert_eq!(fac.im.dom.order(), 2);
        let c = classify(&cat, &fold).unwrap();
        assert!(c.is_epi && !c.is_mono && !c.is_strict);
    }

    #[test]
    fn image_of_non_saturated_inclusion() {
        let n3 = FinCommMonoid::truncated_naturals(3);
        let x = FinCommMonoid {
            add: module(&n3).restrict(&[0, 2, 3]).add,
        };
        let f = hom(&x, &n3, &[0, 2, 3]);
        assert_eq!(cmon_image(&f).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(f.map.image(), vec![0, 2, 3]);
        let c = classify(&cmon_category(), &f).unwrap();
        assert!(c.is_mono && !c.is_strict_mono);
    }

    #[test]
    fn identity_kernel_and_cokernel_vanish() {
        let z2 = FinCommMonoid::cyclic(2);
        let (k, c) = cmon_ker_coker(&hom(&z2, &z2, &[0, 1])).unwrap();
        assert_eq!((k.dom.order(), c.cod.order()), (1, 1));
        let bad = hom(&z2, &z2, &[0, 0]);
        assert!(cmon_ker_coker(&bad).is_ok());
        let b = FinCommMonoid::boolean();
        // 1 + 1 = 0 in ℤ/2 but 1 + 1 = 1 in B
        assert_eq!(cmon_ker_coker(&hom(&z2, &b, &[0, 1])), Err(Error::NotAHomomorphism));
    }

    #[test]
    fn pushout_of_collapse_along_identity() {
        let cat = cmon_category();
        let z2 = FinCommMonoid::cyclic(2);
        let e = hom(&z2, &FinCommMonoid::trivial(), &[0, 0]);
        let id = cat.identity(&module(&z2));
        let sq = pushout_strict_epi(&cat, &e, &id).unwrap();
        assert_eq!(sq.g.cod.order(), 1);
    }

    #[test]
    fn kernel_without_being_exact() {
        let cat = cmon_category();
        let b = FinCommMonoid::boolean();
        let b2 = FinCommMonoid::product(&b, &b);
        let zero = FinCommMonoid::trivial();
        let f = hom(&zero, &b, &[0]);
        let diag = hom(&b, &b2, &[0, 3]);
        assert!(!is_exact_pair(&cat, &f, &diag).unwrap());
        let id = hom(&b, &b, &[0, 1]);
        assert!(is_exact_pair(&cat, &f, &id).unwrap());
    }

    #[test]
    fn monoid_counts() {
        // commutative monoids of order 1..=4 up to isomorphism
        let cat = cmon_category();
        let counts: Vec<usize> = (1..=4)
            .map(|n| dedupe_iso(&cat, all_comm_monoids(n).iter().map(module)).len())
            .collect();
        assert_eq!(counts, vec![1, 2, 5, 19]);
    }

    #[test]
    fn generated_congruence_matches_one_step_relation() {
        for n in 1..=3 {
            for y in all_comm_monoids(n) {
                let alg = y.as_algebra();
                for mask in 0u32..1 << n {
                    let x = y.generated(&(0..n).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>());
                    let pairs: Vec<(usize, usize)> = x.iter().flat_map(|&a| x.iter().map(move |&b| (a, b))).collect();
                    assert_eq!(talg_congruence_generate(&alg, &pairs), cmon_congruence(&y, &x).unwrap());
                }
            }
        }
    }

    #[test]
    fn pointed_set_algebra_orbit() {
        // unary op: 1 -> 2 -> 3 -> 3, 0 fixed
        let a = FinAlgebra::new(4, vec![Operation::unary(&[0, 2, 3, 3])]).unwrap();
        let p = talg_congruence_generate(&a, &[(1, 0)]);
        assert_eq!(p.class_count(), 1);
        let p = talg_congruence_generate(&a, &[(2, 3)]);
        assert_eq!(p.labels(), &[0, 1, 2, 2]);
        assert!(a.is_congruence(&p));
        let p = talg_congruence_generate(&a, &[(1, 2)]);
        assert_eq!(p.labels(), &[0, 1, 1, 1]);
        assert_eq!(talg_congruence_generate(&a, &[]), Partition::discrete(4));
    }

    #[test]
    fn semirings() {
        assert!(FinSemiring::new(vec![vec![0, 1], vec![1, 1]], vec![vec![0, 1], vec![1, 1]], 1).is_err());
        let trivial = semiring_module_category(FinSemiring::trivial(), "trivial");
        assert_eq!(Theory::objects(&trivial, 4).len(), 1);
    }

    #[test]
    fn boolean_modules_are_semilattices() {
        let cat = semiring_module_category(FinSemiring::boolean(), "boolean");
        for m in Theory::objects(&cat, 4) {
            assert!((0..m.order()).all(|a| m.add[a][a] == a));
        }
    }

    #[test]
    fn f2_modules_are_abelian() {
        let cat = semiring_module_category(FinSemiring::f2(), "f2");
        let objs = Theory::objects(&cat, 4);
        assert_eq!(objs.len(), 3);
        for x in &objs {
            for y in &objs {
                for f in crate::category::FiniteCategory::hom(&cat, x, y) {
                    let c = classify(&cat, &f).unwrap();
                    assert_eq!(c.is_mono, c.is_strict_mono);
                    assert_eq!(c.is_epi, c.is_strict_epi);
                }
            }
        }
    }

    fn submonoids(y: &FinCommMonoid) -> Vec<Vec<usize>> {
        let n = y.order();
        let mut out: Vec<Vec<usize>> = (0u32..1 << n)
            .filter(|m| m & 1 == 1)
            .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|x| y.is_submonoid(x))
            .collect();
        out.sort();
        out
    }

    #[test]
    fn one_step_relation_is_a_congruence_up_to_order_five() {
        for n in 1..=5 {
            for y in all_comm_monoids(n) {
                for x in submonoids(&y) {
                    let sat = cmon_saturation(&y, &x).unwrap();
                    assert_eq!(cmon_saturation(&y, &sat).unwrap(), sat);
                    assert!(x.iter().all(|v| sat.contains(v)));
                }
            }
        }
    }

    #[test]
    fn quotients_of_saturated_chains_embed() {
        let cat = cmon_category();
        for n in 1..=4 {
            for z in dedupe_iso(&cat, all_comm_monoids(n).iter().map(module)) {
                let z = z.monoid();
                let sat: Vec<Vec<usize>> = submonoids(&z).into_iter().filter(|x| is_saturated(&z, x).unwrap()).collect();
                for y in &sat {
                    for x in sat.iter().filter(|x| x.iter().all(|v| y.contains(v))) {
                        assert!(quotient_map_injective(&z, y, x).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn strict_monos_are_saturated_injections() {
        let cat = cmon_category();
        let objs = Theory::objects(&cat, 4);
        for x in &objs {
            for y in &objs {
                for f in crate::category::FiniteCategory::hom(&cat, x, y) {
                    let c = classify(&cat, &f).unwrap();
                    let sat = is_saturated(&y.monoid(), &f.map.image()).unwrap();
                    assert_eq!(c.is_strict_mono, f.map.is_injective() && sat);
                    if c.is_strict_mono {
                        assert!(f.map.is_injective());
                    }
                    if c.is_strict_epi {
                        assert!(f.map.is_surjective(y.order()));
                    }
                    if f.map.is_injective() {
                        assert!(c.is_mono);
                    }
                    if f.map.is_surjective(y.order()) {
                        assert!(c.is_epi);
                    }
                }
            }
        }
    }

    #[test]
    fn cmon_suites_pass() {
        let cat = cmon_category();
        let r = check_parabelian(&cat, 4).unwrap();
        assert!(r.passed(), "{r}");
        let r = check_proto_exact_closure(&cat, 4).unwrap();
        assert!(r.passed(), "{r}");
        let bm = semiring_module_category(FinSemiring::boolean(), "boolean");
        let r = check_parabelian(&bm, 4).unwrap();
        assert!(r.passed(), "{r}");
    }
}

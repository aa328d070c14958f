//! Finite groups as a pointed category (identity element as basepoint).
//!
//! Kernels are normal subgroups and cokernels are quotients by normal
//! closures, so strict monos are normal embeddings. Normality is not
//! transitive, which is what makes this instance fail the suites. Pushouts
//! are not supplied.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::concrete::{dedupe_iso, inclusion, Hom, Theory};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::psets::PointedMap;

/// Group on `0..order` with identity `0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FinGroup {
    pub mul: Vec<Vec<usize>>,
}

impl FinGroup {
    pub fn new(mul: Vec<Vec<usize>>) -> Result<Self> {
        let n = mul.len();
        let bad = |m: &str| Err(Error::InvalidStructure(m.into()));
        if n == 0 || mul.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return bad("multiplication table must be square over a nonempty carrier");
        }
        for a in 0..n {
            if mul[0][a] != a || mul[a][0] != a {
                return bad("0 is not the identity");
            }
            if !mul[a].contains(&0) {
                return bad("element without inverse");
            }
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return bad("multiplication is not associative");
                    }
                }
            }
        }
        Ok(FinGroup { mul })
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn inv(&self, a: usize) -> usize {
        self.mul[a].iter().position(|&v| v == 0).expect("group element has an inverse")
    }

    pub fn cyclic(n: usize) -> Self {
        FinGroup {
            mul: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(),
        }
    }

    /// Elements `(a, b)` numbered `a * |H| + b`.
    pub fn product(g: &FinGroup, h: &FinGroup) -> Self {
        let m = h.order();
        let n = g.order() * m;
        FinGroup {
            mul: (0..n)
                .map(|p| (0..n).map(|q| g.mul[p / m][q / m] * m + h.mul[p % m][q % m]).collect())
                .collect(),
        }
    }

    /// Dihedral group of order `2k`: `r^i` is `i`, `r^i s` is `k + i`.
    pub fn dihedral(k: usize) -> Self {
        let n = 2 * k;
        let mul = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let (i, fa) = (a % k, a >= k);
                        let (j, fb) = (b % k, b >= k);
                        let rot = if fa { (i + k - j) % k } else { (i + j) % k };
                        if fa != fb {
                            k + rot
                        } else {
                            rot
                        }
                    })
                    .collect()
            })
            .collect();
        FinGroup { mul }
    }

    /// Quaternions `±1, ±i, ±j, ±k` in that order.
    pub fn quaternion() -> Self {
        // unit index u in {1,i,j,k} and sign
        let unit_mul = |u: usize, v: usize| -> (usize, bool) {
            match (u, v) {
                (0, x) | (x, 0) => (x, false),
                (a, b) if a == b => (0, true),
                (1, 2) => (3, false),
                (2, 3) => (1, false),
                (3, 1) => (2, false),
                (2, 1) => (3, true),
                (3, 2) => (1, true),
                (1, 3) => (2, true),
                _ => unreachable!(),
            }
        };
        let mul = (0..8)
            .map(|a: usize| {
                (0..8)
                    .map(|b: usize| {
                        let (u, s) = unit_mul(a / 2, b / 2);
                        let neg = s ^ (a % 2 == 1) ^ (b % 2 == 1);
                        2 * u + neg as usize
                    })
                    .collect()
            })
            .collect();
        FinGroup { mul }
    }

    pub fn is_subgroup(&self, s: &[usize]) -> bool {
        s.contains(&0) && s.iter().all(|&a| s.iter().all(|&b| s.contains(&self.mul[a][self.inv(b)])))
    }

    pub fn is_normal(&self, s: &[usize]) -> bool {
        self.is_subgroup(s)
            && (0..self.order()).all(|g| s.iter().all(|&a| s.contains(&self.mul[self.mul[g][a]][self.inv(g)])))
    }

    pub fn normal_closure(&self, s: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = s.iter().copied().collect();
        set.insert(0);
        loop {
            let mut grown = set.clone();
            for &a in &set {
                for g in 0..self.order() {
                    grown.insert(self.mul[self.mul[g][a]][self.inv(g)]);
                }
                for &b in &set {
                    grown.insert(self.mul[a][b]);
                }
            }
            if grown.len() == set.len() {
                return set.into_iter().collect();
            }
            set = grown;
        }
    }

    /// Cosets of a normal subgroup, classes numbered by smallest member.
    pub fn coset_partition(&self, normal: &[usize]) -> Partition {
        let labels: Vec<usize> = (0..self.order())
            .map(|a| normal.iter().map(|&h| self.mul[a][h]).min().expect("subgroup is nonempty"))
            .collect();
        Partition::from_labels(&labels)
    }

    fn restrict(&self, elems: &[usize]) -> FinGroup {
        let pos = |v: usize| elems.iter().position(|&e| e == v).expect("subgroup is closed");
        FinGroup {
            mul: elems.iter().map(|&a| elems.iter().map(|&b| pos(self.mul[a][b])).collect()).collect(),
        }
    }

    fn quotient(&self, p: &Partition) -> FinGroup {
        let reps = p.representatives();
        FinGroup {
            mul: reps.iter().map(|&a| reps.iter().map(|&b| p.class_of(self.mul[a][b])).collect()).collect(),
        }
    }

    /// A small generating set, chosen greedily by increasing element index.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        for a in 1..self.order() {
            if !span.contains(&a) {
                gens.push(a);
                span = self.generated(&gens);
            }
        }
        gens
    }

    fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::from([0]);
        let mut frontier = vec![0];
        while let Some(a) = frontier.pop() {
            for &g in gens {
                let b = self.mul[a][g];
                if set.insert(b) {
                    frontier.push(b);
                }
            }
        }
        set.into_iter().collect()
    }
}

/// Every group of order at most 8 up to isomorphism.
pub fn small_groups() -> Vec<FinGroup> {
    let c2 = FinGroup::cyclic(2);
    vec![
        FinGroup::cyclic(1),
        c2.clone(),
        FinGroup::cyclic(3),
        FinGroup::cyclic(4),
        FinGroup::product(&c2, &c2),
        FinGroup::cyclic(5),
        FinGroup::cyclic(6),
        FinGroup::dihedral(3),
        FinGroup::cyclic(7),
        FinGroup::cyclic(8),
        FinGroup::product(&FinGroup::cyclic(4), &c2),
        FinGroup::product(&FinGroup::product(&c2, &c2), &c2),
        FinGroup::dihedral(4),
        FinGroup::quaternion(),
    ]
}

pub type GroupHom = Hom<FinGroup>;

pub fn is_group_hom(x: &FinGroup, y: &FinGroup, f: &PointedMap) -> bool {
    let n = x.order();
    f.len() == n
        && f.table().iter().all(|&v| v < y.order())
        && (0..n).all(|a| (0..n).all(|b| f.apply(x.mul[a][b]) == y.mul[f.apply(a)][f.apply(b)]))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Groups;

pub fn groups_category() -> Groups {
    Groups
}

impl Theory for Groups {
    type Obj = FinGroup;

    fn name(&self) -> String {
        "groups-demo".into()
    }

    fn carrier(&self, x: &FinGroup) -> usize {
        x.order()
    }

    fn zero(&self) -> FinGroup {
        FinGroup::cyclic(1)
    }

    fn is_hom(&self, x: &FinGroup, y: &FinGroup, map: &PointedMap) -> bool {
        is_group_hom(x, y, map)
    }

    fn kernel_object(&self, f: &GroupHom) -> (FinGroup, PointedMap) {
        let k = f.map.kernel_elements();
        (f.dom.restrict(&k), inclusion(&k))
    }

    fn cokernel_object(&self, f: &GroupHom) -> (FinGroup, PointedMap) {
        let n = f.cod.normal_closure(&f.map.image());
        let p = f.cod.coset_partition(&n);
        (f.cod.quotient(&p), PointedMap::from_table_unchecked(p.labels().to_vec()))
    }

    fn relabel(&self, x: &FinGroup, perm: &[usize]) -> FinGroup {
        let inv = crate::perm::invert(perm);
        let n = x.order();
        FinGroup {
            mul: (0..n).map(|a| (0..n).map(|b| perm[x.mul[inv[a]][inv[b]]]).collect()).collect(),
        }
    }

    fn objects(&self, bound: usize) -> Vec<FinGroup> {
        dedupe_iso(self, small_groups().into_iter().filter(|g| g.order() <= bound))
    }

    /// Homomorphisms are determined by the images of generators.
    fn hom_maps(&self, x: &FinGroup, y: &FinGroup) -> Vec<PointedMap> {
        let gens = x.generators();
        let mut out = Vec::new();
        let mut imgs = vec![0usize; gens.len()];
        loop {
            if let Some(map) = extend_from_generators(x, y, &gens, &imgs) {
                out.push(map);
            }
            let mut k = 0;
            while k < imgs.len() {
                imgs[k] += 1;
                if imgs[k] < y.order() {
                    break;
                }
                imgs[k] = 0;
                k += 1;
            }
            if k == imgs.len() {
                out.sort();
                return out;
            }
        }
    }

    fn pullback_object(&self, x: &FinGroup, y: &FinGroup, pairs: &[(usize, usize)]) -> Option<FinGroup> {
        let pos = |p: (usize, usize)| pairs.iter().position(|&q| q == p).expect("fibre product is a subgroup");
        Some(FinGroup {
            mul: pairs
                .iter()
                .map(|&(a, b)| pairs.iter().map(|&(c, d)| pos((x.mul[a][c], y.mul[b][d]))).collect())
                .collect(),
        })
    }

    fn describe_obj(&self, x: &FinGroup) -> String {
        format!("group of order {}", x.order())
    }
}

fn extend_from_generators(x: &FinGroup, y: &FinGroup, gens: &[usize], imgs: &[usize]) -> Option<PointedMap> {
    let mut table: Vec<Option<usize>> = vec![None; x.order()];
    table[0] = Some(0);
    let mut frontier = vec![0];
    while let Some(a) = frontier.pop() {
        let fa = table[a].expect("visited");
        for (&g, &img) in gens.iter().zip(imgs) {
            let b = x.mul[a][g];
            let fb = y.mul[fa][img];
            match table[b] {
                Some(v) if v != fb => return None,
                Some(_) => {}
                None => {
                    table[b] = Some(fb);
                    frontier.push(b);
                }
            }
        }
    }
    let map = PointedMap::from_table_unchecked(table.into_iter().map(|v| v.expect("generators span")).collect());
    is_group_hom(x, y, &map).then_some(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{check_parabelian, check_proto_exact_closure, classify, AX_MONO_COMPOSE, AX_PUSHOUT};
    use crate::category::PointedCategory;

    #[test]
    fn small_groups_are_valid_and_distinct() {
        let all = small_groups();
        for g in &all {
            assert!(FinGroup::new(g.mul.clone()).is_ok());
        }
        let orders: Vec<usize> = all.iter().map(FinGroup::order).collect();
        assert_eq!(orders, vec![1, 2, 3, 4, 4, 5, 6, 6, 7, 8, 8, 8, 8, 8]);
        assert_eq!(Theory::objects(&Groups, 8).len(), 14);
    }

    #[test]
    fn hom_counts() {
        // |Hom(C_m, G)| = number of elements of G whose order divides m
        let d4 = FinGroup::dihedral(4);
        assert_eq!(Groups.hom_maps(&FinGroup::cyclic(2), &d4).len(), 6);
        let v4 = FinGroup::product(&FinGroup::cyclic(2), &FinGroup::cyclic(2));
        assert_eq!(Groups.hom_maps(&v4, &v4).len(), 16);
        assert_eq!(Groups.hom_maps(&FinGroup::quaternion(), &FinGroup::cyclic(2)).len(), 4);
    }

    #[test]
    fn normal_embeddings_are_strict() {
        let d4 = FinGroup::dihedral(4);
        let c2 = FinGroup::cyclic(2);
        // the reflection s = 4 generates a non-normal subgroup
        let refl = Hom::new(c2.clone(), d4.clone(), PointedMap::new(vec![0, 4]).unwrap());
        let c = classify(&Groups, &refl).unwrap();
        assert!(c.is_mono && !c.is_strict_mono);
        // the centre {1, r^2}
        let centre = Hom::new(c2, d4, PointedMap::new(vec![0, 2]).unwrap());
        assert!(classify(&Groups, &centre).unwrap().is_strict_mono);
    }

    #[test]
    fn normality_is_not_transitive() {
        let d4 = FinGroup::dihedral(4);
        let v4 = FinGroup::product(&FinGroup::cyclic(2), &FinGroup::cyclic(2));
        // {1, s} ◁ {1, r^2, s, r^2 s} ◁ D4; v4 elements (0,0),(0,1),(1,0),(1,1)
        let a = Hom::new(FinGroup::cyclic(2), v4.clone(), PointedMap::new(vec![0, 1]).unwrap());
        let b = Hom::new(v4, d4, PointedMap::new(vec![0, 4, 2, 6]).unwrap());
        assert!(classify(&Groups, &a).unwrap().is_strict_mono);
        assert!(classify(&Groups, &b).unwrap().is_strict_mono);
        assert!(!classify(&Groups, &Groups.compose(&b, &a)).unwrap().is_strict_mono);
    }

    #[test]
    fn suites_report_violations() {
        let r = check_proto_exact_closure(&Groups, 8).unwrap();
        assert!(!r.passed());
        assert!(!r.check(AX_MONO_COMPOSE).unwrap().passed());
        let r = check_parabelian(&Groups, 8).unwrap();
        assert!(!r.check(AX_PUSHOUT).unwrap().passed(), "{r}");
        assert!(check_parabelian(&Groups, 4).unwrap().passed());
    }
}

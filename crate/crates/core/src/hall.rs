//! Strict subobjects and Hall numbers in finite instances.
//!
//! `g^Z_{X,Y}` counts strict subobjects `U ⊆ Z` (strict monos up to equal
//! image) with `U ≅ X` and `Z/U ≅ Y`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::calculus::is_strict;
use crate::category::FiniteCategory;
use crate::error::{Error, Result};
use crate::report::{Check, Report};

pub const AX_HALL_ASSOC: &str = "hall-associativity";

/// A strict subobject `sub: U -> Z` with its cokernel `quotient: Z -> Z/U`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subobject<M> {
    pub sub: M,
    pub quotient: M,
}

/// All strict subobjects of `z`, one per image.
pub fn enumerate_strict_subobjects<C: FiniteCategory>(cat: &C, z: &C::Obj) -> Result<Vec<Subobject<C::Mor>>> {
    let size = cat.size(z);
    let mut seen = BTreeMap::new();
    for u in cat.objects(size) {
        if cat.size(&u) > size {
            continue;
        }
        for f in cat.hom(&u, z) {
            if !cat.is_mono(&f) {
                continue;
            }
            let sig = cat.image_signature(&f);
            if seen.contains_key(&sig) || !is_strict(cat, &f)? {
                continue;
            }
            let quotient = cat.cokernel(&f);
            seen.insert(sig, Subobject { sub: f, quotient });
        }
    }
    Ok(seen.into_values().collect())
}

/// `g^Z_{X,Y}`.
pub fn hall_number<C: FiniteCategory>(cat: &C, x: &C::Obj, y: &C::Obj, z: &C::Obj) -> Result<u64> {
    let (kx, ky) = (cat.iso_key(x), cat.iso_key(y));
    let mut count = 0;
    for s in enumerate_strict_subobjects(cat, z)? {
        if cat.iso_key(cat.dom(&s.sub)) == kx && cat.iso_key(cat.cod(&s.quotient)) == ky {
            count += 1;
        }
    }
    Ok(count)
}

/// Hall numbers between all isomorphism classes up to a bound. Classes are
/// indexed by their position in `objects`.
#[derive(Debug, Clone)]
pub struct HallTable<K> {
    pub keys: Vec<K>,
    /// `counts[z][(x, y)]`, zero entries omitted.
    pub counts: Vec<BTreeMap<(usize, usize), u64>>,
}

impl<K: Clone + Ord> HallTable<K> {
    pub fn build<C: FiniteCategory<Key = K>>(cat: &C, bound: usize) -> Result<Self> {
        let objects = cat.objects(bound);
        let keys: Vec<K> = objects.iter().map(|o| cat.iso_key(o)).collect();
        let position: BTreeMap<&K, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let locate = |o: &C::Obj| {
            position.get(&cat.iso_key(o)).copied().ok_or(Error::BoundTooSmall {
                bound,
                needed: cat.size(o),
            })
        };
        let mut counts = Vec::with_capacity(objects.len());
        for z in &objects {
            let mut row = BTreeMap::new();
            for s in enumerate_strict_subobjects(cat, z)? {
                let key = (locate(cat.dom(&s.sub))?, locate(cat.cod(&s.quotient))?);
                *row.entry(key).or_insert(0) += 1;
            }
            counts.push(row);
        }
        Ok(HallTable { keys, counts })
    }

    pub fn get(&self, z: usize, x: usize, y: usize) -> u64 {
        self.counts[z].get(&(x, y)).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// `(z, x, y, count)` for every nonzero entry, in index order.
    pub fn rows(&self) -> Vec<(usize, usize, usize, u64)> {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(z, row)| row.iter().map(move |(&(x, y), &c)| (z, x, y, c)))
            .collect()
    }

    /// `Σ_M g^Z_{X,M} g^M_{Y,W} = Σ_N g^N_{X,Y} g^Z_{N,W}` for all classes.
    pub fn associativity(&self, name: &str) -> Report {
        let n = self.len();
        let mut check = Check::new(AX_HALL_ASSOC);
        for z in 0..n {
            for x in 0..n {
                for y in 0..n {
                    for w in 0..n {
                        let lhs: u64 = (0..n).map(|m| self.get(z, x, m) * self.get(m, y, w)).sum();
                        let rhs: u64 = (0..n).map(|k| self.get(k, x, y) * self.get(z, k, w)).sum();
                        check.record(lhs == rhs, || format!("Z#{z} X#{x} Y#{y} W#{w}: {lhs} != {rhs}"));
                    }
                }
            }
        }
        let mut report = Report::new(name);
        report.note("classes", n);
        report.push(check);
        report
    }
}

pub fn hall_associativity_check<C: FiniteCategory>(cat: &C, bound: usize) -> Result<Report> {
    let table = HallTable::build(cat, bound)?;
    let mut report = table.associativity(&cat.name());
    report.note("bound", bound);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use crate::cmon::{cmon_category, cmon_saturation, FinCommMonoid};
    use crate::psets::{pset_category, FinPointedSet};

    fn binomial(n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn pointed_set_subobjects() {
        let cat = pset_category(false);
        assert_eq!(enumerate_strict_subobjects(&cat, &FinPointedSet { n: 2 }).unwrap().len(), 4);
        assert_eq!(enumerate_strict_subobjects(&cat, &FinPointedSet { n: 0 }).unwrap().len(), 1);
        let p = |n| FinPointedSet { n };
        assert_eq!(hall_number(&cat, &p(1), &p(1), &p(2)).unwrap(), 2);
    }

    #[test]
    fn binomial_oracle() {
        let cat = pset_category(false);
        let p = |n| FinPointedSet { n };
        for n in 0..=5usize {
            for k in 0..=n {
                assert_eq!(hall_number(&cat, &p(k), &p(n - k), &p(n)).unwrap(), binomial(n as u64, k as u64));
                if k < n {
                    assert_eq!(hall_number(&cat, &p(k), &p(n - k - 1), &p(n)).unwrap(), 0);
                }
            }
        }
    }

    #[test]
    fn trivial_sub_and_quotient() {
        let cat = cmon_category();
        let objects = cat.objects(3);
        let zero = crate::category::PointedCategory::zero_object(&cat);
        for z in &objects {
            for y in &objects {
                let iso = cat.iso_key(y) == cat.iso_key(z);
                assert_eq!(hall_number(&cat, &zero, y, z).unwrap(), iso as u64);
                assert_eq!(hall_number(&cat, y, &zero, z).unwrap(), iso as u64);
            }
        }
    }

    #[test]
    fn cmon_subobjects_are_saturated() {
        let cat = cmon_category();
        for z in cat.objects(4) {
            let mut found: Vec<Vec<usize>> = enumerate_strict_subobjects(&cat, &z)
                .unwrap()
                .iter()
                .map(|s| cat.image_signature(&s.sub))
                .collect();
            found.sort();
            let y: &FinCommMonoid = &z.monoid();
            let mut expected: Vec<Vec<usize>> = (0u32..1 << y.order())
                .filter(|mask| mask & 1 == 1)
                .map(|mask| (0..y.order()).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>())
                .filter(|x| y.is_submonoid(x) && cmon_saturation(y, x).unwrap() == *x)
                .collect();
            expected.sort();
            assert_eq!(found, expected, "{z:?}");
        }
        let z2 = crate::cmon::Semimodule::from_monoid(&FinCommMonoid::cyclic(2));
        // 0 and ℤ/2 itself; {0} is saturated in a group
        assert_eq!(enumerate_strict_subobjects(&cat, &z2).unwrap().len(), 2);
    }

    #[test]
    fn table_sums_and_associativity() {
        let cat = pset_category(false);
        let table = HallTable::build(&cat, 4).unwrap();
        for (z, row) in table.counts.iter().enumerate() {
            let total: u64 = row.values().sum();
            assert_eq!(total, 1 << z);
        }
        assert!(table.associativity("psets").passed());
        assert!(hall_associativity_check(&pset_category(true), 4).unwrap().passed());
        assert!(HallTable::build(&cat, 0).unwrap().is_empty());
        assert_eq!(HallTable::build(&cat, 1).unwrap().rows(), vec![(0, 0, 0, 1)]);
    }
}

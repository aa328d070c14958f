//! Canonical union-find partitions. The representative of every class is its
//! smallest element, so quotients are named reproducibly.

use alloc::vec::Vec;

#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merge the classes of `a` and `b`; true if they were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    pub fn partition(&mut self) -> Partition {
        let n = self.parent.len();
        let roots: Vec<usize> = (0..n).map(|x| self.find(x)).collect();
        Partition::from_roots(&roots)
    }
}

/// A partition stored as class labels `0..k`, numbered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    labels: Vec<usize>,
}

impl Partition {
    pub fn discrete(n: usize) -> Self {
        Partition {
            labels: (0..n).collect(),
        }
    }

    /// Canonicalize arbitrary labels (equal labels mean same class).
    pub fn from_labels(raw: &[usize]) -> Self {
        let mut seen: Vec<(usize, usize)> = Vec::new();
        let mut labels = Vec::with_capacity(raw.len());
        for &r in raw {
            let id = match seen.iter().find(|(k, _)| *k == r) {
                Some((_, id)) => *id,
                None => {
                    let id = seen.len();
                    seen.push((r, id));
                    id
                }
            };
            labels.push(id);
        }
        Partition { labels }
    }

    fn from_roots(roots: &[usize]) -> Self {
        Self::from_labels(roots)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.labels[x]
    }

    pub fn class_count(&self) -> usize {
        self.labels.iter().copied().max().map_or(0, |m| m + 1)
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.labels[a] == self.labels[b]
    }

    /// Members of each class, classes ordered by label.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = alloc::vec![Vec::new(); self.class_count()];
        for (x, &l) in self.labels.iter().enumerate() {
            out[l].push(x);
        }
        out
    }

    /// Smallest member of each class.
    pub fn representatives(&self) -> Vec<usize> {
        self.classes().iter().map(|c| c[0]).collect()
    }

    /// True if every class of `self` lies inside a class of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        (0..self.len()).all(|a| (0..self.len()).all(|b| !self.same(a, b) || other.same(a, b)))
    }
}

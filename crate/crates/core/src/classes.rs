use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Elem, Group, Subgroup};

const UNASSIGNED: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    /// Least element index in the class.
    pub rep: Elem,
    pub size: usize,
}

/// Conjugacy classes with an element-to-class lookup.
///
/// Classes are numbered by increasing representative, and every representative
/// is the least element of its class.
#[derive(Clone, Debug)]
pub struct ClassSet {
    classes: Vec<ClassInfo>,
    class_of: Vec<u32>,
    conjugator: Vec<Elem>,
}

impl ClassSet {
    /// Number of classes, `k(G)`.
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn class_of(&self, x: Elem) -> usize {
        self.class_of[x as usize] as usize
    }

    pub fn rep_of(&self, x: Elem) -> Elem {
        self.classes[self.class_of(x)].rep
    }

    /// An element `h` with `rep^h = x`.
    pub fn conjugator(&self, x: Elem) -> Elem {
        self.conjugator[x as usize]
    }

    pub fn reps(&self) -> impl Iterator<Item = Elem> + '_ {
        self.classes.iter().map(|c| c.rep)
    }

    pub fn sorted_sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.classes.iter().map(|c| c.size).collect();
        sizes.sort_unstable();
        sizes
    }
}

/// Partitions `g` into conjugacy classes by orbit search under generator
/// conjugation, always starting from the least unassigned element.
pub fn conjugacy_classes<G: Group>(g: &G) -> ClassSet {
    let n = g.order();
    let e = g.identity();
    let mut class_of = vec![UNASSIGNED; n];
    let mut conjugator = vec![e; n];
    let mut classes = Vec::new();
    let gens = g.generators();
    let mut queue = VecDeque::new();
    for x in 0..n as Elem {
        if class_of[x as usize] != UNASSIGNED {
            continue;
        }
        let id = classes.len() as u32;
        class_of[x as usize] = id;
        let mut size = 1;
        queue.push_back(x);
        while let Some(y) = queue.pop_front() {
            for &s in gens {
                let z = g.conj(y, s);
                if class_of[z as usize] == UNASSIGNED {
                    class_of[z as usize] = id;
                    conjugator[z as usize] = g.mul(conjugator[y as usize], s);
                    size += 1;
                    queue.push_back(z);
                }
            }
        }
        classes.push(ClassInfo { rep: x, size });
    }
    ClassSet { classes, class_of, conjugator }
}

/// `C_G(x)`.
pub fn centralizer<G: Group>(g: &G, x: Elem) -> Result<Subgroup> {
    if x as usize >= g.order() {
        return Err(Error::ElementNotInGroup);
    }
    let members = (0..g.order() as Elem).filter(|&h| g.commutes(h, x)).collect();
    Ok(Subgroup::from_members_unchecked(g, members))
}

/// `|C_G(x)|` without materializing the subgroup.
pub fn centralizer_order<G: Group>(g: &G, x: Elem) -> usize {
    (0..g.order() as Elem).filter(|&h| g.commutes(h, x)).count()
}

/// Isomorphism invariants used in place of isomorphism tests.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFingerprint {
    pub order: usize,
    pub class_sizes: Vec<usize>,
    pub order_histogram: BTreeMap<u64, usize>,
}

pub fn fingerprint<G: Group>(g: &G) -> GroupFingerprint {
    let classes = conjugacy_classes(g);
    fingerprint_with(g, &classes)
}

pub fn fingerprint_with<G: Group>(g: &G, classes: &ClassSet) -> GroupFingerprint {
    let mut order_histogram = BTreeMap::new();
    for c in classes.classes() {
        *order_histogram.entry(g.element_order(c.rep)).or_insert(0) += c.size;
    }
    GroupFingerprint { order: g.order(), class_sizes: classes.sorted_sizes(), order_histogram }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::FiniteGroup;
    use crate::DEFAULT_CAP;

    #[test]
    fn symmetric_class_counts() {
        for (n, k) in [(3, 3), (4, 5), (5, 7)] {
            let g = FiniteGroup::symmetric(n, DEFAULT_CAP).unwrap();
            let cs = conjugacy_classes(&g);
            assert_eq!(cs.len(), k);
            assert_eq!(cs.classes().iter().map(|c| c.size).sum::<usize>(), g.order());
        }
    }

    #[test]
    fn conjugators_are_witnesses() {
        let g = FiniteGroup::symmetric(4, DEFAULT_CAP).unwrap();
        let cs = conjugacy_classes(&g);
        for x in 0..g.order() as Elem {
            assert_eq!(g.conj(cs.rep_of(x), cs.conjugator(x)), x);
            assert!(cs.rep_of(x) <= x);
        }
    }

    #[test]
    fn centralizers() {
        let s3 = FiniteGroup::symmetric(3, DEFAULT_CAP).unwrap();
        let c = s3.index_of(&crate::Permutation::parse("(0 1 2)", 3).unwrap()).unwrap();
        assert_eq!(centralizer(&s3, c).unwrap().order(), 3);
        assert_eq!(centralizer(&s3, 0).unwrap().order(), 6);
        assert_eq!(centralizer(&s3, 99), Err(Error::ElementNotInGroup));
        let q8 = FiniteGroup::quaternion(DEFAULT_CAP).unwrap();
        let minus_one = (0..8).find(|&x| q8.element_order(x) == 2).unwrap();
        assert_eq!(centralizer(&q8, minus_one).unwrap().order(), 8);
    }

    #[test]
    fn fingerprints_separate_c4_and_klein() {
        let c4 = FiniteGroup::cyclic(4, DEFAULT_CAP).unwrap();
        let c2 = FiniteGroup::cyclic(2, DEFAULT_CAP).unwrap();
        let v4 = FiniteGroup::direct_product(&c2, &c2, DEFAULT_CAP).unwrap();
        assert_eq!(fingerprint(&c4).class_sizes, fingerprint(&v4).class_sizes);
        assert_ne!(fingerprint(&c4), fingerprint(&v4));
    }
}

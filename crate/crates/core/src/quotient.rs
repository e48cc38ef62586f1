use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::{Elem, Group, Subgroup};
use crate::perm::Permutation;
use crate::permgroup::FiniteGroup;

/// Right cosets `Nx`, numbered by their least element.
#[derive(Clone, Debug)]
pub struct CosetTable {
    coset_of: Vec<u32>,
    reps: Vec<Elem>,
}

impl CosetTable {
    pub fn new<G: Group>(g: &G, n: &Subgroup) -> Self {
        let mut coset_of = vec![u32::MAX; g.order()];
        let mut reps = Vec::with_capacity(g.order() / n.order());
        for x in 0..g.order() as Elem {
            if coset_of[x as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for &m in n.members() {
                coset_of[g.mul(m, x) as usize] = id;
            }
        }
        Self { coset_of, reps }
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }

    pub fn coset_of(&self, x: Elem) -> Elem {
        self.coset_of[x as usize]
    }

    pub fn rep(&self, c: Elem) -> Elem {
        self.reps[c as usize]
    }

    pub fn reps(&self) -> &[Elem] {
        &self.reps
    }
}

/// `G/N` as a group on coset indices.
pub struct Quotient<'a, G: Group> {
    parent: &'a G,
    table: CosetTable,
    gens: Vec<Elem>,
    identity: Elem,
}

impl<'a, G: Group> Quotient<'a, G> {
    pub fn new(g: &'a G, n: &Subgroup) -> Result<Self> {
        if !n.is_normal() {
            return Err(Error::NotNormal);
        }
        let table = CosetTable::new(g, n);
        let identity = table.coset_of(g.identity());
        let mut gens: Vec<Elem> = g.generators().iter().map(|&s| table.coset_of(s)).filter(|&c| c != identity).collect();
        gens.sort_unstable();
        gens.dedup();
        Ok(Self { parent: g, table, gens, identity })
    }

    pub fn project(&self, x: Elem) -> Elem {
        self.table.coset_of(x)
    }

    pub fn table(&self) -> &CosetTable {
        &self.table
    }

    pub fn parent(&self) -> &'a G {
        self.parent
    }
}

impl<G: Group> Group for Quotient<'_, G> {
    fn order(&self) -> usize {
        self.table.index()
    }
    fn identity(&self) -> Elem {
        self.identity
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table.coset_of(self.parent.mul(self.table.rep(a), self.table.rep(b)))
    }
    fn inv(&self, a: Elem) -> Elem {
        self.table.coset_of(self.parent.inv(self.table.rep(a)))
    }
    fn generators(&self) -> &[Elem] {
        &self.gens
    }
}

/// `G/N` realized as a permutation group through the regular action on cosets.
pub struct QuotientGroup {
    pub group: FiniteGroup,
    table: CosetTable,
}

impl QuotientGroup {
    /// The coset permutation of `x`, as an element of `group`.
    pub fn project<G: Group>(&self, g: &G, x: Elem) -> Elem {
        let perm = coset_permutation(g, &self.table, x);
        self.group.index_of(&perm).expect("coset action lands in the quotient")
    }

    pub fn table(&self) -> &CosetTable {
        &self.table
    }
}

fn coset_permutation<G: Group>(g: &G, table: &CosetTable, x: Elem) -> Permutation {
    let images = table.reps().iter().map(|&r| table.coset_of(g.mul(r, x))).collect();
    Permutation::from_images(images).expect("right multiplication permutes cosets")
}

pub fn quotient_group<G: Group>(g: &G, n: &Subgroup, cap: usize) -> Result<QuotientGroup> {
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    let table = CosetTable::new(g, n);
    let gens: Vec<Permutation> = g.generators().iter().map(|&s| coset_permutation(g, &table, s)).collect();
    let group = FiniteGroup::from_generators(&format!("quotient of index {}", table.index()), table.index(), &gens, cap)?;
    Ok(QuotientGroup { group, table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::conjugacy_classes;
    use crate::DEFAULT_CAP;

    #[test]
    fn s4_mod_klein() {
        let s4 = FiniteGroup::symmetric(4, DEFAULT_CAP).unwrap();
        let v4: Vec<Elem> = ["(0 1)(2 3)", "(0 2)(1 3)"]
            .iter()
            .map(|c| s4.index_of(&Permutation::parse(c, 4).unwrap()).unwrap())
            .collect();
        let v4 = Subgroup::generated(&s4, &v4);
        assert!(v4.is_normal());
        let q = quotient_group(&s4, &v4, DEFAULT_CAP).unwrap();
        assert_eq!(q.group.order(), 6);
        assert_eq!(conjugacy_classes(&q.group).len(), 3);
        let abstract_q = Quotient::new(&s4, &v4).unwrap();
        assert_eq!(conjugacy_classes(&abstract_q).len(), 3);
        // the projection is a homomorphism
        for a in [1, 5, 9] {
            for b in [2, 7, 20] {
                assert_eq!(q.project(&s4, s4.mul(a, b)), q.group.mul(q.project(&s4, a), q.project(&s4, b)));
            }
        }
    }

    #[test]
    fn rejects_non_normal() {
        let s3 = FiniteGroup::symmetric(3, DEFAULT_CAP).unwrap();
        let t = s3.index_of(&Permutation::parse("(0 1)", 3).unwrap()).unwrap();
        let h = Subgroup::generated(&s3, &[t]);
        assert!(matches!(quotient_group(&s3, &h, DEFAULT_CAP), Err(Error::NotNormal)));
        assert!(matches!(Quotient::new(&s3, &h), Err(Error::NotNormal)));
        let whole = Subgroup::whole(&s3);
        assert_eq!(quotient_group(&s3, &whole, DEFAULT_CAP).unwrap().group.order(), 1);
    }
}

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::classes::{conjugacy_classes, ClassSet};
use crate::error::{Error, Result};
use crate::group::{Elem, Group, Subgroup};

/// Largest `|N|` for which the quadratic averaging oracle runs.
pub const AVG_ORACLE_CAP: usize = 5000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FixedMethod {
    Direct,
    Averaging,
}

/// The classes of `N` fixed setwise by conjugation with `actor`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedClassReport {
    pub actor: Elem,
    pub fixed_class_ids: Vec<usize>,
    pub count: usize,
    pub method: FixedMethod,
}

/// `N`-conjugation orbits on the coset `gN`, in context indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetOrbitSet {
    pub coset_rep: Elem,
    pub orbits: Vec<Vec<Elem>>,
}

impl CosetOrbitSet {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }
}

pub fn check_invariant<G: Group>(ctx: &G, n: &Subgroup, g: Elem) -> Result<()> {
    if g as usize >= ctx.order() {
        return Err(Error::ElementNotInGroup);
    }
    if n.normalized_by(ctx, g) {
        Ok(())
    } else {
        Err(Error::NotInvariant)
    }
}

/// Classes of a subgroup `N` of a context group, reusable across many actors.
pub struct FixedClassEngine<'a, G: Group> {
    ctx: &'a G,
    n: &'a Subgroup,
    classes: ClassSet,
}

impl<'a, G: Group> FixedClassEngine<'a, G> {
    pub fn new(ctx: &'a G, n: &'a Subgroup) -> Self {
        let classes = conjugacy_classes(&n.view(ctx));
        Self { ctx, n, classes }
    }

    pub fn classes(&self) -> &ClassSet {
        &self.classes
    }

    /// `k(N)`.
    pub fn k(&self) -> usize {
        self.classes.len()
    }

    pub fn report(&self, g: Elem) -> Result<FixedClassReport> {
        check_invariant(self.ctx, self.n, g)?;
        let members = self.n.members();
        let fixed_class_ids: Vec<usize> = self
            .classes
            .classes()
            .iter()
            .enumerate()
            .filter(|(id, c)| {
                let y = self.ctx.conj(members[c.rep as usize], g);
                let local = self.n.local_index(y).expect("N is g-invariant");
                self.classes.class_of(local) == *id
            })
            .map(|(id, _)| id)
            .collect();
        Ok(FixedClassReport { actor: g, count: fixed_class_ids.len(), fixed_class_ids, method: FixedMethod::Direct })
    }

    pub fn count(&self, g: Elem) -> Result<usize> {
        Ok(self.report(g)?.count)
    }
}

/// `|C_cl(N)(g)|` by conjugating canonical class representatives.
pub fn fixed_classes<G: Group>(ctx: &G, n: &Subgroup, g: Elem) -> Result<FixedClassReport> {
    FixedClassEngine::new(ctx, n).report(g)
}

/// `|C_cl(N)(g)| = (1/|N|) Σ_{n∈N} |C_N(gn)|`, computed without any class data.
pub fn fixed_classes_avg_oracle<G: Group>(ctx: &G, n: &Subgroup, g: Elem, cap: usize) -> Result<usize> {
    check_invariant(ctx, n, g)?;
    if n.order() > cap {
        return Err(Error::CapExceeded { cap });
    }
    let members = n.members();
    let mut total = 0usize;
    for &m in members {
        let a = ctx.mul(g, m);
        total += members.iter().filter(|&&h| ctx.commutes(h, a)).count();
    }
    if !total.is_multiple_of(n.order()) {
        return Err(Error::InvalidInput("centralizer sum is not divisible by |N|".into()));
    }
    Ok(total / n.order())
}

/// Orbits of `N` acting by conjugation on `gN`.
pub fn coset_conjugation_orbits<G: Group>(ctx: &G, n: &Subgroup, g: Elem) -> Result<CosetOrbitSet> {
    check_invariant(ctx, n, g)?;
    let members = n.members();
    let ginv = ctx.inv(g);
    let position = |a: Elem| n.local_index(ctx.mul(ginv, a)).expect("gN is N-invariant") as usize;
    let mut seen = vec![false; members.len()];
    let mut orbits = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..members.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let a0 = ctx.mul(g, members[start]);
        let mut orbit = vec![a0];
        queue.push_back(a0);
        while let Some(a) = queue.pop_front() {
            for &s in n.generators() {
                let b = ctx.conj(a, s);
                let pos = position(b);
                if !seen[pos] {
                    seen[pos] = true;
                    orbit.push(b);
                    queue.push_back(b);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits.sort_unstable();
    Ok(CosetOrbitSet { coset_rep: g, orbits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;
    use crate::permgroup::FiniteGroup;
    use crate::DEFAULT_CAP;

    fn elem(g: &FiniteGroup, s: &str) -> Elem {
        g.index_of(&Permutation::parse(s, g.degree()).unwrap()).unwrap()
    }

    #[test]
    fn example_03a() {
        let s3 = FiniteGroup::symmetric(3, DEFAULT_CAP).unwrap();
        let c2 = FiniteGroup::cyclic(2, DEFAULT_CAP).unwrap();
        let w = FiniteGroup::wreath_product(&s3, &c2, DEFAULT_CAP).unwrap();
        let n = Subgroup::generated(&w, &[elem(&w, "(0 1 2)"), elem(&w, "(3 4 5)"), elem(&w, "(0 1)(3 4)")]);
        assert_eq!(n.order(), 18);
        let swap = elem(&w, "(0 3)(1 4)(2 5)");
        let engine = FixedClassEngine::new(&w, &n);
        assert_eq!(engine.k(), 6);
        assert_eq!(engine.count(swap).unwrap(), 4);
        assert_eq!(fixed_classes_avg_oracle(&w, &n, swap, AVG_ORACLE_CAP).unwrap(), 4);
        assert_eq!(coset_conjugation_orbits(&w, &n, swap).unwrap().len(), 4);
    }

    #[test]
    fn identity_fixes_everything() {
        let s4 = FiniteGroup::symmetric(4, DEFAULT_CAP).unwrap();
        let a4 = Subgroup::generated(&s4, &[elem(&s4, "(0 1 2)"), elem(&s4, "(1 2 3)")]);
        assert_eq!(fixed_classes(&s4, &a4, 0).unwrap().count, 4);
        let t = elem(&s4, "(0 1)");
        let orbits = coset_conjugation_orbits(&s4, &a4, t).unwrap();
        assert_eq!(orbits.orbits.iter().map(|o| o.len()).sum::<usize>(), 12);
        assert_eq!(orbits.len(), fixed_classes(&s4, &a4, t).unwrap().count);
    }

    #[test]
    fn invariance_is_checked() {
        let s3 = FiniteGroup::symmetric(3, DEFAULT_CAP).unwrap();
        let h = Subgroup::generated(&s3, &[elem(&s3, "(0 1)")]);
        let g = elem(&s3, "(0 1 2)");
        assert_eq!(fixed_classes(&s3, &h, g).unwrap_err(), Error::NotInvariant);
        assert_eq!(coset_conjugation_orbits(&s3, &h, g).unwrap_err(), Error::NotInvariant);
    }
}

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{closure, Elem, Group, Subgroup};

/// Largest group order for which every subgroup is enumerated.
pub const EXHAUSTIVE_LIMIT: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleStrategy {
    AllCyclic,
    /// `count` subgroups, each generated by `k` uniformly random elements.
    RandomGenerated { k: usize, count: usize },
    Exhaustive,
}

/// The seeded generator used for every random choice in the crate.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Samples subgroups of `g`. Cyclic and exhaustive results come sorted by
/// order, then by member list; random results keep their generation order.
pub fn subgroup_sample<G: Group>(g: &G, strategy: SampleStrategy, seed: u64) -> Result<Vec<Subgroup>> {
    match strategy {
        SampleStrategy::AllCyclic => Ok(finish(g, cyclic_member_sets(g))),
        SampleStrategy::Exhaustive => {
            if g.order() > EXHAUSTIVE_LIMIT {
                return Err(Error::CapExceeded { cap: EXHAUSTIVE_LIMIT });
            }
            Ok(finish(g, all_member_sets(g)))
        }
        SampleStrategy::RandomGenerated { k, count } => {
            let mut rng = rng(seed);
            let n = g.order() as Elem;
            Ok((0..count)
                .map(|_| {
                    let gens: Vec<Elem> = (0..k).map(|_| rng.gen_range(0..n)).collect();
                    Subgroup::generated(g, &gens)
                })
                .collect())
        }
    }
}

fn cyclic_member_sets<G: Group>(g: &G) -> BTreeSet<Vec<Elem>> {
    (0..g.order() as Elem).map(|x| closure(g, &[x])).collect()
}

fn all_member_sets<G: Group>(g: &G) -> BTreeSet<Vec<Elem>> {
    let cyclic: Vec<(Elem, Vec<Elem>)> = {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for x in 0..g.order() as Elem {
            let c = closure(g, &[x]);
            if seen.insert(c.clone()) {
                out.push((x, c));
            }
        }
        out
    };
    let mut found: BTreeSet<Vec<Elem>> = cyclic.iter().map(|(_, c)| c.clone()).collect();
    let mut work: Vec<Vec<Elem>> = found.iter().cloned().collect();
    while let Some(s) = work.pop() {
        for (x, c) in &cyclic {
            if s.binary_search(x).is_ok() || c.len() == 1 {
                continue;
            }
            let mut gens = generating_set(g, &s);
            gens.push(*x);
            let joined = closure(g, &gens);
            if found.insert(joined.clone()) {
                work.push(joined);
            }
        }
    }
    found
}

fn generating_set<G: Group>(g: &G, members: &[Elem]) -> Vec<Elem> {
    let mut gens = Vec::new();
    let mut current = alloc::vec![g.identity()];
    for &x in members {
        if current.len() == members.len() {
            break;
        }
        if current.binary_search(&x).is_err() {
            gens.push(x);
            current = closure(g, &gens);
        }
    }
    gens
}

fn finish<G: Group>(g: &G, sets: BTreeSet<Vec<Elem>>) -> Vec<Subgroup> {
    let mut sets: Vec<Vec<Elem>> = sets.into_iter().collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    sets.into_iter()
        .map(|m| {
            let gens = generating_set(g, &m);
            Subgroup::generated(g, &gens)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::FiniteGroup;
    use crate::DEFAULT_CAP;

    #[test]
    fn s3_lattice() {
        let s3 = FiniteGroup::symmetric(3, DEFAULT_CAP).unwrap();
        let cyc = subgroup_sample(&s3, SampleStrategy::AllCyclic, 0).unwrap();
        let orders: Vec<usize> = cyc.iter().map(|h| h.order()).collect();
        assert_eq!(orders, [1, 2, 2, 2, 3]);
        assert_eq!(subgroup_sample(&s3, SampleStrategy::Exhaustive, 0).unwrap().len(), 6);
    }

    #[test]
    fn klein_lattice_and_cap() {
        let c2 = FiniteGroup::cyclic(2, DEFAULT_CAP).unwrap();
        let v4 = FiniteGroup::direct_product(&c2, &c2, DEFAULT_CAP).unwrap();
        assert_eq!(subgroup_sample(&v4, SampleStrategy::Exhaustive, 0).unwrap().len(), 5);
        let s5 = FiniteGroup::symmetric(5, DEFAULT_CAP).unwrap();
        assert!(matches!(
            subgroup_sample(&s5, SampleStrategy::Exhaustive, 0),
            Err(Error::CapExceeded { cap: 100 })
        ));
    }

    #[test]
    fn random_is_seeded() {
        let s5 = FiniteGroup::symmetric(5, DEFAULT_CAP).unwrap();
        let strategy = SampleStrategy::RandomGenerated { k: 2, count: 10 };
        let a = subgroup_sample(&s5, strategy, 7).unwrap();
        let b = subgroup_sample(&s5, strategy, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 10);
    }
}

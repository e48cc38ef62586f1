//! Orbits on vectors and on the dual space `Irr(V) ≅ Hom(V, GF(p))`.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::field::{GfVector, VecSpace};
use super::matgroup::MatrixGroup;
use super::matrix::GfMatrix;
use crate::error::{Error, Result};
use crate::group::{Elem, Group, Subgroup};

/// A linear character of `V`, `v ↦ ζ^{λ·v}`, stored as its covector `λ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DualCharacter {
    pub covector: GfVector,
}

impl DualCharacter {
    pub fn new(covector: GfVector) -> Self {
        Self { covector }
    }

    /// The exponent `λ·v`.
    pub fn eval(&self, v: &[u32]) -> u32 {
        let p = self.covector.p() as u64;
        let s: u64 = self.covector.entries().iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum();
        (s % p) as u32
    }

    /// `λ^g` with `λ^g(v) = λ(v·g⁻¹)`, i.e. the covector `λ·(g⁻¹)ᵀ`.
    pub fn act(&self, g: &GfMatrix) -> Result<Self> {
        let gi = g.inverse().ok_or(Error::SingularGenerator)?;
        let entries = gi.transpose().apply(self.covector.entries());
        Ok(Self { covector: GfVector::new(self.covector.p(), entries)? })
    }
}

/// A partition of `GF(p)^k` into orbits; orbits are numbered by their least
/// member, which is also the representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbits {
    pub reps: Vec<u32>,
    pub sizes: Vec<usize>,
    pub orbit_of: Vec<u32>,
}

impl Orbits {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// Orbits of `⟨gens⟩` on `GF(p)^k` acting by `v ↦ v·M`.
pub fn orbits_under(space: VecSpace, gens: &[GfMatrix]) -> Orbits {
    let n = space.size() as usize;
    let mut orbit_of = vec![u32::MAX; n];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n as u32 {
        if orbit_of[start as usize] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(start);
        orbit_of[start as usize] = id;
        let mut size = 1;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            let x = space.decode(v);
            for m in gens {
                let w = space.encode(&m.apply(&x));
                if orbit_of[w as usize] == u32::MAX {
                    orbit_of[w as usize] = id;
                    size += 1;
                    queue.push_back(w);
                }
            }
        }
        sizes.push(size);
    }
    Orbits { reps, sizes, orbit_of }
}

fn block_gens(lin: &MatrixGroup, gens: &[Elem], offset: usize, k: usize) -> Result<Vec<GfMatrix>> {
    gens.iter().map(|&g| lin.restricted(g, offset, k)).collect()
}

/// Orbits of `lin` on the invariant coordinate subspace `offset..offset+k`.
pub fn vector_orbits(lin: &MatrixGroup, offset: usize, k: usize) -> Result<Orbits> {
    Ok(orbits_under(VecSpace::new(lin.p(), k)?, &block_gens(lin, lin.generators(), offset, k)?))
}

/// Orbits of `lin` on the characters of the subspace `offset..offset+k`.
pub fn dual_orbits(lin: &MatrixGroup, offset: usize, k: usize) -> Result<Orbits> {
    let gens = block_gens(lin, lin.generators(), offset, k)?;
    let duals: Vec<GfMatrix> = gens.iter().map(|m| m.inverse().expect("group elements are invertible").transpose()).collect();
    Ok(orbits_under(VecSpace::new(lin.p(), k)?, &duals))
}

/// `C_G(v)` for `v` in the subspace `offset..offset+k`.
pub fn vector_stabilizer(lin: &MatrixGroup, offset: usize, k: usize, v: u32) -> Result<Subgroup> {
    let space = VecSpace::new(lin.p(), k)?;
    let x = space.decode(v);
    let mut members = Vec::new();
    for g in 0..lin.order() as Elem {
        if lin.restricted(g, offset, k)?.apply(&x) == x {
            members.push(g);
        }
    }
    Subgroup::from_members(lin, members)
}

/// The inertia group `C_G(λ)` of a character of the subspace.
pub fn covector_stabilizer(lin: &MatrixGroup, offset: usize, k: usize, lambda: u32) -> Result<Subgroup> {
    let space = VecSpace::new(lin.p(), k)?;
    let chi = DualCharacter::new(space.vector(lambda));
    let mut members = Vec::new();
    for g in 0..lin.order() as Elem {
        if chi.act(&lin.restricted(g, offset, k)?)? == chi {
            members.push(g);
        }
    }
    Subgroup::from_members(lin, members)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minus_identity_and_trivial() {
        let c2 = MatrixGroup::from_generators("-I", 5, 2, &[GfMatrix::scalar(5, 2, 4)], 100).unwrap();
        assert_eq!(dual_orbits(&c2, 0, 2).unwrap().len(), 13);
        assert_eq!(vector_orbits(&c2, 0, 2).unwrap().len(), 13);
        let one = MatrixGroup::from_generators("1", 5, 2, &[], 100).unwrap();
        assert_eq!(dual_orbits(&one, 0, 2).unwrap().len(), 25);
    }

    #[test]
    fn contragredient() {
        let g = GfMatrix::from_rows(5, &[&[1, 1], &[0, 1]]).unwrap();
        let chi = DualCharacter::new(GfVector::new(5, vec![2, 3]).unwrap());
        let gi = g.inverse().unwrap();
        let moved = chi.act(&g).unwrap();
        for v in [[1, 0], [0, 1], [3, 4]] {
            assert_eq!(moved.eval(&v), chi.eval(&gi.apply(&v)));
        }
    }

    #[test]
    fn unipotent_orbits_match() {
        // p | |G|: vector and dual orbit counts still agree by Brauer
        let g = MatrixGroup::from_generators("u", 5, 2, &[GfMatrix::from_rows(5, &[&[1, 1], &[0, 1]]).unwrap()], 100).unwrap();
        assert_eq!(vector_orbits(&g, 0, 2).unwrap().len(), dual_orbits(&g, 0, 2).unwrap().len());
        assert_eq!(covector_stabilizer(&g, 0, 2, 0).unwrap().order(), 5);
    }
}

//! Block (imprimitivity) structure on `GF(p)^{n·d}` and instances built from it.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::matgroup::MatrixGroup;
use super::matrix::GfMatrix;
use crate::error::{Error, Result};
use crate::group::{Elem, Group, Subgroup};
use crate::perm::Permutation;
use crate::permgroup::FiniteGroup;
use crate::sampling::rng;

/// `V = V₁ ⊕ … ⊕ V_count`, each block spanning `dim` consecutive coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockStructure {
    pub count: usize,
    pub dim: usize,
}

impl BlockStructure {
    pub fn offset(&self, i: usize) -> usize {
        i * self.dim
    }

    /// `i ↦ j` with `V_i·m = V_j`, if `m` permutes the blocks.
    pub fn action(&self, m: &GfMatrix) -> Option<Vec<usize>> {
        let k = self.dim;
        let mut perm = Vec::with_capacity(self.count);
        for i in 0..self.count {
            let mut target = None;
            for j in 0..self.count {
                let nonzero = (0..k).any(|r| (0..k).any(|c| m.get(i * k + r, j * k + c) != 0));
                if nonzero {
                    if target.is_some() {
                        return None;
                    }
                    target = Some(j);
                }
            }
            perm.push(target?);
        }
        let mut seen = vec![false; self.count];
        for &j in &perm {
            if core::mem::replace(&mut seen[j], true) {
                return None;
            }
        }
        Some(perm)
    }
}

pub fn block_diag(blocks: &[GfMatrix]) -> GfMatrix {
    let p = blocks[0].p();
    let d: usize = blocks.iter().map(|b| b.dim()).sum();
    let mut entries = vec![0; d * d];
    let mut off = 0;
    for b in blocks {
        let k = b.dim();
        for i in 0..k {
            for j in 0..k {
                entries[(off + i) * d + off + j] = b.get(i, j);
            }
        }
        off += k;
    }
    GfMatrix::raw(p, d, entries)
}

/// The matrix sending block `i` to block `perm[i]` identically.
pub fn block_perm_matrix(p: u32, k: usize, perm: &[usize]) -> GfMatrix {
    let n = perm.len();
    let d = n * k;
    let mut entries = vec![0; d * d];
    for (i, &j) in perm.iter().enumerate() {
        for r in 0..k {
            entries[(i * k + r) * d + j * k + r] = 1;
        }
    }
    GfMatrix::raw(p, d, entries)
}

/// `h` placed in block `i`, identity elsewhere.
pub fn in_block(h: &GfMatrix, i: usize, count: usize) -> GfMatrix {
    let id = GfMatrix::identity(h.p(), h.dim());
    let parts: Vec<GfMatrix> = (0..count).map(|j| if j == i { h.clone() } else { id.clone() }).collect();
    block_diag(&parts)
}

/// Which subgroup of `H₁ wr P` an induced group is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mixing {
    /// The full wreath product.
    Full,
    /// The diagonal copy of `H₁` together with `P`.
    Diagonal,
    /// The diagonal plus seeded random base elements.
    Seeded(u64),
}

/// A subgroup of `H₁ wr P` in block form, `P` given by generating permutations.
pub fn induced_block_group(h1: &MatrixGroup, perms: &[Vec<usize>], mixing: Mixing, cap: usize) -> Result<MatrixGroup> {
    let n = perms.first().map(|p| p.len()).ok_or_else(|| Error::InvalidInput("no block permutations".into()))?;
    let pg = FiniteGroup::from_generators(
        "P",
        n,
        &perms.iter().map(|p| Permutation::from_images(p.iter().map(|&x| x as u32).collect())).collect::<Result<Vec<_>>>()?,
        cap,
    )?;
    let orbit: alloc::collections::BTreeSet<u32> = (0..pg.order() as Elem).map(|x| pg.element(x).apply(0)).collect();
    if orbit.len() != n {
        return Err(Error::NotTransitive);
    }
    let k = h1.dim();
    let p = h1.p();
    let h_gens = h1.generator_matrices();
    let mut gens: Vec<GfMatrix> = perms.iter().map(|perm| block_perm_matrix(p, k, perm)).collect();
    let diag = |h: &GfMatrix| block_diag(&vec![h.clone(); n]);
    let name = match mixing {
        Mixing::Full => {
            gens.extend(h_gens.iter().map(|h| in_block(h, 0, n)));
            format!("{} wr P{n}", h1.name())
        }
        Mixing::Diagonal => {
            gens.extend(h_gens.iter().map(diag));
            format!("diag {} . P{n}", h1.name())
        }
        Mixing::Seeded(seed) => {
            gens.extend(h_gens.iter().map(diag));
            let mut r = rng(seed);
            let extra = 1 + r.gen_range(0..2);
            for _ in 0..extra {
                let parts: Vec<GfMatrix> = (0..n).map(|_| h1.matrix(r.gen_range(0..h1.order() as Elem))).collect();
                gens.push(block_diag(&parts));
            }
            format!("mixed {} . P{n} seed {seed}", h1.name())
        }
    };
    Ok(MatrixGroup::from_generators(&name, p, n * k, &gens, cap)?.with_blocks(BlockStructure { count: n, dim: k }))
}

/// A linear group in block form, its block kernel `N`, and an element `g ∉ N`.
pub struct BlockInstance {
    pub name: String,
    pub group: MatrixGroup,
    pub blocks: BlockStructure,
    /// `N = ⋂ N_G(V_i)`.
    pub kernel: Subgroup,
    pub g: Elem,
}

impl BlockInstance {
    pub fn new(name: &str, group: MatrixGroup, g: Elem) -> Result<Self> {
        let blocks = group.blocks().ok_or_else(|| Error::InvalidInput("group has no block structure".into()))?;
        for x in group.generators() {
            if blocks.action(&group.matrix(*x)).is_none() {
                return Err(Error::InvalidInput("a generator does not permute the blocks".into()));
            }
        }
        let id: Vec<usize> = (0..blocks.count).collect();
        let members: Vec<Elem> = (0..group.order() as Elem)
            .filter(|&x| blocks.action(&group.matrix(x)).as_deref() == Some(&id[..]))
            .collect();
        let kernel = Subgroup::from_members(&group, members)?;
        if kernel.contains(g) {
            return Err(Error::HypothesisFailed("g normalizes every block".into()));
        }
        Ok(Self { name: name.to_string(), group, blocks, kernel, g })
    }

    pub fn block_action(&self, x: Elem) -> Vec<usize> {
        self.blocks.action(&self.group.matrix(x)).expect("elements permute the blocks")
    }

    /// Number of `p`-cycles of `g` on the blocks.
    pub fn cycles_of_length(&self, x: Elem, len: usize) -> usize {
        let perm = Permutation::from_images(self.block_action(x).iter().map(|&j| j as u32).collect()).expect("permutation");
        perm.cycles().iter().filter(|c| c.len() == len).count()
    }

    pub fn fixed_blocks(&self, x: Elem) -> usize {
        self.block_action(x).iter().enumerate().filter(|(i, j)| i == *j).count()
    }

    /// `N` as a matrix group.
    pub fn n_group(&self) -> MatrixGroup {
        self.group.sub(&self.kernel, &format!("N({})", self.name))
    }

    /// `N_G(V_i)`.
    pub fn block_stabilizer(&self, i: usize) -> Subgroup {
        let members = (0..self.group.order() as Elem).filter(|&x| self.block_action(x)[i] == i).collect();
        Subgroup::from_members(&self.group, members).expect("stabilizers are subgroups")
    }

    /// `U₁ = N_G(V₁)/C_G(V₁)` as a linear group on `V₁`.
    pub fn u1(&self) -> Result<MatrixGroup> {
        let h = self.block_stabilizer(0);
        self.group.restrict(&h, 0, self.blocks.dim, "U1")
    }

    /// `G/N` as a permutation group on the blocks.
    pub fn block_image(&self, cap: usize) -> Result<FiniteGroup> {
        let gens = self
            .group
            .generators()
            .iter()
            .map(|&x| Permutation::from_images(self.block_action(x).iter().map(|&j| j as u32).collect()))
            .collect::<Result<Vec<_>>>()?;
        FiniteGroup::from_generators("G/N", self.blocks.count, &gens, cap)
    }
}

/// How `N ≤ L^p` is chosen for an L-block instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelChoice {
    /// `N = L^p`.
    Full,
    /// `N` generated by the cyclic shifts of seeded random tuples drawn from a
    /// seeded random subgroup of `L`.
    Seeded(u64),
}

/// `G = N⟨g⟩` on `V₁ ⊕ … ⊕ V_p`, `g` the cyclic block shift and `N ≤ L^p` `g`-invariant.
pub fn cyclic_block_instance(l: &MatrixGroup, p: usize, choice: KernelChoice, cap: usize) -> Result<BlockInstance> {
    let k = l.dim();
    let q = l.p();
    let shift_perm: Vec<usize> = (0..p).map(|i| (i + 1) % p).collect();
    let shift = block_perm_matrix(q, k, &shift_perm);
    let mut gens = vec![shift.clone()];
    let name = match choice {
        KernelChoice::Full => {
            gens.extend(l.generator_matrices().iter().map(|h| in_block(h, 0, p)));
            format!("{}^{p} . C{p}", l.name())
        }
        KernelChoice::Seeded(seed) => {
            let mut r = rng(seed);
            let pool_gens: Vec<Elem> = (0..1 + r.gen_range(0..2)).map(|_| r.gen_range(0..l.order() as Elem)).collect();
            let pool = Subgroup::generated(l, &pool_gens);
            let tuples = 1 + r.gen_range(0..2);
            for _ in 0..tuples {
                let t: Vec<GfMatrix> = (0..p).map(|_| l.matrix(pool.members()[r.gen_range(0..pool.order())])).collect();
                for s in 0..p {
                    let rotated: Vec<GfMatrix> = (0..p).map(|i| t[(i + s) % p].clone()).collect();
                    gens.push(block_diag(&rotated));
                }
            }
            format!("N<={}^{p} seed {seed}", l.name())
        }
    };
    let group = MatrixGroup::from_generators(&name, q, p * k, &gens, cap)?.with_blocks(BlockStructure { count: p, dim: k });
    let g = group.index_of(&shift).expect("shift is a generator");
    BlockInstance::new(&name, group, g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minus_one() -> MatrixGroup {
        MatrixGroup::from_generators("C2", 5, 2, &[GfMatrix::scalar(5, 2, 4)], 100).unwrap()
    }

    #[test]
    fn wreath_orders() {
        let c2 = minus_one();
        let full = induced_block_group(&c2, &[vec![1, 0]], Mixing::Full, 1000).unwrap();
        assert_eq!(full.order(), 8);
        let diag = induced_block_group(&c2, &[vec![1, 0]], Mixing::Diagonal, 1000).unwrap();
        assert_eq!(diag.order(), 4);
        let s = full.index_of(&block_perm_matrix(5, 2, &[1, 0])).unwrap();
        let inst = BlockInstance::new("x", full, s).unwrap();
        assert_eq!(inst.kernel.order(), 4);
        assert_eq!(inst.u1().unwrap().order(), 2);
        assert_eq!(inst.block_image(100).unwrap().order(), 2);
    }

    #[test]
    fn block_action_detects_permutations() {
        let bs = BlockStructure { count: 3, dim: 2 };
        let m = block_perm_matrix(5, 2, &[1, 2, 0]);
        assert_eq!(bs.action(&m).unwrap(), [1, 2, 0]);
        let mut e = GfMatrix::identity(5, 6).entries().to_vec();
        e[1] = 0;
        e[2] = 1;
        assert!(bs.action(&GfMatrix::new(5, 6, e).unwrap()).is_none());
    }

    #[test]
    fn cyclic_instances_are_invariant() {
        let c2 = minus_one();
        let inst = cyclic_block_instance(&c2, 3, KernelChoice::Full, 1000).unwrap();
        assert_eq!(inst.kernel.order(), 8);
        assert_eq!(inst.group.order(), 24);
        assert_eq!(inst.cycles_of_length(inst.g, 3), 1);
        let seeded = cyclic_block_instance(&c2, 2, KernelChoice::Seeded(4), 1000).unwrap();
        assert!(seeded.kernel.normalized_by(&seeded.group, seeded.g));
    }
}

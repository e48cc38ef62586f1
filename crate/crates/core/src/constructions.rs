//! Named permutation-group instances built from two copies of a group and a block swap.

use alloc::format;
use alloc::vec::Vec;

use crate::error::Result;
use crate::group::{Elem, Subgroup};
use crate::perm::Permutation;
use crate::permgroup::{element_of_order_mod, FiniteGroup};

/// `A wr C₂` on `2d` points together with a swap-invariant subgroup `N ≤ A × A`.
pub struct WreathInstance {
    pub group: FiniteGroup,
    /// `A × A`.
    pub base: Subgroup,
    /// `A × 1` and `1 × A`.
    pub factors: [Subgroup; 2],
    /// The normal-subgroup factors `K × 1`, `1 × K` with `N = (K × K)⟨t⟩`.
    pub inner_factors: [Subgroup; 2],
    pub n: Subgroup,
    /// The block swap.
    pub swap: Elem,
    /// The diagonal element `(t, t)` completing `K × K` to `N`.
    pub diagonal: Elem,
}

fn shifted(p: &Permutation, block: usize, d: usize) -> Permutation {
    let mut images: Vec<u32> = (0..2 * d as u32).collect();
    for x in 0..d {
        images[block * d + x] = (block * d) as u32 + p.apply(x as u32);
    }
    Permutation::from_images(images).expect("block permutation")
}

fn both(p: &Permutation, d: usize) -> Permutation {
    shifted(p, 0, d).then(&shifted(p, 1, d))
}

fn build(a: &FiniteGroup, k_gen: &Permutation, t: &Permutation, cap: usize) -> Result<WreathInstance> {
    let d = a.degree();
    let c2 = FiniteGroup::cyclic(2, cap)?;
    let group = FiniteGroup::wreath_product(a, &c2, cap)?;
    let idx = |p: &Permutation| group.index_of(p).expect("element of the wreath product");
    let gens_in = |block: usize| -> Vec<Elem> { a.generator_perms().iter().map(|p| idx(&shifted(p, block, d))).collect() };
    let f0 = Subgroup::generated(&group, &gens_in(0));
    let f1 = Subgroup::generated(&group, &gens_in(1));
    let mut base_gens = gens_in(0);
    base_gens.extend(gens_in(1));
    let base = Subgroup::generated(&group, &base_gens);
    let k0 = idx(&shifted(k_gen, 0, d));
    let k1 = idx(&shifted(k_gen, 1, d));
    let diagonal = idx(&both(t, d));
    let n = Subgroup::generated(&group, &[k0, k1, diagonal]);
    let swap_images: Vec<u32> = (0..2 * d as u32).map(|x| (x + d as u32) % (2 * d as u32)).collect();
    let swap = idx(&Permutation::from_images(swap_images)?);
    Ok(WreathInstance {
        inner_factors: [Subgroup::generated(&group, &[k0]), Subgroup::generated(&group, &[k1])],
        factors: [f0, f1],
        group,
        base,
        n,
        swap,
        diagonal,
    })
}

/// `G = S₃ wr C₂` and `N = (S₃′ × S₃′)·⟨((0 1),(0 1))⟩` (points `0..3` and `3..6`).
pub fn example_03a(cap: usize) -> Result<WreathInstance> {
    let s3 = FiniteGroup::symmetric(3, cap)?;
    let k = Permutation::parse("(0 1 2)", 3)?;
    let t = Permutation::parse("(0 1)", 3)?;
    let mut inst = build(&s3, &k, &t, cap)?;
    inst.group = inst.group.with_name("S3 wr C2");
    Ok(inst)
}

/// `G = F(q,p) wr C₂` and `N = (C_p × C_p)·⟨(a, a)⟩` of order `p²q`, with `a: x ↦ αx`.
pub fn frobenius_wreath(q: u32, p: u32, cap: usize) -> Result<WreathInstance> {
    let f = FiniteGroup::frobenius(q, p, cap)?;
    let alpha = element_of_order_mod(q, p);
    let k = Permutation::from_images((0..p).map(|x| (x + 1) % p).collect())?;
    let t = Permutation::from_images((0..p).map(|x| x * alpha % p).collect())?;
    let mut inst = build(&f, &k, &t, cap)?;
    inst.group = inst.group.with_name(&format!("F({q},{p}) wr C2"));
    Ok(inst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;
    use crate::DEFAULT_CAP;

    #[test]
    fn orders() {
        let ex = example_03a(DEFAULT_CAP).unwrap();
        assert_eq!(ex.group.order(), 72);
        assert_eq!(ex.n.order(), 18);
        assert!(ex.n.normalized_by(&ex.group, ex.swap));
        let fw = frobenius_wreath(3, 7, DEFAULT_CAP).unwrap();
        assert_eq!(fw.group.order(), 21 * 21 * 2);
        assert_eq!(fw.n.order(), 7 * 7 * 3);
        assert!(fw.n.normalized_by(&fw.group, fw.swap));
    }
}

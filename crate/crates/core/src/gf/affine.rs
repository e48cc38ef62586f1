//! Affine groups `G ⋉ V` with `(g₁,v₁)(g₂,v₂) = (g₁g₂, v₁·g₂ + v₂)`.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::field::{inv_mod, VecSpace};
use super::matgroup::MatrixGroup;
use super::matrix::{apply_into, rank_of, GfMatrix};
use crate::classes::{conjugacy_classes, ClassSet};
use crate::error::{Error, Result};
use crate::group::{Elem, Group, Subgroup};

/// Largest `|GV|` whose classes are enumerated element by element.
pub const BRUTE_FORCE_LIMIT: usize = 1_000_000;
/// Largest `|G|` for the structured (coprime) enumeration.
pub const STRUCTURED_LIMIT: usize = 40_000;
const ACTION_TABLE_LIMIT: usize = 1 << 25;
const ADD_TABLE_LIMIT: u32 = 1024;

/// `G ⋉ V` for a linear group `G` and a `G`-invariant coordinate subspace `V`
/// of its natural module. Element `(g, v)` has index `g·|V| + v`.
pub struct AffineGroup<'a> {
    lin: &'a MatrixGroup,
    offset: usize,
    module: VecSpace,
    blocks: Vec<u8>,
    action: Option<Vec<u32>>,
    add: Option<Vec<u32>>,
    gens: Vec<Elem>,
}

impl<'a> AffineGroup<'a> {
    /// `G ⋉ GF(p)^d` on the full natural module.
    pub fn new(lin: &'a MatrixGroup) -> Result<Self> {
        Self::on_subspace(lin, 0, lin.dim())
    }

    /// `G ⋉ W` for `W` spanned by coordinates `offset..offset+dim`.
    pub fn on_subspace(lin: &'a MatrixGroup, offset: usize, dim: usize) -> Result<Self> {
        if offset + dim > lin.dim() {
            return Err(Error::InvalidInput("subspace outside the module".into()));
        }
        let module = VecSpace::new(lin.p(), dim)?;
        let size = module.size() as usize;
        let order = lin.order().checked_mul(size).filter(|&o| o < u32::MAX as usize).ok_or(Error::CapExceeded { cap: u32::MAX as usize })?;
        let kk = dim * dim;
        let mut blocks = vec![0u8; lin.order() * kk];
        for g in 0..lin.order() as Elem {
            let b = lin.restricted(g, offset, dim)?;
            for (slot, &e) in blocks[g as usize * kk..(g as usize + 1) * kk].iter_mut().zip(b.entries()) {
                *slot = e as u8;
            }
        }
        let mut aff = Self { lin, offset, module, blocks, action: None, add: None, gens: Vec::new() };
        if module.size() <= ADD_TABLE_LIMIT {
            let n = module.size();
            aff.add = Some((0..n * n).map(|i| module.add(i / n, i % n)).collect());
        }
        if order <= ACTION_TABLE_LIMIT {
            let mut table = vec![0u32; order];
            for g in 0..lin.order() as Elem {
                for v in 0..module.size() {
                    table[g as usize * size + v as usize] = aff.compute_act(v, g);
                }
            }
            aff.action = Some(table);
        }
        let mut gens: Vec<Elem> = lin.generators().iter().map(|&g| aff.compose(g, 0)).collect();
        gens.extend((0..dim).map(|i| aff.compose(lin.identity(), module.basis(i))));
        aff.gens = gens;
        Ok(aff)
    }

    pub fn linear(&self) -> &'a MatrixGroup {
        self.lin
    }

    pub fn module(&self) -> VecSpace {
        self.module
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn compose(&self, g: Elem, v: u32) -> Elem {
        g * self.module.size() + v
    }

    pub fn split(&self, x: Elem) -> (Elem, u32) {
        (x / self.module.size(), x % self.module.size())
    }

    /// The block of `g` on the module, row-major.
    pub fn block(&self, g: Elem) -> GfMatrix {
        let kk = self.module.dim() * self.module.dim();
        let e = self.blocks[g as usize * kk..(g as usize + 1) * kk].iter().map(|&x| x as u32).collect();
        GfMatrix::raw(self.module.p(), self.module.dim(), e)
    }

    fn compute_act(&self, v: u32, g: Elem) -> u32 {
        let k = self.module.dim();
        let kk = k * k;
        let mut m = [0u32; 64];
        for (slot, &e) in m.iter_mut().zip(&self.blocks[g as usize * kk..(g as usize + 1) * kk]) {
            *slot = e as u32;
        }
        let mut x = [0u32; 8];
        let mut y = [0u32; 8];
        self.module.decode_into(v, &mut x[..k]);
        apply_into(self.module.p(), k, &m[..kk], &x[..k], &mut y[..k]);
        self.module.encode(&y[..k])
    }

    /// `v·g` on the module.
    pub fn act(&self, v: u32, g: Elem) -> u32 {
        match &self.action {
            Some(t) => t[g as usize * self.module.size() as usize + v as usize],
            None => self.compute_act(v, g),
        }
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        match &self.add {
            Some(t) => t[(a * self.module.size() + b) as usize],
            None => self.module.add(a, b),
        }
    }

    /// Module coordinates of `v·m` for a full-space matrix `m` preserving the module.
    pub fn act_matrix(&self, v: u32, m: &GfMatrix) -> Result<u32> {
        let k = self.module.dim();
        let mut full = vec![0u32; self.lin.dim()];
        self.module.decode_into(v, &mut full[self.offset..self.offset + k]);
        let image = m.apply(&full);
        if image.iter().enumerate().any(|(i, &x)| (i < self.offset || i >= self.offset + k) && x != 0) {
            return Err(Error::NotInvariant);
        }
        Ok(self.module.encode(&image[self.offset..self.offset + k]))
    }
}

impl Group for AffineGroup<'_> {
    fn order(&self) -> usize {
        self.lin.order() * self.module.size() as usize
    }

    fn identity(&self) -> Elem {
        self.compose(self.lin.identity(), 0)
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let (g1, v1) = self.split(a);
        let (g2, v2) = self.split(b);
        self.compose(self.lin.mul(g1, g2), self.add(self.act(v1, g2), v2))
    }

    fn inv(&self, a: Elem) -> Elem {
        let (g, v) = self.split(a);
        let gi = self.lin.inv(g);
        self.compose(gi, self.module.neg(self.act(v, gi)))
    }

    fn generators(&self) -> &[Elem] {
        &self.gens
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassMethod {
    Structured,
    BruteForce,
}

struct LinearClassData {
    first: usize,
    fixed: Vec<u32>,
    orbit_of: Vec<u32>,
    projection: GfMatrix,
}

/// Conjugacy classes of an affine group.
pub struct AffineClassSet {
    method: ClassMethod,
    reps: Vec<Elem>,
    sizes: Vec<usize>,
    linear: Option<ClassSet>,
    data: Vec<LinearClassData>,
    brute: Option<ClassSet>,
}

impl AffineClassSet {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn method(&self) -> ClassMethod {
        self.method
    }

    /// Canonical representatives: the linear part is the least element of its
    /// class and the translation the least vector of its orbit on `C_V(n)`.
    pub fn reps(&self) -> &[Elem] {
        &self.reps
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// The class containing `x`.
    pub fn identify(&self, aff: &AffineGroup<'_>, x: Elem) -> usize {
        if let Some(b) = &self.brute {
            return b.class_of(x);
        }
        let lin_classes = self.linear.as_ref().expect("structured data");
        let (g, v) = aff.split(x);
        let cid = lin_classes.class_of(g);
        let h = lin_classes.conjugator(g);
        let v1 = aff.act(v, aff.lin.inv(h));
        let data = &self.data[cid];
        let k = aff.module.dim();
        let mut x = [0u32; 8];
        let mut y = [0u32; 8];
        aff.module.decode_into(v1, &mut x[..k]);
        apply_into(aff.module.p(), k, data.projection.entries(), &x[..k], &mut y[..k]);
        let w = aff.module.encode(&y[..k]);
        let pos = data.fixed.binary_search(&w).expect("projection lands in the fixed space");
        data.first + data.orbit_of[pos] as usize
    }
}

/// Classes by the coprime correspondence when it applies, else element by element.
pub fn affine_classes(aff: &AffineGroup<'_>) -> Result<AffineClassSet> {
    if aff.lin.is_coprime() && aff.lin.order() <= STRUCTURED_LIMIT {
        structured_classes(aff)
    } else {
        brute_force_classes(aff)
    }
}

pub fn brute_force_classes(aff: &AffineGroup<'_>) -> Result<AffineClassSet> {
    if aff.order() > BRUTE_FORCE_LIMIT {
        return Err(Error::CapExceeded { cap: BRUTE_FORCE_LIMIT });
    }
    let cs = conjugacy_classes(aff);
    Ok(AffineClassSet {
        method: ClassMethod::BruteForce,
        reps: cs.reps().collect(),
        sizes: cs.classes().iter().map(|c| c.size).collect(),
        linear: None,
        data: Vec::new(),
        brute: Some(cs),
    })
}

/// Classes of `GV` as pairs (class of `n` in `G`, `C_G(n)`-orbit on `C_V(n)`); needs `p ∤ |G|`.
pub fn structured_classes(aff: &AffineGroup<'_>) -> Result<AffineClassSet> {
    let lin = aff.lin;
    if !lin.is_coprime() {
        return Err(Error::InvalidInput("structured classes need p ∤ |G|".into()));
    }
    if lin.order() > STRUCTURED_LIMIT {
        return Err(Error::CapExceeded { cap: STRUCTURED_LIMIT });
    }
    let p = aff.module.p();
    let size = aff.module.size();
    let lin_classes = conjugacy_classes(lin);
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    let mut data = Vec::new();
    for c in lin_classes.classes() {
        let n = c.rep;
        let cent_gens: Vec<Elem> = if c.size == 1 {
            lin.generators().to_vec()
        } else {
            let members: Vec<Elem> = (0..lin.order() as Elem).filter(|&h| lin.commutes(h, n)).collect();
            Subgroup::from_members_unchecked(lin, members).generators().to_vec()
        };
        let cent_order = lin.order() / c.size;
        let fixed: Vec<u32> = (0..size).filter(|&u| aff.act(u, n) == u).collect();
        let mut orbit_of = vec![u32::MAX; fixed.len()];
        let mut orbit_reps = Vec::new();
        let mut orbit_sizes = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..fixed.len() {
            if orbit_of[start] != u32::MAX {
                continue;
            }
            let id = orbit_reps.len() as u32;
            orbit_of[start] = id;
            orbit_reps.push(fixed[start]);
            let mut count = 1;
            queue.push_back(fixed[start]);
            while let Some(u) = queue.pop_front() {
                for &s in &cent_gens {
                    let w = aff.act(u, s);
                    let pos = fixed.binary_search(&w).expect("centralizer preserves the fixed space");
                    if orbit_of[pos] == u32::MAX {
                        orbit_of[pos] = id;
                        count += 1;
                        queue.push_back(w);
                    }
                }
            }
            orbit_sizes.push(count);
        }
        let o = lin.element_order(n);
        let b = aff.block(n);
        let mut sum = GfMatrix::scalar(p, aff.module.dim(), 0);
        let mut power = GfMatrix::identity(p, aff.module.dim());
        for _ in 0..o {
            sum = sum.add(&power);
            power = power.mul(&b);
        }
        let projection = sum.scale(inv_mod((o % p as u64) as u32, p));
        let first = reps.len();
        for (i, &r) in orbit_reps.iter().enumerate() {
            reps.push(aff.compose(n, r));
            sizes.push(c.size * orbit_sizes[i] * (size as usize / fixed.len()));
        }
        let _ = cent_order;
        data.push(LinearClassData { first, fixed, orbit_of, projection });
    }
    Ok(AffineClassSet { method: ClassMethod::Structured, reps, sizes, linear: Some(lin_classes), data, brute: None })
}

/// Whether the structured and element-by-element partitions coincide exactly.
pub fn cross_check(aff: &AffineGroup<'_>) -> Result<bool> {
    let s = structured_classes(aff)?;
    let b = brute_force_classes(aff)?;
    if s.len() != b.len() {
        return Ok(false);
    }
    let mut map = vec![usize::MAX; s.len()];
    for x in 0..aff.order() as Elem {
        let (i, j) = (s.identify(aff, x), b.identify(aff, x));
        if map[i] == usize::MAX {
            map[i] = j;
        } else if map[i] != j {
            return Ok(false);
        }
    }
    Ok((0..s.len()).all(|i| s.sizes[i] == b.sizes[map[i]]))
}

fn check_normalizes(lin: &MatrixGroup, gamma: &GfMatrix) -> Result<GfMatrix> {
    let gi = gamma.inverse().ok_or(Error::SingularGenerator)?;
    for m in lin.generator_matrices() {
        if lin.index_of(&gi.mul(&m).mul(gamma)).is_none() {
            return Err(Error::NotInvariant);
        }
    }
    Ok(gi)
}

/// Classes of `NV` fixed by conjugation with `(γ, t)`; the translation `t`
/// moves each element within its class, so only `γ` is needed.
pub fn fixed_classes_affine(aff: &AffineGroup<'_>, classes: &AffineClassSet, gamma: &GfMatrix) -> Result<Vec<usize>> {
    let lin = aff.lin;
    let gi = check_normalizes(lin, gamma)?;
    let mut fixed = Vec::new();
    for (i, &x) in classes.reps().iter().enumerate() {
        let (n, w) = aff.split(x);
        let n2 = lin.index_of(&gi.mul(&lin.matrix(n)).mul(gamma)).ok_or(Error::NotInvariant)?;
        let w2 = aff.act_matrix(w, gamma)?;
        if classes.identify(aff, aff.compose(n2, w2)) == i {
            fixed.push(i);
        }
    }
    Ok(fixed)
}

/// The number of `NV`-classes fixed by `γ` as the centralizer average
/// `(1/|NV|) Σ_{a ∈ γN} Σ_{h ∈ C_N(a)} p^{2k − rank[a−1; h−1]}`; the sum over
/// `a` is taken once per `N`-conjugation orbit on `γN`.
pub fn fixed_classes_affine_avg(aff: &AffineGroup<'_>, gamma: &GfMatrix) -> Result<usize> {
    let lin = aff.lin;
    let gi = check_normalizes(lin, gamma)?;
    let n = lin.order();
    let k = aff.module.dim();
    let p = aff.module.p();
    let twists: Vec<(Elem, Elem)> = lin
        .generators()
        .iter()
        .map(|&s| {
            let t = lin.index_of(&gi.mul(&lin.matrix(lin.inv(s))).mul(gamma)).ok_or(Error::NotInvariant)?;
            Ok((t, s))
        })
        .collect::<Result<_>>()?;
    let mut seen = vec![false; n];
    let mut total: u128 = 0;
    let mut queue = VecDeque::new();
    for start in 0..n as Elem {
        if seen[start as usize] {
            continue;
        }
        seen[start as usize] = true;
        let mut size = 1u128;
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            for &(t, s) in &twists {
                let y = lin.mul(lin.mul(t, x), s);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    size += 1;
                    queue.push_back(y);
                }
            }
        }
        let a = gamma.mul(&lin.matrix(start));
        let a_block = restricted_block(&a, aff.offset, k)?.minus_identity();
        let mut f: u128 = 0;
        for h in 0..n as Elem {
            let hm = lin.matrix(h);
            if hm.mul(&a) != a.mul(&hm) {
                continue;
            }
            let h_block = aff.block(h).minus_identity();
            let mut stacked = a_block.entries().to_vec();
            stacked.extend_from_slice(h_block.entries());
            let rank = rank_of(p, 2 * k, k, &stacked);
            f += (p as u128).pow((2 * k - rank) as u32);
        }
        total += size * f;
    }
    let denom = n as u128 * aff.module.size() as u128;
    if !total.is_multiple_of(denom) {
        return Err(Error::InvalidInput("averaging sum is not divisible by |NV|".into()));
    }
    Ok((total / denom) as usize)
}

/// The number of `NV`-conjugation orbits on the coset `(γ,0)·NV`, by direct
/// search over its `|N||V|` elements.
pub fn coset_orbits_affine(aff: &AffineGroup<'_>, gamma: &GfMatrix) -> Result<usize> {
    let lin = aff.lin;
    let gi = check_normalizes(lin, gamma)?;
    let size = aff.module.size() as usize;
    let total = lin.order() * size;
    if total > BRUTE_FORCE_LIMIT {
        return Err(Error::CapExceeded { cap: BRUTE_FORCE_LIMIT });
    }
    // (s,0): (γn, v) ↦ (γ·(γ⁻¹s⁻¹γ)ns, v·s)
    let twists: Vec<(Elem, Elem)> = lin
        .generators()
        .iter()
        .map(|&s| Ok((lin.index_of(&gi.mul(&lin.matrix(lin.inv(s))).mul(gamma)).ok_or(Error::NotInvariant)?, s)))
        .collect::<Result<_>>()?;
    // (1,e): (γn, v) ↦ (γn, v + e − e·γn)
    let shifts: Vec<(u32, u32)> = (0..aff.module.dim())
        .map(|i| {
            let e = aff.module.basis(i);
            Ok((e, aff.act_matrix(e, gamma)?))
        })
        .collect::<Result<_>>()?;
    let mut seen = vec![false; total];
    let mut orbits = 0;
    let mut queue = VecDeque::new();
    for start in 0..total {
        if seen[start] {
            continue;
        }
        orbits += 1;
        seen[start] = true;
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            let (n, v) = ((x / size) as Elem, (x % size) as u32);
            let mut visit = |y: usize| {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            };
            for &(t, s) in &twists {
                let n2 = lin.mul(lin.mul(t, n), s);
                visit(n2 as usize * size + aff.act(v, s) as usize);
            }
            for &(e, eg) in &shifts {
                let v2 = aff.module.add(aff.module.add(v, e), aff.module.neg(aff.act(eg, n)));
                visit(n as usize * size + v2 as usize);
            }
        }
    }
    Ok(orbits)
}

fn restricted_block(m: &GfMatrix, offset: usize, k: usize) -> Result<GfMatrix> {
    let d = m.dim();
    let leaks = (offset..offset + k).any(|i| (0..d).any(|j| (j < offset || j >= offset + k) && m.get(i, j) != 0));
    if leaks {
        return Err(Error::NotInvariant);
    }
    Ok(m.block(offset, offset, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(gens: &[GfMatrix]) -> MatrixGroup {
        MatrixGroup::from_generators("g", 5, 2, gens, 1000).unwrap()
    }

    #[test]
    fn fixed_point_free_small_groups() {
        let c2 = group(&[GfMatrix::scalar(5, 2, 4)]);
        let c4 = group(&[GfMatrix::scalar(5, 2, 2)]);
        let q8 = group(&[GfMatrix::from_rows(5, &[&[0, 1], &[4, 0]]).unwrap(), GfMatrix::from_rows(5, &[&[2, 0], &[0, 3]]).unwrap()]);
        assert_eq!(q8.order(), 8);
        for (g, k) in [(&c2, 14), (&c4, 10), (&q8, 8)] {
            let aff = AffineGroup::new(g).unwrap();
            assert_eq!(aff.order(), g.order() * 25);
            assert_eq!(structured_classes(&aff).unwrap().len(), k);
            assert!(cross_check(&aff).unwrap());
        }
    }

    #[test]
    fn reducible_cyclic() {
        let c4 = group(&[GfMatrix::diagonal(5, &[2, 1])]);
        let aff = AffineGroup::new(&c4).unwrap();
        let cs = affine_classes(&aff).unwrap();
        assert_eq!(cs.len(), 25);
        assert!(cross_check(&aff).unwrap());
    }

    #[test]
    fn group_laws() {
        let c4 = group(&[GfMatrix::scalar(5, 2, 2)]);
        let aff = AffineGroup::new(&c4).unwrap();
        for a in (0..aff.order() as Elem).step_by(7) {
            assert_eq!(aff.mul(a, aff.inv(a)), aff.identity());
            for b in (0..aff.order() as Elem).step_by(11) {
                let c = (a * 13 + b) % aff.order() as Elem;
                assert_eq!(aff.mul(aff.mul(a, b), c), aff.mul(a, aff.mul(b, c)));
            }
        }
    }
}

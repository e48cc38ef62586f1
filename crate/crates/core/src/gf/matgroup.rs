use alloc::collections::{BTreeSet, VecDeque};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::blocks::BlockStructure;
use super::field::VecSpace;
use super::matrix::{apply_into, max_key_dim, mul_into, pack, GfMatrix};
use crate::error::{Error, Result};
use crate::group::{Elem, Group, Subgroup};
use crate::perm::Permutation;
use crate::permgroup::FiniteGroup;

/// Groups up to this order get a Cayley table.
const TABLE_LIMIT: usize = 1024;
const MAX_DIM_ENTRIES: usize = 64;

/// A finite subgroup of `GL(d, p)`, elements numbered by increasing matrix key.
#[derive(Clone)]
pub struct MatrixGroup {
    name: String,
    p: u32,
    d: usize,
    space: VecSpace,
    keys: Vec<u128>,
    entries: Vec<u8>,
    gens: Vec<Elem>,
    inverses: Vec<Elem>,
    identity: Elem,
    table: Option<Vec<Elem>>,
    blocks: Option<BlockStructure>,
}

impl core::fmt::Debug for MatrixGroup {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "MatrixGroup({}, GL({},{}), order {})", self.name, self.d, self.p, self.keys.len())
    }
}

fn unpack(p: u32, len: usize, mut key: u128, out: &mut [u32]) {
    for slot in out[..len].iter_mut().rev() {
        *slot = (key % p as u128) as u32;
        key /= p as u128;
    }
}

impl MatrixGroup {
    /// Enumerates `⟨generators⟩ ≤ GL(d, p)`.
    pub fn from_generators(name: &str, p: u32, d: usize, generators: &[GfMatrix], cap: usize) -> Result<Self> {
        if p >= 256 || d == 0 || d > max_key_dim(p) || d * d > MAX_DIM_ENTRIES {
            return Err(Error::InvalidInput(alloc::format!("unsupported matrix shape GL({d},{p})")));
        }
        let space = VecSpace::new(p, d)?;
        for g in generators {
            if g.p() != p || g.dim() != d {
                return Err(Error::InvalidInput("generator has the wrong shape".into()));
            }
            if g.det() == 0 {
                return Err(Error::SingularGenerator);
            }
        }
        let id = GfMatrix::identity(p, d);
        let mut seen = BTreeSet::from([id.key()]);
        let mut queue = VecDeque::from([id.entries().to_vec()]);
        let mut buf = vec![0u32; d * d];
        while let Some(x) = queue.pop_front() {
            for g in generators {
                mul_into(p, d, &x, g.entries(), &mut buf);
                if seen.insert(pack(p, &buf)) {
                    if seen.len() > cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    queue.push_back(buf.clone());
                }
            }
        }
        let gen_keys: Vec<u128> = generators.iter().map(|g| g.key()).collect();
        Ok(Self::assemble(name, p, d, space, seen.into_iter().collect(), &gen_keys))
    }

    fn assemble(name: &str, p: u32, d: usize, space: VecSpace, keys: Vec<u128>, gen_keys: &[u128]) -> Self {
        let dd = d * d;
        let mut entries = vec![0u8; keys.len() * dd];
        let mut buf = [0u32; MAX_DIM_ENTRIES];
        for (i, &k) in keys.iter().enumerate() {
            unpack(p, dd, k, &mut buf);
            for j in 0..dd {
                entries[i * dd + j] = buf[j] as u8;
            }
        }
        let find = |k: u128| keys.binary_search(&k).expect("closed under multiplication") as Elem;
        let identity = find(GfMatrix::identity(p, d).key());
        let mut gens: Vec<Elem> = gen_keys.iter().map(|&k| find(k)).filter(|&g| g != identity).collect();
        gens.sort_unstable();
        gens.dedup();
        let mut g = Self {
            name: name.to_string(),
            p,
            d,
            space,
            keys,
            entries,
            gens,
            inverses: Vec::new(),
            identity,
            table: None,
            blocks: None,
        };
        g.inverses = (0..g.order() as Elem)
            .map(|x| g.index_of(&g.matrix(x).inverse().expect("invertible")).expect("closed under inverses"))
            .collect();
        if g.order() <= TABLE_LIMIT {
            let n = g.order();
            let mut table = vec![0; n * n];
            for a in 0..n {
                for b in 0..n {
                    table[a * n + b] = g.compute_mul(a as Elem, b as Elem);
                }
            }
            g.table = Some(table);
        }
        g
    }

    /// The subgroup `s` as a matrix group in its own right.
    pub fn sub(&self, s: &Subgroup, name: &str) -> Self {
        let keys = s.members().iter().map(|&x| self.keys[x as usize]).collect();
        let gen_keys: Vec<u128> = s.generators().iter().map(|&x| self.keys[x as usize]).collect();
        let mut g = Self::assemble(name, self.p, self.d, self.space, keys, &gen_keys);
        g.blocks = self.blocks;
        g
    }

    /// The action of `s` on the coordinate subspace `offset..offset+k`, which
    /// must be invariant under every member.
    pub fn restrict(&self, s: &Subgroup, offset: usize, k: usize, name: &str) -> Result<Self> {
        let mut keys = BTreeSet::new();
        for &x in s.members() {
            keys.insert(self.restricted(x, offset, k)?.key());
        }
        let mut gen_keys = Vec::new();
        for &x in s.generators() {
            gen_keys.push(self.restricted(x, offset, k)?.key());
        }
        Ok(Self::assemble(name, self.p, k, VecSpace::new(self.p, k)?, keys.into_iter().collect(), &gen_keys))
    }

    /// The block of `g` on the invariant coordinate subspace `offset..offset+k`.
    pub fn restricted(&self, g: Elem, offset: usize, k: usize) -> Result<GfMatrix> {
        let m = self.matrix(g);
        let leaks = (offset..offset + k).any(|i| (0..self.d).any(|j| (j < offset || j >= offset + k) && m.get(i, j) != 0));
        if leaks {
            return Err(Error::NotInvariant);
        }
        Ok(m.block(offset, offset, k))
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn with_blocks(mut self, blocks: BlockStructure) -> Self {
        self.blocks = Some(blocks);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn space(&self) -> VecSpace {
        self.space
    }

    pub fn blocks(&self) -> Option<BlockStructure> {
        self.blocks
    }

    /// Whether `p ∤ |G|`.
    pub fn is_coprime(&self) -> bool {
        !self.order().is_multiple_of(self.p as usize)
    }

    fn raw_entries(&self, g: Elem) -> &[u8] {
        let dd = self.d * self.d;
        &self.entries[g as usize * dd..(g as usize + 1) * dd]
    }

    fn load(&self, g: Elem, out: &mut [u32]) {
        for (o, &e) in out.iter_mut().zip(self.raw_entries(g)) {
            *o = e as u32;
        }
    }

    pub fn matrix(&self, g: Elem) -> GfMatrix {
        GfMatrix::raw(self.p, self.d, self.raw_entries(g).iter().map(|&e| e as u32).collect())
    }

    pub fn generator_matrices(&self) -> Vec<GfMatrix> {
        self.gens.iter().map(|&g| self.matrix(g)).collect()
    }

    pub fn index_of(&self, m: &GfMatrix) -> Option<Elem> {
        if m.p() != self.p || m.dim() != self.d {
            return None;
        }
        self.keys.binary_search(&m.key()).ok().map(|i| i as Elem)
    }

    /// `v·g` on vector indices of [`Self::space`].
    pub fn act(&self, v: u32, g: Elem) -> u32 {
        let d = self.d;
        let mut m = [0u32; MAX_DIM_ENTRIES];
        self.load(g, &mut m[..d * d]);
        let mut x = [0u32; 8];
        let mut y = [0u32; 8];
        self.space.decode_into(v, &mut x[..d]);
        apply_into(self.p, d, &m[..d * d], &x[..d], &mut y[..d]);
        self.space.encode(&y[..d])
    }

    /// The permutation group induced on the `p^d` vectors.
    pub fn perm_image(&self, cap: usize) -> Result<FiniteGroup> {
        let n = self.space.size();
        let gens = self
            .gens
            .iter()
            .map(|&g| Permutation::from_images((0..n).map(|v| self.act(v, g)).collect()))
            .collect::<Result<Vec<_>>>()?;
        FiniteGroup::from_generators(&self.name, n as usize, &gens, cap)
    }

    fn compute_mul(&self, a: Elem, b: Elem) -> Elem {
        let dd = self.d * self.d;
        let mut x = [0u32; MAX_DIM_ENTRIES];
        let mut y = [0u32; MAX_DIM_ENTRIES];
        let mut z = [0u32; MAX_DIM_ENTRIES];
        self.load(a, &mut x[..dd]);
        self.load(b, &mut y[..dd]);
        mul_into(self.p, self.d, &x[..dd], &y[..dd], &mut z[..dd]);
        self.keys.binary_search(&pack(self.p, &z[..dd])).expect("closed under multiplication") as Elem
    }
}

impl Group for MatrixGroup {
    fn order(&self) -> usize {
        self.keys.len()
    }

    fn identity(&self) -> Elem {
        self.identity
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.table {
            Some(t) => t[a as usize * self.keys.len() + b as usize],
            None => self.compute_mul(a, b),
        }
    }

    fn inv(&self, a: Elem) -> Elem {
        self.inverses[a as usize]
    }

    fn generators(&self) -> &[Elem] {
        &self.gens
    }

    fn commutes(&self, a: Elem, b: Elem) -> bool {
        if self.table.is_some() {
            return self.mul(a, b) == self.mul(b, a);
        }
        let dd = self.d * self.d;
        let mut x = [0u32; MAX_DIM_ENTRIES];
        let mut y = [0u32; MAX_DIM_ENTRIES];
        let mut xy = [0u32; MAX_DIM_ENTRIES];
        let mut yx = [0u32; MAX_DIM_ENTRIES];
        self.load(a, &mut x[..dd]);
        self.load(b, &mut y[..dd]);
        mul_into(self.p, self.d, &x[..dd], &y[..dd], &mut xy[..dd]);
        mul_into(self.p, self.d, &y[..dd], &x[..dd], &mut yx[..dd]);
        xy[..dd] == yx[..dd]
    }
}

/// `GL(2, 5)` from `[[2,0],[0,1]]` and `[[4,1],[4,0]]`.
pub fn gl25() -> MatrixGroup {
    let a = GfMatrix::from_rows(5, &[&[2, 0], &[0, 1]]).expect("valid");
    let b = GfMatrix::from_rows(5, &[&[4, 1], &[4, 0]]).expect("valid");
    MatrixGroup::from_generators("GL(2,5)", 5, 2, &[a, b], 1000).expect("GL(2,5) has order 480")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::conjugacy_classes;

    #[test]
    fn general_linear_group() {
        let g = gl25();
        assert_eq!(g.order(), 480);
        assert_eq!(conjugacy_classes(&g).len(), 24);
        let x = g.generators()[0];
        assert_eq!(g.mul(x, g.inv(x)), g.identity());
        assert_eq!(g.perm_image(1000).unwrap().order(), 480);
    }

    #[test]
    fn singular_and_trivial() {
        let s = GfMatrix::from_rows(5, &[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(MatrixGroup::from_generators("s", 5, 2, &[s], 100).unwrap_err(), Error::SingularGenerator);
        let t = MatrixGroup::from_generators("1", 5, 2, &[], 100).unwrap();
        assert_eq!(t.order(), 1);
        let minus = MatrixGroup::from_generators("-I", 5, 2, &[GfMatrix::scalar(5, 2, 4)], 100).unwrap();
        assert_eq!(minus.order(), 2);
        assert_eq!(minus.act(minus.space().encode(&[1, 2]), 1), minus.space().encode(&[4, 3]));
    }

    #[test]
    fn large_groups_without_table() {
        // GL(2,7) has order 48·42 = 2016 > TABLE_LIMIT
        let a = GfMatrix::from_rows(7, &[&[3, 0], &[0, 1]]).unwrap();
        let b = GfMatrix::from_rows(7, &[&[6, 1], &[6, 0]]).unwrap();
        let g = MatrixGroup::from_generators("GL(2,7)", 7, 2, &[a, b], 5000).unwrap();
        assert_eq!(g.order(), 2016);
        let c = conjugacy_classes(&g);
        // q² − 1 classes for GL(2,q)
        assert_eq!(c.len(), 48);
    }
}

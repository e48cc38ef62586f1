use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::group::{Elem, Group};
use crate::perm::Permutation;

/// Groups up to this order get a full multiplication table.
const TABLE_LIMIT: usize = 1024;

/// An enumerated permutation group.
///
/// Elements are stored as a flat array of image sequences sorted
/// lexicographically, so element `0` is the identity and the index order is
/// the canonical order.
#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    degree: usize,
    flat: Vec<u32>,
    gens: Vec<Elem>,
    inverses: Vec<Elem>,
    table: Option<Vec<Elem>>,
    blocks: Option<Vec<Vec<u32>>>,
}

impl core::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("order", &self.order())
            .finish()
    }
}

impl FiniteGroup {
    /// Enumerates the closure of `generators`, failing once it grows past `cap`.
    pub fn from_generators(name: &str, degree: usize, generators: &[Permutation], cap: usize) -> Result<Self> {
        for g in generators {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {g} has degree {}, expected {degree}",
                    g.degree()
                )));
            }
        }
        let id: Vec<u32> = (0..degree as u32).collect();
        let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y: Vec<u32> = x.iter().map(|&i| g.apply(i)).collect();
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let order = seen.len();
        let mut flat = Vec::with_capacity(order * degree);
        for x in &seen {
            flat.extend_from_slice(x);
        }
        drop(seen);
        let mut group = Self {
            name: name.to_string(),
            degree,
            flat,
            gens: Vec::new(),
            inverses: Vec::new(),
            table: None,
            blocks: None,
        };
        let mut gens: Vec<Elem> = generators.iter().map(|g| group.index_of(g).unwrap()).filter(|&x| x != 0).collect();
        gens.dedup();
        group.gens = gens;
        group.inverses = (0..order)
            .map(|i| {
                let row = group.row(i);
                let mut inv = vec![0u32; degree];
                for (k, &x) in row.iter().enumerate() {
                    inv[x as usize] = k as u32;
                }
                group.find_with(|k| inv[k]).unwrap()
            })
            .collect();
        if order <= TABLE_LIMIT {
            let mut table = Vec::with_capacity(order * order);
            for a in 0..order {
                for b in 0..order {
                    table.push(group.compose(a as Elem, b as Elem));
                }
            }
            group.table = Some(table);
        }
        Ok(group)
    }

    pub fn symmetric(n: usize, cap: usize) -> Result<Self> {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[&[0, 1]])?);
        }
        if n >= 3 {
            let cycle: Vec<u32> = (0..n as u32).collect();
            gens.push(Permutation::from_cycles(n, &[&cycle])?);
        }
        Self::from_generators(&format!("S{n}"), n, &gens, cap)
    }

    pub fn alternating(n: usize, cap: usize) -> Result<Self> {
        let gens = (2..n as u32)
            .map(|k| Permutation::from_cycles(n, &[&[0, 1, k]]))
            .collect::<Result<Vec<_>>>()?;
        Self::from_generators(&format!("A{n}"), n, &gens, cap)
    }

    pub fn cyclic(n: usize, cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("cyclic group of order 0".into()));
        }
        let cycle: Vec<u32> = (0..n as u32).collect();
        let gens = if n > 1 { vec![Permutation::from_cycles(n, &[&cycle])?] } else { Vec::new() };
        Self::from_generators(&format!("C{n}"), n, &gens, cap)
    }

    /// Dihedral group of order `2n` acting on the vertices of an `n`-gon.
    pub fn dihedral(n: usize, cap: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidInput(format!("dihedral group needs n >= 3, got {n}")));
        }
        let rot = Permutation::from_images((0..n as u32).map(|i| (i + 1) % n as u32).collect())?;
        let refl = Permutation::from_images((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect())?;
        Self::from_generators(&format!("D{}", 2 * n), n, &[rot, refl], cap)
    }

    /// The Frobenius group of order `qp` inside the affine line over GF(p).
    pub fn frobenius(q: u32, p: u32, cap: usize) -> Result<Self> {
        if !is_prime(p) || !is_prime(q) || !(p - 1).is_multiple_of(q) {
            return Err(Error::InvalidInput(format!("need primes q | p-1, got q={q}, p={p}")));
        }
        let a = element_of_order_mod(q, p);
        let translate = Permutation::from_images((0..p).map(|x| (x + 1) % p).collect())?;
        let scale = Permutation::from_images((0..p).map(|x| (x * a) % p).collect())?;
        Self::from_generators(&format!("F({q},{p})"), p as usize, &[translate, scale], cap)
    }

    /// The quaternion group of order 8 in its regular representation.
    pub fn quaternion(cap: usize) -> Result<Self> {
        // element 2u+s is (-1)^s times unit u in {1, i, j, k}
        let unit_mul = |a: usize, b: usize| -> (usize, usize) {
            const T: [[(usize, usize); 4]; 4] = [
                [(0, 0), (1, 0), (2, 0), (3, 0)],
                [(1, 0), (0, 1), (3, 0), (2, 1)],
                [(2, 0), (3, 1), (0, 1), (1, 0)],
                [(3, 0), (2, 0), (1, 1), (0, 1)],
            ];
            T[a][b]
        };
        let right = |g: usize| -> Result<Permutation> {
            let images = (0..8)
                .map(|x| {
                    let (u, s) = unit_mul(x / 2, g / 2);
                    (2 * u + ((x % 2 + g % 2 + s) % 2)) as u32
                })
                .collect();
            Permutation::from_images(images)
        };
        Self::from_generators("Q8", 8, &[right(2)?, right(4)?], cap)
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup, cap: usize) -> Result<Self> {
        let degree = a.degree + b.degree;
        let mut gens = Vec::new();
        for &g in a.generators() {
            gens.push(a.element(g).extend(degree));
        }
        for &g in b.generators() {
            let mut images: Vec<u32> = (0..a.degree as u32).collect();
            images.extend(b.row(g as usize).iter().map(|&x| x + a.degree as u32));
            gens.push(Permutation::from_images(images)?);
        }
        Self::from_generators(&format!("{}x{}", a.name, b.name), degree, &gens, cap)
    }

    /// `a wr p`: `a` acts on each of the `n` blocks of size `deg(a)`, `p` permutes the blocks.
    pub fn wreath_product(a: &FiniteGroup, p: &FiniteGroup, cap: usize) -> Result<Self> {
        let d = a.degree;
        let n = p.degree;
        let projected = libm::pow(a.order() as f64, n as f64) * p.order() as f64;
        if projected > cap as f64 {
            return Err(Error::CapExceeded { cap });
        }
        let degree = n * d;
        let mut gens = Vec::new();
        for block in 0..n {
            for &g in a.generators() {
                let mut images: Vec<u32> = (0..degree as u32).collect();
                for (j, &x) in a.row(g as usize).iter().enumerate() {
                    images[block * d + j] = (block * d) as u32 + x;
                }
                gens.push(Permutation::from_images(images)?);
            }
        }
        for &g in p.generators() {
            let row = p.row(g as usize);
            let images = (0..degree).map(|x| row[x / d] * d as u32 + (x % d) as u32).collect();
            gens.push(Permutation::from_images(images)?);
        }
        let mut group = Self::from_generators(&format!("{} wr {}", a.name, p.name), degree, &gens, cap)?;
        group.blocks = Some((0..n).map(|b| (b * d) as u32..((b + 1) * d) as u32).map(|r| r.collect()).collect());
        Ok(group)
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn with_blocks(mut self, blocks: Vec<Vec<u32>>) -> Self {
        self.blocks = Some(blocks);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn blocks(&self) -> Option<&[Vec<u32>]> {
        self.blocks.as_deref()
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.flat[i * self.degree..(i + 1) * self.degree]
    }

    pub fn element(&self, i: Elem) -> Permutation {
        Permutation::from_images(self.row(i as usize).to_vec()).expect("stored rows are permutations")
    }

    pub fn index_of(&self, p: &Permutation) -> Option<Elem> {
        if p.degree() != self.degree {
            return None;
        }
        let images = p.images();
        self.find_with(|k| images[k])
    }

    pub fn generator_perms(&self) -> Vec<Permutation> {
        self.gens.iter().map(|&g| self.element(g)).collect()
    }

    fn compose(&self, a: Elem, b: Elem) -> Elem {
        let ra = self.row(a as usize);
        let rb = self.row(b as usize);
        self.find_with(|k| rb[ra[k] as usize]).expect("group is closed under products")
    }

    fn find_with(&self, f: impl Fn(usize) -> u32) -> Option<Elem> {
        let d = self.degree;
        let (mut lo, mut hi) = (0usize, self.flat.len() / d.max(1));
        if d == 0 {
            return Some(0);
        }
        while lo < hi {
            let mid = (lo + hi) / 2;
            let row = self.row(mid);
            let mut ord = Ordering::Equal;
            for (k, &r) in row.iter().enumerate() {
                let v = f(k);
                if r != v {
                    ord = r.cmp(&v);
                    break;
                }
            }
            match ord {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid as Elem),
            }
        }
        None
    }
}

impl Group for FiniteGroup {
    fn order(&self) -> usize {
        self.inverses.len()
    }
    fn identity(&self) -> Elem {
        0
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.table {
            Some(t) => t[a as usize * self.order() + b as usize],
            None => self.compose(a, b),
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
        let ra = self.row(a as usize);
        let rb = self.row(b as usize);
        (0..self.degree).all(|k| rb[ra[k] as usize] == ra[rb[k] as usize])
    }
}

/// Builds a permutation group from any group acting on `degree` points, given the action of each generator.
pub fn from_action<G: Group>(name: &str, g: &G, degree: usize, act: impl Fn(u32, Elem) -> u32, cap: usize) -> Result<FiniteGroup> {
    let gens = g
        .generators()
        .iter()
        .map(|&s| Permutation::from_images((0..degree as u32).map(|x| act(x, s)).collect()))
        .collect::<Result<Vec<_>>>()?;
    FiniteGroup::from_generators(name, degree, &gens, cap)
}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Least residue of multiplicative order exactly `q` modulo the prime `p`.
pub(crate) fn element_of_order_mod(q: u32, p: u32) -> u32 {
    (2..p)
        .find(|&a| {
            let mut x = 1u64;
            let mut k = 0;
            loop {
                x = x * a as u64 % p as u64;
                k += 1;
                if x == 1 {
                    break;
                }
            }
            k == q
        })
        .unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_CAP;

    #[test]
    fn standard_orders() {
        assert_eq!(FiniteGroup::symmetric(3, DEFAULT_CAP).unwrap().order(), 6);
        assert_eq!(FiniteGroup::symmetric(5, DEFAULT_CAP).unwrap().order(), 120);
        assert_eq!(FiniteGroup::alternating(5, DEFAULT_CAP).unwrap().order(), 60);
        assert_eq!(FiniteGroup::cyclic(7, DEFAULT_CAP).unwrap().order(), 7);
        assert_eq!(FiniteGroup::dihedral(5, DEFAULT_CAP).unwrap().order(), 10);
        assert_eq!(FiniteGroup::frobenius(3, 7, DEFAULT_CAP).unwrap().order(), 21);
        assert_eq!(FiniteGroup::quaternion(DEFAULT_CAP).unwrap().order(), 8);
    }

    #[test]
    fn wreath_orders() {
        let s3 = FiniteGroup::symmetric(3, DEFAULT_CAP).unwrap();
        let c2 = FiniteGroup::cyclic(2, DEFAULT_CAP).unwrap();
        let c3 = FiniteGroup::cyclic(3, DEFAULT_CAP).unwrap();
        let c4 = FiniteGroup::cyclic(4, DEFAULT_CAP).unwrap();
        assert_eq!(FiniteGroup::wreath_product(&s3, &c2, DEFAULT_CAP).unwrap().order(), 72);
        assert_eq!(FiniteGroup::wreath_product(&c4, &c2, DEFAULT_CAP).unwrap().order(), 32);
        assert_eq!(FiniteGroup::wreath_product(&c2, &c3, DEFAULT_CAP).unwrap().order(), 24);
        assert_eq!(
            FiniteGroup::wreath_product(&s3, &c2, 50).unwrap_err(),
            Error::CapExceeded { cap: 50 }
        );
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(FiniteGroup::symmetric(6, 100).unwrap_err(), Error::CapExceeded { cap: 100 });
    }

    #[test]
    fn arithmetic_matches_permutations() {
        let g = FiniteGroup::symmetric(4, DEFAULT_CAP).unwrap();
        for a in 0..g.order() as Elem {
            for b in [0, 3, 7, 23] {
                let prod = g.element(a).then(&g.element(b));
                assert_eq!(g.index_of(&prod), Some(g.mul(a, b)));
            }
            assert!(g.element(g.inv(a)).then(&g.element(a)).is_identity());
        }
        assert!(g.element(0).is_identity());
    }
}

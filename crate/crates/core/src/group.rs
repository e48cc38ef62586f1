use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Index of a group element in the canonical element order of its group.
pub type Elem = u32;

/// A finite group with elements `0..order()`.
///
/// Implementors number their elements in a fixed canonical order; algorithms
/// that need a canonical representative take the least index.
pub trait Group {
    fn order(&self) -> usize;
    fn identity(&self) -> Elem;
    fn mul(&self, a: Elem, b: Elem) -> Elem;
    fn inv(&self, a: Elem) -> Elem;
    fn generators(&self) -> &[Elem];

    fn commutes(&self, a: Elem, b: Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// `h⁻¹ x h`.
    fn conj(&self, x: Elem, h: Elem) -> Elem {
        self.mul(self.mul(self.inv(h), x), h)
    }

    fn pow(&self, x: Elem, mut k: u64) -> Elem {
        let mut acc = self.identity();
        let mut base = x;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    fn element_order(&self, x: Elem) -> u64 {
        let e = self.identity();
        let mut y = x;
        let mut k = 1;
        while y != e {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }
}

impl<G: Group + ?Sized> Group for &G {
    fn order(&self) -> usize {
        (**self).order()
    }
    fn identity(&self) -> Elem {
        (**self).identity()
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        (**self).mul(a, b)
    }
    fn inv(&self, a: Elem) -> Elem {
        (**self).inv(a)
    }
    fn generators(&self) -> &[Elem] {
        (**self).generators()
    }
    fn commutes(&self, a: Elem, b: Elem) -> bool {
        (**self).commutes(a, b)
    }
    fn conj(&self, x: Elem, h: Elem) -> Elem {
        (**self).conj(x, h)
    }
}

pub(crate) struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub(crate) fn new(n: usize) -> Self {
        Self { words: vec![0; n.div_ceil(64)] }
    }

    /// Sets bit `i`, returning whether it was previously clear.
    pub(crate) fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, i % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }
}

/// All elements reachable from the identity by right multiplication with `gens`, sorted.
pub fn closure<G: Group>(g: &G, gens: &[Elem]) -> Vec<Elem> {
    let e = g.identity();
    let mut seen = BitSet::new(g.order());
    seen.insert(e as usize);
    let mut members = vec![e];
    let mut queue = VecDeque::from([e]);
    while let Some(x) = queue.pop_front() {
        for &s in gens {
            let y = g.mul(x, s);
            if seen.insert(y as usize) {
                members.push(y);
                queue.push_back(y);
            }
        }
    }
    members.sort_unstable();
    members
}

/// A subgroup of a parent group, stored as the sorted list of member indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<Elem>,
    generators: Vec<Elem>,
    normal: bool,
}

impl Subgroup {
    pub fn generated<G: Group>(g: &G, gens: &[Elem]) -> Self {
        let members = closure(g, gens);
        let mut generators: Vec<Elem> = gens.iter().copied().filter(|&x| x != g.identity()).collect();
        generators.dedup();
        Self::assemble(g, members, generators)
    }

    pub fn whole<G: Group>(g: &G) -> Self {
        Self {
            members: (0..g.order() as Elem).collect(),
            generators: g.generators().to_vec(),
            normal: true,
        }
    }

    pub fn trivial<G: Group>(g: &G) -> Self {
        Self { members: vec![g.identity()], generators: Vec::new(), normal: true }
    }

    /// Validates that `members` is a subgroup and derives a generating set greedily.
    pub fn from_members<G: Group>(g: &G, mut members: Vec<Elem>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if members.iter().any(|&x| x as usize >= g.order()) {
            return Err(Error::NotASubgroup("element index out of range".into()));
        }
        let sub = Self::from_members_unchecked(g, members.clone());
        if sub.members != members {
            return Err(Error::NotASubgroup("member set is not closed".into()));
        }
        Ok(sub)
    }

    /// Builds a subgroup from a member set known to be closed.
    pub(crate) fn from_members_unchecked<G: Group>(g: &G, members: Vec<Elem>) -> Self {
        let mut gens = Vec::new();
        let mut current = vec![g.identity()];
        for &x in &members {
            if current.binary_search(&x).is_err() {
                gens.push(x);
                current = closure(g, &gens);
                if current.len() >= members.len() {
                    break;
                }
            }
        }
        if current.len() > members.len() {
            // not closed: the closure escaped the given set
            return Self::assemble(g, current, gens);
        }
        Self::assemble(g, members, gens)
    }

    fn assemble<G: Group>(g: &G, members: Vec<Elem>, generators: Vec<Elem>) -> Self {
        let mut sub = Self { members, generators, normal: false };
        sub.normal = g.generators().iter().all(|&s| sub.normalized_by(g, s));
        sub
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn local_index(&self, x: Elem) -> Option<Elem> {
        self.members.binary_search(&x).ok().map(|i| i as Elem)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    /// Whether `x` normalizes this subgroup.
    pub fn normalized_by<G: Group>(&self, g: &G, x: Elem) -> bool {
        self.generators.iter().all(|&h| self.contains(g.conj(h, x)))
    }

    pub fn conjugate<G: Group>(&self, g: &G, x: Elem) -> Subgroup {
        let mut members: Vec<Elem> = self.members.iter().map(|&h| g.conj(h, x)).collect();
        members.sort_unstable();
        let generators = self.generators.iter().map(|&h| g.conj(h, x)).collect();
        Self::assemble(g, members, generators)
    }

    /// Re-expresses this subgroup inside `sup`, in the local indices of `sup`'s view.
    pub fn relative_to<G: Group>(&self, g: &G, sup: &Subgroup) -> Result<Subgroup> {
        let members = self
            .members
            .iter()
            .map(|&x| sup.local_index(x).ok_or_else(|| Error::NotASubgroup("not contained in the supergroup".into())))
            .collect::<Result<Vec<_>>>()?;
        let generators = self.generators.iter().map(|&x| sup.local_index(x).unwrap()).collect();
        let view = sup.view(g);
        Ok(Self::assemble(&view, members, generators))
    }

    /// Maps a subgroup given in `sup`-local indices back to parent indices.
    pub fn lift<G: Group>(&self, g: &G, sup: &Subgroup) -> Subgroup {
        let members = self.members.iter().map(|&x| sup.members[x as usize]).collect();
        let generators = self.generators.iter().map(|&x| sup.members[x as usize]).collect();
        Self::assemble(g, members, generators)
    }

    pub fn view<'a, G: Group>(&'a self, g: &'a G) -> SubgroupView<'a, G> {
        SubgroupView::new(g, self)
    }
}

/// A subgroup presented as a group in its own right, with local indices
/// `0..|H|` following the parent's canonical order.
pub struct SubgroupView<'a, G: Group> {
    parent: &'a G,
    members: &'a [Elem],
    gens: Vec<Elem>,
    identity: Elem,
}

impl<'a, G: Group> SubgroupView<'a, G> {
    pub fn new(parent: &'a G, sub: &'a Subgroup) -> Self {
        let local = |x: Elem| sub.members.binary_search(&x).expect("subgroup generator is a member") as Elem;
        Self {
            parent,
            members: &sub.members,
            gens: sub.generators.iter().map(|&x| local(x)).collect(),
            identity: local(parent.identity()),
        }
    }

    pub fn parent(&self) -> &'a G {
        self.parent
    }

    pub fn to_parent(&self, a: Elem) -> Elem {
        self.members[a as usize]
    }

    pub fn to_local(&self, x: Elem) -> Option<Elem> {
        self.members.binary_search(&x).ok().map(|i| i as Elem)
    }

    fn local(&self, x: Elem) -> Elem {
        self.members.binary_search(&x).expect("subgroup is closed") as Elem
    }
}

impl<G: Group> Group for SubgroupView<'_, G> {
    fn order(&self) -> usize {
        self.members.len()
    }
    fn identity(&self) -> Elem {
        self.identity
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.local(self.parent.mul(self.members[a as usize], self.members[b as usize]))
    }
    fn inv(&self, a: Elem) -> Elem {
        self.local(self.parent.inv(self.members[a as usize]))
    }
    fn generators(&self) -> &[Elem] {
        &self.gens
    }
    fn commutes(&self, a: Elem, b: Elem) -> bool {
        self.parent.commutes(self.members[a as usize], self.members[b as usize])
    }
    fn conj(&self, x: Elem, h: Elem) -> Elem {
        self.local(self.parent.conj(self.members[x as usize], self.members[h as usize]))
    }
}

/// Smallest subgroup containing `elems` and normalized by every generator of `g`.
pub fn normal_closure<G: Group>(g: &G, elems: &[Elem]) -> Subgroup {
    normal_closure_under(g, elems, g.generators())
}

/// Smallest subgroup containing `elems` and normalized by every element of `by`.
pub fn normal_closure_under<G: Group>(g: &G, elems: &[Elem], by: &[Elem]) -> Subgroup {
    let mut gens: Vec<Elem> = elems.to_vec();
    let mut members = closure(g, &gens);
    loop {
        let mut grew = false;
        'outer: for &s in by {
            for i in 0..gens.len() {
                let c = g.conj(gens[i], s);
                if members.binary_search(&c).is_err() {
                    gens.push(c);
                    members = closure(g, &gens);
                    grew = true;
                    break 'outer;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let mut generators: Vec<Elem> = gens.into_iter().filter(|&x| x != g.identity()).collect();
    generators.sort_unstable();
    generators.dedup();
    Subgroup::assemble(g, members, generators)
}

/// The derived subgroup: the normal closure of the commutators of generators.
pub fn derived_subgroup<G: Group>(g: &G) -> Subgroup {
    let gens = g.generators();
    let mut comms = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            let c = g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b));
            if c != g.identity() {
                comms.push(c);
            }
        }
    }
    comms.sort_unstable();
    comms.dedup();
    normal_closure(g, &comms)
}

pub fn center<G: Group>(g: &G) -> Subgroup {
    let gens = g.generators();
    let members = (0..g.order() as Elem).filter(|&x| gens.iter().all(|&s| g.commutes(x, s))).collect();
    Subgroup::from_members_unchecked(g, members)
}

pub fn intersection<G: Group>(g: &G, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let members = a.members.iter().copied().filter(|&x| b.contains(x)).collect();
    Subgroup::from_members_unchecked(g, members)
}

pub fn join<G: Group>(g: &G, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let mut gens = a.generators.clone();
    gens.extend_from_slice(&b.generators);
    Subgroup::generated(g, &gens)
}

/// The core of `h` in `g`: the intersection of all conjugates of `h`.
///
/// Intersecting with conjugates by generators until nothing changes yields the
/// same subgroup as intersecting over every element.
pub fn core_of<G: Group>(g: &G, h: &Subgroup) -> Result<Subgroup> {
    if h.members.iter().any(|&x| x as usize >= g.order()) {
        return Err(Error::NotASubgroup("element index out of range".into()));
    }
    let mut cur = h.clone();
    loop {
        let mut changed = false;
        for &s in g.generators() {
            if !cur.normalized_by(g, s) {
                let conj = cur.conjugate(g, s);
                cur = intersection(g, &cur, &conj);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    cur.normal = true;
    Ok(cur)
}

/// Whether `h` is subnormal in `g`, decided by the descending chain of normal closures.
pub fn is_subnormal<G: Group>(g: &G, h: &Subgroup) -> bool {
    let mut k = Subgroup::whole(g);
    loop {
        if k.order() == h.order() {
            return k.members == h.members;
        }
        let next = normal_closure_under(g, h.generators(), k.generators());
        if next.order() == k.order() {
            return false;
        }
        k = next;
    }
}

/// Whether some element of `g` has order divisible by `p`.
pub fn has_element_of_order_divisible_by<G: Group>(g: &G, p: u64) -> bool {
    (0..g.order() as Elem).any(|x| g.element_order(x) % p == 0)
}

//! Prime fields and coordinate spaces `GF(p)^d`.

use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permgroup::is_prime;

/// Inverse of a nonzero residue modulo a prime.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p as u64 - 2, p)
}

pub fn pow_mod(a: u32, mut e: u64, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = (a % p) as u64;
    let m = p as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u32
}

/// A vector of `GF(p)^d` with entries in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GfVector {
    p: u32,
    entries: Vec<u32>,
}

impl GfVector {
    pub fn new(p: u32, entries: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(alloc::format!("{p} is not prime")));
        }
        if entries.iter().any(|&x| x >= p) {
            return Err(Error::InvalidInput("vector entry out of range".into()));
        }
        Ok(Self { p, entries })
    }

    pub fn zero(p: u32, d: usize) -> Self {
        Self { p, entries: vec![0; d] }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| (a + b) % self.p).collect();
        Self { p: self.p, entries }
    }

    pub fn dot(&self, other: &Self) -> u32 {
        let s: u64 = self.entries.iter().zip(&other.entries).map(|(&a, &b)| a as u64 * b as u64).sum();
        (s % self.p as u64) as u32
    }
}

/// `GF(p)^dim` with vectors numbered lexicographically: `v ↦ Σ vᵢ p^{dim−1−i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VecSpace {
    p: u32,
    dim: usize,
    size: u32,
}

impl VecSpace {
    pub fn new(p: u32, dim: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(alloc::format!("{p} is not prime")));
        }
        let size = (p as u64).checked_pow(dim as u32).filter(|&s| s <= u32::MAX as u64 / 2);
        match size {
            Some(size) => Ok(Self { p, dim, size: size as u32 }),
            None => Err(Error::CapExceeded { cap: u32::MAX as usize / 2 }),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `|V| = p^dim`.
    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn encode(&self, entries: &[u32]) -> u32 {
        entries.iter().fold(0, |acc, &x| acc * self.p + x)
    }

    pub fn decode_into(&self, mut v: u32, out: &mut [u32]) {
        for slot in out.iter_mut().rev() {
            *slot = v % self.p;
            v /= self.p;
        }
    }

    pub fn decode(&self, v: u32) -> Vec<u32> {
        let mut out = vec![0; self.dim];
        self.decode_into(v, &mut out);
        out
    }

    pub fn vector(&self, v: u32) -> GfVector {
        GfVector { p: self.p, entries: self.decode(v) }
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.dim {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.dim {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    /// `e_i`.
    pub fn basis(&self, i: usize) -> u32 {
        self.p.pow((self.dim - 1 - i) as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encoding_is_lexicographic() {
        let v = VecSpace::new(5, 2).unwrap();
        assert_eq!(v.size(), 25);
        assert_eq!(v.encode(&[1, 3]), 8);
        assert_eq!(v.decode(8), [1, 3]);
        assert_eq!(v.add(v.encode(&[4, 4]), v.encode(&[1, 2])), v.encode(&[0, 1]));
        assert_eq!(v.neg(v.encode(&[1, 0])), v.encode(&[4, 0]));
        assert_eq!(v.basis(0), 5);
        assert_eq!(inv_mod(2, 5), 3);
    }
}

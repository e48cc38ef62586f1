use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use super::field::inv_mod;
use crate::error::{Error, Result};
use crate::permgroup::is_prime;

/// A `d × d` matrix over `GF(p)`, row-major. Vectors are rows and act by `v ↦ v·M`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GfMatrix {
    p: u32,
    d: usize,
    entries: Vec<u32>,
}

impl GfMatrix {
    pub fn new(p: u32, d: usize, entries: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if entries.len() != d * d {
            return Err(Error::InvalidInput(format!("expected {} entries, got {}", d * d, entries.len())));
        }
        if entries.iter().any(|&x| x >= p) {
            return Err(Error::InvalidInput("matrix entry out of range".into()));
        }
        Ok(Self { p, d, entries })
    }

    pub fn from_rows(p: u32, rows: &[&[u32]]) -> Result<Self> {
        let d = rows.len();
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidInput("matrix is not square".into()));
        }
        Self::new(p, d, rows.iter().flat_map(|r| r.iter().map(|&x| x % p)).collect())
    }

    pub(crate) fn raw(p: u32, d: usize, entries: Vec<u32>) -> Self {
        Self { p, d, entries }
    }

    pub fn identity(p: u32, d: usize) -> Self {
        Self::scalar(p, d, 1)
    }

    pub fn scalar(p: u32, d: usize, c: u32) -> Self {
        let mut entries = vec![0; d * d];
        for i in 0..d {
            entries[i * d + i] = c % p;
        }
        Self { p, d, entries }
    }

    pub fn diagonal(p: u32, diag: &[u32]) -> Self {
        let d = diag.len();
        let mut entries = vec![0; d * d];
        for (i, &c) in diag.iter().enumerate() {
            entries[i * d + i] = c % p;
        }
        Self { p, d, entries }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.d + j]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = self.d;
        let mut out = vec![0u32; d * d];
        mul_into(self.p, d, &self.entries, &other.entries, &mut out);
        Self { p: self.p, d, entries: out }
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut acc = Self::identity(self.p, self.d);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| (a + b) % self.p).collect();
        Self { p: self.p, d: self.d, entries }
    }

    pub fn scale(&self, c: u32) -> Self {
        let entries = self.entries.iter().map(|&a| (a as u64 * c as u64 % self.p as u64) as u32).collect();
        Self { p: self.p, d: self.d, entries }
    }

    /// `M − I`.
    pub fn minus_identity(&self) -> Self {
        let mut m = self.clone();
        for i in 0..self.d {
            let e = &mut m.entries[i * self.d + i];
            *e = (*e + self.p - 1) % self.p;
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let d = self.d;
        let mut entries = vec![0; d * d];
        for i in 0..d {
            for j in 0..d {
                entries[j * d + i] = self.entries[i * d + j];
            }
        }
        Self { p: self.p, d, entries }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.p, self.d)
    }

    pub fn det(&self) -> u32 {
        let (_, det) = echelon(self.p, self.d, self.d, &mut self.entries.clone());
        det
    }

    pub fn rank(&self) -> usize {
        rank_of(self.p, self.d, self.d, &self.entries)
    }

    pub fn inverse(&self) -> Option<Self> {
        let d = self.d;
        let p = self.p;
        let mut aug = vec![0u32; d * 2 * d];
        for i in 0..d {
            aug[i * 2 * d..i * 2 * d + d].copy_from_slice(&self.entries[i * d..i * d + d]);
            aug[i * 2 * d + d + i] = 1;
        }
        let (rank, _) = echelon(p, d, 2 * d, &mut aug);
        if rank < d || (0..d).any(|i| aug[i * 2 * d + i] != 1) {
            return None;
        }
        let entries = (0..d).flat_map(|i| aug[i * 2 * d + d..(i + 1) * 2 * d].to_vec()).collect();
        Some(Self { p, d, entries })
    }

    /// `v·M` for a row vector `v`.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let mut out = vec![0; self.d];
        apply_into(self.p, self.d, &self.entries, v, &mut out);
        out
    }

    /// The `k × k` block starting at `(r, c)`.
    pub fn block(&self, r: usize, c: usize, k: usize) -> Self {
        let entries = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).map(|(i, j)| self.get(r + i, c + j)).collect();
        Self { p: self.p, d: k, entries }
    }

    /// The multiplicative order.
    pub fn order(&self) -> u64 {
        let id = Self::identity(self.p, self.d);
        let mut x = self.clone();
        let mut k = 1;
        while x != id {
            x = x.mul(self);
            k += 1;
        }
        k
    }

    /// Packs the entries base `p` into a single integer; distinct matrices of
    /// the same shape get distinct keys, and key order is entry order.
    pub fn key(&self) -> u128 {
        pack(self.p, &self.entries)
    }
}

impl fmt::Debug for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.d {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.d {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

pub(crate) fn pack(p: u32, entries: &[u32]) -> u128 {
    entries.iter().fold(0u128, |acc, &x| acc * p as u128 + x as u128)
}

/// Largest `d` whose `d × d` matrices over `GF(p)` fit a `u128` key.
pub fn max_key_dim(p: u32) -> usize {
    let bits = 32 - (p - 1).leading_zeros();
    let mut d = 1;
    while ((d + 1) * (d + 1)) as u32 * bits <= 127 {
        d += 1;
    }
    d
}

pub(crate) fn mul_into(p: u32, d: usize, a: &[u32], b: &[u32], out: &mut [u32]) {
    let m = p as u64;
    for i in 0..d {
        for j in 0..d {
            let mut s = 0u64;
            for k in 0..d {
                s += a[i * d + k] as u64 * b[k * d + j] as u64;
            }
            out[i * d + j] = (s % m) as u32;
        }
    }
}

pub(crate) fn apply_into(p: u32, d: usize, m: &[u32], v: &[u32], out: &mut [u32]) {
    let q = p as u64;
    for j in 0..d {
        let mut s = 0u64;
        for i in 0..d {
            s += v[i] as u64 * m[i * d + j] as u64;
        }
        out[j] = (s % q) as u32;
    }
}

/// Reduced row echelon form in place; returns the rank and the determinant
/// of the leading square part (meaningful when `rows == cols`).
pub(crate) fn echelon(p: u32, rows: usize, cols: usize, a: &mut [u32]) -> (usize, u32) {
    let m = p as u64;
    let mut det = 1u64;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            if c < rows {
                det = 0;
            }
            continue;
        };
        if piv != r {
            for j in 0..cols {
                a.swap(piv * cols + j, r * cols + j);
            }
            det = (m - det) % m;
        }
        let pv = a[r * cols + c];
        if c < rows {
            det = det * pv as u64 % m;
        }
        let inv = inv_mod(pv, p) as u64;
        for j in 0..cols {
            a[r * cols + j] = (a[r * cols + j] as u64 * inv % m) as u32;
        }
        for i in 0..rows {
            if i != r && a[i * cols + c] != 0 {
                let f = a[i * cols + c] as u64;
                for j in 0..cols {
                    let sub = f * a[r * cols + j] as u64 % m;
                    a[i * cols + j] = ((a[i * cols + j] as u64 + m - sub) % m) as u32;
                }
            }
        }
        r += 1;
    }
    if r < rows {
        det = 0;
    }
    (r, det as u32)
}

pub(crate) fn rank_of(p: u32, rows: usize, cols: usize, a: &[u32]) -> usize {
    echelon(p, rows, cols, &mut a.to_vec()).0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = GfMatrix::from_rows(5, &[&[4, 1], &[4, 0]]).unwrap();
        assert_eq!(a.det(), 1);
        let ai = a.inverse().unwrap();
        assert!(a.mul(&ai).is_identity());
        assert_eq!(a.apply(&[1, 0]), [4, 1]);
        let s = GfMatrix::from_rows(5, &[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(s.det(), 0);
        assert_eq!(s.rank(), 1);
        assert!(s.inverse().is_none());
        assert_eq!(GfMatrix::scalar(5, 2, 2).order(), 4);
        assert_eq!(a.pow(a.order()), GfMatrix::identity(5, 2));
        assert!(max_key_dim(5) >= 6);
    }

    #[test]
    fn determinant_sign() {
        let swap = GfMatrix::from_rows(5, &[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(swap.det(), 4);
        let m = GfMatrix::from_rows(7, &[&[2, 3, 1], &[0, 1, 4], &[5, 0, 6]]).unwrap();
        // 2(6-0) - 3(0-20) + 1(0-5) = 12 + 60 - 5 = 67 = 4 mod 7
        assert_eq!(m.det(), 4);
    }
}

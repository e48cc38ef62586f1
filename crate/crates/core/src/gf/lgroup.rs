//! A subgroup `L ≤ GL(2,5)` of order 96, the largest `5'`-subgroup.

use alloc::vec::Vec;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::dual::{dual_orbits, vector_orbits};
use super::matgroup::{gl25, MatrixGroup};
use super::matrix::GfMatrix;
use crate::classes::{fingerprint, GroupFingerprint};
use crate::error::{Error, Result};
use crate::group::{center, closure, derived_subgroup, Elem, Group, Subgroup};
use crate::permgroup::FiniteGroup;
use crate::quotient::quotient_group;
use crate::sampling::rng;

pub const L_SEARCH_SEED: u64 = 96;
const L_SEARCH_TRIES: usize = 10_000;

/// A subgroup of `GL(2,5)` of order 96 found by a seeded search over
/// two-generator subgroups.
pub fn five_complement_gl25() -> Result<MatrixGroup> {
    let gl = gl25();
    let mut rng = rng(L_SEARCH_SEED);
    let n = gl.order() as Elem;
    for _ in 0..L_SEARCH_TRIES {
        let gens = [rng.gen_range(0..n), rng.gen_range(0..n)];
        if closure(&gl, &gens).len() == 96 {
            let mats: Vec<GfMatrix> = gens.iter().map(|&g| gl.matrix(g)).collect();
            return MatrixGroup::from_generators("L", 5, 2, &mats, 1000);
        }
    }
    Err(Error::SearchFailed("no subgroup of order 96 among the seeded pairs".into()))
}

/// Structural invariants of `L`, computed rather than assumed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LReport {
    pub generators: Vec<GfMatrix>,
    pub order: usize,
    pub has_order_five: bool,
    pub center_order: usize,
    pub derived_series: Vec<usize>,
    pub center_quotient: GroupFingerprint,
    pub center_quotient_is_s4xc2: bool,
    pub second_derived_is_q8: bool,
    pub sylow2_is_c4_wr_c2: bool,
    pub vector_orbits: usize,
    pub dual_orbits: usize,
    pub affine_order: usize,
}

impl LReport {
    /// All claimed properties at once.
    pub fn all_hold(&self) -> bool {
        self.order == 96
            && !self.has_order_five
            && self.center_order == 2
            && self.center_quotient_is_s4xc2
            && self.second_derived_is_q8
            && self.sylow2_is_c4_wr_c2
            && self.dual_orbits == 2
            && self.affine_order == 2400
    }
}

/// A Sylow `q`-subgroup, grown one `q`-element at a time until no element of
/// `q`-power order extends it.
pub fn sylow_subgroup<G: Group>(g: &G, q: u64) -> Subgroup {
    let is_q_power = |mut n: u64| {
        while n.is_multiple_of(q) {
            n /= q;
        }
        n == 1
    };
    let mut gens: Vec<Elem> = Vec::new();
    let mut members = closure(g, &gens);
    loop {
        let mut grown = false;
        for x in 0..g.order() as Elem {
            if members.binary_search(&x).is_ok() || !is_q_power(g.element_order(x)) {
                continue;
            }
            gens.push(x);
            let next = closure(g, &gens);
            if is_q_power(next.len() as u64) {
                members = next;
                grown = true;
            } else {
                gens.pop();
            }
        }
        if !grown {
            return Subgroup::generated(g, &gens);
        }
    }
}

pub fn l_report(l: &MatrixGroup, cap: usize) -> Result<LReport> {
    let z = center(l);
    let q = quotient_group(l, &z, cap)?;
    let center_quotient = fingerprint(&q.group);
    let s4 = FiniteGroup::symmetric(4, cap)?;
    let s4xc2 = FiniteGroup::direct_product(&s4, &FiniteGroup::cyclic(2, cap)?, cap)?;
    let mut series = alloc::vec![l.order()];
    let mut current = l.clone();
    while series.len() < 6 {
        let d = derived_subgroup(&current);
        if d.order() == current.order() {
            break;
        }
        current = current.sub(&d, "derived");
        series.push(current.order());
    }
    let d1 = l.sub(&derived_subgroup(l), "L'");
    let d2 = d1.sub(&derived_subgroup(&d1), "L''");
    let q8 = FiniteGroup::quaternion(cap)?;
    let c4 = FiniteGroup::cyclic(4, cap)?;
    let c4wrc2 = FiniteGroup::wreath_product(&c4, &FiniteGroup::cyclic(2, cap)?, cap)?;
    let sylow = l.sub(&sylow_subgroup(l, 2), "P");
    Ok(LReport {
        generators: l.generator_matrices(),
        order: l.order(),
        has_order_five: (0..l.order() as Elem).any(|x| l.element_order(x) % 5 == 0),
        center_order: z.order(),
        derived_series: series,
        center_quotient_is_s4xc2: center_quotient == fingerprint(&s4xc2),
        center_quotient,
        second_derived_is_q8: fingerprint(&d2) == fingerprint(&q8),
        sylow2_is_c4_wr_c2: fingerprint(&sylow) == fingerprint(&c4wrc2),
        vector_orbits: vector_orbits(l, 0, 2)?.len(),
        dual_orbits: dual_orbits(l, 0, 2)?.len(),
        affine_order: l.order() * 25,
    })
}

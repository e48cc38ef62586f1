//! Closed-form bounds for induced modules, evaluated in `f64`.

use alloc::format;
use alloc::vec::Vec;

use libm::{log2, pow, sqrt};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lemmas::ids;
use crate::record::LemmaCheckRecord;

/// An evaluable bound `f(|W|)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BoundFn {
    /// `c·x`.
    Linear { c: f64 },
    /// `c·x·log₂x`.
    XLogX { c: f64 },
}

impl BoundFn {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            BoundFn::Linear { c } => c * x,
            BoundFn::XLogX { c } => c * x * log2(x),
        }
    }
}

/// Parameters shared by the block-module bounds. Optional fields are only
/// needed by some of the formulas.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BoundParams {
    /// The prime order of the acting element.
    pub p: u32,
    /// Number of blocks.
    pub n: u32,
    /// Number of `p`-cycles of the acting element on the blocks.
    pub f: u32,
    /// `|V₁|`.
    pub v1: f64,
    /// 6 for the `7⁴`, `Sp(4,3)` exception, else 1.
    pub b: f64,
    pub t0: Option<f64>,
    /// `|N/C_N(V₁)|`.
    pub n1: Option<f64>,
    /// `|G/N|`.
    pub quotient_order: Option<f64>,
    /// `|G|`, for the primitive-group order bound.
    pub group_order: Option<f64>,
    pub c: Option<f64>,
    pub c1: Option<f64>,
    pub c2: Option<f64>,
    pub bound_fn: Option<BoundFn>,
}

impl BoundParams {
    /// `|V| = |V₁|^n`.
    pub fn v(&self) -> f64 {
        pow(self.v1, self.n as f64)
    }
}

/// `A₁ = B|V₁|²log₂|V₁|`.
pub fn lemd2_a1(v1: f64, b: f64) -> f64 {
    b * v1 * v1 * log2(v1)
}

/// `A₂ = |V₁|^{(2p²+1)/(2p+1)}·(B log₂|V₁|)^{(2p−2)/(2p+1)}`.
pub fn lemd2_a2(v1: f64, b: f64, p: u32) -> f64 {
    let p = p as f64;
    pow(v1, (2.0 * p * p + 1.0) / (2.0 * p + 1.0)) * pow(b * log2(v1), (2.0 * p - 2.0) / (2.0 * p + 1.0))
}

/// `(A₁^f|V₁|^{n−pf}, A₂^f|V₁|^{n−pf})`.
pub fn eval_lemd2_bounds(params: &BoundParams) -> Result<(f64, f64)> {
    let (p, n, f) = (params.p, params.n, params.f);
    if f == 0 || n < p * f {
        return Err(Error::InvalidInput(format!("need f >= 1 and n >= pf, got n={n}, p={p}, f={f}")));
    }
    let rest = pow(params.v1, (n - p * f) as f64);
    let a1 = lemd2_a1(params.v1, params.b);
    let a2 = lemd2_a2(params.v1, params.b, p);
    Ok((pow(a1, f as f64) * rest, pow(a2, f as f64) * rest))
}

/// `2¹⁰(log₂|W|)² ≤ |W|`, exact when `|W|` is a power of two.
fn part_b_holds(w: u128) -> (f64, f64, bool) {
    if w.is_power_of_two() {
        let l = w.trailing_zeros() as u128;
        let lhs = 1024 * l * l;
        return (lhs as f64, w as f64, lhs <= w);
    }
    let lhs = 1024.0 * log2(w as f64) * log2(w as f64);
    (lhs, w as f64, lhs <= w as f64)
}

/// The sufficient inequalities for large induced modules: the general one
/// for `n` blocks, the `n = 2` one, and `2¹⁰(log₂|W|)² ≤ |W|`.
pub fn check_lemd4_thresholds(w: u128, n: u32, b: f64) -> Result<Vec<LemmaCheckRecord>> {
    if w < 2 || n < 2 {
        return Err(Error::InvalidInput("need |W| >= 2 and n >= 2".into()));
    }
    let wf = w as f64;
    let lw = b * log2(wf);
    let nf = n as f64;
    let label = |what: &str| format!("|W|=2^{:.4} n={n} B={b}: {what}", log2(wf));
    let general = LemmaCheckRecord::le_float(
        ids::THEOREM_D4,
        &label("general"),
        pow(3.0, (nf - 1.0) / 2.0),
        pow(wf, nf / 40.0) / pow(lw, nf / 20.0) / sqrt(nf + 1.0),
    );
    let two_rhs = pow(wf, 1.0 / 20.0) / pow(lw, 0.1) / sqrt(3.0);
    let two = LemmaCheckRecord::le_float(ids::THEOREM_D4, &label("n=2"), 2.0, two_rhs).with("margin", two_rhs / 2.0 - 1.0);
    let (lhs, rhs, holds) = part_b_holds(w);
    let mut part_b = LemmaCheckRecord::le_float(ids::THEOREM_D4, &label("part-b"), lhs, rhs);
    part_b.holds = holds;
    Ok(alloc::vec![general, two, part_b])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoncoprimeBound {
    /// `|G| ≤ |W|log₂|W|` for primitive coprime `W`.
    TheoremD1,
    /// The bound on `n₁` that makes `k(GV) ≤ f(|V|)`.
    TheoremF2,
    /// The bound on `n₁` for `f(x) = Cx log₂x`, `n ≥ 5`.
    CorF3,
    /// The bound on `n₁` given `k(HV) ≤ C₁|V|log₂|V|`.
    Theorem74,
}

fn need(x: Option<f64>, name: &str) -> Result<f64> {
    x.ok_or_else(|| Error::InvalidInput(format!("parameter {name} is required")))
}

/// `(lhs, rhs)` of the named inequality.
pub fn noncoprime_sides(params: &BoundParams, which: NoncoprimeBound) -> Result<(f64, f64)> {
    let n = params.n as f64;
    let v = params.v();
    match which {
        NoncoprimeBound::TheoremD1 => Ok((need(params.group_order, "group_order")?, params.v1 * log2(params.v1))),
        NoncoprimeBound::TheoremF2 => {
            let q = need(params.quotient_order, "quotient_order")?;
            let t0 = need(params.t0, "t0")?;
            let f = params.bound_fn.ok_or_else(|| Error::InvalidInput("parameter bound_fn is required".into()))?;
            let e = 14.0 / (3.0 * n);
            let rhs = pow(1.0 - 1.0 / q, e) * pow(f.eval(v), e) / (pow(2.0, 14.0 / 3.0) * params.v1 * pow(t0, 8.0 / 3.0));
            Ok((need(params.n1, "n1")?, rhs))
        }
        NoncoprimeBound::CorF3 => {
            let c = need(params.c, "c")?;
            let t0 = need(params.t0, "t0")?;
            let e = 14.0 / (3.0 * n);
            let rhs = pow(c, e) * pow(params.v1, 11.0 / 3.0) / pow(t0, 8.0 / 3.0) * pow(log2(v), e) / 50.0;
            Ok((need(params.n1, "n1")?, rhs))
        }
        NoncoprimeBound::Theorem74 => {
            let diff = need(params.c2, "c2")? - need(params.c1, "c1")?;
            let rhs = pow(diff, 2.0 / n) * params.v1 * pow(log2(v), 2.0 / n) / 4.0;
            Ok((need(params.n1, "n1")?, rhs))
        }
    }
}

/// Evaluates the inequality; a false hypothesis is `HypothesisFailed`.
pub fn eval_noncoprime_bounds(params: &BoundParams, which: NoncoprimeBound, instance: &str) -> Result<LemmaCheckRecord> {
    let (lhs, rhs) = noncoprime_sides(params, which)?;
    let r = LemmaCheckRecord::le_float(ids::NONCOPRIME, instance, lhs, rhs).with("bound", format!("{which:?}"));
    let r = if which == NoncoprimeBound::TheoremF2 { r.with("reading", "standalone hypothesis on n1") } else { r };
    if !r.holds {
        return Err(Error::HypothesisFailed(format!("{which:?}: {lhs} > {rhs}")));
    }
    Ok(r)
}

/// `1/50 ≤ (1 − 1/5)^{14/15} / 2^{14/3}`.
pub fn corf3_constant_check() -> LemmaCheckRecord {
    let rhs = pow(0.8, 14.0 / 15.0) / pow(2.0, 14.0 / 3.0);
    LemmaCheckRecord::le_float(ids::NONCOPRIME, "corf3 constant 1/50", 1.0 / 50.0, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn lemd2_values() {
        let params = BoundParams { p: 2, n: 2, f: 1, v1: 25.0, b: 1.0, ..Default::default() };
        let (a1, a2) = eval_lemd2_bounds(&params).unwrap();
        assert!(close(a1, 625.0 * log2(25.0), 1e-9));
        assert!(close(a2, pow(25.0, 1.8) * pow(log2(25.0), 0.4), 1e-9));
        let bad = BoundParams { f: 0, ..params };
        assert!(eval_lemd2_bounds(&bad).is_err());
    }

    #[test]
    fn lemd4_thresholds() {
        let r = check_lemd4_thresholds(1 << 47, 2, 1.0).unwrap();
        assert!(r[1].holds);
        assert!(r[1].rhs > 2.0 && r[1].rhs < 2.01);
        assert!(check_lemd4_thresholds(1 << 19, 2, 1.0).unwrap()[2].holds);
        let r18 = &check_lemd4_thresholds(1 << 18, 2, 1.0).unwrap()[2];
        assert!(!r18.holds);
        assert_eq!(r18.lhs, 331_776.0);
        assert!(!check_lemd4_thresholds(1 << 46, 2, 1.0).unwrap()[1].holds);
    }

    #[test]
    fn noncoprime_values() {
        assert!(corf3_constant_check().holds);
        let p = BoundParams { n: 2, v1: 25.0, n1: Some(1.0), c1: Some(0.0), c2: Some(1.0), group_order: Some(96.0), ..Default::default() };
        let (_, rhs) = noncoprime_sides(&p, NoncoprimeBound::Theorem74).unwrap();
        assert!(close(rhs, 6.25 * log2(625.0), 1e-9));
        let (lhs, rhs) = noncoprime_sides(&p, NoncoprimeBound::TheoremD1).unwrap();
        assert!(lhs <= rhs && close(rhs, 116.096, 1e-3));
        assert!(matches!(noncoprime_sides(&p, NoncoprimeBound::CorF3), Err(Error::InvalidInput(_))));
    }
}

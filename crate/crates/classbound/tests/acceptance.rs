//! Acceptance run: one line per criterion, with its time budget.
//!
//! Criterion 6 is expected to fail (the centre of the constructed `L` has
//! order 4); a failure there is reported but does not fail the run.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use classbound::campaign::{run_campaign, CampaignReport, Suite};
use classbound::report::to_json;
use classbound::spec::{build, Built};
use classbound::{corpus_standard, CorpusItem, InstanceSpec};
use classbound_core::bounds::{check_lemd4_thresholds, corf3_constant_check};
use classbound_core::constructions::{example_03a, frobenius_wreath};
use classbound_core::decomposition::ProductDecomposition;
use classbound_core::fixed::FixedClassEngine;
use classbound_core::gf::affine::cross_check;
use classbound_core::gf::checks::{k_affine, max_subgroup_k};
use classbound_core::gf::lgroup::{five_complement_gl25, l_report};
use classbound_core::gf::{AffineGroup, GfMatrix, MatrixGroup};
use classbound_core::group::is_subnormal;
use classbound_core::lemmas::{ids, k, verify_lemma_2};
use classbound_core::sampling::{subgroup_sample, SampleStrategy};
use classbound_core::{FiniteGroup, Group, Relation, DEFAULT_CAP};

type Outcome = Result<String, String>;

const SEED: u64 = 42;
const REL_TOL: f64 = 1e-9;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= REL_TOL * a.abs().max(b.abs())
}

fn items(pred: impl Fn(&str) -> bool) -> Vec<CorpusItem> {
    corpus_standard().into_iter().filter(|i| pred(&i.name)).collect()
}

fn campaign(suite: &str, corpus: &[CorpusItem]) -> CampaignReport {
    run_campaign(&Suite::parse(suite).expect("known lemma ids"), corpus, SEED)
}

fn no_failures(r: &CampaignReport) -> Result<(), String> {
    let bad: Vec<&str> = r.records.iter().filter(|x| !x.holds).map(|x| x.instance.as_str()).take(5).collect();
    ensure(bad.is_empty(), || format!("{} failed records, e.g. {bad:?}", r.failures()))
}

fn c1_example() -> Outcome {
    let w = example_03a(DEFAULT_CAP).map_err(err)?;
    let kn = k(&w.n.view(&w.group));
    let fixed = FixedClassEngine::new(&w.group, &w.n).count(w.swap).map_err(err)?;
    let d = ProductDecomposition::new(&w.group, w.factors.to_vec(), w.swap, w.n.clone()).map_err(err)?;
    let lem2 = verify_lemma_2(&d, "ex0.3a").map_err(err)?;
    let s3 = FiniteGroup::symmetric(3, DEFAULT_CAP).map_err(err)?;
    let (max_k, _, sampled) = max_subgroup_k(&s3).map_err(err)?;
    ensure(kn == 6, || format!("k(N) = {kn}"))?;
    ensure(fixed == 4, || format!("fixed = {fixed}"))?;
    ensure(lem2.rhs == 6.0 && lem2.holds, || format!("lemma 2: {} <= {}", lem2.lhs, lem2.rhs))?;
    ensure(!sampled && max_k == 3 && fixed > max_k, || format!("max k(U <= S3) = {max_k}"))?;
    Ok(format!("k(N)={kn} fixed={fixed} bound={} max k(U)={max_k}", lem2.rhs))
}

fn c2_frobenius() -> Outcome {
    let mut seen = Vec::new();
    for (q, p) in [(3u32, 7u32), (3, 13), (2, 3), (2, 5), (2, 7)] {
        let w = frobenius_wreath(q, p, DEFAULT_CAP).map_err(err)?;
        let fixed = FixedClassEngine::new(&w.group, &w.n).count(w.swap).map_err(err)? as u32;
        let want = if q == 2 { p + 1 } else { 1 + (p - 1) / q + q - 1 };
        ensure(fixed == want, || format!("q={q} p={p}: {fixed} != {want}"))?;
        seen.push(format!("({q},{p})={fixed}"));
    }
    Ok(seen.join(" "))
}

fn c3_triple_oracle() -> Outcome {
    let r = campaign(ids::FIXED_ORACLE, &corpus_standard());
    no_failures(&r)?;
    let triples = r
        .records
        .iter()
        .filter(|x| x.holds && x.lhs == x.rhs && x.extra_int("coset-orbits") == Some(x.lhs as i64) && x.extras.contains_key("orbits agree"))
        .count();
    ensure(triples >= 50, || format!("only {triples} triple agreements"))?;
    Ok(format!("{triples} pairs agree on all three counts ({} records)", r.records.len()))
}

fn c4_lemma_1_1() -> Outcome {
    let r = campaign(ids::LEMMA_1_1, &corpus_standard());
    no_failures(&r)?;
    ensure(r.records.iter().all(|x| x.relation == Relation::Eq && x.lhs == x.rhs), || "non-equality record".into())?;
    ensure(r.records.len() >= 30, || format!("only {} pairs", r.records.len()))?;
    Ok(format!("{} (G,N) pairs", r.records.len()))
}

fn linear_groups(built: &Built) -> Vec<MatrixGroup> {
    match built {
        Built::Linear(m) => vec![m.clone()],
        Built::Lattice { l, subgroups } => subgroups.iter().enumerate().map(|(i, s)| l.sub(s, &format!("H{i}"))).collect(),
        Built::Block { inst, .. } => vec![inst.group.clone(), inst.n_group()],
        _ => Vec::new(),
    }
}

fn c5_affine() -> Outcome {
    let fpf = |gens: &[&[u32]]| -> Result<usize, String> {
        let mats = gens.iter().map(|g| GfMatrix::new(5, 2, g.to_vec())).collect::<Result<Vec<_>, _>>().map_err(err)?;
        let m = MatrixGroup::from_generators("fpf", 5, 2, &mats, DEFAULT_CAP).map_err(err)?;
        k_affine(&m, 0, 2).map_err(err)
    };
    let vals = [fpf(&[&[4, 0, 0, 4]])?, fpf(&[&[2, 0, 0, 2]])?, fpf(&[&[0, 4, 1, 0], &[0, 2, 2, 0]])?];
    ensure(vals == [14, 10, 8], || format!("C2/C4/Q8 give {vals:?}"))?;
    let mut checked = 0;
    for item in corpus_standard() {
        let Ok(built) = build(&item.name, &item.spec, DEFAULT_CAP) else { continue };
        for m in linear_groups(&built) {
            if !m.is_coprime() {
                continue;
            }
            let aff = AffineGroup::new(&m).map_err(err)?;
            if aff.order() > classbound_core::gf::affine::BRUTE_FORCE_LIMIT {
                continue;
            }
            ensure(cross_check(&aff).map_err(err)?, || format!("{} {}: partitions differ", item.name, m.name()))?;
            checked += 1;
        }
    }
    Ok(format!("k = {vals:?}; structured == brute force on {checked} coprime GV"))
}

fn c6_l() -> Outcome {
    let l = five_complement_gl25().map_err(err)?;
    let r = l_report(&l, DEFAULT_CAP).map_err(err)?;
    let detail = format!(
        "order={} order-5={} |Z|={} L/Z~S4xC2={} L''~Q8={} dual orbits={} |LV1|={}",
        r.order, r.has_order_five, r.center_order, r.center_quotient_is_s4xc2, r.second_derived_is_q8, r.dual_orbits, r.affine_order
    );
    if r.all_hold() {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c7_leme2() -> Outcome {
    let corpus = items(|n| n.starts_with("L-block-p2"));
    let r = campaign(ids::LEMMA_E2, &corpus);
    no_failures(&r)?;
    ensure(r.skips.is_empty(), || format!("skipped: {:?}", r.skips))?;
    ensure(r.records.iter().all(|x| x.lhs <= 117.0), || "a fixed count exceeds 117".into())?;
    let full = r.records.iter().find(|x| x.instance == "L-block-p2").ok_or("no L x L record")?;
    ensure(full.extra_int("|N|") == Some(96 * 96), || "L-block-p2 is not L x L".into())?;
    let seeded = r.records.iter().filter(|x| x.instance.starts_with("L-block-p2-seed")).count();
    ensure(seeded >= 10, || format!("only {seeded} seeded kernels"))?;
    let max = r.records.iter().map(|x| x.lhs as u64).max().unwrap_or(0);
    Ok(format!("L x L fixed={} and {seeded} seeded kernels, max {max} <= 117", full.lhs))
}

fn c8_theorem_c() -> Outcome {
    let l = five_complement_gl25().map_err(err)?;
    let subs = subgroup_sample(&l, SampleStrategy::Exhaustive, 0).map_err(err)?;
    let induced = items(|n| n.starts_with("induced-"));
    for item in &induced {
        if let InstanceSpec::Induced { h1: Some(h), .. } = item.spec {
            let s = &subs[h];
            ensure(s.order() > 1 && is_subnormal(&l, s), || format!("{}: H1 not a nontrivial subnormal subgroup", item.name))?;
        }
    }
    let mut corpus = induced;
    corpus.extend(items(|n| n == "theorem-c-excluded"));
    let r = campaign(ids::THEOREM_C, &corpus);
    no_failures(&r)?;
    let inst: Vec<_> = r.records.iter().filter(|x| x.instance.starts_with("induced-")).collect();
    ensure(inst.len() >= 5, || format!("only {} induced instances", inst.len()))?;
    ensure(inst.iter().all(|x| x.lhs <= 625.0), || "k(GV) > 625".into())?;
    let excluded: Vec<_> = r.records.iter().filter(|x| x.instance.starts_with("excluded")).collect();
    ensure(excluded.len() == 2 && excluded.iter().all(|x| x.rhs >= 21.0), || "excluded configurations".into())?;
    let max = inst.iter().map(|x| x.lhs as u64).max().unwrap_or(0);
    let ex: Vec<u64> = excluded.iter().map(|x| x.rhs as u64).collect();
    Ok(format!("{} induced instances, max k(GV)={max} <= 625; excluded k(N1V1) = {ex:?}", inst.len()))
}

fn c9_thresholds() -> Outcome {
    let at = |e: u32| check_lemd4_thresholds(1u128 << e, 2, 1.0).map_err(err);
    let r47 = at(47)?;
    let two = &r47[1];
    let expected_rhs = 2f64.powf(47.0 / 20.0) / 47f64.powf(0.1) / 3f64.sqrt();
    ensure(two.holds && close(two.rhs, expected_rhs), || format!("n=2 at 2^47: {} <= {}", two.lhs, two.rhs))?;
    for (e, want) in [(19u32, true), (18, false)] {
        let pb = &at(e)?[2];
        let lhs = 1024.0 * (e * e) as f64;
        let rhs = 2f64.powi(e as i32);
        ensure(pb.holds == want && close(pb.lhs, lhs) && close(pb.rhs, rhs), || format!("part b at 2^{e}: {} <= {}", pb.lhs, pb.rhs))?;
    }
    let c = corf3_constant_check();
    let expected = 0.8f64.powf(14.0 / 15.0) / 2f64.powf(14.0 / 3.0);
    ensure(c.holds && close(c.rhs, expected), || format!("corf3: {} <= {}", c.lhs, c.rhs))?;
    Ok(format!("n=2 margin {:.6} at 2^47; part b holds at 2^19, fails at 2^18; corf3 {:.6} >= 0.02", two.rhs / 2.0 - 1.0, c.rhs))
}

fn c10_maroti() -> Outcome {
    let names: Vec<String> = (3..=7).map(|n| format!("S{n}")).collect();
    let r = campaign(ids::MAROTI, &items(|n| names.iter().any(|m| m == n)));
    no_failures(&r)?;
    ensure(r.skips.is_empty(), || format!("skipped: {:?}", r.skips))?;
    let mut counts = Vec::new();
    for n in 3..=7u32 {
        let prefix = format!("S{n} ");
        let recs: Vec<_> = r.records.iter().filter(|x| x.instance.starts_with(&prefix)).collect();
        let bound = 3f64.powf((n as f64 - 1.0) / 2.0);
        ensure(recs.iter().all(|x| close(x.rhs, bound)), || format!("S{n}: wrong bound"))?;
        let s = FiniteGroup::symmetric(n as usize, DEFAULT_CAP).map_err(err)?;
        let cyclic = subgroup_sample(&s, SampleStrategy::AllCyclic, 0).map_err(err)?.len();
        ensure(recs.len() == cyclic + classbound::campaign::MAROTI_RANDOM_SUBGROUPS, || format!("S{n}: {} subgroups", recs.len()))?;
        counts.push(recs.len());
    }
    Ok(format!("subgroups checked per degree 3..7: {counts:?}"))
}

const SWEEP: &str = "index-bound,lemma-1.2,lemma-a3,lemma-b1,lemma-b3,lemma-c1,lemma-c2,lemma-c4,lemma-e1";

fn c11_sweep() -> Outcome {
    let corpus = corpus_standard();
    let a = campaign(SWEEP, &corpus);
    let b = campaign(SWEEP, &corpus);
    no_failures(&a)?;
    ensure(a.inconclusive() == 0, || format!("{} inconclusive", a.inconclusive()))?;
    for (lemma, s) in &a.summary {
        ensure(s.records > 0, || format!("{lemma}: no records"))?;
    }
    let e1_eq = a.records_for(ids::LEMMA_E1).all(|x| x.relation == Relation::Eq);
    ensure(e1_eq, || "lemma-e1 record is not an equality".into())?;
    let (ja, jb) = (to_json(&a).map_err(err)?, to_json(&b).map_err(err)?);
    ensure(ja == jb, || "repeated runs differ".into())?;
    Ok(format!("{} records over {} lemmas, {} skips, identical JSON ({} bytes)", a.records.len(), a.summary.len(), a.skips.len(), ja.len()))
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    known_unattainable: bool,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "example wreath S3 wr C2", budget: secs(1), known_unattainable: false, run: c1_example },
        Criterion { id: 2, name: "Frobenius family", budget: secs(10), known_unattainable: false, run: c2_frobenius },
        Criterion { id: 3, name: "triple fixed-class oracle", budget: secs(120), known_unattainable: false, run: c3_triple_oracle },
        Criterion { id: 4, name: "lemma 1.1 equality", budget: secs(120), known_unattainable: false, run: c4_lemma_1_1 },
        Criterion { id: 5, name: "affine class values", budget: secs(300), known_unattainable: false, run: c5_affine },
        Criterion { id: 6, name: "L construction", budget: secs(60), known_unattainable: true, run: c6_l },
        Criterion { id: 7, name: "leme2 at p = 2", budget: secs(600), known_unattainable: false, run: c7_leme2 },
        Criterion { id: 8, name: "theorem C at n = 2", budget: secs(900), known_unattainable: false, run: c8_theorem_c },
        Criterion { id: 9, name: "numeric thresholds", budget: secs(1), known_unattainable: false, run: c9_thresholds },
        Criterion { id: 10, name: "Maroti bound", budget: secs(120), known_unattainable: false, run: c10_maroti },
        Criterion { id: 11, name: "lemma verifier sweep", budget: secs(1800), known_unattainable: false, run: c11_sweep },
    ];
    let mut unexpected = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let in_time = elapsed <= c.budget;
        let (status, detail) = match (&outcome, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("over budget: {d}")),
            (Err(d), _) => ("FAIL", d.clone()),
        };
        let pass = status == "PASS";
        let note = if !pass && c.known_unattainable { " (known)" } else { "" };
        println!("criterion {:>2} {status}{note} {}: {detail} [{:.2?} / {:?}]", c.id, c.name, elapsed, c.budget);
        if !pass && !c.known_unattainable {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

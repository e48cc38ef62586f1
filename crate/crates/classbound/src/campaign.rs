//! Runs every selected verifier over a corpus.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use classbound_core::bounds::{check_lemd4_thresholds, corf3_constant_check, eval_noncoprime_bounds, BoundFn};
use classbound_core::constructions::WreathInstance;
use classbound_core::decomposition::ProductDecomposition;
use classbound_core::fixed::{FixedClassEngine, AVG_ORACLE_CAP};
use classbound_core::gf::blocks::BlockInstance;
use classbound_core::gf::checks::{
    brauer_check_abelian, k_affine, theorem_c_excluded, verify_affine_classes, verify_affine_fixed_oracles, verify_lema3, verify_lemc4,
    verify_lemd2, verify_leme1, verify_leme2, verify_lemma_b2, verify_theorem_c,
};
use classbound_core::gf::dual::dual_orbits;
use classbound_core::gf::matgroup::gl25;
use classbound_core::gf::MatrixGroup;
use classbound_core::group::normal_closure;
use classbound_core::lemmas::{ids, k, verify_fixed_oracles, verify_index_bound, verify_lemma_1_1, verify_lemma_1_2, verify_lemma_2, verify_lemma_b1, verify_lemma_b3, verify_lemma_c1, verify_lemma_c2, verify_maroti};
use classbound_core::sampling::{subgroup_sample, SampleStrategy};
use classbound_core::{conjugacy_classes, Elem, Error, FiniteGroup, Group, LemmaCheckRecord, Subgroup, DEFAULT_CAP};
use serde::{Deserialize, Serialize};

use crate::corpus::{CorpusItem, Source};
use crate::error::HarnessError;
use crate::spec::{build, Built, InstanceSpec, Shape};

/// Every lemma identifier the standard suite runs, in canonical order.
pub const STANDARD_SUITE: &[&str] = &[
    ids::AFFINE_CLASSES,
    ids::BRAUER,
    ids::EXPECTED,
    ids::FIXED_ORACLE,
    ids::INDEX_BOUND,
    ids::LEMMA_1_1,
    ids::LEMMA_1_2,
    ids::LEMMA_2,
    ids::LEMMA_A3,
    ids::LEMMA_B1,
    ids::LEMMA_B2,
    ids::LEMMA_B3,
    ids::LEMMA_C1,
    ids::LEMMA_C2,
    ids::LEMMA_C4,
    ids::LEMMA_D2,
    ids::LEMMA_E1,
    ids::LEMMA_E2,
    ids::MAROTI,
    ids::NONCOPRIME,
    ids::THEOREM_C,
    ids::THEOREM_D4,
];

/// Random subgroups of `Sₙ` added to the cyclic ones for the Maróti check.
pub const MAROTI_RANDOM_SUBGROUPS: usize = 100;
/// Class representatives tried per normal subgroup by Lemma c1.
const C1_REPS: usize = 4;
/// Class representatives outside `N` tried per normal subgroup by the oracles.
const ORACLE_REPS: usize = 3;
/// Non-normal cyclic subgroups tried by Lemma b1.
const B1_SUBGROUPS: usize = 6;
/// Normalizing elements of `GL(2,5)` tried per linear group by the oracles.
const ORACLE_GAMMAS: usize = 3;

/// The lemma identifiers to run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Suite {
    lemmas: Vec<String>,
}

impl Suite {
    pub fn standard() -> Self {
        Self { lemmas: STANDARD_SUITE.iter().map(|s| s.to_string()).collect() }
    }

    /// `"standard"` or a comma-separated list of lemma identifiers.
    pub fn parse(text: &str) -> Result<Self, HarnessError> {
        if text == "standard" {
            return Ok(Self::standard());
        }
        let mut lemmas = Vec::new();
        for id in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if !STANDARD_SUITE.contains(&id) {
                return Err(HarnessError::UnknownLemma(id.to_string()));
            }
            if !lemmas.iter().any(|l| l == id) {
                lemmas.push(id.to_string());
            }
        }
        lemmas.sort();
        Ok(Self { lemmas })
    }

    pub fn lemmas(&self) -> &[String] {
        &self.lemmas
    }
}

/// A verifier that could not run on an instance, and why.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skip {
    pub lemma: String,
    pub instance: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct LemmaSummary {
    pub records: usize,
    pub holds: usize,
    pub fails: usize,
    /// Failed records in sampled mode.
    pub inconclusive: usize,
    pub skips: usize,
    pub min_slack: Option<f64>,
    pub tightest: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub seed: u64,
    pub version: String,
    pub suite: Vec<String>,
    pub corpus: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub meta: Meta,
    pub records: Vec<LemmaCheckRecord>,
    pub skips: Vec<Skip>,
    pub summary: BTreeMap<String, LemmaSummary>,
}

impl CampaignReport {
    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| r.is_failure()).count()
    }

    pub fn inconclusive(&self) -> usize {
        self.records.iter().filter(|r| r.is_inconclusive()).count()
    }

    pub fn records_for<'a>(&'a self, lemma: &'a str) -> impl Iterator<Item = &'a LemmaCheckRecord> + 'a {
        self.records.iter().filter(move |r| r.lemma == lemma)
    }

    /// Builds the report from unordered results: records and skips are put in
    /// `(lemma, instance)` order and the summary is recomputed.
    pub fn assemble(meta: Meta, mut records: Vec<LemmaCheckRecord>, mut skips: Vec<Skip>) -> Self {
        records.sort_by(|a, b| (&a.lemma, &a.instance).cmp(&(&b.lemma, &b.instance)));
        skips.sort_by(|a, b| (&a.lemma, &a.instance).cmp(&(&b.lemma, &b.instance)));
        let mut summary: BTreeMap<String, LemmaSummary> = meta.suite.iter().map(|l| (l.clone(), LemmaSummary::default())).collect();
        for r in &records {
            let s = summary.entry(r.lemma.clone()).or_default();
            s.records += 1;
            s.holds += r.holds as usize;
            s.fails += r.is_failure() as usize;
            s.inconclusive += r.is_inconclusive() as usize;
            if s.min_slack.is_none_or(|m| r.slack < m) {
                s.min_slack = Some(r.slack);
                s.tightest = Some(r.instance.clone());
            }
        }
        for sk in &skips {
            summary.entry(sk.lemma.clone()).or_default().skips += 1;
        }
        Self { meta, records, skips, summary }
    }
}

/// Parameters of a campaign beyond the suite and corpus.
#[derive(Clone, Copy, Debug)]
pub struct CampaignConfig {
    pub seed: u64,
    pub cap: usize,
    pub threads: usize,
}

impl CampaignConfig {
    pub fn new(seed: u64) -> Self {
        let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
        Self { seed, cap: DEFAULT_CAP, threads }
    }
}

pub fn applies(item: &CorpusItem, lemma: &str) -> bool {
    use Shape::*;
    let shape = item.spec.shape();
    match lemma {
        ids::EXPECTED => !item.expected.is_empty(),
        ids::LEMMA_1_1 | ids::INDEX_BOUND | ids::LEMMA_B3 | ids::LEMMA_C1 | ids::LEMMA_B1 | ids::MAROTI => matches!(shape, Perm | Wreath),
        ids::FIXED_ORACLE => matches!(shape, Perm | Wreath | Linear | Lattice | Block),
        ids::LEMMA_1_2 | ids::LEMMA_2 | ids::LEMMA_C2 => shape == Wreath,
        ids::AFFINE_CLASSES | ids::LEMMA_A3 | ids::BRAUER => matches!(shape, Linear | Lattice),
        ids::LEMMA_E1 => matches!(shape, Linear | Lattice | Block),
        ids::LEMMA_E2 | ids::LEMMA_C4 | ids::LEMMA_D2 | ids::LEMMA_B2 => shape == Block,
        ids::THEOREM_C => matches!(shape, Block | Excluded),
        ids::THEOREM_D4 => matches!(&item.spec, InstanceSpec::Lemd4 { parts, .. } if !parts.is_empty()),
        ids::NONCOPRIME => shape == Noncoprime,
        _ => false,
    }
}

type Outcome = (String, Result<LemmaCheckRecord, Error>);

fn one(instance: String, r: Result<LemmaCheckRecord, Error>) -> Vec<Outcome> {
    vec![(instance, r)]
}

fn many(instance: &str, r: Result<Vec<LemmaCheckRecord>, Error>) -> Vec<Outcome> {
    match r {
        Ok(rs) => rs.into_iter().map(|r| (r.instance.clone(), Ok(r))).collect(),
        Err(e) => vec![(instance.to_string(), Err(e))],
    }
}

/// `1`, `G` and the normal closures of the class representatives, ordered by
/// size then members.
pub fn normal_subgroups<G: Group>(g: &G) -> Vec<Subgroup> {
    let mut out = vec![Subgroup::trivial(g), Subgroup::whole(g)];
    out.extend(conjugacy_classes(g).reps().map(|x| normal_closure(g, &[x])));
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members().cmp(b.members())));
    out.dedup_by(|a, b| a.members() == b.members());
    out
}

fn n_label(item: &str, i: usize, n: &Subgroup) -> String {
    format!("{item} N{i}(|N|={})", n.order())
}

fn spread<T: Clone>(xs: &[T], count: usize) -> Vec<T> {
    if xs.len() <= count {
        return xs.to_vec();
    }
    (0..count).map(|i| xs[i * xs.len() / count].clone()).collect()
}

fn perm_checks(item: &CorpusItem, g: &FiniteGroup, lemma: &str, cfg: &CampaignConfig) -> Vec<Outcome> {
    let name = item.name.as_str();
    let mut out = Vec::new();
    match lemma {
        ids::LEMMA_1_1 | ids::INDEX_BOUND | ids::LEMMA_B3 | ids::LEMMA_C1 => {
            let reps: Vec<Elem> = conjugacy_classes(g).reps().filter(|&x| x != g.identity()).take(C1_REPS).collect();
            for (i, n) in normal_subgroups(g).iter().enumerate() {
                let label = n_label(name, i, n);
                match lemma {
                    ids::LEMMA_1_1 => out.push((label.clone(), verify_lemma_1_1(g, n, &label))),
                    ids::INDEX_BOUND => out.push((label.clone(), verify_index_bound(g, n, &label))),
                    ids::LEMMA_B3 => out.push((label.clone(), verify_lemma_b3(g, n, &label))),
                    _ => {
                        let whole = Subgroup::whole(g);
                        for &x in &reps {
                            let l = format!("{label} x={x}");
                            out.push((l.clone(), verify_lemma_c1(g, &whole, n, x, &l)));
                        }
                    }
                }
            }
        }
        ids::LEMMA_B1 => {
            let cyclic = subgroup_sample(g, SampleStrategy::AllCyclic, 0).unwrap_or_default();
            let non_normal: Vec<Subgroup> = cyclic.into_iter().filter(|h| !h.is_normal()).collect();
            for (i, h) in spread(&non_normal, B1_SUBGROUPS).iter().enumerate() {
                let l = format!("{name} H{i}(|H|={})", h.order());
                out.push((l.clone(), verify_lemma_b1(g, h, &l)));
            }
        }
        ids::FIXED_ORACLE => {
            let classes = conjugacy_classes(g);
            for (i, n) in normal_subgroups(g).iter().enumerate() {
                if n.order() == 1 || n.order() > AVG_ORACLE_CAP {
                    continue;
                }
                for x in classes.reps().filter(|&x| !n.contains(x)).take(ORACLE_REPS) {
                    let l = format!("{} g={x}", n_label(name, i, n));
                    out.push((l.clone(), verify_fixed_oracles(g, n, x, &l, AVG_ORACLE_CAP)));
                }
            }
        }
        ids::MAROTI => {
            let n = g.degree();
            if item.spec.is_symmetric() {
                let mut subs = subgroup_sample(g, SampleStrategy::AllCyclic, 0).unwrap_or_default();
                let random = subgroup_sample(g, SampleStrategy::RandomGenerated { k: 2, count: MAROTI_RANDOM_SUBGROUPS }, cfg.seed);
                subs.extend(random.unwrap_or_default());
                for (i, u) in subs.iter().enumerate() {
                    let l = format!("{name} U{i}(|U|={})", u.order());
                    out.push((l.clone(), verify_maroti(&u.view(g), n, &l)));
                }
            } else {
                out.push((name.to_string(), verify_maroti(g, n, name)));
            }
        }
        _ => {}
    }
    out
}

fn wreath_checks(item: &CorpusItem, w: &WreathInstance, lemma: &str, cfg: &CampaignConfig) -> Vec<Outcome> {
    let name = item.name.as_str();
    let g = &w.group;
    let swap = || ProductDecomposition::new(g, w.factors.to_vec(), w.swap, w.n.clone());
    match lemma {
        ids::LEMMA_2 => one(name.to_string(), swap().and_then(|d| verify_lemma_2(&d, name))),
        ids::LEMMA_C2 => one(name.to_string(), swap().and_then(|d| verify_lemma_c2(&d, name))),
        ids::LEMMA_1_2 => {
            let base = format!("{name} M=base g=swap");
            let inner = format!("{name} M=K1xK2 g=diag");
            let k_gens: Vec<Elem> = w.inner_factors.iter().flat_map(|f| f.generators().iter().copied()).collect();
            let kk = Subgroup::generated(g, &k_gens);
            vec![
                (
                    base.clone(),
                    ProductDecomposition::new(g, vec![w.base.clone()], w.swap, w.n.clone()).and_then(|d| verify_lemma_1_2(&d, &base, cfg.seed)),
                ),
                (
                    inner.clone(),
                    ProductDecomposition::new(g, w.inner_factors.to_vec(), w.diagonal, kk).and_then(|d| verify_lemma_1_2(&d, &inner, cfg.seed)),
                ),
            ]
        }
        ids::FIXED_ORACLE => {
            let l = format!("{name} N=distinguished g=swap");
            let mut out = one(l.clone(), verify_fixed_oracles(g, &w.n, w.swap, &l, AVG_ORACLE_CAP));
            out.extend(perm_checks(item, g, lemma, cfg));
            out
        }
        _ => perm_checks(item, g, lemma, cfg),
    }
}

/// Invariant coordinate splits `V = V₁ ⊕ V₂` (with `V₂ = 0` always included).
fn coordinate_splits(lin: &MatrixGroup) -> Vec<usize> {
    let d = lin.dim();
    let mut out: Vec<usize> = (1..d)
        .filter(|&k1| lin.generators().iter().all(|&g| lin.restricted(g, 0, k1).is_ok() && lin.restricted(g, k1, d - k1).is_ok()))
        .collect();
    out.push(d);
    out
}

/// Elements of `GL(2,5)` normalizing `lin`: the first generator of `lin`
/// and the first few normalizing elements outside it.
fn oracle_gammas(lin: &MatrixGroup) -> Vec<classbound_core::gf::GfMatrix> {
    let mut out: Vec<_> = lin.generators().first().map(|&g| lin.matrix(g)).into_iter().collect();
    if lin.p() != 5 || lin.dim() != 2 {
        if out.is_empty() {
            out.push(classbound_core::gf::GfMatrix::identity(lin.p(), lin.dim()));
        }
        return out;
    }
    let gl = gl25();
    let gens: Vec<_> = lin.generator_matrices();
    for x in 0..gl.order() as Elem {
        if out.len() > ORACLE_GAMMAS {
            break;
        }
        let m = gl.matrix(x);
        if lin.index_of(&m).is_some() {
            continue;
        }
        let mi = m.inverse().expect("invertible");
        if gens.iter().all(|h| lin.index_of(&mi.mul(h).mul(&m)).is_some()) {
            out.push(m);
        }
    }
    if out.is_empty() {
        out.push(classbound_core::gf::GfMatrix::identity(5, 2));
    }
    out
}

fn linear_checks(label: &str, lin: &MatrixGroup, expected: Option<usize>, lemma: &str) -> Vec<Outcome> {
    match lemma {
        ids::AFFINE_CLASSES => one(label.to_string(), verify_affine_classes(lin, label, expected)),
        ids::LEMMA_A3 => one(label.to_string(), verify_lema3(lin, label)),
        ids::LEMMA_E1 => coordinate_splits(lin)
            .into_iter()
            .map(|k1| {
                let l = format!("{label} dimV1={k1}");
                (l.clone(), verify_leme1(lin, k1, &l))
            })
            .collect(),
        ids::BRAUER => {
            let d = lin.dim();
            let basis: Vec<Vec<u32>> = (0..d).map(|i| (0..d).map(|j| (i == j) as u32).collect()).collect();
            lin.generator_matrices()
                .iter()
                .enumerate()
                .map(|(i, gamma)| {
                    let l = format!("{label} W=V gamma=gen{i}");
                    (l.clone(), brauer_check_abelian(lin.p(), &basis, gamma, &l))
                })
                .collect()
        }
        ids::FIXED_ORACLE => oracle_gammas(lin)
            .iter()
            .enumerate()
            .map(|(i, gamma)| {
                let l = format!("{label} gamma{i}");
                (l.clone(), verify_affine_fixed_oracles(lin, gamma, &l))
            })
            .collect(),
        _ => Vec::new(),
    }
}

fn block_checks(name: &str, inst: &BlockInstance, l: Option<&MatrixGroup>, lemma: &str) -> Vec<Outcome> {
    let name = name.to_string();
    match lemma {
        ids::FIXED_ORACLE => one(name.clone(), verify_affine_fixed_oracles(&inst.n_group(), &inst.group.matrix(inst.g), &name)),
        ids::LEMMA_E1 => {
            let l1 = format!("{name} N dimV1={}", inst.blocks.dim);
            one(l1.clone(), verify_leme1(&inst.n_group(), inst.blocks.dim, &l1))
        }
        ids::LEMMA_E2 => match l {
            Some(l) => one(name.clone(), verify_leme2(inst, l, &name)),
            None => Vec::new(),
        },
        ids::LEMMA_C4 => one(name.clone(), verify_lemc4(inst, &name)),
        ids::LEMMA_D2 => one(name.clone(), verify_lemd2(inst, inst.g, &name)),
        ids::LEMMA_B2 => one(name.clone(), verify_lemma_b2(inst, BoundFn::Linear { c: 1.0 }, &name)),
        ids::THEOREM_C => match l {
            Some(l) if inst.blocks.count == 2 && inst.blocks.dim == 2 && inst.group.p() == 5 => one(name.clone(), verify_theorem_c(&inst.group, l, &name)),
            _ => Vec::new(),
        },
        _ => Vec::new(),
    }
}

fn measure(built: &Built, key: &str) -> Result<i64, Error> {
    let unknown = || Error::InvalidInput(format!("no measurement named {key}"));
    match built {
        Built::Wreath(w) => match key {
            "k(N)" => Ok(k(&w.n.view(&w.group)) as i64),
            "fixed" => Ok(FixedClassEngine::new(&w.group, &w.n).count(w.swap)? as i64),
            "lem2-bound" => {
                let d = ProductDecomposition::new(&w.group, w.factors.to_vec(), w.swap, w.n.clone())?;
                Ok(verify_lemma_2(&d, "")?.rhs as i64)
            }
            _ => Err(unknown()),
        },
        Built::Linear(lin) => match key {
            "order" => Ok(lin.order() as i64),
            "dual-orbits" => Ok(dual_orbits(lin, 0, lin.dim())?.len() as i64),
            "k(NV)" => Ok(k_affine(lin, 0, lin.dim())? as i64),
            _ => Err(unknown()),
        },
        Built::Lemd4 { w, n, .. } => {
            let rs = check_lemd4_thresholds(*w, *n, 1.0)?;
            match key {
                "n2-holds" => Ok(rs[1].holds as i64),
                "part-b-holds" => Ok(rs[2].holds as i64),
                _ => Err(unknown()),
            }
        }
        _ => Err(unknown()),
    }
}

fn expected_checks(item: &CorpusItem, built: &Built) -> Vec<Outcome> {
    item.expected
        .iter()
        .map(|(key, e)| {
            let l = format!("{}:{key}", item.name);
            let r = measure(built, key).map(|actual| {
                let source = match e.source {
                    Source::Stated => "stated",
                    Source::Computed => "computed",
                };
                LemmaCheckRecord::eq_int(ids::EXPECTED, &l, actual.max(0) as u128, e.value.max(0) as u128)
                    .with("source", source)
                    .and_also("nonnegative", actual >= 0 && e.value >= 0)
            });
            (l, r)
        })
        .collect()
}

/// All outcomes of one lemma on one built instance.
pub fn check(item: &CorpusItem, built: &Built, lemma: &str, cfg: &CampaignConfig) -> Vec<Outcome> {
    if lemma == ids::EXPECTED {
        return expected_checks(item, built);
    }
    let name = item.name.as_str();
    match built {
        Built::Perm(g) => perm_checks(item, g, lemma, cfg),
        Built::Wreath(w) => wreath_checks(item, w, lemma, cfg),
        Built::Linear(lin) => {
            let expected = item.expected.get("k(NV)").map(|e| e.value as usize);
            linear_checks(name, lin, expected, lemma)
        }
        Built::Lattice { l, subgroups } => subgroups
            .iter()
            .enumerate()
            .flat_map(|(i, s)| {
                let label = format!("{name} #{i}(|H|={})", s.order());
                linear_checks(&label, &l.sub(s, &label), None, lemma)
            })
            .collect(),
        Built::Block { inst, l } => block_checks(name, inst, l.as_ref(), lemma),
        Built::Excluded => many(name, theorem_c_excluded()),
        Built::Lemd4 { w, n, parts } => many(
            name,
            check_lemd4_thresholds(*w, *n, 1.0).map(|rs| parts.iter().map(|p| rs[p.index()].clone()).collect()),
        ),
        Built::Corf3 => one(name.to_string(), Ok(corf3_constant_check())),
        Built::Noncoprime { bound, params } => one(name.to_string(), eval_noncoprime_bounds(params, *bound, name)),
    }
}

fn panic_text(p: Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| p.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "unknown panic".into())
}

type ItemResult = (Vec<LemmaCheckRecord>, Vec<Skip>);

/// Records and skips for one corpus item.
pub fn run_item(item: &CorpusItem, lemmas: &[String], cfg: &CampaignConfig) -> (Vec<LemmaCheckRecord>, Vec<Skip>) {
    let lemmas: Vec<&String> = lemmas.iter().filter(|l| applies(item, l)).collect();
    let mut records = Vec::new();
    let mut skips = Vec::new();
    if lemmas.is_empty() {
        return (records, skips);
    }
    let skip = |lemma: &str, instance: &str, reason: String| Skip { lemma: lemma.to_string(), instance: instance.to_string(), reason };
    let built = match catch_unwind(AssertUnwindSafe(|| build(&item.name, &item.spec, cfg.cap))) {
        Ok(Ok(b)) => b,
        Ok(Err(e)) => {
            skips.extend(lemmas.iter().map(|l| skip(l, &item.name, format!("construction: {e}"))));
            return (records, skips);
        }
        Err(p) => {
            let text = panic_text(p);
            skips.extend(lemmas.iter().map(|l| skip(l, &item.name, format!("construction panicked: {text}"))));
            return (records, skips);
        }
    };
    for lemma in lemmas {
        match catch_unwind(AssertUnwindSafe(|| check(item, &built, lemma, cfg))) {
            Ok(outcomes) => {
                for (instance, r) in outcomes {
                    match r {
                        Ok(mut rec) => {
                            rec.lemma = lemma.clone();
                            records.push(rec);
                        }
                        Err(e) => skips.push(skip(lemma, &instance, e.to_string())),
                    }
                }
            }
            Err(p) => skips.push(skip(lemma, &item.name, format!("panicked: {}", panic_text(p)))),
        }
    }
    (records, skips)
}

/// Runs the suite over the corpus with the default cap.
pub fn run_campaign(suite: &Suite, corpus: &[CorpusItem], seed: u64) -> CampaignReport {
    run_campaign_with(suite, corpus, &CampaignConfig::new(seed))
}

/// Items are processed in parallel; the report does not depend on scheduling.
pub fn run_campaign_with(suite: &Suite, corpus: &[CorpusItem], cfg: &CampaignConfig) -> CampaignReport {
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<ItemResult>>> = Mutex::new(vec![None; corpus.len()]);
    std::thread::scope(|s| {
        for _ in 0..cfg.threads.clamp(1, corpus.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= corpus.len() {
                    break;
                }
                let out = run_item(&corpus[i], suite.lemmas(), cfg);
                results.lock().expect("result lock")[i] = Some(out);
            });
        }
    });
    let mut records = Vec::new();
    let mut skips = Vec::new();
    for (r, s) in results.into_inner().expect("result lock").into_iter().flatten() {
        records.extend(r);
        skips.extend(s);
    }
    let meta = Meta { seed: cfg.seed, version: crate::VERSION.to_string(), suite: suite.lemmas().to_vec(), corpus: corpus.len() };
    CampaignReport::assemble(meta, records, skips)
}

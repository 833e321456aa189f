//! Seeded invariant suites over the catalog and generated matroids.
//!
//! Every check is deterministic given the seed and the size limit, and the
//! checks of a report are sorted by name.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{binom_bounds, kappa_count_upper, knuth_lower};
use crate::catalog::{catalog, uniform};
use crate::cover::{
    combine_cover, dualize_cover, is_flat_cover, kappa_exact, long_lines, long_lines_cover, mu_integer, project_cover,
    rank2_cover, relax,
};
use crate::families::{catalog_samples, generated_sparse_paving, line_plus_two, rank2_family, rank3_family, Sample};
use crate::io::{parse_bases, write_bases};
use crate::isomorphism::is_isomorphic;
use crate::johnson::{
    best_class, gs_class, is_sparse_paving, mk4_free_experiment, sparse_paving_from_nonbases, spike,
    spike_conditions_hold, stable_set_census, trial_rng, v8_free_check, SetSystem,
};
use crate::lp::{blow_up, exact_sub_solver, kappa_star, randomized_round, rounding_bound};
use crate::matroid::{GroundMap, Matroid, SUBSET_ENUMERATION_CAP};
use crate::minors::{has_minor, line_deletion_witness};
use crate::subset::{big_binomial, binomial, k_subsets, Subset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Core,
    Cover,
    Lp,
    Johnson,
    Bounds,
    All,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Core, Suite::Cover, Suite::Lp, Suite::Johnson, Suite::Bounds, Suite::All];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Suite::Core => "core",
            Suite::Cover => "cover",
            Suite::Lp => "lp",
            Suite::Johnson => "johnson",
            Suite::Bounds => "bounds",
            Suite::All => "all",
        };
        f.write_str(name)
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|suite| suite.to_string() == s).ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub seed: u64,
    pub max_n: usize,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

/// Default size limit: the largest ground set with a precomputed rank table.
pub const DEFAULT_MAX_N: usize = 20;

/// Number of generated sparse paving matroids per run.
pub const GENERATED_COUNT: usize = 100;

/// Seeds per matroid in the rounding check.
pub const ROUNDING_SEEDS: u64 = 100;

struct Context {
    seed: u64,
    max_n: usize,
    catalog: Vec<Sample>,
    generated: Vec<Sample>,
}

impl Context {
    fn new(seed: u64, max_n: usize) -> Self {
        let cap = max_n.min(SUBSET_ENUMERATION_CAP);
        Context {
            seed,
            max_n,
            catalog: catalog_samples(cap),
            generated: generated_sparse_paving(seed, GENERATED_COUNT, cap),
        }
    }

    fn everything(&self) -> impl Iterator<Item = &Sample> {
        self.catalog.iter().chain(&self.generated)
    }
}

/// Counts items and keeps the first few failures.
#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<String>,
    total_failures: usize,
}

impl Tally {
    const KEEP: usize = 20;

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.total_failures += 1;
            if self.failures.len() < Self::KEEP {
                self.failures.push(describe());
            }
        }
    }

    fn record_result<E: fmt::Display>(&mut self, label: &str, result: Result<bool, E>) {
        match result {
            Ok(ok) => self.record(ok, || label.to_string()),
            Err(e) => self.record(false, || format!("{label}: {e}")),
        }
    }

    fn finish(self, extra: Value) -> (bool, Value) {
        let mut details = json!({ "checked": self.checked, "failures": self.total_failures });
        if !self.failures.is_empty() {
            details["first_failures"] = json!(self.failures);
        }
        if let (Value::Object(d), Value::Object(e)) = (&mut details, extra) {
            d.extend(e);
        }
        (self.total_failures == 0, details)
    }
}

type CheckFn = fn(&Context) -> (bool, Value);

fn suite_checks(suite: Suite) -> Vec<(&'static str, CheckFn)> {
    match suite {
        Suite::Core => vec![
            ("core.catalog_axioms", core_catalog_axioms),
            ("core.duality", core_duality),
            ("core.flats", core_flats),
            ("core.io_roundtrip", core_io_roundtrip),
            ("core.isomorphism", core_isomorphism),
            ("core.line_deletion", core_line_deletion),
            ("core.minor_search", core_minor_search),
        ],
        Suite::Cover => vec![
            ("cover.certificates", cover_certificates),
            ("cover.deletion_contraction", cover_deletion_contraction),
            ("cover.known_values", cover_known_values),
            ("cover.long_lines_covers", cover_long_lines),
            ("cover.minor_monotonicity", cover_minor_monotonicity),
            ("cover.mu_le_kappa", cover_mu_le_kappa),
            ("cover.rank2_covers", cover_rank2),
            ("cover.rank3_excluded_minor_bounds", cover_rank3_bounds),
            ("cover.relaxation", cover_relaxation),
            ("cover.relaxation_chain", cover_relaxation_chain),
            ("cover.self_duality", cover_self_duality),
            ("cover.sparse_paving_equality", cover_sparse_paving_equality),
            ("cover.transforms", cover_transforms),
        ],
        Suite::Lp => vec![
            ("lp.blow_up", lp_blow_up),
            ("lp.blow_up_class_form", lp_blow_up_class_form),
            ("lp.known_values", lp_known_values),
            ("lp.randomized_round", lp_randomized_round),
            ("lp.rounding_bound", lp_rounding_bound),
            ("lp.sandwich", lp_sandwich),
            ("lp.strong_duality", lp_strong_duality),
        ],
        Suite::Johnson => vec![
            ("johnson.class_7_3", johnson_class_7_3),
            ("johnson.mk4_free", johnson_mk4_free),
            ("johnson.partition", johnson_partition),
            ("johnson.sparse_paving_construction", johnson_sparse_paving_construction),
            ("johnson.spike", johnson_spike),
            ("johnson.stable_set_equivalence", johnson_stable_set_equivalence),
            ("johnson.v8_free", johnson_v8_free),
        ],
        Suite::Bounds => vec![
            ("bounds.binomial", bounds_binomial),
            ("bounds.count_upper", bounds_count_upper),
            ("bounds.knuth_vs_classes", bounds_knuth_vs_classes),
        ],
        Suite::All => [Suite::Core, Suite::Cover, Suite::Lp, Suite::Johnson, Suite::Bounds]
            .into_iter()
            .flat_map(suite_checks)
            .collect(),
    }
}

/// Names of the checks a suite runs, sorted.
pub fn check_names(suite: Suite) -> Vec<&'static str> {
    let mut names: Vec<&'static str> = suite_checks(suite).into_iter().map(|(n, _)| n).collect();
    names.sort_unstable();
    names
}

pub fn run_suite(suite: Suite, seed: u64, max_n: usize) -> Report {
    let ctx = Context::new(seed, max_n);
    let mut checks: Vec<Check> = suite_checks(suite)
        .into_iter()
        .map(|(name, f)| {
            let (ok, details) = f(&ctx);
            Check { name: name.to_string(), status: if ok { Status::Pass } else { Status::Fail }, details }
        })
        .collect();
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    Report { suite, seed, max_n, checks }
}

/// Runs a single named check.
pub fn run_check(name: &str, seed: u64, max_n: usize) -> Option<Check> {
    let (_, f) = suite_checks(Suite::All).into_iter().find(|(n, _)| *n == name)?;
    let (ok, details) = f(&Context::new(seed, max_n));
    Some(Check { name: name.to_string(), status: if ok { Status::Pass } else { Status::Fail }, details })
}

fn kappa(m: &Matroid) -> usize {
    kappa_exact(m).expect("test matroids are within the size cap").value
}

fn int(v: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

// ---- core ----

fn core_catalog_axioms(ctx: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    for s in &ctx.catalog {
        let m = &s.matroid;
        t.record(Matroid::new(m.len(), m.rank(), m.bases().iter().copied()).as_ref() == Ok(m), || s.name.clone());
    }
    t.finish(json!({}))
}

fn core_duality(ctx: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    for s in ctx.everything() {
        let m = &s.matroid;
        let dual = m.dual();
        t.record(dual.dual() == *m && dual.rank() == m.len() - m.rank(), || format!("{}: involution", s.name));
        for e in 0..m.len() {
            let single = Subset::singleton(e);
            let ok = m.contract(single).matroid.dual() == dual.delete(single).matroid
                && m.delete(single).matroid.dual() == dual.contract(single).matroid;
            t.record(ok, || format!("{}: minors of element {}", s.name, e + 1));
        }
    }
    t.finish(json!({}))
}

fn core_flats(ctx: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    for s in &ctx.catalog {
        let m = &s.matroid;
        let flats = m.all_flats().expect("catalog samples are within the cap");
        let ok = flats.first().map(|f| f.elements) == Some(m.loops())
            && flats.last().map(|f| f.elements) == Some(m.ground())
            && flats.windows(2).all(|w| w[0] < w[1])
            && flats.iter().all(|f| m.closure_of(f.elements) == f.elements && m.rank_of(f.elements) == f.rank);
        t.record(ok, || s.name.clone());
    }
    let u24 = catalog("U(2,4)").expect("catalog").all_flats().expect("small").len();
    let k5 = catalog("MK(5)").expect("catalog").all_flats().expect("small").len();
    t.record(u24 == 6, || format!("U(2,4) has {u24} flats"));
    t.record(k5 == 52, || format!("MK(5) has {k5} flats"));
    t.finish(json!({ "flats_U(2,4)": u24, "flats_MK(5)": k5 }))
}

fn core_io_roundtrip(ctx: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    for s in ctx.everything() {
        let text = write_bases(&s.matroid, std::slice::from_ref(&s.name));
        t.record(parse_bases(&text).as_ref() == Ok(&s.matroid), || s.name.clone());
    }
    t.finish(json!({}))
}

fn core_isomorphism(ctx: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    let mut rng = trial_rng(ctx.seed, 0);
    for s in ctx.everything().filter(|s| s.matroid.len() <= 12) {
        let m = &s.matroid;
        let mut images: Vec<usize> = (0..m.len()).collect();
        images.shuffle(&mut rng);
        let permuted = m.relabel(&GroundMap::new(images));
        let found = is_isomorphic(m, &permuted);
        t.record(found.is_some_and(|map| m.relabel(&map) == permuted), || s.name.clone());
    }
    let named: Vec<Matroid> =
        ["P6", "Q6", "R6", "W3", "MK4", "U(3,6)"].iter().map(|n| catalog(n).expect("catalog")).collect();
    for (i, a) in named.iter().enumerate() {
        for b in &named[i + 1..] {
            t.record(is_isomorphic(a, b).is_none(), || "named rank-3 matroids are distinct".into());
        }
    }
    let k4 = catalog("MK4").expect("catalog");
    t.record(is_isomorphic(&k4, &catalog("MK(4)").expect("catalog")).is_some(), || "MK4 vs MK(4)".into());
    let v8 = catalog("V8").expect("catalog");
    t.record(is_isomorphic(&v8, &v8.dual()).is_some(), || "V8 is self-dual".into());
    t.finish(json!({}))
}

fn core_minor_search(ctx: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    let k4 = catalog("MK4").expect("catalog");
    let u23 = uniform(2, 3);
    t.record(has_minor(&k4, &u23).is_some_and(|w| w.verify(&k4, &u23)), || "MK4 has U(2,3)".into());
    t.record(has_minor(&k4, &uniform(2, 4)).is_none(), || "MK4 has no U(2,4)".into());
    t.record(has_minor(&uniform(3, 6), &catalog("P6").expect("catalog")).is_none(), || "U(3,6) has no P6".into());
    for s in ctx.everything().filter(|s| s.matroid.len() <= 9) {
        let m = &s.matroid;
        t.record(has_minor(m, m).is_some_and(|w| w.verify(m, m)), || format!("{} contains itself", s.name));
        for e in 0..m.len() {
            let minor = m.delete(Subset::singleton(e)).matroid;
            t.record(has_minor(m, &minor).is_some_and(|w| w.verify(m, &minor)), || {
                format!("{} contains its deletion of {}", s.name, e + 1)
            });
        }
    }
    t.finish(json!({}))
}

/// Largest `k` with a `U(3,k)`-minor.
fn largest_uniform_rank3(m: &Matroid) -> usize {
    let mut k = 3;
    while k < m.len() && has_minor(m, &uniform(3, k + 1)).is_some() {
        k += 1;
    }
    k
}

fn core_line_deletion(ctx: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    let mut samples: Vec<Sample> = rank3_family(ctx.seed, ctx.max_n.min(SUBSET_ENUMERATION_CAP))
        .into_iter()
        .filter(|s| s.matroid.is_simple())
        .collect();
    if ctx.max_n >= 17 {
        samples.push(Sample::new("line(15)+2", line_plus_two(15)));
    }
    let mut hypothesis_met = Vec::new();
    for s in &samples {
        let m = &s.matroid;
        let k = largest_uniform_rank3(m);
        if k < 4 {
            continue;
        }
        let threshold = (binomial(k as u64 - 1, 2) - 1) * binomial(k as u64, 2) + k as u64;
        match line_deletion_witness(m, k) {
            Ok(Some(line)) => {
                let rest = m.delete(line.elements).matroid;
                t.record(has_minor(&rest, &uniform(3, k - 1)).is_none(), || format!("{}: witness {line}", s.name));
            }
            Ok(None) => t.record(m.len() as u64 <= threshold, || format!("{}: no line for k = {k}", s.name)),
            Err(e) => t.record(false, || format!("{}: {e}", s.name)),
        }
        if m.len() as u64 > threshold {
            hypothesis_met.push(s.name.clone());
        }
    }
    t.finish(json!({ "hypothesis_met": hypothesis_met }))
}

// ---- cover ----

fn cover_known_values(ctx: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    let expected = [
        ("U(3,6)", 0),
        ("P6", 1),
        ("Q6", 2),
        ("R6", 2),
        ("W3", 3),
        ("MK4", 4),
        ("V8", 5),
        ("MK(5)", 15),
        ("MK(6)", 31),
    ];
    let mut values = serde_json::Map::new();
    for (name, value) in expected {
        let m = catalog(name).expect("catalog");
        if m.len() > ctx.max_n {
            continue;
        }
        let result = kappa_exact(&m).expect("within cap");
        values.insert(name.to_string(), json!(result.value));
        let certified = result
            .optimality_certificate
            .as_ref()
            .is_some_and(|c| c.weights.len() == value && c.is_feasible(&m).unwrap_or(false) && c.value() == int(value));
        t.record(result.value == value && (value == 0 || certified), || format!("{name}: {}", result.value));
    }
    t.finish(json!({ "values": values }))
}

fn cover_certificates(ctx: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    let mut certified = 0;
    for s in ctx.everything() {
        let r = kappa_exact(&s.matroid).expect("within cap");
        t.record(is_flat_cover(&s.matroid, &r.cover).is_ok_and(|c| c.holds()) && r.cover.len() == r.value, || {
            format!("{}: cover", s.name)
        });
        if let Some(c) = &r.optimality_certificate {
            certified += 1;
            t.record(c.value() == int(r.value) && c.is_feasible(&s.matroid).unwrap_or(false), || {
                format!("{}: certificate", s.name)
            });
        }
    }
    t.finish(json!({ "certified": certified }))
}

fn cover_self_duality(ctx: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    for s in ctx.everything() {
        t.record(kappa(&s.matroid) == kappa(&s.matroid.dual()), || s.name.clone());
    }
    t.finish(json!({}))
}

fn cover_minor_monotonicity(ctx: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    for s in &ctx.catalog {
        let m = &s.matroid;
        let k = kappa(m);
        for e in 0..m.len() {
            let single = Subset::singleton(e);
            t.record(kappa(&m.delete(single).matroid) <= k, || format!("{} \\ {}", s.name, e + 1));
            t.record(kappa(&m.contract(single).matroid) <= k, || format!("{} / {}", s.name, e + 1));
        }
    }
    t.finish(json!({}))
}

fn cover_deletion_contraction(ctx: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    for s in ctx.everything() {
        let m = &s.matroid;
        let k = kappa(m);
        let skip = m.loops().union(m.coloops());
        for e in (0..m.len()).filter(|e| !skip.contains(*e)) {
            let single = Subset::singleton(e);
            let del = kappa_exact(&m.delete(single).matroid).expect("within cap");
            let con_dual = kappa_exact(&m.contract(single).matroid.dual()).expect("within cap");
            t.record(k <= del.value + con_dual.value, || format!("{}: inequality at {}", s.name, e + 1));
            let combined = combine_cover(m, e, &del.cover, &con_dual.cover);
            t.record(
                combined.is_ok_and(|z| {
                    z.len() <= del.value + con_dual.value && is_flat_cover(m, &z).is_ok_and(|c| c.holds())
                }),
                || format!("{}: combined cover at {}", s.name, e + 1),
            );
        }
    }
    t.finish(json!({}))
}

fn cover_transforms(ctx: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    for s in ctx.everything() {
        let m = &s.matroid;
        let z = kappa_exact(m).expect("within cap").cover;
        let dual_ok = dualize_cover(m, &z)
            .is_ok_and(|zd| zd.len() <= z.len() && is_flat_cover(&m.dual(), &zd).is_ok_and(|c| c.holds()));
        t.record(dual_ok, || format!("{}: dual cover", s.name));
        for e in 0..m.len() {
            let deletion = m.delete(Subset::singleton(e)).matroid;
            let ok = project_cover(m, &z, e)
                .is_ok_and(|zp| zp.len() <= z.len() && is_flat_cover(&deletion, &zp).is_ok_and(|c| c.holds()));
            t.record(ok, || format!("{}: projection at {}", s.name, e + 1));
        }
    }
    t.finish(json!({}))
}

fn cover_relaxation(ctx: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    for s in ctx.everything() {
        let m = &s.matroid;
        let k = kappa(m);
        for h in m.circuit_hyperplanes() {
            let ok = relax(m, h).is_ok_and(|relaxed| {
                Matroid::new(relaxed.len(), relaxed.rank(), relaxed.bases().iter().copied()).is_ok()
                    && kappa(&relaxed) + 1 == k
            });
            t.record(ok, || format!("{}: relax {h}", s.name));
        }
    }
    t.finish(json!({}))
}

fn cover_relaxation_chain(_: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    let chain = ["MK4", "W3", "Q6", "P6", "U(3,6)"];
    let mut values = Vec::new();
    for pair in chain.windows(2) {
        let m = catalog(pair[0]).expect("catalog");
        let next = catalog(pair[1]).expect("catalog");
        let h = m.circuit_hyperplanes()[0];
        let relaxed = relax(&m, h).expect("first circuit-hyperplane");
        let (km, kn) = (kappa(&m), kappa(&next));
        t.record(is_isomorphic(&relaxed, &next).is_some() && km == kn + 1, || format!("{} -> {}", pair[0], pair[1]));
        values.push(km);
    }
    values.push(0);
    t.record(values == [4, 3, 2, 1, 0], || format!("values {values:?}"));
    t.finish(json!({ "chain": chain, "kappa": values }))
}

fn cover_sparse_paving_equality(ctx: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    for s in ctx.everything().filter(|s| is_sparse_paving(&s.matroid)) {
        t.record(kappa(&s.matroid) == s.matroid.circuit_hyperplanes().len(), || s.name.clone());
    }
    t.finish(json!({}))
}

fn cover_mu_le_kappa(ctx: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    for s in ctx.everything() {
        let (mu, chosen) = mu_integer(&s.matroid).expect("within cap");
        t.record(mu <= kappa(&s.matroid) && chosen.len() == mu, || s.name.clone());
    }
    t.finish(json!({}))
}

fn cover_rank2(ctx: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    let mut samples = rank2_family(ctx.max_n);
    samples.extend(ctx.catalog.iter().filter(|s| s.matroid.rank() == 2).cloned());
    for s in &samples {
        let m = &s.matroid;
        let points = (0..m.len())
            .filter(|e| !m.loops().contains(*e))
            .map(|e| m.closure_of(Subset::singleton(e)))
            .collect::<std::collections::BTreeSet<_>>()
            .len();
        // The smallest k with no U(2,k)-minor is one more than the number of points.
        let k = points + 1;
        let free =
            has_minor(m, &uniform(2, points)).is_some() && (k > m.len() || has_minor(m, &uniform(2, k)).is_none());
        let z = rank2_cover(m).expect("rank 2");
        let valid = is_flat_cover(m, &z).is_ok_and(|c| c.holds());
        t.record(free && valid && z.len() <= k && kappa(m) <= k, || s.name.clone());
    }
    t.finish(json!({}))
}

fn long_lines_bound_holds(n: usize, lines: usize, size: usize) -> bool {
    2 * size <= 2 + n + 2 * lines
}

fn cover_long_lines(ctx: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    for s in rank3_family(ctx.seed, ctx.max_n.min(SUBSET_ENUMERATION_CAP)) {
        let m = &s.matroid;
        let z = long_lines_cover(m).expect("rank 3");
        let l = long_lines(m).len();
        let ok = is_flat_cover(m, &z).is_ok_and(|c| c.holds())
            && long_lines_bound_holds(m.len(), l, z.len())
            && long_lines_bound_holds(m.len(), l, kappa(m));
        t.record(ok, || s.name.clone());
    }
    t.finish(json!({}))
}

fn cover_rank3_bounds(ctx: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    // (pattern, constant, numerator, denominator): κ <= constant + n · numerator / denominator.
    let bounds = [("U(3,6)", 496, 1, 1), ("Q6", 41, 1, 1), ("R6", 13, 1, 2), ("P6", 13, 19, 1)];
    let mut free_counts = serde_json::Map::new();
    for (pattern, constant, num, den) in bounds {
        let p = catalog(pattern).expect("catalog");
        let mut free = 0;
        for s in rank3_family(ctx.seed, ctx.max_n.min(SUBSET_ENUMERATION_CAP)) {
            if has_minor(&s.matroid, &p).is_some() {
                continue;
            }
            free += 1;
            let n = s.matroid.len();
            let k = kappa(&s.matroid);
            t.record(den * k <= den * constant + num * n, || format!("{}: {pattern}-free, κ = {k}", s.name));
        }
        free_counts.insert(pattern.to_string(), json!(free));
    }
    t.finish(json!({ "minor_free": free_counts }))
}

// ---- lp ----

fn lp_known_values(ctx: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    for (name, value) in [("U(3,6)", 0), ("MK4", 4), ("MK(5)", 15), ("V8", 5), ("MK(6)", 31)] {
        let m = catalog(name).expect("catalog");
        if m.len() > ctx.max_n {
            continue;
        }
        let ks = kappa_star(&m).expect("within cap");
        t.record(ks.value == int(value), || format!("{name}: {}", ks.value));
    }
    t.finish(json!({}))
}

fn lp_strong_duality(ctx: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    for s in ctx.everything() {
        let result = kappa_star(&s.matroid);
        t.record_result(
            &s.name,
            result.map(|ks| {
                ks.cover.value() == ks.value
                    && ks.certificate.value() == ks.value
                    && ks.cover.is_feasible(&s.matroid)
                    && ks.certificate.is_feasible(&s.matroid).unwrap_or(false)
            }),
        );
    }
    t.finish(json!({}))
}

fn lp_sandwich(ctx: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    let mut strict = Vec::new();
    for s in ctx.everything() {
        let m = &s.matroid;
        let ks = kappa_star(m).expect("within cap").value;
        let mu = int(mu_integer(m).expect("within cap").0);
        let k = int(kappa(m));
        t.record(mu <= ks && ks <= k, || s.name.clone());
        if mu < k {
            strict.push(s.name.clone());
        }
    }
    t.finish(json!({ "mu_below_kappa": strict }))
}

fn lp_rounding_bound(ctx: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    for s in ctx.everything() {
        let m = &s.matroid;
        let ks = kappa_star(m).expect("within cap").value;
        if ks.is_zero() {
            continue;
        }
        t.record(int(kappa(m)) <= rounding_bound(m, &ks), || s.name.clone());
    }
    t.finish(json!({}))
}

fn lp_randomized_round(ctx: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    let mut largest = 0;
    for s in ctx.everything() {
        let m = &s.matroid;
        let ks = kappa_star(m).expect("within cap");
        if ks.value.is_zero() {
            continue;
        }
        for i in 0..ROUNDING_SEEDS {
            let seed = ctx.seed.wrapping_add(i);
            match randomized_round(m, &ks.cover, seed) {
                Ok(z) => {
                    largest = largest.max(z.len());
                    t.record(is_flat_cover(m, &z).is_ok_and(|c| c.holds()), || format!("{} seed {seed}", s.name));
                }
                Err(e) => t.record(false, || format!("{} seed {seed}: {e}", s.name)),
            }
        }
    }
    t.finish(json!({ "seeds_per_matroid": ROUNDING_SEEDS, "largest_cover": largest }))
}

fn lp_blow_up(ctx: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    for s in &ctx.catalog {
        let m = &s.matroid;
        for tt in (0..3).filter(|&tt| tt < m.rank()) {
            match blow_up(m, tt, exact_sub_solver) {
                Ok(b) => {
                    let exact_at_zero = tt > 0 || b.cover == exact_sub_solver(m).expect("within cap");
                    t.record(b.cover.is_feasible(m) && b.cover.value() <= b.cost_bound && exact_at_zero, || {
                        format!("{} t = {tt}", s.name)
                    });
                }
                Err(e) => t.record(false, || format!("{} t = {tt}: {e}", s.name)),
            }
        }
    }
    t.finish(json!({}))
}

fn lp_blow_up_class_form(ctx: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    for s in &ctx.catalog {
        let m = &s.matroid;
        let (n, r) = (m.len(), m.rank());
        if r >= n {
            continue;
        }
        let lhs_value = kappa_star(m).expect("within cap").value;
        for tt in (0..3).filter(|&tt| tt < r) {
            let best = k_subsets(n, tt)
                .filter(|set| m.is_independent(*set))
                .map(|set| kappa_star(&m.contract(set).matroid).expect("within cap").value)
                .max()
                .unwrap_or_else(BigRational::zero);
            let lhs = &lhs_value / BigRational::from_integer(BigInt::from(big_binomial(n as u64, r as u64)));
            let rhs = best / BigRational::from_integer(BigInt::from(big_binomial((n - tt) as u64, (r - tt) as u64)));
            t.record(lhs <= rhs, || format!("{} t = {tt}", s.name));
        }
    }
    t.finish(json!({}))
}

// ---- johnson ----

fn johnson_partition(ctx: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    for n in 2..=ctx.max_n.min(12) {
        for r in 1..n {
            let classes: Vec<_> = (0..n).map(|k| gs_class(n, r, k).expect("valid rank")).collect();
            let total: usize = classes.iter().map(|c| c.members.len()).sum();
            let stable = classes.iter().all(|c| crate::johnson::adjacent_pair(&c.members).is_none());
            let (_, best) = best_class(n, r).expect("valid rank");
            let ok = total as u64 == binomial(n as u64, r as u64)
                && stable
                && (best * n) as u64 >= binomial(n as u64, r as u64);
            t.record(ok, || format!("({n},{r})"));
        }
    }
    t.finish(json!({}))
}

fn johnson_class_7_3(_: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    let sizes: Vec<usize> = (0..7).map(|k| gs_class(7, 3, k).expect("valid").members.len()).collect();
    t.record(sizes.iter().all(|&s| s == 5), || format!("sizes {sizes:?}"));
    let zero: Vec<Vec<usize>> = gs_class(7, 3, 0).expect("valid").members.iter().map(|x| x.labels()).collect();
    t.finish(json!({ "sizes": sizes, "class_0": zero }))
}

fn johnson_stable_set_equivalence(ctx: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    let mut census = serde_json::Map::new();
    for (n, r) in [(5, 2), (6, 3)] {
        if n > ctx.max_n {
            continue;
        }
        let c = stable_set_census(n, r).expect("small enough");
        t.record(c.equivalence_holds(), || format!("({n},{r})"));
        census.insert(format!("({n},{r})"), json!(c));
    }
    t.finish(json!({ "census": census }))
}

fn johnson_sparse_paving_construction(_: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    let u = sparse_paving_from_nonbases(6, 3, &[]).expect("empty is stable");
    t.record(u == uniform(3, 6), || "empty set gives U(3,6)".into());
    let r6 = sparse_paving_from_nonbases(6, 3, &[Subset::from_labels([1, 2, 3]), Subset::from_labels([4, 5, 6])])
        .expect("stable");
    t.record(is_isomorphic(&r6, &catalog("R6").expect("catalog")).is_some(), || "R6".into());
    let m = sparse_paving_from_nonbases(7, 3, &gs_class(7, 3, 0).expect("valid").members).expect("stable");
    t.record(kappa(&m) == 5 && m.circuit_hyperplanes().len() == 5, || "U(7,3,0)".into());
    t.finish(json!({}))
}

fn johnson_mk4_free(ctx: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    let mut runs = Vec::new();
    for (n, r) in [(7, 3), (9, 4)] {
        if n > ctx.max_n {
            continue;
        }
        let k = if n == 7 { 0 } else { best_class(n, r).expect("valid").0 };
        match mk4_free_experiment(n, r, k, 50, 0.5, ctx.seed) {
            Ok(report) => {
                t.record(report.failures.is_empty(), || format!("({n},{r},{k}): {:?}", report.failures));
                runs.push(
                    json!({ "n": n, "r": r, "k": k, "trials": report.trials, "failures": report.failures.len() }),
                );
            }
            Err(e) => t.record(false, || format!("({n},{r}): {e}")),
        }
    }
    t.finish(json!({ "runs": runs }))
}

fn johnson_v8_free(ctx: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    let mut reports = Vec::new();
    for (n, r) in [(7, 3), (9, 4), (11, 4)] {
        if n > ctx.max_n {
            continue;
        }
        match v8_free_check(n, r) {
            Ok(report) => {
                t.record(report.passed(), || format!("({n},{r})"));
                reports.push(json!(report));
            }
            Err(e) => t.record(false, || format!("({n},{r}): {e}")),
        }
    }
    t.finish(json!({ "reports": reports }))
}

fn johnson_spike(_: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    let s = SetSystem::all_k_subsets(4, 2).expect("valid system");
    let m = spike(&s).expect("valid spike");
    let k = kappa(&m);
    t.record(m.bases().len() == 58, || format!("{} bases", m.bases().len()));
    t.record(spike_conditions_hold(&m, &s), || "leg and transversal conditions".into());
    t.record(k >= 6, || format!("κ = {k}"));
    t.finish(json!({ "bases": m.bases().len(), "kappa": k }))
}

// ---- bounds ----

fn bounds_knuth_vs_classes(ctx: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    for n in 2..=ctx.max_n.clamp(2, 12) as u64 {
        let (_, size) = best_class(n as usize, n as usize / 2).expect("valid rank");
        t.record(int(size) >= knuth_lower(n), || format!("n = {n}"));
    }
    t.finish(json!({}))
}

fn bounds_binomial(_: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    for n in 1..=64u64 {
        for r in 1..=n {
            t.record_result(&format!("({n},{r})"), binom_bounds(n, r).map(|b| b.holds()));
        }
    }
    t.finish(json!({}))
}

fn bounds_count_upper(_: &Context) -> (bool, Value) {
    let mut t = Tally::default();
    let five = BigRational::from_integer(5.into());
    t.record(kappa_count_upper(3, 1).is_ok_and(|v| v.lo == five && v.hi == five), || "(3,1)".into());
    t.record(kappa_count_upper(8, 32).is_ok_and(|v| v.lo > knuth_lower(8)), || "(8,32)".into());
    let mut prev = BigRational::zero();
    for k in 1..=64 {
        match kappa_count_upper(6, k) {
            Ok(v) => {
                t.record(v.lo > prev, || format!("monotone at k = {k}"));
                prev = v.hi;
            }
            Err(e) => t.record(false, || format!("k = {k}: {e}")),
        }
    }
    t.finish(json!({}))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_parse_and_sort() {
        for suite in Suite::ALL {
            assert_eq!(suite.to_string().parse::<Suite>().unwrap(), suite);
        }
        let names = check_names(Suite::All);
        assert!(names.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(names.len(), 37);
    }

    #[test]
    fn bounds_suite_passes() {
        let report = run_suite(Suite::Bounds, 1, DEFAULT_MAX_N);
        assert!(report.passed(), "{:?}", report.failed().collect::<Vec<_>>());
    }
}

//! End-to-end checks of one instance and of an exhaustively generated
//! corpus, with JSON-serializable reports.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cubes::{is_daisy_cube, isometry_violations, median_violation, BitString};
use crate::error::Result;
use crate::genesis::{canonical_form, enumerate_catacondensed};
use crate::hexgrid::{Benzenoid, HexAddr, HexClass};
use crate::matching::{link_edges, Label};
use crate::resonance::{build_digraph, build_resonance_graph, hasse_equals_digraph, ResonanceGraph};
use crate::resonant::{
    check_lemma1, check_lemma2_lemma3, check_theorem, enumerate_resonant_sets,
    maximal_resonant_sets, GeneratorCertificate,
};
use crate::structure::{classify_all, inner_dual, is_kinky, order_hexagons, HexOrdering, Traversal};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl CheckResult {
    fn from_bool(ok: bool, reason: impl FnOnce() -> String) -> Self {
        if ok {
            CheckResult { status: Status::Pass, reason: None }
        } else {
            CheckResult { status: Status::Fail, reason: Some(reason()) }
        }
    }

    fn skipped(reason: &str) -> Self {
        CheckResult { status: Status::Skipped, reason: Some(reason.to_string()) }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

#[derive(Debug, Clone, Default)]
pub struct CheckOptions {
    pub traversal: Traversal,
    pub root: Option<HexAddr>,
    /// Run the lemma and theorem checks on non-kinky systems too.
    pub force: bool,
    pub median: bool,
    pub timing: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceInfo {
    pub hexagons: Vec<HexAddr>,
    pub n: usize,
    pub kinky: bool,
    pub classes: Vec<HexClass>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrderingInfo {
    pub mode: Traversal,
    pub root: HexAddr,
    /// Addresses of `h_1 .. h_n`.
    pub order: Vec<HexAddr>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Counts {
    pub matchings: usize,
    pub labels: usize,
    pub resonance_edges: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Checks {
    pub perfect_matchings: CheckResult,
    pub label_injective: CheckResult,
    pub link_both_or_none: CheckResult,
    pub isometry: CheckResult,
    pub hasse: CheckResult,
    pub acyclic: CheckResult,
    pub degree_bound: CheckResult,
    pub connected: CheckResult,
    pub lemma1: CheckResult,
    pub lemma2_3: CheckResult,
    pub theorem: CheckResult,
    pub median: CheckResult,
}

impl Checks {
    pub fn all(&self) -> [(&'static str, &CheckResult); 12] {
        [
            ("perfect_matchings", &self.perfect_matchings),
            ("label_injective", &self.label_injective),
            ("link_both_or_none", &self.link_both_or_none),
            ("isometry", &self.isometry),
            ("hasse", &self.hasse),
            ("acyclic", &self.acyclic),
            ("degree_bound", &self.degree_bound),
            ("connected", &self.connected),
            ("lemma1", &self.lemma1),
            ("lemma2_3", &self.lemma2_3),
            ("theorem", &self.theorem),
            ("median", &self.median),
        ]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceReport {
    pub schema_version: u32,
    pub instance: InstanceInfo,
    pub ordering: OrderingInfo,
    pub counts: Counts,
    pub labels: Vec<Label>,
    pub checks: Checks,
    /// Whether the labelled resonance graph is a daisy cube, computed
    /// regardless of kinkiness.
    pub daisy_observed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<BitString>,
    /// Maximal elements of the label poset.
    pub maximal_labels: Vec<Label>,
    /// Maximal resonant sets as 1-based hexagon positions.
    pub maximal_resonant_sets: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<GeneratorCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl InstanceReport {
    /// True iff no applicable check failed.
    pub fn passed(&self) -> bool {
        self.checks.all().iter().all(|(_, c)| !c.failed())
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.checks.all().iter().filter(|(_, c)| c.failed()).map(|(n, _)| *n).collect()
    }
}

/// Runs every check on one catacondensed system.
pub fn check_instance(b: &Benzenoid, opts: &CheckOptions) -> Result<InstanceReport> {
    let start = Instant::now();
    let t = inner_dual(b)?;
    let ord = order_hexagons(&t, opts.traversal, opts.root)?;
    let kinky = is_kinky(b)?;
    let rg = build_digraph(build_resonance_graph(b, &ord)?);
    let n = b.hex_count();
    let table = &rg.table;

    let perfect = table.matchings.iter().all(|m| m.is_perfect(b) && m.edges.count() == b.vertex_count() / 2);
    let duplicate = table.duplicate_label();
    let link = link_violation(b, &ord, &rg);

    let labeled = rg.labeled_graph().ok();
    let (isometry, connected, daisy) = match &labeled {
        Some(g) => {
            let v = isometry_violations(g);
            let iso = CheckResult::from_bool(v.is_empty(), || {
                let (a, c, d, h) = v[0];
                format!("d({a},{c}) = {d:?} but hamming = {h}")
            });
            (iso, CheckResult::from_bool(g.is_connected(), || "resonance graph is disconnected".into()), is_daisy_cube(g).is_daisy)
        }
        None => {
            let r = CheckResult::skipped("labels are not unique");
            (r.clone(), r, false)
        }
    };
    let hasse = CheckResult::from_bool(hasse_equals_digraph(&rg), || "arc set differs from the Hasse diagram".into());
    let acyclic = CheckResult::from_bool(rg.is_acyclic(), || "resonance digraph has a cycle".into());
    let max_deg = rg.degrees().into_iter().max().unwrap_or(0);
    let degree_bound = CheckResult::from_bool(max_deg <= n, || format!("vertex of degree {max_deg} > {n}"));
    let median = match (&labeled, opts.median) {
        (Some(g), true) => {
            let v = median_violation(g);
            CheckResult::from_bool(v.is_none(), || {
                let (a, c, d) = v.unwrap();
                format!("triple {a}, {c}, {d} has no unique median")
            })
        }
        (_, false) => CheckResult::skipped("not requested"),
        (None, true) => CheckResult::skipped("labels are not unique"),
    };

    let resonant = enumerate_resonant_sets(b, &ord, table);
    let maximal = maximal_resonant_sets(&resonant);
    let maximal_resonant_sets = maximal.iter().map(|s| s.hexagons.iter().map(|p| p + 1).collect()).collect();
    let maximal_labels: Vec<Label> = crate::cubes::maximal_elements(&table.labels).into_iter().collect();

    let run_lemmas = kinky || opts.force;
    let mut witness = None;
    let mut generators = Vec::new();
    let (lemma1, lemma2_3, theorem) = if run_lemmas {
        let l1 = check_lemma1(b, &ord, &maximal, true)?;
        let l23 = check_lemma2_lemma3(b, &ord, table, &maximal, true)?;
        let thm = check_theorem(b, &ord, &rg, true)?;
        witness = thm.witness.or(l23.witness);
        generators = thm.generators.clone();
        (
            CheckResult::from_bool(l1.holds, || {
                let w = l1.witness.as_ref().unwrap();
                format!("maximal resonant set {} misses the closed neighbourhood of h{}", w.set, w.hexagon)
            }),
            CheckResult::from_bool(l23.holds, || format!("{} is on one side only", l23.witness.unwrap())),
            CheckResult::from_bool(thm.holds, || match &thm.daisy_witness {
                Some(w) => format!("not a daisy cube: {w}"),
                None => format!("witness {}", thm.witness.map(|w| w.to_string()).unwrap_or_default()),
            }),
        )
    } else {
        let s = CheckResult::skipped("system is not kinky");
        (s.clone(), s.clone(), s)
    };

    let checks = Checks {
        perfect_matchings: CheckResult::from_bool(perfect, || "a matching is not perfect".into()),
        label_injective: CheckResult::from_bool(duplicate.is_none(), || {
            format!("label {} is shared", duplicate.unwrap())
        }),
        link_both_or_none: CheckResult::from_bool(link.is_none(), || {
            let (m, from, to) = link.unwrap();
            format!("matching {m} has exactly one link edge from h{from} to h{to}")
        }),
        isometry,
        hasse,
        acyclic,
        degree_bound,
        connected,
        lemma1,
        lemma2_3,
        theorem,
        median,
    };

    Ok(InstanceReport {
        schema_version: REPORT_SCHEMA_VERSION,
        instance: InstanceInfo { hexagons: b.hexes().to_vec(), n, kinky, classes: classify_all(b) },
        ordering: ordering_info(b, &ord, opts.traversal),
        counts: Counts {
            matchings: table.len(),
            labels: table.label_set().len(),
            resonance_edges: rg.edges.len(),
        },
        labels: table.label_set().into_iter().collect(),
        checks,
        daisy_observed: daisy,
        witness,
        maximal_labels,
        maximal_resonant_sets,
        generators,
        elapsed_ms: opts.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
    })
}

fn ordering_info(b: &Benzenoid, ord: &HexOrdering, mode: Traversal) -> OrderingInfo {
    OrderingInfo {
        mode,
        root: b.hex(ord.hex_at(0)),
        order: ord.order().iter().map(|&h| b.hex(h)).collect(),
    }
}

/// First `(matching index, from position, to position)` (1-based positions)
/// where exactly one edge of a link is selected.
fn link_violation(b: &Benzenoid, ord: &HexOrdering, rg: &ResonanceGraph) -> Option<(usize, usize, usize)> {
    let pos = |h: usize| ord.position_of(h) + 1;
    for (mi, m) in rg.table.matchings.iter().enumerate() {
        for h in 0..b.hex_count() {
            for (nb, _) in b.neighbor_indices(h) {
                let [x, y] = link_edges(b, nb, h).expect("adjacent");
                if m.contains(x) != m.contains(y) {
                    return Some((mi, pos(nb), pos(h)));
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub max_hexes: usize,
    pub kinky_only: bool,
    pub traversals: Vec<Traversal>,
    /// Enables random root sampling.
    pub seed: Option<u64>,
    /// Extra random leaf roots per instance and traversal when seeded.
    pub random_roots: usize,
    /// Use every leaf as a root.
    pub all_roots: bool,
    pub force: bool,
    pub median: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_hexes: 7,
            kinky_only: false,
            traversals: vec![Traversal::Dfs],
            seed: None,
            random_roots: 3,
            all_roots: false,
            force: false,
            median: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub mode: Traversal,
    pub root: HexAddr,
    pub passed: bool,
    pub failures: Vec<&'static str>,
    pub daisy_observed: bool,
    pub theorem: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<BitString>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceSummary {
    /// Canonical address list.
    pub key: Vec<HexAddr>,
    pub n: usize,
    pub kinky: bool,
    pub matchings: usize,
    pub runs: Vec<RunSummary>,
    /// Number of distinct label sets produced across the runs.
    pub distinct_label_sets: usize,
    /// Same, after re-indexing label bits by hexagon rather than position.
    pub distinct_hexagon_label_sets: usize,
}

impl InstanceSummary {
    pub fn passed(&self) -> bool {
        self.runs.iter().all(|r| r.passed)
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct CorpusSummary {
    pub instances: usize,
    pub kinky: usize,
    pub runs: usize,
    pub failed_runs: usize,
    pub failed_kinky_runs: usize,
    /// Non-kinky instances whose resonance graph is nevertheless a daisy
    /// cube under every run (observation only).
    pub non_kinky_daisy: usize,
    pub non_kinky_not_daisy: usize,
    /// Instances whose label set changes with the traversal or root.
    pub ordering_dependent_label_sets: usize,
    /// Instances whose hexagon-indexed label set changes with the traversal
    /// or root.
    pub ordering_dependent_hexagon_label_sets: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusReport {
    pub schema_version: u32,
    pub max_hexes: usize,
    pub kinky_only: bool,
    pub traversals: Vec<Traversal>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub summary: CorpusSummary,
    pub instances: Vec<InstanceSummary>,
}

impl CorpusReport {
    pub fn passed(&self) -> bool {
        self.summary.failed_runs == 0
    }
}

/// Roots to try for one instance: the default leaf, then every leaf or a
/// seeded random sample of leaves.
pub fn sample_roots(b: &Benzenoid, opts: &VerifyOptions, stream: u64) -> Result<Vec<HexAddr>> {
    let t = inner_dual(b)?;
    let leaves: Vec<HexAddr> = t.leaves().into_iter().map(|l| t.hex(l)).collect();
    let mut roots = vec![leaves[0]];
    if opts.all_roots {
        roots = leaves;
    } else if let Some(seed) = opts.seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        for _ in 0..opts.random_roots {
            roots.push(*leaves.choose(&mut rng).expect("a tree has a leaf"));
        }
        roots.sort();
        roots.dedup();
    }
    Ok(roots)
}

/// Rewrites a label so that bit `slot[i]` carries position `i`, i.e. indexes
/// bits by hexagon instead of by ordering position.
fn by_hexagon(l: Label, slot: &[usize]) -> BitString {
    l.ones_positions().fold(BitString::zeros(l.len()), |acc, i| acc.with(slot[i], true))
}

fn verify_one(b: &Benzenoid, stream: u64, opts: &VerifyOptions) -> Result<InstanceSummary> {
    let kinky = is_kinky(b)?;
    let mut runs = Vec::new();
    let mut label_sets: Vec<BTreeSet<Label>> = Vec::new();
    let mut hex_label_sets = Vec::new();
    let mut matchings = 0;
    for &mode in &opts.traversals {
        for root in sample_roots(b, opts, stream)? {
            let co = CheckOptions { traversal: mode, root: Some(root), force: opts.force, median: opts.median, timing: false };
            let r = check_instance(b, &co)?;
            matchings = r.counts.matchings;
            label_sets.push(r.labels.iter().copied().collect());
            let slot: Vec<usize> = r.ordering.order.iter().map(|&h| b.index_of(h).expect("ordered hexagon")).collect();
            hex_label_sets.push(r.labels.iter().map(|&l| by_hexagon(l, &slot)).collect::<BTreeSet<_>>());
            runs.push(RunSummary {
                mode,
                root,
                passed: r.passed(),
                failures: r.failures(),
                daisy_observed: r.daisy_observed,
                theorem: r.checks.theorem.status,
                witness: r.witness,
            });
        }
    }
    let distinct: BTreeSet<&BTreeSet<Label>> = label_sets.iter().collect();
    let distinct_by_hex: BTreeSet<&BTreeSet<BitString>> = hex_label_sets.iter().collect();
    let summary = InstanceSummary {
        key: canonical_form(b.hexes()),
        n: b.hex_count(),
        kinky,
        matchings,
        distinct_label_sets: distinct.len(),
        distinct_hexagon_label_sets: distinct_by_hex.len(),
        runs,
    };
    Ok(summary)
}

/// Runs the full pipeline on every catacondensed system with at most
/// `max_hexes` hexagons. Instances are processed in parallel and reported
/// in canonical-key order.
pub fn verify_corpus(opts: &VerifyOptions) -> Result<CorpusReport> {
    let corpus: Vec<Benzenoid> = (1..=opts.max_hexes)
        .flat_map(|n| enumerate_catacondensed(n, opts.kinky_only))
        .collect();
    let mut instances: Vec<InstanceSummary> = corpus
        .par_iter()
        .enumerate()
        .map(|(i, b)| verify_one(b, i as u64, opts))
        .collect::<Result<Vec<_>>>()?;
    instances.sort_by(|a, b| (a.n, &a.key).cmp(&(b.n, &b.key)));

    let mut s = CorpusSummary { instances: instances.len(), ..Default::default() };
    for inst in &instances {
        s.kinky += inst.kinky as usize;
        s.runs += inst.runs.len();
        let failed = inst.runs.iter().filter(|r| !r.passed).count();
        s.failed_runs += failed;
        if inst.kinky {
            s.failed_kinky_runs += failed;
        } else if inst.runs.iter().all(|r| r.daisy_observed) {
            s.non_kinky_daisy += 1;
        } else {
            s.non_kinky_not_daisy += 1;
        }
        s.ordering_dependent_label_sets += (inst.distinct_label_sets > 1) as usize;
        s.ordering_dependent_hexagon_label_sets += (inst.distinct_hexagon_label_sets > 1) as usize;
    }
    Ok(CorpusReport {
        schema_version: REPORT_SCHEMA_VERSION,
        max_hexes: opts.max_hexes,
        kinky_only: opts.kinky_only,
        traversals: opts.traversals.clone(),
        seed: opts.seed,
        summary: s,
        instances,
    })
}

//! Resonant sets, their binary representations, and executable checks of
//! the structural lemmas and the daisy-cube theorem for kinky systems.
//!
//! Hexagons are referred to by their 0-based position in the ordering, so
//! position `j` is bit `j` of every label.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::cubes::{downward_closure, interval_is_kcube, is_daisy_cube, maximal_elements, BitString, DaisyWitness};
use crate::error::{Error, Result};
use crate::hexgrid::Benzenoid;
use crate::matching::{is_alternating, Label};
use crate::resonance::{MatchingTable, ResonanceGraph};
use crate::structure::{inner_dual, is_kinky, HexOrdering};

/// Pairwise disjoint hexagons that are simultaneously alternating under the
/// witness matching.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResonantSet {
    /// Ordering positions, ascending.
    pub hexagons: Vec<usize>,
    /// Index into the matching table.
    pub witness: usize,
}

impl ResonantSet {
    fn mask(&self) -> u64 {
        self.hexagons.iter().fold(0, |m, &p| m | 1 << p)
    }

    pub fn is_subset_of(&self, other: &ResonantSet) -> bool {
        self.mask() & !other.mask() == 0
    }
}

/// `b(S)`: bit `j` is set iff position `j` is in `S`.
pub fn binary_representation(s: &ResonantSet, n: usize) -> BitString {
    let mut out = BitString::zeros(n);
    for &p in &s.hexagons {
        out = out.with(p, true);
    }
    out
}

/// Alternating hexagons of each matching, as position masks.
pub fn alternating_masks(b: &Benzenoid, ord: &HexOrdering, table: &MatchingTable) -> Vec<u64> {
    table
        .matchings
        .iter()
        .map(|m| {
            (0..ord.len())
                .filter(|&p| is_alternating(b, m, ord.hex_at(p)))
                .fold(0u64, |acc, p| acc | 1 << p)
        })
        .collect()
}

/// Position adjacency in the inner dual, as masks.
fn position_neighbors(b: &Benzenoid, ord: &HexOrdering) -> Vec<u64> {
    (0..ord.len())
        .map(|p| {
            b.neighbor_indices(ord.hex_at(p))
                .into_iter()
                .fold(0u64, |acc, (h, _)| acc | 1 << ord.position_of(h))
        })
        .collect()
}

/// All resonant sets, the empty set included, ordered by `b(S)`. Candidates
/// are the independent sets of the inner dual; each keeps the first
/// matching under which all members alternate.
pub fn enumerate_resonant_sets(b: &Benzenoid, ord: &HexOrdering, table: &MatchingTable) -> Vec<ResonantSet> {
    let n = ord.len();
    let alt = alternating_masks(b, ord, table);
    let nbr = position_neighbors(b, ord);

    let mut independent = Vec::new();
    grow_independent(0, 0, n, &nbr, &mut independent);

    let mut out: Vec<ResonantSet> = independent
        .into_iter()
        .filter_map(|mask| {
            alt.iter().position(|&a| mask & !a == 0).map(|witness| ResonantSet {
                hexagons: (0..n).filter(|&p| mask >> p & 1 == 1).collect(),
                witness,
            })
        })
        .collect();
    out.sort_by_key(|s| binary_representation(s, n));
    out
}

fn grow_independent(pos: usize, mask: u64, n: usize, nbr: &[u64], out: &mut Vec<u64>) {
    if pos == n {
        out.push(mask);
        return;
    }
    grow_independent(pos + 1, mask, n, nbr, out);
    if nbr[pos] & mask == 0 {
        grow_independent(pos + 1, mask | 1 << pos, n, nbr, out);
    }
}

/// Members not strictly contained in another member.
pub fn maximal_resonant_sets(all: &[ResonantSet]) -> Vec<ResonantSet> {
    all.iter()
        .filter(|s| !all.iter().any(|t| t.hexagons.len() > s.hexagons.len() && s.is_subset_of(t)))
        .cloned()
        .collect()
}

fn require_kinky(b: &Benzenoid, force: bool) -> Result<()> {
    if !force && !is_kinky(b)? {
        return Err(Error::NotKinky);
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma1Witness {
    /// `b(S)` of the offending maximal resonant set.
    pub set: BitString,
    /// 1-based position of the undominated hexagon.
    pub hexagon: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma1Outcome {
    pub holds: bool,
    pub witness: Option<Lemma1Witness>,
}

/// Every maximal resonant set meets the closed inner-dual neighbourhood of
/// every hexagon. Fails with [`Error::NotKinky`] unless `force` is set.
pub fn check_lemma1(b: &Benzenoid, ord: &HexOrdering, maximal_sets: &[ResonantSet], force: bool) -> Result<Lemma1Outcome> {
    require_kinky(b, force)?;
    let nbr = position_neighbors(b, ord);
    for s in maximal_sets {
        let mask = s.mask();
        for (p, &ns) in nbr.iter().enumerate() {
            if (ns | 1 << p) & mask == 0 {
                return Ok(Lemma1Outcome {
                    holds: false,
                    witness: Some(Lemma1Witness { set: binary_representation(s, ord.len()), hexagon: p + 1 }),
                });
            }
        }
    }
    Ok(Lemma1Outcome { holds: true, witness: None })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma23Outcome {
    pub holds: bool,
    /// `{b(S) : S maximal resonant}`.
    pub set_side: Vec<BitString>,
    /// Maximal elements of the label poset.
    pub label_side: Vec<BitString>,
    /// Smallest label in the symmetric difference.
    pub witness: Option<BitString>,
}

/// The binary representations of maximal resonant sets are exactly the
/// maximal labels. Fails with [`Error::NotKinky`] unless `force` is set.
pub fn check_lemma2_lemma3(
    b: &Benzenoid,
    ord: &HexOrdering,
    table: &MatchingTable,
    maximal_sets: &[ResonantSet],
    force: bool,
) -> Result<Lemma23Outcome> {
    require_kinky(b, force)?;
    let set_side: BTreeSet<BitString> = maximal_sets.iter().map(|s| binary_representation(s, ord.len())).collect();
    let label_side = maximal_elements(&table.labels);
    let witness = set_side.symmetric_difference(&label_side).min().copied();
    Ok(Lemma23Outcome {
        holds: witness.is_none(),
        set_side: set_side.into_iter().collect(),
        label_side: label_side.into_iter().collect(),
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorCertificate {
    pub generator: Label,
    /// Maximal resonant set with `b(S)` equal to the generator, as 1-based positions.
    pub resonant_set: Option<Vec<usize>>,
    pub interval_is_cube: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremCertificate {
    pub holds: bool,
    pub is_daisy: bool,
    pub labels_generated_by_maxima: bool,
    pub generators: Vec<GeneratorCertificate>,
    pub daisy_witness: Option<DaisyWitness>,
    pub witness: Option<BitString>,
}

/// The resonance graph, named by its labels, is the daisy cube generated by
/// the maximal labels, and each maximal label spans a cube down to `0^n`.
/// Fails with [`Error::NotKinky`] unless `force` is set.
pub fn check_theorem(b: &Benzenoid, ord: &HexOrdering, rg: &ResonanceGraph, force: bool) -> Result<TheoremCertificate> {
    require_kinky(b, force)?;
    inner_dual(b)?;
    let n = ord.len();
    let g = match rg.labeled_graph() {
        Ok(g) => g,
        Err(Error::DuplicateLabel(_)) => {
            return Ok(TheoremCertificate {
                holds: false,
                is_daisy: false,
                labels_generated_by_maxima: false,
                generators: Vec::new(),
                daisy_witness: None,
                witness: rg.table.duplicate_label(),
            })
        }
        Err(e) => return Err(e),
    };
    let verdict = is_daisy_cube(&g);

    let labels = rg.table.label_set();
    let maxima = maximal_elements(&labels);
    let closure = downward_closure(&maxima);
    let generated = closure == labels;

    let resonant = enumerate_resonant_sets(b, ord, &rg.table);
    let maximal_sets = maximal_resonant_sets(&resonant);
    let zero_present = labels.contains(&BitString::zeros(n));

    let mut generators = Vec::new();
    for &x in &maxima {
        let resonant_set = maximal_sets
            .iter()
            .find(|s| binary_representation(s, n) == x)
            .map(|s| s.hexagons.iter().map(|p| p + 1).collect());
        let interval_is_cube = zero_present && interval_is_kcube(&g, x)?;
        generators.push(GeneratorCertificate { generator: x, resonant_set, interval_is_cube });
    }

    let all_cubes = generators.iter().all(|c| c.interval_is_cube);
    let holds = verdict.is_daisy && generated && all_cubes;
    let witness = if holds {
        None
    } else if let Some(w) = &verdict.witness {
        Some(w.label())
    } else if let Some(&l) = closure.symmetric_difference(&labels).next() {
        Some(l)
    } else {
        generators.iter().find(|c| !c.interval_is_cube).map(|c| c.generator)
    };
    Ok(TheoremCertificate {
        holds,
        is_daisy: verdict.is_daisy,
        labels_generated_by_maxima: generated,
        generators,
        daisy_witness: verdict.witness,
        witness,
    })
}

//! Resonance graph and digraph over all perfect matchings, the label poset
//! and its Hasse diagram.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::cubes::LabeledGraph;
use crate::error::{Error, Result};
use crate::hexgrid::Benzenoid;
use crate::matching::{enumerate_matchings, label_matching, Label, Matching};
use crate::structure::HexOrdering;

/// All perfect matchings with their labels, in matching order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingTable {
    pub matchings: Vec<Matching>,
    pub labels: Vec<Label>,
}

impl MatchingTable {
    pub fn build(b: &Benzenoid, ord: &HexOrdering) -> Result<Self> {
        let matchings = enumerate_matchings(b);
        let labels = matchings
            .iter()
            .map(|m| label_matching(b, ord, m))
            .collect::<Result<Vec<_>>>()?;
        Ok(MatchingTable { matchings, labels })
    }

    pub fn len(&self) -> usize {
        self.matchings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matchings.is_empty()
    }

    pub fn label_set(&self) -> BTreeSet<Label> {
        self.labels.iter().copied().collect()
    }

    /// A label carried by two different matchings, if any.
    pub fn duplicate_label(&self) -> Option<Label> {
        let mut seen = BTreeSet::new();
        self.labels.iter().copied().find(|&l| !seen.insert(l))
    }

    pub fn index_of_label(&self, l: Label) -> Option<usize> {
        self.labels.iter().position(|&x| x == l)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct ResonanceEdge {
    /// Matching indices, `a < b`.
    pub a: usize,
    pub b: usize,
    /// Hexagon index whose six edges form the symmetric difference.
    pub hex: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResonanceGraph {
    pub table: MatchingTable,
    pub edges: Vec<ResonanceEdge>,
    /// `(from, to)` matching indices; empty until [`build_digraph`] runs.
    pub arcs: Vec<(usize, usize)>,
    /// Edges whose labels do not differ in exactly one position.
    pub unoriented: Vec<ResonanceEdge>,
    /// Label position of every hexagon index.
    positions: Vec<usize>,
}

/// Joins two matchings iff their symmetric difference is exactly the edge
/// set of one hexagon.
pub fn build_resonance_graph(b: &Benzenoid, ord: &HexOrdering) -> Result<ResonanceGraph> {
    let table = MatchingTable::build(b, ord)?;
    if table.is_empty() {
        return Err(Error::NoPerfectMatching);
    }

    // edge id -> hexagons containing it
    let mut owners: Vec<Vec<usize>> = vec![Vec::new(); b.edge_count()];
    for h in 0..b.hex_count() {
        for &e in b.hex_cycle(h) {
            owners[e].push(h);
        }
    }

    let ms = &table.matchings;
    let mut edges = Vec::new();
    for i in 0..ms.len() {
        for j in i + 1..ms.len() {
            let diff = ms[i].edges.symmetric_difference(&ms[j].edges);
            if diff.count() != 6 {
                continue;
            }
            let first = diff.ids().next().expect("nonempty difference");
            let hex = owners[first]
                .iter()
                .copied()
                .find(|&h| b.hex_cycle(h).iter().all(|&e| diff.contains(e)));
            if let Some(hex) = hex {
                edges.push(ResonanceEdge { a: i, b: j, hex });
            }
        }
    }

    let positions = (0..b.hex_count()).map(|h| ord.position_of(h)).collect();
    Ok(ResonanceGraph { table, edges, arcs: Vec::new(), unoriented: Vec::new(), positions })
}

/// Orients every edge from the label with a 0 to the label with a 1 at the
/// single differing position.
pub fn build_digraph(mut rg: ResonanceGraph) -> ResonanceGraph {
    rg.arcs.clear();
    rg.unoriented.clear();
    for &e in &rg.edges {
        let (la, lb) = (rg.table.labels[e.a], rg.table.labels[e.b]);
        if la.hamming(lb) != 1 {
            rg.unoriented.push(e);
        } else if la.le(lb) {
            rg.arcs.push((e.a, e.b));
        } else {
            rg.arcs.push((e.b, e.a));
        }
    }
    rg.arcs.sort_by_key(|&(f, t)| (rg.table.labels[f], rg.table.labels[t]));
    rg
}

impl ResonanceGraph {
    pub fn vertex_count(&self) -> usize {
        self.table.len()
    }

    pub fn label_len(&self) -> usize {
        self.positions.len()
    }

    /// 0-based label position of the hexagon annotating `e`.
    pub fn edge_position(&self, e: &ResonanceEdge) -> usize {
        self.positions[e.hex]
    }

    pub fn edge_labels(&self) -> Vec<(Label, Label)> {
        self.edges
            .iter()
            .map(|e| (self.table.labels[e.a], self.table.labels[e.b]))
            .collect()
    }

    pub fn arc_labels(&self) -> BTreeSet<(Label, Label)> {
        self.arcs
            .iter()
            .map(|&(f, t)| (self.table.labels[f], self.table.labels[t]))
            .collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count()];
        for e in &self.edges {
            deg[e.a] += 1;
            deg[e.b] += 1;
        }
        deg
    }

    /// The graph with each matching replaced by its label. Fails when two
    /// matchings share a label.
    pub fn labeled_graph(&self) -> Result<LabeledGraph> {
        if let Some(dup) = self.table.duplicate_label() {
            return Err(Error::DuplicateLabel(dup.to_string()));
        }
        LabeledGraph::new(self.table.labels.iter().copied(), self.edge_labels())
    }

    /// True iff the arcs contain no directed cycle.
    pub fn is_acyclic(&self) -> bool {
        let n = self.vertex_count();
        let mut indeg = vec![0; n];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(f, t) in &self.arcs {
            indeg[t] += 1;
            out[f].push(t);
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = ready.pop() {
            seen += 1;
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.push(w);
                }
            }
        }
        seen == n
    }
}

/// Cover relation of the componentwise order restricted to `labels`.
pub fn hasse_diagram<'a, I>(labels: I) -> BTreeSet<(Label, Label)>
where
    I: IntoIterator<Item = &'a Label>,
{
    let all: Vec<Label> = labels.into_iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let mut out = BTreeSet::new();
    for &u in &all {
        for &v in &all {
            if u.lt(v) && !all.iter().any(|&w| u.lt(w) && w.lt(v)) {
                out.insert((u, v));
            }
        }
    }
    out
}

/// True iff the digraph's arcs, read as label pairs, are exactly the Hasse
/// diagram of the label poset.
pub fn hasse_equals_digraph(rg: &ResonanceGraph) -> bool {
    rg.unoriented.is_empty()
        && rg.arcs.len() == rg.edges.len()
        && rg.arc_labels() == hasse_diagram(&rg.table.labels)
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphEdgeJson {
    pub u: Label,
    pub v: Label,
    /// 1-based position of the hexagon in the ordering.
    pub hexagon: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ArcJson {
    pub from: Label,
    pub to: Label,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResonanceJson {
    pub schema_version: u32,
    pub hexagons: usize,
    pub labels: Vec<Label>,
    pub matchings: BTreeMap<Label, Vec<(usize, usize)>>,
    pub edges: Vec<GraphEdgeJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arcs: Option<Vec<ArcJson>>,
}

pub const RESONANCE_SCHEMA_VERSION: u32 = 1;

/// Serializable view. Labels and edges are sorted by label.
pub fn to_json(b: &Benzenoid, rg: &ResonanceGraph, digraph: bool) -> ResonanceJson {
    let labels: Vec<Label> = rg.table.label_set().into_iter().collect();
    let matchings = rg
        .table
        .labels
        .iter()
        .zip(&rg.table.matchings)
        .map(|(&l, m)| (l, m.endpoint_pairs(b)))
        .collect();
    let mut edges: Vec<GraphEdgeJson> = rg
        .edges
        .iter()
        .map(|e| {
            let (x, y) = (rg.table.labels[e.a], rg.table.labels[e.b]);
            GraphEdgeJson { u: x.min(y), v: x.max(y), hexagon: rg.edge_position(e) + 1 }
        })
        .collect();
    edges.sort_by_key(|e| (e.u, e.v));
    let arcs = digraph.then(|| {
        rg.arc_labels().into_iter().map(|(from, to)| ArcJson { from, to }).collect()
    });
    ResonanceJson {
        schema_version: RESONANCE_SCHEMA_VERSION,
        hexagons: rg.label_len(),
        labels,
        matchings,
        edges,
        arcs,
    }
}

/// Graphviz rendering; vertices are named by their labels and edges carry
/// the 1-based hexagon position.
pub fn to_dot(rg: &ResonanceGraph, digraph: bool) -> String {
    let (kind, sep) = if digraph { ("digraph", "->") } else { ("graph", "--") };
    let mut s = String::new();
    writeln!(s, "{kind} resonance {{").unwrap();
    for l in rg.table.label_set() {
        writeln!(s, "  \"{l}\";").unwrap();
    }
    let mut lines: Vec<(Label, Label, usize)> = if digraph {
        rg.arcs
            .iter()
            .map(|&(f, t)| {
                let (lf, lt) = (rg.table.labels[f], rg.table.labels[t]);
                let pos = (0..lf.len()).find(|&i| lf.get(i) != lt.get(i)).unwrap_or(0);
                (lf, lt, pos + 1)
            })
            .collect()
    } else {
        rg.edges
            .iter()
            .map(|e| {
                let (x, y) = (rg.table.labels[e.a], rg.table.labels[e.b]);
                (x.min(y), x.max(y), rg.edge_position(e) + 1)
            })
            .collect()
    };
    lines.sort();
    for (a, b, h) in lines {
        writeln!(s, "  \"{a}\" {sep} \"{b}\" [label=\"{h}\"];").unwrap();
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubes::BitString;
    use crate::hexgrid::{build_benzenoid, HexAddr};
    use crate::structure::{inner_dual, order_hexagons, Traversal};

    fn rg(v: &[(i32, i32)]) -> (Benzenoid, ResonanceGraph) {
        let b = build_benzenoid(v.iter().map(|&p| HexAddr::from(p))).unwrap();
        let t = inner_dual(&b).unwrap();
        let ord = order_hexagons(&t, Traversal::Dfs, None).unwrap();
        let g = build_digraph(build_resonance_graph(&b, &ord).unwrap());
        (b, g)
    }

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn pairs(v: &[(&str, &str)]) -> BTreeSet<(Label, Label)> {
        v.iter().map(|&(a, b)| (bs(a), bs(b))).collect()
    }

    fn undirected(g: &ResonanceGraph) -> BTreeSet<(Label, Label)> {
        g.edge_labels().into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect()
    }

    #[test]
    fn benzene_is_k2() {
        let (_, g) = rg(&[(0, 0)]);
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edges.len(), 1);
        assert_eq!(g.edges[0].hex, 0);
        assert_eq!(g.arc_labels(), pairs(&[("0", "1")]));
    }

    #[test]
    fn naphthalene_path() {
        let (_, g) = rg(&[(0, 0), (1, 0)]);
        assert_eq!(undirected(&g), pairs(&[("00", "10"), ("00", "01")]));
        assert_eq!(g.arc_labels(), pairs(&[("00", "10"), ("00", "01")]));
        assert!(hasse_equals_digraph(&g));
    }

    #[test]
    fn anthracene_path() {
        let (_, g) = rg(&[(0, 0), (1, 0), (2, 0)]);
        assert_eq!(undirected(&g), pairs(&[("000", "100"), ("000", "010"), ("010", "011")]));
        assert_eq!(g.arc_labels(), pairs(&[("000", "100"), ("000", "010"), ("010", "011")]));
        assert!(hasse_equals_digraph(&g));
        assert!(g.is_acyclic());
    }

    #[test]
    fn phenanthrene_hasse() {
        let (_, g) = rg(&[(0, 0), (1, 0), (1, 1)]);
        assert!(hasse_equals_digraph(&g));
        assert_eq!(g.edges.len(), 5);
    }

    #[test]
    fn hasse_examples() {
        let l = |v: &[&str]| v.iter().map(|s| bs(s)).collect::<Vec<_>>();
        assert_eq!(hasse_diagram(&l(&["00", "10", "01"])), pairs(&[("00", "10"), ("00", "01")]));
        assert_eq!(
            hasse_diagram(&l(&["000", "100", "010", "011"])),
            pairs(&[("000", "100"), ("000", "010"), ("010", "011")])
        );
        assert_eq!(hasse_diagram(&l(&["0", "1"])), pairs(&[("0", "1")]));
        // covers need not be Hamming neighbours
        assert_eq!(hasse_diagram(&l(&["00", "11"])), pairs(&[("00", "11")]));
    }

    #[test]
    fn every_edge_is_a_hexagon_flip() {
        let (b, g) = rg(&[(0, 0), (1, 0), (1, 1), (2, 1)]);
        for e in &g.edges {
            let diff = g.table.matchings[e.a].edges.symmetric_difference(&g.table.matchings[e.b].edges);
            let mut ids: Vec<usize> = diff.ids().collect();
            let mut cycle = b.hex_cycle(e.hex).to_vec();
            ids.sort();
            cycle.sort();
            assert_eq!(ids, cycle);
            assert_eq!(g.table.labels[e.a].hamming(g.table.labels[e.b]), 1);
        }
    }

    #[test]
    fn dot_output() {
        let (_, g) = rg(&[(0, 0), (1, 0)]);
        let dot = to_dot(&g, false);
        assert!(dot.starts_with("graph resonance {"));
        for name in ["\"10\"", "\"00\"", "\"01\""] {
            assert!(dot.contains(&format!("  {name};")));
        }
        assert_eq!(dot.matches(" -- ").count(), 2);
        let di = to_dot(&g, true);
        assert!(di.starts_with("digraph"));
        assert_eq!(di.matches(" -> ").count(), 2);
    }

    #[test]
    fn json_arcs() {
        let (b, g) = rg(&[(0, 0), (1, 0), (2, 0)]);
        let j = serde_json::to_value(to_json(&b, &g, true)).unwrap();
        let arcs = j["arcs"].as_array().unwrap();
        assert_eq!(arcs.len(), 3);
        assert_eq!(j["labels"], serde_json::json!(["000", "010", "011", "100"]));
        let plain = serde_json::to_value(to_json(&b, &g, false)).unwrap();
        assert!(plain.get("arcs").is_none());
    }
}

//! Hypercube machinery: bit strings under the componentwise order,
//! downward closures, daisy cubes and intervals in label-annotated graphs.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Longest supported string; labels pack into one machine word.
pub const MAX_BITS: usize = 63;

/// A word `u_1 .. u_n` over `{0, 1}`. Position `i` (0-based) is bit `i` of
/// the packed word and is printed `i`-th from the left.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitString {
    bits: u64,
    len: u8,
}

impl BitString {
    pub fn zeros(len: usize) -> Self {
        assert!(len <= MAX_BITS, "bit string longer than {MAX_BITS}");
        BitString { bits: 0, len: len as u8 }
    }

    pub fn ones(len: usize) -> Self {
        Self::from_bits(len, (1u64 << len) - 1)
    }

    /// Packs the low `len` bits of `bits`.
    pub fn from_bits(len: usize, bits: u64) -> Self {
        assert!(len <= MAX_BITS, "bit string longer than {MAX_BITS}");
        BitString { bits: bits & ((1u64 << len) - 1), len: len as u8 }
    }

    pub fn len(self) -> usize {
        self.len as usize
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn get(self, i: usize) -> bool {
        debug_assert!(i < self.len());
        self.bits >> i & 1 == 1
    }

    pub fn with(self, i: usize, value: bool) -> Self {
        debug_assert!(i < self.len());
        let bits = if value { self.bits | 1 << i } else { self.bits & !(1 << i) };
        BitString { bits, len: self.len }
    }

    pub fn flip(self, i: usize) -> Self {
        self.with(i, !self.get(i))
    }

    pub fn count_ones(self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Positions of the 1s, ascending.
    pub fn ones_positions(self) -> impl Iterator<Item = usize> {
        (0..self.len()).filter(move |&i| self.get(i))
    }

    pub fn hamming(self, other: BitString) -> usize {
        (self.bits ^ other.bits).count_ones() as usize
    }

    /// Componentwise `self <= other`.
    pub fn le(self, other: BitString) -> bool {
        self.len == other.len && self.bits & !other.bits == 0
    }

    pub fn lt(self, other: BitString) -> bool {
        self.le(other) && self != other
    }

    pub fn meet(self, other: BitString) -> BitString {
        BitString { bits: self.bits & other.bits, len: self.len }
    }

    /// Every `u <= self`, in ascending string order.
    pub fn down_set(self) -> Vec<BitString> {
        let mut out = Vec::with_capacity(1 << self.count_ones());
        let mut sub = self.bits;
        loop {
            out.push(BitString { bits: sub, len: self.len });
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & self.bits;
        }
        out.sort();
        out
    }

    // bits reversed so that integer order equals string order
    fn string_key(self) -> u64 {
        if self.len == 0 {
            0
        } else {
            self.bits.reverse_bits() >> (64 - self.len as u32)
        }
    }
}

impl Ord for BitString {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.len, self.string_key()).cmp(&(other.len, other.string_key()))
    }
}

impl PartialOrd for BitString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.len() > MAX_BITS {
            return Err(Error::TooManyHexagons(s.len()));
        }
        let mut bits = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => {
                    return Err(Error::Parse { line: 1, msg: format!("invalid bit {c:?} in {s:?}") })
                }
            }
        }
        Ok(BitString { bits, len: s.len() as u8 })
    }
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses one bit string per line; blank lines and `#` comments are skipped.
pub fn parse_labels(text: &str) -> Result<Vec<BitString>> {
    let mut out: Vec<BitString> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let label: BitString = body.parse().map_err(|e| match e {
            Error::Parse { msg, .. } => Error::Parse { line: n + 1, msg },
            other => other,
        })?;
        if let Some(first) = out.first() {
            if first.len() != label.len() {
                return Err(Error::Parse {
                    line: n + 1,
                    msg: format!("length {} differs from {}", label.len(), first.len()),
                });
            }
        }
        out.push(label);
    }
    Ok(out)
}

fn uniform_len<'a, I: IntoIterator<Item = &'a BitString>>(it: I) -> Result<Option<usize>> {
    let mut len = None;
    for s in it {
        match len {
            None => len = Some(s.len()),
            Some(l) if l != s.len() => return Err(Error::LengthMismatch(l, s.len())),
            _ => {}
        }
    }
    Ok(len)
}

/// `{u : u <= x for some x in X}`.
pub fn downward_closure<'a, I>(x_set: I) -> BTreeSet<BitString>
where
    I: IntoIterator<Item = &'a BitString>,
{
    let mut out = BTreeSet::new();
    let mut stack: Vec<BitString> = x_set.into_iter().copied().collect();
    while let Some(u) = stack.pop() {
        if out.insert(u) {
            stack.extend(u.ones_positions().map(|i| u.with(i, false)));
        }
    }
    out
}

/// Members with no strictly greater member.
pub fn maximal_elements<'a, I>(labels: I) -> BTreeSet<BitString>
where
    I: IntoIterator<Item = &'a BitString>,
{
    let all: BTreeSet<BitString> = labels.into_iter().copied().collect();
    all.iter()
        .filter(|&&u| !all.iter().any(|&v| u.lt(v)))
        .copied()
        .collect()
}

/// A graph whose vertices are named by pairwise distinct bit strings of
/// one common length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    vertices: Vec<BitString>,
    index: HashMap<BitString, usize>,
    adjacency: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl LabeledGraph {
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = BitString>,
        E: IntoIterator<Item = (BitString, BitString)>,
    {
        let set: BTreeSet<BitString> = vertices.into_iter().collect();
        uniform_len(&set)?;
        let vertices: Vec<BitString> = set.into_iter().collect();
        let index: HashMap<BitString, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut edge_set = BTreeSet::new();
        for (a, b) in edges {
            let ia = *index.get(&a).ok_or_else(|| Error::VertexNotPresent(a.to_string()))?;
            let ib = *index.get(&b).ok_or_else(|| Error::VertexNotPresent(b.to_string()))?;
            if ia != ib {
                edge_set.insert((ia.min(ib), ia.max(ib)));
            }
        }
        let edges: Vec<(usize, usize)> = edge_set.into_iter().collect();
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for &(a, b) in &edges {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        Ok(LabeledGraph { vertices, index, adjacency, edges })
    }

    /// Induced subgraph of the hypercube on `vertices`.
    pub fn induced(vertices: impl IntoIterator<Item = BitString>) -> Result<Self> {
        let set: BTreeSet<BitString> = vertices.into_iter().collect();
        let edges: Vec<(BitString, BitString)> = set
            .iter()
            .flat_map(|&u| {
                let set = &set;
                u.ones_positions()
                    .map(move |i| (u.with(i, false), u))
                    .filter(move |(d, _)| set.contains(d))
            })
            .collect();
        Self::new(set.iter().copied(), edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Vertices in ascending string order.
    pub fn vertices(&self) -> &[BitString] {
        &self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_labels(&self) -> Vec<(BitString, BitString)> {
        self.edges.iter().map(|&(a, b)| (self.vertices[a], self.vertices[b])).collect()
    }

    pub fn contains(&self, u: BitString) -> bool {
        self.index.contains_key(&u)
    }

    pub fn has_edge(&self, u: BitString, v: BitString) -> bool {
        match (self.index.get(&u), self.index.get(&v)) {
            (Some(&a), Some(&b)) => self.adjacency[a].contains(&b),
            _ => false,
        }
    }

    pub fn label_len(&self) -> Option<usize> {
        self.vertices.first().map(|v| v.len())
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    fn index_of(&self, u: BitString) -> Result<usize> {
        self.index.get(&u).copied().ok_or_else(|| Error::VertexNotPresent(u.to_string()))
    }

    /// BFS distances from vertex index `src`; `None` for unreachable vertices.
    pub fn bfs(&self, src: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.vertices.len()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for &w in &self.adjacency[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: BitString, v: BitString) -> Result<Option<u32>> {
        let a = self.index_of(u)?;
        let b = self.index_of(v)?;
        Ok(self.bfs(a)[b])
    }

    /// All-pairs distance matrix indexed like [`LabeledGraph::vertices`].
    pub fn distance_matrix(&self) -> Vec<Vec<Option<u32>>> {
        (0..self.vertices.len()).into_par_iter().map(|s| self.bfs(s)).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.vertices.is_empty() || self.bfs(0).iter().all(Option::is_some)
    }
}

/// `Q_n(X)`: the hypercube induced on the downward closure of `X`.
pub fn build_daisy_cube<'a, I>(x_set: I) -> Result<LabeledGraph>
where
    I: IntoIterator<Item = &'a BitString>,
{
    let xs: Vec<BitString> = x_set.into_iter().copied().collect();
    uniform_len(&xs)?;
    LabeledGraph::induced(downward_closure(&xs))
}

/// Why a labelled graph is not a daisy cube.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DaisyWitness {
    /// `missing <= present`, but `missing` is not a vertex.
    MissingSubLabel { present: BitString, missing: BitString },
    /// An edge whose endpoints are not at Hamming distance 1.
    UnexpectedEdge { u: BitString, v: BitString },
    /// Two vertices at Hamming distance 1 that are not adjacent.
    MissingEdge { u: BitString, v: BitString },
}

impl DaisyWitness {
    /// The single label that best identifies the violation.
    pub fn label(&self) -> BitString {
        match *self {
            DaisyWitness::MissingSubLabel { missing, .. } => missing,
            DaisyWitness::UnexpectedEdge { u, .. } | DaisyWitness::MissingEdge { u, .. } => u,
        }
    }
}

impl fmt::Display for DaisyWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DaisyWitness::MissingSubLabel { present, missing } => {
                write!(f, "{missing} <= {present} is absent")
            }
            DaisyWitness::UnexpectedEdge { u, v } => write!(f, "edge {u}-{v} is not a cube edge"),
            DaisyWitness::MissingEdge { u, v } => write!(f, "cube edge {u}-{v} is absent"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DaisyVerdict {
    pub is_daisy: bool,
    /// Maximal elements of the vertex set.
    pub generators: Vec<BitString>,
    pub witness: Option<DaisyWitness>,
}

/// Decides whether `g` equals `Q_n(V(g))`: its labels must be downward
/// closed and its edges exactly the Hamming-distance-1 pairs.
pub fn is_daisy_cube(g: &LabeledGraph) -> DaisyVerdict {
    let generators: Vec<BitString> = maximal_elements(g.vertices()).into_iter().collect();
    let fail = |w| DaisyVerdict { is_daisy: false, generators: generators.clone(), witness: Some(w) };

    for &u in g.vertices() {
        for i in u.ones_positions() {
            let d = u.with(i, false);
            if !g.contains(d) {
                return fail(DaisyWitness::MissingSubLabel { present: u, missing: d });
            }
        }
    }
    for (u, v) in g.edge_labels() {
        if u.hamming(v) != 1 {
            return fail(DaisyWitness::UnexpectedEdge { u, v });
        }
    }
    for &u in g.vertices() {
        for i in u.ones_positions() {
            let d = u.with(i, false);
            if !g.has_edge(d, u) {
                return fail(DaisyWitness::MissingEdge { u: d, v: u });
            }
        }
    }
    DaisyVerdict { is_daisy: true, generators, witness: None }
}

/// `I(u, v)`: vertices on shortest `u,v`-paths.
pub fn interval(g: &LabeledGraph, u: BitString, v: BitString) -> Result<BTreeSet<BitString>> {
    let a = g.index_of(u)?;
    let b = g.index_of(v)?;
    let from_u = g.bfs(a);
    let from_v = g.bfs(b);
    let Some(total) = from_u[b] else {
        return Ok(BTreeSet::new());
    };
    Ok(g.vertices()
        .iter()
        .enumerate()
        .filter(|&(w, _)| matches!((from_u[w], from_v[w]), (Some(x), Some(y)) if x + y == total))
        .map(|(_, &l)| l)
        .collect())
}

/// True iff `I(x, 0^n)` induces a `k`-cube on exactly the labels below `x`,
/// where `k` is the number of 1s in `x`.
pub fn interval_is_kcube(g: &LabeledGraph, x: BitString) -> Result<bool> {
    let zero = BitString::zeros(x.len());
    let members = interval(g, x, zero)?;
    let k = x.count_ones();
    if members.len() != 1 << k {
        return Ok(false);
    }
    let below: BTreeSet<BitString> = x.down_set().into_iter().collect();
    if members != below {
        return Ok(false);
    }
    let mut induced = 0;
    for (u, v) in g.edge_labels() {
        if members.contains(&u) && members.contains(&v) {
            if u.hamming(v) != 1 {
                return Ok(false);
            }
            induced += 1;
        }
    }
    // every hypercube edge must be present
    Ok(induced == k * (1usize << k) / 2)
}

/// Pairs whose graph distance differs from the Hamming distance of their
/// labels, as `(u, v, graph distance, hamming)`.
pub fn isometry_violations(g: &LabeledGraph) -> Vec<(BitString, BitString, Option<u32>, usize)> {
    let dist = g.distance_matrix();
    let vs = g.vertices();
    let mut out = Vec::new();
    for a in 0..vs.len() {
        for b in a + 1..vs.len() {
            let h = vs[a].hamming(vs[b]);
            if dist[a][b] != Some(h as u32) {
                out.push((vs[a], vs[b], dist[a][b], h));
            }
        }
    }
    out
}

/// Checks that every vertex triple has exactly one median. Returns the
/// first offending triple, if any.
pub fn median_violation(g: &LabeledGraph) -> Option<(BitString, BitString, BitString)> {
    let dist = g.distance_matrix();
    let n = g.vertex_count();
    let d = |a: usize, b: usize| dist[a][b].map(i64::from).unwrap_or(i64::MAX / 4);
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let medians = (0..n)
                    .filter(|&m| {
                        d(a, m) + d(m, b) == d(a, b)
                            && d(b, m) + d(m, c) == d(b, c)
                            && d(a, m) + d(m, c) == d(a, c)
                    })
                    .count();
                if medians != 1 {
                    let v = g.vertices();
                    return Some((v[a], v[b], v[c]));
                }
            }
        }
    }
    None
}

/// Groups bit strings by their maximal generator cover: for each `x` in
/// `X̂`, the labels below it.
pub fn generator_cover(generators: &[BitString]) -> BTreeMap<BitString, Vec<BitString>> {
    generators.iter().map(|&x| (x, x.down_set())).collect()
}

//! Hexagonal-lattice geometry and the molecular graph of a benzenoid system.
//!
//! Hexagons are addressed by axial coordinates `(q, r)`. Corners live on a
//! finer triangular lattice in which hexagon centres form an index-3
//! sublattice, so corner sharing between hexagons is exact integer
//! arithmetic.
//!
//! Corner `i` of a hexagon sits at angle `60° * i`; cycle position `i` is the
//! edge between corners `i` and `i + 1`. The neighbour in direction `d`
//! shares exactly the edge at position `d`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Axial hexagon address.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(i32, i32)", into = "(i32, i32)")]
pub struct HexAddr {
    pub q: i32,
    pub r: i32,
}

impl HexAddr {
    pub const fn new(q: i32, r: i32) -> Self {
        HexAddr { q, r }
    }

    pub fn neighbor(self, dir: usize) -> HexAddr {
        let (dq, dr) = DIRECTIONS[dir % 6];
        HexAddr::new(self.q + dq, self.r + dr)
    }

    /// Direction index `d` with `self.neighbor(d) == other`, if the two are adjacent.
    pub fn direction_to(self, other: HexAddr) -> Option<usize> {
        let delta = (other.q - self.q, other.r - self.r);
        DIRECTIONS.iter().position(|&d| d == delta)
    }

    /// Lattice distance in hexagon steps.
    pub fn distance(self, other: HexAddr) -> i32 {
        let dq = other.q - self.q;
        let dr = other.r - self.r;
        (dq.abs() + dr.abs() + (dq + dr).abs()) / 2
    }

    /// Rotation by 60° about the origin, `k` times.
    pub fn rotate(self, k: usize) -> HexAddr {
        let mut h = self;
        for _ in 0..k % 6 {
            h = HexAddr::new(-h.r, h.q + h.r);
        }
        h
    }

    /// Mirror image across the line `q = r`.
    pub fn reflect(self) -> HexAddr {
        HexAddr::new(self.r, self.q)
    }

    /// One of the 12 point symmetries of the lattice: rotations `0..6`,
    /// followed by the reflection for `6..12`.
    pub fn symmetry(self, g: usize) -> HexAddr {
        if g < 6 {
            self.rotate(g)
        } else {
            self.reflect().rotate(g - 6)
        }
    }

    fn center(self) -> (i32, i32) {
        (2 * self.q + self.r, self.r - self.q)
    }

    fn corner(self, i: usize) -> (i32, i32) {
        let (x, y) = self.center();
        let (ux, uy) = CORNER_OFFSETS[i];
        (x + ux, y + uy)
    }
}

impl From<(i32, i32)> for HexAddr {
    fn from((q, r): (i32, i32)) -> Self {
        HexAddr::new(q, r)
    }
}

impl From<HexAddr> for (i32, i32) {
    fn from(h: HexAddr) -> Self {
        (h.q, h.r)
    }
}

impl fmt::Display for HexAddr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.q, self.r)
    }
}

/// Axial offsets of the six neighbours; entry `d` shares cycle position `d`.
pub const DIRECTIONS: [(i32, i32); 6] = [(0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1), (1, 0)];

// Unit vectors of the fine triangular lattice, counter-clockwise from 0°.
const CORNER_OFFSETS: [(i32, i32); 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];

/// Canonical name of a corner: the lexicographically smallest `(q, r, i)`
/// among the system's hexagons containing it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CornerId {
    pub hex: HexAddr,
    pub corner: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HexClass {
    Terminal,
    Kink,
    Linear,
    Branched,
}

impl fmt::Display for HexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            HexClass::Terminal => "terminal",
            HexClass::Kink => "kink",
            HexClass::Linear => "linear",
            HexClass::Branched => "branched",
        };
        f.write_str(s)
    }
}

/// A validated benzenoid system together with its vertex-edge graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Benzenoid {
    hexes: Vec<HexAddr>,
    index: BTreeMap<HexAddr, usize>,
    vertices: Vec<CornerId>,
    edges: Vec<(usize, usize)>,
    hex_corners: Vec<[usize; 6]>,
    hex_cycles: Vec<[usize; 6]>,
    vertex_hex_count: Vec<u8>,
    incidence: Vec<Vec<(usize, usize)>>,
}

/// Builds the molecular graph of the system occupying `hexes`.
///
/// Duplicate addresses are ignored. Fails when the hexagons are not
/// edge-connected, when two hexagons touch only in a vertex, or when the
/// hexagons enclose a hole.
pub fn build_benzenoid<I>(hexes: I) -> Result<Benzenoid>
where
    I: IntoIterator<Item = HexAddr>,
{
    let hexes: Vec<HexAddr> = hexes.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    if hexes.is_empty() {
        return Err(Error::EmptyInstance);
    }
    let index: BTreeMap<HexAddr, usize> = hexes.iter().enumerate().map(|(i, &h)| (h, i)).collect();

    // point -> (canonical name, containing hexagon indices)
    let mut points: BTreeMap<(i32, i32), (CornerId, Vec<usize>)> = BTreeMap::new();
    for (hi, &h) in hexes.iter().enumerate() {
        for i in 0..6 {
            let id = CornerId { hex: h, corner: i as u8 };
            let entry = points.entry(h.corner(i)).or_insert((id, Vec::new()));
            entry.0 = entry.0.min(id);
            entry.1.push(hi);
        }
    }

    for (_, owners) in points.values() {
        for (k, &a) in owners.iter().enumerate() {
            for &b in &owners[k + 1..] {
                if hexes[a].direction_to(hexes[b]).is_none() {
                    return Err(Error::VertexOnlyContact(hexes[a], hexes[b]));
                }
            }
        }
    }

    if !hex_graph_connected(&hexes, &index) {
        return Err(Error::DisconnectedSystem);
    }

    let mut names: Vec<(CornerId, (i32, i32))> =
        points.iter().map(|(&p, (id, _))| (*id, p)).collect();
    names.sort();
    let vertex_of: BTreeMap<(i32, i32), usize> =
        names.iter().enumerate().map(|(v, &(_, p))| (p, v)).collect();
    let vertices: Vec<CornerId> = names.iter().map(|&(id, _)| id).collect();
    let mut vertex_hex_count = vec![0u8; vertices.len()];
    for (p, (_, owners)) in &points {
        vertex_hex_count[vertex_of[p]] = owners.len() as u8;
    }

    let hex_corners: Vec<[usize; 6]> = hexes
        .iter()
        .map(|&h| std::array::from_fn(|i| vertex_of[&h.corner(i)]))
        .collect();

    let mut edge_set = BTreeSet::new();
    for corners in &hex_corners {
        for i in 0..6 {
            let (a, b) = (corners[i], corners[(i + 1) % 6]);
            edge_set.insert((a.min(b), a.max(b)));
        }
    }
    let edges: Vec<(usize, usize)> = edge_set.into_iter().collect();
    let edge_of: BTreeMap<(usize, usize), usize> =
        edges.iter().enumerate().map(|(e, &p)| (p, e)).collect();
    let hex_cycles: Vec<[usize; 6]> = hex_corners
        .iter()
        .map(|c| {
            std::array::from_fn(|i| {
                let (a, b) = (c[i], c[(i + 1) % 6]);
                edge_of[&(a.min(b), a.max(b))]
            })
        })
        .collect();

    // Euler: V - E + F = 2 with F = hexagons + outer face + holes.
    let holes = edges.len() + 1 - vertices.len() - hexes.len();
    if holes > 0 {
        return Err(Error::NonHexagonalFace(holes));
    }

    let mut incidence = vec![Vec::new(); vertices.len()];
    for (e, &(a, b)) in edges.iter().enumerate() {
        incidence[a].push((b, e));
        incidence[b].push((a, e));
    }

    Ok(Benzenoid {
        hexes,
        index,
        vertices,
        edges,
        hex_corners,
        hex_cycles,
        vertex_hex_count,
        incidence,
    })
}

fn hex_graph_connected(hexes: &[HexAddr], index: &BTreeMap<HexAddr, usize>) -> bool {
    let mut seen = vec![false; hexes.len()];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(i) = queue.pop_front() {
        for d in 0..6 {
            if let Some(&j) = index.get(&hexes[i].neighbor(d)) {
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

impl Benzenoid {
    pub fn hex_count(&self) -> usize {
        self.hexes.len()
    }

    /// Hexagon addresses in ascending order; positions are hexagon indices.
    pub fn hexes(&self) -> &[HexAddr] {
        &self.hexes
    }

    pub fn hex(&self, index: usize) -> HexAddr {
        self.hexes[index]
    }

    pub fn index_of(&self, h: HexAddr) -> Result<usize> {
        self.index.get(&h).copied().ok_or(Error::UnknownHexagon(h))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[CornerId] {
        &self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edge endpoints indexed by edge id, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// The six edge ids of a hexagon in cyclic order.
    pub fn hex_cycle(&self, index: usize) -> &[usize; 6] {
        &self.hex_cycles[index]
    }

    /// The six vertex ids of a hexagon; corner `i` joins cycle positions `i - 1` and `i`.
    pub fn hex_corners(&self, index: usize) -> &[usize; 6] {
        &self.hex_corners[index]
    }

    pub fn vertex_hex_count(&self) -> &[u8] {
        &self.vertex_hex_count
    }

    /// `(neighbour vertex, edge id)` pairs incident to `v`.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn is_catacondensed(&self) -> bool {
        self.vertex_hex_count.iter().all(|&c| c <= 2)
    }

    pub fn hex_neighbors(&self, h: HexAddr) -> Result<BTreeSet<HexAddr>> {
        self.index_of(h)?;
        Ok((0..6)
            .map(|d| h.neighbor(d))
            .filter(|n| self.index.contains_key(n))
            .collect())
    }

    /// Neighbouring hexagon indices of hexagon `index`, with the cycle
    /// position of the shared edge.
    pub fn neighbor_indices(&self, index: usize) -> Vec<(usize, usize)> {
        let h = self.hexes[index];
        (0..6)
            .filter_map(|d| self.index.get(&h.neighbor(d)).map(|&j| (j, d)))
            .collect()
    }

    /// Cycle position (in hexagon `a`) of the edge shared with hexagon `b`.
    pub fn shared_position(&self, a: usize, b: usize) -> Result<usize> {
        self.hexes[a]
            .direction_to(self.hexes[b])
            .ok_or(Error::HexagonsNotAdjacent(a, b))
    }

    /// Classifies a hexagon of a catacondensed system by its attachment
    /// pattern. A two-neighbour hexagon is a kink iff its two degree-2
    /// vertices are adjacent.
    pub fn classify_hexagon(&self, h: HexAddr) -> Result<HexClass> {
        let i = self.index_of(h)?;
        Ok(self.classify_index(i))
    }

    pub(crate) fn classify_index(&self, i: usize) -> HexClass {
        match self.neighbor_indices(i).len() {
            0 | 1 => HexClass::Terminal,
            2 => {
                let corners = self.hex_corners[i];
                let free: Vec<usize> = (0..6).filter(|&k| self.degree(corners[k]) == 2).collect();
                match free.as_slice() {
                    &[a, b] if (b - a == 1) || (a == 0 && b == 5) => HexClass::Kink,
                    _ => HexClass::Linear,
                }
            }
            _ => HexClass::Branched,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hx(v: &[(i32, i32)]) -> Vec<HexAddr> {
        v.iter().map(|&p| p.into()).collect()
    }

    #[test]
    fn single_hexagon() {
        let b = build_benzenoid(hx(&[(0, 0)])).unwrap();
        assert_eq!((b.vertex_count(), b.edge_count(), b.hex_count()), (6, 6, 1));
        assert!(b.is_catacondensed());
        assert!(b.hex_neighbors(HexAddr::new(0, 0)).unwrap().is_empty());
        assert_eq!(b.classify_hexagon(HexAddr::new(0, 0)).unwrap(), HexClass::Terminal);
    }

    #[test]
    fn naphthalene_counts() {
        let b = build_benzenoid(hx(&[(0, 0), (1, 0)])).unwrap();
        assert_eq!((b.vertex_count(), b.edge_count()), (10, 11));
        // the shared edge appears in both cycles
        let shared: Vec<_> = b.hex_cycle(0).iter().filter(|e| b.hex_cycle(1).contains(e)).collect();
        assert_eq!(shared.len(), 1);
        assert_eq!(b.hex_cycle(0)[b.shared_position(0, 1).unwrap()], *shared[0]);
        assert_eq!(b.hex_cycle(1)[b.shared_position(1, 0).unwrap()], *shared[0]);
    }

    #[test]
    fn distance_two_is_disconnected() {
        // brute force on the corner lattice: no common corner at distance 2
        let (a, b) = (HexAddr::new(0, 0), HexAddr::new(2, 0));
        let common = (0..6)
            .filter(|&i| (0..6).any(|j| a.corner(i) == b.corner(j)))
            .count();
        assert_eq!(common, 0);
        assert_eq!(build_benzenoid([a, b]), Err(Error::DisconnectedSystem));
    }

    #[test]
    fn lattice_corner_sharing_matches_adjacency() {
        // two lattice hexagons share a corner iff they share an edge
        let o = HexAddr::new(0, 0);
        for q in -3..=3 {
            for r in -3..=3 {
                let h = HexAddr::new(q, r);
                if h == o {
                    continue;
                }
                let common = (0..6)
                    .filter(|&i| (0..6).any(|j| o.corner(i) == h.corner(j)))
                    .count();
                let adjacent = o.direction_to(h).is_some();
                assert_eq!(common, if adjacent { 2 } else { 0 }, "{h}");
                assert_eq!(adjacent, o.distance(h) == 1);
            }
        }
    }

    #[test]
    fn empty_instance_rejected() {
        assert_eq!(build_benzenoid(Vec::new()), Err(Error::EmptyInstance));
    }

    #[test]
    fn ring_around_hole_rejected() {
        let ring: Vec<HexAddr> = (0..6).map(|d| HexAddr::new(0, 0).neighbor(d)).collect();
        assert_eq!(build_benzenoid(ring), Err(Error::NonHexagonalFace(1)));
    }

    #[test]
    fn triple_point_is_pericondensed() {
        // three mutually adjacent hexagons meet in one vertex
        let b = build_benzenoid(hx(&[(0, 0), (1, 0), (0, 1)])).unwrap();
        assert!(!b.is_catacondensed());
        assert_eq!(b.vertex_hex_count().iter().filter(|&&c| c == 3).count(), 1);
    }

    #[test]
    fn three_chain() {
        let b = build_benzenoid(hx(&[(0, 0), (1, 0), (2, 0)])).unwrap();
        assert!(b.is_catacondensed());
        assert_eq!(b.hex_neighbors(HexAddr::new(1, 0)).unwrap().len(), 2);
        assert_eq!(b.classify_hexagon(HexAddr::new(1, 0)).unwrap(), HexClass::Linear);
        assert_eq!(
            b.hex_neighbors(HexAddr::new(5, 5)),
            Err(Error::UnknownHexagon(HexAddr::new(5, 5)))
        );
    }

    #[test]
    fn star_branch_has_three_neighbors() {
        let c = HexAddr::new(0, 0);
        let star = [c, c.neighbor(0), c.neighbor(2), c.neighbor(4)];
        let b = build_benzenoid(star).unwrap();
        assert!(b.is_catacondensed());
        // brute-force: count star hexagons sharing two corners with the centre
        let brute = star[1..]
            .iter()
            .filter(|h| (0..6).filter(|&i| (0..6).any(|j| c.corner(i) == h.corner(j))).count() == 2)
            .count();
        assert_eq!(brute, 3);
        assert_eq!(b.hex_neighbors(c).unwrap().len(), 3);
        assert_eq!(b.classify_hexagon(c).unwrap(), HexClass::Branched);
    }

    #[test]
    fn kink_versus_linear() {
        let o = HexAddr::new(0, 0);
        let bent = build_benzenoid([o.neighbor(0), o, o.neighbor(2)]).unwrap();
        assert_eq!(bent.classify_hexagon(o).unwrap(), HexClass::Kink);
        let straight = build_benzenoid([o.neighbor(1), o, o.neighbor(4)]).unwrap();
        assert_eq!(straight.classify_hexagon(o).unwrap(), HexClass::Linear);
    }

    #[test]
    fn symmetries_are_distinct_and_closed() {
        let h = HexAddr::new(3, 1);
        let images: BTreeSet<_> = (0..12).map(|g| h.symmetry(g)).collect();
        assert_eq!(images.len(), 12);
        for g in 0..12 {
            assert_eq!(h.symmetry(g).distance(HexAddr::new(0, 0)), h.distance(HexAddr::new(0, 0)));
        }
    }

    #[test]
    fn canonical_corner_names() {
        let b = build_benzenoid(hx(&[(0, 0), (1, 0)])).unwrap();
        // corners 2 and 3 of (1,0) coincide with corners 0 and 5 of (0,0)
        let shared: Vec<_> = b.vertices().iter().filter(|c| c.hex == HexAddr::new(0, 0)).collect();
        assert_eq!(shared.len(), 6);
        assert!(b.vertices().windows(2).all(|w| w[0] < w[1]));
    }
}

//! Perfect matchings (Kekulé structures), alternating hexagons, links and
//! the binary labelling of matchings.

use std::cmp::Ordering;

use crate::cubes::{BitString, MAX_BITS};
use crate::error::{Error, Result};
use crate::hexgrid::Benzenoid;
use crate::structure::HexOrdering;

/// Binary label of a matching; position `i` belongs to hexagon `h_{i+1}`.
pub type Label = BitString;

/// Fixed-length edge subset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeSet {
    words: Vec<u64>,
    len: usize,
}

impl EdgeSet {
    pub fn empty(len: usize) -> Self {
        EdgeSet { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn from_ids(len: usize, ids: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(len);
        for e in ids {
            s.insert(e);
        }
        s
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.count() == 0
    }

    pub fn contains(&self, e: usize) -> bool {
        self.words[e / 64] >> (e % 64) & 1 == 1
    }

    pub fn insert(&mut self, e: usize) {
        assert!(e < self.len, "edge id {e} out of range");
        self.words[e / 64] |= 1 << (e % 64);
    }

    pub fn remove(&mut self, e: usize) {
        self.words[e / 64] &= !(1 << (e % 64));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ids(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&e| self.contains(e))
    }

    pub fn symmetric_difference(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect(),
            len: self.len,
        }
    }
}

/// Lexicographic order of the bit vectors read from edge 0 upwards.
impl Ord for EdgeSet {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.words.iter().zip(&other.words) {
            let diff = a ^ b;
            if diff != 0 {
                let low = diff.trailing_zeros();
                return if a >> low & 1 == 0 { Ordering::Less } else { Ordering::Greater };
            }
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for EdgeSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matching {
    pub edges: EdgeSet,
}

impl Matching {
    pub fn contains(&self, e: usize) -> bool {
        self.edges.contains(e)
    }

    /// True iff every vertex of `b` is covered by exactly one selected edge.
    pub fn is_perfect(&self, b: &Benzenoid) -> bool {
        let mut cover = vec![0u8; b.vertex_count()];
        for e in self.edges.ids() {
            let (u, v) = b.edges()[e];
            cover[u] += 1;
            cover[v] += 1;
        }
        cover.iter().all(|&c| c == 1)
    }

    /// Selected edges as sorted endpoint pairs.
    pub fn endpoint_pairs(&self, b: &Benzenoid) -> Vec<(usize, usize)> {
        self.edges.ids().map(|e| b.edges()[e]).collect()
    }
}

/// All perfect matchings of `b`, in ascending [`EdgeSet`] order.
///
/// Backtracks over vertices in id order, branching on the edges of the
/// smallest uncovered vertex.
pub fn enumerate_matchings(b: &Benzenoid) -> Vec<Matching> {
    let mut out = Vec::new();
    if b.vertex_count().is_multiple_of(2) {
        let mut covered = vec![false; b.vertex_count()];
        let mut chosen = EdgeSet::empty(b.edge_count());
        extend(b, 0, &mut covered, &mut chosen, &mut out);
    }
    out.sort();
    out
}

fn extend(b: &Benzenoid, from: usize, covered: &mut [bool], chosen: &mut EdgeSet, out: &mut Vec<Matching>) {
    let Some(v) = (from..covered.len()).find(|&v| !covered[v]) else {
        out.push(Matching { edges: chosen.clone() });
        return;
    };
    covered[v] = true;
    for &(w, e) in b.incident(v) {
        if !covered[w] {
            covered[w] = true;
            chosen.insert(e);
            extend(b, v + 1, covered, chosen, out);
            chosen.remove(e);
            covered[w] = false;
        }
    }
    covered[v] = false;
}

/// Cycle positions of hexagon `h` whose edges lie in `m`.
fn selected_positions(b: &Benzenoid, m: &Matching, h: usize) -> [bool; 6] {
    let cycle = b.hex_cycle(h);
    std::array::from_fn(|k| m.contains(cycle[k]))
}

/// True iff the edges of hexagon `h` alternate in and out of `m`.
pub fn is_alternating(b: &Benzenoid, m: &Matching, h: usize) -> bool {
    let sel = selected_positions(b, m, h);
    sel == [true, false, true, false, true, false] || sel == [false, true, false, true, false, true]
}

/// The two edges of `h_from` incident to the endpoints of the edge it
/// shares with `h`, excluding the shared edge itself.
pub fn link_edges(b: &Benzenoid, h: usize, h_from: usize) -> Result<[usize; 2]> {
    let p = b.shared_position(h_from, h)?;
    let cycle = b.hex_cycle(h_from);
    Ok([cycle[(p + 5) % 6], cycle[(p + 1) % 6]])
}

/// True iff `m` contains the link from `h_from` to `h`.
pub fn detect_link(b: &Benzenoid, m: &Matching, h: usize, h_from: usize) -> Result<bool> {
    let [x, y] = link_edges(b, h, h_from)?;
    Ok(m.contains(x) && m.contains(y))
}

/// `ℓ(M)`: bit 1 records the edge of `h_1` opposite its shared edge with
/// `h_2`; bit `i >= 2` records the link from `h_i` to its predecessor. A
/// lone hexagon uses its smallest edge id for bit 1.
pub fn label_matching(b: &Benzenoid, ord: &HexOrdering, m: &Matching) -> Result<Label> {
    let n = ord.len();
    if n > MAX_BITS {
        return Err(Error::TooManyHexagons(n));
    }
    let mut label = Label::zeros(n);
    let first = ord.hex_at(0);
    let bit1 = if n == 1 {
        let min_edge = *b.hex_cycle(first).iter().min().expect("six edges");
        m.contains(min_edge)
    } else {
        let p = b.shared_position(first, ord.hex_at(1))?;
        m.contains(b.hex_cycle(first)[(p + 3) % 6])
    };
    label = label.with(0, bit1);
    for pos in 1..n {
        let pred = ord.pred(pos).expect("non-root hexagon has a predecessor");
        if detect_link(b, m, ord.hex_at(pred), ord.hex_at(pos))? {
            label = label.with(pos, true);
        }
    }
    Ok(label)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hexgrid::{build_benzenoid, HexAddr};
    use crate::structure::{inner_dual, order_hexagons, Traversal};
    use std::collections::BTreeSet;

    fn sys(v: &[(i32, i32)]) -> Benzenoid {
        build_benzenoid(v.iter().map(|&p| HexAddr::from(p))).unwrap()
    }

    /// Exhaustive oracle: every edge subset of size |V|/2 that covers all vertices.
    fn brute_force_count(b: &Benzenoid) -> usize {
        let m = b.edge_count();
        assert!(m <= 26, "oracle limited to small graphs");
        let half = b.vertex_count() / 2;
        (0u32..1 << m)
            .filter(|s| s.count_ones() as usize == half)
            .filter(|&s| {
                let mut cover = vec![0; b.vertex_count()];
                for e in 0..m {
                    if s >> e & 1 == 1 {
                        cover[b.edges()[e].0] += 1;
                        cover[b.edges()[e].1] += 1;
                    }
                }
                cover.iter().all(|&c| c == 1)
            })
            .count()
    }

    fn labels(b: &Benzenoid) -> BTreeSet<String> {
        let t = inner_dual(b).unwrap();
        let ord = order_hexagons(&t, Traversal::Dfs, None).unwrap();
        enumerate_matchings(b)
            .iter()
            .map(|m| label_matching(b, &ord, m).unwrap().to_string())
            .collect()
    }

    fn strs(v: &[&str]) -> BTreeSet<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn counts_match_oracle() {
        let cases: [(&[(i32, i32)], usize); 4] = [
            (&[(0, 0)], 2),
            (&[(0, 0), (1, 0)], 3),
            (&[(0, 0), (1, 0), (2, 0)], 4),
            (&[(0, 0), (1, 0), (1, 1)], 5),
        ];
        for (hexes, expected) in cases {
            let b = sys(hexes);
            assert_eq!(brute_force_count(&b), expected);
            let ms = enumerate_matchings(&b);
            assert_eq!(ms.len(), expected);
            assert!(ms.iter().all(|m| m.is_perfect(&b)));
            assert!(ms.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn benzene_alternates_both_ways() {
        let b = sys(&[(0, 0)]);
        for m in enumerate_matchings(&b) {
            assert!(is_alternating(&b, &m, 0));
        }
        assert_eq!(labels(&b), strs(&["0", "1"]));
    }

    #[test]
    fn naphthalene_links_and_alternation() {
        let b = sys(&[(0, 0), (1, 0)]);
        let shared = b.hex_cycle(0)[b.shared_position(0, 1).unwrap()];
        let t = inner_dual(&b).unwrap();
        let ord = order_hexagons(&t, Traversal::Dfs, None).unwrap();
        let ms = enumerate_matchings(&b);
        let with_shared: Vec<_> = ms.iter().filter(|m| m.contains(shared)).collect();
        assert_eq!(with_shared.len(), 1);
        let m = with_shared[0];
        assert!(is_alternating(&b, m, 0));
        let sel = selected_positions(&b, m, 0);
        let p = b.shared_position(0, 1).unwrap();
        assert!(sel[p] && sel[(p + 2) % 6] && sel[(p + 4) % 6]);
        assert!(!detect_link(&b, m, 0, 1).unwrap());
        for m in &ms {
            let l = label_matching(&b, &ord, m).unwrap().to_string();
            assert_eq!(detect_link(&b, m, 0, 1).unwrap(), l == "01");
        }
        assert_eq!(labels(&b), strs(&["00", "10", "01"]));
    }

    #[test]
    fn anthracene_labels() {
        let b = sys(&[(0, 0), (1, 0), (2, 0)]);
        assert_eq!(labels(&b), strs(&["000", "100", "010", "011"]));
        let t = inner_dual(&b).unwrap();
        let ord = order_hexagons(&t, Traversal::Dfs, None).unwrap();
        let m = enumerate_matchings(&b)
            .into_iter()
            .find(|m| label_matching(&b, &ord, m).unwrap().to_string() == "011")
            .unwrap();
        let h2 = ord.hex_at(1);
        assert!(!is_alternating(&b, &m, h2));
        assert_eq!(b.hex_cycle(h2).iter().filter(|&&e| m.contains(e)).count(), 2);
    }

    #[test]
    fn phenanthrene_labels_are_fibonacci_strings() {
        let b = sys(&[(0, 0), (1, 0), (1, 1)]);
        assert_eq!(labels(&b), strs(&["000", "100", "010", "001", "101"]));
    }

    #[test]
    fn non_adjacent_pair_rejected() {
        let b = sys(&[(0, 0), (1, 0), (2, 0)]);
        let m = &enumerate_matchings(&b)[0];
        assert_eq!(detect_link(&b, m, 0, 2), Err(Error::HexagonsNotAdjacent(2, 0)));
    }

    #[test]
    fn edge_set_order() {
        let a = EdgeSet::from_ids(70, [1, 65]);
        let b = EdgeSet::from_ids(70, [0]);
        let c = EdgeSet::from_ids(70, [1, 66]);
        assert!(a < b);
        assert!(c < a);
        assert_eq!(a.symmetric_difference(&c).ids().collect::<Vec<_>>(), vec![65, 66]);
    }
}

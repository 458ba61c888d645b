//! Inner dual, hexagon classification and the traversal numbering of
//! hexagons used by the matching labels.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hexgrid::{Benzenoid, HexAddr, HexClass};

/// Hexagon adjacency graph. Node `i` is hexagon index `i` of the system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerDual {
    hexes: Vec<HexAddr>,
    adjacency: Vec<Vec<usize>>,
}

impl InnerDual {
    pub fn node_count(&self) -> usize {
        self.hexes.len()
    }

    pub fn hex(&self, node: usize) -> HexAddr {
        self.hexes[node]
    }

    /// Neighbours of `node` in ascending address order.
    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, ns)| ns.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
            .collect()
    }

    pub fn is_leaf(&self, node: usize) -> bool {
        self.adjacency[node].len() <= 1
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.node_count()).filter(|&i| self.is_leaf(i)).collect()
    }

    pub fn are_adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].contains(&b)
    }
}

/// Inner dual of a catacondensed system; always a tree.
pub fn inner_dual(b: &Benzenoid) -> Result<InnerDual> {
    if !b.is_catacondensed() {
        return Err(Error::NotCatacondensed);
    }
    let adjacency: Vec<Vec<usize>> = (0..b.hex_count())
        .map(|i| {
            let mut ns: Vec<usize> = b.neighbor_indices(i).into_iter().map(|(j, _)| j).collect();
            ns.sort_unstable();
            ns
        })
        .collect();
    let edge_count: usize = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
    if edge_count + 1 != b.hex_count() {
        return Err(Error::NotCatacondensed);
    }
    Ok(InnerDual { hexes: b.hexes().to_vec(), adjacency })
}

/// True iff the catacondensed system has no linearly connected hexagon.
pub fn is_kinky(b: &Benzenoid) -> Result<bool> {
    if !b.is_catacondensed() {
        return Err(Error::NotCatacondensed);
    }
    Ok((0..b.hex_count()).all(|i| b.classify_index(i) != HexClass::Linear))
}

pub fn classify_all(b: &Benzenoid) -> Vec<HexClass> {
    (0..b.hex_count()).map(|i| b.classify_index(i)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Traversal {
    #[default]
    Dfs,
    Bfs,
}

impl std::str::FromStr for Traversal {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "dfs" => Ok(Traversal::Dfs),
            "bfs" => Ok(Traversal::Bfs),
            other => Err(format!("unknown traversal {other:?} (expected dfs or bfs)")),
        }
    }
}

/// Numbering `h_1 .. h_n` of the hexagons. Positions are 0-based here:
/// position 0 is `h_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HexOrdering {
    order: Vec<usize>,
    position: Vec<usize>,
    pred: Vec<Option<usize>>,
}

impl HexOrdering {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Hexagon index at `position`.
    pub fn hex_at(&self, position: usize) -> usize {
        self.order[position]
    }

    /// Position of hexagon index `hex`.
    pub fn position_of(&self, hex: usize) -> usize {
        self.position[hex]
    }

    /// Position of the predecessor of the hexagon at `position`.
    pub fn pred(&self, position: usize) -> Option<usize> {
        self.pred[position]
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }
}

/// Numbers the hexagons by a DFS (preorder) or BFS of the inner dual from a
/// leaf root. The default root is the leaf with the smallest address;
/// children are visited in ascending address order.
pub fn order_hexagons(t: &InnerDual, mode: Traversal, root: Option<HexAddr>) -> Result<HexOrdering> {
    let n = t.node_count();
    let root = match root {
        Some(addr) => {
            let node = t
                .hexes
                .binary_search(&addr)
                .map_err(|_| Error::UnknownHexagon(addr))?;
            if !t.is_leaf(node) {
                return Err(Error::RootNotLeaf(addr));
            }
            node
        }
        // hexes are sorted, so the first leaf has the smallest address
        None => t.leaves()[0],
    };

    let mut order = Vec::with_capacity(n);
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[root] = true;
    match mode {
        Traversal::Dfs => {
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                order.push(v);
                for &w in t.neighbors(v).iter().rev() {
                    if !seen[w] {
                        seen[w] = true;
                        parent[w] = Some(v);
                        stack.push(w);
                    }
                }
            }
        }
        Traversal::Bfs => {
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for &w in t.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        parent[w] = Some(v);
                        queue.push_back(w);
                    }
                }
            }
        }
    }

    let mut position = vec![0; n];
    for (p, &h) in order.iter().enumerate() {
        position[h] = p;
    }
    let pred = order.iter().map(|&h| parent[h].map(|p| position[p])).collect();
    Ok(HexOrdering { order, position, pred })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hexgrid::build_benzenoid;

    fn chain(v: &[(i32, i32)]) -> Benzenoid {
        build_benzenoid(v.iter().map(|&p| HexAddr::from(p))).unwrap()
    }

    fn star() -> Benzenoid {
        let c = HexAddr::new(0, 0);
        build_benzenoid([c, c.neighbor(0), c.neighbor(2), c.neighbor(4)]).unwrap()
    }

    #[test]
    fn dual_of_chain_is_path() {
        let t = inner_dual(&chain(&[(0, 0), (1, 0), (2, 0)])).unwrap();
        assert_eq!(t.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn dual_of_star() {
        let b = star();
        let t = inner_dual(&b).unwrap();
        let centre = b.index_of(HexAddr::new(0, 0)).unwrap();
        assert_eq!(t.neighbors(centre).len(), 3);
        assert_eq!(t.edges().len(), 3);
        assert_eq!(t.leaves().len(), 3);
    }

    #[test]
    fn dual_of_single_hexagon() {
        let t = inner_dual(&chain(&[(0, 0)])).unwrap();
        assert_eq!(t.node_count(), 1);
        assert!(t.edges().is_empty());
    }

    #[test]
    fn pericondensed_dual_rejected() {
        let b = chain(&[(0, 0), (1, 0), (0, 1)]);
        assert_eq!(inner_dual(&b), Err(Error::NotCatacondensed));
        assert_eq!(is_kinky(&b), Err(Error::NotCatacondensed));
    }

    #[test]
    fn kinky_flags() {
        assert!(!is_kinky(&chain(&[(0, 0), (1, 0), (2, 0)])).unwrap());
        assert!(is_kinky(&chain(&[(0, 0), (1, 0), (1, 1)])).unwrap());
        assert!(is_kinky(&star()).unwrap());
    }

    #[test]
    fn default_root_is_smallest_leaf() {
        let b = chain(&[(2, 0), (1, 0), (0, 0)]);
        let t = inner_dual(&b).unwrap();
        let ord = order_hexagons(&t, Traversal::Dfs, None).unwrap();
        assert_eq!(b.hex(ord.hex_at(0)), HexAddr::new(0, 0));
        assert_eq!(ord.order(), &[0, 1, 2]);
        let rev = order_hexagons(&t, Traversal::Dfs, Some(HexAddr::new(2, 0))).unwrap();
        assert_eq!(rev.order(), &[2, 1, 0]);
    }

    #[test]
    fn root_must_be_leaf() {
        let t = inner_dual(&chain(&[(0, 0), (1, 0), (2, 0)])).unwrap();
        assert_eq!(
            order_hexagons(&t, Traversal::Bfs, Some(HexAddr::new(1, 0))),
            Err(Error::RootNotLeaf(HexAddr::new(1, 0)))
        );
    }

    #[test]
    fn star_from_leaf() {
        let b = star();
        let t = inner_dual(&b).unwrap();
        let centre = b.index_of(HexAddr::new(0, 0)).unwrap();
        let mut leaves: Vec<usize> = t.leaves();
        leaves.sort_by_key(|&l| b.hex(l));
        for mode in [Traversal::Dfs, Traversal::Bfs] {
            let ord = order_hexagons(&t, mode, Some(b.hex(leaves[1]))).unwrap();
            assert_eq!(ord.hex_at(0), leaves[1]);
            assert_eq!(ord.hex_at(1), centre);
            assert_eq!(&ord.order()[2..], &[leaves[0], leaves[2]]);
            assert_eq!(ord.pred(2), Some(1));
            assert_eq!(ord.pred(3), Some(1));
        }
    }

    #[test]
    fn predecessors_precede() {
        let b = chain(&[(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, -1)]);
        let t = inner_dual(&b).unwrap();
        for mode in [Traversal::Dfs, Traversal::Bfs] {
            for leaf in t.leaves() {
                let ord = order_hexagons(&t, mode, Some(b.hex(leaf))).unwrap();
                assert_eq!(ord.pred(0), None);
                for p in 1..ord.len() {
                    let q = ord.pred(p).unwrap();
                    assert!(q < p);
                    assert!(t.are_adjacent(ord.hex_at(p), ord.hex_at(q)));
                }
            }
        }
    }
}

//! Instance generation: turn-sequence chains, attachment codes, exhaustive
//! catacondensed enumeration up to lattice symmetry, and named fixtures.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hexgrid::{build_benzenoid, Benzenoid, HexAddr};
use crate::structure::is_kinky;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Turn {
    Left,
    Right,
    Straight,
}

impl Turn {
    fn letter(self) -> char {
        match self {
            Turn::Left => 'L',
            Turn::Right => 'R',
            Turn::Straight => 'S',
        }
    }
}

/// Turns at the internal hexagons of a chain: `L`/`R` make a kink, `S` a
/// linear hexagon.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TurnSeq(pub Vec<Turn>);

impl TurnSeq {
    pub fn is_kinky(&self) -> bool {
        !self.0.contains(&Turn::Straight)
    }

    /// Alternating `LRLR...` of the given length.
    pub fn zigzag(len: usize) -> Self {
        TurnSeq((0..len).map(|i| if i % 2 == 0 { Turn::Left } else { Turn::Right }).collect())
    }
}

impl FromStr for TurnSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c.to_ascii_uppercase() {
                'L' => Ok(Turn::Left),
                'R' => Ok(Turn::Right),
                'S' => Ok(Turn::Straight),
                _ => Err(Error::InvalidTurn(c)),
            })
            .collect::<Result<Vec<_>>>()
            .map(TurnSeq)
    }
}

impl fmt::Display for TurnSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|t| write!(f, "{}", t.letter()))
    }
}

/// Hexagon addresses of the chain described by `turns`, starting at the
/// origin and heading in direction 5.
pub fn chain_addresses(turns: &TurnSeq) -> Result<Vec<HexAddr>> {
    let mut dir = 5usize;
    let mut hexes = vec![HexAddr::new(0, 0), HexAddr::new(0, 0).neighbor(dir)];
    for (step, turn) in turns.0.iter().enumerate() {
        dir = match turn {
            Turn::Left => (dir + 1) % 6,
            Turn::Right => (dir + 5) % 6,
            Turn::Straight => dir,
        };
        let cur = *hexes.last().unwrap();
        let next = cur.neighbor(dir);
        // the new hexagon may touch only its predecessor
        if hexes.iter().any(|&h| h != cur && h.distance(next) <= 1) {
            return Err(Error::SelfOverlap(step + 3));
        }
        hexes.push(next);
    }
    Ok(hexes)
}

/// Builds the chain with `turns.len() + 2` hexagons.
pub fn chain_from_turns(turns: &TurnSeq) -> Result<Benzenoid> {
    build_benzenoid(chain_addresses(turns)?)
}

/// Zigzag chain of `n >= 1` hexagons.
pub fn fibonaccene(n: usize) -> Result<Benzenoid> {
    match n {
        0 => Err(Error::EmptyInstance),
        1 => build_benzenoid([HexAddr::new(0, 0)]),
        _ => chain_from_turns(&TurnSeq::zigzag(n - 2)),
    }
}

/// Growth code: hexagon `k + 1` is attached to hexagon `code[k].0` in
/// lattice direction `code[k].1`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AttachmentCode(pub Vec<(usize, usize)>);

impl AttachmentCode {
    pub fn addresses(&self) -> Result<Vec<HexAddr>> {
        let mut hexes = vec![HexAddr::new(0, 0)];
        for (step, &(parent, dir)) in self.0.iter().enumerate() {
            let Some(&p) = hexes.get(parent) else {
                return Err(Error::Parse { line: step + 1, msg: format!("parent {parent} not yet placed") });
            };
            let next = p.neighbor(dir % 6);
            if hexes.iter().any(|&h| h != p && h.distance(next) <= 1) || next == p {
                return Err(Error::SelfOverlap(step + 2));
            }
            hexes.push(next);
        }
        Ok(hexes)
    }

    /// The catacondensed system grown by this code.
    pub fn build(&self) -> Result<Benzenoid> {
        let b = build_benzenoid(self.addresses()?)?;
        if !b.is_catacondensed() {
            return Err(Error::NotCatacondensed);
        }
        Ok(b)
    }
}

fn normalize(hexes: &mut Vec<HexAddr>) {
    hexes.sort();
    hexes.dedup();
    if let Some(&o) = hexes.first() {
        for h in hexes.iter_mut() {
            *h = HexAddr::new(h.q - o.q, h.r - o.r);
        }
    }
}

/// Sorted addresses translated so the smallest sits at the origin.
pub fn translation_key(hexes: &[HexAddr]) -> Vec<HexAddr> {
    let mut v = hexes.to_vec();
    normalize(&mut v);
    v
}

/// Smallest translation key over the 12 point symmetries.
pub fn canonical_form(hexes: &[HexAddr]) -> Vec<HexAddr> {
    (0..12)
        .map(|g| translation_key(&hexes.iter().map(|h| h.symmetry(g)).collect::<Vec<_>>()))
        .min()
        .unwrap_or_default()
}

/// One representative per symmetry class of catacondensed systems with `n`
/// hexagons, in ascending canonical-key order.
pub fn enumerate_catacondensed(n: usize, kinky_only: bool) -> Vec<Benzenoid> {
    catacondensed_keys(n)
        .into_iter()
        .map(|key| build_benzenoid(key).expect("generated systems are valid"))
        .filter(|b| !kinky_only || is_kinky(b).unwrap_or(false))
        .collect()
}

/// Canonical keys of all catacondensed systems with `n` hexagons.
pub fn catacondensed_keys(n: usize) -> BTreeSet<Vec<HexAddr>> {
    if n == 0 {
        return BTreeSet::new();
    }
    let mut level: BTreeSet<Vec<HexAddr>> = BTreeSet::from([vec![HexAddr::new(0, 0)]]);
    for _ in 1..n {
        level = level
            .par_iter()
            .flat_map_iter(|parent| leaf_extensions(parent).into_iter().map(|c| canonical_form(&c)))
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
    }
    level
}

/// Systems obtained by attaching one hexagon that touches exactly one
/// existing hexagon, which keeps the inner dual a tree without triple points.
pub fn leaf_extensions(hexes: &[HexAddr]) -> Vec<Vec<HexAddr>> {
    let present: BTreeSet<HexAddr> = hexes.iter().copied().collect();
    let mut candidates = BTreeSet::new();
    for &h in hexes {
        for d in 0..6 {
            let c = h.neighbor(d);
            if !present.contains(&c) && (0..6).filter(|&e| present.contains(&c.neighbor(e))).count() == 1 {
                candidates.insert(c);
            }
        }
    }
    candidates
        .into_iter()
        .map(|c| {
            let mut v = hexes.to_vec();
            v.push(c);
            v
        })
        .collect()
}

/// Named instances used throughout the tests and the CLI.
pub fn fixtures() -> BTreeMap<String, Benzenoid> {
    let turns = |s: &str| chain_from_turns(&s.parse().expect("valid turns")).expect("valid chain");
    let mut out = BTreeMap::new();
    out.insert("benzene".into(), build_benzenoid([HexAddr::new(0, 0)]).unwrap());
    out.insert("naphthalene".into(), turns(""));
    out.insert("anthracene".into(), turns("S"));
    out.insert("phenanthrene".into(), turns("L"));
    for k in 3..=10 {
        out.insert(format!("fibonaccene_{k}"), fibonaccene(k).unwrap());
    }
    let c = HexAddr::new(0, 0);
    out.insert(
        "triphenylene".into(),
        build_benzenoid([c, c.neighbor(0), c.neighbor(2), c.neighbor(4)]).unwrap(),
    );
    // linear hexagon followed by a kink
    out.insert("benz_a_anthracene".into(), turns("SL"));
    out
}

pub fn fixture(name: &str) -> Option<Benzenoid> {
    fixtures().remove(name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hexgrid::HexClass;

    fn classes(b: &Benzenoid) -> Vec<HexClass> {
        crate::structure::classify_all(b)
    }

    #[test]
    fn named_chains() {
        let f = fixtures();
        assert_eq!(f["naphthalene"].hex_count(), 2);
        let anth = &f["anthracene"];
        assert!(anth.is_catacondensed());
        assert!(!is_kinky(anth).unwrap());
        assert_eq!(classes(anth).iter().filter(|&&c| c == HexClass::Linear).count(), 1);
        assert!(is_kinky(&f["phenanthrene"]).unwrap());
        assert!(is_kinky(&f["triphenylene"]).unwrap());
        assert!(!is_kinky(&f["benz_a_anthracene"]).unwrap());
        for k in 3..=10 {
            let b = &f[&format!("fibonaccene_{k}")];
            assert_eq!(b.hex_count(), k);
            assert!(is_kinky(b).unwrap());
        }
    }

    #[test]
    fn turn_parsing() {
        assert_eq!("lRs".parse::<TurnSeq>().unwrap().to_string(), "LRS");
        assert_eq!("LX".parse::<TurnSeq>(), Err(Error::InvalidTurn('X')));
        assert!(TurnSeq::zigzag(5).is_kinky());
        assert!(!"LSR".parse::<TurnSeq>().unwrap().is_kinky());
    }

    #[test]
    fn helicene_contact_rejected() {
        // four left turns close the ring around an empty hexagon
        assert!(chain_from_turns(&"LLL".parse().unwrap()).is_ok());
        assert_eq!(chain_from_turns(&"LLLL".parse().unwrap()), Err(Error::SelfOverlap(6)));
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_catacondensed(1, false).len(), 1);
        assert_eq!(enumerate_catacondensed(2, false).len(), 1);
        assert_eq!(enumerate_catacondensed(3, false).len(), 2);
        assert_eq!(enumerate_catacondensed(3, true).len(), 1);
        assert!(enumerate_catacondensed(0, false).is_empty());
    }

    #[test]
    fn canonical_form_is_symmetry_invariant() {
        let hexes = chain_addresses(&"LSR".parse().unwrap()).unwrap();
        let key = canonical_form(&hexes);
        assert_eq!(canonical_form(&key), key);
        for g in 0..12 {
            let moved: Vec<HexAddr> = hexes.iter().map(|h| h.symmetry(g)).map(|h| HexAddr::new(h.q + 3, h.r - 7)).collect();
            assert_eq!(canonical_form(&moved), key);
        }
    }

    #[test]
    fn attachment_code_builds_star() {
        let b = AttachmentCode(vec![(0, 0), (0, 2), (0, 4)]).build().unwrap();
        assert_eq!(b.hex_count(), 4);
        assert_eq!(canonical_form(b.hexes()), canonical_form(fixtures()["triphenylene"].hexes()));
        assert_eq!(AttachmentCode(vec![(0, 0), (0, 1)]).build(), Err(Error::SelfOverlap(3)));
    }
}

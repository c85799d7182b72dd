//! Addresses, finite colored patches, shifts, the dyadic metric and shared subtree identity.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A color is a single bit, stored as `0` or `1`.
pub type Color = u8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    pub fn bit(self) -> u64 {
        match self {
            Letter::A => 0,
            Letter::B => 1,
        }
    }

    pub fn from_bit(b: u64) -> Letter {
        if b & 1 == 0 {
            Letter::A
        } else {
            Letter::B
        }
    }

    pub fn other(self) -> Letter {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
        }
    }

    pub fn lower(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }
}

/// A site of the free monoid on `{a, b}`, read from the root downwards.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Address(pub Vec<Letter>);

impl Address {
    pub fn empty() -> Address {
        Address(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Rank within its level, `a = 0`, `b = 1`, most significant letter first.
    pub fn index(&self) -> u64 {
        self.0.iter().fold(0, |acc, l| (acc << 1) | l.bit())
    }

    pub fn from_index(len: usize, idx: u64) -> Address {
        Address((0..len).rev().map(|i| Letter::from_bit(idx >> i)).collect())
    }

    pub fn concat(&self, other: &Address) -> Address {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Address(v)
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn count_b(&self) -> usize {
        self.0.iter().filter(|l| **l == Letter::B).count()
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for l in &self.0 {
            write!(f, "{}", l.lower())?;
        }
        Ok(())
    }
}

impl FromStr for Address {
    type Err = Error;

    fn from_str(s: &str) -> Result<Address> {
        let s = s.trim();
        if s == "e" || s.is_empty() {
            return Ok(Address::empty());
        }
        s.chars()
            .map(|c| match c {
                'a' => Ok(Letter::A),
                'b' => Ok(Letter::B),
                _ => Err(Error::Parse(format!("bad address letter {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Address)
    }
}

/// The colors of one generation, left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineWord(pub Vec<Color>);

impl LineWord {
    pub fn new(bits: Vec<Color>) -> Result<LineWord> {
        if !bits.len().is_power_of_two() {
            return Err(Error::NotPowerOfTwo(bits.len()));
        }
        Ok(LineWord(bits))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `log2` of the length.
    pub fn level(&self) -> usize {
        self.0.len().trailing_zeros() as usize
    }

    pub fn ones(&self) -> usize {
        self.0.iter().filter(|&&c| c == 1).count()
    }

    pub fn repeat(block: &[Color], copies: usize) -> LineWord {
        LineWord(block.repeat(copies))
    }
}

impl fmt::Display for LineWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &c in &self.0 {
            f.write_str(if c == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for LineWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<LineWord> {
        let bits = parse_bits(s.trim())?;
        LineWord::new(bits)
    }
}

fn parse_bits(s: &str) -> Result<Vec<Color>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::Parse(format!("bad bit {c:?}"))),
        })
        .collect()
}

/// Result of comparing two same-depth patches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distance {
    /// `2^-n`, where `n` is the first level holding a mismatch.
    Dyadic(usize),
    EqualToDepth,
}

impl Distance {
    /// Larger key means closer.
    fn closeness(self) -> usize {
        match self {
            Distance::Dyadic(n) => n,
            Distance::EqualToDepth => usize::MAX,
        }
    }

    pub fn max(self, other: Distance) -> Distance {
        if self.closeness() <= other.closeness() {
            self
        } else {
            other
        }
    }

    pub fn le(self, other: Distance) -> bool {
        self.closeness() >= other.closeness()
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Dyadic(0) => f.write_str("1"),
            Distance::Dyadic(n) => write!(f, "1/{}", 1u128 << n.min(&127)),
            Distance::EqualToDepth => f.write_str("EQUAL_TO_DEPTH"),
        }
    }
}

/// A complete colored binary tree of finite depth, stored level by level.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Patch {
    levels: Vec<Vec<Color>>,
}

impl Patch {
    pub fn from_levels(levels: Vec<Vec<Color>>) -> Result<Patch> {
        if levels.is_empty() {
            return Err(Error::Parse("patch needs at least a root".into()));
        }
        for (l, lv) in levels.iter().enumerate() {
            if lv.len() != 1usize << l {
                return Err(Error::Parse(format!(
                    "level {l} has {} colors, expected {}",
                    lv.len(),
                    1usize << l
                )));
            }
            if lv.iter().any(|&c| c > 1) {
                return Err(Error::Parse(format!("level {l} holds a non-bit")));
            }
        }
        Ok(Patch { levels })
    }

    pub(crate) fn from_levels_unchecked(levels: Vec<Vec<Color>>) -> Patch {
        debug_assert!(levels.iter().enumerate().all(|(l, v)| v.len() == 1 << l));
        Patch { levels }
    }

    pub fn leaf(c: Color) -> Patch {
        Patch { levels: vec![vec![c]] }
    }

    /// Builds a patch from a color function `(level, index) -> color`.
    pub fn from_fn(depth: usize, mut f: impl FnMut(usize, u64) -> Color) -> Patch {
        let levels = (0..=depth)
            .map(|l| (0..1u64 << l).map(|i| f(l, i)).collect())
            .collect();
        Patch { levels }
    }

    pub fn constant(c: Color, depth: usize) -> Patch {
        Patch::from_fn(depth, |_, _| c)
    }

    /// `c(a, b)`; both children are cut to the shallower depth.
    pub fn join(c: Color, a: &Patch, b: &Patch) -> Patch {
        let d = a.depth().min(b.depth());
        let mut levels = vec![vec![c]];
        for l in 0..=d {
            let mut lv = a.levels[l].clone();
            lv.extend_from_slice(&b.levels[l]);
            levels.push(lv);
        }
        Patch { levels }
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn root(&self) -> Color {
        self.levels[0][0]
    }

    pub fn levels(&self) -> &[Vec<Color>] {
        &self.levels
    }

    pub fn level(&self, l: usize) -> &[Color] {
        &self.levels[l]
    }

    pub fn line(&self, l: usize) -> Result<LineWord> {
        if l > self.depth() {
            return Err(Error::AddressTooDeep { len: l, depth: self.depth() });
        }
        Ok(LineWord(self.levels[l].clone()))
    }

    pub fn get(&self, w: &Address) -> Result<Color> {
        if w.len() > self.depth() {
            return Err(Error::AddressTooDeep { len: w.len(), depth: self.depth() });
        }
        Ok(self.levels[w.len()][w.index() as usize])
    }

    pub fn get_at(&self, level: usize, idx: u64) -> Color {
        self.levels[level][idx as usize]
    }

    pub fn subtree(&self, w: &Address) -> Result<Patch> {
        if w.len() > self.depth() {
            return Err(Error::AddressTooDeep { len: w.len(), depth: self.depth() });
        }
        Ok(self.subtree_at(w.len(), w.index()))
    }

    /// Subtree rooted at the `idx`-th site of `level`.
    pub fn subtree_at(&self, level: usize, idx: u64) -> Patch {
        let levels = (0..=self.depth() - level)
            .map(|l| {
                let start = (idx as usize) << l;
                self.levels[level + l][start..start + (1 << l)].to_vec()
            })
            .collect();
        Patch { levels }
    }

    /// Like [`Patch::subtree_at`] but cut to depth `d`.
    pub fn subtree_at_depth(&self, level: usize, idx: u64, d: usize) -> Patch {
        let levels = (0..=d)
            .map(|l| {
                let start = (idx as usize) << l;
                self.levels[level + l][start..start + (1 << l)].to_vec()
            })
            .collect();
        Patch { levels }
    }

    pub fn child(&self, l: Letter) -> Patch {
        self.subtree_at(1, l.bit())
    }

    pub fn truncate(&self, d: usize) -> Patch {
        Patch { levels: self.levels[..=d.min(self.depth())].to_vec() }
    }

    pub fn with_root(&self, c: Color) -> Patch {
        let mut p = self.clone();
        p.levels[0][0] = c;
        p
    }

    pub fn flip_root(&self) -> Patch {
        self.with_root(1 - self.root())
    }

    /// True when both agree on their common depth.
    pub fn agrees(&self, other: &Patch) -> bool {
        let d = self.depth().min(other.depth());
        self.levels[..=d] == other.levels[..=d]
    }

    /// `0/10/0010` style rendering.
    pub fn inline(&self) -> String {
        self.levels
            .iter()
            .map(|l| LineWord(l.clone()).to_string())
            .collect::<Vec<_>>()
            .join("/")
    }

    pub fn parse_inline(s: &str) -> Result<Patch> {
        let levels = s.trim().split('/').map(parse_bits).collect::<Result<Vec<_>>>()?;
        Patch::from_levels(levels)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("depth {}\n", self.depth());
        for l in &self.levels {
            s.push_str(&LineWord(l.clone()).to_string());
            s.push('\n');
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Patch> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty patch text".into()))?;
        let depth: usize = header
            .strip_prefix("depth")
            .map(str::trim)
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad header {header:?}")))?;
        let levels = lines.map(parse_bits).collect::<Result<Vec<_>>>()?;
        if levels.len() != depth + 1 {
            return Err(Error::Parse(format!(
                "header says depth {depth} but {} levels follow",
                levels.len()
            )));
        }
        Patch::from_levels(levels)
    }
}

impl fmt::Display for Patch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.inline())
    }
}

pub fn distance(p: &Patch, q: &Patch) -> Result<Distance> {
    if p.depth() != q.depth() {
        return Err(Error::DepthMismatch(p.depth(), q.depth()));
    }
    Ok(p.levels
        .iter()
        .zip(&q.levels)
        .position(|(x, y)| x != y)
        .map_or(Distance::EqualToDepth, Distance::Dyadic))
}

pub type NodeId = u32;
const NO_CHILD: NodeId = u32::MAX;

/// Hash-consing table: a node's id is determined by its color and its children's ids,
/// so two subtrees get the same id exactly when they are equal.
#[derive(Debug, Default, Clone)]
pub struct Interner {
    table: HashMap<(Color, NodeId, NodeId), NodeId>,
}

impl Interner {
    pub fn new() -> Interner {
        Interner::default()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn leaf(&mut self, c: Color) -> NodeId {
        self.node(c, NO_CHILD, NO_CHILD)
    }

    pub fn node(&mut self, c: Color, a: NodeId, b: NodeId) -> NodeId {
        let next = self.table.len() as NodeId;
        *self.table.entry((c, a, b)).or_insert(next)
    }

    pub fn intern(&mut self, p: &Patch) -> NodeId {
        let d = p.depth();
        let mut below: Vec<NodeId> = p.levels[d].iter().map(|&c| self.leaf(c)).collect();
        for l in (0..d).rev() {
            below = p.levels[l]
                .iter()
                .enumerate()
                .map(|(i, &c)| self.node(c, below[2 * i], below[2 * i + 1]))
                .collect();
        }
        below[0]
    }

    /// Ids of the depth-`n` subtrees at every site of levels `0..=p.depth()-n`.
    pub fn subtree_ids(&mut self, p: &Patch, n: usize) -> Result<Vec<Vec<NodeId>>> {
        if n > p.depth() {
            return Err(Error::AddressTooDeep { len: n, depth: p.depth() });
        }
        let d = p.depth();
        let mut ids: Vec<Vec<NodeId>> = p
            .levels
            .iter()
            .map(|lv| lv.iter().map(|&c| self.leaf(c)).collect())
            .collect();
        for k in 1..=n {
            // ids[l] currently hold depth-(k-1) subtrees; rebuild levels 0..=d-k
            for l in 0..=d - k {
                let next = &ids[l + 1];
                let row: Vec<NodeId> = p.levels[l]
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| self.node(c, next[2 * i], next[2 * i + 1]))
                    .collect();
                ids[l] = row;
            }
            ids.truncate(d - k + 1);
        }
        Ok(ids)
    }
}

/// Distinct depth-`n` subpatches, in order of first appearance (by level, then index).
#[derive(Debug, Clone)]
pub struct SubpatchCensus {
    pub n: usize,
    pub patches: Vec<Patch>,
    /// Site of the first occurrence of each patch.
    pub first_sites: Vec<(usize, u64)>,
}

impl SubpatchCensus {
    pub fn count(&self) -> usize {
        self.patches.len()
    }
}

pub fn distinct_subpatches(p: &Patch, n: usize) -> Result<SubpatchCensus> {
    let mut interner = Interner::new();
    let ids = interner.subtree_ids(p, n)?;
    let mut seen = HashMap::new();
    let mut patches = Vec::new();
    let mut first_sites = Vec::new();
    for (l, row) in ids.iter().enumerate() {
        for (i, id) in row.iter().enumerate() {
            if seen.insert(*id, ()).is_none() {
                patches.push(p.subtree_at_depth(l, i as u64, n));
                first_sites.push((l, i as u64));
            }
        }
    }
    Ok(SubpatchCensus { n, patches, first_sites })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn addr(s: &str) -> Address {
        s.parse().unwrap()
    }

    #[test]
    fn address_index_is_binary_rank() {
        assert_eq!(addr("ba").index(), 2);
        assert_eq!(addr("e").index(), 0);
        assert_eq!(Address::from_index(3, 5).to_string(), "bab");
        assert_eq!(addr("").to_string(), "e");
    }

    #[test]
    fn get_and_subtree() {
        let p = Patch::parse_inline("0/10/0010").unwrap();
        assert_eq!(p.get(&addr("ba")).unwrap(), 1);
        assert_eq!(p.get(&addr("e")).unwrap(), 0);
        assert!(matches!(p.get(&addr("aaa")), Err(Error::AddressTooDeep { .. })));
        let q = Patch::parse_inline("0/10").unwrap();
        assert_eq!(q.subtree(&addr("a")).unwrap(), Patch::leaf(1));
        assert_eq!(p.subtree(&addr("e")).unwrap(), p);
        assert_eq!(p.subtree(&addr("b")).unwrap().inline(), "0/10");
    }

    #[test]
    fn distance_examples() {
        let p = Patch::parse_inline("0/10").unwrap();
        let q = Patch::parse_inline("0/11").unwrap();
        assert_eq!(distance(&p, &q).unwrap(), Distance::Dyadic(1));
        assert_eq!(distance(&p, &p).unwrap(), Distance::EqualToDepth);
        assert_eq!(distance(&p, &p.flip_root()).unwrap(), Distance::Dyadic(0));
        assert!(distance(&p, &Patch::leaf(0)).is_err());
        assert_eq!(Distance::Dyadic(1).to_string(), "1/2");
    }

    #[test]
    fn text_round_trip() {
        let p = Patch::parse_inline("1/10/0010").unwrap();
        let t = p.to_text();
        assert_eq!(t, "depth 2\n1\n10\n0010\n");
        assert_eq!(Patch::parse_text(&format!("# comment\n{t}")).unwrap(), p);
        assert!(Patch::parse_text("depth 2\n1\n10\n").is_err());
        assert!(Patch::parse_text("depth 1\n1\n102\n").is_err());
    }

    #[test]
    fn join_and_children() {
        let a = Patch::parse_inline("1/00").unwrap();
        let b = Patch::parse_inline("0/10").unwrap();
        let p = Patch::join(0, &a, &b);
        assert_eq!(p.inline(), "0/10/0010");
        assert_eq!(p.child(Letter::A), a);
        assert_eq!(p.child(Letter::B), b);
    }

    #[test]
    fn interner_matches_equality() {
        let mut i = Interner::new();
        let p = Patch::parse_inline("0/10/0010").unwrap();
        let q = Patch::parse_inline("0/10/0010").unwrap();
        let r = Patch::parse_inline("0/10/0011").unwrap();
        assert_eq!(i.intern(&p), i.intern(&q));
        assert_ne!(i.intern(&p), i.intern(&r));
    }

    #[test]
    fn census_of_constant_patch() {
        let z = Patch::constant(0, 5);
        assert_eq!(distinct_subpatches(&z, 1).unwrap().count(), 1);
        assert!(distinct_subpatches(&z, 6).is_err());
    }
}

//! Structure of the BBAB fixed point: prefixes, 2^u-types, unsubstitution, brothers and recurrence probes.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::substitution::Substitution;
use crate::tree::{Address, Color, Interner, Letter, Patch};
use crate::words::chi_block;

pub fn jacaranda_prefix(d: usize) -> Patch {
    Substitution::bbab().fixed_point_prefix(0, d).expect("0 is fixable")
}

pub fn jprime_prefix(d: usize) -> Patch {
    Substitution::bbab().fixed_point_prefix(1, d).expect("1 is fixable")
}

/// Digit of J at the `idx`-th site of `level`, computed without building the tree:
/// even levels are pulled back through the source map until the level is odd.
pub fn jacaranda_digit_at(level: usize, idx: u64) -> Color {
    let h = Substitution::bbab();
    let mut w = Address::from_index(level, idx);
    while !w.is_empty() && w.len() % 2 == 0 {
        w = h.source(&w).expect("even length");
    }
    match w.0.last() {
        None => 0,
        Some(Letter::A) => 1,
        Some(Letter::B) => 0,
    }
}

/// A dyadic valuation that may only be known from below.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Val {
    Finite(u32),
    AtLeast(u32),
    Infinite,
}

impl Val {
    /// Concrete values worth distinguishing; thresholds used by the case analysis are all small.
    pub fn expand(self) -> Vec<Val> {
        match self {
            Val::AtLeast(m) => (m..m + 4).map(Val::Finite).chain([Val::Infinite]).collect(),
            v => vec![v],
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Val::Finite(u) => Some(u),
            _ => None,
        }
    }

    /// `true` when `self >= n` for every value it may stand for.
    pub fn at_least(self, n: u32) -> bool {
        match self {
            Val::Finite(u) | Val::AtLeast(u) => u >= n,
            Val::Infinite => true,
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Finite(u) => write!(f, "{u}"),
            Val::AtLeast(u) => write!(f, "{u}+"),
            Val::Infinite => f.write_str("inf"),
        }
    }
}

/// Where a subtree of J sits: an exact level, or a level known modulo `2^bits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Level {
    Exact(u64),
    Residue { r: u64, bits: u32 },
}

impl Level {
    /// `v2(level + off)`.
    pub fn val(self, off: i64) -> Val {
        match self {
            Level::Exact(l) => {
                let x = l as i64 + off;
                if x <= 0 {
                    Val::Infinite
                } else {
                    Val::Finite(x.trailing_zeros())
                }
            }
            Level::Residue { r, bits } => {
                let m = 1i64 << bits;
                let x = (r as i64 + off).rem_euclid(m);
                if x == 0 {
                    Val::AtLeast(bits)
                } else {
                    Val::Finite(x.trailing_zeros())
                }
            }
        }
    }

    /// Level divided by `2^u`; `None` when the residue loses all information.
    pub fn halve(self, u: u32) -> Option<Level> {
        match self {
            Level::Exact(l) => Some(Level::Exact(l >> u)),
            Level::Residue { r, bits } if bits > u => Some(Level::Residue { r: r >> u, bits: bits - u }),
            Level::Residue { .. } => None,
        }
    }
}

fn chi_blocks() -> &'static [Vec<Color>] {
    static BLOCKS: OnceLock<Vec<Vec<Color>>> = OnceLock::new();
    BLOCKS.get_or_init(|| (0..=4).map(|u| chi_block(u).0).collect())
}

/// Whether `line` can be an aligned piece of a line of J whose level has valuation `w`.
pub fn line_fits(line: &[Color], w: u32) -> bool {
    let Some(block) = chi_blocks().get(w as usize) else {
        return true;
    };
    if line.len() >= block.len() {
        line.chunks(block.len()).all(|c| c == block.as_slice())
    } else {
        block.chunks(line.len()).any(|c| c == line)
    }
}

fn residue_bits(depth: usize) -> u32 {
    let mut m = 2;
    while (1usize << m) < depth + 3 {
        m += 1;
    }
    m
}

/// Residues `r` such that `p` may sit at a level `= r mod 2^bits` of J, judged line by line.
pub fn level_candidates(p: &Patch) -> Vec<Level> {
    let bits = residue_bits(p.depth());
    let m = 1u64 << bits;
    (0..m)
        .filter(|&r| {
            (0..=p.depth()).all(|j| {
                let x = (r + j as u64) % m;
                x == 0 || line_fits(p.level(j), x.trailing_zeros())
            })
        })
        .map(|r| Level::Residue { r, bits })
        .collect()
}

pub fn level_consistent(p: &Patch, level: u64) -> bool {
    (0..=p.depth()).all(|j| {
        let x = level + j as u64;
        x == 0 || line_fits(p.level(j), x.trailing_zeros())
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Determined {
    U(u32),
    None,
    InfConsistent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeReport {
    pub parity: Parity,
    pub u_candidates: BTreeSet<u32>,
    /// Every `u >= tail` (and 2^inf) fits the visible lines.
    pub tail: Option<u32>,
    pub determined: Determined,
    pub depth: usize,
}

impl TypeReport {
    pub fn val(&self) -> Option<Val> {
        match self.determined {
            Determined::U(u) => Some(Val::Finite(u)),
            Determined::InfConsistent => Some(Val::Infinite),
            Determined::None => match (self.u_candidates.is_empty(), self.tail) {
                (true, Some(t)) => Some(Val::AtLeast(t)),
                _ => None,
            },
        }
    }
}

impl fmt::Display for TypeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parity = match self.parity {
            Parity::Odd => "odd",
            Parity::Even => "even",
            Parity::Undetermined => "undetermined",
        };
        let mut us: Vec<String> = self.u_candidates.iter().map(|u| u.to_string()).collect();
        if let Some(t) = self.tail {
            us.push(format!("{t}+"));
        }
        let det = match self.determined {
            Determined::U(u) => u.to_string(),
            Determined::None => "none".into(),
            Determined::InfConsistent => "inf-consistent".into(),
        };
        write!(f, "parity={parity} u={{{}}} determined={det} depth={}", us.join(","), self.depth)
    }
}

pub fn matches_j_or_jprime(p: &Patch) -> bool {
    let j = jacaranda_prefix(p.depth());
    p.agrees(&j) || p.agrees(&j.flip_root())
}

pub fn detect_type(p: &Patch) -> Result<TypeReport> {
    if p.depth() < 2 {
        return Err(Error::Shallow { need: 2, have: p.depth() });
    }
    report_from_levels(p, &level_candidates(p))
}

fn report_from_levels(p: &Patch, levels: &[Level]) -> Result<TypeReport> {
    if levels.is_empty() {
        return Err(Error::Inconsistent("no level of J fits these lines".into()));
    }
    let vals: Vec<Val> = levels.iter().map(|l| l.val(0)).collect();
    let odd = vals.iter().all(|v| *v == Val::Finite(0));
    let even = vals.iter().all(|v| *v != Val::Finite(0));
    let mut u_candidates = BTreeSet::new();
    let mut tail = None;
    for v in &vals {
        match *v {
            Val::Finite(u) => {
                u_candidates.insert(u);
            }
            Val::AtLeast(t) => tail = Some(t),
            Val::Infinite => tail = Some(0),
        }
    }
    let parity = if odd {
        Parity::Odd
    } else if even {
        Parity::Even
    } else {
        Parity::Undetermined
    };
    let determined = if parity == Parity::Even && matches_j_or_jprime(p) {
        Determined::InfConsistent
    } else if u_candidates.len() == 1 && tail.is_none() {
        Determined::U(*u_candidates.iter().next().unwrap())
    } else {
        Determined::None
    };
    Ok(TypeReport { parity, u_candidates, tail, determined, depth: p.depth() })
}

pub fn unsub_pow(p: &Patch, u: u32) -> Result<Patch> {
    Substitution::bbab().unsub_pow(p, u)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum XKind {
    Jac,
    JacPrime,
    Concrete(Patch),
}

/// An element of the orbit closure, symbolic for J and J', otherwise a finite patch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XDescriptor {
    pub kind: XKind,
    /// Site in J where the patch was read.
    pub provenance: Option<Address>,
}

impl XDescriptor {
    pub fn jac() -> XDescriptor {
        XDescriptor { kind: XKind::Jac, provenance: None }
    }

    pub fn jac_prime() -> XDescriptor {
        XDescriptor { kind: XKind::JacPrime, provenance: None }
    }

    pub fn concrete(p: Patch) -> XDescriptor {
        XDescriptor { kind: XKind::Concrete(p), provenance: None }
    }

    /// Subtree of a J-prefix at `w`, remembering where it came from.
    pub fn from_site(jprefix: &Patch, w: &Address) -> Result<XDescriptor> {
        Ok(XDescriptor { kind: XKind::Concrete(jprefix.subtree(w)?), provenance: Some(w.clone()) })
    }

    pub fn patch(&self) -> Option<&Patch> {
        match &self.kind {
            XKind::Concrete(p) => Some(p),
            _ => None,
        }
    }

    pub fn root(&self) -> Color {
        match &self.kind {
            XKind::Jac => 0,
            XKind::JacPrime => 1,
            XKind::Concrete(p) => p.root(),
        }
    }

    /// Level hypotheses: exact from provenance, otherwise residues read off the lines.
    pub fn levels(&self) -> Vec<Level> {
        match (&self.kind, &self.provenance) {
            (XKind::Jac | XKind::JacPrime, _) => vec![Level::Exact(0)],
            (_, Some(w)) => vec![Level::Exact(w.len() as u64)],
            (XKind::Concrete(p), None) => level_candidates(p),
        }
    }

    pub fn type_report(&self) -> Result<TypeReport> {
        match &self.kind {
            XKind::Concrete(p) if self.provenance.is_none() => detect_type(p),
            XKind::Concrete(p) => report_from_levels(p, &self.levels()),
            _ => Ok(TypeReport {
                parity: Parity::Even,
                u_candidates: BTreeSet::new(),
                tail: Some(0),
                determined: Determined::InfConsistent,
                depth: usize::MAX,
            }),
        }
    }
}

impl fmt::Display for XDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            XKind::Jac => f.write_str("J"),
            XKind::JacPrime => f.write_str("J'"),
            XKind::Concrete(p) => f.write_str(&p.inline()),
        }
    }
}

/// The 1-rooted sibling forced by a 0-rooted tree `b` of type `2^u`:
/// unsubstitute `u` times to `0(B', B'')`, replace by `1(B'', B'')`, substitute back.
pub fn brother_of(b: &Patch, u: Val) -> Result<Patch> {
    if b.root() != 0 {
        return Err(Error::Inconsistent("brother needs a 0-rooted tree".into()));
    }
    let t = b.depth();
    let u = match u {
        Val::Finite(u) => u,
        Val::AtLeast(m) if m >= 6 || (1usize << m) > t => return Ok(b.flip_root()),
        Val::AtLeast(m) => {
            return Err(Error::TypeUndetermined(format!("type at least 2^{m} at depth {t}")))
        }
        Val::Infinite => return Ok(b.flip_root()),
    };
    if u == 0 {
        if t == 0 {
            return Err(Error::Shallow { need: 1, have: 0 });
        }
        let bb = b.child(Letter::B);
        return Ok(Patch::join(1, &bb, &bb));
    }
    // H^u(0(..)) and H^u(1(..)) share lines 1..2^u - 1
    if u >= 6 || (1usize << u) > t {
        return Ok(b.flip_root());
    }
    let q = unsub_pow(b, u)?;
    if q.depth() == 0 {
        return Ok(b.truncate((1 << u) - 1).flip_root());
    }
    let qb = q.child(Letter::B);
    let core = Patch::join(1, &qb, &qb);
    Ok(Substitution::bbab().apply_pow(&core, u).truncate(t))
}

pub fn brother(b: &XDescriptor) -> Result<XDescriptor> {
    let p = match &b.kind {
        XKind::Jac => return Ok(XDescriptor::jac_prime()),
        XKind::JacPrime => {
            return Err(Error::Inconsistent("brother needs a 0-rooted tree".into()))
        }
        XKind::Concrete(p) => p,
    };
    let u = match &b.provenance {
        Some(w) => Level::Exact(w.len() as u64).val(0),
        None => {
            let rep = detect_type(p)?;
            match rep.parity {
                Parity::Odd => Val::Finite(0),
                Parity::Even => rep.val().ok_or_else(|| Error::TypeUndetermined(rep.to_string()))?,
                Parity::Undetermined => return Err(Error::TypeUndetermined(rep.to_string())),
            }
        }
    };
    let a = brother_of(p, u)?;
    let provenance = b.provenance.as_ref().and_then(|w| match w.0.last() {
        Some(Letter::B) => {
            let mut s = w.clone();
            *s.0.last_mut().unwrap() = Letter::A;
            Some(s)
        }
        _ => None,
    });
    Ok(XDescriptor { kind: XKind::Concrete(a), provenance })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvenCase {
    /// `H^v(c(D, D))` with `D` of type `2^u`, `u >= 2`.
    DoubledU2,
    /// `H^v(1(D, D))` with `D` of type 2.
    DoubledU1Root1,
    /// `H^v(0(E, D))` with `E` rooted at 1.
    MixedRoot0,
}

impl fmt::Display for EvenCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EvenCase::DoubledU2 => "doubled-u>=2",
            EvenCase::DoubledU1Root1 => "doubled-u=1-root1",
            EvenCase::MixedRoot0 => "mixed-root0",
        })
    }
}

/// Type of a parent read off one of its children: the parent sits one level above.
pub fn parent_vals_from_side(side: &Patch) -> BTreeSet<Val> {
    level_candidates(side).iter().map(|l| l.val(-1)).collect()
}

/// Which of the three even-tree shapes `a` has, and its index `v`.
pub fn classify_even(a: &XDescriptor, side: Letter) -> Result<(EvenCase, Val)> {
    let p = match &a.kind {
        XKind::Jac | XKind::JacPrime => return Ok((EvenCase::MixedRoot0, Val::Infinite)),
        XKind::Concrete(p) => p,
    };
    if p.depth() < 2 {
        return Err(Error::Shallow { need: 2, have: p.depth() });
    }
    let levels: Vec<Level> = match &a.provenance {
        Some(w) => vec![Level::Exact(w.len() as u64)],
        None => {
            let from_side = level_candidates(&p.child(side));
            from_side
                .iter()
                .filter_map(|l| match *l {
                    Level::Residue { r, bits } => {
                        let m = 1u64 << bits;
                        Some(Level::Residue { r: (r + m - 1) % m, bits })
                    }
                    Level::Exact(x) => x.checked_sub(1).map(Level::Exact),
                })
                .filter(|l| level_consistent_residue(p, *l))
                .collect()
        }
    };
    let mut outcomes = BTreeSet::new();
    let mut open = Vec::new();
    for lvl in &levels {
        let v = lvl.val(0);
        if v == Val::Finite(0) {
            continue;
        }
        for v in v.expand() {
            match even_case_at(p, *lvl, v) {
                Ok(o) => {
                    outcomes.insert((o.0 as u8, o.1));
                }
                Err(Error::Undetermined(c)) => open.extend(c),
                Err(e) => open.push(e.to_string()),
            }
        }
    }
    let cases: BTreeSet<u8> = outcomes.iter().map(|x| x.0).collect();
    if open.is_empty() && cases.len() == 1 {
        let case = [EvenCase::DoubledU2, EvenCase::DoubledU1Root1, EvenCase::MixedRoot0]
            [*cases.iter().next().unwrap() as usize];
        let vs: BTreeSet<Val> = outcomes.iter().map(|x| x.1).collect();
        let v = match vs.iter().filter_map(|v| v.finite()).min() {
            _ if vs.len() == 1 => *vs.iter().next().unwrap(),
            Some(lo) => Val::AtLeast(lo),
            None => Val::Infinite,
        };
        return Ok((case, v));
    }
    let mut names: Vec<String> = cases
        .iter()
        .map(|&c| {
            [EvenCase::DoubledU2, EvenCase::DoubledU1Root1, EvenCase::MixedRoot0][c as usize].to_string()
        })
        .collect();
    names.extend(open);
    Err(Error::Undetermined(names))
}

fn level_consistent_residue(p: &Patch, l: Level) -> bool {
    match l {
        Level::Exact(x) => level_consistent(p, x),
        Level::Residue { r, bits } => {
            let m = 1u64 << bits;
            (0..=p.depth()).all(|j| {
                let x = (r + j as u64) % m;
                x == 0 || line_fits(p.level(j), x.trailing_zeros())
            })
        }
    }
}

fn even_case_at(p: &Patch, lvl: Level, v: Val) -> Result<(EvenCase, Val)> {
    let v_fin = match v {
        Val::Finite(v) if (1usize << v.min(20)) <= p.depth() => v,
        _ => {
            if matches_j_or_jprime(p) {
                return Ok((EvenCase::MixedRoot0, Val::Infinite));
            }
            return Err(Error::Undetermined(vec![format!("v={v} exceeds depth {}", p.depth())]));
        }
    };
    let q = unsub_pow(p, v_fin)?;
    if q.depth() == 0 {
        return Err(Error::Undetermined(vec![format!("unsubstituted tree too shallow at v={v_fin}")]));
    }
    let (e, d) = (q.get_at(1, 0), q.get_at(1, 1));
    match (e, d) {
        (1, 0) if q.root() == 0 => Ok((EvenCase::MixedRoot0, v)),
        (0, 0) => {
            let d_type = lvl.halve(v_fin).map(|h| h.val(1));
            match d_type {
                Some(t) if t.at_least(2) => Ok((EvenCase::DoubledU2, v)),
                Some(Val::Finite(1)) if q.root() == 1 => Ok((EvenCase::DoubledU1Root1, v)),
                Some(Val::Finite(1)) => Err(Error::Inconsistent("type-2 doubled child under root 0".into())),
                _ => Err(Error::Undetermined(vec!["doubled-u>=2".into(), "doubled-u=1-root1".into()])),
            }
        }
        _ => Err(Error::Inconsistent(format!("unsubstituted root has children {e}{d}"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZeroAtEven {
    pub holds: bool,
    /// Smallest `N` for which every path of `N` steps meets a 0 at an even level.
    pub minimal: Option<usize>,
}

/// Longest forward run avoiding `hit`, for every site of levels `0..=last`.
fn avoid_lengths(last: usize, hit: impl Fn(usize, u64) -> bool) -> Vec<Vec<i64>> {
    let mut g: Vec<Vec<i64>> = vec![Vec::new(); last + 1];
    for l in (0..=last).rev() {
        g[l] = (0..1u64 << l)
            .map(|i| {
                if hit(l, i) {
                    -1
                } else if l == last {
                    0
                } else {
                    let below = &g[l + 1];
                    1 + below[2 * i as usize].max(below[2 * i as usize + 1]).max(-1)
                }
            })
            .collect();
    }
    g
}

fn window_holds(g: &[Vec<i64>], n: usize, reach: usize) -> bool {
    (0..=reach.saturating_sub(n))
        .take_while(|&l| l + n <= reach)
        .all(|l| g[l].iter().all(|&x| x < n as i64))
}

pub fn zero_at_even_within(p: &Patch, n: usize) -> Result<ZeroAtEven> {
    if n > p.depth() {
        return Err(Error::Shallow { need: n, have: p.depth() });
    }
    let d = p.depth();
    let g = avoid_lengths(d, |l, i| l % 2 == 0 && p.get_at(l, i) == 0);
    let minimal = (0..=d).find(|&k| window_holds(&g, k, d));
    Ok(ZeroAtEven { holds: window_holds(&g, n, d), minimal })
}

/// Smallest `N` such that every forward path of `N` steps, started at any site with
/// room below it, meets a site whose depth-`m` patch agrees with J.
pub fn recurrence_probe(p: &Patch, m: usize) -> Result<usize> {
    if p.depth() < m + 1 {
        return Err(Error::Shallow { need: m + 1, have: p.depth() });
    }
    let reach = p.depth() - m;
    let mut interner = Interner::new();
    let target = interner.intern(&jacaranda_prefix(m));
    let ids = interner.subtree_ids(p, m)?;
    let g = avoid_lengths(reach, |l, i| ids[l][i as usize] == target);
    // keep at least the first level of sites in range
    (0..reach)
        .find(|&k| window_holds(&g, k, reach))
        .ok_or_else(|| Error::NotFound(format!("no N <= {} works at m={m}", reach - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn addr(s: &str) -> Address {
        s.parse().unwrap()
    }

    #[test]
    fn prefixes() {
        assert_eq!(jacaranda_prefix(1).inline(), "0/10");
        assert_eq!(jprime_prefix(1).inline(), "1/10");
        assert_eq!(jacaranda_prefix(2).inline(), "0/10/0010");
        assert_eq!(jprime_prefix(2).inline(), "1/10/0010");
        assert_eq!(jacaranda_prefix(0).inline(), "0");
        assert_eq!(jprime_prefix(0).inline(), "1");
        assert_eq!(jacaranda_prefix(4).get(&addr("aaaa")).unwrap(), 0);
        assert_eq!(jacaranda_prefix(3).subtree(&addr("b")).unwrap().inline(), "0/10/1010");
    }

    #[test]
    fn digit_oracle_matches_generation() {
        let j = jacaranda_prefix(12);
        for l in 0..=12 {
            for i in 0..1u64 << l {
                assert_eq!(jacaranda_digit_at(l, i), j.get_at(l, i), "level {l} index {i}");
            }
        }
    }

    #[test]
    fn types_of_subtrees() {
        let j = jacaranda_prefix(16);
        let a = detect_type(&j.subtree(&addr("a")).unwrap()).unwrap();
        assert_eq!(a.parity, Parity::Odd);
        let ba = detect_type(&j.subtree(&addr("ba")).unwrap()).unwrap();
        assert_eq!(ba.parity, Parity::Even);
        assert_eq!(ba.determined, Determined::U(1));
        let jr = detect_type(&j).unwrap();
        assert_eq!(jr.determined, Determined::InfConsistent);
        assert!(jr.to_string().starts_with("parity=even"));
        assert!(detect_type(&Patch::leaf(0)).is_err());
        assert!(matches!(detect_type(&Patch::constant(1, 3)), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn unsub_pow_examples() {
        let j7 = jacaranda_prefix(7);
        assert_eq!(unsub_pow(&j7, 1).unwrap(), jacaranda_prefix(3));
        let odd = jacaranda_prefix(10).subtree(&addr("a")).unwrap();
        assert!(matches!(unsub_pow(&odd, 1), Err(Error::NotInImage(_))));
    }

    #[test]
    fn brother_examples() {
        let b = Patch::parse_inline("0/10/0010").unwrap();
        assert_eq!(brother_of(&b, Val::Finite(0)).unwrap().inline(), "1/00/1010");
        let j = jacaranda_prefix(12);
        assert_eq!(brother_of(&j, Val::Infinite).unwrap(), jprime_prefix(12));
        let bro = brother(&XDescriptor::from_site(&j, &addr("bb")).unwrap()).unwrap();
        assert_eq!(bro.provenance, Some(addr("ba")));
        assert!(j.subtree(&addr("ba")).unwrap().agrees(bro.patch().unwrap()));
    }

    #[test]
    fn even_classification() {
        let j = jacaranda_prefix(16);
        assert_eq!(classify_even(&XDescriptor::jac(), Letter::A).unwrap(), (EvenCase::MixedRoot0, Val::Infinite));
        let x = XDescriptor::from_site(&j, &addr("aa")).unwrap();
        let (case, v) = classify_even(&x, Letter::A).unwrap();
        assert_eq!(case, EvenCase::MixedRoot0);
        assert_eq!(v, Val::Finite(1));
    }

    #[test]
    fn zero_at_even() {
        let j = jacaranda_prefix(14);
        let z = zero_at_even_within(&j, 10).unwrap();
        assert!(z.holds);
        assert!(!zero_at_even_within(&j, 1).unwrap().holds);
        assert!(!zero_at_even_within(&Patch::constant(1, 6), 3).unwrap().holds);
        assert!(z.minimal.unwrap() <= 10);
    }

    #[test]
    fn recurrence() {
        let j = jacaranda_prefix(14);
        assert!(recurrence_probe(&j, 0).unwrap() <= 10);
        assert!(recurrence_probe(&j, 1).is_ok());
        let abba = Substitution::abba().fixed_point_prefix(0, 14).unwrap();
        assert!(matches!(recurrence_probe(&abba, 1), Err(Error::NotFound(_))));
    }
}

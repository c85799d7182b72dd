//! One-step preimages of elements of the orbit closure of J: the case-by-case sets,
//! a brute-force scan of generated prefixes, iterated counts and a cross-check of the two.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::jacaranda::{brother_of, jacaranda_prefix, jprime_prefix, unsub_pow, Level, Val, XDescriptor, XKind};
use crate::substitution::Substitution;
use crate::tree::{Color, Interner, Letter, NodeId, Patch};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sibling {
    Patch(Patch),
    Jac,
    JacPrime,
    /// Nothing below the given tree was visible.
    Unknown,
}

impl Sibling {
    fn concrete(&self, depth: usize) -> Option<Patch> {
        match self {
            Sibling::Patch(p) => Some(p.clone()),
            Sibling::Jac => Some(jacaranda_prefix(depth)),
            Sibling::JacPrime => Some(jprime_prefix(depth)),
            Sibling::Unknown => None,
        }
    }
}

impl fmt::Display for Sibling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sibling::Patch(p) => f.write_str(&p.inline()),
            Sibling::Jac => f.write_str("J"),
            Sibling::JacPrime => f.write_str("J'"),
            Sibling::Unknown => f.write_str("?"),
        }
    }
}

/// A parent `root(A, sibling)` (side a) or `root(sibling, A)` (side b) of a given tree `A`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PreimageDescriptor {
    pub case: String,
    pub root: Color,
    pub side: Letter,
    pub sibling: Sibling,
}

impl PreimageDescriptor {
    fn new(case: &str, root: Color, side: Letter, sibling: Sibling) -> PreimageDescriptor {
        PreimageDescriptor { case: case.to_string(), root, side, sibling }
    }

    /// The parent as a patch, given the patch of `A`; `None` when the sibling is unknown.
    pub fn parent(&self, given: &Patch) -> Option<Patch> {
        let sib = self.sibling.concrete(given.depth())?;
        Some(match self.side {
            Letter::A => Patch::join(self.root, given, &sib),
            Letter::B => Patch::join(self.root, &sib, given),
        })
    }

    /// Whether the found parent `p` is compatible with this descriptor on their common depth.
    pub fn matches(&self, given: &Patch, p: &Patch) -> bool {
        if p.root() != self.root {
            return false;
        }
        match self.parent(given) {
            Some(q) => q.agrees(p),
            None => p.depth() == 0 || p.child(self.side).agrees(given),
        }
    }

    /// Shape key: members describing the same tree collapse.
    fn key(&self, given: &Patch) -> (Color, Option<Patch>, Letter, String) {
        match self.parent(given) {
            Some(p) => (self.root, Some(p), Letter::A, String::new()),
            None => (self.root, None, self.side, self.sibling.to_string()),
        }
    }
}

impl fmt::Display for PreimageDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case={} root={} side={} sibling={}", self.case, self.root, self.side.lower(), self.sibling)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Completeness {
    Exact,
    LowerBound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreimageSet {
    pub members: Vec<PreimageDescriptor>,
    pub completeness: Completeness,
}

impl PreimageSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

impl fmt::Display for PreimageSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.members {
            writeln!(f, "{m}")?;
        }
        Ok(())
    }
}

/// One consistent reading of the case analysis and the preimages it yields.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub case: String,
    pub members: Vec<PreimageDescriptor>,
}

fn scenario(case: &str, given: &Patch, members: Vec<(Color, Letter, Sibling)>) -> Scenario {
    let mut seen = HashSet::new();
    let members = members
        .into_iter()
        .map(|(r, s, sib)| PreimageDescriptor::new(case, r, s, sib))
        .filter(|m| seen.insert(m.key(given)))
        .collect();
    Scenario { case: case.to_string(), members }
}

fn line_has_one(p: &Patch, l: usize) -> bool {
    p.level(l).contains(&1)
}

fn sib(p: Patch) -> Sibling {
    Sibling::Patch(p)
}

fn brother_or_unknown(b: &Patch, u: Val) -> Sibling {
    brother_of(b, u).map(Sibling::Patch).unwrap_or(Sibling::Unknown)
}

/// Odd tree with root 1: `A = 1(D, D)`; parents only through side a.
fn odd_root1(t: &Patch, lvl: Level, out: &mut Vec<Scenario>) -> Result<()> {
    use Letter::A;
    if t.depth() == 0 {
        out.push(scenario("P6.1", t, vec![(0, A, Sibling::Unknown), (1, A, Sibling::Unknown)]));
        return Ok(());
    }
    let d = t.child(Letter::A);
    if !d.agrees(&t.child(Letter::B)) || d.root() != 0 {
        return Err(Error::Inconsistent("odd tree with root 1 needs equal 0-rooted children".into()));
    }
    for k in lvl.val(1).expand() {
        let f = brother_or_unknown(&d, k);
        let b = match &f {
            Sibling::Patch(f) => sib(Patch::join(0, f, &d)),
            _ => Sibling::Unknown,
        };
        let b2 = sib(Patch::join(0, &d, &d));
        for v in lvl.val(-1).expand() {
            match v {
                Val::Finite(1) => {
                    if k.at_least(3) {
                        out.push(scenario("P6.1-2a", t, vec![(0, A, b2.clone()), (1, A, b2.clone()), (0, A, b.clone())]));
                    } else if k == Val::Finite(2) {
                        out.push(scenario("P6.1-2b", t, vec![(1, A, b2.clone()), (0, A, b.clone())]));
                    }
                }
                Val::Infinite => out.push(scenario("P6.1-1inf", t, vec![(0, A, b.clone()), (1, A, b.clone())])),
                Val::Finite(v) if k == Val::Finite(1) => {
                    let one_c = scenario("P6.1-1c", t, vec![(0, A, b.clone())]);
                    let one_a = scenario("P6.1-1a", t, vec![(0, A, b.clone()), (1, A, b.clone())]);
                    let one_b = scenario("P6.1-1b", t, vec![(1, A, b.clone())]);
                    line_class(t, lvl, v, one_a, one_b, one_c, out);
                }
                _ => {}
            }
        }
    }
    Ok(())
}

/// Picks among the three sub-cases decided by line `2^v - 1`: ones present (c), or zeros with the
/// subtrees on that line of type at least `2^(v+2)` (a) or exactly `2^(v+1)` (b).
fn line_class(t: &Patch, lvl: Level, v: u32, a: Scenario, b: Scenario, c: Scenario, out: &mut Vec<Scenario>) {
    let l = (1usize << v.min(40)) - 1;
    if l > t.depth() {
        out.extend([a, b, c]);
        return;
    }
    if line_has_one(t, l) {
        out.push(c);
        return;
    }
    for w in lvl.val(l as i64).expand() {
        if w.at_least(v + 2) {
            out.push(a.clone());
        } else if w == Val::Finite(v + 1) {
            out.push(b.clone());
        }
    }
}

/// Odd tree with root 0: `B = 0(B', B'')`, brother `1(B'', B'')`; parents only through side b.
fn odd_root0(t: &Patch, lvl: Level, out: &mut Vec<Scenario>) -> Result<()> {
    use Letter::B;
    if t.depth() == 0 {
        out.push(scenario("P6.2", t, vec![(0, B, Sibling::Unknown), (1, B, Sibling::Unknown)]));
        return Ok(());
    }
    let bb = t.child(Letter::B);
    let a = sib(Patch::join(1, &bb, &bb));
    let (b1, b2) = (t.get_at(1, 0), t.get_at(1, 1));
    if b2 != 0 {
        return Err(Error::Inconsistent("odd tree with root 0 needs a 0-rooted b-child".into()));
    }
    for k in lvl.val(1).expand() {
        for v in lvl.val(-1).expand() {
            if b1 == 0 {
                if k.at_least(3) {
                    out.push(scenario("P6.2-1a", t, vec![(0, B, a.clone()), (1, B, a.clone())]));
                } else if k == Val::Finite(2) {
                    out.push(scenario("P6.2-1b", t, vec![(1, B, a.clone())]));
                }
                continue;
            }
            match v {
                Val::Infinite => out.push(scenario("P6.2-inf", t, vec![(0, B, a.clone()), (1, B, a.clone())])),
                _ if k.at_least(2) => out.push(scenario("P6.2-2a", t, vec![(0, B, a.clone())])),
                Val::Finite(v) if v >= 2 => {
                    let i = scenario("P6.2-2b-i", t, vec![(0, B, a.clone()), (1, B, a.clone())]);
                    let ii = scenario("P6.2-2b-ii", t, vec![(1, B, a.clone())]);
                    let iii = scenario("P6.2-2b-iii", t, vec![(0, B, a.clone())]);
                    line_class(t, lvl, v, i, ii, iii, out);
                }
                _ => {}
            }
        }
    }
    Ok(())
}

fn even_root0(t: &Patch, u: Val, out: &mut Vec<Scenario>) {
    use Letter::{A, B};
    let same = sib(t.clone());
    match u {
        Val::Infinite => out.push(scenario(
            "P6.5",
            t,
            vec![(0, A, same.clone()), (1, A, same), (0, B, sib(t.flip_root()))],
        )),
        Val::Finite(1) => {
            let bro = brother_or_unknown(t, u);
            out.push(scenario("P6.4", t, vec![(1, A, same), (0, B, bro)]));
        }
        _ => {
            let bro = brother_or_unknown(t, u);
            out.push(scenario("P6.3", t, vec![(0, A, same.clone()), (1, A, same), (0, B, bro)]));
        }
    }
}

/// Even tree with root 1: `A = H^u(1(C, C))` with `C` of type `2^v`.
fn even_root1(t: &Patch, lvl: Level, u: Val, out: &mut Vec<Scenario>) {
    use Letter::A;
    let flipped = sib(t.flip_root());
    let u = match u {
        Val::Infinite => {
            out.push(scenario("P6.7", t, vec![(0, A, flipped)]));
            return;
        }
        Val::Finite(u) => u,
        Val::AtLeast(_) => unreachable!("expanded"),
    };
    let h = Substitution::bbab();
    let c = if u < 40 && (1usize << u) <= t.depth() {
        unsub_pow(t, u).ok().filter(|q| q.depth() >= 1).map(|q| q.child(Letter::A))
    } else {
        None
    };
    let vs = lvl.halve(u).map(|l| l.val(1)).unwrap_or(Val::AtLeast(1));
    for v in vs.expand() {
        let b = match &c {
            Some(c) => match brother_of(c, v) {
                Ok(d) => sib(h.apply_pow(&Patch::join(0, &d, c), u).truncate(t.depth())),
                Err(_) => flipped.clone(),
            },
            // only the lines shared with H^u(0) are visible
            None => sib(t.truncate(((1usize << u.min(40)) - 1).min(t.depth())).flip_root()),
        };
        if v == Val::Finite(1) {
            out.push(scenario("P6.6-1", t, vec![(0, A, b)]));
        } else if v.at_least(2) {
            out.push(scenario("P6.6-2", t, vec![(0, A, b), (0, A, flipped.clone())]));
        }
    }
}

/// All readings of the case analysis for the tree `t` sitting at level `lvl` of J.
pub fn scenarios_at(t: &Patch, lvl: Level) -> Result<Vec<Scenario>> {
    let mut out = Vec::new();
    for u in lvl.val(0).expand() {
        match (u, t.root()) {
            (Val::Finite(0), 1) => odd_root1(t, lvl, &mut out)?,
            (Val::Finite(0), _) => odd_root0(t, lvl, &mut out)?,
            (u, 0) => even_root0(t, u, &mut out),
            (u, _) => even_root1(t, lvl, u, &mut out),
        }
    }
    Ok(out)
}

fn symbolic(a: &XDescriptor) -> Option<PreimageSet> {
    use Letter::{A, B};
    let members = match a.kind {
        XKind::Jac => vec![
            PreimageDescriptor::new("P6.5", 0, A, Sibling::Jac),
            PreimageDescriptor::new("P6.5", 1, A, Sibling::Jac),
            PreimageDescriptor::new("P6.5", 0, B, Sibling::JacPrime),
        ],
        XKind::JacPrime => vec![PreimageDescriptor::new("P6.7", 0, A, Sibling::Jac)],
        XKind::Concrete(_) => return None,
    };
    Some(PreimageSet { members, completeness: Completeness::Exact })
}

/// Union of every consistent reading, with the case tags involved and whether they all agree.
#[derive(Debug, Clone)]
pub struct Candidates {
    pub set: PreimageSet,
    pub cases: Vec<String>,
    pub determined: bool,
}

pub fn preimage_candidates(a: &XDescriptor) -> Result<Candidates> {
    if let Some(set) = symbolic(a) {
        let cases = vec![set.members[0].case.clone()];
        return Ok(Candidates { set, cases, determined: true });
    }
    let t = a.patch().expect("concrete");
    let levels = a.levels();
    if levels.is_empty() {
        return Err(Error::Inconsistent("no level of J fits these lines".into()));
    }
    let mut all = Vec::new();
    for lvl in levels {
        match scenarios_at(t, lvl) {
            Ok(s) => all.extend(s),
            Err(Error::Inconsistent(_)) => {}
            Err(e) => return Err(e),
        }
    }
    if all.is_empty() {
        return Err(Error::Inconsistent("no case of the analysis applies".into()));
    }
    Ok(merge(t, all))
}

fn merge(t: &Patch, all: Vec<Scenario>) -> Candidates {
    let shapes: BTreeSet<Vec<_>> = all
        .iter()
        .map(|s| {
            let mut k: Vec<_> = s.members.iter().map(|m| m.key(t)).collect();
            k.sort();
            k
        })
        .collect();
    let cases: Vec<String> = all.iter().map(|s| s.case.clone()).collect::<BTreeSet<_>>().into_iter().collect();
    let mut seen = HashSet::new();
    let mut members: Vec<PreimageDescriptor> = all
        .into_iter()
        .flat_map(|s| s.members)
        .filter(|m| seen.insert(m.key(t)))
        .collect();
    members.sort();
    let exact = members.iter().all(|m| m.sibling != Sibling::Unknown);
    Candidates {
        set: PreimageSet {
            members,
            completeness: if exact { Completeness::Exact } else { Completeness::LowerBound },
        },
        cases,
        determined: shapes.len() == 1,
    }
}

pub fn preimages_classified(a: &XDescriptor) -> Result<PreimageSet> {
    let c = preimage_candidates(a)?;
    if !c.determined {
        return Err(Error::Undetermined(c.cases));
    }
    Ok(c.set)
}

/// Distinct depth-`(d+1)` patches of `jprefix` having `a` as a child.
pub fn preimages_bruteforce(a: &Patch, jprefix: &Patch) -> Result<PreimageSet> {
    let d = a.depth();
    if d + 1 > jprefix.depth() {
        return Err(Error::Shallow { need: d + 1, have: jprefix.depth() });
    }
    let mut interner = Interner::new();
    let target = interner.intern(a);
    let ids = interner.subtree_ids(jprefix, d)?;
    let mut found = BTreeSet::new();
    for l in 0..jprefix.depth() - d {
        for i in 0..1u64 << l {
            let (ia, ib) = (ids[l + 1][2 * i as usize], ids[l + 1][2 * i as usize + 1]);
            if ia == target || ib == target {
                found.insert(jprefix.subtree_at_depth(l, i, d + 1));
            }
        }
    }
    let members = found
        .into_iter()
        .map(|p| {
            let side = if p.child(Letter::A) == *a { Letter::A } else { Letter::B };
            PreimageDescriptor::new("bruteforce", p.root(), side, Sibling::Patch(p.child(side.other())))
        })
        .collect();
    Ok(PreimageSet { members, completeness: Completeness::LowerBound })
}

/// For every depth-`d` patch of `jprefix`, the number of distinct depth-`(d+n)` patches
/// having it at distance `n` below the root. Keys are the patches themselves.
pub fn preimage_census(jprefix: &Patch, d: usize, n: usize) -> Result<Vec<(Patch, usize)>> {
    if d + n > jprefix.depth() {
        return Err(Error::Shallow { need: d + n, have: jprefix.depth() });
    }
    let mut interner = Interner::new();
    let small = interner.subtree_ids(jprefix, d)?;
    let big = interner.subtree_ids(jprefix, d + n)?;
    let mut parents: HashMap<NodeId, HashSet<NodeId>> = HashMap::new();
    let mut rep: HashMap<NodeId, (usize, u64)> = HashMap::new();
    for (l, row) in small.iter().enumerate() {
        for (i, id) in row.iter().enumerate() {
            rep.entry(*id).or_insert((l, i as u64));
            parents.entry(*id).or_default();
        }
    }
    for (l, row) in big.iter().enumerate() {
        for (i, pid) in row.iter().enumerate() {
            for k in 0..1usize << n {
                let child = small[l + n][(i << n) + k];
                parents.get_mut(&child).expect("seen").insert(*pid);
            }
        }
    }
    let mut out: Vec<(Patch, usize)> = parents
        .into_iter()
        .map(|(id, ps)| {
            let (l, i) = rep[&id];
            (jprefix.subtree_at_depth(l, i, d), ps.len())
        })
        .collect();
    out.sort();
    Ok(out)
}

/// One-step parents of depth `d+1`, counted separately for each depth-`(d+k)` extension of
/// the child. Keys are the extensions.
pub fn context_census(jprefix: &Patch, d: usize, k: usize) -> Result<Vec<(Patch, usize)>> {
    if d + k + 1 > jprefix.depth() {
        return Err(Error::Shallow { need: d + k + 1, have: jprefix.depth() });
    }
    let mut interner = Interner::new();
    let ext = interner.subtree_ids(jprefix, d + k)?;
    let par = interner.subtree_ids(jprefix, d + 1)?;
    let mut parents: HashMap<NodeId, (usize, u64, HashSet<NodeId>)> = HashMap::new();
    for (l, row) in ext.iter().enumerate().skip(1) {
        for (i, id) in row.iter().enumerate() {
            let e = parents.entry(*id).or_insert_with(|| (l, i as u64, HashSet::new()));
            e.2.insert(par[l - 1][i / 2]);
        }
    }
    let mut out: Vec<(Patch, usize)> = parents
        .into_values()
        .map(|(l, i, ps)| (jprefix.subtree_at_depth(l, i, d + k), ps.len()))
        .collect();
    out.sort();
    Ok(out)
}

/// Number of distinct depth-`(d+n)` patches of `jprefix` with `a` at distance `n` below the root.
pub fn p_n(a: &Patch, n: usize, jprefix: &Patch) -> Result<usize> {
    let d = a.depth();
    if d + n > jprefix.depth() {
        return Err(Error::Shallow { need: d + n, have: jprefix.depth() });
    }
    if n == 0 {
        return Ok(1);
    }
    let mut interner = Interner::new();
    let target = interner.intern(a);
    let small = interner.subtree_ids(jprefix, d)?;
    let big = interner.subtree_ids(jprefix, d + n)?;
    let mut found = HashSet::new();
    for (l, row) in big.iter().enumerate() {
        for (i, pid) in row.iter().enumerate() {
            if (0..1usize << n).any(|k| small[l + n][(i << n) + k] == target) {
                found.insert(*pid);
            }
        }
    }
    Ok(found.len())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub parent_site: (usize, u64),
    pub parent: String,
    pub cases: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub depth: usize,
    pub occurrences: usize,
    pub parents_found: usize,
    pub mismatches: Vec<Mismatch>,
    /// Classified parents never seen in the prefix, with their case tags.
    pub limit_only: Vec<String>,
}

/// Classification of every site of a J-prefix, computed from the full subtree below it.
pub struct SiteTable {
    jprefix: Patch,
    scenarios: Vec<Vec<std::result::Result<Vec<Scenario>, String>>>,
}

impl SiteTable {
    pub fn new(jprefix: &Patch) -> SiteTable {
        let scenarios = (0..=jprefix.depth())
            .map(|l| {
                (0..1u64 << l)
                    .into_par_iter()
                    .map(|i| {
                        let t = jprefix.subtree_at(l, i);
                        scenarios_at(&t, Level::Exact(l as u64)).map_err(|e| e.to_string())
                    })
                    .collect()
            })
            .collect();
        SiteTable { jprefix: jprefix.clone(), scenarios }
    }

    pub fn jprefix(&self) -> &Patch {
        &self.jprefix
    }

    /// Checks every depth-`d` subpatch at once.
    pub fn crosscheck_depth(&self, d: usize) -> Result<Vec<CrosscheckReport>> {
        let census = crate::tree::distinct_subpatches(&self.jprefix, d)?;
        Ok(census.patches.par_iter().map(|a| self.crosscheck_patch(a, None)).collect())
    }

    fn crosscheck_patch(&self, a: &Patch, own: Option<&Candidates>) -> CrosscheckReport {
        let j = &self.jprefix;
        let d = a.depth();
        let dd = j.depth();
        let mut occurrences = 0;
        let mut found: BTreeSet<Patch> = BTreeSet::new();
        let mut mismatches = Vec::new();
        let mut classified: Vec<(PreimageDescriptor, Patch)> = Vec::new();
        for l in 1..=dd - d {
            for i in 0..1u64 << l {
                if j.subtree_at_depth(l, i, d) != *a {
                    continue;
                }
                occurrences += 1;
                let t = j.subtree_at(l, i);
                let members: Vec<PreimageDescriptor> = match &self.scenarios[l][i as usize] {
                    Ok(s) => s.iter().flat_map(|s| s.members.clone()).collect(),
                    Err(_) => Vec::new(),
                };
                let cases: Vec<String> = members.iter().map(|m| m.case.clone()).collect();
                classified.extend(members.iter().map(|m| (m.clone(), t.clone())));
                if l + d < dd {
                    let parent = j.subtree_at_depth(l - 1, i / 2, d + 1);
                    let ok = members.iter().any(|m| m.matches(&t, &parent));
                    if !ok {
                        mismatches.push(Mismatch { parent_site: (l - 1, i / 2), parent: parent.inline(), cases });
                    }
                    found.insert(parent);
                }
            }
        }
        if let Some(c) = own {
            classified.extend(c.set.members.iter().map(|m| (m.clone(), a.clone())));
        }
        let mut limit_only = BTreeSet::new();
        for (m, t) in &classified {
            if matches!(m.sibling, Sibling::Unknown) {
                continue;
            }
            if !found.iter().any(|p| m.matches(t, p)) {
                limit_only.insert(m.to_string());
            }
        }
        CrosscheckReport {
            depth: d,
            occurrences,
            parents_found: found.len(),
            mismatches,
            limit_only: limit_only.into_iter().collect(),
        }
    }
}

/// Every brute-force parent of `a` in `jprefix` must fit the classified set of the occurrence below it.
pub fn crosscheck(a: &XDescriptor, jprefix: &Patch) -> Result<CrosscheckReport> {
    let p = a.patch().ok_or_else(|| Error::Unsupported("crosscheck needs a concrete patch".into()))?;
    if p.depth() + 1 > jprefix.depth() {
        return Err(Error::Shallow { need: p.depth() + 1, have: jprefix.depth() });
    }
    let own = preimage_candidates(a).ok();
    Ok(SiteTable::new(jprefix).crosscheck_patch(p, own.as_ref()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::Address;

    fn addr(s: &str) -> Address {
        s.parse().unwrap()
    }

    #[test]
    fn symbolic_sets() {
        let j = preimages_classified(&XDescriptor::jac()).unwrap();
        assert_eq!(j.len(), 3);
        let jp = preimages_classified(&XDescriptor::jac_prime()).unwrap();
        assert_eq!(jp.len(), 1);
        assert_eq!(jp.members[0].to_string(), "case=P6.7 root=0 side=a sibling=J");
    }

    #[test]
    fn bruteforce_examples() {
        let j = jacaranda_prefix(14);
        // a finite ball mixes several level classes of J
        let a = j.truncate(2);
        assert_eq!(preimages_bruteforce(&a, &j).unwrap().len(), 4);
        assert!(preimages_bruteforce(&Patch::constant(1, 2), &j).unwrap().is_empty());
        let odd = Patch::parse_inline("1/00").unwrap();
        let set = preimages_bruteforce(&odd, &j).unwrap();
        assert!(!set.is_empty());
        assert!(set.members.iter().all(|m| m.side == Letter::A));
    }

    #[test]
    fn p_n_examples() {
        let j = jacaranda_prefix(14);
        let a = j.truncate(2);
        assert_eq!(p_n(&a, 1, &j).unwrap(), 4);
        assert_eq!(p_n(&a, 0, &j).unwrap(), 1);
        assert!(p_n(&a, 3, &j).unwrap() <= 27);
        let census = preimage_census(&j, 2, 1).unwrap();
        assert_eq!(census.iter().find(|(p, _)| *p == a).unwrap().1, 4);
    }

    #[test]
    fn context_resolves_levels() {
        let j = jacaranda_prefix(14);
        for d in 0..=6 {
            assert!(context_census(&j, d, 4).unwrap().iter().all(|(_, c)| *c <= 3));
        }
    }

    #[test]
    fn even_root0_type4_has_three() {
        let j = jacaranda_prefix(14);
        let x = XDescriptor::from_site(&j, &addr("aaaa")).unwrap();
        let set = preimages_classified(&x).unwrap();
        assert_eq!(set.members[0].case, "P6.3");
        assert_eq!(set.len(), 3);
    }

    #[test]
    fn crosscheck_small() {
        let j = jacaranda_prefix(12);
        let table = SiteTable::new(&j);
        for d in 0..=3 {
            for r in table.crosscheck_depth(d).unwrap() {
                assert!(r.mismatches.is_empty(), "{r:?}");
            }
        }
    }

    #[test]
    fn crosscheck_jprefix_flags_limit_member() {
        let j = jacaranda_prefix(12);
        let a = XDescriptor { kind: XKind::Concrete(j.truncate(3)), provenance: Some(Address::empty()) };
        let r = crosscheck(&a, &j).unwrap();
        assert!(r.mismatches.is_empty());
    }
}

//! The auxiliary systems: the Thue-Morse lift, the non-minimal ABBA system and the
//! line-doubling periodic tree, with finite orbit graphs.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::substitution::Substitution;
use crate::tree::{Address, Color, Letter, LineWord, Patch};

/// Per-level colors of a tree whose levels are constant.
pub fn tm_project(p: &Patch) -> Result<LineWord> {
    let mut out = Vec::with_capacity(p.depth() + 1);
    for (l, line) in p.levels().iter().enumerate() {
        if line.iter().any(|&c| c != line[0]) {
            return Err(Error::NonConstantLevel(l));
        }
        out.push(line[0]);
    }
    Ok(LineWord(out))
}

/// `t(0) = 0, t(2n) = t(n), t(2n+1) = 1 - t(n)`.
pub fn thue_morse_terms(n: usize) -> Vec<Color> {
    (0..n).map(|i| (i.count_ones() % 2) as Color).collect()
}

pub fn abba_digit(root: Color, w: &Address) -> Color {
    ((root as usize + w.count_b()) % 2) as Color
}

/// `0A` at `b a^n` is 1 for `1 <= n <= max`, by the digit law and on the generated prefix.
pub fn abba_nonminimal_witness(max: usize) -> bool {
    let Ok(p) = Substitution::abba().fixed_point_prefix(0, max + 1) else {
        return false;
    };
    (1..=max).all(|n| {
        let mut w = Address(vec![Letter::B]);
        w.0.extend(std::iter::repeat(Letter::A).take(n));
        abba_digit(0, &w) == 1 && p.get(&w) == Ok(1)
    })
}

/// Odd lines apply `0 -> 01, 1 -> 10` digitwise, even lines apply `01 -> 0001, 10 -> 1110` to pairs.
pub fn nomeasure_tree(root: Color, depth: usize) -> Patch {
    let mut levels = vec![vec![root]];
    for l in 1..=depth {
        let prev = &levels[l - 1];
        let next: Vec<Color> = if l % 2 == 1 {
            prev.iter().flat_map(|&c| [c, 1 - c]).collect()
        } else {
            prev.chunks(2)
                .flat_map(|pair| match pair {
                    [0, 1] => [0, 0, 0, 1],
                    _ => [1, 1, 1, 0],
                })
                .collect()
        };
        levels.push(next);
    }
    Patch::from_levels(levels).expect("doubling lines")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitState {
    pub name: String,
    pub patch: Option<Patch>,
}

/// Finite orbit of a tree under the two shifts, states identified by depth-`depth_used` patches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitGraph {
    pub states: Vec<OrbitState>,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub depth_used: usize,
    pub warning: Option<String>,
}

impl OrbitGraph {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s.name == name)
    }

    pub fn succ(&self, s: usize, l: Letter) -> usize {
        match l {
            Letter::A => self.a[s],
            Letter::B => self.b[s],
        }
    }

    /// Every state has an incoming edge.
    pub fn periodic(&self) -> bool {
        let mut hit = vec![false; self.len()];
        for &t in self.a.iter().chain(&self.b) {
            hit[t] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn edge_names(&self) -> Vec<(String, char, String)> {
        let mut out = Vec::new();
        for (i, s) in self.states.iter().enumerate() {
            for l in [Letter::A, Letter::B] {
                out.push((s.name.clone(), l.lower(), self.states[self.succ(i, l)].name.clone()));
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for st in &self.states {
            s.push_str(&format!("state {}\n", st.name));
        }
        for (src, l, dst) in self.edge_names() {
            s.push_str(&format!("edge {src} {l} {dst}\n"));
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<OrbitGraph> {
        let bad = |m: String| Error::MalformedGraph(m);
        let mut names: Vec<String> = Vec::new();
        let mut edges = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            let parts: Vec<&str> = line.split_whitespace().collect();
            match parts.as_slice() {
                [] => {}
                ["state", name] => {
                    if names.iter().any(|x| x == name) {
                        return Err(bad(format!("duplicate state {name}")));
                    }
                    names.push(name.to_string());
                }
                ["edge", src, l, dst] => edges.push((src.to_string(), l.to_string(), dst.to_string())),
                _ => return Err(bad(format!("line {}: {line}", n + 1))),
            }
        }
        let idx: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let mut a = vec![None; names.len()];
        let mut b = vec![None; names.len()];
        for (src, l, dst) in &edges {
            let (&s, &t) = match (idx.get(src.as_str()), idx.get(dst.as_str())) {
                (Some(s), Some(t)) => (s, t),
                _ => return Err(bad(format!("edge {src} {l} {dst}: unknown state"))),
            };
            let slot = match l.as_str() {
                "a" => &mut a[s],
                "b" => &mut b[s],
                _ => return Err(bad(format!("edge label {l}"))),
            };
            if slot.replace(t).is_some_and(|old| old != t) {
                return Err(bad(format!("two {l}-edges from {src}")));
            }
        }
        let total = |v: Vec<Option<usize>>, l: &str| -> Result<Vec<usize>> {
            v.into_iter()
                .enumerate()
                .map(|(i, t)| t.ok_or_else(|| bad(format!("no {l}-edge from {}", names[i]))))
                .collect()
        };
        let a = total(a, "a")?;
        let b = total(b, "b")?;
        let states = names.iter().map(|n| OrbitState { name: n.clone(), patch: None }).collect();
        Ok(OrbitGraph { states, a, b, depth_used: 0, warning: None })
    }
}

impl fmt::Display for OrbitGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub const DEFAULT_BOUND: usize = 256;

/// Worklist closure. A shifted tree is identified with an earlier state when the two agree on
/// their whole common depth, which must be at least `d` and at least the final number of states.
pub fn orbit_closure(seed: &Patch, d: usize, bound: usize) -> Result<OrbitGraph> {
    if seed.depth() < d {
        return Err(Error::Shallow { need: d, have: seed.depth() });
    }
    let mut reps: Vec<Patch> = vec![seed.clone()];
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut certified = usize::MAX;
    let mut next = 0;
    while next < reps.len() {
        let rep = reps[next].clone();
        for (l, edges) in [(Letter::A, &mut a), (Letter::B, &mut b)] {
            if rep.depth() <= d {
                return Err(Error::NotClosed(format!("ran out of depth after {} states", reps.len())));
            }
            let child = rep.child(l);
            let id = match reps.iter().position(|r| r.agrees(&child)) {
                Some(id) => {
                    certified = certified.min(child.depth().min(reps[id].depth()));
                    id
                }
                None => {
                    if reps.len() >= bound {
                        return Err(Error::NotClosed(format!("more than {bound} states")));
                    }
                    reps.push(child);
                    reps.len() - 1
                }
            };
            edges.push(id);
        }
        next += 1;
    }
    if certified < reps.len() {
        return Err(Error::NotClosed(format!("{} states agree only to depth {certified}", reps.len())));
    }
    let states = reps
        .iter()
        .enumerate()
        .map(|(i, p)| OrbitState { name: format!("s{i}"), patch: Some(p.truncate(d)) })
        .collect();
    let mut g = OrbitGraph { states, a, b, depth_used: d, warning: None };
    name_nomeasure_states(&mut g);
    Ok(g)
}

/// Closure at depths `d`, `d+1`, `d+2` (as far as the seed allows); the deepest wins.
pub fn build_orbit_graph(seed: &Patch, d: usize) -> Result<OrbitGraph> {
    build_orbit_graph_bounded(seed, d, DEFAULT_BOUND)
}

pub fn build_orbit_graph_bounded(seed: &Patch, d: usize, bound: usize) -> Result<OrbitGraph> {
    if d < 2 {
        return Err(Error::Unsupported("identification depth must be at least 2".into()));
    }
    let mut graphs = vec![orbit_closure(seed, d, bound)?];
    for dd in d + 1..=d + 2 {
        match orbit_closure(seed, dd, bound) {
            Ok(g) => graphs.push(g),
            Err(Error::NotClosed(_)) | Err(Error::Shallow { .. }) => break,
            Err(e) => return Err(e),
        }
    }
    let counts: Vec<usize> = graphs.iter().map(|g| g.len()).collect();
    let mut g = graphs.pop().expect("nonempty");
    if counts.iter().any(|&c| c != counts[0]) {
        g.warning = Some(format!("state counts {counts:?} over depths {d}..{}", g.depth_used));
    }
    Ok(g)
}

/// Names `0A, 1A, B, C, D, E` for the states of the line-doubling tree.
fn name_nomeasure_states(g: &mut OrbitGraph) {
    let d = g.depth_used;
    let deep = |r| nomeasure_tree(r, d + 1);
    let (a0, a1) = (deep(0), deep(1));
    let named = [
        ("0A", a0.truncate(d)),
        ("1A", a1.truncate(d)),
        ("B", Patch::join(0, &a0, &a0).truncate(d)),
        ("C", Patch::join(1, &a0, &a1).truncate(d)),
        ("D", Patch::join(1, &a1, &a1).truncate(d)),
        ("E", Patch::join(0, &a1, &a0).truncate(d)),
    ];
    let hits: Vec<Option<&str>> = g
        .states
        .iter()
        .map(|s| named.iter().find(|(_, p)| Some(p) == s.patch.as_ref()).map(|(n, _)| *n))
        .collect();
    let mut used: Vec<&str> = hits.iter().flatten().copied().collect();
    used.sort();
    if used.windows(2).all(|w| w[0] != w[1]) {
        for (s, h) in g.states.iter_mut().zip(hits) {
            if let Some(h) = h {
                s.name = h.to_string();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn addr(s: &str) -> Address {
        s.parse().unwrap()
    }

    #[test]
    fn thue_morse() {
        let tm = Substitution::thue_morse();
        assert_eq!(tm_project(&tm.fixed_point_prefix(0, 3).unwrap()).unwrap().to_string(), "0110");
        assert_eq!(tm_project(&Patch::leaf(0)).unwrap().to_string(), "0");
        let j = crate::jacaranda::jacaranda_prefix(3);
        assert_eq!(tm_project(&j), Err(Error::NonConstantLevel(1)));
        let p = tm_project(&tm.fixed_point_prefix(0, 10).unwrap()).unwrap();
        assert_eq!(p.0, thue_morse_terms(11));
    }

    #[test]
    fn abba() {
        assert_eq!(abba_digit(0, &addr("ba")), 1);
        assert_eq!(abba_digit(0, &Address::empty()), 0);
        assert_eq!(abba_digit(1, &addr("bb")), 1);
        let s = Substitution::abba();
        for root in [0, 1] {
            let p = s.fixed_point_prefix(root, 8).unwrap();
            for l in 0..=8 {
                for i in 0..1u64 << l {
                    assert_eq!(p.get_at(l, i), abba_digit(root, &Address::from_index(l, i)));
                }
            }
        }
        assert!(abba_nonminimal_witness(1));
        assert!(abba_nonminimal_witness(10));
        let p0 = s.fixed_point_prefix(0, 8).unwrap();
        let p1 = s.fixed_point_prefix(1, 8).unwrap();
        assert!(p0.child(Letter::A).agrees(&p0));
        assert!(p0.child(Letter::B).agrees(&p1));
    }

    #[test]
    fn nomeasure() {
        assert_eq!(nomeasure_tree(0, 3).inline(), "0/01/0001/01010110");
        assert_eq!(nomeasure_tree(1, 1).inline(), "1/10");
        assert_eq!(nomeasure_tree(0, 0).inline(), "0");
    }

    #[test]
    fn nomeasure_graph() {
        let seed = nomeasure_tree(0, 12);
        for d in 4..=8 {
            let g = build_orbit_graph(&seed, d).unwrap();
            assert_eq!(g.len(), 6, "depth {d}");
            assert!(g.warning.is_none());
            assert!(g.periodic());
        }
        let g = build_orbit_graph(&seed, 6).unwrap();
        let mut edges = g.edge_names();
        edges.sort();
        let e = |s: &str, l, t: &str| (s.to_string(), l, t.to_string());
        let mut want = vec![
            e("0A", 'a', "B"),
            e("0A", 'b', "C"),
            e("B", 'a', "0A"),
            e("B", 'b', "0A"),
            e("C", 'a', "0A"),
            e("C", 'b', "1A"),
            e("1A", 'a', "D"),
            e("1A", 'b', "E"),
            e("D", 'a', "1A"),
            e("D", 'b', "1A"),
            e("E", 'a', "1A"),
            e("E", 'b', "0A"),
        ];
        want.sort();
        assert_eq!(edges, want);
        let back = OrbitGraph::parse_text(&g.to_text()).unwrap();
        assert_eq!(back.to_text(), g.to_text());
    }

    #[test]
    fn trivial_and_aperiodic() {
        let g = build_orbit_graph(&Patch::constant(0, 6), 3).unwrap();
        assert_eq!((g.len(), g.a[0], g.b[0]), (1, 0, 0));
        let j = crate::jacaranda::jacaranda_prefix(14);
        assert!(matches!(build_orbit_graph(&j, 4), Err(Error::NotClosed(_))));
    }

    #[test]
    fn malformed() {
        assert!(OrbitGraph::parse_text("state x\nedge x a x\n").is_err());
        assert!(OrbitGraph::parse_text("state x\nedge x a y\nedge x b x\n").is_err());
        assert!(OrbitGraph::parse_text("bogus").is_err());
    }
}

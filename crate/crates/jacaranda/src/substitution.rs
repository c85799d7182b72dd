//! Constant-length-2 substitutions on colored binary trees.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::tree::{Address, Color, Letter, Patch};

/// Image of a single color: a root with two children.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Image {
    pub root: Color,
    pub a: Color,
    pub b: Color,
}

impl Image {
    pub const fn new(root: Color, a: Color, b: Color) -> Image {
        Image { root, a, b }
    }
}

/// Slot order of the grammar word.
pub const SLOTS: [[Letter; 2]; 4] = [
    [Letter::A, Letter::A],
    [Letter::A, Letter::B],
    [Letter::B, Letter::A],
    [Letter::B, Letter::B],
];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Substitution {
    pub images: [Image; 2],
    /// Grammar letters for the slots `aa, ab, ba, bb`; `A` places the image of the a-subtree.
    pub grammar: [Letter; 4],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    Bbab,
    ThueMorse,
    Abba,
}

impl Builtin {
    pub fn name(self) -> &'static str {
        match self {
            Builtin::Bbab => "bbab",
            Builtin::ThueMorse => "tm",
            Builtin::Abba => "abba",
        }
    }

    pub fn system(self) -> Substitution {
        match self {
            Builtin::Bbab => Substitution::bbab(),
            Builtin::ThueMorse => Substitution::thue_morse(),
            Builtin::Abba => Substitution::abba(),
        }
    }
}

fn grammar_from_str(s: &str) -> Result<[Letter; 4]> {
    let letters: Vec<Letter> = s
        .trim()
        .chars()
        .map(|c| match c {
            'A' => Ok(Letter::A),
            'B' => Ok(Letter::B),
            _ => Err(Error::Parse(format!("bad grammar letter {c:?}"))),
        })
        .collect::<Result<_>>()?;
    letters
        .try_into()
        .map_err(|v: Vec<Letter>| Error::Parse(format!("grammar needs 4 letters, got {}", v.len())))
}

impl Substitution {
    pub fn new(image0: Image, image1: Image, grammar: [Letter; 4]) -> Substitution {
        Substitution { images: [image0, image1], grammar }
    }

    /// `0 -> 0(1,0)`, `1 -> 1(1,0)`, grammar `BBAB`.
    pub fn bbab() -> Substitution {
        Substitution::new(Image::new(0, 1, 0), Image::new(1, 1, 0), grammar_from_str("BBAB").unwrap())
    }

    /// `0 -> 0(1,1)`, `1 -> 1(0,0)`. Every generation stays constant whatever the grammar; `ABAB` is used.
    pub fn thue_morse() -> Substitution {
        Substitution::new(Image::new(0, 1, 1), Image::new(1, 0, 0), grammar_from_str("ABAB").unwrap())
    }

    /// `0 -> 0(0,1)`, `1 -> 1(1,0)`, grammar `ABBA`.
    pub fn abba() -> Substitution {
        Substitution::new(Image::new(0, 0, 1), Image::new(1, 1, 0), grammar_from_str("ABBA").unwrap())
    }

    pub fn image(&self, c: Color) -> Image {
        self.images[c as usize]
    }

    pub fn is_marked(&self) -> bool {
        self.images[0].root != self.images[1].root
    }

    pub fn is_fixable(&self, c: Color) -> bool {
        self.image(c).root == c
    }

    pub fn grammar_string(&self) -> String {
        self.grammar.iter().map(|l| if *l == Letter::A { 'A' } else { 'B' }).collect()
    }

    /// Accepts `builtin:<name>` or the three-line text format.
    pub fn resolve(spec: &str) -> Result<Substitution> {
        match spec.trim() {
            "builtin:bbab" => Ok(Substitution::bbab()),
            "builtin:tm" => Ok(Substitution::thue_morse()),
            "builtin:abba" => Ok(Substitution::abba()),
            other if other.starts_with("builtin:") => {
                Err(Error::Parse(format!("unknown builtin {other:?}")))
            }
            text => Substitution::parse_text(text),
        }
    }

    pub fn parse_text(text: &str) -> Result<Substitution> {
        let mut images: [Option<Image>; 2] = [None, None];
        let mut grammar = None;
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(g) = line.strip_prefix("grammar") {
                grammar = Some(grammar_from_str(g)?);
                continue;
            }
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| Error::Parse(format!("expected `c -> r(x,y)`, got {line:?}")))?;
            let c = parse_color(lhs.trim())?;
            let rhs: String = rhs.chars().filter(|c| !c.is_whitespace()).collect();
            let bad = || Error::Unsupported(format!("image {rhs:?} is not a depth-1 tree over {{0,1}}"));
            let (r, rest) = rhs.split_once('(').ok_or_else(bad)?;
            let inner = rest.strip_suffix(')').ok_or_else(bad)?;
            let (x, y) = inner.split_once(',').ok_or_else(bad)?;
            let img = Image::new(
                parse_color(r).map_err(|_| bad())?,
                parse_color(x).map_err(|_| bad())?,
                parse_color(y).map_err(|_| bad())?,
            );
            images[c as usize] = Some(img);
        }
        match (images, grammar) {
            ([Some(i0), Some(i1)], Some(g)) => Ok(Substitution::new(i0, i1, g)),
            _ => Err(Error::Parse("need images of 0 and 1 and a grammar line".into())),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in 0..2u8 {
            let i = self.image(c);
            s.push_str(&format!("{c} -> {}({},{})\n", i.root, i.a, i.b));
        }
        s.push_str(&format!("grammar {}\n", self.grammar_string()));
        s
    }

    pub fn apply(&self, p: &Patch) -> Patch {
        self.apply_truncated(p, 2 * p.depth() + 1)
    }

    /// `apply` cut to depth `max_depth` without building the deeper levels.
    pub fn apply_truncated(&self, p: &Patch, max_depth: usize) -> Patch {
        let t = max_depth.min(2 * p.depth() + 1);
        self.apply_node(p, 0, 0, t)
    }

    fn apply_node(&self, p: &Patch, level: usize, idx: u64, t: usize) -> Patch {
        let img = self.image(p.get_at(level, idx));
        let mut levels = vec![vec![img.root]];
        if t == 0 {
            return Patch::from_levels_unchecked(levels);
        }
        levels.push(vec![img.a, img.b]);
        if t == 1 {
            return Patch::from_levels_unchecked(levels);
        }
        // t >= 2 implies the node has children in p
        let left = self.apply_node(p, level + 1, 2 * idx, t - 2);
        let right = self.apply_node(p, level + 1, 2 * idx + 1, t - 2);
        let slot = |l: Letter| if l == Letter::A { &left } else { &right };
        for k in 0..=t - 2 {
            let mut lv = Vec::with_capacity(4 << k);
            for g in self.grammar {
                lv.extend_from_slice(slot(g).level(k));
            }
            levels.push(lv);
        }
        Patch::from_levels_unchecked(levels)
    }

    pub fn apply_pow(&self, p: &Patch, n: u32) -> Patch {
        (0..n).fold(p.clone(), |q, _| self.apply(&q))
    }

    /// Depth-`d` truncation of the fixed point `lim H^n(root)`.
    pub fn fixed_point_prefix(&self, root: Color, d: usize) -> Result<Patch> {
        if !self.is_fixable(root) {
            return Err(Error::NotFixable(root));
        }
        let mut q = Patch::leaf(root);
        while q.depth() < d {
            q = self.apply_truncated(&q, d);
        }
        Ok(q.truncate(d))
    }

    pub fn source(&self, w: &Address) -> Result<Address> {
        if w.len() % 2 != 0 {
            return Err(Error::OddLength(w.len()));
        }
        Ok(Address(
            w.0.chunks(2)
                .map(|blk| self.grammar[(2 * blk[0].bit() + blk[1].bit()) as usize])
                .collect(),
        ))
    }

    /// Slots whose grammar letter is `l`.
    pub fn slots_for(&self, l: Letter) -> Vec<[Letter; 2]> {
        SLOTS.iter().zip(self.grammar).filter(|(_, g)| *g == l).map(|(s, _)| *s).collect()
    }

    pub fn theta(&self, w: &Address) -> BTreeSet<Address> {
        let mut acc = vec![Address::empty()];
        for &l in &w.0 {
            let slots = self.slots_for(l);
            acc = acc
                .iter()
                .flat_map(|prefix| {
                    slots.iter().map(move |s| {
                        let mut p = prefix.clone();
                        p.0.extend_from_slice(s);
                        p
                    })
                })
                .collect();
        }
        acc.into_iter().collect()
    }

    /// Checks `T_w(H p) = H(T_{s(w)} p)` for every even `w` with `|w| <= maxlen`.
    pub fn verify_renormalization(&self, p: &Patch, maxlen: usize) -> RenormReport {
        let hp = self.apply(p);
        let mut checked = 0;
        let maxlen = maxlen.min(2 * p.depth());
        for len in (0..=maxlen).step_by(2) {
            for idx in 0..1u64 << len {
                let w = Address::from_index(len, idx);
                let lhs = hp.subtree_at(len, idx);
                let s = self.source(&w).expect("even length");
                let rhs = self.apply(&p.subtree(&s).expect("source within depth"));
                checked += 1;
                if !lhs.agrees(&rhs) {
                    return RenormReport {
                        checked,
                        counterexample: Some((w, lhs.inline(), rhs.inline())),
                    };
                }
            }
        }
        RenormReport { checked, counterexample: None }
    }

    /// Inverse of `apply` on its image; output depth is `floor((d-1)/2)`.
    pub fn unsub(&self, p: &Patch) -> Result<Patch> {
        if !self.is_marked() {
            return Err(Error::NotMarked);
        }
        if p.depth() < 1 {
            return Err(Error::Shallow { need: 1, have: p.depth() });
        }
        self.unsub_node(p, 0, 0, p.depth())
    }

    fn unsub_node(&self, p: &Patch, level: usize, idx: u64, d: usize) -> Result<Patch> {
        let r = p.get_at(level, idx);
        let c = if self.images[0].root == r { 0 } else { 1 };
        let img = self.image(c);
        let kids = (p.get_at(level + 1, 2 * idx), p.get_at(level + 1, 2 * idx + 1));
        if kids != (img.a, img.b) {
            return Err(Error::NotInImage(format!(
                "children {}{} under root {r} at level {level} are not an image",
                kids.0, kids.1
            )));
        }
        if d < 2 {
            return Ok(Patch::leaf(c));
        }
        let slot_idx = |s: usize| 4 * idx + s as u64;
        let sub_depth = d - 2;
        let mut reps: [Option<usize>; 2] = [None, None];
        for (s, g) in self.grammar.iter().enumerate() {
            let gi = g.bit() as usize;
            match reps[gi] {
                None => reps[gi] = Some(s),
                Some(first) => {
                    let same = (0..=sub_depth).all(|k| {
                        let w = 1usize << k;
                        let a = (slot_idx(first) as usize) << k;
                        let b = (slot_idx(s) as usize) << k;
                        p.level(level + 2 + k)[a..a + w] == p.level(level + 2 + k)[b..b + w]
                    });
                    if !same {
                        return Err(Error::NotInImage(format!(
                            "slots {first} and {s} carry the same grammar letter but differ"
                        )));
                    }
                }
            }
        }
        let (ra, rb) = match reps {
            [Some(a), Some(b)] => (a, b),
            _ => {
                return Err(Error::Unsupported(
                    "grammar misses a letter, so a subtree cannot be recovered".into(),
                ))
            }
        };
        if sub_depth == 0 {
            // slot roots must still be images of something
            for s in [ra, rb] {
                let root = p.get_at(level + 2, slot_idx(s));
                if root != self.images[0].root && root != self.images[1].root {
                    return Err(Error::NotInImage("slot root outside image roots".into()));
                }
            }
            return Ok(Patch::leaf(c));
        }
        let a = self.unsub_node(p, level + 2, slot_idx(ra), sub_depth)?;
        let b = self.unsub_node(p, level + 2, slot_idx(rb), sub_depth)?;
        Ok(Patch::join(c, &a, &b))
    }

    pub fn unsub_pow(&self, p: &Patch, u: u32) -> Result<Patch> {
        let mut q = p.clone();
        for _ in 0..u {
            q = self.unsub(&q)?;
        }
        Ok(q)
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn parse_color(s: &str) -> Result<Color> {
    match s {
        "0" => Ok(0),
        "1" => Ok(1),
        _ => Err(Error::Parse(format!("bad color {s:?}"))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenormReport {
    pub checked: usize,
    /// `(w, T_w(Hp), H(T_{s(w)} p))` for the first failure.
    pub counterexample: Option<(Address, String, String)>,
}

impl RenormReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn addr(s: &str) -> Address {
        s.parse().unwrap()
    }

    fn patch(s: &str) -> Patch {
        Patch::parse_inline(s).unwrap()
    }

    #[test]
    fn apply_examples() {
        let h = Substitution::bbab();
        assert_eq!(h.apply(&Patch::leaf(0)).inline(), "0/10");
        assert_eq!(h.apply(&patch("0/10")).inline(), "0/10/0010/10101010");
        assert_eq!(Substitution::abba().apply(&Patch::leaf(0)).inline(), "0/01");
    }

    #[test]
    fn fixed_points() {
        let h = Substitution::bbab();
        assert_eq!(h.fixed_point_prefix(0, 2).unwrap().inline(), "0/10/0010");
        assert_eq!(h.fixed_point_prefix(1, 2).unwrap().inline(), "1/10/0010");
        let tm = Substitution::thue_morse();
        // H^2(0) = 0(1(0,0),1(0,0)) on every level: colors 0,1,1,0
        assert_eq!(tm.fixed_point_prefix(0, 3).unwrap().inline(), "0/11/1111/00000000");
        assert_eq!(
            Substitution::new(Image::new(1, 0, 0), Image::new(0, 1, 1), h.grammar).fixed_point_prefix(0, 3),
            Err(Error::NotFixable(0))
        );
    }

    #[test]
    fn source_and_theta() {
        let h = Substitution::bbab();
        assert_eq!(h.source(&addr("ba")).unwrap(), addr("a"));
        assert_eq!(h.source(&addr("aa")).unwrap(), addr("b"));
        assert_eq!(h.source(&addr("baab")).unwrap(), addr("ab"));
        assert_eq!(h.source(&addr("b")), Err(Error::OddLength(1)));
        let t: Vec<String> = h.theta(&addr("ab")).iter().map(|a| a.to_string()).collect();
        assert_eq!(t, ["baaa", "baab", "babb"]);
        assert_eq!(h.theta(&addr("a")).len(), 1);
        assert_eq!(h.theta(&addr("b")).len(), 3);
        assert_eq!(h.theta(&Address::empty()).into_iter().collect::<Vec<_>>(), [Address::empty()]);
    }

    #[test]
    fn unsub_examples() {
        let h = Substitution::bbab();
        let p = patch("0/10");
        assert_eq!(h.unsub(&h.apply(&p)).unwrap(), p);
        let j9 = h.fixed_point_prefix(0, 9).unwrap();
        assert_eq!(h.unsub(&j9).unwrap(), j9.truncate(4));
        assert!(matches!(h.unsub(&patch("1/10/0011")), Err(Error::NotInImage(_))));
        assert_eq!(Substitution::thue_morse().unsub(&patch("0/11")).unwrap(), Patch::leaf(0));
        let unmarked = Substitution::new(Image::new(0, 1, 0), Image::new(0, 0, 0), h.grammar);
        assert_eq!(unmarked.unsub(&patch("0/10")), Err(Error::NotMarked));
    }

    #[test]
    fn renormalization_holds() {
        let h = Substitution::bbab();
        let j = h.fixed_point_prefix(0, 9).unwrap();
        assert!(h.verify_renormalization(&j, 4).passed());
        let a = Substitution::abba();
        let fa = a.fixed_point_prefix(0, 7).unwrap();
        assert!(a.verify_renormalization(&fa, 4).passed());
    }

    #[test]
    fn text_format() {
        let h = Substitution::resolve("0 -> 0(1,0)\n1 -> 1(1,0)\ngrammar BBAB\n").unwrap();
        assert_eq!(h, Substitution::bbab());
        assert_eq!(Substitution::resolve(&h.to_text()).unwrap(), h);
        assert_eq!(Substitution::resolve("builtin:abba").unwrap(), Substitution::abba());
        assert!(Substitution::resolve("builtin:nope").is_err());
        assert!(matches!(
            Substitution::resolve("0 -> 0(1,0(1,1))\n1 -> 1(1,0)\ngrammar BBAB"),
            Err(Error::Unsupported(_))
        ));
    }
}

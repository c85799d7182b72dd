//! SVG pictures: the tree drawn level by level, and the coloring of the hyperbolic disk
//! by the positive-word cells of a two-generator ping-pong group.

use std::fmt::Write;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::tree::{Address, Color, Letter, Patch};

pub const MAX_TREE_DEPTH: usize = 12;
const TOL: f64 = 1e-9;

/// `z -> (alpha z + beta) / (conj(beta) z + conj(alpha))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskIsometry {
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl DiskIsometry {
    /// Scales so that `|alpha|^2 - |beta|^2 = 1`.
    pub fn new(alpha: Complex64, beta: Complex64) -> DiskIsometry {
        let det = alpha.norm_sqr() - beta.norm_sqr();
        assert!(det > 0.0, "not a disk automorphism");
        let s = det.sqrt();
        DiskIsometry { alpha: alpha / s, beta: beta / s }
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        (self.alpha * z + self.beta) / (self.beta.conj() * z + self.alpha.conj())
    }

    pub fn inverse(&self) -> DiskIsometry {
        DiskIsometry { alpha: self.alpha.conj(), beta: -self.beta }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &DiskIsometry) -> DiskIsometry {
        DiskIsometry {
            alpha: self.alpha * other.alpha + self.beta * other.beta.conj(),
            beta: self.alpha * other.beta + self.beta * other.alpha.conj(),
        }
    }
}

/// `h1(z) = (5z+4)/(4z+5)` and `h2(z) = (5z+4i)/(5-4iz)`: translations moving `-1/2` to `1/2`
/// and `-i/2` to `i/2`.
pub fn make_generators() -> (DiskIsometry, DiskIsometry) {
    let c = |re, im| Complex64::new(re, im);
    (DiskIsometry::new(c(5.0, 0.0), c(4.0, 0.0)), DiskIsometry::new(c(5.0, 0.0), c(0.0, 4.0)))
}

pub fn hyperbolic_distance(z: Complex64, w: Complex64) -> f64 {
    ((z - w).norm() / (Complex64::new(1.0, 0.0) - w.conj() * z).norm()).atanh()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderConfig {
    /// Width and height in pixels.
    pub resolution: usize,
    /// Longest word colored in the tiling.
    pub depth_limit: usize,
    /// Fill for color 0 and color 1.
    pub palette: [String; 2],
    pub background: String,
    pub highlight: String,
}

impl Default for RenderConfig {
    fn default() -> RenderConfig {
        RenderConfig {
            resolution: 512,
            depth_limit: 6,
            palette: ["#a0a0a0".into(), "#000000".into()],
            background: "#ffffff".into(),
            highlight: "#d02020".into(),
        }
    }
}

impl RenderConfig {
    fn fill(&self, c: Color) -> &str {
        &self.palette[c as usize & 1]
    }
}

fn f3(x: f64) -> String {
    let s = format!("{x:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.to_string() }
}

/// Level-by-level drawing: a-children left, b-children right, a rectangle for an a-follower,
/// a disk for a b-follower, the root outlined.
pub fn tree_svg(p: &Patch, cfg: &RenderConfig) -> Result<String> {
    if p.depth() > MAX_TREE_DEPTH {
        return Err(Error::TooDeep(p.depth()));
    }
    if cfg.resolution == 0 {
        return Err(Error::Unsupported("resolution must be positive".into()));
    }
    let w = cfg.resolution as f64;
    let rows = (p.depth() + 1) as f64;
    let h = (w * 0.6).max(rows * 12.0);
    let dy = h / rows;
    let pos = |l: usize, i: u64| ((i as f64 + 0.5) * w / (1u64 << l) as f64, (l as f64 + 0.5) * dy);
    let r = |l: usize| (0.3 * dy).min(0.35 * w / (1u64 << l) as f64).max(0.5);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        f3(w),
        f3(h),
        f3(w),
        f3(h)
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="{}"/>"#, cfg.background);
    s.push_str("<g stroke=\"#606060\" stroke-width=\"0.5\">\n");
    for l in 1..=p.depth() {
        for i in 0..1u64 << l {
            let (x0, y0) = pos(l - 1, i / 2);
            let (x1, y1) = pos(l, i);
            let _ = writeln!(s, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, f3(x0), f3(y0), f3(x1), f3(y1));
        }
    }
    s.push_str("</g>\n");
    for l in 0..=p.depth() {
        let rad = r(l);
        for i in 0..1u64 << l {
            let (x, y) = pos(l, i);
            let fill = cfg.fill(p.get_at(l, i));
            let extra = if l == 0 {
                format!(r#" stroke="{}" stroke-width="{}""#, cfg.highlight, f3((rad * 0.3).max(1.0)))
            } else {
                String::new()
            };
            if l > 0 && i % 2 == 0 {
                let _ = writeln!(
                    s,
                    r#"<rect class="node" x="{}" y="{}" width="{}" height="{}" fill="{fill}"{extra}/>"#,
                    f3(x - rad),
                    f3(y - rad),
                    f3(2.0 * rad),
                    f3(2.0 * rad)
                );
            } else {
                let _ = writeln!(
                    s,
                    r#"<circle class="node" cx="{}" cy="{}" r="{}" fill="{fill}"{extra}/>"#,
                    f3(x),
                    f3(y),
                    f3(rad)
                );
            }
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}

/// Positive word `w1...wk` with `z` in `h_{w1} ∘ ... ∘ h_{wk}(P0)`, pulling back greedily;
/// `None` when the pullback leaves through an inverse generator or needs more than `limit` letters.
pub fn classify_point(z: Complex64, limit: usize) -> Option<Address> {
    let (h1, h2) = make_generators();
    let gens = [(h1, Some(Letter::A)), (h2, Some(Letter::B)), (h1.inverse(), None), (h2.inverse(), None)];
    let centers: Vec<Complex64> = gens.iter().map(|(g, _)| g.apply(Complex64::new(0.0, 0.0))).collect();
    let mut z = z;
    let mut w = Address::empty();
    loop {
        let d0 = hyperbolic_distance(z, Complex64::new(0.0, 0.0));
        let (best, dist) = centers
            .iter()
            .map(|&c| hyperbolic_distance(z, c))
            .enumerate()
            .fold((0, f64::INFINITY), |acc, (i, d)| if d < acc.1 - TOL { (i, d) } else { acc });
        if d0 <= dist + TOL {
            return Some(w);
        }
        let letter = gens[best].1?;
        if w.len() == limit {
            return None;
        }
        w.push(letter);
        z = gens[best].0.inverse().apply(z);
    }
}

/// Whether the pullback of `z` along `w` lands in the Dirichlet domain of 0.
pub fn in_cell(z: Complex64, w: &Address) -> bool {
    let (h1, h2) = make_generators();
    let mut z = z;
    for l in &w.0 {
        z = match l {
            Letter::A => h1.inverse().apply(z),
            Letter::B => h2.inverse().apply(z),
        };
    }
    let zero = Complex64::new(0.0, 0.0);
    let d0 = hyperbolic_distance(z, zero);
    [h1, h2, h1.inverse(), h2.inverse()]
        .iter()
        .all(|g| d0 <= hyperbolic_distance(z, g.apply(zero)) + TOL)
}

fn pixel_point(px: usize, py: usize, res: usize) -> Complex64 {
    let s = 2.0 / res as f64;
    Complex64::new(-1.0 + (px as f64 + 0.5) * s, 1.0 - (py as f64 + 0.5) * s)
}

/// Disk picture at `cfg.resolution` pixels square, each positive cell of word length at most
/// `cfg.depth_limit` filled with the digit of `p` at that word.
pub fn tiling_svg(p: &Patch, cfg: &RenderConfig) -> Result<String> {
    let res = cfg.resolution;
    let limit = cfg.depth_limit;
    if res == 0 {
        return Err(Error::Unsupported("resolution must be positive".into()));
    }
    if p.depth() < limit {
        return Err(Error::Shallow { need: limit, have: p.depth() });
    }
    let rows: Vec<String> = (0..res)
        .into_par_iter()
        .map(|py| {
            let mut row = String::new();
            let mut run: Option<(usize, Color)> = None;
            let flush = |row: &mut String, run: Option<(usize, Color)>, end: usize| {
                if let Some((x0, c)) = run {
                    let _ = writeln!(
                        row,
                        r#"<rect x="{x0}" y="{py}" width="{}" height="1" fill="{}"/>"#,
                        end - x0,
                        cfg.fill(c)
                    );
                }
            };
            for px in 0..res {
                let z = pixel_point(px, py, res);
                let color = if z.norm() < 1.0 {
                    classify_point(z, limit).map(|w| p.get(&w).expect("depth checked"))
                } else {
                    None
                };
                match (run, color) {
                    (Some((_, c)), Some(d)) if c == d => {}
                    _ => {
                        flush(&mut row, run, px);
                        run = color.map(|c| (px, c));
                    }
                }
            }
            flush(&mut row, run, res);
            row
        })
        .collect();
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{res}" height="{res}" viewBox="0 0 {res} {res}" shape-rendering="crispEdges">"#
    );
    let half = res as f64 / 2.0;
    let _ = writeln!(
        s,
        r#"<circle cx="{}" cy="{}" r="{}" fill="{}" stroke="{}" stroke-width="1"/>"#,
        f3(half),
        f3(half),
        f3(half),
        cfg.background,
        cfg.palette[1]
    );
    for r in rows {
        s.push_str(&r);
    }
    s.push_str("</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacaranda::jacaranda_prefix;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn generators() {
        let (h1, h2) = make_generators();
        let close = |a: Complex64, b: Complex64| (a - b).norm() < 1e-12;
        assert!(close(h1.apply(c(-0.5, 0.0)), c(0.5, 0.0)));
        assert!(close(h1.apply(c(1.0, 0.0)), c(1.0, 0.0)));
        assert!(close(h1.apply(c(-1.0, 0.0)), c(-1.0, 0.0)));
        assert!(close(h1.apply(c(0.0, 0.0)), c(0.8, 0.0)));
        assert!(close(h2.apply(c(0.0, -0.5)), c(0.0, 0.5)));
        assert!(close(h2.apply(c(0.0, 1.0)), c(0.0, 1.0)));
        assert!(close(h2.apply(c(0.0, -1.0)), c(0.0, -1.0)));
        assert!(close(h1.compose(&h1.inverse()).apply(c(0.3, 0.2)), c(0.3, 0.2)));
        for g in [h1, h2] {
            assert!((g.alpha.norm_sqr() - g.beta.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn classification() {
        let (h1, h2) = make_generators();
        let o = c(0.0, 0.0);
        assert_eq!(classify_point(o, 0).unwrap().to_string(), "e");
        assert_eq!(classify_point(h1.apply(o), 1).unwrap().to_string(), "a");
        assert_eq!(classify_point(h2.apply(o), 1).unwrap().to_string(), "b");
        assert_eq!(classify_point(h1.compose(&h2).apply(o), 3).unwrap().to_string(), "ab");
        assert_eq!(classify_point(h1.inverse().apply(o), 3), None);
        assert_eq!(classify_point(h1.apply(o), 0), None);
    }

    #[test]
    fn tree_glyphs() {
        let cfg = RenderConfig::default();
        let svg = tree_svg(&jacaranda_prefix(4), &cfg).unwrap();
        assert_eq!(svg.matches("class=\"node\"").count(), 31);
        let one = tree_svg(&Patch::leaf(1), &cfg).unwrap();
        assert_eq!(one.matches("class=\"node\"").count(), 1);
        assert!(one.contains("fill=\"#000000\""));
        assert_eq!(tree_svg(&jacaranda_prefix(13), &cfg), Err(Error::TooDeep(13)));
    }

    #[test]
    fn tiling_shallow() {
        let cfg = RenderConfig { depth_limit: 3, resolution: 16, ..RenderConfig::default() };
        assert!(matches!(tiling_svg(&jacaranda_prefix(2), &cfg), Err(Error::Shallow { .. })));
        let svg = tiling_svg(&jacaranda_prefix(3), &cfg).unwrap();
        assert!(svg.starts_with("<svg"));
    }
}

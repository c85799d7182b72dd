use jacaranda::jacaranda::jacaranda_prefix;
use jacaranda::render::{classify_point, in_cell, make_generators, tiling_svg, RenderConfig};
use jacaranda::systems::tm_project;
use jacaranda::{Address, Patch, Substitution};
use num_complex::Complex64;

fn words_up_to(n: usize) -> Vec<Address> {
    (0..=n).flat_map(|l| (0..1u64 << l).map(move |i| Address::from_index(l, i))).collect()
}

#[test]
fn cells_are_disjoint_on_a_grid() {
    let words = words_up_to(3);
    let res = 512;
    let mut overlaps = 0;
    for py in 0..res {
        for px in 0..res {
            let z = Complex64::new(-1.0 + (px as f64 + 0.5) * 2.0 / res as f64, 1.0 - (py as f64 + 0.5) * 2.0 / res as f64);
            if z.norm() >= 1.0 {
                continue;
            }
            let hits = words.iter().filter(|w| in_cell(z, w)).count();
            if hits > 1 {
                overlaps += 1;
            }
            if hits == 1 {
                let w = words.iter().find(|w| in_cell(z, w)).unwrap();
                assert_eq!(classify_point(z, 3).as_ref(), Some(w));
            }
        }
    }
    assert_eq!(overlaps, 0);
}

#[test]
fn generators_preserve_disk() {
    let (h1, h2) = make_generators();
    for k in 0..200 {
        let t = k as f64 * 0.731;
        let r = (k as f64 / 200.0) * 0.999;
        let z = Complex64::from_polar(r, t);
        assert!(h1.apply(z).norm() < 1.0);
        assert!(h2.apply(z).norm() < 1.0);
        assert!(h1.inverse().apply(z).norm() < 1.0);
    }
}

#[test]
fn tiling_colors_follow_digits() {
    let (h1, h2) = make_generators();
    let o = Complex64::new(0.0, 0.0);
    let j = jacaranda_prefix(3);
    let at = |z| classify_point(z, 1).map(|w| j.get(&w).unwrap());
    assert_eq!(at(o), Some(0));
    assert_eq!(at(h1.apply(o)), Some(1));
    assert_eq!(at(h2.apply(o)), Some(0));

    let cfg = RenderConfig { resolution: 64, depth_limit: 0, ..RenderConfig::default() };
    let svg = tiling_svg(&Patch::leaf(1), &cfg).unwrap();
    assert!(svg.contains("fill=\"#000000\"/>"));
    assert!(!svg.contains("fill=\"#a0a0a0\""));
}

#[test]
fn tm_levels_are_uniform() {
    let p = Substitution::thue_morse().fixed_point_prefix(0, 3).unwrap();
    assert_eq!(tm_project(&p).unwrap().to_string(), "0110");
}

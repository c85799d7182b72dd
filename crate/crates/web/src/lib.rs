//! Browser bindings: tree pictures, disk tilings and lines of the fixed points.

use jacaranda::render::{self, RenderConfig};
use jacaranda::words::{chi_pow, proportion, rational_to_string};
use jacaranda::{LineWord, Patch, Substitution};
use wasm_bindgen::prelude::*;

pub const MAX_TILING_DEPTH: usize = 10;
pub const MAX_RES: usize = 1024;

fn prefix(system: &str, root: u8, depth: usize) -> Result<Patch, String> {
    let s = Substitution::resolve(&format!("builtin:{system}")).map_err(|e| e.to_string())?;
    s.fixed_point_prefix(root, depth).map_err(|e| e.to_string())
}

pub fn tree_picture(system: &str, root: u8, depth: usize, width: usize) -> Result<String, String> {
    let cfg = RenderConfig { resolution: width.clamp(1, 4 * MAX_RES), ..RenderConfig::default() };
    render::tree_svg(&prefix(system, root, depth.min(render::MAX_TREE_DEPTH + 1))?, &cfg).map_err(|e| e.to_string())
}

pub fn tiling_picture(system: &str, root: u8, depth: usize, res: usize) -> Result<String, String> {
    if depth > MAX_TILING_DEPTH || res > MAX_RES {
        return Err(format!("depth at most {MAX_TILING_DEPTH}, resolution at most {MAX_RES}"));
    }
    let cfg = RenderConfig { resolution: res, depth_limit: depth, ..RenderConfig::default() };
    render::tiling_svg(&prefix(system, root, depth)?, &cfg).map_err(|e| e.to_string())
}

pub fn line_text(system: &str, root: u8, level: usize) -> Result<String, String> {
    if level > 16 {
        return Err("level at most 16".into());
    }
    Ok(LineWord(prefix(system, root, level)?.level(level).to_vec()).to_string())
}

pub fn chi_text(word: &str, pow: u32) -> Result<String, String> {
    let w: LineWord = word.parse().map_err(|e: jacaranda::Error| e.to_string())?;
    if (w.level() as u64) << pow > 16 {
        return Err("result longer than 2^16".into());
    }
    Ok(chi_pow(&Substitution::bbab(), &w, pow).map_err(|e| e.to_string())?.to_string())
}

/// SVG of the fixed point of `system` (`bbab`, `tm` or `abba`) with the given root, cut at `depth`.
#[wasm_bindgen]
pub fn tree_svg(system: &str, root: u8, depth: usize, width: usize) -> Result<String, JsError> {
    tree_picture(system, root, depth, width).map_err(|e| JsError::new(&e))
}

/// SVG of the disk coloring by positive words of length at most `depth`.
#[wasm_bindgen]
pub fn tiling_svg(system: &str, root: u8, depth: usize, res: usize) -> Result<String, JsError> {
    tiling_picture(system, root, depth, res).map_err(|e| JsError::new(&e))
}

/// Line `level` of the fixed point, as 0/1 text.
#[wasm_bindgen]
pub fn line(system: &str, root: u8, level: usize) -> Result<String, JsError> {
    line_text(system, root, level).map_err(|e| JsError::new(&e))
}

/// `pow`-fold chi of a 0/1 word of power-of-two length, for the Jacaranda system.
#[wasm_bindgen]
pub fn chi(word: &str, pow: u32) -> Result<String, JsError> {
    chi_text(word, pow).map_err(|e| JsError::new(&e))
}

/// Ones-proportion of lines `2^u (2n+1)` of J as `p/q`.
#[wasm_bindgen]
pub fn ones_proportion(u: u32) -> String {
    rational_to_string(&proportion(u.min(6)))
}

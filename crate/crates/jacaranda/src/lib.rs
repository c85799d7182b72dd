//! Substitutions on two-colored binary trees and the Jacaranda tree.

pub mod error;
pub mod jacaranda;
pub mod measures;
pub mod preimages;
pub mod render;
pub mod substitution;
pub mod systems;
pub mod tree;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use substitution::Substitution;
pub use tree::{Address, Color, Letter, LineWord, Patch};

//! Identifier rules and the canonical names given to constructed cells.
//!
//! Constructed categories name their cells structurally so that two
//! independently built copies of the same construction compare equal:
//!
//! | cell                        | name          |
//! |-----------------------------|---------------|
//! | identity on object `a`      | `id_a`        |
//! | pair of cells `x`, `y`      | `(x,y)`       |
//! | coproduct copies            | `inl.x`, `inr.x` |
//! | codiscrete arrow `a -> b`   | `a~>b`        |
//!
//! Identifiers must be non-empty, have balanced parentheses, and contain no
//! `,` outside parentheses; object names additionally contain no `~>`
//! outside parentheses. Under those rules each naming scheme above is
//! injective and produces valid identifiers again.

use crate::error::{CategoryFault, Error, Result};

pub const IDENTITY_PREFIX: &str = "id_";

pub fn identity(object: &str) -> String {
    format!("{IDENTITY_PREFIX}{object}")
}

pub fn pair(x: &str, y: &str) -> String {
    format!("({x},{y})")
}

pub fn inl(x: &str) -> String {
    format!("inl.{x}")
}

pub fn inr(x: &str) -> String {
    format!("inr.{x}")
}

pub fn codiscrete_arrow(src: &str, tgt: &str) -> String {
    format!("{src}~>{tgt}")
}

/// Inverse of [`pair`] on names built from valid identifiers.
pub fn split_pair(name: &str) -> Option<(&str, &str)> {
    let inner = name.strip_prefix('(')?.strip_suffix(')')?;
    let mut depth = 0usize;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.checked_sub(1)?,
            ',' if depth == 0 => return Some((&inner[..i], &inner[i + 1..])),
            _ => {}
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    Object,
    Morphism,
}

pub fn check_identifier(name: &str, cell: Cell) -> Result<()> {
    let bad = |why: &str| Err(Error::category(CategoryFault::InvalidName, format!("`{name}`: {why}")));
    if name.is_empty() {
        return bad("empty identifier");
    }
    let mut depth = 0usize;
    let bytes = name.as_bytes();
    for (i, &c) in bytes.iter().enumerate() {
        match c {
            b'(' => depth += 1,
            b')' => {
                if depth == 0 {
                    return bad("unbalanced `)`");
                }
                depth -= 1;
            }
            b',' if depth == 0 => return bad("`,` outside parentheses"),
            b'~' if cell == Cell::Object && depth == 0 && bytes.get(i + 1) == Some(&b'>') => return bad("`~>` outside parentheses"),
            _ => {}
        }
    }
    if depth != 0 {
        return bad("unbalanced `(`");
    }
    Ok(())
}

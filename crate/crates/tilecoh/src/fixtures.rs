//! The bundled rule fixtures, compiled into the library.

use crate::error::{Error, Result};
use crate::substitution::SubstitutionRule;

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: &[&str] = &["chair-2", "chair-3", "equivariant-4d", "ex1-a", "ex1-b", "ex2-a", "ex2-b", "ex3", "ex4", "main-4d", "one-color-1d", "one-color-2d", "one-color-4d", "squiral-4d", "three-prototile-4d", "two-prototile-4d"];

/// Raw JSON of a bundled rule.
pub fn builtin_json(name: &str) -> Option<&'static str> {
    Some(match name {
        "chair-2" => include_str!("../fixtures/chair-2.json"),
        "chair-3" => include_str!("../fixtures/chair-3.json"),
        "equivariant-4d" => include_str!("../fixtures/equivariant-4d.json"),
        "ex1-a" => include_str!("../fixtures/ex1-a.json"),
        "ex1-b" => include_str!("../fixtures/ex1-b.json"),
        "ex2-a" => include_str!("../fixtures/ex2-a.json"),
        "ex2-b" => include_str!("../fixtures/ex2-b.json"),
        "ex3" => include_str!("../fixtures/ex3.json"),
        "ex4" => include_str!("../fixtures/ex4.json"),
        "main-4d" => include_str!("../fixtures/main-4d.json"),
        "one-color-1d" => include_str!("../fixtures/one-color-1d.json"),
        "one-color-2d" => include_str!("../fixtures/one-color-2d.json"),
        "one-color-4d" => include_str!("../fixtures/one-color-4d.json"),
        "squiral-4d" => include_str!("../fixtures/squiral-4d.json"),
        "three-prototile-4d" => include_str!("../fixtures/three-prototile-4d.json"),
        "two-prototile-4d" => include_str!("../fixtures/two-prototile-4d.json"),
        _ => return None,
    })
}

/// Parses a bundled rule by name.
pub fn builtin(name: &str) -> Result<SubstitutionRule> {
    let text = builtin_json(name).ok_or_else(|| Error::Schema(format!("no bundled rule named {name}")))?;
    SubstitutionRule::from_json(text)
}

//! Pattern complement and intersection for a λ-calculus with strict,
//! irrelevant and unrestricted variable occurrences.

pub mod algebra;
pub mod canonicalize;
pub mod complement;
pub mod intersect;
pub mod patterns;
pub mod syntax;
pub mod typing;

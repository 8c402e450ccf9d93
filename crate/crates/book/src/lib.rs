//! The guide under `book/src`, compiled so its snippets run as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/colorings.md")]
pub mod colorings {}

#[doc = include_str!("../../../book/src/detectors.md")]
pub mod detectors {}

#[doc = include_str!("../../../book/src/constructions.md")]
pub mod constructions {}

#[doc = include_str!("../../../book/src/structure.md")]
pub mod structure {}

#[doc = include_str!("../../../book/src/formulas.md")]
pub mod formulas {}

#[doc = include_str!("../../../book/src/search.md")]
pub mod search {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../README.md")]
pub mod readme {}

//! The guide in `book/`, compiled so its code samples run as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/game-model.md")]
pub mod game_model {}

#[doc = include_str!("../../../book/src/gamescript.md")]
pub mod gamescript {}

#[doc = include_str!("../../../book/src/efg-format.md")]
pub mod efg_format {}

#[doc = include_str!("../../../book/src/pipeline.md")]
pub mod pipeline {}

#[doc = include_str!("../../../book/src/sessions.md")]
pub mod sessions {}

#[doc = include_str!("../../../book/src/evaluation.md")]
pub mod evaluation {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

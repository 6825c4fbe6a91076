// mdbook cannot build snippets against workspace crates, so every chapter is
// pulled in here as a module doc and `cargo test --doc` runs the listings.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/forms.md")]
pub mod forms {}
#[doc = include_str!("../../../book/src/groups.md")]
pub mod groups {}
#[doc = include_str!("../../../book/src/spectral.md")]
pub mod spectral {}
#[doc = include_str!("../../../book/src/components.md")]
pub mod components {}
#[doc = include_str!("../../../book/src/winding.md")]
pub mod winding {}
#[doc = include_str!("../../../book/src/joins.md")]
pub mod joins {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}

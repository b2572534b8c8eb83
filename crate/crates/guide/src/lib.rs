//! The chapters of the guide in `book/src`, included so that `cargo test`
//! runs every listing. One module per chapter keeps failures traceable.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/point-data.md")]
pub mod point_data {}
#[doc = include_str!("../../../book/src/persistence.md")]
pub mod persistence {}
#[doc = include_str!("../../../book/src/networks.md")]
pub mod networks {}
#[doc = include_str!("../../../book/src/transport.md")]
pub mod transport {}
#[doc = include_str!("../../../book/src/entropy.md")]
pub mod entropy {}
#[doc = include_str!("../../../book/src/geodesics.md")]
pub mod geodesics {}
#[doc = include_str!("../../../book/src/synthetic-systems.md")]
pub mod synthetic_systems {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

//! Finite-group computations behind hyperelementary induction for Bass Nil groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`group`]: finite groups as multiplication tables, subgroup lattices,
//!   quotients and the construction mini-language ([`group::make_group`]).
//! * [`families`]: `p`-subgroups, `p`-elementary and `p`-hyperelementary
//!   subgroups, the sets `C_G^⊥(P)` and `I(g)`, and a corpus of hyperelementary groups.
//! * [`goursat`]: subgroups of `G × Z/N` without building the product.
//! * [`gamma`]: the integer `N(M, n, p)` and the deep/elementary classification of
//!   hyperelementary subgroups of `G × Z/N`, with machine-checked witnesses.
//! * [`dress`]: marks on cyclic subgroups and `p`-local induction certificates.
//! * [`generation`]: generation data `(P, g)`, the elementary cover, the
//!   Verschiebung splitting and the `NK₀` exponent bounds.
//! * [`selfcheck`]: the full property sweep used by `hyperind verify`.
//!
//! ```
//! use hyperind::group::make_group;
//! use hyperind::families::is_p_hyperelementary;
//!
//! let s3 = make_group("sym:3").unwrap();
//! assert!(is_p_hyperelementary(&s3, 2).unwrap());
//! assert!(!is_p_hyperelementary(&s3, 3).unwrap());
//! ```

pub mod arith;
pub mod dress;
mod error;
pub mod families;
pub mod gamma;
pub mod generation;
pub mod goursat;
pub mod group;
pub mod selfcheck;
pub mod snf;

pub use error::{Error, Result};

// The guide's code blocks run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/families.md")]
    mod families {}
    #[doc = include_str!("../../../book/src/goursat.md")]
    mod goursat {}
    #[doc = include_str!("../../../book/src/classification.md")]
    mod classification {}
    #[doc = include_str!("../../../book/src/dress.md")]
    mod dress {}
    #[doc = include_str!("../../../book/src/generation.md")]
    mod generation {}
}

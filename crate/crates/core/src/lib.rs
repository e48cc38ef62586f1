//! Exact conjugacy-class machinery for finite groups.
//!
//! Groups are enumerated in full and their elements addressed by index in a
//! canonical (lexicographic) order, so every algorithm in this crate runs
//! against the single [`Group`] trait: permutation groups, matrix groups over
//! prime fields, subgroup views, quotients and affine groups `G ⋉ V` all
//! implement it.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod bounds;
pub mod classes;
pub mod constructions;
pub mod decomposition;
pub mod error;
pub mod fixed;
pub mod gf;
pub mod group;
pub mod lemmas;
pub mod perm;
pub mod permgroup;
pub mod quotient;
pub mod record;
pub mod sampling;

pub use classes::{centralizer, conjugacy_classes, fingerprint, ClassInfo, ClassSet, GroupFingerprint};
pub use error::{Error, Result};
pub use group::{Elem, Group, Subgroup, SubgroupView};
pub use perm::Permutation;
pub use permgroup::FiniteGroup;
pub use record::{Extra, LemmaCheckRecord, Mode, Relation};

/// Default enumeration cap, in elements.
pub const DEFAULT_CAP: usize = 20_000_000;

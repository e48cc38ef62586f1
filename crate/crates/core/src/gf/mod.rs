//! Linear and affine groups over prime fields.

pub mod affine;
pub mod blocks;
pub mod checks;
pub mod dual;
pub mod field;
pub mod lgroup;
pub mod matgroup;
pub mod matrix;

pub use affine::{affine_classes, AffineClassSet, AffineGroup, ClassMethod};
pub use blocks::{BlockInstance, BlockStructure, Mixing};
pub use field::{GfVector, VecSpace};
pub use matgroup::MatrixGroup;
pub use matrix::GfMatrix;

//! Exact decision procedures for group-graded Frobenius, graded symmetric
//! and left σ-faithful algebras, driven by paratrophic matrices built from
//! homogeneous structure constants.

pub mod exactmath;
pub mod group;
pub mod algebra;
pub mod constructors;
pub mod decide;
pub mod paratrophic;

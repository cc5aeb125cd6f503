//! Concrete categories, bifunctors and worked instances.

pub mod biproduct;
pub mod finset;
pub mod finvect;
pub mod free;
pub mod functors;
pub mod hets;
pub mod instance;
pub mod product;
pub mod tensor;

pub use finset::{build_finset_skeleton, FinSetSkeleton};
pub use finvect::{build_finvect, FinVect};
pub use instance::{gallery_instance, GalleryInstance, Outcome, GALLERY};

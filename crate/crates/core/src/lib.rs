pub mod adjunction;
pub mod brain;
pub mod budget;
pub mod category;
pub mod collage;
pub mod construct;
pub mod error;
pub mod finfield;
pub mod functor;
pub mod gallery;
pub mod het;
pub mod het_iso;
pub mod report;
pub mod universals;

pub use budget::{Budget, WorkMeter};
pub use category::{CategoryBuilder, FinCategory, MorId, MorphismDef, ObjId, RawCategory};
pub use error::{Error, Result};
pub use functor::{Functor, NatTransform, SetFunctor, SetNatTransform};
pub use het::{HetBifunctor, HetBuilder, HetDef, HetId, RawHet, Side};
pub use report::{Law, ValidationReport, Violation};

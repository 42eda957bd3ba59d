//! Conjugacy-class racks in `GL_n(q)`, `SL_n(q)` and `PSL_n(q)`, together
//! with exact searches for the type D and type F collapse criteria.

pub mod criteria;
pub mod ffield;
pub mod group;
pub mod matgrp;
pub mod paperwit;
pub mod perm;
pub mod rack;
pub mod report;

pub use ffield::{field_of_order, make_field, Fe, Field, FieldElem, FieldError, FieldSpec};
pub use group::Group;
pub use matgrp::{Family, GroupCtx, GroupError, Matrix, Partition};
pub use perm::{Perm, PermGroup};
pub use rack::{ClassRack, Rack, TableRack};

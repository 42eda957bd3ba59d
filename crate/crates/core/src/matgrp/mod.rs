//! Matrices over finite fields and the linear groups they form.

pub mod ctx;
pub mod jordan;
pub mod matrix;
pub mod orbit;
pub mod semisimple;
pub mod unipotent;

use thiserror::Error;

use crate::ffield::FieldError;

pub use ctx::{Family, GroupCtx};
pub use jordan::{chevalley_jordan, JordanData};
pub use matrix::{MatError, Matrix};
pub use semisimple::{in_i_q, semisimple_centralizer_shape, solve_intertwiner, CentralizerShape};
pub use unipotent::{
    count_regular_unipotent_classes, r_scalar, r_vec, regular_class_membership, unipotent_type, Partition,
    regular_sl_conjugator, RegularMembership,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("elements belong to different group contexts")]
    MixedContexts,
    #[error("matrix is not in the group: {0}")]
    NotInGroup(String),
    #[error(transparent)]
    Matrix(#[from] MatError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("enumeration exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("{0}")]
    Shape(String),
    #[error("element is not unipotent")]
    NotUnipotent,
    #[error("polynomial is reducible")]
    Reducible,
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

//! Exact computation of the contact-order filtration bases of Coxeter
//! arrangements together with the flat-structure data attached to the
//! primitive derivation, and an executable suite of identity checks.

pub mod coxeter;
pub mod exactalg;
pub mod saito;
pub mod verify;

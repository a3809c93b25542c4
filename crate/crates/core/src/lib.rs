//! Exhaustive checks of universality and universal mapping properties over
//! finite, explicitly enumerated structures.

pub mod dsl;
pub mod genlab;
pub mod model;
pub mod order;
pub mod phi;
pub mod ump;
pub mod universality;

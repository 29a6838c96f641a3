pub mod bracket;
pub mod catalog;
pub mod curvature;
pub mod degeneration;
pub mod error;
pub mod exppoly;
pub mod group;
pub mod invariants;
pub mod linalg;
pub mod matrix;
pub mod multilinear;
pub mod report;
pub mod scalar;

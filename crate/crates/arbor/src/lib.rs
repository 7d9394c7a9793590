//! Exact and numerical tools for positive arboreal Lagrangian skeleta.

pub mod buildings;
pub mod cli;
pub mod flows;
pub mod io;
pub mod localmodels;
pub mod positivity;
pub mod rational;
pub mod sample;
pub mod symplin;
pub mod trees;

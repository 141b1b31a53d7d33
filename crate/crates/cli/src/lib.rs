//! Command-line front end for the quivercover toolkit: fixture validation,
//! indecomposable enumeration, Auslander–Reiten and mesh dumps, covering
//! checks, kind classification and the bundled reproduction suite.

pub mod report;
pub mod reproduce;
pub mod runner;

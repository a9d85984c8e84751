//! Truncated Witt vectors, canonical forms in `W_n`-valued local cohomology of
//! rational double points, and height criteria for RDP K3 surfaces.

pub mod chartring;
pub mod dynkin;
pub mod ffpoly;
pub mod height;
pub mod lattice;
pub mod localcoh;
pub mod reproduce;
pub mod witt;

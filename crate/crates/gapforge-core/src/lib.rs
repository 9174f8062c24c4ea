//! Verification toolkit for rotationally symmetric 2D plaquette Hamiltonians
//! built from an edge-matched aperiodic tile set fused with a reflection
//! symmetric 1D clock chain.

pub mod eigen;
pub mod lattice;
pub mod machines;
pub mod sparse;
pub mod tiling;

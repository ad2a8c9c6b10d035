//! Edge tilings of maximal planar graphs: rgb and single-color tilings, canal
//! lines, diamond routes, abandoned edges with their Kempe-chain constraints,
//! and the enumeration machinery used to check them.

#![no_std]

extern crate alloc;

pub mod atlas;
pub mod coloring;
pub mod cycles;
pub mod corpus;
pub mod dsu;
pub mod dual;
pub mod embedding;
pub mod explore;
pub mod format;
pub mod kempe;
pub mod region;
pub mod rotation;
pub mod route;
pub mod surgery;
pub mod template;
pub mod tiling;

pub use embedding::{EdgeId, Embedding, FaceId, Vertex};
pub use tiling::{Color, EdgeColor, Mode, Tiling};

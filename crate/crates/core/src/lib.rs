//! Combinatorics of weighted decorated marked surfaces.
//!
//! A surface is never stored geometrically. Everything is a glued complex of
//! once-decorated polygons ([`MixedAngulation`]); marked points, the dual
//! S-graph and arc words are derived from it.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod arc;
pub mod collapse;
pub mod duality;
pub mod exchange;
pub mod flip;
pub mod gen;
pub mod hearts;
pub mod lift;
pub mod schober;
pub mod surface;
pub mod track;

pub use arc::{ClosedArcWord, SGraph};
pub use exchange::{enumerate, ExchangeGraph, Mode};
pub use flip::{FlipCase, FlipRecord};
pub use surface::{MixedAngulation, Occ, Side, SurfaceSpec};

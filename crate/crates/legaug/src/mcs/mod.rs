//! Morse complex sequences over a plat front: complexes on the strands of
//! each gap, changing by elementary transitions at events and by
//! handleslides in between.

pub mod aform;
pub mod complex;
pub mod graph;
pub mod moves;
pub mod srform;
pub mod transform;

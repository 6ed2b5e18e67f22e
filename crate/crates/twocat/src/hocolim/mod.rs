//! Homotopy colimits of 2-diagrams, the trisimplicial set `E`, and the two
//! explicit isomorphisms relating them to codiagonals.

mod e;
mod iso;
mod levels;
mod simplicial2;

pub use e::{
    build_e, e_diagonal_slices, e_slice, e_window, slice_directions, slice_level, ESimplex,
};
pub use iso::{constant_level, iso_112, iso_114, ConstantLevel};
pub use levels::{
    check_simplicial_functor, hocolim, hocolim_map, hocolim_modification, ChainObject, ChainOne,
    ChainTwo, Hocolim, HocolimLevel,
};
pub use simplicial2::SimplicialTwoCategory;

//! The homogenized arrangement, its chirotope, cocircuits and s-determinants.

mod element;
mod ground;
mod sdet;
mod signmap;

pub use element::{binomial, subsets, Basis, Element};
pub use ground::{arrangement_matrix, GroundSet};
pub use sdet::{
    a_sigma, axis_signs, cocircuit, s_determinant, s_determinant_in, s_element, s_sign, s_tuple, AxisSigns,
    Cocircuit, SDeterminant, SIndex,
};
pub use signmap::{chirotope_of, is_simplicial, AnyChirotope, Chirotope, Flipped, LazyChirotope, SignMap, EAGER_MAX_N};

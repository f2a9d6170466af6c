//! Representation evaluation and matrix spectral geometry: normalized
//! long products, Cartan/Jordan projections, root gaps, Cartan
//! attractors, the projective metric and the Gromov product.

pub mod attractors;
pub mod evaluate;
pub mod highprec;
pub mod matrix;
pub mod rep;
pub mod spectral;

pub use attractors::{cartan_attractor, cartan_repeller, DEFAULT_GAP_TOL};
pub use evaluate::{Entry, Evaluator};
pub use matrix::{
    compound, gromov_product, proj_dist, HyperplanePoint, NormalizedMatrix, ProjectivePoint,
    GROMOV_FLOOR,
};
pub use rep::{parse_rep_file, to_rep_file, Representation, ValidationReport};
pub use spectral::{spectral, spectrum_from_companions, SpectrumSample};

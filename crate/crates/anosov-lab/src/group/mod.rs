//! Combinatorics of word-hyperbolic groups: presentations, geodesic
//! normal forms, sphere/ball enumeration, cone types, conjugacy
//! representatives and geodesic rays.

pub mod cone;
pub mod conjugacy;
pub mod enumerate;
pub mod oracle;
pub mod presentation;
pub mod rays;
pub mod reduce;

pub use cone::{cone_type, cone_witness, geodesic_slack, ConeTypeId, ConeTypeRegistry};
pub use conjugacy::{conjugacy_reps, cyclic_min};
pub use enumerate::{ball, sphere, spheres, Spheres, DEFAULT_ELEMENT_CAP};
pub use presentation::{parse_presentation, Letter, Presentation, PresentationKind, Word};
pub use rays::{geodesic_rays, normal_extensions, Ray};
pub use reduce::{is_normal_form, reduce};

//! Exact computation of Frobenius actions on graded local cohomology of
//! weighted hypersurfaces over F_p(t), their Veronese subrings and Segre
//! products, with machine-checkable certificates of the resulting
//! singularity properties.

pub mod certify;
pub mod cohomology;
pub mod fields;
pub mod polyring;
pub mod products;
pub mod selftest;
pub mod semilinear;

pub use certify::{
    certify_anti_nilpotent, certify_enveloping, certify_f_injective, certify_geo_f_inj_failure,
    certify_normality, certify_not_f_full, default_veronese_index, make_example, CertifyError,
};
pub use cohomology::{
    basis_of_degree, frobenius_matrix_on_piece, hara_bound, CechSymbol, CohomClass,
    GradedHypersurface,
};
pub use fields::{FieldDesc, FieldElement, Matrix, UniPoly};
pub use polyring::{MPoly, WeightedRing};
pub use semilinear::PLinearMap;

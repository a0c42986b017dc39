//! Faber-Walsh polynomials: construction, norms, series and identities.

mod acf;
mod chebyshev;
mod contour;
mod family;
mod norms;
mod oracle;
mod relations;
mod series;

pub use acf::{acf, acf_generic, acf_sym_closed_form};
pub use chebyshev::{chebyshev_star_oracle, chebyshev_t};
pub use contour::{fw_contour, ContourOptions};
pub use family::{fw_recursion, FaberWalshFamily};
pub use norms::{
    horner_noise, norm_decay_table, sup_norm_fn, sup_norm_fn_with_floor, sup_norm_on_e, NormRow,
};
pub use oracle::polynomial_part_oracle;
pub use relations::{
    affine_covariance_check, faber_polynomial, faber_relation_check, RelationReport,
};
pub use series::{fw_series, SeriesContour, SeriesExpansion, SeriesOptions};

//! Extraction of L-values from pullbacks of Eisenstein series: genus-3
//! doubling for standard L-values and Rankin–Cohen brackets for products of
//! Hecke L-values.

mod bracket;
mod doubling;
mod qpoly;

pub use bracket::{g_nu, gamma_kl, product_hecke_l, product_hecke_l_at, rankin_cohen};
pub use doubling::{
    big_c, big_c_prefactor, cramer_extract, eisenstein_q_sum, extract_std_l, gamma_ratio, BasisTable,
};
pub use qpoly::{p_components, p_components_twice, q_poly_3k, q_poly_scaled};

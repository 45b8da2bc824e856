//! Named q-series: Pochhammer products, theta functions, the partition-type
//! generating functions, Ramanujan's `a(q)` / `b(q)` and the p-dissection of
//! Euler's function.

pub mod dissection;
pub mod generating;
pub mod product;
pub mod ramanujan;
pub mod theta;

pub use dissection::{p_dissection_f, PrimeContext};
pub use generating::{gen_bracelet, gen_broken_diamond, gen_l_regular, gen_partition};
pub use product::{
    eta_quotient, euler_function, pochhammer_series, product_series, PochhammerFactor, ProductSpec, Sign,
};
pub use ramanujan::{five_dissection_rhs, ramanujan_a, ramanujan_b};
pub use theta::{jacobi_triple_check, jacobi_triple_sides, theta_f};
